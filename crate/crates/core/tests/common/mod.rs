//! Reference implementations used only by the tests. They work from the raw
//! facet lists with dense exact rational arithmetic and plain graph searches,
//! sharing no code with the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Face = Vec<usize>;

/// All faces of the closure, grouped by dimension, each group sorted.
pub fn faces_by_dim(facets: &[Vec<usize>]) -> Vec<Vec<Face>> {
    let mut set: BTreeSet<Face> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        for mask in 1u32..(1 << f.len()) {
            set.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    let top = set.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Vec::new(); top];
    for s in set {
        out[s.len() - 1].push(s);
    }
    out
}

/// Rank over ℚ by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Dense `∂_k` with rows indexed by `(k-1)`-faces.
pub fn boundary(faces: &[Vec<Face>], k: usize) -> Vec<Vec<BigRational>> {
    let index: HashMap<&Face, usize> = faces[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![q(0); faces[k].len()]; faces[k - 1].len()];
    for (j, s) in faces[k].iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            m[index[&face]][j] = q(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

pub fn betti(facets: &[Vec<usize>]) -> Vec<usize> {
    let faces = faces_by_dim(facets);
    let d = faces.len() - 1;
    let ranks: Vec<usize> = (0..=d + 1)
        .map(|k| if k == 0 || k > d { 0 } else { rank(boundary(&faces, k)) })
        .collect();
    (0..=d).map(|k| faces[k].len() - ranks[k] - ranks[k + 1]).collect()
}

pub fn euler(facets: &[Vec<usize>]) -> i64 {
    faces_by_dim(facets)
        .iter()
        .enumerate()
        .map(|(k, f)| if k % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
        .sum()
}

/// Whether `z` (indexed like the sorted edge list) is `δ⁰g` for a rational `g`.
pub fn is_coboundary(facets: &[Vec<usize>], z: &[i64]) -> bool {
    let faces = faces_by_dim(facets);
    let vertices: HashMap<usize, usize> = faces[0].iter().enumerate().map(|(i, v)| (v[0], i)).collect();
    let rows: Vec<Vec<BigRational>> = faces[1]
        .iter()
        .map(|e| {
            let mut row = vec![q(0); vertices.len()];
            row[vertices[&e[0]]] = q(-1);
            row[vertices[&e[1]]] = q(1);
            row
        })
        .collect();
    let augmented: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(z)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(q(*x));
            r
        })
        .collect();
    // Column rank equals row rank; compare on transposes for clarity.
    let t = |m: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
    };
    rank(t(&rows)) == rank(t(&augmented))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub domain_connected: bool,
    pub boundary_components: usize,
    pub complement_connected: bool,
}

impl Cut {
    pub fn cuts(&self) -> bool {
        !self.complement_connected
    }
}

fn closure(facets: &[&Vec<usize>]) -> BTreeSet<Face> {
    let mut set = BTreeSet::new();
    for f in facets {
        for mask in 1u32..(1 << f.len()) {
            set.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    set
}

/// Components of a closed subcomplex, through its vertices and edges.
fn closed_components(set: &BTreeSet<Face>) -> usize {
    let vertices: Vec<usize> = set.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
    let mut adjacency: HashMap<usize, Vec<usize>> = vertices.iter().map(|v| (*v, Vec::new())).collect();
    for e in set.iter().filter(|s| s.len() == 2) {
        adjacency.get_mut(&e[0]).unwrap().push(e[1]);
        adjacency.get_mut(&e[1]).unwrap().push(e[0]);
    }
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for v in vertices {
        if seen.insert(v) {
            count += 1;
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for w in &adjacency[&u] {
                    if seen.insert(*w) {
                        queue.push_back(*w);
                    }
                }
            }
        }
    }
    count
}

/// Cut data of the open set `|K| \ |K_C|` for the domain `domain` (facet
/// indices into `facets`).
pub fn cut(facets: &[Vec<usize>], domain: &[usize]) -> Cut {
    let inside: BTreeSet<usize> = domain.iter().copied().collect();
    let kf = closure(&facets.iter().enumerate().filter(|(i, _)| inside.contains(i)).map(|(_, f)| f).collect::<Vec<_>>());
    let kc = closure(&facets.iter().enumerate().filter(|(i, _)| !inside.contains(i)).map(|(_, f)| f).collect::<Vec<_>>());
    // Open cells of U, joined when one is a codimension-one face of the other.
    let open: Vec<&Face> = kf.iter().filter(|s| !kc.contains(*s)).collect();
    let index: HashMap<&Face, usize> = open.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut seen = vec![false; open.len()];
    let mut pieces = 0;
    for start in 0..open.len() {
        if seen[start] {
            continue;
        }
        pieces += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let s = open[i];
            let mut neighbours: Vec<usize> = Vec::new();
            for j in 0..s.len() {
                let mut face = s.clone();
                face.remove(j);
                if let Some(&k) = index.get(&face) {
                    neighbours.push(k);
                }
            }
            for (k, t) in open.iter().enumerate() {
                if t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v)) {
                    neighbours.push(k);
                }
            }
            for k in neighbours {
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back(k);
                }
            }
        }
    }
    let boundary: BTreeSet<Face> = kf.intersection(&kc).cloned().collect();
    Cut {
        domain_connected: pieces == 1,
        boundary_components: closed_components(&boundary),
        complement_connected: closed_components(&kc) == 1,
    }
}
