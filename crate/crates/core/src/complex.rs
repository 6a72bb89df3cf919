//! Finite pure simplicial complexes given by their facets.
//!
//! Vertices are dense integers `0..n`, simplices are ascending vertex tuples,
//! and every dimension carries a lexicographic face enumeration so that
//! matrices, cochains and reports built on top are reproducible byte for byte.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// An ascending tuple of vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex has no facets")]
    Empty,
    #[error("facet {facet:?} has {found} vertices, expected {expected}")]
    MixedDimension {
        facet: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("facet {facet:?} repeats a vertex")]
    DegenerateSimplex { facet: Vec<usize> },
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("vertex {vertex} is not contained in any facet")]
    IsolatedVertex { vertex: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Orders simplices by dimension first, then lexicographically.
///
/// This is the order of the face enumeration and of every "smallest simplex"
/// choice made elsewhere in the crate.
pub fn canonical_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    dim: usize,
    vertex_count: usize,
    facets: Vec<Simplex>,
    faces: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertex_count == other.vertex_count && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from a facet list, relabelling vertices densely in
    /// order of first appearance. Repeated facets are kept once.
    pub fn build<I, F>(facet_list: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut arity = None;
        let mut facets = Vec::new();
        for raw in facet_list {
            let raw = raw.as_ref();
            if raw.is_empty() {
                return Err(ComplexError::MixedDimension {
                    facet: Vec::new(),
                    expected: arity.unwrap_or(1),
                    found: 0,
                });
            }
            match arity {
                None => arity = Some(raw.len()),
                Some(a) if a != raw.len() => {
                    return Err(ComplexError::MixedDimension {
                        facet: raw.to_vec(),
                        expected: a,
                        found: raw.len(),
                    })
                }
                _ => {}
            }
            let mut sorted = raw.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DegenerateSimplex { facet: raw.to_vec() });
            }
            let mut facet: Simplex = raw
                .iter()
                .map(|v| {
                    let next = relabel.len();
                    *relabel.entry(*v).or_insert(next)
                })
                .collect();
            facet.sort_unstable();
            facets.push(facet);
        }
        let arity = arity.ok_or(ComplexError::Empty)?;
        let mut seen = HashSet::new();
        facets.retain(|f| seen.insert(f.clone()));
        Ok(Self::from_dense(arity - 1, relabel.len(), facets))
    }

    /// Assembles a complex whose facets are already sorted, distinct and use
    /// every vertex in `0..vertex_count`.
    pub(crate) fn from_dense(dim: usize, vertex_count: usize, facets: Vec<Simplex>) -> Self {
        let mut layers: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim + 1];
        for facet in &facets {
            for mask in 1u32..(1u32 << facet.len()) {
                let face: Simplex = facet
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| *v)
                    .collect();
                layers[face.len() - 1].insert(face);
            }
        }
        let faces: Vec<Vec<Simplex>> = layers
            .into_iter()
            .map(|layer| {
                let mut v: Vec<Simplex> = layer.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let index = faces
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        debug_assert_eq!(faces[0].len(), vertex_count);
        Self {
            dim,
            vertex_count,
            facets,
            faces,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Facets in storage order; facet indices elsewhere refer to this order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Lexicographically ordered `k`-simplices. Empty for `k > dim`.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn edges(&self) -> &[Simplex] {
        self.faces(1)
    }

    /// Position of `simplex` (ascending) in its dimension's enumeration.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        if simplex.is_empty() {
            return None;
        }
        self.index.get(simplex.len() - 1)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, layer)| if k % 2 == 0 { layer.len() as i64 } else { -(layer.len() as i64) })
            .sum()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut bad_ridges = Vec::new();
        let mut boundary_ridges = Vec::new();
        if self.dim > 0 {
            let mut incidence = vec![0usize; self.count(self.dim - 1)];
            for facet in &self.facets {
                for ridge in drop_each(facet) {
                    incidence[self.index_of(&ridge).expect("ridge of a facet")] += 1;
                }
            }
            for (ridge, n) in self.faces(self.dim - 1).iter().zip(incidence) {
                match n {
                    1 => boundary_ridges.push(ridge.clone()),
                    2 => {}
                    _ => bad_ridges.push(ridge.clone()),
                }
            }
        }
        ValidationReport {
            is_pseudomanifold: bad_ridges.is_empty(),
            is_connected: self.is_connected(),
            bad_ridges,
            boundary_ridges,
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::<usize>::new(self.vertex_count);
        for e in self.edges() {
            uf.union(e[0], e[1]);
        }
        (1..self.vertex_count).all(|v| uf.equiv(0, v))
    }

    /// Barycentric subdivision. New vertex `i` is the barycenter of
    /// `carriers[i]`; vertices come in face-enumeration order, so the original
    /// vertices keep their labels.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let mut offsets = Vec::with_capacity(self.dim + 1);
        let mut total = 0;
        for k in 0..=self.dim {
            offsets.push(total);
            total += self.count(k);
        }
        let carriers: Vec<Simplex> = self.faces.iter().flatten().cloned().collect();
        let id_of = |s: &[usize]| offsets[s.len() - 1] + self.index_of(s).expect("face");

        let mut facets = Vec::with_capacity(self.facets.len() * factorial(self.dim + 1));
        for facet in &self.facets {
            for perm in permutations(facet.len()) {
                let mut chain = Vec::with_capacity(facet.len());
                let mut flag: Simplex = Vec::with_capacity(facet.len());
                for &p in &perm {
                    let pos = flag.binary_search(&facet[p]).unwrap_err();
                    flag.insert(pos, facet[p]);
                    chain.push(id_of(&flag));
                }
                chain.sort_unstable();
                facets.push(chain);
            }
        }
        Subdivision {
            complex: Self::from_dense(self.dim, total, facets),
            carriers,
        }
    }

    /// The `.sc` text serialization.
    pub fn to_sc(&self) -> String {
        let mut out = format!("dim {}\nvertices {}\n", self.dim, self.vertex_count);
        for facet in &self.facets {
            let line: Vec<String> = facet.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the `.sc` format. Vertex labels are kept as written; they must
    /// be in `0..n` and each must appear in some facet.
    pub fn parse_sc(text: &str) -> Result<Self, ComplexError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let dim = header(lines.next(), "dim")?;
        let count = header(lines.next(), "vertices")?;
        let mut facets = Vec::new();
        let mut seen = HashSet::new();
        for (line, text) in lines {
            let facet = text
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| ComplexError::Parse {
                        line,
                        message: format!("bad vertex index {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if facet.len() != dim + 1 {
                return Err(ComplexError::MixedDimension {
                    facet,
                    expected: dim + 1,
                    found: text.split_whitespace().count(),
                });
            }
            if let Some(&v) = facet.iter().find(|&&v| v >= count) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, count });
            }
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DegenerateSimplex { facet });
            }
            if seen.insert(sorted.clone()) {
                facets.push(sorted);
            }
        }
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut used = vec![false; count];
        for v in facets.iter().flatten() {
            used[*v] = true;
        }
        if let Some(vertex) = used.iter().position(|u| !u) {
            return Err(ComplexError::IsolatedVertex { vertex });
        }
        Ok(Self::from_dense(dim, count, facets))
    }

    /// SHA-256 of the `.sc` serialization, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_sc().as_bytes()))
    }
}

fn header(line: Option<(usize, &str)>, key: &str) -> Result<usize, ComplexError> {
    let (n, text) = line.ok_or(ComplexError::Parse {
        line: 0,
        message: format!("missing `{key}` header"),
    })?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next().map(str::parse::<usize>), parts.next()) {
        (Some(k), Some(Ok(v)), None) if k == key => Ok(v),
        _ => Err(ComplexError::Parse {
            line: n,
            message: format!("expected `{key} <n>`"),
        }),
    }
}

/// The codimension-one faces of `simplex`, the `i`-th omitting vertex `i`.
pub fn drop_each(simplex: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..simplex.len()).map(move |i| {
        simplex
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| *v)
            .collect()
    })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_pseudomanifold: bool,
    pub is_connected: bool,
    pub bad_ridges: Vec<Simplex>,
    pub boundary_ridges: Vec<Simplex>,
}

impl ValidationReport {
    pub fn is_closed(&self) -> bool {
        self.boundary_ridges.is_empty()
    }

    /// Connected closed pseudomanifold: the admission gate for the theorem
    /// machinery.
    pub fn is_admissible(&self) -> bool {
        self.is_pseudomanifold && self.is_connected && self.is_closed()
    }
}

/// A barycentric subdivision with the simplex each new vertex subdivides.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carriers: Vec<Simplex>,
}

impl Subdivision {
    /// The parent-complex simplex whose interior contains the simplex of the
    /// subdivision spanned by `vertices`: the top of the flag.
    pub fn carrier_of(&self, vertices: &[usize]) -> &Simplex {
        vertices
            .iter()
            .map(|v| &self.carriers[*v])
            .max_by_key(|s| s.len())
            .expect("non-empty simplex")
    }

    /// Simplicial approximation of the identity: each barycenter goes to the
    /// smallest vertex of its carrier.
    pub fn retraction(&self, vertex: usize) -> usize {
        self.carriers[vertex][0]
    }
}

/// How two simplices of a set are declared adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjacency {
    /// `s ~ t` iff one is a face of the other.
    FaceIncidence,
    /// `s ~ t` iff they share a vertex.
    VertexSharing,
}

/// Partitions `set` into classes of the transitive closure of `adjacency`.
///
/// Classes are sorted canonically and ordered by their smallest member.
pub fn connected_components(set: &[Simplex], adjacency: Adjacency) -> Vec<Vec<Simplex>> {
    let mut members: Vec<Simplex> = set.to_vec();
    members.sort_by(|a, b| canonical_cmp(a, b));
    members.dedup();
    let position: HashMap<&[usize], usize> =
        members.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut uf = UnionFind::<usize>::new(members.len());
    match adjacency {
        Adjacency::FaceIncidence => {
            for (i, s) in members.iter().enumerate() {
                for mask in 1u32..(1u32 << s.len()) - 1 {
                    let face: Simplex = s
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask & (1 << j) != 0)
                        .map(|(_, v)| *v)
                        .collect();
                    if let Some(&j) = position.get(face.as_slice()) {
                        uf.union(i, j);
                    }
                }
            }
        }
        Adjacency::VertexSharing => {
            let mut first_with: HashMap<usize, usize> = HashMap::new();
            for (i, s) in members.iter().enumerate() {
                for v in s {
                    let j = *first_with.entry(*v).or_insert(i);
                    uf.union(i, j);
                }
            }
        }
    }
    let mut classes: Vec<Vec<Simplex>> = Vec::new();
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    for (i, s) in members.iter().enumerate() {
        let root = uf.find(i);
        let c = *class_of_root.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(s.clone());
    }
    classes
}
