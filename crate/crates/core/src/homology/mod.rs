//! Exact integer (co)homology of simplicial complexes.

mod cochain;
mod matrix;
mod rational;
mod snf;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;

pub use cochain::{
    boundary_of_chain, boundary_of_two_chain, coboundary_of_potential, coboundary_on_triangles, oriented_edge,
    EdgeValues, IntegerChain, IntegerCochain,
};
pub use matrix::IntegerMatrix;
pub use rational::{Insert, RowEchelon};
pub use snf::{gcd_all, invariant_factors, smith_normal_form, torsion_of, SnfResult, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary degree {k} outside 1..={dim}")]
    BadDegree { k: usize, dim: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("length {found} does not match {expected} edges")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("value does not fit in 64 bits")]
    Overflow,
}

/// `∂_k` in the canonical bases, column per `k`-simplex.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> Result<IntegerMatrix, HomologyError> {
    Ok(sparse_boundary(complex, k)?.to_dense())
}

pub fn sparse_boundary(complex: &SimplicialComplex, k: usize) -> Result<SparseMatrix, HomologyError> {
    if k == 0 || k > complex.dim() {
        return Err(HomologyError::BadDegree { k, dim: complex.dim() });
    }
    let columns = complex
        .faces(k)
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, i64)> = crate::complex::drop_each(s)
                .enumerate()
                .map(|(i, face)| {
                    let row = complex.index_of(&face).expect("face of a simplex");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(SparseMatrix {
        rows: complex.count(k - 1),
        cols: complex.count(k),
        columns,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors above one of `∂_2`, i.e. the torsion of `H_1`.
    #[serde(with = "crate::util::bigint_list")]
    pub h1_torsion: Vec<BigInt>,
    pub h1_trivial: bool,
}

impl CohomologyResult {
    pub fn b1(&self) -> usize {
        self.betti.get(1).copied().unwrap_or(0)
    }
}

pub fn homology_summary(complex: &SimplicialComplex) -> CohomologyResult {
    let d = complex.dim();
    let factors: Vec<Vec<BigInt>> = (1..=d)
        .map(|k| invariant_factors(&sparse_boundary(complex, k).expect("degree in range")))
        .collect();
    let rank = |k: usize| if k == 0 || k > d { 0 } else { factors[k - 1].len() };
    let betti: Vec<usize> = (0..=d).map(|k| complex.count(k) - rank(k) - rank(k + 1)).collect();
    let h1_torsion = if d >= 2 { torsion_of(&factors[1]) } else { Vec::new() };
    let h1_trivial = betti.get(1).copied().unwrap_or(0) == 0;
    CohomologyResult {
        betti,
        h1_torsion,
        h1_trivial,
    }
}

/// Breadth-first spanning forest of the 1-skeleton, rooted at the smallest
/// vertex of each component, neighbours visited in ascending order.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    /// `(parent, edge index)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub order: Vec<usize>,
    pub tree_edge: Vec<bool>,
}

impl SpanningForest {
    pub fn new(complex: &SimplicialComplex) -> Self {
        let n = complex.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for (i, e) in complex.edges().iter().enumerate() {
            adjacency[e[0]].push((e[1], i));
            adjacency[e[1]].push((e[0], i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut tree_edge = vec![false; complex.count(1)];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &(w, e) in &adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((u, e));
                        depth[w] = depth[u] + 1;
                        tree_edge[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Self {
            parent,
            depth,
            order,
            tree_edge,
        }
    }

    /// Potential `g` with `g(root) = 0` and `g(v) - g(parent) = z(parent -> v)`
    /// along tree edges.
    pub fn integrate<T>(&self, complex: &SimplicialComplex, z: &[T]) -> Vec<T>
    where
        T: Clone + Zero + std::ops::Sub<Output = T> + std::ops::Add<Output = T>,
    {
        let mut g = vec![T::zero(); complex.vertex_count()];
        for &v in &self.order {
            if let Some((u, e)) = self.parent[v] {
                let step = if u < v { z[e].clone() } else { T::zero() - z[e].clone() };
                g[v] = g[u].clone() + step;
            }
        }
        g
    }

    /// Tree path from `v` up to its root, as a vertex list starting at `v`.
    fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while let Some((u, _)) = self.parent[v] {
            path.push(u);
            v = u;
        }
        path
    }
}

/// Exact potential for `z` if `z` is a coboundary, by integration along the
/// spanning forest followed by a check on every edge.
pub fn integrate_potential<T>(complex: &SimplicialComplex, z: &[T]) -> Option<Vec<T>>
where
    T: Clone + Zero + PartialEq + std::ops::Sub<Output = T> + std::ops::Add<Output = T>,
{
    let forest = SpanningForest::new(complex);
    let g = forest.integrate(complex, z);
    let ok = complex
        .edges()
        .iter()
        .zip(z)
        .all(|(e, x)| g[e[1]].clone() - g[e[0]].clone() == *x);
    ok.then_some(g)
}

/// Integer 1-cocycles whose classes form a basis of `H¹(K; ℤ)`.
///
/// Every class has exactly one representative vanishing on the spanning
/// forest, so the basis is a lattice basis of the kernel of `δ¹` restricted to
/// the non-tree edges.
pub fn cocycle_basis(complex: &SimplicialComplex) -> Result<Vec<IntegerCochain>, HomologyError> {
    let forest = SpanningForest::new(complex);
    let free: Vec<usize> = (0..complex.count(1)).filter(|&e| !forest.tree_edge[e]).collect();
    if free.is_empty() {
        return Ok(Vec::new());
    }
    let triangles = complex.faces(2);
    let mut m = IntegerMatrix::zeros(triangles.len(), free.len());
    let column_of: std::collections::HashMap<usize, usize> = free.iter().enumerate().map(|(c, e)| (*e, c)).collect();
    for (r, t) in triangles.iter().enumerate() {
        for (i, face) in crate::complex::drop_each(t).enumerate() {
            let e = complex.index_of(&face).expect("edge of triangle");
            if let Some(&c) = column_of.get(&e) {
                m[(r, c)] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    let snf = smith_normal_form(&m);
    (snf.rank..free.len())
        .map(|j| {
            let mut values = vec![0i64; complex.count(1)];
            for (c, e) in free.iter().enumerate() {
                values[*e] = snf.v[(c, j)].to_i64().ok_or(HomologyError::Overflow)?;
            }
            Ok(IntegerCochain::one(values))
        })
        .collect()
}

fn check_cochain(complex: &SimplicialComplex, z: &IntegerCochain) -> Result<(), HomologyError> {
    if z.values.len() != complex.count(1) {
        return Err(HomologyError::DimensionMismatch {
            expected: complex.count(1),
            found: z.values.len(),
        });
    }
    Ok(())
}

pub fn is_cocycle(complex: &SimplicialComplex, z: &IntegerCochain) -> bool {
    z.values.len() == complex.count(1) && coboundary_on_triangles(complex, z).iter().all(|x| *x == 0)
}

/// Decides whether `z = δ⁰g` for some vertex potential `g` by exact rational
/// elimination of the system; over these complexes rational and integral
/// solvability coincide because `H¹` is torsion free.
pub fn is_coboundary(complex: &SimplicialComplex, z: &IntegerCochain) -> Result<bool, HomologyError> {
    check_cochain(complex, z)?;
    if !is_cocycle(complex, z) {
        return Err(HomologyError::NotACocycle);
    }
    let mut system = RowEchelon::new();
    for (e, x) in complex.edges().iter().zip(&z.values) {
        let row = [(e[1], rational(1)), (e[0], rational(-1))];
        if system.insert(row, rational(*x)) == Insert::Inconsistent {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `⟨z, c⟩ = Σ z(e)·c(e)` for a 1-cocycle and a 1-cycle.
pub fn pairing(complex: &SimplicialComplex, z: &IntegerCochain, c: &IntegerChain) -> Result<i64, HomologyError> {
    check_cochain(complex, z)?;
    if c.values.len() != complex.count(1) {
        return Err(HomologyError::DimensionMismatch {
            expected: complex.count(1),
            found: c.values.len(),
        });
    }
    if boundary_of_chain(complex, c).iter().any(|x| *x != 0) {
        return Err(HomologyError::NotACycle);
    }
    Ok(z.values.iter().zip(&c.values).map(|(a, b)| a * b).sum())
}

/// One cycle per non-tree edge: the edge closed up through the spanning
/// forest. They generate `Z₁`.
pub fn fundamental_cycles(complex: &SimplicialComplex) -> Vec<IntegerChain> {
    let forest = SpanningForest::new(complex);
    complex
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| !forest.tree_edge[*e])
        .map(|(_, e)| {
            // a -> b along the edge, then b back to a through the tree.
            let (a, b) = (e[0], e[1]);
            let up_b = forest.path_to_root(b);
            let up_a = forest.path_to_root(a);
            let mut walk = vec![a];
            let meet = up_b.iter().position(|v| up_a.contains(v)).expect("same component");
            walk.extend_from_slice(&up_b[..=meet]);
            let back = up_a.iter().position(|v| *v == up_b[meet]).expect("common ancestor");
            walk.extend(up_a[..back].iter().rev());
            IntegerChain::from_walk(complex, &walk)
        })
        .collect()
}

/// Rank of an integer matrix by exact rational elimination.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut echelon = RowEchelon::new();
    for i in 0..m.rows() {
        let row: Vec<(usize, BigRational)> = (0..m.cols())
            .filter(|&j| !m[(i, j)].is_zero())
            .map(|j| (j, BigRational::from_integer(m[(i, j)].clone())))
            .collect();
        echelon.insert(row, BigRational::zero());
    }
    echelon.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::build([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn edge_boundary() {
        let k = SimplicialComplex::build([[0, 1]]).unwrap();
        let m = boundary_matrix(&k, 1).unwrap();
        assert_eq!(m, IntegerMatrix::from_rows(&[[-1], [1]]));
        assert_eq!(boundary_matrix(&k, 2), Err(HomologyError::BadDegree { k: 2, dim: 1 }));
        assert!(boundary_matrix(&k, 0).is_err());
    }

    #[test]
    fn tetra_boundary_matrix() {
        let k = tetra_boundary();
        let d2 = boundary_matrix(&k, 2).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (6, 4));
        for j in 0..4 {
            assert_eq!(d2.column(j).iter().filter(|x| !x.is_zero()).count(), 3);
        }
        let d1 = boundary_matrix(&k, 1).unwrap();
        assert!((&d1 * &d2).is_zero());
    }

    #[test]
    fn sphere_summary() {
        let k = tetra_boundary();
        let h = homology_summary(&k);
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert!(h.h1_trivial);
        assert!(cocycle_basis(&k).unwrap().is_empty());
        assert!(fundamental_cycles(&k).iter().all(|c| {
            let z = IntegerCochain::zero(&k);
            pairing(&k, &z, c) == Ok(0)
        }));
    }

    #[test]
    fn coboundary_errors() {
        let k = tetra_boundary();
        let mut z = IntegerCochain::zero(&k);
        assert_eq!(is_coboundary(&k, &z), Ok(true));
        z.values[0] = 1;
        assert_eq!(is_coboundary(&k, &z), Err(HomologyError::NotACocycle));
        let short = IntegerCochain::one(vec![0; 3]);
        assert!(matches!(is_coboundary(&k, &short), Err(HomologyError::DimensionMismatch { .. })));
    }

    #[test]
    fn pairing_rejects_non_cycles() {
        let k = tetra_boundary();
        let z = IntegerCochain::zero(&k);
        let mut c = IntegerChain::zero(&k);
        c.values[0] = 1;
        assert_eq!(pairing(&k, &z, &c), Err(HomologyError::NotACycle));
        let short = IntegerChain::one(vec![0; 2]);
        assert!(matches!(pairing(&k, &z, &short), Err(HomologyError::DimensionMismatch { .. })));
    }
}
