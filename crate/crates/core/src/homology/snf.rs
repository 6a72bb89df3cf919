//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] is the dense reference algorithm and records both
//! unimodular transforms. [`invariant_factors`] works on sparse input: it
//! strips unit pivots with a Markowitz-style choice and hands whatever is left
//! to the dense routine, which is how boundary matrices of subdivided
//! complexes stay tractable.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
    /// Positive diagonal entries, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    /// `U·A·V = D`, both transforms unimodular, `D` diagonal with a
    /// divisibility chain.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        let uav = &(&self.u * a) * &self.v;
        uav == self.d
            && self.d.is_diagonal()
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
            && self.invariant_factors.iter().all(|f| f.is_positive())
    }
}

/// Position of the smallest nonzero absolute value in the trailing block
/// starting at `(t, t)`, scanning rows first.
fn min_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = &d[(i, j)];
            if e.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| e.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
                if e.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut residue = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                residue |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                residue |= !d[(t, j)].is_zero();
            }
            if residue {
                // A remainder smaller than the pivot survived; promote it.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors: Vec<BigInt> = (0..t).map(|i| d[(i, i)].clone()).collect();
    SnfResult {
        d,
        u,
        v,
        rank: t,
        invariant_factors,
    }
}

/// Column-sparse integer matrix; used for boundary operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[j]` lists `(row, value)` with nonzero values, rows ascending.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_dense(m: &IntegerMatrix) -> Option<Self> {
        use num_traits::ToPrimitive;
        let mut columns = vec![Vec::new(); m.cols()];
        for (j, col) in columns.iter_mut().enumerate() {
            for i in 0..m.rows() {
                if !m[(i, j)].is_zero() {
                    col.push((i, m[(i, j)].to_i64()?));
                }
            }
        }
        Some(Self {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        })
    }
}

/// Invariant factors (with multiplicity, ascending) of a sparse matrix.
///
/// The number of factors is the rank.
pub fn invariant_factors(a: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); a.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (j, col) in a.columns.iter().enumerate() {
        for (i, x) in col {
            if *x != 0 {
                rows[*i].insert(j, BigInt::from(*x));
                cols[j].insert(*i);
            }
        }
    }
    let mut units = 0usize;
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(j, c)| Reverse((c.len(), j))).collect();
    let mut blocked = vec![false; a.cols];
    while let Some(Reverse((len, c))) = heap.pop() {
        if cols[c].len() != len || len == 0 || blocked[c] {
            continue;
        }
        let pivot_row = cols[c]
            .iter()
            .filter(|&&r| rows[r][&c].abs().is_one())
            .min_by_key(|&&r| (rows[r].len(), r))
            .copied();
        let Some(r) = pivot_row else {
            blocked[c] = true;
            continue;
        };
        let sign = rows[r][&c].clone();
        let pivot = std::mem::take(&mut rows[r]);
        for j in pivot.keys() {
            cols[*j].remove(&r);
        }
        let others: Vec<usize> = cols[c].iter().copied().collect();
        for i in others {
            let factor = &rows[i][&c] * &sign;
            for (j, x) in &pivot {
                let entry = rows[i].entry(*j).or_insert_with(BigInt::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    rows[i].remove(j);
                    cols[*j].remove(&i);
                } else {
                    cols[*j].insert(i);
                }
            }
        }
        debug_assert!(cols[c].is_empty());
        units += 1;
        for j in pivot.keys() {
            if *j != c && !cols[*j].is_empty() {
                // Fill-in may have created new unit entries in a blocked column.
                blocked[*j] = false;
                heap.push(Reverse((cols[*j].len(), *j)));
            }
        }
    }
    let live_rows: Vec<usize> = (0..a.rows).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..a.cols).filter(|&j| !cols[j].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(p, j)| (*j, p)).collect();
        let mut rest = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
        for (p, i) in live_rows.iter().enumerate() {
            for (j, x) in &rows[*i] {
                rest[(p, col_pos[j])] = x.clone();
            }
        }
        factors.extend(smith_normal_form(&rest).invariant_factors);
    }
    factors.sort();
    factors
}

/// Keeps the factors that are not units, i.e. the torsion coefficients.
pub fn torsion_of(factors: &[BigInt]) -> Vec<BigInt> {
    factors.iter().filter(|f| !f.is_one()).cloned().collect()
}

/// Greatest common divisor of a list, zero for an empty or all-zero list.
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_two_three() {
        let a = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(snf.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let a = IntegerMatrix::zeros(3, 2);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.rank, 0);
        assert!(snf.invariant_factors.is_empty());
        assert!(snf.verify(&a));
    }

    #[test]
    fn empty_shapes() {
        for (m, n) in [(0, 0), (0, 3), (2, 0)] {
            let a = IntegerMatrix::zeros(m, n);
            let snf = smith_normal_form(&a);
            assert_eq!(snf.rank, 0);
            assert!(snf.verify(&a));
        }
    }

    #[test]
    fn needs_divisibility_fix() {
        let a = IntegerMatrix::from_rows(&[[4, 0, 0], [0, 6, 0], [0, 0, 10]]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        let f: Vec<i64> = snf.invariant_factors.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(f, vec![2, 2, 60]);
    }

    #[test]
    fn sparse_matches_dense() {
        let a = IntegerMatrix::from_rows(&[[1, 1, 0, 2], [0, 2, 2, 0], [1, -1, -2, 2], [3, 0, 0, 6]]);
        let dense = smith_normal_form(&a).invariant_factors;
        let sparse = invariant_factors(&SparseMatrix::from_dense(&a).unwrap());
        assert_eq!(dense, sparse);
    }
}
