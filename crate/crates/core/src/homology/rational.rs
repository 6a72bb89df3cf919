use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Incremental row echelon form over the rationals.
///
/// Each accepted row is stored normalized with leading coefficient one at its
/// smallest column; incoming rows are reduced column by column in increasing
/// order, which only ever introduces larger columns and so terminates.
#[derive(Debug, Default)]
pub struct RowEchelon {
    pivots: BTreeMap<usize, (BTreeMap<usize, BigRational>, BigRational)>,
}

/// Outcome of feeding one equation into a [`RowEchelon`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    Independent,
    Dependent,
    /// The coefficients reduce to zero but the right-hand side does not.
    Inconsistent,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, coefficients: impl IntoIterator<Item = (usize, BigRational)>, rhs: BigRational) -> Insert {
        let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (j, x) in coefficients {
            let e = row.entry(j).or_insert_with(BigRational::zero);
            *e += x;
            if e.is_zero() {
                row.remove(&j);
            }
        }
        let mut rhs = rhs;
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).map(|(j, _)| *j).find(|j| self.pivots.contains_key(j));
            let Some(j) = next else { break };
            let factor = row.remove(&j).expect("present");
            let (pivot_row, pivot_rhs) = &self.pivots[&j];
            for (k, x) in pivot_row.range(j + 1..) {
                let e = row.entry(*k).or_insert_with(BigRational::zero);
                *e -= &factor * x;
                if e.is_zero() {
                    row.remove(k);
                }
            }
            rhs -= &factor * pivot_rhs;
            cursor = j + 1;
        }
        let Some((&lead, lead_value)) = row.iter().next() else {
            return if rhs.is_zero() { Insert::Dependent } else { Insert::Inconsistent };
        };
        let inv = BigRational::one() / lead_value;
        for x in row.values_mut() {
            *x *= &inv;
        }
        rhs *= &inv;
        self.pivots.insert(lead, (row, rhs));
        Insert::Independent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn detects_inconsistency() {
        let mut e = RowEchelon::new();
        assert_eq!(e.insert([(0, q(1)), (1, q(1))], q(2)), Insert::Independent);
        assert_eq!(e.insert([(0, q(2)), (1, q(2))], q(4)), Insert::Dependent);
        assert_eq!(e.insert([(1, q(3)), (0, q(3))], q(5)), Insert::Inconsistent);
        assert_eq!(e.insert([(1, q(1))], q(0)), Insert::Independent);
        assert_eq!(e.rank(), 2);
    }
}
