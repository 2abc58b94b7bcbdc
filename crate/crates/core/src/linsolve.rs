//! Incremental row-echelon reduction of sparse systems over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseRow = BTreeMap<usize, BigRational>;

/// Accumulates rows and keeps them in echelon form keyed by leading column.
#[derive(Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; returns true if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, coeff)) = row.iter().next() {
            let coeff = coeff.clone();
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    for (&col, v) in pivot {
                        let entry = row.entry(col).or_insert_with(BigRational::zero);
                        *entry -= &coeff * v;
                        if entry.is_zero() {
                            row.remove(&col);
                        }
                    }
                }
                None => {
                    if !coeff.is_one() {
                        for v in row.values_mut() {
                            *v /= &coeff;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries
            .iter()
            .map(|&(c, v)| (c, BigRational::from_integer(v.into())))
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (1, -1)])));
        assert!(e.insert(row(&[(1, 1), (2, -1)])));
        assert!(!e.insert(row(&[(0, 1), (2, -1)])));
        assert!(!e.insert(row(&[])));
        assert!(e.insert(row(&[(0, 2), (1, 3), (2, 5)])));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn non_unit_coefficients() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 2), (1, 4)])));
        assert!(!e.insert(row(&[(0, 3), (1, 6)])));
        assert!(e.insert(row(&[(0, 3), (1, 7)])));
        assert_eq!(e.rank(), 2);
    }
}
