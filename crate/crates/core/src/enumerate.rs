//! Exhaustive enumeration over finite fields with explicit search budgets.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// Default cap on the number of candidates an exhaustive search may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// `p^entries`, saturating; errors over ℚ.
pub fn search_size(field: FieldSpec, entries: usize) -> Result<u128> {
    let p = field.order().ok_or(Error::SearchOverRationals)? as u128;
    let mut n: u128 = 1;
    for _ in 0..entries {
        n = n.saturating_mul(p);
    }
    Ok(n)
}

pub fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// All `rows × cols` matrices over F_p in lexicographic order of their
/// row-major entries, the first entry most significant. The zero matrix comes first.
#[derive(Clone, Debug)]
pub struct Matrices {
    field: FieldSpec,
    p: u64,
    rows: usize,
    cols: usize,
    counter: Vec<u64>,
    done: bool,
}

impl Iterator for Matrices {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        let data = self.counter.iter().map(|&value| Scalar::Residue { value, modulus: self.p }).collect();
        let m = Matrix::new(self.field, self.rows, self.cols, data).expect("shape is consistent");
        self.done = true;
        for slot in self.counter.iter_mut().rev() {
            *slot += 1;
            if *slot < self.p {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(m)
    }
}

/// Enumerates every matrix of the given shape, after checking the budget.
pub fn matrices(field: FieldSpec, rows: usize, cols: usize, budget: u128) -> Result<Matrices> {
    let needed = search_size(field, rows * cols)?;
    check_budget(needed, budget)?;
    let p = field.order().expect("finite field");
    Ok(Matrices { field, p, rows, cols, counter: vec![0; rows * cols], done: false })
}

/// Every invertible `n × n` matrix, in lexicographic order.
pub fn invertible_matrices(field: FieldSpec, n: usize, budget: u128) -> Result<Vec<Matrix>> {
    Ok(matrices(field, n, n, budget)?.filter(Matrix::is_invertible).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_lexicographically() {
        let f2 = FieldSpec::prime(2).unwrap();
        let all: Vec<Matrix> = matrices(f2, 1, 2, 16).unwrap().collect();
        assert_eq!(all.len(), 4);
        assert!(all[0].is_zero());
        assert_eq!(all[1], Matrix::from_i64(f2, &[&[0, 1]]));
        assert_eq!(all[3], Matrix::from_i64(f2, &[&[1, 1]]));
    }

    #[test]
    fn general_linear_group_orders() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(invertible_matrices(f2, 2, DEFAULT_BUDGET).unwrap().len(), 6);
        assert_eq!(invertible_matrices(f2, 3, DEFAULT_BUDGET).unwrap().len(), 168);
        assert_eq!(invertible_matrices(f3, 2, DEFAULT_BUDGET).unwrap().len(), 48);
    }

    #[test]
    fn budget_and_rationals() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(matrices(f3, 3, 3, 100), Err(Error::BudgetExceeded { needed: 19683, budget: 100 })));
        assert!(matches!(matrices(FieldSpec::Rationals, 1, 1, 100), Err(Error::SearchOverRationals)));
    }
}
