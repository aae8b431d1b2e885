//! Sorting the character exponents and splitting an equivariant glue matrix
//! into its invariant parts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field_series::{LaurentSeries, NodalQuotientElement};

use super::{is_equivariant, GammaAction, Matrix};

/// Sorted exponents `0 ≤ a_1 ≤ … ≤ a_r < e` with `a_i ≡ α_i mod e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentVector {
    pub e: u64,
    pub alpha: Vec<u64>,
    pub a: Vec<u64>,
}

impl ExponentVector {
    /// Validates an already sorted vector of lifts.
    pub fn new(a: Vec<u64>, e: u64) -> Result<Self> {
        if e == 0 || a.iter().any(|&x| x >= e) || a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidExponents(format!(
                "{a:?} is not weakly increasing in [0, {e})"
            )));
        }
        Ok(ExponentVector {
            e,
            alpha: a.clone(),
            a,
        })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn signed(&self) -> Vec<i64> {
        self.a.iter().map(|&x| x as i64).collect()
    }
}

/// Stable sort of the residues. `perm` is in one-line notation on
/// `0..r`: sorted position `k` holds original column `perm[k]`.
pub fn sort_exponents(alpha: &[u64], e: u64) -> Result<(ExponentVector, Vec<usize>)> {
    if e == 0 {
        return Err(Error::InvalidExponents("e must be positive".into()));
    }
    let lifts: Vec<u64> = alpha.iter().map(|&x| x % e).collect();
    let mut perm: Vec<usize> = (0..lifts.len()).collect();
    perm.sort_by_key(|&i| lifts[i]);
    let a: Vec<u64> = perm.iter().map(|&i| lifts[i]).collect();
    Ok((ExponentVector::new(a, e)?, perm))
}

/// The matrices `H¹, H²` with `F¹_{ij}(u) = u^{a_j} H¹_{ij}(u^e)` and
/// `F²_{ij}(v) = v^{−a_j} H²_{ij}(v^e)`.
pub fn extract_h(
    f: &Matrix<NodalQuotientElement>,
    exps: &ExponentVector,
    act: &GammaAction,
) -> Result<(Matrix<LaurentSeries>, Matrix<LaurentSeries>)> {
    if f.cols() != exps.rank() || act.e != exps.e {
        return Err(Error::Dimension(format!(
            "glue matrix has {} columns, exponent vector has {} entries with e = {}",
            f.cols(),
            exps.rank(),
            exps.e
        )));
    }
    let a = exps.signed();
    let (f1, f2) = f.split();
    let cell = |m: &Matrix<LaurentSeries>, sign: i64| -> Result<Matrix<LaurentSeries>> {
        let rows = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| m.get(i, j).extract_subseries(sign * a[j], exps.e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    };
    Ok((cell(&f1, 1)?, cell(&f2, -1)?))
}

/// Re-expands `(H¹, H²)` into the equivariant matrix `F`.
pub fn assemble_f(
    h1: &Matrix<LaurentSeries>,
    h2: &Matrix<LaurentSeries>,
    exps: &ExponentVector,
) -> Result<Matrix<NodalQuotientElement>> {
    let a = exps.signed();
    let f1 = Matrix::from_fn(h1.rows(), h1.cols(), |i, j| h1.get(i, j).inflate(a[j], exps.e));
    let f2 = Matrix::from_fn(h2.rows(), h2.cols(), |i, j| h2.get(i, j).inflate(-a[j], exps.e));
    Matrix::join(&f1, &f2)
}

/// Equivariance with respect to the (sorted or unsorted) residues.
pub fn is_equivariant_for(
    f: &Matrix<NodalQuotientElement>,
    exps: &ExponentVector,
    act: &GammaAction,
) -> bool {
    is_equivariant(f, &exps.alpha, act)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_series::Fp;

    #[test]
    fn stable_sort_examples() {
        let (x, perm) = sort_exponents(&[1, 0, 1], 3).unwrap();
        assert_eq!(x.a, vec![0, 1, 1]);
        assert_eq!(perm, vec![1, 0, 2]);
        let (x, perm) = sort_exponents(&[0, 0], 3).unwrap();
        assert_eq!((x.a, perm), (vec![0, 0], vec![0, 1]));
        let (x, perm) = sort_exponents(&[2, 1], 3).unwrap();
        assert_eq!((x.a, perm), (vec![1, 2], vec![1, 0]));
    }

    #[test]
    fn extraction_of_worked_example() {
        let act = GammaAction::new(7, 3).unwrap();
        let l = |k: i64| LaurentSeries::monomial(Fp::one(7), k, 9);
        let z = LaurentSeries::zero(7, 9);
        let x = |u: LaurentSeries, v: LaurentSeries| NodalQuotientElement::new(u, v);
        let zero = x(z.clone(), z.clone());
        let f = Matrix::from_rows(vec![
            vec![x(l(0), l(0)), x(l(1).add(&l(4)), z.clone()), zero.clone()],
            vec![zero.clone(), x(l(1), l(-1)), zero.clone()],
            vec![zero.clone(), zero.clone(), x(l(1), l(-1))],
        ])
        .unwrap();
        let exps = ExponentVector::new(vec![0, 1, 1], 3).unwrap();
        assert!(is_equivariant_for(&f, &exps, &act));
        let (h1, h2) = extract_h(&f, &exps, &act).unwrap();
        let one = |n| LaurentSeries::one(7, n);
        // 1 + s
        assert_eq!(*h1.get(0, 1), one(2).add(&LaurentSeries::monomial(Fp::one(7), 1, 2)));
        assert_eq!(*h1.get(1, 1), one(2));
        assert_eq!(*h2.get(2, 2), one(3));
        assert_eq!(assemble_f(&h1, &h2, &exps).unwrap(), f);
    }

    #[test]
    fn support_violation_is_reported() {
        let act = GammaAction::new(7, 3).unwrap();
        let l = |k: i64| LaurentSeries::monomial(Fp::one(7), k, 9);
        let f = Matrix::diagonal(vec![NodalQuotientElement::new(l(2), l(-1))]);
        let exps = ExponentVector::new(vec![1], 3).unwrap();
        assert!(matches!(
            extract_h(&f, &exps, &act),
            Err(Error::SupportViolation { exponent: 2, .. })
        ));
    }
}
