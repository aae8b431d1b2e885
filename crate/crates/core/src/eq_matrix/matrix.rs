//! Dense row-major matrices over any [`Ring`].

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::field_series::{Fp, NodalQuotientElement, Ring, Twist};
use crate::field_series::{LaurentSeries, NodalRingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Column `k` of the result is column `perm[k]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        Matrix::from_fn(self.rows, self.cols, |i, k| self.get(i, perm[k]).clone())
    }

    /// Row `k` of the result is row `perm[k]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        Matrix::from_fn(self.rows, self.cols, |k, j| self.get(perm[k], j).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros_like(proto: &T, rows: usize, cols: usize) -> Self {
        let z = proto.zero_like();
        Matrix::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity_like(proto: &T, n: usize) -> Self {
        let (z, o) = (proto.zero_like(), proto.one_like());
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let Some(proto) = entries.first() else {
            return Matrix {
                rows: 0,
                cols: 0,
                data: Vec::new(),
            };
        };
        let z = proto.zero_like();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                z.clone()
            }
        })
    }

    /// Permutation matrix `P` with `M·P = M.permute_columns(perm)`.
    pub fn permutation_like(proto: &T, perm: &[usize]) -> Self {
        let (z, o) = (proto.zero_like(), proto.one_like());
        let n = perm.len();
        Matrix::from_fn(n, n, |i, k| if perm[k] == i { o.clone() } else { z.clone() })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        if self.cols == 0 {
            // no entry to borrow a zero from; only empty products are representable
            assert!(
                self.rows == 0 || rhs.cols == 0,
                "cannot infer the ring of an r x 0 times 0 x c product"
            );
            return Matrix {
                rows: self.rows,
                cols: rhs.cols,
                data: Vec::new(),
            };
        }
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = self.get(i, 0).times(rhs.get(0, j));
            for k in 1..self.cols {
                acc = acc.plus(&self.get(i, k).times(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.zip(rhs, T::plus)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.zip(rhs, T::minus)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(T::negate)
    }

    pub fn scale(&self, c: Fp) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Multiplies column `j` by `d[j]`, i.e. `self · diag(d)`.
    pub fn scale_columns(&self, d: &[T]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).times(&d[j]))
    }

    /// Multiplies row `i` by `d[i]`, i.e. `diag(d) · self`.
    pub fn scale_rows(&self, d: &[T]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| d[i].times(self.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.minus(&x.one_like()).is_zero()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square());
        let Some(proto) = self.data.first() else {
            return self.clone();
        };
        let mut acc = Matrix::identity_like(proto, self.rows);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Gauss-Jordan inverse. The pivot in each column is the entry of
    /// smallest [`Ring::unit_weight`].
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let Some(proto) = self.data.first() else {
            return Ok(self.clone());
        };
        let mut a = self.clone();
        let mut inv = Matrix::identity_like(proto, n);
        for col in 0..n {
            let pivot = (col..n)
                .filter_map(|i| a.get(i, col).unit_weight().map(|w| (w, i)))
                .min()
                .map(|(_, i)| i)
                .ok_or(Error::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let pinv = a.get(col, col).try_inverse().ok_or(Error::Singular)?;
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                a.sub_row_multiple(i, col, &factor);
                inv.sub_row_multiple(i, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Determinant by elimination; meaningful over fields (`Fp`, Laurent
    /// series). Returns `None` if a column has no invertible pivot but is
    /// not identically zero, which only happens over non-fields.
    pub fn determinant(&self) -> Option<T> {
        assert!(self.is_square());
        let n = self.rows;
        let proto = self.data.first()?;
        let mut a = self.clone();
        let mut det = proto.one_like();
        for col in 0..n {
            let pivot = (col..n)
                .filter_map(|i| a.get(i, col).unit_weight().map(|w| (w, i)))
                .min()
                .map(|(_, i)| i);
            let Some(pivot) = pivot else {
                return (col..n)
                    .all(|i| a.get(i, col).is_zero())
                    .then(|| proto.zero_like());
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = det.negate();
            }
            let p = a.get(col, col).clone();
            det = det.times(&p);
            let pinv = p.try_inverse()?;
            for i in col + 1..n {
                if a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).times(&pinv);
                a.sub_row_multiple(i, col, &factor);
            }
        }
        Some(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn scale_row(&mut self, i: usize, c: &T) {
        for k in 0..self.cols {
            let v = self.get(i, k).times(c);
            self.set(i, k, v);
        }
    }

    /// `row_i -= factor · row_j`
    fn sub_row_multiple(&mut self, i: usize, j: usize, factor: &T) {
        for k in 0..self.cols {
            let v = self.get(i, k).minus(&factor.times(self.get(j, k)));
            self.set(i, k, v);
        }
    }
}

impl<T: Twist + Clone> Twist for Matrix<T> {
    fn twist(&self, zeta: Fp) -> Self {
        self.map(|x| x.twist(zeta))
    }
}

impl Matrix<Fp> {
    pub fn from_ints(rows: &[Vec<i64>], modulus: u64) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Fp::new(x, modulus)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        Matrix::identity_like(&Fp::one(modulus), n)
    }

    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Fp::zero(modulus))
    }

    pub fn permutation(perm: &[usize], modulus: u64) -> Self {
        Matrix::permutation_like(&Fp::one(modulus), perm)
    }

    pub fn to_ints(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.value()).collect())
            .collect()
    }

    /// Embeds a constant matrix into any ring, using `proto` for modulus
    /// and precision.
    pub fn lift<T: Ring>(&self, proto: &T) -> Matrix<T> {
        self.map(|&c| proto.constant(c))
    }
}

impl Matrix<NodalQuotientElement> {
    pub fn join(u: &Matrix<LaurentSeries>, v: &Matrix<LaurentSeries>) -> Result<Self> {
        if (u.rows, u.cols) != (v.rows, v.cols) {
            return Err(Error::Dimension("branch matrices differ in shape".into()));
        }
        Ok(Matrix {
            rows: u.rows,
            cols: u.cols,
            data: u
                .data
                .iter()
                .zip(&v.data)
                .map(|(a, b)| NodalQuotientElement::new(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn split(&self) -> (Matrix<LaurentSeries>, Matrix<LaurentSeries>) {
        (self.map(|x| x.u.clone()), self.map(|x| x.v.clone()))
    }

    /// Inverse in `GL_r(k((u))) × GL_r(k((v)))`, one branch at a time.
    pub fn nodal_inverse(&self) -> Result<Self> {
        let (u, v) = self.split();
        Matrix::join(&u.inverse()?, &v.inverse()?)
    }
}

impl Matrix<NodalRingElement> {
    pub fn branches(&self) -> (Matrix<crate::field_series::PowerSeries>, Matrix<crate::field_series::PowerSeries>) {
        (self.map(|x| x.u().clone()), self.map(|x| x.v().clone()))
    }

    /// Reduction modulo the maximal ideal `(u, v)`.
    pub fn residue(&self) -> Matrix<Fp> {
        self.map(NodalRingElement::residue)
    }

    pub fn to_quotient(&self) -> Matrix<NodalQuotientElement> {
        self.map(NodalRingElement::to_quotient)
    }
}

/// Serialized as a row-major array of rows.
impl<T: Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> Matrix<Fp> {
        Matrix::from_ints(rows, 7).unwrap()
    }

    #[test]
    fn inverse_and_determinant_mod_7() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        // det = -2 = 5
        assert_eq!(a.determinant().unwrap().value(), 5);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.inverse().unwrap_err(), Error::Singular);
        assert_eq!(a.determinant().unwrap().value(), 0);
    }

    #[test]
    fn permutation_matrix_permutes_columns() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let perm = [2, 0, 1];
        let p = Matrix::permutation(&perm, 7);
        assert_eq!(a.mul(&p), a.permute_columns(&perm));
    }

    #[test]
    fn laurent_matrix_inverse() {
        // [[s, 1], [0, s^-1]] has inverse [[s^-1, -1], [0, s]]
        let s = |k: i64| LaurentSeries::monomial(Fp::one(7), k, 6);
        let z = LaurentSeries::zero(7, 6);
        let a = Matrix::from_rows(vec![vec![s(1), s(0)], vec![z.clone(), s(-1)]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(*inv.get(0, 0), s(-1));
        assert_eq!(*inv.get(0, 1), s(0).neg());
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn serializes_row_major() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[1,2],[3,4]]");
    }
}
