//! Row reduction over `F_p`.

use crate::field_series::Fp;

use super::Matrix;

impl Matrix<Fp> {
    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix<Fp>, Vec<usize>) {
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols() {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].inv().expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                *x = *x * inv;
            }
            for i in 0..rows.len() {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let f = rows[i][col];
                for j in 0..self.cols() {
                    let v = rows[r][j];
                    rows[i][j] = rows[i][j] - f * v;
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let m = if rows.is_empty() {
            self.clone()
        } else {
            Matrix::from_rows(rows).expect("rectangular")
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Fp>> {
        let modulus = self.modulus_hint();
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols()).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Fp::zero(modulus); self.cols()];
                x[f] = Fp::one(modulus);
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -*red.get(row, f);
                }
                x
            })
            .collect()
    }

    /// Nonzero rows of the reduced row echelon form: a canonical basis of
    /// the row space, each vector with leading entry 1.
    pub fn row_space_basis(&self) -> Vec<Vec<Fp>> {
        let (red, pivots) = self.rref();
        (0..pivots.len()).map(|i| red.row(i).to_vec()).collect()
    }

    /// Canonical basis of the column space.
    pub fn column_space_basis(&self) -> Vec<Vec<Fp>> {
        self.transpose().row_space_basis()
    }

    /// Matrix whose columns are the given vectors of length `n`.
    pub fn from_columns(columns: &[Vec<Fp>], n: usize, modulus: u64) -> Matrix<Fp> {
        Matrix::from_fn(n, columns.len(), |i, j| {
            columns[j].get(i).copied().unwrap_or(Fp::zero(modulus))
        })
    }

    pub fn apply(&self, x: &[Fp]) -> Vec<Fp> {
        (0..self.rows())
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Fp::zero(self.modulus_hint()), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub(crate) fn modulus_hint(&self) -> u64 {
        self.entries().first().map_or(2, |x| x.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_kernel() {
        let a = Matrix::from_ints(&[vec![1, 2, 3], vec![2, 4, 6]], 7).unwrap();
        let (red, piv) = a.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(red.to_ints()[0], vec![1, 2, 3]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn column_space_of_swap_projector() {
        // (I - swap)/2 over F_7 has column space spanned by (1, -1) = (1, 6)
        let half = Fp::new(2, 7).inv().unwrap();
        let p = Matrix::from_ints(&[vec![1, 6], vec![6, 1]], 7).unwrap().scale(half);
        let basis = p.column_space_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 6]);
    }
}
