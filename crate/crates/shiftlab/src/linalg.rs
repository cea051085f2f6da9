//! Dense exact linear algebra over `F_q`: row reduction, rank, kernel bases
//! and linear-system solving.
//!
//! Elimination is plain Gauss-Jordan with first-nonzero pivoting and full
//! canonical reduction at every step. Over an exact field there are no
//! stability concerns, so determinism is the only pivoting criterion.

use std::fmt;

use crate::ff::{FieldElement, PrimeModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
        }
    }
}

impl std::error::Error for LinalgError {}

/// Row-major dense matrix of canonically reduced residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGF {
    rows: usize,
    cols: usize,
    modulus: PrimeModulus,
    data: Vec<u64>,
}

impl MatrixGF {
    pub fn zero(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        MatrixGF {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: PrimeModulus) -> Self {
        let mut m = MatrixGF::zero(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors, reducing entries canonically.
    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().map(|&v| v % modulus.get()));
        }
        MatrixGF {
            rows: rows.len(),
            cols,
            modulus,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.modulus.element(self.data[r * self.cols + c])
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.modulus(), self.modulus, "entry modulus mismatch");
        self.data[r * self.cols + c] = v.value();
    }

    pub fn mat_vec(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let m = self.modulus;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                for (a, b) in row.iter().zip(x) {
                    acc = m.add_raw(acc, m.mul_raw(*a, b.value()));
                }
                m.element(acc)
            })
            .collect())
    }

    /// Reduced row echelon form of a copy, with its pivot columns.
    fn rref(&self) -> (Vec<u64>, Vec<usize>) {
        let m = self.modulus;
        let cols = self.cols;
        let mut data = self.data.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row == self.rows {
                break;
            }
            // First nonzero entry at or below pivot_row.
            let found = (pivot_row..self.rows).find(|&r| data[r * cols + col] != 0);
            let row = match found {
                Some(r) => r,
                None => continue,
            };
            if row != pivot_row {
                for c in 0..cols {
                    data.swap(row * cols + c, pivot_row * cols + c);
                }
            }
            let inv = m
                .inv_raw(data[pivot_row * cols + col])
                .expect("pivot is nonzero");
            for c in col..cols {
                data[pivot_row * cols + c] = m.mul_raw(data[pivot_row * cols + c], inv);
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = data[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = m.mul_raw(factor, data[pivot_row * cols + c]);
                    data[r * cols + c] = m.sub_raw(data[r * cols + c], sub);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        (data, pivot_cols)
    }

    /// Row rank over `F_q`.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : M v = 0}`; empty when the kernel is trivial.
    /// The basis is in "free variable = 1" form, so its size is always
    /// `cols - rank`.
    pub fn nullspace_basis(&self) -> Vec<Vec<FieldElement>> {
        let (rref, pivot_cols) = self.rref();
        let m = self.modulus;
        let cols = self.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(cols - pivot_cols.len());
        for free in 0..cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![m.zero(); cols];
            v[free] = m.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                let entry = rref[r * cols + free];
                v[pc] = m.element(m.neg_raw(entry));
            }
            debug_assert!(self.mat_vec(&v).unwrap().iter().all(|x| x.is_zero()));
            basis.push(v);
        }
        basis
    }

    /// Any solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve_system(
        &self,
        b: &[FieldElement],
    ) -> Result<Option<Vec<FieldElement>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        // Eliminate on the augmented matrix.
        let mut aug = MatrixGF::zero(self.rows, self.cols + 1, self.modulus);
        for (r, rhs) in b.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            aug.data[r * (self.cols + 1) + self.cols] = rhs.value();
        }
        let (rref, pivot_cols) = aug.rref();
        let m = self.modulus;
        let width = self.cols + 1;
        // A pivot in the augmented column certifies inconsistency.
        if pivot_cols.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![m.zero(); self.cols];
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = m.element(rref[r * width + self.cols]);
        }
        debug_assert_eq!(self.mat_vec(&x).unwrap(), b.to_vec());
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn f(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f7 = f(7);
        assert_eq!(MatrixGF::zero(3, 4, f7).rank(), 0);
        assert_eq!(MatrixGF::identity(5, f7).rank(), 5);
        let m = MatrixGF::from_rows(f7, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 0]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        let f7 = f(7);
        let zero = MatrixGF::zero(2, 3, f7);
        assert_eq!(zero.nullspace_basis().len(), 3);

        // Row 2 = 2 * row 1, rank 1, kernel dimension 2.
        let m = MatrixGF::from_rows(f7, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mat_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }

        assert!(MatrixGF::identity(3, f7).nullspace_basis().is_empty());
    }

    #[test]
    fn solve_examples() {
        let f7 = f(7);
        let id = MatrixGF::identity(2, f7);
        let b = vec![f7.element(3), f7.element(5)];
        assert_eq!(id.solve_system(&b).unwrap().unwrap(), b);

        let m = MatrixGF::from_rows(f7, &[vec![1, 2], vec![3, 4]]);
        let b = vec![f7.element(5), f7.element(6)];
        let x = m.solve_system(&b).unwrap().unwrap();
        assert_eq!(m.mat_vec(&x).unwrap(), b);

        let f5 = f(5);
        let m = MatrixGF::from_rows(f5, &[vec![1, 1], vec![2, 2]]);
        let b = vec![f5.element(0), f5.element(1)];
        assert_eq!(m.solve_system(&b).unwrap(), None);

        assert!(m.solve_system(&[f5.element(0)]).is_err());
    }

    #[test]
    fn rank_nullity_across_shapes() {
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let moduli = [f(5), f(101), f(1_000_003)];
        let shapes = [(1, 1), (4, 7), (30, 11), (64, 64), (200, 60), (2000, 600)];
        for &(rows, cols) in &shapes {
            let m = moduli[rng.gen_range(0..moduli.len())];
            let q = m.get();
            let rows_data: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            let mat = MatrixGF::from_rows(m, &rows_data);
            let rank = mat.rank();
            let basis = mat.nullspace_basis();
            assert_eq!(rank + basis.len(), cols, "shape ({}, {})", rows, cols);
            for v in basis.iter().take(3) {
                assert!(mat.mat_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn random_consistent_systems_solve() {
        let mut rng = ChaCha20Rng::seed_from_u64(37);
        let m = f(101);
        for _ in 0..50 {
            let rows = rng.gen_range(1..12usize);
            let cols = rng.gen_range(1..12usize);
            let rows_data: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..101)).collect())
                .collect();
            let mat = MatrixGF::from_rows(m, &rows_data);
            // Manufacture a consistent right-hand side.
            let x: Vec<FieldElement> = (0..cols)
                .map(|_| m.element(rng.gen_range(0..101)))
                .collect();
            let b = mat.mat_vec(&x).unwrap();
            let got = mat
                .solve_system(&b)
                .unwrap()
                .expect("consistent by construction");
            assert_eq!(mat.mat_vec(&got).unwrap(), b);
        }
    }
}
