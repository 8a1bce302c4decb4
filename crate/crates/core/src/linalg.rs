//! Exact linear algebra over a cyclotomic field.
//!
//! Provides reduced row echelon form, kernel bases, and canonical row-space
//! representatives.  Everything is deterministic: pivots are always the first
//! nonzero entry scanning rows top-down, so two runs (or two machines) produce
//! identical bases.

use crate::scalar::{CycField, Cyclotomic};

/// Dense matrix over a fixed cyclotomic field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: CycField,
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Matrix {
    /// Zero matrix of the given shape.
    pub fn zeros(field: &CycField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(field: &CycField, rows: Vec<Vec<Cyclotomic>>, cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix {
            field: field.clone(),
            rows: n_rows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclotomic) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row echelon form (pivots normalized to 1, eliminated above and
    /// below), together with the pivot column of each nonzero row.
    pub fn rref(mut self) -> Rref {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // First row at or below pivot_row with a nonzero entry in col.
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data.swap(pivot_row * self.cols + c, src * self.cols + c);
                }
            }
            // Normalize the pivot row.
            let inv = self
                .at(pivot_row, col)
                .inv()
                .expect("pivot entry is nonzero");
            if !self.at(pivot_row, col).is_one() {
                for c in col..self.cols {
                    let v = self.at(pivot_row, c).checked_mul(&inv).unwrap();
                    self.set(pivot_row, c, v);
                }
            }
            // Eliminate the column everywhere else.
            for r in 0..self.rows {
                if r == pivot_row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let delta = factor.checked_mul(self.at(pivot_row, c)).unwrap();
                    let v = self.at(r, c).checked_sub(&delta).unwrap();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            matrix: self,
            pivots,
        }
    }

    /// Basis of the right kernel {v : A·v = 0}, one vector per free column,
    /// ordered by free-column index.  Each basis vector has a 1 in its free
    /// column, so the basis is canonical.
    pub fn kernel_basis(self) -> Vec<Vec<Cyclotomic>> {
        let field = self.field.clone();
        let cols = self.cols;
        let red = self.rref();
        let mut is_pivot = vec![false; cols];
        for &c in &red.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for fc in 0..cols {
            if is_pivot[fc] {
                continue;
            }
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (r, &pc) in red.pivots.iter().enumerate() {
                let entry = red.matrix.at(r, fc);
                if !entry.is_zero() {
                    v[pc] = -entry;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Multiplies the matrix by a column vector.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, vc) in v.iter().enumerate() {
                    let a = self.at(r, c);
                    if !a.is_zero() && !vc.is_zero() {
                        acc = &acc + &a.checked_mul(vc).unwrap();
                    }
                }
                acc
            })
            .collect()
    }
}

/// Result of row reduction: the echelon matrix plus pivot columns.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Canonical representative of the span of the given vectors: the nonzero
/// rows of the reduced row echelon form.  Two sets of vectors span the same
/// subspace iff their canonical forms are equal.
pub fn canonical_row_space(
    field: &CycField,
    vectors: &[Vec<Cyclotomic>],
    dim: usize,
) -> Vec<Vec<Cyclotomic>> {
    let m = Matrix::from_rows(field, vectors.to_vec(), dim);
    let red = m.rref();
    (0..red.rank())
        .map(|r| (0..dim).map(|c| red.matrix.at(r, c).clone()).collect())
        .collect()
}

/// True iff the two families of vectors span the same subspace of `field`^dim.
pub fn same_span(
    field: &CycField,
    a: &[Vec<Cyclotomic>],
    b: &[Vec<Cyclotomic>],
    dim: usize,
) -> bool {
    canonical_row_space(field, a, dim) == canonical_row_space(field, b, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, CycField, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat_i64(field: &CycField, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.integer(v)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rref_of_a_known_matrix() {
        let fld = CycField::new(1);
        // [[1,2,3],[2,4,6],[1,1,1]] has rank 2.
        let red = mat_i64(&fld, &[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]).rref();
        assert_eq!(red.rank(), 2);
        assert_eq!(red.pivots, vec![0, 1]);
        // Canonical form: [[1,0,-1],[0,1,2]].
        assert_eq!(red.matrix.at(0, 2), &fld.integer(-1));
        assert_eq!(red.matrix.at(1, 2), &fld.integer(2));
    }

    #[test]
    fn kernel_of_a_known_matrix() {
        let fld = CycField::new(1);
        // x + 2y + 3z = 0, x + y + z = 0  =>  kernel spanned by (1, -2, 1).
        let kern = mat_i64(&fld, &[&[1, 2, 3], &[1, 1, 1]]).kernel_basis();
        assert_eq!(kern.len(), 1);
        assert_eq!(
            kern[0],
            vec![fld.integer(1), fld.integer(-2), fld.integer(1)]
        );
    }

    #[test]
    fn kernel_of_empty_system_is_everything() {
        let fld = CycField::new(1);
        let kern = Matrix::zeros(&fld, 0, 3).kernel_basis();
        assert_eq!(kern.len(), 3);
        for (i, v) in kern.iter().enumerate() {
            for (j, entry) in v.iter().enumerate() {
                assert_eq!(entry.is_one(), i == j);
            }
        }
    }

    #[test]
    fn kernel_vectors_satisfy_the_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xAB5E);
        let fld = CycField::new(12);
        for _ in 0..50 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=5);
            let mut m = Matrix::zeros(&fld, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let v = if rng.gen_bool(0.3) {
                        fld.root_of_unity(12, rng.gen_range(0..12)).unwrap()
                    } else {
                        fld.integer(rng.gen_range(-2..=2))
                    };
                    m.set(r, c, v);
                }
            }
            let check = m.clone();
            let kern = m.kernel_basis();
            let rank = check.clone().rref().rank();
            assert_eq!(kern.len(), cols - rank, "rank-nullity");
            for v in &kern {
                assert!(check.apply(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn span_comparison_ignores_basis_choice() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let fld = CycField::new(4);
        let dim = 4;
        for _ in 0..40 {
            let count = rng.gen_range(1..=3);
            let basis: Vec<Vec<Cyclotomic>> = (0..count)
                .map(|_| {
                    (0..dim)
                        .map(|_| fld.rational(rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))))
                        .collect()
                })
                .collect();
            // Random invertible-ish recombination: sums of scaled basis vectors
            // plus the original vectors shuffled in.
            let mut combos: Vec<Vec<Cyclotomic>> = basis.clone();
            for _ in 0..3 {
                let mut acc = vec![fld.zero(); dim];
                for v in &basis {
                    let coef: Rational = rat_int(rng.gen_range(-2..=2));
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a = &*a + &x.scale(&coef);
                    }
                }
                combos.push(acc);
            }
            assert!(same_span(&fld, &basis, &combos, dim));
            // And a genuinely different space is detected.
            let mut shifted = basis.clone();
            let mut probe = vec![fld.zero(); dim];
            probe[rng.gen_range(0..dim)] = fld.one();
            shifted.push(probe);
            let equal = same_span(&fld, &basis, &shifted, dim);
            let grew = canonical_row_space(&fld, &shifted, dim).len()
                > canonical_row_space(&fld, &basis, dim).len();
            assert!(equal != grew);
        }
    }
}
