use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{mul_mod, pow_mod, FieldSpec, Scalar};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form: `basis` holds the nonzero rows, `pivots[k]`
/// is the pivot column of row `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub pivots: Vec<usize>,
    pub basis: Matrix,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of length `cols`. Panics on ragged input
    /// or entries from another field.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for e in row {
                assert_eq!(e.field(), field, "matrix entry from another field");
                entries.push(e);
            }
        }
        Matrix {
            rows: n,
            cols,
            field,
            entries,
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols);
        assert_eq!(value.field(), self.field);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.field, rhs.field);
        if let Some(p) = self.field.characteristic() {
            let a = self.residues();
            let b = rhs.residues();
            let mut out = vec![0u64; self.rows * rhs.cols];
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let aik = a[i * self.cols + k];
                    if aik == 0 {
                        continue;
                    }
                    let brow = &b[k * rhs.cols..(k + 1) * rhs.cols];
                    let orow = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
                    for (o, &bkj) in orow.iter_mut().zip(brow) {
                        *o = (*o + mul_mod(aik, bkj, p)) % p;
                    }
                }
            }
            return Matrix::from_residues(p, self.rows, rhs.cols, out);
        }
        Matrix::from_fn(self.field, self.rows, rhs.cols, |i, j| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * rhs.get(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            assert_eq!(b.field, field);
            entries.extend_from_slice(&b.entries);
            rows += b.rows;
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        match self.field.characteristic() {
            Some(p) => {
                let mut a = self.residues();
                gauss_jordan_mod(&mut a, self.rows, self.cols, p).len()
            }
            None => bareiss_echelon(self.integer_rows(), self.cols).1.len(),
        }
    }

    /// Canonical reduced row echelon form of the row space.
    pub fn rref(&self) -> Echelon {
        match self.field.characteristic() {
            Some(p) => {
                let mut a = self.residues();
                let pivots = gauss_jordan_mod(&mut a, self.rows, self.cols, p);
                a.truncate(pivots.len() * self.cols);
                let basis = Matrix::from_residues(p, pivots.len(), self.cols, a);
                Echelon { pivots, basis }
            }
            None => rational_rref(self.integer_rows(), self.cols),
        }
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in the
    /// canonical form read off the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Echelon { pivots, basis } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -basis.get(k, free);
                }
                v
            })
            .collect()
    }

    /// Rows form a basis of the functionals vanishing on the row space.
    pub fn row_space_annihilator(&self) -> Matrix {
        Matrix::from_rows(self.field, self.cols, self.kernel_basis())
    }

    fn residues(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|e| e.residue_value().expect("prime field entry"))
            .collect()
    }

    fn from_residues(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Matrix {
        let field = FieldSpec::prime(p).expect("valid modulus");
        Matrix {
            rows,
            cols,
            field,
            entries: data.into_iter().map(|v| Scalar::residue(v, p)).collect(),
        }
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, e| {
                    acc.lcm(e.as_rational().expect("rational entry").denom())
                });
                row.iter()
                    .map(|e| {
                        let q = e.as_rational().expect("rational entry");
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }
}

/// In-place Gauss–Jordan over F_p on a row-major buffer. Returns pivot
/// columns; the first `pivots.len()` rows hold the reduced basis.
fn gauss_jordan_mod(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = pow_mod(a[r * cols + c], p - 2, p);
        for j in c..cols {
            a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
        }
        let (head, tail) = a.split_at_mut(r * cols);
        let (pivot_row, rest) = tail.split_at_mut(cols);
        let eliminate = |row: &mut [u64]| {
            let factor = row[c];
            if factor == 0 {
                return;
            }
            for j in c..cols {
                row[j] = (row[j] + p - mul_mod(factor, pivot_row[j], p)) % p;
            }
        };
        head.chunks_mut(cols).for_each(eliminate);
        rest.chunks_mut(cols).take(rows - r - 1).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free (Bareiss) elimination. Returns the echelon rows and pivot
/// columns. Every intermediate entry is a minor of the input, so each
/// division is exact.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn rational_rref(int_rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let (echelon, pivots) = bareiss_echelon(int_rows, cols);
    let mut rows: Vec<Vec<BigRational>> = echelon
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for k in (0..pivots.len()).rev() {
        let pc = pivots[k];
        let inv = rows[k][pc].recip();
        for e in rows[k].iter_mut() {
            *e = &*e * &inv;
        }
        let (above, rest) = rows.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let factor = row[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for j in pc..cols {
                row[j] = &row[j] - &factor * &pivot_row[j];
            }
        }
    }
    let q = FieldSpec::rationals();
    let basis = Matrix::from_rows(
        q,
        cols,
        rows.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| {
                        q.from_ratio(e.numer(), e.denom())
                            .expect("nonzero denominator")
                    })
                    .collect()
            })
            .collect(),
    );
    Echelon { pivots, basis }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
