use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::field::{mod_inv, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A dense matrix over a [`FieldSpec`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form: one normalized row per pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
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
        Self {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`
    /// and every entry must lie in `field`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for s in row {
                if !field.contains(&s) {
                    return Err(Error::Mismatch(format!(
                        "entry {s} does not lie in {field}"
                    )));
                }
                entries.push(s);
            }
        }
        Ok(Self {
            rows: nrows,
            cols,
            field,
            entries,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.from_i64(x)).collect()
            })
            .collect();
        Self::from_rows(field, cols, data).expect("integer entries lie in every field")
    }

    pub fn random<R: Rng + ?Sized>(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        rng: &mut R,
        bound: i64,
    ) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random_scalar(rng, bound))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(
            self.field.contains(&value),
            "entry outside the matrix field"
        );
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    fn check_same_shape(&self, other: &Matrix, op: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Mismatch(format!(
                "{op} of matrices over {} and {}",
                self.field, other.field
            )));
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{op} of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "sum")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "difference")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        self.with_entries(entries)
    }

    fn with_entries(&self, entries: Vec<Scalar>) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::Mismatch(format!(
                "product of matrices over {} and {}",
                self.field, other.field
            )));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    /// Horizontal concatenation. All blocks need the same number of rows.
    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows || b.field != field {
                return Err(Error::ShapeMismatch("hstack block mismatch".into()));
            }
            for i in 0..rows {
                for j in 0..b.cols {
                    out.entries[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation. All blocks need the same number of columns.
    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols || b.field != field {
                return Err(Error::ShapeMismatch("vstack block mismatch".into()));
            }
            entries.extend_from_slice(&b.entries);
            rows += b.rows;
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.field != b.field {
            return Err(Error::Mismatch("block_diag over different fields".into()));
        }
        let mut out = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn rref(&self) -> Rref {
        match self.field {
            FieldSpec::Rationals => rref_rational(self),
            FieldSpec::PrimeField(p) => rref_prime(self, p),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of `{x : Ax = 0}`, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![self.field.zero(); self.cols];
                v[j] = self.field.one();
                for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                    v[p] = -&row[j];
                }
                v
            })
            .collect()
    }

    /// Coordinates of the target not reached by a pivot of the column space;
    /// their unit vectors represent a basis of `target / im(A)`.
    fn cokernel_free_coords(&self) -> (Rref, Vec<usize>) {
        let rref = self.transpose().rref();
        let mut is_pivot = vec![false; self.rows];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let free = (0..self.rows).filter(|&i| !is_pivot[i]).collect();
        (rref, free)
    }

    /// Unit vectors whose classes form a basis of `target / im(A)`.
    pub fn cokernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (_, free) = self.cokernel_free_coords();
        free.into_iter()
            .map(|k| {
                let mut v = vec![self.field.zero(); self.rows];
                v[k] = self.field.one();
                v
            })
            .collect()
    }

    /// The quotient map `target -> target / im(A)` in the coordinates of
    /// [`Matrix::cokernel_basis`]. The result `P` satisfies `P * A = 0`.
    pub fn cokernel_projection(&self) -> Matrix {
        let (rref, free) = self.cokernel_free_coords();
        let mut position = vec![None; self.rows];
        for (idx, &k) in free.iter().enumerate() {
            position[k] = Some(idx);
        }
        let mut out = Matrix::zeros(self.field, free.len(), self.rows);
        for (idx, &k) in free.iter().enumerate() {
            out.set(idx, k, self.field.one());
        }
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            for (idx, &k) in free.iter().enumerate() {
                out.set(idx, p, -&row[k]);
            }
        }
        out
    }

    /// Some solution of `Ax = b`, or `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let column = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let augmented = Matrix::hstack(self.field, self.rows, &[self, &column])?;
        let rref = augmented.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }
}

fn lcm_of_denominators(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Fraction-free (Bareiss) forward elimination on a denominator-cleared copy,
/// followed by rational back-substitution to the reduced form.
fn rref_rational(m: &Matrix) -> Rref {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|s| match s {
                    Scalar::Rational(q) => q.clone(),
                    Scalar::Residue { .. } => unreachable!("rational matrix holds a residue"),
                })
                .collect();
            let l = lcm_of_denominators(&row);
            row.iter().map(|q| (q * &l).to_integer()).collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                for x in row.iter_mut().skip(c + 1) {
                    let num = &pivot_row[c] * &*x;
                    *x = exact_div(num, &prev);
                }
                continue;
            }
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = exact_div(num, &prev);
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let mut red: Vec<Vec<BigRational>> = a
        .into_iter()
        .take(pivots.len())
        .zip(&pivots)
        .map(|(row, &c)| {
            let lead = BigRational::from_integer(row[c].clone());
            row.into_iter()
                .map(|x| BigRational::from_integer(x) / &lead)
                .collect()
        })
        .collect();
    for k in (0..pivots.len()).rev() {
        let c = pivots[k];
        let (above, rest) = red.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &factor * &pivot_row[j];
                }
            }
        }
    }
    Rref {
        pivots,
        rows: red
            .into_iter()
            .map(|row| row.into_iter().map(Scalar::Rational).collect())
            .collect(),
    }
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "Bareiss division was not exact");
    q
}

/// Gauss-Jordan over `F_p` on raw residues.
fn rref_prime(m: &Matrix, p: u64) -> Rref {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|s| match s {
                    Scalar::Residue { value, .. } => *value,
                    Scalar::Rational(_) => unreachable!("prime-field matrix holds a rational"),
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p).expect("nonzero residue is invertible");
        for x in a[r].iter_mut().skip(c) {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for j in c..cols {
                row[j] = (row[j] + p - factor * pivot_row[j] % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        rows: a
            .into_iter()
            .take(pivots.len())
            .map(|row| {
                row.into_iter()
                    .map(|value| Scalar::Residue { value, modulus: p })
                    .collect()
            })
            .collect(),
        pivots,
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, s) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
