//! Exact integer matrix algebra.
//!
//! Everything here works over `i64` with checked arithmetic. An overflow is
//! reported as [`LinalgError::Overflow`]; nothing ever wraps.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

fn add(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(LinalgError::Overflow(ctx))
}

fn mul(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(LinalgError::Overflow(ctx))
}

/// `a + k * b` without wrapping.
fn axpy(a: i64, k: i64, b: i64, ctx: &'static str) -> Result<i64> {
    add(a, mul(k, b, ctx)?, ctx)
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from its rows. `cols` is needed to make `0 x n` shapes expressible.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, cols: &[C]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(LinalgError::Dimension(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d;
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = axpy(out[(i, j)], a, rhs[(k, j)], "matrix product")?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .try_fold(0i64, |acc, (&a, &b)| axpy(acc, a, b, "matrix-vector product"))
            })
            .collect()
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| add(a, b, "matrix sum"))
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a.checked_sub(b).ok_or(LinalgError::Overflow("matrix difference")))
    }

    pub fn scale(&self, k: i64) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|&x| mul(k, x, "matrix scaling"))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn zip_with(&self, rhs: &IntMatrix, f: impl Fn(i64, i64) -> Result<i64>) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Quadratic form `xᵀ · self · x`.
    pub fn quadratic_form(&self, x: &[i64]) -> Result<i64> {
        let y = self.mul_vec(x)?;
        x.iter()
            .zip(&y)
            .try_fold(0i64, |acc, (&a, &b)| axpy(acc, a, b, "quadratic form"))
    }

    /// Bilinear form `xᵀ · self · y`.
    pub fn bilinear_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        if x.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "left vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let my = self.mul_vec(y)?;
        x.iter()
            .zip(&my)
            .try_fold(0i64, |acc, (&a, &b)| axpy(acc, a, b, "bilinear form"))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(LinalgError::Overflow("determinant"))?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| LinalgError::Overflow("determinant"))
    }

    /// Smith normal form with unimodular transforms; see [`smith_normal_form`].
    pub fn smith(&self) -> Result<SmithDecomposition> {
        smith_normal_form(self)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> Result<usize> {
        Ok(smith_normal_form(self)?.rank())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        for j in 0..self.cols {
            self[(dst, j)] = axpy(self[(dst, j)], k, self[(src, j)], "row operation")?;
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        for i in 0..self.rows {
            self[(i, dst)] = axpy(self[(i, dst)], k, self[(i, src)], "column operation")?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].checked_neg().ok_or(LinalgError::Overflow("row negation"))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[ {} ]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `d₁, …, d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }

    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// `x / p` rounded to the nearest integer, so the remainder has absolute value ≤ |p|/2.
fn nearest_quotient(x: i64, p: i64) -> i64 {
    let q = x.div_euclid(p);
    let r = x.rem_euclid(p);
    if 2 * r > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

fn min_abs_nonzero(
    m: &IntMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&c| m[c] != 0)
        .min_by_key(|&c| m[c].unsigned_abs())
}

/// Smith normal form of an arbitrary integer matrix (empty and zero matrices included).
///
/// Whenever the pivot fails to divide its row or column, the entry of least
/// absolute value in the remaining block becomes the new pivot, and reductions
/// use nearest-integer quotients; both keep `U` and `V` small in practice.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithDecomposition> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) =
            min_abs_nonzero(&d, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..m {
                let q = nearest_quotient(d[(i, t)], p);
                if q != 0 {
                    d.add_row(i, t, -q)?;
                    u.add_row(i, t, -q)?;
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..n {
                let q = nearest_quotient(d[(t, j)], p);
                if q != 0 {
                    d.add_col(j, t, -q)?;
                    v.add_col(j, t, -q)?;
                }
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                // a remainder is now smaller than the pivot: bring the smallest
                // entry of the whole remaining block to the diagonal
                let (pi, pj) = min_abs_nonzero(&d, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
                    .expect("pivot cannot vanish");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }

            // divisibility: fold an offending row into row t and go again
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    d.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                }
                None => break,
            }
        }

        if d[(t, t)] < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
    }

    Ok(SmithDecomposition { u, d, v })
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// Zero rows are dropped; pivots are positive and entries above each pivot lie
/// in `[0, pivot)`.
pub fn hermite_rows(a: &IntMatrix) -> Result<IntMatrix> {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some((pi, _)) = min_abs_nonzero(&h, (r..m).map(|i| (i, c))) else {
                break;
            };
            h.swap_rows(r, pi);
            let p = h[(r, c)];
            let mut clean = true;
            for i in r + 1..m {
                let q = h[(i, c)] / p;
                if q != 0 {
                    h.add_row(i, r, -q)?;
                }
                clean &= h[(i, c)] == 0;
            }
            if clean {
                break;
            }
        }
        if h[(r, c)] == 0 {
            continue;
        }
        if h[(r, c)] < 0 {
            h.negate_row(r)?;
        }
        let p = h[(r, c)];
        for i in 0..r {
            let q = h[(i, c)].div_euclid(p);
            if q != 0 {
                h.add_row(i, r, -q)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<i64>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(n, &rows)
}

/// Basis of the integer kernel lattice `{x ∈ ℤⁿ : A·x = 0}`, in Hermite normal form.
///
/// The kernel is saturated, so every basis vector is primitive. Empty iff `A` is injective.
pub fn kernel_basis(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let snf = smith_normal_form(a)?;
    let r = snf.rank();
    let raw: Vec<Vec<i64>> = (r..a.cols()).map(|j| snf.v.column(j)).collect();
    if raw.is_empty() {
        return Ok(raw);
    }
    let h = hermite_rows(&IntMatrix::from_rows(a.cols(), &raw)?)?;
    Ok(h.to_rows())
}

/// Some integer solution of `A·x = b`, or `None` when there is none.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    if b.len() != a.rows() {
        return Err(LinalgError::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a)?;
    let c = snf.u.mul_vec(b)?;
    let diag = snf.diagonal();
    let mut y = vec![0i64; a.cols()];
    for (i, &ci) in c.iter().enumerate() {
        let di = diag.get(i).copied().unwrap_or(0);
        if di == 0 {
            if ci != 0 {
                return Ok(None);
            }
        } else if ci % di != 0 {
            return Ok(None);
        } else {
            y[i] = ci / di;
        }
    }
    let x = snf.v.mul_vec(&y)?;
    debug_assert_eq!(a.mul_vec(&x)?, b);
    Ok(Some(x))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// True when the entries have no common factor > 1. The zero vector is not primitive.
pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0, |g, &x| gcd(g, x)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn identity_is_its_own_smith_form() {
        let snf = smith_normal_form(&IntMatrix::identity(2)).unwrap();
        assert_eq!(snf.d, IntMatrix::identity(2));
        assert_eq!(snf.u.determinant().unwrap().abs(), 1);
    }

    #[test]
    fn smith_of_2468() {
        // d1 = gcd(2,4,6,8) = 2 and d1*d2 = |det| = |16 - 24| = 8
        let a = m(2, &[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(snf.diagonal(), vec![2, 4]);
        assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.d);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(smith_normal_form(&z).unwrap().d, z);
        let e = IntMatrix::zeros(0, 3);
        let snf = smith_normal_form(&e).unwrap();
        assert_eq!(snf.v, IntMatrix::identity(3));
        assert_eq!(kernel_basis(&e).unwrap().len(), 3);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&IntMatrix::identity(4)).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let k = kernel_basis(&m(3, &[&[1, 1, 1]])).unwrap();
        assert_eq!(k, vec![vec![1, 0, -1], vec![0, 1, -1]]);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve_integer(&IntMatrix::identity(3), &[4, -1, 7]).unwrap(),
            Some(vec![4, -1, 7])
        );
        assert_eq!(solve_integer(&m(1, &[&[2]]), &[1]).unwrap(), None);
        let x = solve_integer(&m(2, &[&[2, 3]]), &[1]).unwrap().unwrap();
        assert_eq!(2 * x[0] + 3 * x[1], 1);
    }

    #[test]
    fn solve_rejects_bad_rhs_length() {
        assert!(matches!(
            solve_integer(&IntMatrix::identity(2), &[1]),
            Err(LinalgError::Dimension(_))
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let a = m(2, &[&[i64::MAX, 1], &[1, i64::MAX]]);
        let b = m(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(a.mul(&b), Err(LinalgError::Overflow("matrix product")));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(2, &[&[2, 4], &[6, 8]]).determinant().unwrap(), -8);
        assert_eq!(m(3, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).determinant().unwrap(), -1);
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), 1);
    }

    #[test]
    fn hermite_normalizes_sign_and_reduces_above_pivot() {
        let h = hermite_rows(&m(3, &[&[0, -2, 4], &[1, 3, 1]])).unwrap();
        assert_eq!(h.to_rows(), vec![vec![1, 1, 5], vec![0, 2, -4]]);
    }

    #[test]
    fn primitive_vectors() {
        assert!(is_primitive(&[1, 0, 0, 1]));
        assert!(!is_primitive(&[2, 0, 4]));
        assert!(!is_primitive(&[0, 0]));
    }
}
