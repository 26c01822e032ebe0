//! Dense exact matrices over `D[ζ_k]`.
//!
//! Storage is row-major. Kronecker products are left-factor-major:
//! entry `(i*b.rows + i', j*b.cols + j')` of `kron(a, b)` is `a[i,j]·b[i',j']`.
//! Every layout-sensitive routine in the crate relies on this one convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Precision, RingElem};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ExactMatrix {
    k: Precision,
    rows: usize,
    cols: usize,
    entries: Vec<RingElem>,
}

impl ExactMatrix {
    pub fn zeros(k: Precision, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { k, rows, cols, entries: vec![RingElem::zero(k); rows * cols] }
    }

    pub fn identity(k: Precision, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(k, n, n);
        for i in 0..n {
            m.entries[i * n + i] = RingElem::one(k);
        }
        m
    }

    pub fn from_fn(
        k: Precision,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElem,
    ) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert_eq!(e.k(), k);
                entries.push(e);
            }
        }
        ExactMatrix { k, rows, cols, entries }
    }

    /// Builds from row-major entries, checking that every entry lives at `k`.
    pub fn from_entries(k: Precision, rows: usize, cols: usize, entries: Vec<RingElem>) -> Result<ExactMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.k() != k) {
            return Err(Error::PrecisionMismatch { left: k.get(), right: bad.k().get() });
        }
        Ok(ExactMatrix { k, rows, cols, entries })
    }

    /// A 1x1 matrix.
    pub fn scalar(x: RingElem) -> ExactMatrix {
        ExactMatrix { k: x.k(), rows: 1, cols: 1, entries: vec![x] }
    }

    pub fn diagonal(k: Precision, diag: Vec<RingElem>) -> ExactMatrix {
        let n = diag.len();
        let mut m = ExactMatrix::zeros(k, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// The 0/1 matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn perm_matrix(perm: &[usize], k: Precision) -> Result<ExactMatrix> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::NotBijective(n));
            }
            seen[p] = true;
        }
        let mut m = ExactMatrix::zeros(k, n, n);
        for (j, &p) in perm.iter().enumerate() {
            m.entries[p * n + j] = RingElem::one(k);
        }
        Ok(m)
    }

    pub fn k(&self) -> Precision {
        self.k
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        debug_assert_eq!(v.k(), self.k);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn check_k(&self, other: &ExactMatrix) -> Result<()> {
        if self.k != other.k {
            Err(Error::PrecisionMismatch { left: self.k.get(), right: other.k.get() })
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_k(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch { op: "mat_mul", left: self.shape(), right: other.shape() });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![RingElem::zero(self.k); n * p];
        for i in 0..n {
            let row = &mut out[i * p..(i + 1) * p];
            for t in 0..m {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in row.iter_mut().enumerate() {
                    let b = other.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = if a.is_one() { b.clone() } else if b.is_one() { a.clone() } else { a * b };
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(ExactMatrix { k: self.k, rows: n, cols: p, entries: out })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_k(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch { op: "mat_add", left: self.shape(), right: other.shape() });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { k: self.k, rows: self.rows, cols: self.cols, entries })
    }

    /// Block-diagonal sum `a ⊕ b`.
    pub fn direct_sum(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_k(other)?;
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut m = ExactMatrix::zeros(self.k, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Left-factor-major Kronecker product.
    pub fn kron(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_k(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = ExactMatrix::zeros(self.k, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        m.entries[(i * other.rows + i2) * cols + j * other.cols + j2] = a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Conjugate transpose, using complex conjugation `ζ ↦ ζ^(-1)`.
    pub fn dagger(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.k, self.cols, self.rows, |i, j| self.get(j, i).complex_conj())
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.k, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise `ζ ↦ -ζ`, no transpose.
    pub fn star_entrywise(&self) -> ExactMatrix {
        self.map(RingElem::galois_star)
    }

    pub fn map(&self, f: impl Fn(&RingElem) -> RingElem) -> ExactMatrix {
        ExactMatrix {
            k: self.k,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &RingElem) -> Result<ExactMatrix> {
        if s.k() != self.k {
            return Err(Error::PrecisionMismatch { left: self.k.get(), right: s.k().get() });
        }
        Ok(self.map(|e| e * s))
    }

    pub fn mul_zeta_pow(&self, j: i64) -> ExactMatrix {
        self.map(|e| e.mul_zeta_pow(j))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// True iff `a · a† = I` exactly.
    pub fn is_unitary(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare { op: "is_unitary", rows: self.rows, cols: self.cols });
        }
        Ok(self.mul(&self.dagger())?.is_identity())
    }

    /// Re-expresses every entry at a finer precision.
    pub fn lift(&self, to: Precision) -> Result<ExactMatrix> {
        let entries = self.entries.iter().map(|e| e.lift(to)).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { k: to, rows: self.rows, cols: self.cols, entries })
    }

    /// The permutation this matrix denotes, if it is a 0/1 permutation matrix.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let e = self.get(i, j);
                if e.is_one() {
                    if perm[j] != usize::MAX {
                        return None;
                    }
                    perm[j] = i;
                } else if !e.is_zero() {
                    return None;
                }
            }
            if perm[j] == usize::MAX {
                return None;
            }
        }
        Some(perm)
    }

    pub fn trace(&self) -> RingElem {
        let mut t = RingElem::zero(self.k);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn max_den_exp(&self) -> u32 {
        self.entries.iter().map(RingElem::den_exp).max().unwrap_or(0)
    }

    /// Float embedding of every entry, row by row. Diagnostics only.
    pub fn to_float(&self) -> Vec<Vec<(f64, f64)>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(RingElem::float_embed).collect())
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix(k={}, {}x{})", self.k, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form: `{"k": k, "rows": r, "cols": c, "entries": [[RingElem, ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    k: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RingElem>>,
}

impl TryFrom<MatrixJson> for ExactMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<ExactMatrix> {
        let k = Precision::new(j.k)?;
        if j.rows == 0 || j.cols == 0 {
            return Err(Error::Json("rows and cols must be positive".into()));
        }
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Json(format!("entries do not form a {}x{} array", j.rows, j.cols)));
        }
        let flat: Vec<RingElem> = j.entries.into_iter().flatten().collect();
        ExactMatrix::from_entries(k, j.rows, j.cols, flat).map_err(|e| Error::Json(e.to_string()))
    }
}

impl From<ExactMatrix> for MatrixJson {
    fn from(m: ExactMatrix) -> Self {
        let entries = m.entries.chunks(m.cols).map(|r| r.to_vec()).collect();
        MatrixJson { k: m.k.get(), rows: m.rows, cols: m.cols, entries }
    }
}
