//! Dense exact linear algebra over a finite field: the computational
//! substrate for commutants, socles, and form nondegeneracy.
//!
//! Everything here is plain Gaussian elimination with pivoting by first
//! nonzero entry; subspaces are canonicalized to reduced row echelon form
//! so equality is a byte comparison.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::gf::{Field, FieldSpec, GfError, Scalar};

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("empty basis")]
    EmptyBasis,
    #[error("invalid matrix JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Dense row-major matrix over a fixed field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_hex()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, entries: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    pub fn from_entries(field: &Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        debug_assert!(entries.iter().all(|&e| field.contains(e)));
        Mat { field: field.clone(), rows, cols, entries }
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat::from_entries(field, rows, cols, entries)
    }

    /// Matrix unit E_ij (1-based indices, as in the usual notation).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        m.set(i - 1, j - 1, Scalar::ONE);
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat::from_entries(f, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat::from_entries(f, self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: Scalar) -> Mat {
        let f = &self.field;
        Mat::from_entries(f, self.rows, self.cols, self.entries.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                let dst_base = i * out.cols;
                let src_base = k * other.cols;
                for j in 0..other.cols {
                    let b = other.entries[src_base + j];
                    if !b.is_zero() {
                        out.entries[dst_base + j] = f.add(out.entries[dst_base + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![Scalar::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Scalar::ZERO;
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    acc = f.add(acc, f.mul(a, v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while k != 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let f = &self.field;
        let mut acc = Scalar::ZERO;
        for i in 0..self.rows {
            acc = f.add(acc, self.at(i, i));
        }
        acc
    }

    /// Kronecker product: (A ⊗ B)[(i·rB + k), (j·cB + l)] = A[i,j]·B[k,l].
    pub fn kron(&self, other: &Mat) -> Mat {
        assert_eq!(self.field.as_ref(), other.field.as_ref(), "field mismatch");
        let f = &self.field;
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Mat::zero(f, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            out.set(i * rb + k, j * cb + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum of two square or rectangular matrices.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let mut out = Mat::zero(f, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    /// Flatten row-major into a vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, v: Vec<Scalar>) -> Mat {
        Mat::from_entries(field, rows, cols, v)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let f = &self.field;
        // Eliminate on [A | I].
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, Scalar::ONE);
        }
        let ech = rref(&aug);
        if ech.pivots.len() < n || ech.pivots.iter().take(n).enumerate().any(|(k, &p)| p != k) {
            return None;
        }
        let mut out = Mat::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, ech.mat.at(i, n + j));
            }
        }
        Some(out)
    }

    /// Serialize with field tag, dims, and row-major hex entries.
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.descriptor(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|e| e.to_hex()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Mat, LinalgError> {
        let field = FieldSpec::parse(
            v.get("field")
                .and_then(Value::as_str)
                .ok_or_else(|| LinalgError::BadJson("missing field".into()))?,
        )?;
        let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| LinalgError::BadJson("missing rows".into()))? as usize;
        let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| LinalgError::BadJson("missing cols".into()))? as usize;
        let raw = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| LinalgError::BadJson("missing entries".into()))?;
        if raw.len() != rows * cols {
            return Err(LinalgError::BadJson("entry count mismatch".into()));
        }
        let mut entries = Vec::with_capacity(raw.len());
        for e in raw {
            let s = e.as_str().ok_or_else(|| LinalgError::BadJson("entry not a string".into()))?;
            let sc = Scalar::from_hex(s)?;
            if !field.contains(sc) {
                return Err(LinalgError::BadJson(format!("entry {} outside field", s)));
            }
            entries.push(sc);
        }
        Ok(Mat::from_entries(&field, rows, cols, entries))
    }
}

/// Upper triangular m×m Jordan block: λ on the diagonal, 1 on the superdiagonal.
pub fn jordan_block(field: &Field, m: usize, lambda: Scalar) -> Mat {
    assert!(m >= 1, "jordan block size must be at least 1");
    let mut j = Mat::zero(field, m, m);
    for i in 0..m {
        j.set(i, i, lambda);
        if i + 1 < m {
            j.set(i, i + 1, Scalar::ONE);
        }
    }
    j
}

/// Result of reduction to reduced row echelon form.
pub struct Echelon {
    pub mat: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Mat) -> Echelon {
    let f = m.field().clone();
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        // Pivot: first row at or below r with a nonzero entry in column c.
        let mut piv = None;
        for i in r..rows {
            if !a.at(i, c).is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        a.entries.swap_chunks(piv, r, cols);
        // Normalize pivot row.
        let inv = f.inv(a.at(r, c)).unwrap();
        if inv != Scalar::ONE {
            for j in c..cols {
                let v = a.at(r, j);
                if !v.is_zero() {
                    a.set(r, j, f.mul(v, inv));
                }
            }
        }
        // Eliminate the column everywhere else.
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.at(i, c);
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a.at(r, j);
                if !v.is_zero() {
                    let cur = a.at(i, j);
                    a.set(i, j, f.sub(cur, f.mul(factor, v)));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    Echelon { mat: a, rank: pivots.len(), pivots }
}

trait SwapChunks {
    fn swap_chunks(&mut self, i: usize, j: usize, width: usize);
}

impl SwapChunks for Vec<Scalar> {
    fn swap_chunks(&mut self, i: usize, j: usize, width: usize) {
        if i == j {
            return;
        }
        for k in 0..width {
            self.swap(i * width + k, j * width + k);
        }
    }
}

/// A subspace of coordinate space, canonicalized: basis rows in RREF.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zero(field, 0, ambient) }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(field, ambient) }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_spanning(field: &Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let mut m = Mat::zero(field, vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient);
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let ech = rref(&m);
        let mut basis = Mat::zero(field, ech.rank, ambient);
        for i in 0..ech.rank {
            for j in 0..ambient {
                basis.set(i, j, ech.mat.at(i, j));
            }
        }
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.basis.field().clone();
        let mut w = v.to_vec();
        for i in 0..self.basis.rows {
            let pivot_col = (0..self.ambient).find(|&j| !self.basis.at(i, j).is_zero());
            let Some(pc) = pivot_col else { continue };
            if !w[pc].is_zero() {
                let c = w[pc];
                for j in 0..self.ambient {
                    let b = self.basis.at(i, j);
                    if !b.is_zero() {
                        w[j] = f.sub(w[j], f.mul(c, b));
                    }
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.basis.rows).all(|i| self.contains(other.basis.row(i)))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_spanning(self.basis.field(), self.ambient, &vs)
    }

    /// Intersection, via the kernel of stacked transposes.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let f = self.basis.field();
        let k = self.dim();
        let l = other.dim();
        if k == 0 || l == 0 {
            return Subspace::zero(f, self.ambient);
        }
        // Columns: coefficients (a | b); rows: ambient coordinates.
        let mut m = Mat::zero(f, self.ambient, k + l);
        for i in 0..k {
            for j in 0..self.ambient {
                m.set(j, i, self.basis.at(i, j));
            }
        }
        for i in 0..l {
            for j in 0..self.ambient {
                m.set(j, k + i, other.basis.at(i, j));
            }
        }
        let ns = nullspace(&m);
        let mut vecs = Vec::new();
        for row in ns.basis_vectors() {
            // w = sum a_i * basis_i from the first block.
            let mut w = vec![Scalar::ZERO; self.ambient];
            for (i, &a) in row.iter().take(k).enumerate() {
                if !a.is_zero() {
                    for j in 0..self.ambient {
                        let b = self.basis.at(i, j);
                        if !b.is_zero() {
                            w[j] = f.add(w[j], f.mul(a, b));
                        }
                    }
                }
            }
            vecs.push(w);
        }
        Subspace::from_spanning(f, self.ambient, &vecs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "dim": self.dim(),
            "basis": (0..self.basis.rows)
                .map(|i| self.basis.row(i).iter().map(|e| e.to_hex()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Kernel {v : Mv = 0}, canonicalized to RREF.
pub fn nullspace(m: &Mat) -> Subspace {
    let f = m.field().clone();
    let ech = rref(m);
    let n = m.cols;
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (r, &c) in ech.pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut vecs = Vec::new();
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::ZERO; n];
        v[free] = Scalar::ONE;
        for (r, &c) in ech.pivots.iter().enumerate() {
            let coeff = ech.mat.at(r, free);
            if !coeff.is_zero() {
                v[c] = f.neg(coeff);
            }
        }
        vecs.push(v);
    }
    let ns = Subspace::from_spanning(&f, n, &vecs);
    debug_assert!(ns.basis_vectors().iter().all(|v| m.mul_vec(v).iter().all(|x| x.is_zero())));
    ns
}

/// A particular solution of Ax = b, verified by substitution.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows, b.len(), "rhs length must match rows");
    let f = a.field().clone();
    let mut aug = Mat::zero(&f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.at(i, j));
        }
        aug.set(i, a.cols, b[i]);
    }
    let ech = rref(&aug);
    // Inconsistent iff a pivot lands in the rhs column.
    if ech.pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![Scalar::ZERO; a.cols];
    for (r, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.mat.at(r, a.cols);
    }
    debug_assert_eq!(a.mul_vec(&x), b.to_vec());
    Some(x)
}

/// Incremental span with coefficient tracking: expresses new vectors over
/// the original spanning set.
pub struct SpanSolver {
    field: Field,
    ambient: usize,
    /// Reduced rows, paired with their expression over the original vectors.
    rows: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pivots: Vec<usize>,
    n_gens: usize,
}

impl SpanSolver {
    pub fn new(field: &Field, ambient: usize, generators: &[Vec<Scalar>]) -> SpanSolver {
        let mut s = SpanSolver {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            n_gens: generators.len(),
        };
        for (idx, g) in generators.iter().enumerate() {
            let mut coeff = vec![Scalar::ZERO; generators.len()];
            coeff[idx] = Scalar::ONE;
            s.insert(g.clone(), coeff);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Scalar>, mut coeff: Vec<Scalar>) -> (Vec<Scalar>, Vec<Scalar>) {
        let f = &self.field;
        for ((row, rc), &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p];
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        v[j] = f.sub(v[j], f.mul(c, row[j]));
                    }
                }
                for j in 0..coeff.len() {
                    if !rc[j].is_zero() {
                        coeff[j] = f.sub(coeff[j], f.mul(c, rc[j]));
                    }
                }
            }
        }
        (v, coeff)
    }

    fn insert(&mut self, v: Vec<Scalar>, coeff: Vec<Scalar>) -> bool {
        let f = self.field.clone();
        let (mut v, mut coeff) = self.reduce(v, coeff);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]).unwrap();
        if inv != Scalar::ONE {
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for x in coeff.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        self.rows.push((v, coeff));
        self.pivots.push(p);
        true
    }

    /// Coefficients over the original generators expressing v, if v is in the span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = &self.field;
        let (red, coeff) = self.reduce(v.to_vec(), vec![Scalar::ZERO; self.n_gens]);
        if red.iter().all(|x| x.is_zero()) {
            // v = sum over rows: v - Σ c_r row_r = 0, and each row_r = Σ rc γ.
            // The tracked coefficient is for (v - expression) = 0, so negate.
            Some(coeff.iter().map(|&c| f.neg(c)).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.express(v).is_some()
    }
}

/// Search for an invertible element in the span of square matrices.
///
/// Tries the all-ones combination first, then `trials` random combinations;
/// a returned witness is verified exactly by inversion. `None` means no
/// witness was found, with failure probability at most (n/q)^trials when an
/// invertible combination exists (Schwartz–Zippel on the determinant).
pub fn invertible_in_span(
    basis: &[Mat],
    trials: u32,
    seed: u64,
) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if basis.is_empty() {
        return Err(LinalgError::EmptyBasis);
    }
    let field = basis[0].field().clone();
    let n = basis[0].rows();
    for m in basis {
        if !m.is_square() || m.rows() != n {
            return Err(LinalgError::Shape("basis matrices must be square of equal size".into()));
        }
        if m.field().as_ref() != field.as_ref() {
            return Err(LinalgError::FieldMismatch);
        }
    }
    let combine = |coeffs: &[Scalar]| -> Mat {
        let mut acc = Mat::zero(&field, n, n);
        for (c, m) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(*c));
            }
        }
        acc
    };
    let all_ones = vec![Scalar::ONE; basis.len()];
    if combine(&all_ones).inverse().is_some() {
        return Ok(Some(all_ones));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| field.random(&mut rng)).collect();
        if combine(&coeffs).inverse().is_some() {
            return Ok(Some(coeffs));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, e: u32) -> Field {
        FieldSpec::new(p, e).unwrap()
    }

    fn random_mat(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Mat {
        Mat::from_fn(f, r, c, |_, _| f.random(rng))
    }

    #[test]
    fn nullspace_examples() {
        let f = gf(2, 1);
        assert_eq!(nullspace(&Mat::identity(&f, 3)).dim(), 0);
        assert_eq!(nullspace(&Mat::zero(&f, 2, 3)).dim(), 3);
        // E_21 (2x2): kernel spanned by e_2, rank 1.
        let e21 = Mat::unit(&f, 2, 2, 1);
        assert_eq!(e21.rank(), 1);
        let ns = nullspace(&e21);
        assert_eq!(ns.dim(), 1);
        assert!(ns.contains(&[Scalar::ZERO, Scalar::ONE]));
    }

    #[test]
    fn solve_examples() {
        let f = gf(2, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b: Vec<Scalar> = (0..4).map(|_| f.random(&mut rng)).collect();
        assert_eq!(solve(&Mat::identity(&f, 4), &b), Some(b.clone()));
        let zero = Mat::zero(&f, 3, 3);
        assert_eq!(solve(&zero, &[Scalar::ONE, Scalar::ZERO, Scalar::ZERO]), None);
        // J_2(1) over GF(2), b = e1: must return a verified solution.
        let f2 = gf(2, 1);
        let j = jordan_block(&f2, 2, Scalar::ONE);
        let x = solve(&j, &[Scalar::ONE, Scalar::ZERO]).unwrap();
        assert_eq!(j.mul_vec(&x), vec![Scalar::ONE, Scalar::ZERO]);
    }

    #[test]
    fn kron_examples() {
        let f = gf(2, 1);
        let i2 = Mat::identity(&f, 2);
        let i3 = Mat::identity(&f, 3);
        assert_eq!(i2.kron(&i3), Mat::identity(&f, 6));
        // E_12 ⊗ A: A appears in the top-right block.
        let f16 = gf(2, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_mat(&f16, 3, 3, &mut rng);
        let e12 = Mat::unit(&f16, 2, 1, 2);
        let k = e12.kron(&a);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k.at(i, 3 + j), a.at(i, j));
                assert_eq!(k.at(3 + i, j), Scalar::ZERO);
                assert_eq!(k.at(3 + i, 3 + j), Scalar::ZERO);
                assert_eq!(k.at(i, j), Scalar::ZERO);
            }
        }
    }

    #[test]
    fn kron_mixed_product_randomized() {
        for field in [gf(2, 1), gf(2, 2), gf(2, 16)] {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..100 {
                let a = random_mat(&field, 2, 2, &mut rng);
                let b = random_mat(&field, 2, 2, &mut rng);
                let c = random_mat(&field, 2, 2, &mut rng);
                let d = random_mat(&field, 2, 2, &mut rng);
                assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
            }
        }
    }

    #[test]
    fn kron_rank_multiplicative() {
        let field = gf(2, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let r = rng.gen_range(1..4);
            let c = rng.gen_range(1..4);
            let a = random_mat(&field, r, c, &mut rng);
            let b = random_mat(&field, rng.gen_range(1..4), rng.gen_range(1..4), &mut rng);
            assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
        }
    }

    #[test]
    fn jordan_examples() {
        let f = gf(2, 1);
        let j1 = jordan_block(&f, 1, Scalar::ONE);
        assert_eq!(j1.at(0, 0), Scalar::ONE);
        // (J_3(1) - I)^3 = 0, (J_3(1) - I)^2 != 0 over GF(2).
        let j3 = jordan_block(&f, 3, Scalar::ONE);
        let n = j3.sub(&Mat::identity(&f, 3));
        assert!(!n.pow(2).is_zero());
        assert!(n.pow(3).is_zero());
        // jordan_block(2, 0) = E_12.
        assert_eq!(jordan_block(&f, 2, Scalar::ZERO), Mat::unit(&f, 2, 1, 2));
    }

    #[test]
    fn rref_idempotent() {
        let field = gf(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let m = random_mat(&field, rng.gen_range(1..6), rng.gen_range(1..6), &mut rng);
            let once = rref(&m).mat;
            let twice = rref(&once).mat;
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn rank_pivot_order_independent() {
        // rank computed on the transpose (a different pivot order) agrees.
        let field = gf(2, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let m = random_mat(&field, rng.gen_range(1..7), rng.gen_range(1..7), &mut rng);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn invertible_in_span_examples() {
        let f = gf(2, 16);
        let id = Mat::identity(&f, 2);
        let w = invertible_in_span(&[id.clone()], 4, 0).unwrap().unwrap();
        assert_eq!(w, vec![Scalar::ONE]);
        // Strictly upper triangular span: no invertible member.
        let e12 = Mat::unit(&f, 2, 1, 2);
        assert!(invertible_in_span(&[e12], 8, 0).unwrap().is_none());
        // diag(a, 0) + diag(0, b): witness with both coefficients nonzero.
        let e11 = Mat::unit(&f, 2, 1, 1);
        let e22 = Mat::unit(&f, 2, 2, 2);
        let w = invertible_in_span(&[e11, e22], 4, 0).unwrap().unwrap();
        assert!(w.iter().all(|c| !c.is_zero()));
        assert!(invertible_in_span(&[], 4, 0).is_err());
    }

    #[test]
    fn subspace_canonical_equality() {
        let f = gf(2, 1);
        let one = Scalar::ONE;
        let zero = Scalar::ZERO;
        let s1 = Subspace::from_spanning(&f, 3, &[vec![one, one, zero], vec![zero, one, one]]);
        let s2 = Subspace::from_spanning(&f, 3, &[vec![one, zero, one], vec![zero, one, one]]);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        let i = s1.intersect(&Subspace::from_spanning(&f, 3, &[vec![one, one, zero]]));
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[one, one, zero]));
    }

    #[test]
    fn span_solver_expresses() {
        let f = gf(2, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g1: Vec<Scalar> = (0..4).map(|_| f.random(&mut rng)).collect();
        let g2: Vec<Scalar> = (0..4).map(|_| f.random(&mut rng)).collect();
        let solver = SpanSolver::new(&f, 4, &[g1.clone(), g2.clone()]);
        let a = f.random(&mut rng);
        let b = f.random(&mut rng);
        let v: Vec<Scalar> = (0..4).map(|i| f.add(f.mul(a, g1[i]), f.mul(b, g2[i]))).collect();
        let coeffs = solver.express(&v).unwrap();
        let mut check = vec![Scalar::ZERO; 4];
        for (c, g) in coeffs.iter().zip([&g1, &g2]) {
            for i in 0..4 {
                check[i] = f.add(check[i], f.mul(*c, g[i]));
            }
        }
        assert_eq!(check, v);
    }

    #[test]
    fn matrix_json_round_trip() {
        let f = gf(2, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = random_mat(&f, 3, 5, &mut rng);
        let j = m.to_json();
        let back = Mat::from_json(&j).unwrap();
        assert_eq!(m, back);
        assert_eq!(j, back.to_json());
    }
}
