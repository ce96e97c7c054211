//! Structure theory of a finite-dimensional associative algebra presented
//! concretely: radical, socles, commutator subspace, locality, primitive
//! idempotents.
//!
//! The radical contract is validation-based: whatever chain produced the
//! candidate, the result must pass (i) two-sided ideal closure, (ii)
//! nilpotency, and (iii) the quotient must have zero radical. Checks (i) and
//! (ii) prove the candidate is contained in the radical; (iii) proves the
//! reverse inclusion, so a validated answer is certified correct.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::gf::{Field, Scalar};
use crate::linalg::{nullspace, Mat, SpanSolver, Subspace};
use crate::poly::{factor, roots_in_field, Poly};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error("basis is not closed under multiplication")]
    ClosureFailure,
    #[error("identity matrix is not in the span of the basis")]
    NotUnital,
    #[error("structure constants are not associative")]
    NotAssociative,
    #[error("unit coordinates do not act as a two-sided identity")]
    BadUnit,
    #[error("radical validation failed: {0}")]
    RadicalValidation(String),
    #[error("idempotent splitting failed: {0}")]
    IdempotentSplit(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// An ideal presented by its coordinate subspace, with the closure side it
/// was verified for.
#[derive(Clone, Debug)]
pub struct IdealData {
    pub subspace: Subspace,
    pub side: Side,
}

/// A finite-dimensional unital associative algebra over a finite field,
/// held as structure constants (and the originating matrix basis, if any).
#[derive(Clone)]
pub struct AlgebraPresentation {
    field: Field,
    dim: usize,
    /// c[(i*n + j)*n + k]: coefficient of b_k in b_i * b_j.
    sc: Vec<Scalar>,
    unit: Vec<Scalar>,
    mats: Option<Vec<Mat>>,
    radical_hint: OnceLock<RadicalHint>,
    radical_cache: OnceLock<Subspace>,
    loewy_cache: OnceLock<Vec<usize>>,
}

/// A structurally known radical candidate with a semisimplicity certificate
/// for the quotient: per isomorphism class of summands, a full grid of maps
/// that must project to matrix units spanning A/candidate. Validated before
/// use; an invalid hint falls back to the stock computation.
#[derive(Clone, Debug)]
pub struct RadicalHint {
    pub candidate: Subspace,
    /// block_units[label][v * k + u] = coordinates of the unit map from
    /// instance u to instance v of that label.
    pub block_units: Vec<Vec<Vec<Scalar>>>,
}

impl std::fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraPresentation(dim {} over {})", self.dim, self.field)
    }
}

impl AlgebraPresentation {
    /// Build from a linearly independent family of square matrices whose
    /// span is closed under products and contains the identity.
    pub fn from_matrix_basis(field: &Field, mats: Vec<Mat>) -> Result<Self, AlgebraError> {
        let n = mats.len();
        if n == 0 {
            return Err(AlgebraError::Shape("empty basis".into()));
        }
        let d = mats[0].rows();
        for m in &mats {
            if !m.is_square() || m.rows() != d || m.field().as_ref() != field.as_ref() {
                return Err(AlgebraError::Shape("basis matrices must be square, equal size, same field".into()));
            }
        }
        let flat: Vec<Vec<Scalar>> = mats.iter().map(|m| m.flatten()).collect();
        let solver = SpanSolver::new(field, d * d, &flat);
        if solver.rank() != n {
            return Err(AlgebraError::DependentBasis);
        }
        let unit = solver.express(&Mat::identity(field, d).flatten()).ok_or(AlgebraError::NotUnital)?;
        let mut sc = vec![Scalar::ZERO; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = mats[i].mul(&mats[j]);
                let coeffs = solver.express(&prod.flatten()).ok_or(AlgebraError::ClosureFailure)?;
                sc[(i * n + j) * n..(i * n + j) * n + n].copy_from_slice(&coeffs);
            }
        }
        let alg = AlgebraPresentation {
            field: field.clone(),
            dim: n,
            sc,
            unit,
            mats: Some(mats),
            radical_hint: OnceLock::new(),
            radical_cache: OnceLock::new(),
            loewy_cache: OnceLock::new(),
        };
        alg.verify_unit()?;
        Ok(alg)
    }

    /// Build from structure constants; verifies associativity on all basis
    /// triples and that the unit acts as a two-sided identity.
    pub fn from_structure_constants(
        field: &Field,
        dim: usize,
        sc: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::from_structure_constants_unchecked(field, dim, sc, unit)?;
        alg.verify_associative()?;
        alg.verify_unit()?;
        Ok(alg)
    }

    /// Internal constructor for products of already-verified data
    /// (quotients, corners); still shape-checked.
    pub(crate) fn from_structure_constants_unchecked(
        field: &Field,
        dim: usize,
        sc: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        if sc.len() != dim * dim * dim || unit.len() != dim {
            return Err(AlgebraError::Shape("structure constant tensor has wrong size".into()));
        }
        Ok(AlgebraPresentation {
            field: field.clone(),
            dim,
            sc,
            unit,
            mats: None,
            radical_hint: OnceLock::new(),
            radical_cache: OnceLock::new(),
            loewy_cache: OnceLock::new(),
        })
    }

    fn verify_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..n {
                    let jk = self.basis_product(j, k).to_vec();
                    let left = self.mul_coords(&ij, &unit_vec(n, k));
                    let right = self.mul_coords(&unit_vec(n, i), &jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative);
                    }
                }
            }
        }
        Ok(())
    }

    fn verify_unit(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            let e = unit_vec(self.dim, i);
            if self.mul_coords(&self.unit, &e) != e || self.mul_coords(&e, &self.unit) != e {
                return Err(AlgebraError::BadUnit);
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn matrix_basis(&self) -> Option<&[Mat]> {
        self.mats.as_deref()
    }

    /// Structure constants of b_i * b_j as a coordinate slice.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.sc[(i * n + j) * n..(i * n + j) * n + n]
    }

    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![Scalar::ZERO; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                let row = self.basis_product(i, j);
                for k in 0..n {
                    if !row[k].is_zero() {
                        out[k] = f.add(out[k], f.mul(c, row[k]));
                    }
                }
            }
        }
        out
    }

    pub fn pow_coords(&self, x: &[Scalar], mut k: u64) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        let mut base = x.to_vec();
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            base = self.mul_coords(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Left multiplication operator of basis element i.
    pub fn left_mult_of_basis(&self, i: usize) -> Mat {
        let n = self.dim;
        Mat::from_fn(&self.field, n, n, |k, j| self.basis_product(i, j)[k])
    }

    /// Right multiplication operator of basis element i.
    pub fn right_mult_of_basis(&self, i: usize) -> Mat {
        let n = self.dim;
        Mat::from_fn(&self.field, n, n, |k, j| self.basis_product(j, i)[k])
    }

    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim;
        Mat::from_fn(&self.field, n, n, |k, j| {
            let mut acc = Scalar::ZERO;
            for (i, &xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    let c = self.basis_product(i, j)[k];
                    if !c.is_zero() {
                        acc = self.field.add(acc, self.field.mul(xi, c));
                    }
                }
            }
            acc
        })
    }

    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim;
        Mat::from_fn(&self.field, n, n, |k, j| {
            let mut acc = Scalar::ZERO;
            for (i, &xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    let c = self.basis_product(j, i)[k];
                    if !c.is_zero() {
                        acc = self.field.add(acc, self.field.mul(xi, c));
                    }
                }
            }
            acc
        })
    }

    /// (L_b, R_b) for every basis element: L is an algebra map, R an anti-map.
    pub fn regular_representations(&self) -> (Vec<Mat>, Vec<Mat>) {
        let l = (0..self.dim).map(|i| self.left_mult_of_basis(i)).collect();
        let r = (0..self.dim).map(|i| self.right_mult_of_basis(i)).collect();
        (l, r)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..i {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Monic minimal polynomial of an element given by coordinates.
    pub fn min_poly(&self, x: &[Scalar]) -> Poly {
        let n = self.dim;
        let mut powers: Vec<Vec<Scalar>> = vec![self.unit.clone()];
        let mut solver = SpanSolverAccum::new(&self.field, n);
        solver.insert(self.unit.clone());
        loop {
            let next = self.mul_coords(powers.last().unwrap(), x);
            if let Some(expr) = solver.express_over(&powers, &next) {
                // next = sum expr_i * powers_i, so minpoly = X^k - sum expr_i X^i.
                let k = powers.len();
                let mut coeffs = vec![Scalar::ZERO; k + 1];
                for (i, &c) in expr.iter().enumerate() {
                    coeffs[i] = self.field.neg(c);
                }
                coeffs[k] = Scalar::ONE;
                return Poly::from_coeffs(coeffs);
            }
            solver.insert(next.clone());
            powers.push(next);
        }
    }

    // ---- radical ----

    /// Install a radical candidate with its certificate; used when the
    /// caller knows the radical structurally (endomorphism algebras of
    /// labeled direct sums). Ignored unless it validates.
    pub fn set_radical_hint(&self, hint: RadicalHint) {
        let _ = self.radical_hint.set(hint);
    }

    /// The Jacobson radical, validated (see module docs). Cached.
    pub fn radical(&self) -> &Subspace {
        self.radical_cache.get_or_init(|| {
            if let Some(hint) = self.radical_hint.get() {
                if self.validate_hint(hint) {
                    return hint.candidate.clone();
                }
            }
            self.compute_radical(true)
                .unwrap_or_else(|e| panic!("radical computation failed: {e}"))
        })
    }

    /// Checks (i) ideal, (ii) nilpotent, and — in place of the quotient
    /// radical recursion — that the supplied unit maps project to a full
    /// system of matrix units spanning A/candidate, which certifies the
    /// quotient semisimple.
    fn validate_hint(&self, hint: &RadicalHint) -> bool {
        let cand = &hint.candidate;
        if cand.ambient_dim() != self.dim {
            return false;
        }
        if !self.is_ideal(cand, Side::TwoSided) || self.nilpotency_dims(cand).is_none() {
            return false;
        }
        let q = self.quotient_by(cand);
        let qa = &q.algebra;
        let expected: usize = hint
            .block_units
            .iter()
            .map(|units| {
                let k2 = units.len();
                let k = (k2 as f64).sqrt() as usize;
                if k * k != k2 {
                    usize::MAX
                } else {
                    k2
                }
            })
            .sum();
        if expected != qa.dim() {
            return false;
        }
        // Project, check spanning, and check the matrix-unit relations.
        let mut projected: Vec<Vec<Vec<Scalar>>> = Vec::new();
        let mut flat: Vec<Vec<Scalar>> = Vec::new();
        for units in &hint.block_units {
            let mut label_units = Vec::with_capacity(units.len());
            for u in units {
                let img = q.project(u);
                flat.push(img.clone());
                label_units.push(img);
            }
            projected.push(label_units);
        }
        if Subspace::from_spanning(&self.field, qa.dim(), &flat).dim() != qa.dim() {
            return false;
        }
        let mut total = vec![Scalar::ZERO; qa.dim()];
        for units in &projected {
            let k = (units.len() as f64).sqrt() as usize;
            for v in 0..k {
                for ucol in 0..k {
                    if v == ucol {
                        total = add_vec(&self.field, &total, &units[v * k + ucol]);
                    }
                }
            }
        }
        if total != qa.unit() {
            return false;
        }
        for (l1, units1) in projected.iter().enumerate() {
            let k1 = (units1.len() as f64).sqrt() as usize;
            for (l2, units2) in projected.iter().enumerate() {
                let k2 = (units2.len() as f64).sqrt() as usize;
                for v in 0..k1 {
                    for u in 0..k1 {
                        for v2 in 0..k2 {
                            for u2 in 0..k2 {
                                // θ^{l1}_{v,u} maps u -> v; composition with
                                // θ^{l2}_{v2,u2} (as matrices, left factor
                                // applied second): θ_{v,u}·θ_{v2,u2} =
                                // δ_{l1,l2} δ_{u,v2} θ_{v,u2}.
                                let prod = qa.mul_coords(&units1[v * k1 + u], &units2[v2 * k2 + u2]);
                                let expect = if l1 == l2 && u == v2 {
                                    units1[v * k1 + u2].clone()
                                } else {
                                    vec![Scalar::ZERO; qa.dim()]
                                };
                                if prod != expect {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn radical_ideal(&self) -> IdealData {
        IdealData { subspace: self.radical().clone(), side: Side::TwoSided }
    }

    fn compute_radical(&self, check_quotient: bool) -> Result<Subspace, AlgebraError> {
        if let Some(j) = self.try_local_split_radical() {
            return Ok(j);
        }
        let mut current: Vec<Vec<Scalar>> = (0..self.dim).map(|i| unit_vec(self.dim, i)).collect();
        for _repair in 0..4 {
            current = self.radical_chain(&current);
            let cand = Subspace::from_spanning(&self.field, self.dim, &current);
            if self.validate_radical(&cand, check_quotient).is_ok() {
                return Ok(cand);
            }
            if current.is_empty() {
                break;
            }
        }
        Err(AlgebraError::RadicalValidation("chain did not stabilize to a validated radical".into()))
    }

    /// Fast path: if every basis element b has minimal polynomial (X - c)^k,
    /// the span of {b - c·1} has codimension one and, when it validates as a
    /// nilpotent two-sided ideal, it is the radical (quotient is the field).
    fn try_local_split_radical(&self) -> Option<Subspace> {
        let f = &self.field;
        let mut nilparts = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mu = self.min_poly(&unit_vec(self.dim, i));
            let c = single_eigenvalue(&mu, f)?;
            let mut v = unit_vec(self.dim, i);
            for (k, u) in self.unit.iter().enumerate() {
                v[k] = f.sub(v[k], f.mul(c, *u));
            }
            nilparts.push(v);
        }
        let cand = Subspace::from_spanning(f, self.dim, &nilparts);
        if cand.dim() + 1 != self.dim {
            return None;
        }
        if self.validate_radical(&cand, false).is_ok() {
            Some(cand)
        } else {
            None
        }
    }

    /// One pass of the characteristic-p chain: intersect the kernels of the
    /// Frobenius-semilinear characteristic-polynomial-coefficient forms
    /// x ↦ [X^(d - p^i)] charpoly(rep(x·y)) for levels p^i ≤ d.
    fn radical_chain(&self, start: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let p = f.p();
        let rep: Vec<Mat> = match &self.mats {
            Some(m) => m.clone(),
            None => (0..self.dim).map(|i| self.left_mult_of_basis(i)).collect(),
        };
        let d = rep[0].rows();
        let rep_of = |coords: &[Scalar]| -> Mat {
            let mut acc = Mat::zero(f, d, d);
            for (i, &c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&rep[i].scale(c));
                }
            }
            acc
        };
        let mut current: Vec<Vec<Scalar>> = start.to_vec();
        let mut level: u32 = 0;
        let mut pk: u64 = 1; // p^level
        while pk <= d as u64 {
            if current.is_empty() {
                break;
            }
            let m = current.len();
            // C[row y][col x] = coeff of X^(d - p^level) in charpoly(rep(x*y)).
            let mut c = Mat::zero(f, m, m);
            for (yi, y) in current.iter().enumerate() {
                for (xi, x) in current.iter().enumerate() {
                    let prod = self.mul_coords(x, y);
                    let rm = rep_of(&prod);
                    let cp = charpoly(&rm);
                    let idx = d - pk as usize;
                    c.set(yi, xi, cp.coeffs.get(idx).copied().unwrap_or(Scalar::ZERO));
                }
            }
            // Solve with the substitution s = t^(p^level): the system is linear in s.
            let ns = nullspace(&c);
            let mut next = Vec::with_capacity(ns.dim());
            for s in ns.basis_vectors() {
                let mut combo = vec![Scalar::ZERO; self.dim];
                for (l, &sl) in s.iter().enumerate() {
                    if sl.is_zero() {
                        continue;
                    }
                    let tl = f.frobenius_inv(sl, level);
                    for k in 0..self.dim {
                        let b = current[l][k];
                        if !b.is_zero() {
                            combo[k] = f.add(combo[k], f.mul(tl, b));
                        }
                    }
                }
                next.push(combo);
            }
            current = next;
            level += 1;
            pk = pk.saturating_mul(p);
        }
        current
    }

    fn validate_radical(&self, cand: &Subspace, check_quotient: bool) -> Result<(), AlgebraError> {
        // (i) two-sided ideal.
        if !self.is_ideal(cand, Side::TwoSided) {
            return Err(AlgebraError::RadicalValidation("candidate is not a two-sided ideal".into()));
        }
        // (ii) nilpotent with index at most dim.
        if self.nilpotency_dims(cand).is_none() {
            return Err(AlgebraError::RadicalValidation("candidate is not nilpotent".into()));
        }
        // (iii) the quotient must itself have zero radical.
        if check_quotient && cand.dim() < self.dim {
            let q = self.quotient_by(cand);
            let qr = q.algebra.compute_radical(false).map_err(|e| {
                AlgebraError::RadicalValidation(format!("quotient radical failed: {e}"))
            })?;
            if qr.dim() != 0 {
                return Err(AlgebraError::RadicalValidation("quotient has nonzero radical".into()));
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self, v: &Subspace, side: Side) -> bool {
        let check_left = matches!(side, Side::Left | Side::TwoSided);
        let check_right = matches!(side, Side::Right | Side::TwoSided);
        for row in v.basis_vectors() {
            for i in 0..self.dim {
                let e = unit_vec(self.dim, i);
                if check_left && !v.contains(&self.mul_coords(&e, &row)) {
                    return false;
                }
                if check_right && !v.contains(&self.mul_coords(&row, &e)) {
                    return false;
                }
            }
        }
        true
    }

    /// Dimensions of V, V^2, V^3, ... down to zero; None if the chain fails
    /// to reach zero within dim steps (i.e. V is not nilpotent).
    fn nilpotency_dims(&self, v: &Subspace) -> Option<Vec<usize>> {
        let mut dims = Vec::new();
        let mut cur = v.clone();
        let base: Vec<Vec<Scalar>> = v.basis_vectors();
        for _ in 0..=self.dim {
            dims.push(cur.dim());
            if cur.dim() == 0 {
                return Some(dims);
            }
            let mut prods = Vec::new();
            for x in cur.basis_vectors() {
                for y in &base {
                    prods.push(self.mul_coords(&x, y));
                }
            }
            let next = Subspace::from_spanning(&self.field, self.dim, &prods);
            if next.dim() == cur.dim() {
                return None;
            }
            cur = next;
        }
        None
    }

    /// Dimensions of J^1, J^2, ... (strictly decreasing, ending at 0).
    pub fn loewy_dims(&self) -> &[usize] {
        self.loewy_cache.get_or_init(|| {
            self.nilpotency_dims(self.radical()).expect("validated radical must be nilpotent")
        })
    }

    // ---- socle ----

    /// Left socle {x : Jx = 0} (or right, {x : xJ = 0}); the underlying set
    /// is a two-sided ideal either way, which is verified.
    pub fn socle(&self, side: Side) -> IdealData {
        let j = self.radical().clone();
        let n = self.dim;
        let sub = if j.dim() == 0 {
            Subspace::full(&self.field, n)
        } else {
            let mut stacked = Mat::zero(&self.field, j.dim() * n, n);
            for (bi, jb) in j.basis_vectors().iter().enumerate() {
                let op = match side {
                    Side::Left | Side::TwoSided => self.left_mult_matrix(jb),
                    Side::Right => self.right_mult_matrix(jb),
                };
                for r in 0..n {
                    for c in 0..n {
                        stacked.set(bi * n + r, c, op.at(r, c));
                    }
                }
            }
            nullspace(&stacked)
        };
        assert!(self.is_ideal(&sub, Side::TwoSided), "socle must be a two-sided ideal");
        IdealData { subspace: sub, side: Side::TwoSided }
    }

    /// Span of all commutators b_i b_j - b_j b_i.
    pub fn commutator_subspace(&self) -> Subspace {
        let f = &self.field;
        let n = self.dim;
        let mut vecs = Vec::new();
        for i in 0..n {
            for j in 0..i {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                let diff: Vec<Scalar> = (0..n).map(|k| f.sub(ij[k], ji[k])).collect();
                if diff.iter().any(|x| !x.is_zero()) {
                    vecs.push(diff);
                }
            }
        }
        Subspace::from_spanning(f, n, &vecs)
    }

    /// Largest left (resp. right) ideal contained in V, by fixed-point
    /// iteration of V ← {x ∈ V : b·x ∈ V for all basis b}.
    pub fn largest_ideal_in_subspace(&self, v: &Subspace, side: Side) -> Subspace {
        let f = &self.field;
        let n = self.dim;
        let mut cur = v.clone();
        loop {
            if cur.dim() == 0 {
                return cur;
            }
            let k = cur.dim();
            // Complement projector rows: reduce by cur, read off non-pivot coords.
            let proj = complement_projector(&cur);
            let basis_mat = cur.basis().transpose(); // n x k, columns = basis
            let mut rows: Vec<Mat> = Vec::new();
            for i in 0..n {
                let op = match side {
                    Side::Left | Side::TwoSided => self.left_mult_of_basis(i),
                    Side::Right => self.right_mult_of_basis(i),
                };
                rows.push(proj.mul(&op).mul(&basis_mat));
            }
            let total_rows: usize = rows.iter().map(|m| m.rows()).sum();
            let mut stacked = Mat::zero(f, total_rows, k);
            let mut off = 0;
            for m in rows {
                for r in 0..m.rows() {
                    for c in 0..k {
                        stacked.set(off + r, c, m.at(r, c));
                    }
                }
                off += m.rows();
            }
            let ns = nullspace(&stacked);
            let mut vecs = Vec::new();
            for t in ns.basis_vectors() {
                let mut w = vec![Scalar::ZERO; n];
                for (l, &tl) in t.iter().enumerate() {
                    if !tl.is_zero() {
                        for c in 0..n {
                            let b = cur.basis().at(l, c);
                            if !b.is_zero() {
                                w[c] = f.add(w[c], f.mul(tl, b));
                            }
                        }
                    }
                }
                vecs.push(w);
            }
            let next = Subspace::from_spanning(f, n, &vecs);
            if next.dim() == cur.dim() {
                debug_assert!(self.is_ideal(&next, side));
                return next;
            }
            cur = next;
        }
    }

    // ---- quotient ----

    pub fn quotient_by(&self, ideal: &Subspace) -> QuotientData {
        let f = &self.field;
        let n = self.dim;
        if ideal.dim() == 0 {
            // Quotient by zero: keep the presentation (and its matrix
            // representation) intact.
            return QuotientData {
                algebra: self.clone(),
                ideal: ideal.clone(),
                complement: (0..n).collect(),
                parent_dim: n,
            };
        }
        let pivots: Vec<usize> = (0..ideal.dim())
            .map(|r| (0..n).find(|&c| !ideal.basis().at(r, c).is_zero()).unwrap())
            .collect();
        let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let m = complement.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let mut w = v.to_vec();
            for (r, &p) in pivots.iter().enumerate() {
                if !w[p].is_zero() {
                    let c = w[p];
                    for j in 0..n {
                        let b = ideal.basis().at(r, j);
                        if !b.is_zero() {
                            w[j] = f.sub(w[j], f.mul(c, b));
                        }
                    }
                }
            }
            complement.iter().map(|&c| w[c]).collect()
        };
        let lift = |q: &[Scalar]| -> Vec<Scalar> {
            let mut v = vec![Scalar::ZERO; n];
            for (qi, &c) in complement.iter().enumerate() {
                v[c] = q[qi];
            }
            v
        };
        let mut sc = vec![Scalar::ZERO; m * m * m];
        for a in 0..m {
            for b in 0..m {
                let prod = self.mul_coords(&lift(&unit_vec(m, a)), &lift(&unit_vec(m, b)));
                let q = project(&prod);
                sc[(a * m + b) * m..(a * m + b) * m + m].copy_from_slice(&q);
            }
        }
        let unit_q = project(&self.unit);
        let algebra =
            AlgebraPresentation::from_structure_constants_unchecked(f, m, sc, unit_q).unwrap();
        QuotientData { algebra, ideal: ideal.clone(), complement, parent_dim: n }
    }

    // ---- locality ----

    pub fn is_local(&self) -> (bool, LocalCertificate) {
        let j = self.radical();
        let q = self.quotient_by(j);
        let qa = &q.algebra;
        let dim_quotient = qa.dim();
        if dim_quotient == 1 {
            return (
                true,
                LocalCertificate { dim_quotient, commutative: true, factor_count: Some(1) },
            );
        }
        if !qa.is_commutative() {
            return (
                false,
                LocalCertificate { dim_quotient, commutative: false, factor_count: None },
            );
        }
        let count = qa.frobenius_fixed_dim();
        (count == 1, LocalCertificate { dim_quotient, commutative: true, factor_count: Some(count) })
    }

    /// Dimension of the fixed space of x ↦ x^q on a (commutative,
    /// semisimple) algebra: the number of Wedderburn factors.
    fn frobenius_fixed_dim(&self) -> usize {
        let f = &self.field;
        let n = self.dim;
        let q = f.order();
        let mut phi = Mat::zero(f, n, n);
        for i in 0..n {
            let img = self.pow_coords(&unit_vec(n, i), q);
            for k in 0..n {
                phi.set(k, i, img[k]);
            }
        }
        let diff = phi.sub(&Mat::identity(f, n));
        nullspace(&diff).dim()
    }

    // ---- idempotents ----

    /// Central primitive idempotents, lifted to the algebra itself:
    /// the Frobenius-fixed subalgebra of A/J is split(GF(q))^r; splitting it
    /// by the linear roots of element minimal polynomials yields the central
    /// primitive idempotents of A/J, which lift by repeated p-th powering.
    pub fn central_primitive_idempotents(&self) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
        let f = &self.field;
        let j = self.radical();
        let q = self.quotient_by(j);
        let qa = &q.algebra;
        let m = qa.dim();
        // Center of A/J.
        let mut stacked = Mat::zero(f, m * m, m);
        for i in 0..m {
            let l = qa.left_mult_of_basis(i);
            let r = qa.right_mult_of_basis(i);
            let d = l.sub(&r);
            for rr in 0..m {
                for cc in 0..m {
                    stacked.set(i * m + rr, cc, d.at(rr, cc));
                }
            }
        }
        let center = nullspace(&stacked);
        // Frobenius-fixed subspace of the center.
        let zdim = center.dim();
        let zbasis = center.basis_vectors();
        let zsolver = SpanSolver::new(f, m, &zbasis);
        let mut phi = Mat::zero(f, zdim, zdim);
        for (i, z) in zbasis.iter().enumerate() {
            let img = qa.pow_coords(z, f.order());
            let coeffs = zsolver
                .express(&img)
                .ok_or_else(|| AlgebraError::IdempotentSplit("center not Frobenius-stable".into()))?;
            for k in 0..zdim {
                phi.set(k, i, coeffs[k]);
            }
        }
        let fixed = nullspace(&phi.sub(&Mat::identity(f, zdim)));
        let fixed_elems: Vec<Vec<Scalar>> = fixed
            .basis_vectors()
            .into_iter()
            .map(|t| {
                let mut v = vec![Scalar::ZERO; m];
                for (l, &tl) in t.iter().enumerate() {
                    if !tl.is_zero() {
                        for c in 0..m {
                            let b = zbasis[l][c];
                            if !b.is_zero() {
                                v[c] = f.add(v[c], f.mul(tl, b));
                            }
                        }
                    }
                }
                v
            })
            .collect();
        // Refine {1} by the linear eigenvalues of each fixed element.
        let mut idems: Vec<Vec<Scalar>> = vec![qa.unit().to_vec()];
        for x in &fixed_elems {
            let mut next = Vec::new();
            for e in &idems {
                let w = qa.mul_coords(e, x);
                let mu = min_poly_in_corner(qa, e, &w);
                let rts = roots_in_field(&mu.coeffs, f);
                if rts.len() as isize != mu.degree() {
                    return Err(AlgebraError::IdempotentSplit(
                        "minimal polynomial of a Frobenius-fixed element did not split into linear factors".into(),
                    ));
                }
                if rts.len() <= 1 {
                    next.push(e.clone());
                    continue;
                }
                for &c in &rts {
                    // Lagrange idempotent: prod_{c' != c} (w - c' e)/(c - c').
                    let mut acc = e.clone();
                    for &c2 in &rts {
                        if c2 == c {
                            continue;
                        }
                        let denom = f.inv(f.sub(c, c2)).unwrap();
                        let term: Vec<Scalar> = (0..m)
                            .map(|k| f.mul(f.sub(w[k], f.mul(c2, e[k])), denom))
                            .collect();
                        acc = qa.mul_coords(&acc, &term);
                    }
                    next.push(acc);
                }
            }
            idems = next;
        }
        // Lift sequentially by p-th powering inside shrinking corners.
        let mut lifted: Vec<Vec<Scalar>> = Vec::new();
        let mut corner = self.unit.clone();
        for ebar in &idems {
            let a0 = q.lift(ebar);
            let a = self.mul_coords(&self.mul_coords(&corner, &a0), &corner);
            let e = self.idempotent_power_lift(&a)?;
            corner = sub_vec(f, &corner, &e);
            lifted.push(e);
        }
        if corner.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::IdempotentSplit("central lifts do not sum to 1".into()));
        }
        Ok(lifted)
    }

    fn idempotent_power_lift(&self, a: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        let p = self.field.p();
        let mut pm: u64 = 1;
        while pm < self.dim as u64 {
            pm = pm.saturating_mul(p);
        }
        let e = self.pow_coords(a, pm);
        if self.mul_coords(&e, &e) != e {
            return Err(AlgebraError::IdempotentSplit("p-th power lift is not idempotent".into()));
        }
        Ok(e)
    }

    /// Pairwise orthogonal primitive idempotents summing to 1, each tagged
    /// with the index of the central (block) idempotent containing it.
    pub fn primitive_idempotents(&self) -> Result<Vec<(Vec<Scalar>, usize)>, AlgebraError> {
        let centrals = self.central_primitive_idempotents()?;
        let mut out = Vec::new();
        for (block, e) in centrals.iter().enumerate() {
            let prims = self.split_corner_fully(e)?;
            for pcoords in prims {
                out.push((pcoords, block));
            }
        }
        // Verification: orthogonal decomposition of 1.
        let mut total = vec![Scalar::ZERO; self.dim];
        for (e, _) in &out {
            total = add_vec(&self.field, &total, e);
        }
        if total != self.unit {
            return Err(AlgebraError::IdempotentSplit("primitive idempotents do not sum to 1".into()));
        }
        for (i, (ei, _)) in out.iter().enumerate() {
            for (j, (ej, _)) in out.iter().enumerate() {
                let prod = self.mul_coords(ei, ej);
                let expect = if i == j { ei.clone() } else { vec![Scalar::ZERO; self.dim] };
                if prod != expect {
                    return Err(AlgebraError::IdempotentSplit("idempotents not orthogonal".into()));
                }
            }
        }
        Ok(out)
    }

    fn split_corner_fully(&self, e: &[Scalar]) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
        let corner = self.corner(e);
        if corner.algebra.is_local().0 {
            return Ok(vec![e.to_vec()]);
        }
        // Find an element of the corner whose image in corner/J has a
        // minimal polynomial with at least two coprime parts.
        let b = &corner.algebra;
        let jq = b.quotient_by(b.radical());
        let qb = &jq.algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(0x1de_b10c);
        let mut candidates: Vec<Vec<Scalar>> = (0..qb.dim()).map(|i| unit_vec(qb.dim(), i)).collect();
        for _ in 0..64 {
            candidates.push((0..qb.dim()).map(|_| self.field.random(&mut rng)).collect());
        }
        for z in &candidates {
            let mu = qb.min_poly(z);
            let factors = factor(&mu, &self.field);
            if factors.len() < 2 {
                continue;
            }
            // CRT idempotents of k[z]/(mu) in the quotient, lifted into the corner.
            let parts: Vec<Poly> = factors
                .iter()
                .map(|(g, m)| {
                    let mut acc = Poly::one();
                    for _ in 0..*m {
                        acc = acc.mul(g, &self.field);
                    }
                    acc
                })
                .collect();
            let mut sub_idems_q = Vec::new();
            let mut ok = true;
            for part in &parts {
                let (cof, _) = mu.div_rem(part, &self.field);
                let inv = match poly_inverse_mod(&cof, part, &self.field) {
                    Some(i) => i,
                    None => {
                        ok = false;
                        break;
                    }
                };
                let h = cof.mul(&inv, &self.field).rem(&mu, &self.field);
                sub_idems_q.push(eval_poly_in_algebra(qb, &h, z));
            }
            if !ok {
                continue;
            }
            // Lift each into the corner, sequentially, then recurse.
            let mut result = Vec::new();
            let mut rem = corner.algebra.unit().to_vec();
            for eq in &sub_idems_q {
                let a0 = jq.lift(eq);
                let a = b.mul_coords(&b.mul_coords(&rem, &a0), &rem);
                let idem = b.idempotent_power_lift(&a)?;
                rem = sub_vec(&self.field, &rem, &idem);
                // Back to parent coordinates, then split further.
                let parent = corner.to_parent(&idem);
                result.extend(self.split_corner_fully(&parent)?);
            }
            if rem.iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::IdempotentSplit("corner split does not sum to corner unit".into()));
            }
            return Ok(result);
        }
        Err(AlgebraError::IdempotentSplit(
            "no splitting element found in a non-local corner".into(),
        ))
    }

    /// Corner algebra eAe with the inclusion back into A.
    pub fn corner(&self, e: &[Scalar]) -> CornerData {
        let f = &self.field;
        let n = self.dim;
        let vecs: Vec<Vec<Scalar>> = (0..n)
            .map(|i| self.mul_coords(&self.mul_coords(e, &unit_vec(n, i)), e))
            .collect();
        let span = Subspace::from_spanning(f, n, &vecs);
        let basis = span.basis_vectors();
        let m = basis.len();
        let solver = SpanSolver::new(f, n, &basis);
        let mut sc = vec![Scalar::ZERO; m * m * m];
        for a in 0..m {
            for b in 0..m {
                let prod = self.mul_coords(&basis[a], &basis[b]);
                let coeffs = solver.express(&prod).expect("corner closed under products");
                sc[(a * m + b) * m..(a * m + b) * m + m].copy_from_slice(&coeffs);
            }
        }
        let unit_c = solver.express(e).expect("corner unit in span");
        let mut algebra = AlgebraPresentation::from_structure_constants_unchecked(f, m, sc, unit_c).unwrap();
        // Project the parent's matrix representation, if any: a corner of a
        // matrix algebra is a (non-unital) matrix algebra on the same space,
        // and the radical chain only reads top-indexed characteristic
        // polynomial coefficients, which extra zero eigenvalues leave alone.
        if let Some(parent_mats) = &self.mats {
            let d = parent_mats[0].rows();
            let mut corner_mats = Vec::with_capacity(basis.len());
            for b in &basis {
                let mut acc = Mat::zero(f, d, d);
                for (i, &c) in b.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&parent_mats[i].scale(c));
                    }
                }
                corner_mats.push(acc);
            }
            algebra.mats = Some(corner_mats);
        }
        CornerData { algebra, basis }
    }

    /// Gram matrix of a linear form: G[i][j] = λ(b_i b_j).
    pub fn gram(&self, lambda: &[Scalar]) -> Mat {
        let f = &self.field;
        let n = self.dim;
        Mat::from_fn(f, n, n, |i, j| {
            let row = self.basis_product(i, j);
            let mut acc = Scalar::ZERO;
            for k in 0..n {
                if !row[k].is_zero() && !lambda[k].is_zero() {
                    acc = f.add(acc, f.mul(row[k], lambda[k]));
                }
            }
            acc
        })
    }

    /// Structure report: Loewy dims, socle dims, locality certificate.
    pub fn structure_report(&self) -> Value {
        let (local, cert) = self.is_local();
        json!({
            "field": self.field.descriptor(),
            "dim": self.dim,
            "radical_dim": self.radical().dim(),
            "loewy_dims": self.loewy_dims(),
            "socle_left_dim": self.socle(Side::Left).subspace.dim(),
            "socle_right_dim": self.socle(Side::Right).subspace.dim(),
            "local": local,
            "dim_quotient": cert.dim_quotient,
            "commutative_quotient": cert.commutative,
            "wedderburn_factors": cert.factor_count,
        })
    }

    /// Reindex the basis by a permutation (for invariance tests).
    pub fn permute_basis(&self, perm: &[usize]) -> AlgebraPresentation {
        let n = self.dim;
        assert_eq!(perm.len(), n);
        let mut sc = vec![Scalar::ZERO; n * n * n];
        // new index a corresponds to old index perm[a]
        let mut inv = vec![0usize; n];
        for (a, &o) in perm.iter().enumerate() {
            inv[o] = a;
        }
        for a in 0..n {
            for b in 0..n {
                let old = self.basis_product(perm[a], perm[b]);
                for (k, &c) in old.iter().enumerate() {
                    sc[(a * n + b) * n + inv[k]] = c;
                }
            }
        }
        let mut unit = vec![Scalar::ZERO; n];
        for (k, &c) in self.unit.iter().enumerate() {
            unit[inv[k]] = c;
        }
        AlgebraPresentation::from_structure_constants_unchecked(&self.field, n, sc, unit).unwrap()
    }

    /// The matrix algebra M_k(A), via structure constants on E_uv ⊗ b_i.
    pub fn matrix_algebra(&self, k: usize) -> AlgebraPresentation {
        let f = &self.field;
        let n = self.dim;
        let nn = k * k * n;
        let idx = |u: usize, v: usize, i: usize| (u * k + v) * n + i;
        let mut sc = vec![Scalar::ZERO; nn * nn * nn];
        for u in 0..k {
            for v in 0..k {
                for i in 0..n {
                    for v2 in 0..k {
                        for j in 0..n {
                            // (E_uv ⊗ b_i)(E_v v2 ⊗ b_j) = E_u v2 ⊗ b_i b_j
                            let a = idx(u, v, i);
                            let b = idx(v, v2, j);
                            let prod = self.basis_product(i, j);
                            for (m, &c) in prod.iter().enumerate() {
                                sc[(a * nn + b) * nn + idx(u, v2, m)] = c;
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![Scalar::ZERO; nn];
        for u in 0..k {
            for (i, &c) in self.unit.iter().enumerate() {
                unit[idx(u, u, i)] = c;
            }
        }
        AlgebraPresentation::from_structure_constants_unchecked(f, nn, sc, unit).unwrap()
    }

    /// Same presentation over an extension field (coefficients embedded).
    pub fn extend_scalars(&self, dst: &Field) -> AlgebraPresentation {
        let emb = |s: Scalar| crate::gf::embed(&self.field, dst, s).expect("compatible extension");
        let sc = self.sc.iter().map(|&c| emb(c)).collect();
        let unit = self.unit.iter().map(|&c| emb(c)).collect();
        AlgebraPresentation::from_structure_constants_unchecked(dst, self.dim, sc, unit).unwrap()
    }

    pub fn to_structure_constants(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        (self.sc.clone(), self.unit.clone())
    }

    /// Rebuild forgetting the matrix basis (round-trip check for tests).
    pub fn as_structure_constants_presentation(&self) -> AlgebraPresentation {
        AlgebraPresentation::from_structure_constants(&self.field, self.dim, self.sc.clone(), self.unit.clone())
            .expect("verified presentation round-trips")
    }
}

pub struct QuotientData {
    pub algebra: AlgebraPresentation,
    pub ideal: Subspace,
    pub complement: Vec<usize>,
    parent_dim: usize,
}

impl QuotientData {
    /// Coordinates in the parent of a representative of a quotient element.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; self.parent_dim];
        for (qi, &c) in self.complement.iter().enumerate() {
            v[c] = q[qi];
        }
        v
    }

    /// Image in the quotient of a parent element.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.algebra.field().clone();
        let mut w = v.to_vec();
        for r in 0..self.ideal.dim() {
            let p = (0..w.len()).find(|&c| !self.ideal.basis().at(r, c).is_zero()).unwrap();
            if !w[p].is_zero() {
                let c = w[p];
                for j in 0..w.len() {
                    let b = self.ideal.basis().at(r, j);
                    if !b.is_zero() {
                        w[j] = f.sub(w[j], f.mul(c, b));
                    }
                }
            }
        }
        self.complement.iter().map(|&c| w[c]).collect()
    }
}

pub struct CornerData {
    pub algebra: AlgebraPresentation,
    /// Corner basis expressed in parent coordinates.
    pub basis: Vec<Vec<Scalar>>,
}

impl CornerData {
    pub fn to_parent(&self, x: &[Scalar]) -> Vec<Scalar> {
        let f = self.algebra.field();
        let n = self.basis.first().map(|b| b.len()).unwrap_or(0);
        let mut out = vec![Scalar::ZERO; n];
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                for k in 0..n {
                    let b = self.basis[i][k];
                    if !b.is_zero() {
                        out[k] = f.add(out[k], f.mul(c, b));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCertificate {
    pub dim_quotient: usize,
    pub commutative: bool,
    pub factor_count: Option<usize>,
}

// ---- helpers ----

pub(crate) fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::ZERO; n];
    v[i] = Scalar::ONE;
    v
}

pub(crate) fn add_vec(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub(crate) fn sub_vec(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

/// Rows selecting the complement coordinates after reduction by the
/// subspace: P(v) = 0 iff v lies in the subspace.
fn complement_projector(v: &Subspace) -> Mat {
    let f = v.field().clone();
    let n = v.ambient_dim();
    let k = v.dim();
    let pivots: Vec<usize> = (0..k)
        .map(|r| (0..n).find(|&c| !v.basis().at(r, c).is_zero()).unwrap())
        .collect();
    let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // P[row for complement coord c] = e_c - Σ_r basis[r][c]·e_{pivot_r};
    // this kills exactly the subspace.
    let mut p = Mat::zero(&f, complement.len(), n);
    for (row, &c) in complement.iter().enumerate() {
        p.set(row, c, Scalar::ONE);
        for (r, &pc) in pivots.iter().enumerate() {
            let coeff = v.basis().at(r, c);
            if !coeff.is_zero() {
                p.set(row, pc, f.neg(coeff));
            }
        }
    }
    p
}

/// If mu = (X - c)^k for some c in the field, return c.
fn single_eigenvalue(mu: &Poly, f: &Field) -> Option<Scalar> {
    let k = mu.degree();
    if k < 1 {
        return None;
    }
    let k = k as usize;
    if k == 1 {
        return Some(f.neg(mu.coeffs[0]));
    }
    // Write k = p^v * k' with p ∤ k'; then the coefficient of X^(p^v (k'-1))
    // equals k' * (-c^(p^v)).
    let p = f.p();
    let mut v = 0u32;
    let mut kk = k as u64;
    while kk % p == 0 {
        kk /= p;
        v += 1;
    }
    let pv = (p as u64).pow(v) as usize;
    let idx = pv * (kk as usize - 1);
    let coeff = mu.coeffs.get(idx).copied().unwrap_or(Scalar::ZERO);
    let kprime = f.scalar_from_u64(kk);
    let d = f.neg(f.div(coeff, kprime).ok()?);
    let c = f.frobenius_inv(d, v);
    // Verify exactly.
    let lin = Poly::from_coeffs(vec![f.neg(c), Scalar::ONE]);
    let mut acc = Poly::one();
    for _ in 0..k {
        acc = acc.mul(&lin, f);
    }
    if &acc == mu {
        Some(c)
    } else {
        None
    }
}

/// Minimal polynomial of w inside the corner eQe, with w^0 = e.
fn min_poly_in_corner(alg: &AlgebraPresentation, e: &[Scalar], w: &[Scalar]) -> Poly {
    let f = alg.field().clone();
    let n = alg.dim();
    let mut powers: Vec<Vec<Scalar>> = vec![e.to_vec()];
    let mut solver = SpanSolverAccum::new(&f, n);
    solver.insert(e.to_vec());
    loop {
        let next = alg.mul_coords(powers.last().unwrap(), w);
        if let Some(expr) = solver.express_over(&powers, &next) {
            let k = powers.len();
            let mut coeffs = vec![Scalar::ZERO; k + 1];
            for (i, &c) in expr.iter().enumerate() {
                coeffs[i] = f.neg(c);
            }
            coeffs[k] = Scalar::ONE;
            return Poly::from_coeffs(coeffs);
        }
        solver.insert(next.clone());
        powers.push(next);
    }
}

fn poly_inverse_mod(a: &Poly, modulus: &Poly, f: &Field) -> Option<Poly> {
    // Extended Euclid.
    let mut r0 = modulus.clone();
    let mut r1 = a.rem(modulus, f);
    let mut t0 = Poly::zero();
    let mut t1 = Poly::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1, f);
        let t = t0.sub(&q.mul(&t1, f), f);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.degree() != 0 {
        return None;
    }
    let inv_lead = f.inv(r0.leading()).unwrap();
    Some(t0.scale(inv_lead, f).rem(modulus, f))
}

fn eval_poly_in_algebra(alg: &AlgebraPresentation, p: &Poly, z: &[Scalar]) -> Vec<Scalar> {
    let f = alg.field().clone();
    let n = alg.dim();
    let mut acc = vec![Scalar::ZERO; n];
    for &c in p.coeffs.iter().rev() {
        acc = alg.mul_coords(&acc, z);
        if !c.is_zero() {
            for (k, u) in alg.unit().iter().enumerate() {
                acc[k] = f.add(acc[k], f.mul(c, *u));
            }
        }
    }
    acc
}

/// Incremental linear-independence tracker (no coefficient bookkeeping
/// against originals; expressions computed on demand over a fixed list).
struct SpanSolverAccum {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanSolverAccum {
    fn new(field: &Field, ambient: usize) -> Self {
        SpanSolverAccum { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p];
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        v[j] = f.sub(v[j], f.mul(c, row[j]));
                    }
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = f.inv(v[p]).unwrap();
        if inv != Scalar::ONE {
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// If target is in the span of `list`, return coefficients over `list`
    /// by solving the small system directly.
    fn express_over(&self, list: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.reduce(target.to_vec()).iter().all(|x| x.is_zero()) {
            return None;
        }
        let f = &self.field;
        let mut m = Mat::zero(f, self.ambient, list.len());
        for (col, v) in list.iter().enumerate() {
            for (row, &x) in v.iter().enumerate() {
                m.set(row, col, x);
            }
        }
        crate::linalg::solve(&m, target)
    }
}

/// Characteristic polynomial of a square matrix over a field, via
/// reduction to Hessenberg form and the standard recurrence.
pub fn charpoly(m: &Mat) -> Poly {
    assert!(m.is_square());
    let f = m.field().clone();
    let n = m.rows();
    if n == 0 {
        return Poly::one();
    }
    let mut h = m.clone();
    // Similarity reduction to upper Hessenberg with pivoting.
    for j in 0..n.saturating_sub(2) {
        let mut piv = None;
        for i in j + 1..n {
            if !h.at(i, j).is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        if piv != j + 1 {
            // Swap rows and columns (similarity).
            for c in 0..n {
                let a = h.at(piv, c);
                let b = h.at(j + 1, c);
                h.set(piv, c, b);
                h.set(j + 1, c, a);
            }
            for r in 0..n {
                let a = h.at(r, piv);
                let b = h.at(r, j + 1);
                h.set(r, piv, b);
                h.set(r, j + 1, a);
            }
        }
        let inv = f.inv(h.at(j + 1, j)).unwrap();
        for i in j + 2..n {
            let factor = f.mul(h.at(i, j), inv);
            if factor.is_zero() {
                continue;
            }
            // Row op: row_i -= factor * row_{j+1}; column op: col_{j+1} += factor * col_i.
            for c in 0..n {
                let v = h.at(j + 1, c);
                if !v.is_zero() {
                    let cur = h.at(i, c);
                    h.set(i, c, f.sub(cur, f.mul(factor, v)));
                }
            }
            for r in 0..n {
                let v = h.at(r, i);
                if !v.is_zero() {
                    let cur = h.at(r, j + 1);
                    h.set(r, j + 1, f.add(cur, f.mul(factor, v)));
                }
            }
        }
    }
    // p_0 = 1; p_k = (X - h[k-1][k-1]) p_{k-1} - Σ_{i<k-1} h[i][k-1] (Π subdiag) p_i.
    let mut polys: Vec<Poly> = vec![Poly::one()];
    for k in 1..=n {
        let xk = Poly::from_coeffs(vec![f.neg(h.at(k - 1, k - 1)), Scalar::ONE]);
        let mut acc = xk.mul(&polys[k - 1], &f);
        let mut subprod = Scalar::ONE;
        for i in (0..k - 1).rev() {
            // product of subdiagonal entries h[i+1][i] ... h[k-1][k-2]
            subprod = f.mul(subprod, h.at(i + 1, i));
            if subprod.is_zero() {
                break;
            }
            let coeff = f.mul(h.at(i, k - 1), subprod);
            if !coeff.is_zero() {
                acc = acc.sub(&polys[i].scale(coeff, &f), &f);
            }
        }
        polys.push(acc);
    }
    polys.pop().unwrap()
}
