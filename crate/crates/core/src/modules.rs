//! Modules over a finitely generated algebra, presented by one action
//! matrix per generator; Hom/End computation, isomorphism testing, and
//! decomposition into indecomposable summands.
//!
//! Hom spaces are solution spaces of the intertwiner equations
//! T·g_M = g_N·T. For the module families in scope the action matrices are
//! block-monomial (at most one invertible block per block row and column),
//! so every equation relates at most two unknown blocks; those systems are
//! solved by chain propagation in near-linear time. Anything else falls
//! back to a dense Kronecker-structured nullspace.

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraPresentation};
use crate::gf::{embed, Field, FieldSpec, GfError, Scalar};
use crate::linalg::{invertible_in_span, jordan_block, nullspace, rref, solve, Mat};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("generator sets do not match: {0}")]
    GeneratorMismatch(String),
    #[error("action matrix for {0} is not square of the module dimension")]
    BadAction(String),
    #[error("declared relation fails: {0}")]
    RelationFailure(String),
    #[error("part {part} exceeds the group order {order}")]
    PartTooLarge { part: usize, order: u64 },
    #[error("invalid module JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// A module given by named generator action matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    field: Field,
    dim: usize,
    generators: Vec<(String, Mat)>,
    relations_tag: String,
}

impl std::fmt::Debug for ModulePresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim {} over {}, tag {})", self.dim, self.field, self.relations_tag)
    }
}

impl ModulePresentation {
    pub fn new(
        field: &Field,
        dim: usize,
        generators: Vec<(String, Mat)>,
        relations_tag: impl Into<String>,
    ) -> Result<Self, ModuleError> {
        for (name, g) in &generators {
            if !g.is_square() || g.rows() != dim || g.field().as_ref() != field.as_ref() {
                return Err(ModuleError::BadAction(name.clone()));
            }
        }
        Ok(ModulePresentation {
            field: field.clone(),
            dim,
            generators,
            relations_tag: relations_tag.into(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn relations_tag(&self) -> &str {
        &self.relations_tag
    }

    pub fn generators(&self) -> &[(String, Mat)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Mat> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Block-diagonal direct sum; generators are matched by name.
    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation, ModuleError> {
        if self.field.as_ref() != other.field.as_ref() {
            return Err(ModuleError::GeneratorMismatch("field mismatch".into()));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for (name, g) in &self.generators {
            let h = other
                .generator(name)
                .ok_or_else(|| ModuleError::GeneratorMismatch(format!("missing generator {name}")))?;
            gens.push((name.clone(), g.direct_sum(h)));
        }
        if other.generators.len() != self.generators.len() {
            return Err(ModuleError::GeneratorMismatch("extra generators in summand".into()));
        }
        ModulePresentation::new(
            &self.field,
            self.dim + other.dim,
            gens,
            format!("{}+{}", self.relations_tag, other.relations_tag),
        )
    }

    /// dim M - rank(Σ im g): dimension of M / (generated radical)·M for an
    /// augmented local algebra whose radical is generated by the listed
    /// generator actions.
    pub fn top_dim(&self, radical_generators: &[&str]) -> usize {
        let mats: Vec<&Mat> = radical_generators.iter().filter_map(|n| self.generator(n)).collect();
        if mats.is_empty() {
            return self.dim;
        }
        let mut stacked = Mat::zero(&self.field, self.dim, self.dim * mats.len());
        for (k, g) in mats.iter().enumerate() {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    stacked.set(i, k * self.dim + j, g.at(i, j));
                }
            }
        }
        self.dim - stacked.rank()
    }

    /// Dimension of the joint kernel of the listed generator actions.
    pub fn socle_dim(&self, radical_generators: &[&str]) -> usize {
        let mats: Vec<&Mat> = radical_generators.iter().filter_map(|n| self.generator(n)).collect();
        if mats.is_empty() {
            return self.dim;
        }
        let mut stacked = Mat::zero(&self.field, self.dim * mats.len(), self.dim);
        for (k, g) in mats.iter().enumerate() {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    stacked.set(k * self.dim + i, j, g.at(i, j));
                }
            }
        }
        nullspace(&stacked).dim()
    }

    /// Same module with all entries embedded into an extension field.
    pub fn extend_scalars(&self, dst: &Field) -> Result<ModulePresentation, ModuleError> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (name, g) in &self.generators {
            let entries: Result<Vec<Scalar>, GfError> =
                g.entries().iter().map(|&s| embed(&self.field, dst, s)).collect();
            gens.push((name.clone(), Mat::from_flat(dst, g.rows(), g.cols(), entries?)));
        }
        ModulePresentation::new(dst, self.dim, gens, self.relations_tag.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.descriptor(),
            "dim": self.dim,
            "relations_tag": self.relations_tag,
            "generators": self.generators.iter().map(|(n, g)| json!({
                "name": n,
                "entries": g.entries().iter().map(|e| e.to_hex()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<ModulePresentation, ModuleError> {
        let field = FieldSpec::parse(
            v.get("field").and_then(Value::as_str).ok_or_else(|| ModuleError::BadJson("missing field".into()))?,
        )?;
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| ModuleError::BadJson("missing dim".into()))? as usize;
        let tag = v
            .get("relations_tag")
            .and_then(Value::as_str)
            .ok_or_else(|| ModuleError::BadJson("missing relations_tag".into()))?;
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| ModuleError::BadJson("missing generators".into()))?;
        let mut generators = Vec::with_capacity(gens.len());
        for g in gens {
            let name = g.get("name").and_then(Value::as_str).ok_or_else(|| ModuleError::BadJson("generator without name".into()))?;
            let raw = g
                .get("entries")
                .and_then(Value::as_array)
                .ok_or_else(|| ModuleError::BadJson("generator without entries".into()))?;
            if raw.len() != dim * dim {
                return Err(ModuleError::BadJson("entry count mismatch".into()));
            }
            let mut entries = Vec::with_capacity(raw.len());
            for e in raw {
                let s = e.as_str().ok_or_else(|| ModuleError::BadJson("entry not a string".into()))?;
                entries.push(Scalar::from_hex(s).map_err(ModuleError::Gf)?);
            }
            generators.push((name.to_string(), Mat::from_flat(&field, dim, dim, entries)));
        }
        ModulePresentation::new(&field, dim, generators, tag)
    }
}

/// A basis of intertwiners T : M -> N (T·g_M = g_N·T for every generator).
pub struct HomSpace {
    pub basis: Vec<Mat>,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of Hom(M, N), computed by the block-monomial chain solver when the
/// actions allow it and by a dense nullspace otherwise. Every emitted basis
/// element is verified to intertwine exactly, and the basis is
/// rank-certified independent.
pub fn hom(m: &ModulePresentation, n: &ModulePresentation) -> Result<HomSpace, ModuleError> {
    if m.field.as_ref() != n.field.as_ref() {
        return Err(ModuleError::GeneratorMismatch("field mismatch".into()));
    }
    let mut m_names = m.generator_names();
    let mut n_names = n.generator_names();
    m_names.sort_unstable();
    n_names.sort_unstable();
    if m_names != n_names {
        return Err(ModuleError::GeneratorMismatch(format!("{m_names:?} vs {n_names:?}")));
    }
    let pairs: Vec<(&Mat, &Mat)> = m
        .generators
        .iter()
        .map(|(name, gm)| (gm, n.generator(name).unwrap()))
        .collect();

    let basis = match find_block_size(&pairs, m.dim, n.dim) {
        Some(bs) => block_hom_basis(&m.field, &pairs, m.dim, n.dim, bs),
        None => dense_hom_basis(&m.field, &pairs, m.dim, n.dim),
    };

    // Exactness check for every emitted basis element.
    for t in &basis {
        for (gm, gn) in &pairs {
            assert_eq!(t.mul(gm), gn.mul(t), "intertwiner equation violated");
        }
    }
    // Rank certification.
    if !basis.is_empty() {
        let mut flat = Mat::zero(&m.field, basis.len(), m.dim * n.dim);
        for (i, t) in basis.iter().enumerate() {
            for (j, &e) in t.entries().iter().enumerate() {
                flat.set(i, j, e);
            }
        }
        assert_eq!(flat.rank(), basis.len(), "hom basis must be independent");
    }
    Ok(HomSpace { basis, source_dim: m.dim, target_dim: n.dim })
}

/// Smallest block size at which every action matrix on both sides is
/// block-monomial with invertible nonzero blocks.
fn find_block_size(pairs: &[(&Mat, &Mat)], dm: usize, dn: usize) -> Option<usize> {
    if dm == 0 || dn == 0 {
        return Some(1);
    }
    let g = gcd(dm, dn);
    let mut divisors: Vec<usize> = (1..=g).filter(|d| g % d == 0).collect();
    divisors.sort_unstable();
    'outer: for &bs in &divisors {
        for (gm, gn) in pairs {
            if block_monomial(gm, bs).is_none() || block_monomial(gn, bs).is_none() {
                continue 'outer;
            }
        }
        return Some(bs);
    }
    None
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Block-row/column maps of a block-monomial matrix: for each block column,
/// the unique nonzero (block row, invertible block), if the shape fits.
struct BlockMonomial {
    /// indexed by block column -> (block row, block)
    col_to: Vec<Option<(usize, Mat)>>,
    /// indexed by block row -> (block column, block)
    row_to: Vec<Option<(usize, Mat)>>,
}

fn block_monomial(g: &Mat, bs: usize) -> Option<BlockMonomial> {
    let d = g.rows();
    if d % bs != 0 {
        return None;
    }
    let nb = d / bs;
    let mut col_to: Vec<Option<(usize, Mat)>> = vec![None; nb];
    let mut row_seen = vec![false; nb];
    for bc in 0..nb {
        for br in 0..nb {
            let mut block = Mat::zero(g.field(), bs, bs);
            let mut nonzero = false;
            for i in 0..bs {
                for j in 0..bs {
                    let v = g.at(br * bs + i, bc * bs + j);
                    if !v.is_zero() {
                        nonzero = true;
                    }
                    block.set(i, j, v);
                }
            }
            if !nonzero {
                continue;
            }
            if col_to[bc].is_some() || row_seen[br] {
                return None;
            }
            if block.inverse().is_none() {
                return None;
            }
            row_seen[br] = true;
            col_to[bc] = Some((br, block));
        }
    }
    let mut row_to: Vec<Option<(usize, Mat)>> = vec![None; nb];
    for (bc, entry) in col_to.iter().enumerate() {
        if let Some((br, block)) = entry {
            row_to[*br] = Some((bc, block.clone()));
        }
    }
    Some(BlockMonomial { col_to, row_to })
}

/// Chain solver: every intertwiner equation relates at most two unknown
/// blocks by invertible left/right factors, so components of the relation
/// graph are either forced to zero or parameterized by the solutions of a
/// small self-consistency system on one representative block.
fn block_hom_basis(
    field: &Field,
    pairs: &[(&Mat, &Mat)],
    dm: usize,
    dn: usize,
    bs: usize,
) -> Vec<Mat> {
    let u = dm / bs; // block columns of T
    let v = dn / bs; // block rows of T
    let decomps: Vec<(BlockMonomial, BlockMonomial)> = pairs
        .iter()
        .map(|(gm, gn)| (block_monomial(gm, bs).unwrap(), block_monomial(gn, bs).unwrap()))
        .collect();
    let node = |r: usize, c: usize| r * u + c;
    // Edges: value(a) = l · value(b) · r.
    let mut edges: Vec<Vec<(usize, Mat, Mat)>> = vec![Vec::new(); v * u];
    let mut pinned = vec![false; v * u];
    let mut self_constraints: Vec<Vec<(Mat, Mat)>> = vec![Vec::new(); v * u];
    for (bm, bn) in &decomps {
        for r in 0..v {
            for c in 0..u {
                let lhs = bm.col_to[c].as_ref(); // (s, P): (T·g_M) picks A_{r,s}·P
                let rhs = bn.row_to[r].as_ref(); // (k, Q): (g_N·T) picks Q·A_{k,c}
                match (lhs, rhs) {
                    (None, None) => {}
                    (Some((_, _)), None) => {
                        let s = lhs.unwrap().0;
                        pinned[node(r, s)] = true;
                    }
                    (None, Some((k, _))) => {
                        pinned[node(*k, c)] = true;
                    }
                    (Some((s, p)), Some((k, q))) => {
                        let a = node(r, *s);
                        let b = node(*k, c);
                        let p_inv = p.inverse().unwrap();
                        if a == b {
                            // A·P = Q·A  =>  A = Q·A·P^{-1}.
                            self_constraints[a].push((q.clone(), p_inv));
                        } else {
                            // A_a·P = Q·A_b  =>  A_a = Q·A_b·P^{-1}.
                            edges[a].push((b, q.clone(), p_inv.clone()));
                            // and A_b = Q^{-1}·A_a·P.
                            edges[b].push((a, q.inverse().unwrap(), p.clone()));
                        }
                    }
                }
            }
        }
    }
    // BFS components, accumulating transforms to the root and cycle
    // constraints on the root block.
    let total = v * u;
    let mut comp = vec![usize::MAX; total];
    let mut out = Vec::new();
    let ident = Mat::identity(field, bs);
    for root in 0..total {
        if comp[root] != usize::MAX {
            continue;
        }
        let mut members = vec![root];
        let mut trans: Vec<Option<(Mat, Mat)>> = vec![None; total];
        trans[root] = Some((ident.clone(), ident.clone()));
        comp[root] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut constraints: Vec<(Mat, Mat)> = Vec::new();
        let mut dead = false;
        while let Some(x) = queue.pop_front() {
            if pinned[x] {
                dead = true;
            }
            let (lx, rx) = trans[x].clone().unwrap();
            for (c_l, c_r) in &self_constraints[x] {
                // value(x) = c_l·value(x)·c_r with value(x) = lx·V·rx:
                // V = lx^{-1}·c_l·lx · V · rx·c_r·rx^{-1}.
                let p = lx.inverse().unwrap().mul(c_l).mul(&lx);
                let q = rx.mul(c_r).mul(&rx.inverse().unwrap());
                constraints.push((p, q));
            }
            for (y, l, r) in &edges[x] {
                // value(x) = l·value(y)·r.
                if comp[*y] == usize::MAX {
                    // value(y) = l^{-1}·value(x)·r^{-1} = (l^{-1}·lx)·V·(rx·r^{-1}).
                    let ly = l.inverse().unwrap().mul(&lx);
                    let ry = rx.mul(&r.inverse().unwrap());
                    trans[*y] = Some((ly, ry));
                    comp[*y] = root;
                    members.push(*y);
                    queue.push_back(*y);
                } else {
                    // Cycle: lx·V·rx = l·(ly·V·ry)·r.
                    let (ly, ry) = trans[*y].clone().unwrap();
                    let p = lx.inverse().unwrap().mul(l).mul(&ly);
                    let q = ry.mul(r).mul(&rx.inverse().unwrap());
                    constraints.push((p, q));
                }
            }
        }
        if dead {
            continue;
        }
        // Solve {V = P·V·Q} for all collected constraints.
        let m2 = bs * bs;
        let mut stacked = Mat::zero(field, constraints.len() * m2, m2);
        for (ci, (p, q)) in constraints.iter().enumerate() {
            // vec_col(P·V·Q) = (Q^T ⊗ P)·vec_col(V); condition (I - Q^T⊗P)v = 0.
            let op = q.transpose().kron(p);
            let eye = Mat::identity(field, m2);
            let diff = eye.sub(&op);
            for i in 0..m2 {
                for j in 0..m2 {
                    stacked.set(ci * m2 + i, j, diff.at(i, j));
                }
            }
        }
        let sols = nullspace(&stacked);
        for sol in sols.basis_vectors() {
            // Column-major reshape into bs×bs.
            let mut vblock = Mat::zero(field, bs, bs);
            for col in 0..bs {
                for row in 0..bs {
                    vblock.set(row, col, sol[col * bs + row]);
                }
            }
            let mut t = Mat::zero(field, dn, dm);
            for &mnode in &members {
                let (l, r) = trans[mnode].clone().unwrap();
                let block = l.mul(&vblock).mul(&r);
                let (br, bc) = (mnode / u, mnode % u);
                for i in 0..bs {
                    for j in 0..bs {
                        t.set(br * bs + i, bc * bs + j, block.at(i, j));
                    }
                }
            }
            out.push(t);
        }
    }
    out
}

fn dense_hom_basis(field: &Field, pairs: &[(&Mat, &Mat)], dm: usize, dn: usize) -> Vec<Mat> {
    let unknowns = dm * dn;
    let mut system = Mat::zero(field, pairs.len() * unknowns, unknowns);
    let mut row = 0usize;
    for (gm, gn) in pairs {
        for i in 0..dn {
            for j in 0..dm {
                // (g_N·T - T·g_M)[i][j] = Σ_k gN[i,k]·t[k,j] - Σ_k t[i,k]·gM[k,j].
                for k in 0..dn {
                    let c = gn.at(i, k);
                    if !c.is_zero() {
                        let col = k * dm + j;
                        system.set(row, col, field.add(system.at(row, col), c));
                    }
                }
                for k in 0..dm {
                    let c = gm.at(k, j);
                    if !c.is_zero() {
                        let col = i * dm + k;
                        system.set(row, col, field.sub(system.at(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    nullspace(&system)
        .basis_vectors()
        .into_iter()
        .map(|v| Mat::from_flat(field, dn, dm, v))
        .collect()
}

/// End(M) as a concrete matrix-basis algebra presentation.
pub fn end_algebra(m: &ModulePresentation) -> Result<AlgebraPresentation, ModuleError> {
    let h = hom(m, m)?;
    Ok(AlgebraPresentation::from_matrix_basis(&m.field, h.basis)?)
}

/// End(⊕ parts) assembled blockwise from the pairwise Hom spaces, with the
/// structurally known radical installed as a validated hint.
///
/// Caller contract: parts with equal label are byte-identical presentations
/// of graded uniserial shape (top basis vector first, so an endomorphism is
/// invertible iff its top-left entry is nonzero — Jordan blocks and
/// realized Nakayama uniserials qualify), and parts with different labels
/// are non-isomorphic. A violated contract only invalidates the hint, which
/// then fails validation and falls back to the stock radical computation.
pub fn end_algebra_of_labeled_sum(
    parts: &[(ModulePresentation, usize)],
) -> Result<AlgebraPresentation, ModuleError> {
    assert!(!parts.is_empty());
    let field = parts[0].0.field().clone();
    for (p, l1) in parts {
        for (q, l2) in parts {
            if l1 == l2 {
                assert_eq!(p, q, "equal labels must carry identical presentations");
            }
        }
    }
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0usize, |acc, (p, _)| {
            let off = *acc;
            *acc += p.dim();
            Some(off)
        })
        .collect();
    let total: usize = parts.iter().map(|(p, _)| p.dim()).sum();
    let embed_block = |b: &Mat, to: usize, from: usize| -> Mat {
        let mut big = Mat::zero(&field, total, total);
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let v = b.at(i, j);
                if !v.is_zero() {
                    big.set(offsets[to] + i, offsets[from] + j, v);
                }
            }
        }
        big
    };
    let mut basis: Vec<Mat> = Vec::new();
    let mut radical_idx: Vec<usize> = Vec::new();
    // Unit-map index per instance pair of the same label.
    let mut unit_index = std::collections::HashMap::new();
    for (v, (pv, lv)) in parts.iter().enumerate() {
        for (u, (pu, lu)) in parts.iter().enumerate() {
            let h = hom(pu, pv)?;
            if h.dim() == 0 {
                continue;
            }
            if lu != lv {
                for b in &h.basis {
                    radical_idx.push(basis.len());
                    basis.push(embed_block(b, v, u));
                }
            } else {
                // Basis: the identity-shaped unit map plus the kernel of
                // the top-left-entry functional.
                let theta = Mat::identity(&field, pu.dim());
                unit_index.insert((v, u), basis.len());
                basis.push(embed_block(&theta, v, u));
                // Eliminate the lc against some basis member with lc != 0.
                let lcs: Vec<Scalar> = h.basis.iter().map(|b| b.at(0, 0)).collect();
                let pivot = lcs.iter().position(|c| !c.is_zero());
                match pivot {
                    None => {
                        // No invertible member: contract violated; emit the
                        // raw basis as radical candidates (validation will
                        // decide).
                        for b in &h.basis {
                            radical_idx.push(basis.len());
                            basis.push(embed_block(b, v, u));
                        }
                    }
                    Some(p0) => {
                        let inv = field.inv(lcs[p0]).unwrap();
                        for (i, b) in h.basis.iter().enumerate() {
                            if i == p0 {
                                continue;
                            }
                            let adj = b.sub(&h.basis[p0].scale(field.mul(lcs[i], inv)));
                            debug_assert!(adj.at(0, 0).is_zero());
                            radical_idx.push(basis.len());
                            basis.push(embed_block(&adj, v, u));
                        }
                    }
                }
            }
        }
    }
    let n = basis.len();
    let alg = AlgebraPresentation::from_matrix_basis(&field, basis)?;
    // Radical candidate and matrix-unit certificate in basis coordinates.
    let cand_vecs: Vec<Vec<Scalar>> = radical_idx
        .iter()
        .map(|&i| crate::algebra::unit_vec(n, i))
        .collect();
    let candidate = crate::linalg::Subspace::from_spanning(&field, n, &cand_vecs);
    let mut labels: Vec<usize> = parts.iter().map(|(_, l)| *l).collect();
    labels.sort_unstable();
    labels.dedup();
    let mut block_units = Vec::new();
    let mut complete = true;
    for label in labels {
        let instances: Vec<usize> = parts
            .iter()
            .enumerate()
            .filter(|(_, (_, l))| *l == label)
            .map(|(i, _)| i)
            .collect();
        let k = instances.len();
        let mut grid = Vec::with_capacity(k * k);
        for &v in &instances {
            for &u in &instances {
                match unit_index.get(&(v, u)) {
                    Some(&idx) => grid.push(crate::algebra::unit_vec(n, idx)),
                    None => complete = false,
                }
            }
        }
        block_units.push(grid);
    }
    if complete {
        alg.set_radical_hint(crate::algebra::RadicalHint { candidate, block_units });
    }
    Ok(alg)
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic(Mat),
    NotIsomorphic(&'static str),
    /// No invertible combination found; bound = (dim hom / q)^trials.
    ProbablyNot(f64),
}

impl IsoOutcome {
    pub fn as_bool(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self, IsoOutcome::ProbablyNot(_))
    }
}

/// Isomorphism test. Positives carry an exactly verified invertible
/// intertwiner. Deterministic negatives come from dimension or hom-space
/// refutations; otherwise the negative is probabilistic with a bound.
/// Small ground fields are handled by extending scalars first (module
/// isomorphism over finite fields is stable under field extension).
pub fn is_isomorphic(
    m: &ModulePresentation,
    n: &ModulePresentation,
    seed: u64,
    trials: u32,
) -> Result<IsoOutcome, ModuleError> {
    if m.dim != n.dim {
        return Ok(IsoOutcome::NotIsomorphic("dimension mismatch"));
    }
    let field = m.field.clone();
    let (m_big, n_big);
    let (mw, nw) = if field.order() < (1 << 16) {
        let target = witness_extension(&field)?;
        m_big = m.extend_scalars(&target)?;
        n_big = n.extend_scalars(&target)?;
        (&m_big, &n_big)
    } else {
        (m, n)
    };
    let h_mn = hom(mw, nw)?;
    if h_mn.dim() == 0 {
        return Ok(IsoOutcome::NotIsomorphic("no nonzero homomorphisms"));
    }
    let h_nm = hom(nw, mw)?;
    if h_nm.dim() == 0 {
        return Ok(IsoOutcome::NotIsomorphic("no nonzero homomorphisms"));
    }
    if h_mn.dim() != h_nm.dim() {
        return Ok(IsoOutcome::NotIsomorphic("asymmetric hom dimensions"));
    }
    // Isomorphic modules have Hom(M, N) ≅ End(M) ≅ End(N).
    if h_mn.dim() != hom(mw, mw)?.dim() || h_mn.dim() != hom(nw, nw)?.dim() {
        return Ok(IsoOutcome::NotIsomorphic("hom dimension differs from an endomorphism dimension"));
    }
    let res = invertible_in_span(&h_mn.basis, trials, seed ^ 0x150).map_err(|e| {
        ModuleError::GeneratorMismatch(format!("invertible_in_span: {e}"))
    })?;
    match res {
        Some(coeffs) => {
            let mut w = Mat::zero(mw.field(), n.dim, m.dim);
            for (c, b) in coeffs.iter().zip(&h_mn.basis) {
                if !c.is_zero() {
                    w = w.add(&b.scale(*c));
                }
            }
            Ok(IsoOutcome::Isomorphic(w))
        }
        None => {
            let q = mw.field().order() as f64;
            let bound = ((h_mn.dim() as f64) / q).min(1.0).powi(trials as i32);
            Ok(IsoOutcome::ProbablyNot(bound))
        }
    }
}

/// Extension of the module's field with at least 2^16 elements, as a
/// degree multiple of the base degree.
fn witness_extension(field: &Field) -> Result<Field, GfError> {
    let p = field.p();
    let e = field.e();
    let log2p = (63 - p.leading_zeros()) as u32;
    let needed = 16u32.div_ceil(log2p.max(1));
    let mult = needed.div_ceil(e).max(1);
    FieldSpec::new(p, e * mult)
}

/// Indecomposable summands with multiplicities, by splitting along the
/// primitive idempotents of the endomorphism algebra and grouping the
/// pieces up to isomorphism.
pub fn indecompose(
    m: &ModulePresentation,
    seed: u64,
) -> Result<Vec<(ModulePresentation, usize)>, ModuleError> {
    if m.dim == 0 {
        return Ok(vec![]);
    }
    let e = end_algebra(m)?;
    let prims = e.primitive_idempotents()?;
    let basis = e.matrix_basis().expect("end algebra has a matrix basis");
    let mut groups: Vec<(ModulePresentation, usize)> = Vec::new();
    for (coords, _) in &prims {
        let mut em = Mat::zero(&m.field, m.dim, m.dim);
        for (c, b) in coords.iter().zip(basis) {
            if !c.is_zero() {
                em = em.add(&b.scale(*c));
            }
        }
        // Image basis: pivot rows of rref(e^T) give column-space coordinates.
        let ech = rref(&em.transpose());
        let k = ech.rank;
        let mut cmat = Mat::zero(&m.field, m.dim, k);
        for r in 0..k {
            for j in 0..m.dim {
                cmat.set(j, r, ech.mat.at(r, j));
            }
        }
        // Restricted actions: solve C·G' = g·C column by column.
        let mut gens = Vec::with_capacity(m.generators.len());
        for (name, g) in &m.generators {
            let gc = g.mul(&cmat);
            let mut gp = Mat::zero(&m.field, k, k);
            for col in 0..k {
                let rhs: Vec<Scalar> = (0..m.dim).map(|i| gc.at(i, col)).collect();
                let x = solve(&cmat, &rhs).expect("image of an idempotent is invariant");
                for r in 0..k {
                    gp.set(r, col, x[r]);
                }
            }
            gens.push((name.clone(), gp));
        }
        let summand = ModulePresentation::new(&m.field, k, gens, m.relations_tag.clone())?;
        let mut placed = false;
        for (rep, mult) in groups.iter_mut() {
            if rep.dim() == summand.dim() && is_isomorphic(rep, &summand, seed, 4)?.as_bool() {
                *mult += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((summand, 1));
        }
    }
    let total: usize = groups.iter().map(|(s, m)| s.dim() * m).sum();
    assert_eq!(total, m.dim, "summand dimensions must add up");
    groups.sort_by_key(|(s, _)| (s.dim(), s.to_json().to_string()));
    Ok(groups)
}

/// A nonzero β in Hom(M2, M1) with f∘β = 0 for every f in Hom(M1, M2); its
/// existence certifies that End(M1 ⊕ M2) is not symmetric.
pub fn notsym_witness(
    m1: &ModulePresentation,
    m2: &ModulePresentation,
) -> Result<Option<Mat>, ModuleError> {
    let h21 = hom(m2, m1)?;
    if h21.dim() == 0 {
        return Ok(None);
    }
    let h12 = hom(m1, m2)?;
    if h12.dim() == 0 {
        // Every composition is trivially zero; any nonzero β works.
        return Ok(Some(h21.basis[0].clone()));
    }
    let d2 = m2.dim;
    let rows = h12.dim() * d2 * d2;
    let mut system = Mat::zero(&m1.field, rows, h21.dim());
    for (j, f) in h12.basis.iter().enumerate() {
        for (k, b) in h21.basis.iter().enumerate() {
            let comp = f.mul(b); // d2 x d2
            for (idx, &e) in comp.entries().iter().enumerate() {
                system.set(j * d2 * d2 + idx, k, e);
            }
        }
    }
    let ns = nullspace(&system);
    if ns.dim() == 0 {
        return Ok(None);
    }
    let coeffs = ns.basis_vectors().into_iter().next().unwrap();
    let mut beta = Mat::zero(&m1.field, m1.dim, m2.dim);
    for (c, b) in coeffs.iter().zip(&h21.basis) {
        if !c.is_zero() {
            beta = beta.add(&b.scale(*c));
        }
    }
    assert!(!beta.is_zero());
    Ok(Some(beta))
}

/// Module over a cyclic p-group of order p^r: the generator "x-1" acts as a
/// block-diagonal sum of nilpotent Jordan blocks J_part(1) - I.
pub fn cyclic_group_module(
    field: &Field,
    r: u32,
    parts: &[usize],
) -> Result<ModulePresentation, ModuleError> {
    let p = field.p();
    let order = p.pow(r);
    let dim: usize = parts.iter().sum();
    let mut action = Mat::zero(field, dim, dim);
    let mut off = 0usize;
    for &part in parts {
        if part as u64 > order {
            return Err(ModuleError::PartTooLarge { part, order });
        }
        let block = jordan_block(field, part, Scalar::ONE).sub(&Mat::identity(field, part));
        for i in 0..part {
            for j in 0..part {
                action.set(off + i, off + j, block.at(i, j));
            }
        }
        off += part;
    }
    if !action.pow(order).is_zero() {
        return Err(ModuleError::RelationFailure(format!("(x-1)^{order} != 0")));
    }
    ModulePresentation::new(
        field,
        dim,
        vec![("x-1".to_string(), action)],
        format!("cyclic:p={p},r={r}"),
    )
}
