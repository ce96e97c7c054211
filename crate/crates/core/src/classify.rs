//! Decide quasi-Frobenius, Frobenius, weakly symmetric, and symmetric for
//! an algebra presentation, emitting witnesses or obstructions.
//!
//! Negatives are deterministic wherever the structure theory provides a
//! certificate (socle dimensions, a one-sided ideal inside the commutator
//! subspace, a socle-to-top assignment that is not a permutation); a
//! probabilistic negative only ever appears for the symmetric flag, with an
//! explicit numeric bound attached.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{AlgebraError, AlgebraPresentation, Side};
use crate::gf::Scalar;
use crate::linalg::{nullspace, Subspace};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FlagValue {
    True,
    False,
    FalseProbabilistic,
}

impl FlagValue {
    pub fn as_bool(self) -> bool {
        matches!(self, FlagValue::True)
    }

    pub fn is_deterministic(self) -> bool {
        !matches!(self, FlagValue::FalseProbabilistic)
    }

    fn label(self) -> &'static str {
        match self {
            FlagValue::True => "true",
            FlagValue::False => "false",
            FlagValue::FalseProbabilistic => "false_probabilistic",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// Local algebra with socle dimension other than one.
    SocleDims { left: usize, right: usize },
    /// Some projective has a non-simple socle (dim found vs dim of a simple).
    NonSimpleSocle { block: usize, found: usize, expected: usize },
    /// The socle-to-top assignment on blocks, which is not a permutation or
    /// not compatible with multiplicities.
    Assignment { nu: Vec<usize>, block_sizes: Vec<usize> },
    /// A nonzero one-sided ideal inside the commutator subspace.
    IdealInCommutator { side: Side, ideal: Subspace },
    /// Implied by a deterministic negative earlier in the implication chain.
    Chain { implied_by: &'static str },
}

impl Certificate {
    fn to_json(&self) -> Value {
        match self {
            Certificate::SocleDims { left, right } => json!({
                "kind": "socle_dims", "left": left, "right": right,
            }),
            Certificate::NonSimpleSocle { block, found, expected } => json!({
                "kind": "non_simple_socle", "block": block, "found": found, "expected": expected,
            }),
            Certificate::Assignment { nu, block_sizes } => json!({
                "kind": "socle_to_top_assignment", "nu": nu, "block_sizes": block_sizes,
            }),
            Certificate::IdealInCommutator { side, ideal } => json!({
                "kind": "ideal_in_commutator",
                "side": format!("{:?}", side),
                "ideal": ideal.to_json(),
            }),
            Certificate::Chain { implied_by } => json!({
                "kind": "chain", "implied_by": implied_by,
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProbBound {
    pub dim: usize,
    pub field_order: u64,
    pub trials: u32,
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct FlagReport {
    pub value: FlagValue,
    /// Linear form coordinates for a positive Frobenius/symmetric witness.
    pub witness: Option<Vec<Scalar>>,
    pub certificate: Option<Certificate>,
    pub bound: Option<ProbBound>,
    pub note: String,
}

impl FlagReport {
    fn yes(note: impl Into<String>) -> FlagReport {
        FlagReport { value: FlagValue::True, witness: None, certificate: None, bound: None, note: note.into() }
    }

    fn no(cert: Certificate, note: impl Into<String>) -> FlagReport {
        FlagReport {
            value: FlagValue::False,
            witness: None,
            certificate: Some(cert),
            bound: None,
            note: note.into(),
        }
    }

    fn no_probabilistic(bound: ProbBound, note: impl Into<String>) -> FlagReport {
        FlagReport {
            value: FlagValue::FalseProbabilistic,
            witness: None,
            certificate: None,
            bound: Some(bound),
            note: note.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value.label(),
            "witness": self.witness.as_ref().map(|w| w.iter().map(|s| s.to_hex()).collect::<Vec<_>>()),
            "certificate": self.certificate.as_ref().map(|c| c.to_json()),
            "bound": self.bound.as_ref().map(|b| json!({
                "dim": b.dim, "field_order": b.field_order, "trials": b.trials, "bound": b.bound,
            })),
            "note": self.note,
        })
    }
}

/// Simple true/false view of the four flags (probabilistic false counts as
/// false); what suite comparisons work with.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct FlagsSummary {
    pub quasi_frobenius: bool,
    pub frobenius: bool,
    pub weakly_symmetric: bool,
    pub symmetric: bool,
}

impl std::fmt::Display for FlagsSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "qf={} frob={} wsym={} sym={}",
            self.quasi_frobenius, self.frobenius, self.weakly_symmetric, self.symmetric
        )
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub quasi_frobenius: FlagReport,
    pub frobenius: FlagReport,
    pub weakly_symmetric: FlagReport,
    pub symmetric: FlagReport,
    pub dim: usize,
    pub field: String,
    pub seed: u64,
    pub local: bool,
    /// False when some Wedderburn factor of A/J is a proper field extension
    /// of the working field; such a verdict deserves a second look over a
    /// larger field.
    pub split: bool,
    pub socle_left_dim: usize,
    pub socle_right_dim: usize,
}

impl Verdict {
    pub fn summary(&self) -> FlagsSummary {
        FlagsSummary {
            quasi_frobenius: self.quasi_frobenius.value.as_bool(),
            frobenius: self.frobenius.value.as_bool(),
            weakly_symmetric: self.weakly_symmetric.value.as_bool(),
            symmetric: self.symmetric.value.as_bool(),
        }
    }

    /// True when no flag relied on an exhausted random search.
    pub fn is_deterministic(&self) -> bool {
        self.quasi_frobenius.value.is_deterministic()
            && self.frobenius.value.is_deterministic()
            && self.weakly_symmetric.value.is_deterministic()
            && self.symmetric.value.is_deterministic()
    }

    fn assert_chain(&self) {
        let s = self.summary();
        assert!(
            (!s.symmetric || s.weakly_symmetric)
                && (!s.weakly_symmetric || s.frobenius)
                && (!s.frobenius || s.quasi_frobenius),
            "implication chain violated: {s}"
        );
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quasi_frobenius": self.quasi_frobenius.to_json(),
            "frobenius": self.frobenius.to_json(),
            "weakly_symmetric": self.weakly_symmetric.to_json(),
            "symmetric": self.symmetric.to_json(),
            "dim": self.dim,
            "field": self.field,
            "seed": self.seed,
            "local": self.local,
            "split": self.split,
            "socle_left_dim": self.socle_left_dim,
            "socle_right_dim": self.socle_right_dim,
        })
    }
}

#[derive(Copy, Clone, Debug)]
pub struct ClassifyOptions {
    pub seed: u64,
    pub trials: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { seed: 0, trials: 4 }
    }
}

/// Enough trials that q^trials >= 2^40, so small working fields do not
/// produce flaky witness searches.
fn effective_trials(q: u64, base: u32) -> u32 {
    let log2q = 63 - q.leading_zeros() as u32;
    let log2q = log2q.max(1);
    base.max(40u32.div_ceil(log2q)).min(64)
}

/// Outcome of the general (Pierce decomposition) quasi-Frobenius analysis.
struct QfAnalysis {
    qf: FlagReport,
    /// Per block: number of primitive idempotents (matrix size).
    block_sizes: Vec<usize>,
    /// Socle-to-top assignment on blocks, when every socle was simple.
    nu: Option<Vec<usize>>,
    split: bool,
}

fn general_qf_analysis(alg: &AlgebraPresentation) -> Result<QfAnalysis, AlgebraError> {
    let f = alg.field().clone();
    let n = alg.dim();
    let centrals = alg.central_primitive_idempotents()?;
    let primitives = alg.primitive_idempotents()?;
    let n_blocks = centrals.len();
    let mut block_sizes = vec![0usize; n_blocks];
    for (_, b) in &primitives {
        block_sizes[*b] += 1;
    }
    // Block dimensions inside A/J give the simple dimensions.
    let q = alg.quotient_by(alg.radical());
    let qa = &q.algebra;
    let mut block_dims = vec![0usize; n_blocks];
    for (c, z) in centrals.iter().enumerate() {
        let zq = q.project(z);
        let vecs: Vec<Vec<Scalar>> = (0..qa.dim())
            .map(|i| qa.mul_coords(&crate::algebra::unit_vec(qa.dim(), i), &zq))
            .collect();
        block_dims[c] = Subspace::from_spanning(&f, qa.dim(), &vecs).dim();
    }
    let simple_dims: Vec<usize> = (0..n_blocks).map(|c| block_dims[c] / block_sizes[c]).collect();
    // Split iff every block is a full matrix algebra over the ground field.
    let split = (0..n_blocks).all(|c| block_dims[c] == block_sizes[c] * block_sizes[c]);
    let socle = alg.socle(Side::Left).subspace;
    let mut nu = vec![usize::MAX; n_blocks];
    for (e, block) in &primitives {
        // P = A·e.
        let vecs: Vec<Vec<Scalar>> = (0..n)
            .map(|i| alg.mul_coords(&crate::algebra::unit_vec(n, i), e))
            .collect();
        let p = Subspace::from_spanning(&f, n, &vecs);
        let soc_p = p.intersect(&socle);
        // Isotype of the socle: the unique block whose central idempotent
        // acts nonzero on it.
        let mut acting = Vec::new();
        for (c, z) in centrals.iter().enumerate() {
            let hit = soc_p
                .basis_vectors()
                .iter()
                .any(|s| alg.mul_coords(z, s).iter().any(|x| !x.is_zero()));
            if hit {
                acting.push(c);
            }
        }
        if acting.len() != 1 {
            return Ok(QfAnalysis {
                qf: FlagReport::no(
                    Certificate::NonSimpleSocle { block: *block, found: soc_p.dim(), expected: 0 },
                    format!(
                        "socle of a projective in block {} is not isotypic ({} blocks act)",
                        block,
                        acting.len()
                    ),
                ),
                block_sizes,
                nu: None,
                split,
            });
        }
        let target = acting[0];
        if soc_p.dim() != simple_dims[target] {
            return Ok(QfAnalysis {
                qf: FlagReport::no(
                    Certificate::NonSimpleSocle {
                        block: *block,
                        found: soc_p.dim(),
                        expected: simple_dims[target],
                    },
                    "socle of a projective is not simple",
                ),
                block_sizes,
                nu: None,
                split,
            });
        }
        if nu[*block] == usize::MAX {
            nu[*block] = target;
        } else if nu[*block] != target {
            return Err(AlgebraError::IdempotentSplit(
                "isomorphic projectives disagree on socle isotype".into(),
            ));
        }
    }
    let mut seen = vec![false; n_blocks];
    let mut permutation = true;
    for &t in &nu {
        if t == usize::MAX || seen[t] {
            permutation = false;
        } else {
            seen[t] = true;
        }
    }
    if !permutation {
        return Ok(QfAnalysis {
            qf: FlagReport::no(
                Certificate::Assignment { nu: nu.clone(), block_sizes: block_sizes.clone() },
                "socle-to-top assignment is not a permutation of the simples",
            ),
            block_sizes,
            nu: Some(nu),
            split,
        });
    }
    Ok(QfAnalysis {
        qf: FlagReport::yes("every projective has simple socle and the assignment is a permutation"),
        block_sizes,
        nu: Some(nu),
        split,
    })
}

/// Random search for a Frobenius form (exactly verified invertible Gram),
/// with the deterministic local fallback on exhaustion.
pub fn frobenius_witness(
    alg: &AlgebraPresentation,
    seed: u64,
    trials: u32,
) -> (FlagValue, Option<Vec<Scalar>>, Option<ProbBound>) {
    let f = alg.field().clone();
    let n = alg.dim();
    let trials = effective_trials(f.order(), trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf20b);
    for _ in 0..trials {
        let lambda: Vec<Scalar> = (0..n).map(|_| f.random(&mut rng)).collect();
        if alg.gram(&lambda).inverse().is_some() {
            return (FlagValue::True, Some(lambda), None);
        }
    }
    let (local, cert) = alg.is_local();
    if local && cert.dim_quotient == 1 {
        let soc = alg.socle(Side::Left).subspace;
        if soc.dim() == 1 {
            // Socle coordinate functional: nonzero on the simple socle, so
            // its kernel contains no nonzero left ideal.
            if let Some(lambda) = socle_functional(alg, &soc) {
                return (FlagValue::True, Some(lambda), None);
            }
        }
        return (FlagValue::False, None, None);
    }
    let bound = prob_bound(n, f.order(), trials);
    (FlagValue::FalseProbabilistic, None, Some(bound))
}

fn prob_bound(dim: usize, q: u64, trials: u32) -> ProbBound {
    let per = (dim as f64 / q as f64).min(1.0);
    ProbBound { dim, field_order: q, trials, bound: per.powi(trials as i32) }
}

/// A form that is nonzero on the (simple) socle: dual coordinate of the
/// first socle basis vector's pivot. Verified by Gram inversion.
fn socle_functional(alg: &AlgebraPresentation, soc: &Subspace) -> Option<Vec<Scalar>> {
    let n = alg.dim();
    let pivot = (0..n).find(|&j| !soc.basis().at(0, j).is_zero())?;
    let mut lambda = vec![Scalar::ZERO; n];
    lambda[pivot] = Scalar::ONE;
    if alg.gram(&lambda).inverse().is_some() {
        Some(lambda)
    } else {
        None
    }
}

/// Search for a symmetrizing form: random forms vanishing on [A,A] with
/// exactly verified invertible Gram; deterministic rejection via a nonzero
/// one-sided ideal inside the commutator subspace.
pub fn symmetric_witness(
    alg: &AlgebraPresentation,
    seed: u64,
    trials: u32,
) -> (FlagValue, Option<Vec<Scalar>>, Option<Certificate>, Option<ProbBound>) {
    let f = alg.field().clone();
    let n = alg.dim();
    let comm = alg.commutator_subspace();
    for side in [Side::Left, Side::Right] {
        let ideal = alg.largest_ideal_in_subspace(&comm, side);
        if ideal.dim() > 0 {
            return (
                FlagValue::False,
                None,
                Some(Certificate::IdealInCommutator { side, ideal }),
                None,
            );
        }
    }
    // Forms vanishing on the commutator subspace: kernel of its basis rows.
    let ann = if comm.dim() == 0 {
        Subspace::full(&f, n)
    } else {
        nullspace(comm.basis())
    };
    let trials = effective_trials(f.order(), trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e11);
    let ann_basis = ann.basis_vectors();
    for _ in 0..trials {
        let mut lambda = vec![Scalar::ZERO; n];
        for b in &ann_basis {
            let c = f.random(&mut rng);
            if !c.is_zero() {
                for (k, &x) in b.iter().enumerate() {
                    if !x.is_zero() {
                        lambda[k] = f.add(lambda[k], f.mul(c, x));
                    }
                }
            }
        }
        if alg.gram(&lambda).inverse().is_some() {
            debug_assert!(symmetry_holds(alg, &lambda));
            return (FlagValue::True, Some(lambda), None, None);
        }
    }
    // Commutative algebras: a Frobenius form is symmetric; try the socle
    // functional deterministically.
    if alg.is_commutative() {
        let soc = alg.socle(Side::Left).subspace;
        if soc.dim() >= 1 {
            if let Some(lambda) = socle_functional(alg, &soc) {
                return (FlagValue::True, Some(lambda), None, None);
            }
        }
    }
    let bound = prob_bound(ann.dim(), f.order(), trials);
    (FlagValue::FalseProbabilistic, None, None, Some(bound))
}

fn symmetry_holds(alg: &AlgebraPresentation, lambda: &[Scalar]) -> bool {
    let g = alg.gram(lambda);
    g == g.transpose()
}

/// Run all four tests, enforce the implication chain, and record the
/// provenance of every flag.
pub fn classify(alg: &AlgebraPresentation, opts: &ClassifyOptions) -> Result<Verdict, AlgebraError> {
    let f = alg.field().clone();
    let n = alg.dim();
    let (local, local_cert) = alg.is_local();
    let soc_left = alg.socle(Side::Left).subspace;
    let soc_right = alg.socle(Side::Right).subspace;

    // Quasi-Frobenius.
    let mut analysis: Option<QfAnalysis> = None;
    let qf_report = if local && local_cert.dim_quotient == 1 {
        if soc_left.dim() == 1 {
            FlagReport::yes("local with one-dimensional left socle")
        } else {
            FlagReport::no(
                Certificate::SocleDims { left: soc_left.dim(), right: soc_right.dim() },
                format!("local with socle dimension {}", soc_left.dim()),
            )
        }
    } else {
        let a = general_qf_analysis(alg)?;
        let report = a.qf.clone();
        analysis = Some(a);
        report
    };
    let split = match &analysis {
        Some(a) => a.split,
        None => local_cert.dim_quotient == 1,
    };

    // Frobenius.
    let frobenius_report = if !qf_report.value.as_bool() {
        FlagReport::no(Certificate::Chain { implied_by: "quasi_frobenius" }, "not quasi-Frobenius")
    } else {
        let (value, witness, bound) = frobenius_witness(alg, opts.seed, opts.trials);
        match value {
            FlagValue::True => {
                FlagReport { value, witness, certificate: None, bound: None, note: "invertible Gram matrix, verified exactly".into() }
            }
            FlagValue::False => FlagReport::no(
                Certificate::SocleDims { left: soc_left.dim(), right: soc_right.dim() },
                "local socle criterion",
            ),
            FlagValue::FalseProbabilistic => {
                // Deterministic multiplicity criterion from the Pierce data:
                // Frobenius iff QF and block sizes are ν-invariant.
                if let Some(a) = &analysis {
                    if let Some(nu) = &a.nu {
                        let ok = nu.iter().enumerate().all(|(c, &t)| a.block_sizes[t] == a.block_sizes[c]);
                        if ok {
                            FlagReport::yes("multiplicity criterion: block sizes invariant under the socle permutation (witness search exhausted)")
                        } else {
                            FlagReport::no(
                                Certificate::Assignment { nu: nu.clone(), block_sizes: a.block_sizes.clone() },
                                "block sizes not invariant under the socle permutation",
                            )
                        }
                    } else {
                        FlagReport::no_probabilistic(bound.unwrap(), "witness search exhausted")
                    }
                } else {
                    FlagReport::no_probabilistic(bound.unwrap(), "witness search exhausted")
                }
            }
        }
    };

    // Weakly symmetric.
    let weakly_report = if !frobenius_report.value.as_bool() {
        let note = if frobenius_report.value == FlagValue::FalseProbabilistic {
            "not Frobenius (probabilistic)"
        } else {
            "not Frobenius"
        };
        let mut r = FlagReport::no(Certificate::Chain { implied_by: "frobenius" }, note);
        if frobenius_report.value == FlagValue::FalseProbabilistic {
            r.value = FlagValue::FalseProbabilistic;
            r.bound = frobenius_report.bound.clone();
        }
        r
    } else if local {
        FlagReport::yes("local Frobenius algebra: the permutation on one simple is the identity")
    } else if let Some(a) = &analysis {
        let nu = a.nu.as_ref().expect("qf true implies assignment exists");
        if nu.iter().enumerate().all(|(c, &t)| c == t) {
            FlagReport::yes("socle-to-top assignment is the identity")
        } else {
            FlagReport::no(
                Certificate::Assignment { nu: nu.clone(), block_sizes: a.block_sizes.clone() },
                "socle-to-top assignment is a nontrivial permutation",
            )
        }
    } else {
        FlagReport::yes("local Frobenius algebra")
    };

    // Symmetric.
    let symmetric_report = if !weakly_report.value.as_bool() {
        let mut r = FlagReport::no(Certificate::Chain { implied_by: "weakly_symmetric" }, "not weakly symmetric");
        if weakly_report.value == FlagValue::FalseProbabilistic {
            r.value = FlagValue::FalseProbabilistic;
            r.bound = weakly_report.bound.clone();
        }
        r
    } else {
        let (value, witness, cert, bound) = symmetric_witness(alg, opts.seed, opts.trials);
        match value {
            FlagValue::True => FlagReport {
                value,
                witness,
                certificate: None,
                bound: None,
                note: "symmetrizing form with invertible Gram matrix, verified exactly".into(),
            },
            FlagValue::False => FlagReport {
                value,
                witness: None,
                certificate: cert,
                bound: None,
                note: "nonzero one-sided ideal inside the commutator subspace".into(),
            },
            FlagValue::FalseProbabilistic => {
                FlagReport::no_probabilistic(bound.unwrap(), "witness search over forms vanishing on [A,A] exhausted")
            }
        }
    };

    let verdict = Verdict {
        quasi_frobenius: qf_report,
        frobenius: frobenius_report,
        weakly_symmetric: weakly_report,
        symmetric: symmetric_report,
        dim: n,
        field: f.descriptor(),
        seed: opts.seed,
        local,
        split,
        socle_left_dim: soc_left.dim(),
        socle_right_dim: soc_right.dim(),
    };
    verdict.assert_chain();
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Field, FieldSpec};
    use crate::linalg::{jordan_block, Mat};
    use rand::{Rng, SeedableRng};

    fn gf(p: u64, e: u32) -> Field {
        FieldSpec::new(p, e).unwrap()
    }

    fn truncated_poly_algebra(f: &Field, m: usize) -> AlgebraPresentation {
        let t = jordan_block(f, m, Scalar::ZERO);
        let mut mats = vec![Mat::identity(f, m)];
        let mut cur = t.clone();
        for _ in 1..m {
            mats.push(cur.clone());
            cur = cur.mul(&t);
        }
        AlgebraPresentation::from_matrix_basis(f, mats).unwrap()
    }

    fn product_field_algebra(f: &Field) -> AlgebraPresentation {
        let mats = vec![Mat::unit(f, 2, 1, 1), Mat::unit(f, 2, 2, 2)];
        AlgebraPresentation::from_matrix_basis(f, mats).unwrap()
    }

    fn upper_triangular_2x2(f: &Field) -> AlgebraPresentation {
        let mats = vec![Mat::unit(f, 2, 1, 1), Mat::unit(f, 2, 1, 2), Mat::unit(f, 2, 2, 2)];
        AlgebraPresentation::from_matrix_basis(f, mats).unwrap()
    }

    #[test]
    fn truncated_polynomial_algebras_fully_symmetric() {
        let f = gf(2, 16);
        for m in 1..6 {
            let a = truncated_poly_algebra(&f, m);
            let v = classify(&a, &ClassifyOptions::default()).unwrap();
            assert!(v.summary().symmetric, "k[T]/(T^{m}) must be symmetric");
            assert!(v.summary().quasi_frobenius);
            assert!(v.is_deterministic());
        }
    }

    #[test]
    fn delta_form_is_a_frobenius_witness() {
        // λ(T^i) = δ_{i,e-1} on k[T]/(T^e): invertible Gram.
        let f = gf(2, 16);
        let e = 4;
        let a = truncated_poly_algebra(&f, e);
        let mut lambda = vec![Scalar::ZERO; e];
        lambda[e - 1] = Scalar::ONE;
        assert!(a.gram(&lambda).inverse().is_some());
        assert!(super::symmetry_holds(&a, &lambda));
    }

    #[test]
    fn product_of_fields_symmetric_with_all_ones_form() {
        let f = gf(2, 16);
        let a = product_field_algebra(&f);
        // λ = (1, 1) works.
        let lambda = vec![Scalar::ONE, Scalar::ONE];
        assert!(a.gram(&lambda).inverse().is_some());
        let v = classify(&a, &ClassifyOptions::default()).unwrap();
        assert!(v.summary().symmetric);
        assert!(v.summary().weakly_symmetric);
    }

    #[test]
    fn upper_triangular_not_frobenius() {
        // Every form has singular Gram; over GF(2) and GF(4) this is
        // checkable by exhausting all q^3 forms.
        for field in [gf(2, 1), gf(2, 2)] {
            let a = upper_triangular_2x2(&field);
            let q = field.order();
            let mut found = false;
            for x in 0..q {
                for y in 0..q {
                    for z in 0..q {
                        let lambda = vec![
                            Scalar::from_raw(x),
                            Scalar::from_raw(y),
                            Scalar::from_raw(z),
                        ];
                        if a.gram(&lambda).inverse().is_some() {
                            found = true;
                        }
                    }
                }
            }
            assert!(!found, "no Frobenius form exists for the triangular algebra");
            let v = classify(&a, &ClassifyOptions::default()).unwrap();
            assert!(!v.summary().quasi_frobenius);
            assert!(!v.summary().frobenius);
            assert!(v.is_deterministic());
        }
    }

    #[test]
    fn full_matrix_algebra_symmetric() {
        let f = gf(2, 16);
        let mut mats = Vec::new();
        for i in 1..=2 {
            for j in 1..=2 {
                mats.push(Mat::unit(&f, 2, i, j));
            }
        }
        let a = AlgebraPresentation::from_matrix_basis(&f, mats).unwrap();
        let v = classify(&a, &ClassifyOptions::default()).unwrap();
        assert!(v.summary().symmetric, "matrix algebras are symmetric (trace form)");
    }

    #[test]
    fn monogenic_subalgebras_symmetric() {
        // Subalgebras generated by one random matrix are symmetric.
        let f = gf(2, 16);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xa1);
        for trial in 0..50 {
            let d = rng.gen_range(2..13);
            let m = Mat::from_fn(&f, d, d, |_, _| f.random(&mut rng));
            let mut mats = vec![Mat::identity(&f, d)];
            let mut flats = vec![Mat::identity(&f, d).flatten()];
            let mut cur = m.clone();
            loop {
                let solver = crate::linalg::SpanSolver::new(&f, d * d, &flats);
                if solver.express(&cur.flatten()).is_some() {
                    break;
                }
                mats.push(cur.clone());
                flats.push(cur.flatten());
                cur = cur.mul(&m);
            }
            let a = AlgebraPresentation::from_matrix_basis(&f, mats).unwrap();
            let v = classify(&a, &ClassifyOptions { seed: trial, trials: 4 }).unwrap();
            assert!(v.summary().symmetric, "monogenic algebra must be symmetric (trial {trial})");
        }
    }

    #[test]
    fn verdict_stable_under_basis_permutation_and_reseeding() {
        let f = gf(2, 16);
        let a = truncated_poly_algebra(&f, 4);
        let base = classify(&a, &ClassifyOptions::default()).unwrap().summary();
        let permuted = a.permute_basis(&[3, 1, 0, 2]);
        assert_eq!(base, classify(&permuted, &ClassifyOptions::default()).unwrap().summary());
        for seed in [1u64, 99, 12345] {
            assert_eq!(base, classify(&a, &ClassifyOptions { seed, trials: 4 }).unwrap().summary());
        }
    }

    #[test]
    fn verdict_stable_under_field_extension() {
        let small = gf(2, 8);
        let big = gf(2, 16);
        let a = truncated_poly_algebra(&small, 3);
        let b = a.extend_scalars(&big);
        assert_eq!(
            classify(&a, &ClassifyOptions::default()).unwrap().summary(),
            classify(&b, &ClassifyOptions::default()).unwrap().summary()
        );
        let kk_small = product_field_algebra(&small);
        let kk_big = kk_small.extend_scalars(&big);
        assert_eq!(
            classify(&kk_small, &ClassifyOptions::default()).unwrap().summary(),
            classify(&kk_big, &ClassifyOptions::default()).unwrap().summary()
        );
    }

    #[test]
    fn morita_stability_spot_check() {
        let f = gf(2, 16);
        for a in [truncated_poly_algebra(&f, 2), truncated_poly_algebra(&f, 3), product_field_algebra(&f)] {
            let m2a = a.matrix_algebra(2);
            assert_eq!(
                classify(&a, &ClassifyOptions::default()).unwrap().summary(),
                classify(&m2a, &ClassifyOptions::default()).unwrap().summary()
            );
        }
    }

    #[test]
    fn small_field_witness_searches_are_boosted() {
        assert_eq!(super::effective_trials(2, 4), 40);
        assert_eq!(super::effective_trials(4, 4), 20);
        assert_eq!(super::effective_trials(1 << 16, 4), 4);
        // Over GF(2) the isotypic block algebra must still come out symmetric.
        let f = gf(2, 1);
        let a = truncated_poly_algebra(&f, 3).matrix_algebra(2);
        let v = classify(&a, &ClassifyOptions::default()).unwrap();
        assert!(v.summary().symmetric);
    }

    #[test]
    fn verdict_json_has_all_flags() {
        let f = gf(2, 16);
        let a = truncated_poly_algebra(&f, 2);
        let v = classify(&a, &ClassifyOptions::default()).unwrap();
        let j = v.to_json();
        for key in ["quasi_frobenius", "frobenius", "weakly_symmetric", "symmetric", "field", "seed"] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
    }
}
