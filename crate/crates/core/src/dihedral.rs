//! Word combinatorics for the infinite dihedral group algebra in
//! characteristic 2, builders for string and band modules, the membership
//! test for the finite dihedral quotients, and the combinatorial
//! classification oracles the verification suites compare against.
//!
//! Words alternate between the {a, a⁻¹} and {b, b⁻¹} letter families; the
//! CLI syntax writes inverses as capitals ("abAB" = a b a⁻¹ b⁻¹). The two
//! empty words are written "1a" and "1b".

use thiserror::Error;

use crate::classify::FlagsSummary;
use crate::gf::{Field, Scalar};
use crate::linalg::{jordan_block, Mat};
use crate::modules::{ModuleError, ModulePresentation};

#[derive(Debug, Error)]
pub enum WordError {
    #[error("invalid character {0:?} (expected a, b, A, B)")]
    BadChar(char),
    #[error("alternation violated at position {0}: adjacent letters share a family")]
    Alternation(usize),
    #[error("empty band word")]
    EmptyBand,
    #[error("band length must be even, got {0}")]
    OddBand(usize),
    #[error("band word is a proper power of an even-length subword")]
    ImprimitiveBand,
    #[error("band scalar must be nonzero")]
    ZeroLambda,
    #[error("word has unsupported shape: {0}")]
    Shape(String),
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::A => Family::B,
            Family::B => Family::A,
        }
    }
}

/// One letter: a, b, a⁻¹, or b⁻¹.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub family: Family,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { family: Family::A, inverse: false };
    pub const B: Letter = Letter { family: Family::B, inverse: false };
    pub const AINV: Letter = Letter { family: Family::A, inverse: true };
    pub const BINV: Letter = Letter { family: Family::B, inverse: true };

    pub fn inverted(self) -> Letter {
        Letter { family: self.family, inverse: !self.inverse }
    }

    pub fn swapped(self) -> Letter {
        Letter { family: self.family.other(), inverse: self.inverse }
    }

    fn to_char(self) -> char {
        match (self.family, self.inverse) {
            (Family::A, false) => 'a',
            (Family::B, false) => 'b',
            (Family::A, true) => 'A',
            (Family::B, true) => 'B',
        }
    }

    /// Canonical ordering rank: positive letters sort before inverses.
    fn rank(self) -> u8 {
        match (self.inverse, self.family) {
            (false, Family::A) => 0,
            (false, Family::B) => 1,
            (true, Family::A) => 2,
            (true, Family::B) => 3,
        }
    }
}

/// An alternating word; when empty it carries the family tag 1_a or 1_b.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    letters: Vec<Letter>,
    empty_tag: Family,
}

impl Word {
    pub fn empty(tag: Family) -> Word {
        Word { letters: vec![], empty_tag: tag }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Result<Word, WordError> {
        for i in 1..letters.len() {
            if letters[i].family == letters[i - 1].family {
                return Err(WordError::Alternation(i));
            }
        }
        Ok(Word { letters, empty_tag: Family::A })
    }

    pub fn parse(text: &str) -> Result<Word, WordError> {
        let t = text.trim();
        if t == "1a" || t == "1_a" {
            return Ok(Word::empty(Family::A));
        }
        if t == "1b" || t == "1_b" {
            return Ok(Word::empty(Family::B));
        }
        let mut letters = Vec::with_capacity(t.len());
        for ch in t.chars() {
            letters.push(match ch {
                'a' => Letter::A,
                'b' => Letter::B,
                'A' => Letter::AINV,
                'B' => Letter::BINV,
                other => return Err(WordError::BadChar(other)),
            });
        }
        Word::from_letters(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn empty_tag(&self) -> Family {
        self.empty_tag
    }

    /// Reverse the word and invert each letter; 1_a⁻¹ = 1_b.
    pub fn inverse(&self) -> Word {
        if self.is_empty() {
            return Word::empty(self.empty_tag.other());
        }
        let letters = self.letters.iter().rev().map(|l| l.inverted()).collect();
        Word { letters, empty_tag: Family::A }
    }

    /// Exchange the a-family with the b-family.
    pub fn letter_swap(&self) -> Word {
        if self.is_empty() {
            return Word::empty(self.empty_tag.other());
        }
        Word {
            letters: self.letters.iter().map(|l| l.swapped()).collect(),
            empty_tag: Family::A,
        }
    }

    /// Invert every letter in place (a ↔ a⁻¹, b ↔ b⁻¹).
    pub fn direction_swap(&self) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        Word {
            letters: self.letters.iter().map(|l| l.inverted()).collect(),
            empty_tag: Family::A,
        }
    }

    /// Cyclic left rotation by k letters.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.letters.len();
        let k = k % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters, empty_tag: self.empty_tag }
    }

    fn key(&self) -> Vec<u8> {
        if self.is_empty() {
            return vec![match self.empty_tag {
                Family::A => 0,
                Family::B => 1,
            }];
        }
        self.letters.iter().map(|l| l.rank()).collect()
    }

    /// Valid cyclically: even length with the wrap-around alternating too.
    pub fn cyclically_alternating(&self) -> bool {
        let n = self.letters.len();
        n > 0 && n % 2 == 0 && self.letters[n - 1].family != self.letters[0].family
    }

    /// Not a power of a proper even-length subword.
    pub fn is_primitive(&self) -> bool {
        let n = self.letters.len();
        for d in (2..n).step_by(2) {
            if n % d != 0 {
                continue;
            }
            if (d..n).all(|i| self.letters[i] == self.letters[i % d]) {
                return false;
            }
        }
        true
    }

    pub fn is_valid_band(&self) -> Result<(), WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyBand);
        }
        if self.len() % 2 != 0 {
            return Err(WordError::OddBand(self.len()));
        }
        if !self.cyclically_alternating() {
            return Err(WordError::Alternation(0));
        }
        if !self.is_primitive() {
            return Err(WordError::ImprimitiveBand);
        }
        Ok(())
    }

    /// Least orbit member under inverse and a↔b swap (string equivalence).
    pub fn canonical_string(&self) -> Word {
        let mut best = self.clone();
        for cand in [self.inverse(), self.letter_swap(), self.inverse().letter_swap()] {
            if cand.key() < best.key() {
                best = cand;
            }
        }
        best
    }

    /// Least orbit member under rotation, inverse, and a↔b swap (band
    /// equivalence; scalar transformations are tracked by the caller).
    pub fn canonical_band(&self) -> Word {
        let mut best = self.clone();
        let n = self.len().max(1);
        for base in [self.clone(), self.inverse(), self.letter_swap(), self.inverse().letter_swap()] {
            for k in 0..n {
                let cand = base.rotate(k);
                if cand.key() < best.key() {
                    best = cand;
                }
            }
        }
        best
    }

    /// Least orbit member under rotation and inverse only (the module
    /// isomorphism symmetries; letter swap changes the isomorphism class).
    pub fn canonical_band_iso(&self) -> Word {
        let mut best = self.clone();
        let n = self.len().max(1);
        for base in [self.clone(), self.inverse()] {
            for k in 0..n {
                let cand = base.rotate(k);
                if cand.key() < best.key() {
                    best = cand;
                }
            }
        }
        best
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1{}", if self.empty_tag == Family::A { 'a' } else { 'b' });
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Positions (1-based basis indices) that no generator maps out of (sinks)
/// or into (sources), in the string diagram of the word.
pub fn string_sources_sinks(w: &Word) -> (Vec<usize>, Vec<usize>) {
    let n = w.len();
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for pos in 1..=n + 1 {
        // Edge i (letter l_i) connects positions i and i+1: positive letters
        // point i -> i+1, inverses point i+1 -> i.
        let incoming_left = pos >= 2 && !w.letters[pos - 2].inverse; // l_{pos-1} positive
        let outgoing_left = pos >= 2 && w.letters[pos - 2].inverse;
        let outgoing_right = pos <= n && !w.letters[pos - 1].inverse;
        let incoming_right = pos <= n && w.letters[pos - 1].inverse;
        let incoming = incoming_left || incoming_right;
        let outgoing = outgoing_left || outgoing_right;
        if !incoming && outgoing {
            sources.push(pos);
        }
        if incoming && !outgoing {
            sinks.push(pos);
        }
    }
    (sources, sinks)
}

/// The string module M_w: dimension |w| + 1, X moves along a-family edges,
/// Y along b-family edges.
pub fn string_module(w: &Word, field: &Field) -> Result<ModulePresentation, ModuleError> {
    let n = w.len();
    let dim = n + 1;
    let mut x = Mat::zero(field, dim, dim);
    let mut y = Mat::zero(field, dim, dim);
    for (i, l) in w.letters.iter().enumerate() {
        // Letter l_{i+1} (1-based) connects basis positions i+1 and i+2.
        let target = |m: &mut Mat, from: usize, to: usize| m.set(to, from, Scalar::ONE);
        let m = if l.family == Family::A { &mut x } else { &mut y };
        if !l.inverse {
            target(m, i, i + 1); // z_{i+1} -> z_{i+2}
        } else {
            target(m, i + 1, i); // z_{i+2} -> z_{i+1}
        }
    }
    if !x.mul(&x).is_zero() || !y.mul(&y).is_zero() {
        return Err(ModuleError::RelationFailure("X^2 or Y^2 nonzero on a string module".into()));
    }
    ModulePresentation::new(
        field,
        dim,
        vec![("X".to_string(), x), ("Y".to_string(), y)],
        format!("string:{w}"),
    )
}

/// Specification of a band module M(w, m, λ).
#[derive(Clone, Debug)]
pub struct BandSpec {
    pub word: Word,
    pub multiplicity: usize,
    pub lambda: Scalar,
}

impl BandSpec {
    pub fn new(word: Word, multiplicity: usize, lambda: Scalar) -> Result<BandSpec, WordError> {
        word.is_valid_band()?;
        if multiplicity == 0 {
            return Err(WordError::Shape("multiplicity must be at least 1".into()));
        }
        if lambda.is_zero() {
            return Err(WordError::ZeroLambda);
        }
        Ok(BandSpec { word, multiplicity, lambda })
    }
}

/// The band module: |w|·m dimensional; letter i connects block positions i
/// and i+1 (cyclically) by an identity block, except the final letter,
/// which carries the Jordan block J_m(λ).
pub fn band_module(spec: &BandSpec, field: &Field) -> Result<ModulePresentation, ModuleError> {
    let w = &spec.word;
    let n = w.len();
    let m = spec.multiplicity;
    let dim = n * m;
    let ident = Mat::identity(field, m);
    let jordan = jordan_block(field, m, spec.lambda);
    let mut x = Mat::zero(field, dim, dim);
    let mut y = Mat::zero(field, dim, dim);
    for (i, l) in w.letters.iter().enumerate() {
        let from_pos = i;
        let to_pos = (i + 1) % n;
        let block = if i == n - 1 { &jordan } else { &ident };
        let mat = if l.family == Family::A { &mut x } else { &mut y };
        let (src, dst) = if !l.inverse { (from_pos, to_pos) } else { (to_pos, from_pos) };
        for r in 0..m {
            for c in 0..m {
                let v = block.at(r, c);
                if !v.is_zero() {
                    mat.set(dst * m + r, src * m + c, v);
                }
            }
        }
    }
    if !x.mul(&x).is_zero() || !y.mul(&y).is_zero() {
        return Err(ModuleError::RelationFailure("X^2 or Y^2 nonzero on a band module".into()));
    }
    ModulePresentation::new(
        field,
        dim,
        vec![("X".to_string(), x), ("Y".to_string(), y)],
        format!("band:{w}:m={m}"),
    )
}

/// λ-exponent in the isomorphism M(w, m, λ) ≅ M(w⁻¹, m, λ^ε) under this
/// crate's marked-edge convention: reversal inverts the cycle orientation,
/// and the marked edge moves from the last letter to the inverted first
/// letter, so the twist cancels exactly when the first and last letters
/// point the same way.
pub fn inversion_lambda_exponent(w: &Word) -> i8 {
    let letters = w.letters();
    let n = letters.len();
    debug_assert!(n >= 2);
    if letters[0].inverse == letters[n - 1].inverse {
        1
    } else {
        -1
    }
}

/// λ-exponent in the isomorphism M(w, m, λ) ≅ M(rotate(w, k), m, λ^ε): the
/// marked edge moves to letter k, twisting iff its direction differs from
/// the last letter's.
pub fn rotation_lambda_exponent(w: &Word, k: usize) -> i8 {
    let letters = w.letters();
    let n = letters.len();
    let k = k % n;
    if k == 0 {
        return 1;
    }
    if letters[k - 1].inverse == letters[n - 1].inverse {
        1
    } else {
        -1
    }
}

/// Whether (XY)^q = (YX)^q on the module, i.e. the module factors through
/// the dihedral group algebra of order 4q.
pub fn annihilates_iq(module: &ModulePresentation, q: u64) -> bool {
    let x = module.generator("X").expect("generator X");
    let y = module.generator("Y").expect("generator Y");
    x.mul(y).pow(q) == y.mul(x).pow(q)
}

/// Expected classification of End(M_w) from the word alone: all four flags
/// agree, positive exactly for the empty words, single letters, and the
/// even alternating all-positive (or all-negative) words.
pub fn expected_string_verdict(w: &Word) -> FlagsSummary {
    let good = if w.len() <= 1 {
        true
    } else if w.len() % 2 == 0 {
        w.letters.iter().all(|l| !l.inverse) || w.letters.iter().all(|l| l.inverse)
    } else {
        false
    };
    FlagsSummary { quasi_frobenius: good, frobenius: good, weakly_symmetric: good, symmetric: good }
}

/// The alternating one-source family: first half positive starting with a,
/// second half the matching inverses (ab⁻¹, aba⁻¹b⁻¹, abab⁻¹a⁻¹b⁻¹, ...).
fn alternating_family_word(n: usize) -> Word {
    debug_assert!(n >= 2 && n % 2 == 0);
    let p = n / 2;
    let mut letters = Vec::with_capacity(n);
    for i in 0..n {
        let family = if i % 2 == 0 { Family::A } else { Family::B };
        letters.push(Letter { family, inverse: i >= p });
    }
    Word::from_letters(letters).expect("family word alternates")
}

/// Expected classification of End(M(w, m, λ)) from the combinatorics:
/// quasi-Frobenius iff w ~ ab (any m) or m = 1 and w is in the alternating
/// one-source family; weakly symmetric whenever quasi-Frobenius; symmetric
/// in the ab case, the |w| = 2 family case, and the |w| ≡ 0 (mod 4) family
/// case with λ = 1.
pub fn expected_band_verdict(spec: &BandSpec) -> FlagsSummary {
    let w = &spec.word;
    let n = w.len();
    let canon = w.canonical_band();
    let ab = Word::parse("ab").unwrap().canonical_band();
    let case_ab = canon == ab;
    let case_family = spec.multiplicity == 1 && canon == alternating_family_word(n).canonical_band();
    let qf = case_ab || case_family;
    let symmetric = case_ab
        || (case_family && n == 2)
        || (case_family && n % 4 == 0 && spec.lambda == Scalar::ONE);
    FlagsSummary {
        quasi_frobenius: qf,
        frobenius: qf,
        weakly_symmetric: qf,
        symmetric,
    }
}

/// Explicit endomorphism basis for the single-source strings (ab)^l and
/// (ab)^l a: T_i = Σ_j E_{j+2i, j}, plus the corner matrix unit in the odd
/// case. Each element is verified to commute with both actions, and
/// T_1^j = T_j.
pub fn string_endo_basis(w: &Word, field: &Field) -> Result<Vec<Mat>, WordError> {
    let n = w.len();
    let ok_even = n % 2 == 0 && w.letters.iter().all(|l| !l.inverse);
    let ok_odd = n % 2 == 1 && w.letters.iter().all(|l| !l.inverse) && w.letters[0].family == Family::A;
    if !(ok_even || ok_odd) || w.letters.first().map(|l| l.family) == Some(Family::B) {
        return Err(WordError::Shape(format!("{w} is not (ab)^l or (ab)^l a")));
    }
    let dim = n + 1;
    let l = n / 2;
    let mut basis = Vec::new();
    for i in 0..=l {
        let mut t = Mat::zero(field, dim, dim);
        for j in 1..=(n + 1).saturating_sub(2 * i) {
            t.set(j + 2 * i - 1, j - 1, Scalar::ONE);
        }
        basis.push(t);
    }
    if ok_odd {
        // Sink-to-source matrix unit: the sink of the all-positive chain is
        // the final basis vector z_{n+1} = z_{2l+2}.
        basis.push(Mat::unit(field, dim, 2 * l + 2, 1));
    }
    // Verify membership and the power law.
    let module = string_module(w, field).map_err(|e| WordError::Shape(e.to_string()))?;
    let x = module.generator("X").unwrap();
    let y = module.generator("Y").unwrap();
    for t in &basis {
        assert_eq!(t.mul(x), x.mul(t), "T must commute with X");
        assert_eq!(t.mul(y), y.mul(t), "T must commute with Y");
    }
    for j in 1..=l {
        assert_eq!(basis[1].pow(j as u64), basis[j], "T_1^j = T_j");
    }
    Ok(basis)
}

/// Which string-equivalence symmetries to quotient by during enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StringSymmetry {
    /// Inverse only (preserves the isomorphism class of M_w).
    Inverse,
    /// Inverse and letter swap (preserves the verdict of End(M_w)).
    InverseAndSwap,
}

/// Canonical representatives of all alternating words of length ≤ max_len.
pub fn enumerate_strings(max_len: usize, symmetry: StringSymmetry) -> Vec<Word> {
    let mut out = Vec::new();
    let canon = |w: &Word| match symmetry {
        StringSymmetry::Inverse => {
            let inv = w.inverse();
            if inv.key() < w.key() {
                inv
            } else {
                w.clone()
            }
        }
        StringSymmetry::InverseAndSwap => w.canonical_string(),
    };
    // Empty words.
    let e_a = Word::empty(Family::A);
    let c = canon(&e_a);
    out.push(c);
    let e_b = Word::empty(Family::B);
    let c = canon(&e_b);
    if !out.contains(&c) {
        out.push(c);
    }
    for len in 1..=max_len {
        let mut stack: Vec<Vec<Letter>> = vec![vec![]];
        for pos in 0..len {
            let mut next = Vec::new();
            for prefix in &stack {
                let families: Vec<Family> = if pos == 0 {
                    vec![Family::A, Family::B]
                } else {
                    vec![prefix[pos - 1].family.other()]
                };
                for fam in families {
                    for inv in [false, true] {
                        let mut p = prefix.clone();
                        p.push(Letter { family: fam, inverse: inv });
                        next.push(p);
                    }
                }
            }
            stack = next;
        }
        for letters in stack {
            let w = Word::from_letters(letters).unwrap();
            if canon(&w) == w {
                out.push(w);
            }
        }
    }
    out
}

/// Which band-equivalence symmetries to quotient by.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BandSymmetry {
    /// Rotation and inverse (module isomorphism symmetries; λ transforms).
    RotationInverse,
    /// Rotation, inverse, and letter swap (verdict symmetries).
    Full,
}

/// Canonical representatives of all primitive bands of even length ≤ max_len.
pub fn enumerate_bands(max_len: usize, symmetry: BandSymmetry) -> Vec<Word> {
    let mut out = Vec::new();
    for len in (2..=max_len).step_by(2) {
        let mut stack: Vec<Vec<Letter>> = vec![vec![]];
        for pos in 0..len {
            let mut next = Vec::new();
            for prefix in &stack {
                let families: Vec<Family> = if pos == 0 {
                    vec![Family::A]
                } else {
                    vec![prefix[pos - 1].family.other()]
                };
                for fam in families {
                    for inv in [false, true] {
                        let mut p = prefix.clone();
                        p.push(Letter { family: fam, inverse: inv });
                        next.push(p);
                    }
                }
            }
            stack = next;
        }
        for letters in stack {
            let w = Word { letters, empty_tag: Family::A };
            if !w.cyclically_alternating() || !w.is_primitive() {
                continue;
            }
            let canon = match symmetry {
                BandSymmetry::RotationInverse => w.canonical_band_iso(),
                BandSymmetry::Full => w.canonical_band(),
            };
            if canon == w {
                out.push(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn gf(p: u64, e: u32) -> Field {
        FieldSpec::new(p, e).unwrap()
    }

    #[test]
    fn parsing_and_validity() {
        assert!(Word::parse("aBAbA").is_ok());
        assert!(matches!(Word::parse("aa"), Err(WordError::Alternation(_))));
        assert!(matches!(Word::parse("xy"), Err(WordError::BadChar('x'))));
        assert_eq!(Word::parse("1a").unwrap(), Word::empty(Family::A));
    }

    #[test]
    fn inverse_examples() {
        let w = Word::parse("ab").unwrap();
        assert_eq!(w.inverse().to_string(), "BA");
        assert_eq!(Word::empty(Family::A).inverse(), Word::empty(Family::B));
        let long = Word::parse("AbaBA").unwrap();
        assert_eq!(long.inverse().inverse(), long);
    }

    #[test]
    fn string_module_matches_worked_action_matrices() {
        // w = a⁻¹ b a b⁻¹ a⁻¹: X = E_12 + E_43 + E_56, Y = E_32 + E_45.
        let f = gf(2, 1);
        let w = Word::parse("AbaBA").unwrap();
        let m = string_module(&w, &f).unwrap();
        let x = m.generator("X").unwrap();
        let y = m.generator("Y").unwrap();
        let expect_x = Mat::unit(&f, 6, 1, 2).add(&Mat::unit(&f, 6, 4, 3)).add(&Mat::unit(&f, 6, 5, 6));
        let expect_y = Mat::unit(&f, 6, 3, 2).add(&Mat::unit(&f, 6, 4, 5));
        assert_eq!(x, &expect_x);
        assert_eq!(y, &expect_y);
    }

    #[test]
    fn string_module_small_cases() {
        let f = gf(2, 1);
        let empty = string_module(&Word::empty(Family::A), &f).unwrap();
        assert_eq!(empty.dim(), 1);
        assert!(empty.generator("X").unwrap().is_zero());
        assert!(empty.generator("Y").unwrap().is_zero());
        // w = ab: X = E_21, Y = E_32.
        let m = string_module(&Word::parse("ab").unwrap(), &f).unwrap();
        assert_eq!(m.generator("X").unwrap(), &Mat::unit(&f, 3, 2, 1));
        assert_eq!(m.generator("Y").unwrap(), &Mat::unit(&f, 3, 3, 2));
    }

    #[test]
    fn string_actions_never_collide() {
        // X never maps two basis vectors to the same basis vector: every
        // row of X (and Y) has at most one nonzero entry.
        for text in ["ab", "aB", "AbaBA", "abab", "babA"] {
            let f = gf(2, 1);
            let m = string_module(&Word::parse(text).unwrap(), &f).unwrap();
            for gen in ["X", "Y"] {
                let g = m.generator(gen).unwrap();
                for i in 0..g.rows() {
                    let nonzero = (0..g.cols()).filter(|&j| !g.at(i, j).is_zero()).count();
                    assert!(nonzero <= 1);
                }
            }
        }
    }

    #[test]
    fn band_module_matches_worked_action_matrices() {
        // w = aba⁻¹b⁻¹: X has identity blocks at (2,1) and (3,4); Y has an
        // identity block at (3,2) and J_m(λ) at (4,1).
        let f = gf(2, 4);
        let lam = f.scalar_from_coeffs(&[0, 1]).unwrap();
        for m in [1usize, 2, 3] {
            let spec = BandSpec::new(Word::parse("abAB").unwrap(), m, lam).unwrap();
            let module = band_module(&spec, &f).unwrap();
            let x = module.generator("X").unwrap();
            let y = module.generator("Y").unwrap();
            let ident = Mat::identity(&f, m);
            let jm = jordan_block(&f, m, lam);
            let block = |g: &Mat, br: usize, bc: usize| -> Mat {
                Mat::from_fn(&f, m, m, |i, j| g.at(br * m + i, bc * m + j))
            };
            assert_eq!(block(x, 1, 0), ident);
            assert_eq!(block(x, 2, 3), ident);
            assert_eq!(block(y, 2, 1), ident);
            assert_eq!(block(y, 3, 0), jm);
            // Everything else zero.
            let mut total_nonzero = 0;
            for g in [x, y] {
                for e in g.entries() {
                    if !e.is_zero() {
                        total_nonzero += 1;
                    }
                }
            }
            assert_eq!(total_nonzero, 3 * m + (m + m - 1));
        }
    }

    #[test]
    fn band_validation() {
        let lam = Scalar::ONE;
        assert!(BandSpec::new(Word::parse("abab").unwrap(), 1, lam).is_err());
        assert!(BandSpec::new(Word::parse("ab").unwrap(), 1, Scalar::ZERO).is_err());
        assert!(BandSpec::new(Word::parse("aba").unwrap(), 1, lam).is_err());
        assert!(BandSpec::new(Word::parse("abAB").unwrap(), 2, lam).is_ok());
    }

    #[test]
    fn iq_membership() {
        let f = gf(2, 16);
        // String ab is not a Klein-four module ((XY) != (YX)).
        let m = string_module(&Word::parse("ab").unwrap(), &f).unwrap();
        assert!(!annihilates_iq(&m, 1));
        // Band ab⁻¹ with m = 1 is a Klein-four module.
        let spec = BandSpec::new(Word::parse("aB").unwrap(), 1, Scalar::ONE).unwrap();
        let b = band_module(&spec, &f).unwrap();
        assert!(annihilates_iq(&b, 1));
        // Any finite-dimensional string module is killed by I_q for large q.
        assert!(annihilates_iq(&m, 2));
    }

    #[test]
    fn expected_string_verdicts() {
        for (text, good) in [
            ("1a", true),
            ("a", true),
            ("b", true),
            ("A", true),
            ("ab", true),
            ("abab", true),
            ("ba", true),
            ("BA", true),
            ("aba", false),
            ("aB", false),
            ("abA", false),
            ("aBaB", false),
        ] {
            let w = Word::parse(text).unwrap();
            assert_eq!(expected_string_verdict(&w).symmetric, good, "{text}");
            assert_eq!(expected_string_verdict(&w).quasi_frobenius, good, "{text}");
        }
    }

    #[test]
    fn expected_band_verdicts() {
        let f16 = gf(2, 4);
        let one = Scalar::ONE;
        let w = f16.scalar_from_coeffs(&[0, 1]).unwrap();
        // Case ab: always fully symmetric.
        for m in 1..4 {
            let spec = BandSpec::new(Word::parse("ab").unwrap(), m, w).unwrap();
            let v = expected_band_verdict(&spec);
            assert!(v.quasi_frobenius && v.symmetric);
        }
        // ab⁻¹ with m = 1: |w| = 2 family case, symmetric for any λ.
        let spec = BandSpec::new(Word::parse("aB").unwrap(), 1, w).unwrap();
        assert!(expected_band_verdict(&spec).symmetric);
        // ab⁻¹ with m = 2: not QF.
        let spec = BandSpec::new(Word::parse("aB").unwrap(), 2, w).unwrap();
        assert!(!expected_band_verdict(&spec).quasi_frobenius);
        // aba⁻¹b⁻¹ (n=4): QF for m=1; symmetric iff λ = 1.
        let spec = BandSpec::new(Word::parse("abAB").unwrap(), 1, one).unwrap();
        let v = expected_band_verdict(&spec);
        assert!(v.quasi_frobenius && v.weakly_symmetric && v.symmetric);
        let spec = BandSpec::new(Word::parse("abAB").unwrap(), 1, w).unwrap();
        let v = expected_band_verdict(&spec);
        assert!(v.quasi_frobenius && v.weakly_symmetric && !v.symmetric);
        // n=6 family member: QF but never symmetric.
        let spec = BandSpec::new(Word::parse("abaBAB").unwrap(), 1, one).unwrap();
        let v = expected_band_verdict(&spec);
        assert!(v.quasi_frobenius && v.weakly_symmetric && !v.symmetric);
        // Something outside both cases.
        let spec = BandSpec::new(Word::parse("aBab").unwrap(), 1, one).unwrap();
        assert!(!expected_band_verdict(&spec).quasi_frobenius);
    }

    #[test]
    fn endo_basis_for_single_source_strings() {
        let f = gf(2, 16);
        // (ab)^2: T_1 = E_31 + E_42 + E_53, T_2 = E_51.
        let w = Word::parse("abab").unwrap();
        let basis = string_endo_basis(&w, &f).unwrap();
        assert_eq!(basis.len(), 3);
        let t1 = Mat::unit(&f, 5, 3, 1).add(&Mat::unit(&f, 5, 4, 2)).add(&Mat::unit(&f, 5, 5, 3));
        assert_eq!(basis[1], t1);
        assert_eq!(basis[2], Mat::unit(&f, 5, 5, 1));
        // ab: T_1 = E_31.
        let basis = string_endo_basis(&Word::parse("ab").unwrap(), &f).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[1], Mat::unit(&f, 3, 3, 1));
        // (ab)a: {I, T_1, E_31}, dimension 3.
        let basis = string_endo_basis(&Word::parse("aba").unwrap(), &f).unwrap();
        assert_eq!(basis.len(), 3);
        // Not handled: words with inverses.
        assert!(string_endo_basis(&Word::parse("aB").unwrap(), &f).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // Length 0: 1_a and 1_b collapse under inverse.
        let words = enumerate_strings(0, StringSymmetry::Inverse);
        assert_eq!(words.len(), 1);
        // No word contains "aa": all enumerated words alternate.
        let words = enumerate_strings(4, StringSymmetry::InverseAndSwap);
        for w in &words {
            for i in 1..w.len() {
                assert_ne!(w.letters()[i].family, w.letters()[i - 1].family);
            }
        }
        // Bands of length 2 up to full equivalence: ab and ab⁻¹.
        let bands = enumerate_bands(2, BandSymmetry::Full);
        let texts: Vec<String> = bands.iter().map(|w| w.to_string()).collect();
        assert_eq!(texts, vec!["ab", "aB"]);
        // Length 4: excludes abab (a proper power), includes abAB.
        let bands = enumerate_bands(4, BandSymmetry::Full);
        assert!(bands.iter().all(|w| w.to_string() != "abab"));
        assert!(bands.iter().any(|w| w.to_string() == "abAB"));
    }

    #[test]
    fn enumeration_is_canonical_and_duplicate_free() {
        let words = enumerate_strings(6, StringSymmetry::InverseAndSwap);
        let mut seen = std::collections::HashSet::new();
        for w in &words {
            assert_eq!(&w.canonical_string(), w);
            assert!(seen.insert(w.canonical_string().to_string()));
        }
        let bands = enumerate_bands(6, BandSymmetry::Full);
        let mut seen = std::collections::HashSet::new();
        for w in &bands {
            assert!(w.is_primitive());
            assert!(seen.insert(w.to_string()));
        }
    }

    #[test]
    fn sources_and_sinks() {
        // a⁻¹bab⁻¹a⁻¹ has sinks z_1, z_4 and sources z_2, z_6.
        let w = Word::parse("AbaBA").unwrap();
        let (sources, sinks) = string_sources_sinks(&w);
        assert_eq!(sources, vec![2, 6]);
        assert_eq!(sinks, vec![1, 4]);
    }
}
