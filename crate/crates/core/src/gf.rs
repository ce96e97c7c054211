//! Exact arithmetic in finite fields GF(p^e).
//!
//! A [`FieldSpec`] fixes the prime p, the extension degree e, and a monic
//! irreducible modulus of degree e over GF(p). Scalars are coefficient
//! vectors in the power basis, packed into a single `u64` as Σ cᵢ·pⁱ.
//! All operations are exact; there is no floating point anywhere.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use thiserror::Error;

/// Shared handle to a field; everything downstream carries one of these.
pub type Field = Arc<FieldSpec>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field too large: p^e must fit in 63 bits")]
    TooLarge,
    #[error("incompatible fields: {0}")]
    Incompatible(String),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("invalid scalar encoding: {0}")]
    BadScalar(String),
    #[error("invalid field descriptor: {0}")]
    BadDescriptor(String),
}

/// Field element, packed as Σ cᵢ·pⁱ with coefficients cᵢ in [0, p).
///
/// A `Scalar` does not know its field; the owning [`FieldSpec`] provides
/// all arithmetic. Every packed value below the field order is valid.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(u64);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn from_raw(v: u64) -> Scalar {
        Scalar(v)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Hex encoding of the packed coordinate sequence.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Scalar, GfError> {
        u64::from_str_radix(s, 16)
            .map(Scalar)
            .map_err(|_| GfError::BadScalar(s.to_string()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{:x}", self.0)
    }
}

/// A concrete finite field GF(p^e) with a deterministically chosen modulus.
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible modulus over GF(p), coefficients low-to-high, length e+1.
    modulus: Vec<u64>,
    /// Modulus as a bit mask, for the p = 2 fast path.
    modulus_bits: u128,
    tables: OnceLock<Tables>,
}

struct Tables {
    /// log[a] for a != 0; discrete log base a fixed generator.
    log: Vec<u32>,
    /// exp[i] = g^i for i in [0, 2(q-1)), doubled to skip a reduction.
    exp: Vec<u64>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.descriptor())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

const TABLE_LIMIT: u64 = 1 << 16;

impl FieldSpec {
    /// Construct GF(p^e) with the lexicographically first monic irreducible
    /// modulus of degree e (lex order on the coefficient sequence c₀, c₁, …).
    pub fn new(p: u64, e: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::DegreeZero);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).filter(|&v| v < (1 << 63)).ok_or(GfError::TooLarge)?;
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            first_irreducible(p, e)
        };
        let mut modulus_bits: u128 = 0;
        if p == 2 {
            for (i, &c) in modulus.iter().enumerate() {
                if c != 0 {
                    modulus_bits |= 1u128 << i;
                }
            }
        }
        Ok(Arc::new(FieldSpec { p, e, q, modulus, modulus_bits, tables: OnceLock::new() }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Number of elements q = p^e.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Serialized as "p^e:c0,c1,...,ce".
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", self.p, self.e, coeffs.join(","))
    }

    /// Accepts "p^e", "p" (degree 1), or a full descriptor "p^e:c0,c1,...".
    /// A supplied modulus must match the deterministic choice.
    pub fn parse(s: &str) -> Result<Field, GfError> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let (p, e) = match head.split_once('^') {
            Some((ps, es)) => {
                let p = ps.parse::<u64>().map_err(|_| GfError::BadDescriptor(s.into()))?;
                let e = es.parse::<u32>().map_err(|_| GfError::BadDescriptor(s.into()))?;
                (p, e)
            }
            None => {
                let p = head.parse::<u64>().map_err(|_| GfError::BadDescriptor(s.into()))?;
                (p, 1)
            }
        };
        let field = FieldSpec::new(p, e)?;
        if let Some(t) = tail {
            let coeffs: Result<Vec<u64>, _> = t.split(',').map(|c| c.trim().parse::<u64>()).collect();
            let coeffs = coeffs.map_err(|_| GfError::BadDescriptor(s.into()))?;
            if coeffs != field.modulus {
                return Err(GfError::BadDescriptor(format!(
                    "modulus mismatch: expected {}",
                    field.descriptor()
                )));
            }
        }
        Ok(field)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        Scalar::ONE
    }

    pub fn contains(&self, a: Scalar) -> bool {
        a.0 < self.q
    }

    /// Pack a coefficient vector (low-to-high, length ≤ e, entries < p).
    pub fn scalar_from_coeffs(&self, coeffs: &[u64]) -> Result<Scalar, GfError> {
        if coeffs.len() > self.e as usize {
            return Err(GfError::BadScalar(format!("{} coefficients for degree {}", coeffs.len(), self.e)));
        }
        let mut v = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(GfError::BadScalar(format!("coefficient {} out of range", c)));
            }
            v += c * self.p.pow(i as u32);
        }
        Ok(Scalar(v))
    }

    /// Coordinates of `a` in the power basis, length e.
    pub fn coeffs(&self, a: Scalar) -> Vec<u64> {
        let mut v = a.0;
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Image of the integer v under Z -> GF(p) ⊆ GF(p^e).
    pub fn scalar_from_u64(&self, v: u64) -> Scalar {
        Scalar(v % self.p)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        let mut out = 0u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut base = 1u64;
        while x != 0 || y != 0 {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * base;
            x /= self.p;
            y /= self.p;
            base *= self.p;
        }
        Scalar(out)
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut x = a.0;
        let mut base = 1u64;
        while x != 0 {
            let c = x % self.p;
            if c != 0 {
                out += (self.p - c) * base;
            }
            x /= self.p;
            base *= self.p;
        }
        Scalar(out)
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        if let Some(t) = self.tables.get() {
            let idx = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return Scalar(t.exp[idx]);
        }
        if self.q <= TABLE_LIMIT {
            let t = self.build_tables();
            let idx = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return Scalar(t.exp[idx]);
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.e == 1 {
            return Scalar(mulmod(a.0, b.0, self.p));
        }
        if self.p == 2 {
            // Carry-less multiply, then reduce by the modulus bits.
            let mut acc: u128 = 0;
            let x = a.0 as u128;
            let mut y = b.0;
            let mut shift = 0;
            while y != 0 {
                if y & 1 == 1 {
                    acc ^= x << shift;
                }
                y >>= 1;
                shift += 1;
            }
            let e = self.e as u32;
            let top = 128 - acc.leading_zeros();
            if top >= e + 1 {
                for d in (e..top).rev() {
                    if acc >> d & 1 == 1 {
                        acc ^= self.modulus_bits << (d - e);
                    }
                }
            }
            return Scalar(acc as u64);
        }
        // Generic digit-based schoolbook multiply with modulus reduction.
        let e = self.e as usize;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &ca) in da.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % self.p;
            }
        }
        // Reduce: x^d = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1}) x^{d-e}.
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..e {
                let m = self.modulus[k];
                if m != 0 {
                    let sub = (c * m) % self.p;
                    prod[d - e + k] = (prod[d - e + k] + self.p - sub) % self.p;
                }
            }
        }
        let mut v = 0u64;
        for i in (0..e).rev() {
            v = v * self.p + prod[i];
        }
        Scalar(v)
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        if self.q <= TABLE_LIMIT {
            let t = self.build_tables();
            let l = t.log[a.0 as usize] as usize;
            let m = (self.q - 1) as usize;
            return Ok(Scalar(t.exp[(m - l) % m]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, mut k: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Frobenius endomorphism a ↦ a^p.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.p)
    }

    /// Inverse of the i-fold Frobenius; i is reduced mod e.
    pub fn frobenius_inv(&self, a: Scalar, i: u32) -> Scalar {
        let shift = (self.e - (i % self.e)) % self.e;
        let mut out = a;
        for _ in 0..shift {
            out = self.frobenius(out);
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(1..self.q))
    }

    /// All field elements; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.q).map(Scalar)
    }

    /// Multiplicative generator used by the log tables (small fields only).
    pub fn generator(&self) -> Scalar {
        assert!(self.q <= TABLE_LIMIT, "generator only tabulated for small fields");
        Scalar(self.build_tables().exp[1])
    }

    fn build_tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let q = self.q;
            let m = (q - 1) as usize;
            let g = self.find_generator();
            let mut exp = vec![0u64; 2 * m];
            let mut log = vec![0u32; q as usize];
            let mut cur = Scalar::ONE;
            for (i, slot) in exp.iter_mut().enumerate().take(m) {
                *slot = cur.0;
                log[cur.0 as usize] = i as u32;
                cur = self.mul_generic(cur, g);
            }
            assert_eq!(cur, Scalar::ONE, "generator order mismatch");
            for i in m..2 * m {
                exp[i] = exp[i - m];
            }
            Tables { log, exp }
        })
    }

    fn find_generator(&self) -> Scalar {
        let m = self.q - 1;
        let primes = prime_factors(m);
        'cand: for v in 2..self.q {
            let g = Scalar(v);
            for &r in &primes {
                if self.pow_generic(g, m / r) == Scalar::ONE {
                    continue 'cand;
                }
            }
            return g;
        }
        // q = 2 has the empty product; 1 generates the trivial group.
        Scalar::ONE
    }

    fn pow_generic(&self, a: Scalar, mut k: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            k >>= 1;
        }
        acc
    }
}

/// Ring-homomorphic embedding GF(p^s) -> GF(p^t) for s | t, fixing GF(p).
///
/// The image of the source power-basis generator is the smallest (by packed
/// value) root of the source modulus in the destination field, so the
/// embedding is deterministic and composition-friendly for serialized data.
pub fn embed(src: &Field, dst: &Field, a: Scalar) -> Result<Scalar, GfError> {
    if src.p != dst.p {
        return Err(GfError::Incompatible(format!("{} vs {}", src.descriptor(), dst.descriptor())));
    }
    if dst.e % src.e != 0 {
        return Err(GfError::Incompatible(format!(
            "degree {} does not divide {}",
            src.e, dst.e
        )));
    }
    if src.as_ref() == dst.as_ref() {
        return Ok(a);
    }
    if src.e == 1 {
        return Ok(a);
    }
    let root = embedding_root(src, dst)?;
    let coeffs = src.coeffs(a);
    let mut acc = Scalar::ZERO;
    let mut pow = Scalar::ONE;
    for &c in &coeffs {
        if c != 0 {
            acc = dst.add(acc, dst.mul(Scalar::from_raw(c), pow));
        }
        pow = dst.mul(pow, root);
    }
    Ok(acc)
}

fn embedding_root(src: &Field, dst: &Field) -> Result<Scalar, GfError> {
    let coeffs: Vec<Scalar> = src.modulus.iter().map(|&c| Scalar::from_raw(c)).collect();
    let roots = crate::poly::roots_in_field(&coeffs, dst);
    roots.into_iter().min_by_key(|s| s.raw()).ok_or_else(|| {
        GfError::Incompatible("source modulus has no root in destination".into())
    })
}

// ---- integer and GF(p)[x] helpers ----

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Lexicographically first monic irreducible of degree e over GF(p),
/// ordering coefficient sequences (c₀, c₁, ..., c_{e-1}) entry by entry.
fn first_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let mid = e - 1;
    // c0 = 0 gives a polynomial divisible by x, so start at c0 = 1.
    for c0 in 1..p {
        let mut counter = vec![0u64; mid]; // (c1, ..., c_{e-1}), last digit fastest
        loop {
            let mut f = Vec::with_capacity(e + 1);
            f.push(c0);
            f.extend_from_slice(&counter);
            f.push(1);
            if int_poly_is_irreducible(&f, p) {
                return f;
            }
            let mut i = mid;
            let mut wrapped = true;
            while i > 0 {
                i -= 1;
                counter[i] += 1;
                if counter[i] < p {
                    wrapped = false;
                    break;
                }
                counter[i] = 0;
            }
            if wrapped {
                break;
            }
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

// Dense polynomials over GF(p) as u64 coefficient vectors, low-to-high,
// trimmed of trailing zeros. Only used during field construction.

fn ip_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn ip_deg(v: &[u64]) -> isize {
    v.len() as isize - 1
}

fn ip_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(ca, cb, p)) % p;
        }
    }
    ip_trim(&mut out);
    out
}

fn ip_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    ip_trim(&mut r);
    let df = ip_deg(f);
    assert!(df >= 0);
    let lead_inv = invmod(*f.last().unwrap(), p);
    while ip_deg(&r) >= df {
        let dr = ip_deg(&r) as usize;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        let shift = dr - df as usize;
        for (k, &fc) in f.iter().enumerate() {
            if fc != 0 {
                let sub = mulmod(c, fc, p);
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
        }
        ip_trim(&mut r);
    }
    r
}

fn ip_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    ip_trim(&mut x);
    ip_trim(&mut y);
    while !y.is_empty() {
        let r = ip_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = invmod(lead, p);
        for c in &mut x {
            *c = mulmod(*c, li, p);
        }
    }
    x
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime; Fermat.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut k = p - 2;
    while k != 0 {
        if k & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        k >>= 1;
    }
    acc
}

fn ip_powmod(g: &[u64], mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = ip_rem(g, f, p);
    while k != 0 {
        if k & 1 == 1 {
            acc = ip_rem(&ip_mul(&acc, &base, p), f, p);
        }
        base = ip_rem(&ip_mul(&base, &base, p), f, p);
        k >>= 1;
    }
    acc
}

/// Rabin irreducibility test for a monic polynomial over GF(p).
fn int_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let e = (f.len() - 1) as u32;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    let x = vec![0u64, 1];
    // x^(p^e) mod f must equal x.
    let mut g = x.clone();
    for _ in 0..e {
        g = ip_powmod(&g, p, f, p);
    }
    if g != x {
        return false;
    }
    // For each prime r | e: gcd(x^(p^(e/r)) - x, f) must be 1.
    for r in prime_factors(e as u64) {
        let steps = e as u64 / r;
        let mut h = x.clone();
        for _ in 0..steps {
            h = ip_powmod(&h, p, f, p);
        }
        // h - x
        let mut diff = h;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        ip_trim(&mut diff);
        let g = ip_gcd(&diff, f, p);
        if ip_deg(&g) != 0 {
            return false;
        }
    }
    true
}
