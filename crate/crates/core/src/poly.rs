//! Dense univariate polynomials over a runtime field, with just enough
//! factorization machinery for modulus roots and minimal-polynomial
//! splitting: squarefree decomposition, distinct-degree and equal-degree
//! (Cantor–Zassenhaus) steps.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::{Field, Scalar};

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Scalar::ONE] }
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![Scalar::ZERO, Scalar::ONE] }
    }

    pub fn constant(c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last() == Some(&Scalar::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Scalar {
        *self.coeffs.last().unwrap_or(&Scalar::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO);
            let b = other.coeffs.get(i).copied().unwrap_or(Scalar::ZERO);
            out.push(f.add(a, b));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO);
            let b = other.coeffs.get(i).copied().unwrap_or(Scalar::ZERO);
            out.push(f.sub(a, b));
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: Scalar, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut quot = vec![Scalar::ZERO; self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1];
        while rem.len() as isize - 1 >= dd && !rem.is_empty() {
            let dr = rem.len() - 1;
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            let shift = dr - dd as usize;
            quot[shift] = c;
            for (k, &dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[shift + k] = f.sub(rem[shift + k], f.mul(c, dc));
                }
            }
            while rem.last() == Some(&Scalar::ZERO) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &Field) -> Poly {
        self.div_rem(divisor, f).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let li = f.inv(self.leading()).unwrap();
        self.scale(li, f)
    }

    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: Scalar, f: &Field) -> Scalar {
        let mut acc = Scalar::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mut term = Scalar::ZERO;
            for _ in 0..(i as u64 % f.p()) {
                term = f.add(term, c);
            }
            out.push(term);
        }
        Poly::from_coeffs(out)
    }

    pub fn pow_mod(&self, mut k: u128, modulus: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.rem(modulus, f);
        while k != 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            k >>= 1;
        }
        acc
    }
}

/// All roots in the field of a polynomial given by its coefficient slice.
pub fn roots_in_field(coeffs: &[Scalar], f: &Field) -> Vec<Scalar> {
    let poly = Poly::from_coeffs(coeffs.to_vec());
    let mut out = Vec::new();
    for (factor, _) in factor(&poly, f) {
        if factor.degree() == 1 {
            // root of c0 + c1 x
            let c0 = factor.coeffs[0];
            let c1 = factor.coeffs[1];
            out.push(f.neg(f.div(c0, c1).unwrap()));
        }
    }
    out.sort_by_key(|s| s.raw());
    out.dedup();
    out
}

/// Monic irreducible factors with multiplicities, deterministically ordered.
pub fn factor(poly: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if poly.degree() < 1 {
        return out;
    }
    let monic = poly.monic(f);
    for (g, mult) in squarefree_parts(&monic, f) {
        for irr in factor_squarefree(&g, f) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| poly_key(&a.0).cmp(&poly_key(&b.0)));
    out
}

fn poly_key(p: &Poly) -> (usize, Vec<u64>) {
    (p.coeffs.len(), p.coeffs.iter().map(|c| c.raw()).collect())
}

/// Characteristic-p squarefree decomposition: pairs (gᵢ, i) with
/// f = Π gᵢ^i and gᵢ squarefree pairwise coprime.
fn squarefree_parts(poly: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let p = f.p() as usize;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let deriv = poly.derivative(f);
    if deriv.is_zero() {
        // f = g(x^p); take p-th roots of coefficients.
        let root = pth_root_poly(poly, f);
        for (g, m) in squarefree_parts(&root, f) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut g = poly.gcd(&deriv, f);
    let mut w = poly.div_rem(&g, f).0;
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&g, f);
        let z = w.div_rem(&y, f).0;
        if z.degree() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        g = g.div_rem(&w, f).0;
    }
    if g.degree() > 0 {
        let root = pth_root_poly(&g, f);
        for (h, m) in squarefree_parts(&root, f) {
            out.push((h, m * p));
        }
    }
    out
}

/// For f with f' = 0 (so f = g(x^p)), return g with coefficients replaced
/// by their p-th roots.
fn pth_root_poly(poly: &Poly, f: &Field) -> Poly {
    let p = f.p() as usize;
    let mut out = Vec::new();
    for (i, &c) in poly.coeffs.iter().enumerate() {
        if i % p == 0 {
            out.push(f.frobenius_inv(c, 1));
        } else {
            debug_assert!(c.is_zero());
        }
    }
    Poly::from_coeffs(out)
}

/// Distinct-degree then equal-degree factorization of a squarefree monic.
fn factor_squarefree(poly: &Poly, f: &Field) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut g = poly.clone();
    if g.degree() <= 1 {
        if g.degree() == 1 {
            out.push(g);
        }
        return out;
    }
    let q = f.order() as u128;
    let mut h = Poly::x().rem(&g, f);
    let mut d = 0usize;
    while g.degree() >= 2 * (d as isize + 1) {
        d += 1;
        h = h.pow_mod(q, &g, f);
        let diff = h.sub(&Poly::x(), f);
        let gd = diff.gcd(&g, f);
        if gd.degree() > 0 {
            equal_degree_split(&gd, d, f, &mut out);
            g = g.div_rem(&gd, f).0;
            h = h.rem(&g, f);
        }
    }
    if g.degree() > 0 {
        out.push(g);
    }
    out
}

fn equal_degree_split(poly: &Poly, d: usize, f: &Field, out: &mut Vec<Poly>) {
    if poly.degree() as usize == d {
        out.push(poly.clone());
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7 ^ poly.coeffs.len() as u64);
    loop {
        let deg = poly.degree() as usize;
        let t = Poly::from_coeffs((0..deg).map(|_| f.random(&mut rng)).collect());
        if t.degree() < 1 {
            continue;
        }
        let splitter = if f.p() == 2 {
            // Trace map to GF(2) from GF(q^d), q = 2^E: sum of 2^i-th powers.
            let reps = f.e() as usize * d;
            let mut acc = t.rem(poly, f);
            let mut cur = acc.clone();
            for _ in 1..reps {
                cur = cur.mul(&cur, f).rem(poly, f);
                acc = acc.add(&cur, f);
            }
            acc
        } else {
            let qd = (f.order() as u128).pow(d as u32);
            let exp = (qd - 1) / 2;
            let pw = t.pow_mod(exp, poly, f);
            pw.sub(&Poly::one(), f)
        };
        let g = splitter.gcd(poly, f);
        if g.degree() > 0 && g.degree() < poly.degree() {
            let rest = poly.div_rem(&g, f).0;
            equal_degree_split(&g, d, f, out);
            equal_degree_split(&rest, d, f, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn poly(_f: &Field, raw: &[u64]) -> Poly {
        Poly::from_coeffs(raw.iter().map(|&v| Scalar::from_raw(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let f = FieldSpec::new(2, 1).unwrap();
        // (x^2 + x) = x (x + 1)
        let a = poly(&f, &[0, 1, 1]);
        let b = poly(&f, &[0, 1]);
        let (q, r) = a.div_rem(&b, &f);
        assert!(r.is_zero());
        assert_eq!(q, poly(&f, &[1, 1]));
        let g = a.gcd(&poly(&f, &[1, 1]), &f);
        assert_eq!(g, poly(&f, &[1, 1]));
    }

    #[test]
    fn factor_over_gf2() {
        let f = FieldSpec::new(2, 1).unwrap();
        // x^4 + x = x (x+1) (x^2+x+1)
        let a = poly(&f, &[0, 1, 0, 0, 1]);
        let fac = factor(&a, &f);
        assert_eq!(fac.len(), 3);
        let degs: Vec<isize> = fac.iter().map(|(g, _)| g.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn factor_with_multiplicity() {
        let f = FieldSpec::new(2, 1).unwrap();
        // (x+1)^2 = x^2 + 1
        let a = poly(&f, &[1, 0, 1]);
        let fac = factor(&a, &f);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 2);
        assert_eq!(fac[0].0, poly(&f, &[1, 1]));
    }

    #[test]
    fn roots_in_extension() {
        // x^2 + x + 1 has both its roots in GF(4).
        let f4 = FieldSpec::new(2, 2).unwrap();
        let coeffs: Vec<Scalar> = [1u64, 1, 1].iter().map(|&v| Scalar::from_raw(v)).collect();
        let roots = roots_in_field(&coeffs, &f4);
        assert_eq!(roots.len(), 2);
        for r in roots {
            let val = f4.add(f4.add(f4.mul(r, r), r), Scalar::ONE);
            assert!(val.is_zero());
        }
    }

    #[test]
    fn roots_in_large_field() {
        // Roots of the GF(16) modulus inside GF(2^32), found by CZ splitting.
        let f16 = FieldSpec::new(2, 4).unwrap();
        let big = FieldSpec::new(2, 32).unwrap();
        let coeffs: Vec<Scalar> =
            f16.modulus().iter().map(|&v| Scalar::from_raw(v)).collect();
        let roots = roots_in_field(&coeffs, &big);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            let mut acc = Scalar::ZERO;
            let mut pw = Scalar::ONE;
            for &c in f16.modulus() {
                if c != 0 {
                    acc = big.add(acc, pw);
                }
                pw = big.mul(pw, *r);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn factor_over_odd_characteristic() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        // x^9 - x splits into all 9 linear factors over GF(9).
        let mut coeffs = vec![Scalar::ZERO; 10];
        coeffs[1] = f9.neg(Scalar::ONE);
        coeffs[9] = Scalar::ONE;
        let fac = factor(&Poly::from_coeffs(coeffs), &f9);
        assert_eq!(fac.len(), 9);
        assert!(fac.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
    }
}
