//! Property tests for the algebraic substrate: field axioms, linear
//! algebra laws, and word-combinatorics invariants on randomized inputs.

use proptest::prelude::*;

use endosym::dihedral::{string_module, BandSpec, Word};
use endosym::gf::{embed, FieldSpec, Scalar};
use endosym::linalg::{nullspace, rref, Mat, Subspace};
use endosym::modules::hom;
use endosym::suites::SuiteConfig;

fn gf(p: u64, e: u32) -> endosym::gf::Field {
    FieldSpec::new(p, e).unwrap()
}

proptest! {
    #[test]
    fn field_axioms_gf2_16(a_raw in 0u64..(1 << 16), b_raw in 0u64..(1 << 16), c_raw in 0u64..(1 << 16)) {
        let f = gf(2, 16);
        let (a, b, c) = (Scalar::from_raw(a_raw), Scalar::from_raw(b_raw), Scalar::from_raw(c_raw));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Scalar::ONE);
            prop_assert_eq!(f.pow(a, (1 << 16) - 1), Scalar::ONE);
        }
    }

    #[test]
    fn field_axioms_gf9(a_raw in 0u64..9, b_raw in 0u64..9) {
        let f = gf(3, 2);
        let (a, b) = (Scalar::from_raw(a_raw), Scalar::from_raw(b_raw));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
    }

    #[test]
    fn embedding_multiplicative(a_raw in 0u64..256, b_raw in 0u64..256) {
        let src = gf(2, 8);
        let dst = gf(2, 16);
        let (a, b) = (Scalar::from_raw(a_raw), Scalar::from_raw(b_raw));
        let e = |x| embed(&src, &dst, x).unwrap();
        prop_assert_eq!(e(src.mul(a, b)), dst.mul(e(a), e(b)));
        prop_assert_eq!(e(src.add(a, b)), dst.add(e(a), e(b)));
    }

    #[test]
    fn rref_is_idempotent_and_rank_stable(
        entries in prop::collection::vec(0u64..(1 << 16), 12),
    ) {
        let f = gf(2, 16);
        let m = Mat::from_flat(&f, 3, 4, entries.into_iter().map(Scalar::from_raw).collect());
        let once = rref(&m);
        let twice = rref(&once.mat);
        prop_assert_eq!(&once.mat, &twice.mat);
        prop_assert_eq!(once.rank, m.transpose().rank());
        // Kernel vectors annihilate exactly, and dimensions add up.
        let ns = nullspace(&m);
        prop_assert_eq!(ns.dim() + once.rank, 4);
        for v in ns.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kron_mixed_product(
        a_e in prop::collection::vec(0u64..4, 4),
        b_e in prop::collection::vec(0u64..4, 4),
        c_e in prop::collection::vec(0u64..4, 4),
        d_e in prop::collection::vec(0u64..4, 4),
    ) {
        let f = gf(2, 2);
        let mk = |v: Vec<u64>| Mat::from_flat(&f, 2, 2, v.into_iter().map(Scalar::from_raw).collect());
        let (a, b, c, d) = (mk(a_e), mk(b_e), mk(c_e), mk(d_e));
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
        prop_assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn subspace_dimension_formula(
        v1 in prop::collection::vec(prop::collection::vec(0u64..2, 5), 1..4),
        v2 in prop::collection::vec(prop::collection::vec(0u64..2, 5), 1..4),
    ) {
        let f = gf(2, 1);
        let mk = |vs: Vec<Vec<u64>>| {
            let vecs: Vec<Vec<Scalar>> = vs
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::from_raw).collect())
                .collect();
            Subspace::from_spanning(&f, 5, &vecs)
        };
        let (s1, s2) = (mk(v1), mk(v2));
        let sum = s1.sum(&s2);
        let meet = s1.intersect(&s2);
        prop_assert_eq!(s1.dim() + s2.dim(), sum.dim() + meet.dim());
        prop_assert!(sum.contains_subspace(&s1));
        prop_assert!(s1.contains_subspace(&meet));
    }
}

// Word-level invariants on exhaustively enumerated small words.

#[test]
fn word_transform_involutions() {
    for text in ["a", "ab", "aB", "AbaBA", "abab", "babA", "1a", "1b"] {
        let w = Word::parse(text).unwrap();
        assert_eq!(w.inverse().inverse(), w, "{text}");
        assert_eq!(w.letter_swap().letter_swap(), w, "{text}");
        assert_eq!(w.direction_swap().direction_swap(), w, "{text}");
    }
}

#[test]
fn string_module_shape_invariants() {
    let f = SuiteConfig::default_field();
    for text in ["a", "ab", "aB", "AbaBA", "ababa", "BaBaB"] {
        let w = Word::parse(text).unwrap();
        let m = string_module(&w, &f).unwrap();
        assert_eq!(m.dim(), w.len() + 1);
        for gen in ["X", "Y"] {
            let g = m.generator(gen).unwrap();
            assert!(g.mul(g).is_zero(), "square-zero relation for {text}");
        }
        // M_w and M_{w^{-1}} have the same endomorphism dimension.
        let mi = string_module(&w.inverse(), &f).unwrap();
        assert_eq!(hom(&m, &m).unwrap().dim(), hom(&mi, &mi).unwrap().dim());
    }
}

#[test]
fn band_isomorphism_symmetries() {
    use endosym::dihedral::{
        band_module, inversion_lambda_exponent, rotation_lambda_exponent,
    };
    use endosym::modules::is_isomorphic;
    let f = SuiteConfig::default_field();
    let gf16 = FieldSpec::new(2, 4).unwrap();
    let lam16 = gf16.generator();
    let lam = embed(&gf16, &f, lam16).unwrap();
    let lam_inv = f.inv(lam).unwrap();
    let twist = |e: i8| if e == 1 { lam } else { lam_inv };
    for text in ["ab", "aB", "abAB", "aBAb", "abaBAB", "ababAB"] {
        let w = Word::parse(text).unwrap();
        for m in [1usize, 2] {
            let spec = BandSpec::new(w.clone(), m, lam).unwrap();
            let base = band_module(&spec, &f).unwrap();
            // Rotations: isomorphic with λ twisted by the marked-edge sign.
            for k in 1..w.len() {
                let e = rotation_lambda_exponent(&w, k);
                let rot = BandSpec::new(w.rotate(k), m, twist(e)).unwrap();
                let rot_mod = band_module(&rot, &f).unwrap();
                assert!(
                    is_isomorphic(&base, &rot_mod, 0, 6).unwrap().as_bool(),
                    "rotation by {k} of {text}"
                );
                // And with the wrong twist it must fail (λ² != 1 here).
                let wrong = BandSpec::new(w.rotate(k), m, twist(-e)).unwrap();
                let wrong_mod = band_module(&wrong, &f).unwrap();
                assert!(
                    !is_isomorphic(&base, &wrong_mod, 0, 6).unwrap().as_bool(),
                    "wrong twist accepted for rotation by {k} of {text}"
                );
            }
            // Inversion, same treatment.
            let e = inversion_lambda_exponent(&w);
            let inv = BandSpec::new(w.inverse(), m, twist(e)).unwrap();
            let inv_mod = band_module(&inv, &f).unwrap();
            assert!(
                is_isomorphic(&base, &inv_mod, 0, 6).unwrap().as_bool(),
                "inverse of {text}"
            );
        }
    }
}

#[test]
fn string_inverse_isomorphism() {
    use endosym::modules::is_isomorphic;
    let f = SuiteConfig::default_field();
    // The worked length-5 word and a few others.
    for text in ["AbaBA", "ab", "aBa", "abaB"] {
        let w = Word::parse(text).unwrap();
        let m = string_module(&w, &f).unwrap();
        let mi = string_module(&w.inverse(), &f).unwrap();
        assert!(is_isomorphic(&m, &mi, 0, 6).unwrap().as_bool(), "{text}");
    }
}
