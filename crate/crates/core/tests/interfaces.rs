//! Cross-module spot checks pinning concrete worked values: endomorphism
//! bases of small string modules, socle dimensions, deterministic
//! certificates, and the linear-quiver realization.

use endosym::algebra::Side;
use endosym::classify::{classify, Certificate, ClassifyOptions};
use endosym::dihedral::{string_module, Word};
use endosym::gf::FieldSpec;
use endosym::linalg::Mat;
use endosym::modules::{end_algebra, hom};
use endosym::nakayama::{s_set, NakayamaAlgebraSpec, NakayamaRealization, QuiverShape, UniserialSpec};
use endosym::parse::analyze_object;
use endosym::suites::{klein_regular_module, SuiteConfig};

fn cfg() -> SuiteConfig {
    SuiteConfig::default()
}

#[test]
fn end_of_ab_string_is_two_dimensional_with_corner_unit() {
    // End(M_ab) = span{I, E_31}.
    let f = cfg().field;
    let m = string_module(&Word::parse("ab").unwrap(), &f).unwrap();
    let e = end_algebra(&m).unwrap();
    assert_eq!(e.dim(), 2);
    let basis = e.matrix_basis().unwrap();
    let expected = Mat::unit(&f, 3, 3, 1);
    // The non-identity part of the span is the sink-to-source unit.
    let span_has = |target: &Mat| {
        let mut rows = Vec::new();
        for b in basis {
            rows.push(b.flatten());
        }
        rows.push(target.flatten());
        let mut m = Mat::zero(&f, rows.len(), 9);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m.rank() == 2
    };
    assert!(span_has(&expected));
}

#[test]
fn end_of_aba_string_has_socle_dimension_two() {
    let f = cfg().field;
    let m = string_module(&Word::parse("aba").unwrap(), &f).unwrap();
    let e = end_algebra(&m).unwrap();
    assert_eq!(e.dim(), 3);
    assert_eq!(e.socle(Side::Left).subspace.dim(), 2);
    assert!(e.is_local().0, "string endomorphism algebras are local");
    let v = classify(&e, &ClassifyOptions::default()).unwrap();
    assert!(!v.summary().quasi_frobenius);
    assert!(matches!(v.quasi_frobenius.certificate, Some(Certificate::SocleDims { left: 2, .. })));
}

#[test]
fn band_mod4_two_case_rejected_by_commutator_ideal() {
    // |w| = 6 ≡ 2 (mod 4): quasi-Frobenius but not symmetric, with the
    // deterministic one-dimensional-ideal-in-commutator certificate.
    let report = analyze_object("band:abaBAB:m=1:lambda=1", &cfg()).unwrap();
    let v = &report.verdict;
    assert!(v.summary().quasi_frobenius && v.summary().weakly_symmetric);
    assert!(!v.summary().symmetric);
    match &v.symmetric.certificate {
        Some(Certificate::IdealInCommutator { ideal, .. }) => {
            // The largest ideal inside [E, E] contains the one-dimensional
            // ideal the combinatorics names.
            assert!(ideal.dim() >= 1);
            let f = cfg().field;
            let m = endosym::dihedral::band_module(
                &endosym::dihedral::BandSpec::new(
                    Word::parse("abaBAB").unwrap(),
                    1,
                    endosym::gf::Scalar::ONE,
                )
                .unwrap(),
                &f,
            )
            .unwrap();
            let e = end_algebra(&m).unwrap();
            assert!(e.commutator_subspace().contains_subspace(ideal));
            assert!(e.is_ideal(ideal, Side::Left));
        }
        other => panic!("expected an ideal-in-commutator certificate, got {other:?}"),
    }
}

#[test]
fn regular_module_end_is_group_algebra_sized() {
    let f = cfg().field;
    let k = klein_regular_module(&f);
    let e = end_algebra(&k).unwrap();
    assert_eq!(e.dim(), 4, "End of the regular module is the group algebra (opposite)");
    assert!(e.is_local().0);
    assert_eq!(e.socle(Side::Left).subspace.dim(), 1);
}

#[test]
fn linear_quiver_realization_matches_congruence_counts() {
    let f = cfg().field;
    let alg = NakayamaAlgebraSpec::new(4, QuiverShape::Linear, vec![4, 3, 2, 1]).unwrap();
    let real = NakayamaRealization::new(&alg, &f);
    let mods = alg.all_modules();
    for m1 in &mods {
        for m2 in &mods {
            let expected = s_set(m1, m2).unwrap().len();
            let got = hom(&real.module(m1).unwrap(), &real.module(m2).unwrap()).unwrap().dim();
            assert_eq!(got, expected, "{} -> {}", m1.descriptor(), m2.descriptor());
        }
    }
    // A full-length projective over the linear quiver is uniserial with
    // fully symmetric endomorphisms.
    let p1 = UniserialSpec::new(&alg, 1, 4).unwrap();
    let e = end_algebra(&real.module(&p1).unwrap()).unwrap();
    let v = classify(&e, &ClassifyOptions::default()).unwrap();
    assert!(v.summary().symmetric);
}

#[test]
fn verdict_json_embeds_bounds_and_certificates() {
    // A non-symmetric object with a deterministic rejection: check the
    // serialized verdict carries the certificate and the witness hex.
    let report = analyze_object("band:abAB:m=1:lambda=w^1@GF(16)", &cfg()).unwrap();
    let j = report.to_json();
    let sym = &j["verdict"]["symmetric"];
    assert_eq!(sym["value"], "false");
    assert_eq!(sym["certificate"]["kind"], "ideal_in_commutator");
    assert!(sym["certificate"]["ideal"]["basis"].is_array());
    let frob = &j["verdict"]["frobenius"];
    assert_eq!(frob["value"], "true");
    assert!(frob["witness"].is_array(), "Frobenius witness coordinates in hex");
}

#[test]
fn field_spec_serialization_contract() {
    let f = FieldSpec::new(2, 16).unwrap();
    assert!(f.descriptor().starts_with("2^16:"));
    let back = FieldSpec::parse(&f.descriptor()).unwrap();
    assert_eq!(back.as_ref(), f.as_ref());
}
