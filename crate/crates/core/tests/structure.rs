use cliffk::blade::center_basis;
use cliffk::rep::{build_complex_rep, build_rep, classification_report, irreducible_modules, untwist_split_check};
use cliffk::{classify, DivisionRing, Gaussian, Rational, ScalarField, Signature};

#[test]
fn classification_examples() {
    let real = |p, q| classify(Signature::new(p, q), ScalarField::Real);
    assert_eq!(real(0, 0).to_string(), "R");
    assert_eq!(real(1, 0).to_string(), "C");
    assert_eq!(real(2, 0).to_string(), "H");
    assert_eq!(real(3, 0).to_string(), "H ⊕ H");
    assert_eq!(real(1, 1).to_string(), "M_2(R)");
    assert_eq!(real(0, 1).to_string(), "R ⊕ R");
    assert_eq!(real(0, 3).matrix_notation(), "M_2(C)");
    assert_eq!(classify(Signature::new(3, 0), ScalarField::Complex).to_string(), "M_2(C) ⊕ M_2(C)");
}

#[test]
fn factor_count_matches_center_dimension() {
    for n in 0..=6usize {
        for p in 0..=n {
            let sig = Signature::new(p, n - p);
            let d = classify(sig, ScalarField::Real);
            let center = center_basis(sig).unwrap().len();
            // The center of a product of f copies of M_k(D) has real dimension f·dim Z(D).
            let zd = if d.ring == DivisionRing::C { 2 } else { 1 };
            assert_eq!(center, d.factors * zd, "{sig}");
        }
    }
}

#[test]
fn representations_have_expected_size() {
    for n in 0..=10usize {
        for p in 0..=n {
            let sig = Signature::new(p, n - p);
            let real = build_rep(sig).unwrap();
            assert!(real.check_relations(), "{sig}");
            let d = classify(sig, ScalarField::Real);
            assert_eq!(real.dim, d.factors * d.irrep_dim(), "{sig}");
            let complex = build_complex_rep(sig).unwrap();
            assert!(complex.check_relations(), "{sig}");
        }
    }
}

#[test]
fn irreducible_counts() {
    for n in 0..=6usize {
        for p in 0..=n {
            let sig = Signature::new(p, n - p);
            let real = irreducible_modules::<Rational>(sig).unwrap();
            assert_eq!(real.len(), classify(sig, ScalarField::Real).factors);
            let complex = irreducible_modules::<Gaussian>(sig).unwrap();
            assert_eq!(complex.len(), classify(sig, ScalarField::Complex).factors);
        }
    }
}

#[test]
fn reports_pass_for_small_signatures() {
    for (p, q) in [(0, 0), (2, 0), (3, 0), (0, 3), (2, 2), (4, 1)] {
        for field in [ScalarField::Real, ScalarField::Complex] {
            let r = classification_report(Signature::new(p, q), field).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn untwisting_splits() {
    for n in 0..=6 {
        assert!(untwist_split_check(n).unwrap());
    }
}
