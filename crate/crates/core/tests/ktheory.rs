use cliffk::abgroup::{solve_exact, Slot, DEFAULT_SEARCH_CEILING};
use cliffk::ktheory::{
    adams_f, bott_sequence_instance, point_k, reduced_k_rpn, relative_k, sequence_e_instance, ForgetfulFunctor,
    Theory,
};
use cliffk::{classify, FGAbelianGroup, ScalarField, Signature};
use num::BigInt;

fn group(t: Theory, i: usize) -> FGAbelianGroup {
    point_k(i, t).unwrap().group
}

fn terms(seq: &cliffk::Sequence) -> Vec<String> {
    seq.terms()
        .iter()
        .map(|t| match t {
            Slot::Known(g) => g.to_string(),
            Slot::Unknown(_) => "?".to_string(),
        })
        .collect()
}

#[test]
fn ko_periodicity_within_bounds() {
    // Largest algebra used is C^{16,0}.
    for i in 0..=8 {
        assert_eq!(group(Theory::KO, i), group(Theory::KO, i + 8), "i = {i}");
    }
}

#[test]
fn ku_periodicity() {
    for i in 0..=7 {
        assert_eq!(group(Theory::KU, i), group(Theory::KU, i + 2), "i = {i}");
    }
}

#[test]
fn ko_point_row() {
    let row: Vec<String> = (0..8).map(|i| group(Theory::KO, i).to_string()).collect();
    assert_eq!(row, ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"]);
}

#[test]
fn rpn_order_matches_irreducible_dimension() {
    // Independent of adams_f: the real irreducible of C^{n,0} has dimension
    // 2^f(n), read off the classification.
    for n in 1..=16 {
        let g = reduced_k_rpn(n, Theory::KO).unwrap().group;
        let irrep = classify(Signature::new(n, 0), ScalarField::Real).irrep_dim();
        assert_eq!(g.order(), Some(BigInt::from(irrep)), "n = {n}");
        assert_eq!(irrep, 1 << adams_f(n));
        assert_eq!(g.torsion().len(), 1, "cyclic for n = {n}");
    }
    for n in 1..=12 {
        let g = reduced_k_rpn(n, Theory::KU).unwrap().group;
        assert_eq!(g.order(), Some(BigInt::from(1u64 << (n / 2))), "n = {n}");
    }
}

#[test]
fn relative_k_is_morita_invariant() {
    for field in [ScalarField::Real, ScalarField::Complex] {
        for n in 0..=5usize {
            for p in 0..=n {
                let big = Signature::new(p, n - p);
                for sp in 0..=big.p {
                    for sq in 0..=big.q {
                        let f = ForgetfulFunctor::new(big, Signature::new(sp, sq), field).unwrap();
                        assert_eq!(
                            relative_k(&f).unwrap().pair(),
                            relative_k(&f.doubled()).unwrap().pair(),
                            "{f}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn every_bott_degree_is_solvable() {
    for i in 0..8 {
        let seq = bott_sequence_instance(i).unwrap();
        let sols = solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING).unwrap();
        assert!(!sols.is_empty(), "degree {i}");
    }
}

#[test]
fn bott_degree_four_forces_unit() {
    let seq = bott_sequence_instance(4).unwrap();
    assert_eq!(terms(&seq), ["Z", "Z", "0", "0"]);
    let sols = solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING).unwrap();
    let firsts: Vec<String> = sols.iter().map(|a| a.maps[0].matrix().to_string()).collect();
    assert_eq!(firsts, ["[[-1]]", "[[1]]"]);
}

#[test]
fn bott_degree_three_has_zero_start() {
    let seq = bott_sequence_instance(3).unwrap();
    assert_eq!(terms(&seq), ["0", "0", "Z", "Z"]);
}

#[test]
fn sequence_e_degrees() {
    assert_eq!(terms(&sequence_e_instance(0).unwrap())[..3], ["Z", "Z", "Z/2"]);
    assert_eq!(terms(&sequence_e_instance(2).unwrap())[..3], ["Z", "Z/2", "0"]);
    assert_eq!(terms(&sequence_e_instance(5).unwrap())[..3], ["0", "0", "0"]);
}
