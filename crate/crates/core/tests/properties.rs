use std::collections::BTreeSet;

use cliffk::abgroup::{
    check_exact, cokernel, image, kernel, smith_normal_form, IntMatrix, MapSlot, Sequence, Slot,
};
use cliffk::linalg::SparseMatrix;
use cliffk::rep::{build_rep, restriction_multiplicities};
use cliffk::{blade_mul, Blade, CliffordElement, FGAbelianGroup, GroupHom, Rational, ScalarField, Signature};
use num::{BigInt, Integer, One, Signed, Zero};
use proptest::prelude::*;

fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (0..=max_n).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p)))
}

fn element(sig: Signature) -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec(-3i64..=3, sig.dim()).prop_map(move |coeffs| {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(mask, c)| (Blade(mask as u32), Rational::from_integer(c.into())));
        CliffordElement::from_terms(sig, terms).unwrap()
    })
}

fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(r, c, &rows))
    })
}

/// Product of elementary row operations: determinant ±1.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n.max(1), 0..n.max(1), -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, swap) in ops {
            if n == 0 {
                break;
            }
            let mut e = IntMatrix::identity(n);
            if swap {
                e[(i, i)] = BigInt::zero();
                e[(j, j)] = BigInt::zero();
                e[(i, j)] = BigInt::one();
                e[(j, i)] = BigInt::one();
                if i == j {
                    e[(i, i)] = -BigInt::one();
                }
            } else if i != j {
                e[(i, j)] = BigInt::from(k);
            }
            m = &e * &m;
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn clifford_product_is_associative(
        (a, b, c) in signature(5).prop_flat_map(|s| (element(s), element(s), element(s)))
    ) {
        let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// The matrix representation is an independent model of the product:
    /// blade products must map to matrix products.
    #[test]
    fn blade_product_matches_matrices(sig in signature(6), x in any::<u32>(), y in any::<u32>()) {
        let mask = sig.full_mask();
        let (a, b) = (Blade(x & mask), Blade(y & mask));
        let rep = build_rep(sig).unwrap();
        let mats = rep.blade_matrices();
        let (sign, ab) = blade_mul(a, b, sig).unwrap();
        let product = &mats[a.0 as usize] * &mats[b.0 as usize];
        let expected: SparseMatrix<Rational> = mats[ab.0 as usize].scale(&Rational::from_integer(sign.into()));
        prop_assert_eq!(product, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_identities(m in int_matrix(8, 8, 20)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        let k = m.rows().min(m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for i in 1..k {
            let (a, b) = (&s.d[(i - 1, i - 1)], &s.d[(i, i)]);
            prop_assert!(!a.is_negative());
            let divides = if a.is_zero() { b.is_zero() } else { b.is_multiple_of(a) };
            prop_assert!(divides);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity_for_free_groups(m in int_matrix(5, 5, 6)) {
        let f = GroupHom::new(
            FGAbelianGroup::free(m.cols()),
            FGAbelianGroup::free(m.rows()),
            m.clone(),
        ).unwrap();
        prop_assert_eq!(kernel(&f).rank() + image(&f).rank(), m.cols());
        prop_assert!(kernel(&f).torsion().is_empty());
        prop_assert!(image(&f).torsion().is_empty());
    }

    #[test]
    fn cokernel_ignores_basis_change(
        (m, u, v) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            (
                prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
                    .prop_map(move |rows| IntMatrix::from_rows(r, c, &rows)),
                unimodular(r),
                unimodular(c),
            )
        })
    ) {
        let f = GroupHom::new(FGAbelianGroup::free(m.cols()), FGAbelianGroup::free(m.rows()), m.clone()).unwrap();
        let moved = &(&u * &m) * &v;
        let g = GroupHom::new(FGAbelianGroup::free(m.cols()), FGAbelianGroup::free(m.rows()), moved).unwrap();
        prop_assert_eq!(cokernel(&f), cokernel(&g));
        prop_assert_eq!(kernel(&f), kernel(&g));
    }

    #[test]
    fn exactness_agrees_with_element_enumeration(
        (a, b, c) in (0usize..6, 0usize..6, 0usize..6),
        seeds in prop::collection::vec(any::<u32>(), 32),
    ) {
        let groups = [vec![], vec![2u64], vec![4], vec![2, 2], vec![2, 4], vec![8]];
        let g = |i: usize| FGAbelianGroup::new(0, groups[i].iter().map(|&d| BigInt::from(d)).collect()).unwrap();
        let (ga, gb, gc) = (g(a), g(b), g(c));
        let mut seed = seeds.into_iter().cycle();
        let mut hom = |s: &FGAbelianGroup, t: &FGAbelianGroup| {
            let mut m = IntMatrix::zeros(t.ngens(), s.ngens());
            for i in 0..t.ngens() {
                let e = &t.torsion()[i];
                for j in 0..s.ngens() {
                    let step = e / s.torsion()[j].gcd(e);
                    m[(i, j)] = &step * BigInt::from(seed.next().unwrap());
                }
            }
            GroupHom::new(s.clone(), t.clone(), m).unwrap()
        };
        let f = hom(&ga, &gb);
        let h = hom(&gb, &gc);
        let seq = Sequence::new(
            vec![Slot::Known(ga), Slot::Known(gb.clone()), Slot::Known(gc)],
            vec![MapSlot::Known(f.matrix().clone()), MapSlot::Known(h.matrix().clone())],
        ).unwrap();
        let images: BTreeSet<_> = f.source().elements().iter().map(|x| f.apply(x)).collect();
        let kernel: BTreeSet<_> = gb
            .elements()
            .into_iter()
            .filter(|x| h.target().is_zero_element(&h.apply(x)))
            .collect();
        prop_assert_eq!(check_exact(&seq, 1).unwrap(), images == kernel);
    }

    #[test]
    fn restriction_preserves_dimension(big in signature(6), x in any::<usize>(), y in any::<usize>(), complex in any::<bool>()) {
        let small = Signature::new(x % (big.p + 1), y % (big.q + 1));
        let field = if complex { ScalarField::Complex } else { ScalarField::Real };
        let r = restriction_multiplicities(big, small, field).unwrap();
        prop_assert!(r.column_check());
        // Every small irreducible occurs in some restricted big one.
        for i in 0..r.rows() {
            prop_assert!((0..r.cols()).any(|j| r.get(i, j) > 0));
        }
    }
}
