//! The isomorphism `C^{0,m+2} → C^{m,0} ⊗ C^{0,2}` given on generators by
//! `(t, v) ↦ t ⊗ e₁e₂ + 1 ⊗ v`.

use crate::blade::{Blade, CliffordElement, Signature, TensorElement};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::Rational;

pub const MAX_PAPER_ISO_M: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperIsoReport {
    pub m: usize,
    /// Generator images square to `+1` and pairwise anticommute.
    pub relations_ok: bool,
    pub rank: usize,
    pub expected_rank: usize,
}

impl PaperIsoReport {
    pub fn passed(&self) -> bool {
        self.relations_ok && self.rank == self.expected_rank
    }
}

/// Images of the `m + 2` generators of `C^{0,m+2}`: the first `m` go to
/// `t_i ⊗ e₁e₂`, the last two to `1 ⊗ e₁` and `1 ⊗ e₂`.
pub fn generator_images(m: usize) -> Vec<TensorElement<Rational>> {
    let left = Signature::new(m, 0);
    let right = Signature::new(0, 2);
    let e12 = CliffordElement::blade(right, Blade(0b11)).expect("valid blade");
    let one_left = CliffordElement::one(left);
    let mut images: Vec<_> = (0..m)
        .map(|i| TensorElement::pure(&CliffordElement::generator(left, i).expect("i < m"), &e12))
        .collect();
    for j in 0..2 {
        let v = CliffordElement::generator(right, j).expect("j < 2");
        images.push(TensorElement::pure(&one_left, &v));
    }
    images
}

pub fn paper_iso_report(m: usize) -> Result<PaperIsoReport> {
    if m > MAX_PAPER_ISO_M {
        return Err(Error::BoundExceeded {
            what: "m for verify_paper_iso",
            value: m,
            bound: MAX_PAPER_ISO_M,
        });
    }
    let left = Signature::new(m, 0);
    let right = Signature::new(0, 2);
    let one = TensorElement::one(left, right);
    let images = generator_images(m);

    let mut relations_ok = true;
    for (i, a) in images.iter().enumerate() {
        relations_ok &= a.tensor_mul(a)? == one;
        for b in &images[i + 1..] {
            relations_ok &= a.tensor_mul(b)?.checked_add(&b.tensor_mul(a)?)?.is_zero();
        }
    }

    // Multiplicative extension to the blade basis of C^{0,m+2}.
    let source = Signature::new(0, m + 2);
    let mut blade_images: Vec<TensorElement<Rational>> = Vec::with_capacity(source.dim());
    blade_images.push(one);
    for mask in 1..source.dim() {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        let img = blade_images[rest].tensor_mul(&images[top as usize])?;
        blade_images.push(img);
    }
    let rank = rank(blade_images.iter().map(TensorElement::to_sparse_vec));
    Ok(PaperIsoReport {
        m,
        relations_ok,
        rank,
        expected_rank: source.dim(),
    })
}

/// True iff the generator images satisfy the `C^{0,m+2}` relations and the
/// induced map on the `2^(m+2)`-dimensional blade basis has full rank.
pub fn verify_paper_iso(m: usize) -> Result<bool> {
    Ok(paper_iso_report(m)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = paper_iso_report(0).unwrap();
        assert!(r.passed());
        assert_eq!(r.rank, 4);

        let r = paper_iso_report(1).unwrap();
        assert!(r.relations_ok);
        assert_eq!(r.rank, 8);

        let r = paper_iso_report(2).unwrap();
        assert!(r.passed());
        assert_eq!(r.rank, 16);
    }

    #[test]
    fn m_one_generator_images() {
        let imgs = generator_images(1);
        assert_eq!(imgs.len(), 3);
        let keys: Vec<_> = imgs.iter().map(|t| *t.terms().keys().next().unwrap()).collect();
        assert_eq!(keys, vec![(Blade(1), Blade(0b11)), (Blade::ONE, Blade(0b01)), (Blade::ONE, Blade(0b10))]);
    }

    #[test]
    fn plain_tensor_without_the_twist_fails() {
        // Sending t to t ⊗ 1 instead of t ⊗ e₁e₂ breaks the relations: the
        // image squares to -1 and commutes with 1 ⊗ v.
        let left = Signature::new(1, 0);
        let right = Signature::new(0, 2);
        let t = TensorElement::pure(
            &CliffordElement::<Rational>::generator(left, 0).unwrap(),
            &CliffordElement::one(right),
        );
        assert_ne!(t.tensor_mul(&t).unwrap(), TensorElement::one(left, right));
    }

    #[test]
    fn bound() {
        assert!(matches!(verify_paper_iso(7), Err(Error::BoundExceeded { .. })));
    }
}
