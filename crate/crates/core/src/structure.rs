//! Structure of `C^{p,q}` and its complexification as a product of matrix
//! algebras over `R`, `C` or `H`.

use std::fmt;

use crate::blade::Signature;
use crate::scalar::ScalarField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisionRing {
    R,
    C,
    H,
}

impl DivisionRing {
    pub fn real_dim(self) -> usize {
        match self {
            DivisionRing::R => 1,
            DivisionRing::C => 2,
            DivisionRing::H => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            DivisionRing::R => "R",
            DivisionRing::C => "C",
            DivisionRing::H => "H",
        }
    }
}

impl fmt::Display for DivisionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `factors` identical copies of `M_k(ring)`, as an algebra over
/// `scalar_field`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    pub factors: usize,
    pub matrix_size: usize,
    pub ring: DivisionRing,
    pub scalar_field: ScalarField,
}

impl AlgebraDescriptor {
    /// Dimension over the scalar field.
    pub fn dim(&self) -> usize {
        let ring_dim = match self.scalar_field {
            ScalarField::Real => self.ring.real_dim(),
            ScalarField::Complex => 1,
        };
        self.factors * self.matrix_size * self.matrix_size * ring_dim
    }

    /// Dimension over the scalar field of each irreducible module.
    pub fn irrep_dim(&self) -> usize {
        match self.scalar_field {
            ScalarField::Real => self.matrix_size * self.ring.real_dim(),
            ScalarField::Complex => self.matrix_size,
        }
    }

    /// Dimension of the commutant of an irreducible module,
    /// `dim End_A(S)` over the scalar field.
    pub fn endomorphism_dim(&self) -> usize {
        match self.scalar_field {
            ScalarField::Real => self.ring.real_dim(),
            ScalarField::Complex => 1,
        }
    }

    /// `A ⊗ M_2(k)`.
    pub fn tensor_m2(&self) -> Self {
        AlgebraDescriptor {
            matrix_size: self.matrix_size * 2,
            ..*self
        }
    }

    /// Same module category up to equivalence: equal ring, factor count and
    /// scalar field, any matrix size.
    pub fn morita_equivalent(&self, other: &Self) -> bool {
        self.ring == other.ring && self.factors == other.factors && self.scalar_field == other.scalar_field
    }

    /// `M_k(D)`, or `M_k(D) ⊕ M_k(D)`.
    pub fn matrix_notation(&self) -> String {
        let one = format!("M_{}({})", self.matrix_size, self.ring);
        vec![one; self.factors].join(" ⊕ ")
    }

    /// Like [`matrix_notation`](Self::matrix_notation) but writes `M_1(D)`
    /// as `D`.
    pub fn short_notation(&self) -> String {
        let one = if self.matrix_size == 1 {
            self.ring.symbol().to_string()
        } else {
            format!("M_{}({})", self.matrix_size, self.ring)
        };
        vec![one; self.factors].join(" ⊕ ")
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_notation())
    }
}

/// Ring and factor count for `(p − q) mod 8`.
fn real_type(residue: usize) -> (DivisionRing, usize) {
    match residue {
        0 => (DivisionRing::R, 1),
        1 => (DivisionRing::C, 1),
        2 => (DivisionRing::H, 1),
        3 => (DivisionRing::H, 2),
        4 => (DivisionRing::H, 1),
        5 => (DivisionRing::C, 1),
        6 => (DivisionRing::R, 1),
        7 => (DivisionRing::R, 2),
        _ => unreachable!("residue mod 8"),
    }
}

/// Matrix size `k` with `factors · k² · ring_dim = 2^n`.
fn matrix_size(n: usize, factors: usize, ring_dim: usize) -> usize {
    let used = (factors * ring_dim).trailing_zeros() as usize;
    debug_assert!(n >= used && (n - used) % 2 == 0);
    1 << ((n - used) / 2)
}

pub fn classify(sig: Signature, field: ScalarField) -> AlgebraDescriptor {
    let n = sig.n();
    match field {
        ScalarField::Real => {
            let residue = (sig.p as i64 - sig.q as i64).rem_euclid(8) as usize;
            let (ring, factors) = real_type(residue);
            AlgebraDescriptor {
                factors,
                matrix_size: matrix_size(n, factors, ring.real_dim()),
                ring,
                scalar_field: field,
            }
        }
        ScalarField::Complex => {
            let factors = if n % 2 == 0 { 1 } else { 2 };
            AlgebraDescriptor {
                factors,
                matrix_size: matrix_size(n, factors, 1),
                ring: DivisionRing::C,
                scalar_field: field,
            }
        }
    }
}

/// Shapes on both sides of `C^{0,m+2} ≅ C^{m,0} ⊗ C^{0,2}`: the left-hand
/// side, and the pair `(C^{m,0}, M_2(k))`.
pub fn paper_iso_shape(
    m: usize,
    field: ScalarField,
) -> (AlgebraDescriptor, (AlgebraDescriptor, AlgebraDescriptor)) {
    let lhs = classify(Signature::new(0, m + 2), field);
    let base = classify(Signature::new(m, 0), field);
    let m2 = AlgebraDescriptor {
        factors: 1,
        matrix_size: 2,
        ring: match field {
            ScalarField::Real => DivisionRing::R,
            ScalarField::Complex => DivisionRing::C,
        },
        scalar_field: field,
    };
    (lhs, (base, m2))
}

/// Dimension over the scalar field of each irreducible module, one entry per
/// simple factor. For `C^{n,0}` over the reals this is the Adams number.
pub fn irrep_dims(sig: Signature, field: ScalarField) -> Vec<usize> {
    let d = classify(sig, field);
    vec![d.irrep_dim(); d.factors]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blade::{center_basis, top_element, CliffordElement};
    use crate::scalar::Rational;
    use ScalarField::{Complex, Real};

    fn desc(factors: usize, k: usize, ring: DivisionRing, field: ScalarField) -> AlgebraDescriptor {
        AlgebraDescriptor {
            factors,
            matrix_size: k,
            ring,
            scalar_field: field,
        }
    }

    #[test]
    fn classify_examples() {
        use DivisionRing::*;
        assert_eq!(classify(Signature::new(2, 0), Real), desc(1, 1, H, Real));
        assert_eq!(classify(Signature::new(0, 2), Real), desc(1, 2, R, Real));
        assert_eq!(classify(Signature::new(3, 0), Real), desc(2, 1, H, Real));
        assert_eq!(classify(Signature::new(0, 0), Real), desc(1, 1, R, Real));
        assert_eq!(classify(Signature::new(0, 0), Complex), desc(1, 1, C, Complex));
        assert_eq!(classify(Signature::new(1, 1), Real), desc(1, 2, R, Real));
        assert_eq!(classify(Signature::new(3, 0), Complex), desc(2, 2, C, Complex));
    }

    #[test]
    fn dimension_identity() {
        for n in 0..=10 {
            for p in 0..=n {
                let sig = Signature::new(p, n - p);
                let d = classify(sig, Real);
                assert_eq!(d.factors * d.matrix_size.pow(2) * d.ring.real_dim(), 1 << n, "{sig}");
                assert_eq!(d.dim(), 1 << n);
                let c = classify(sig, Complex);
                assert_eq!(c.factors * c.matrix_size.pow(2) * 2, (1 << n) * 2, "{sig}");
                assert_eq!(c.ring, DivisionRing::C);
            }
        }
    }

    #[test]
    fn periodicity_of_the_table() {
        for n in 0..=6 {
            for p in 0..=n {
                let sig = Signature::new(p, n - p);
                let base = classify(sig, Real);
                for shifted in [Signature::new(p + 8, n - p), Signature::new(p, n - p + 8)] {
                    let s = classify(shifted, Real);
                    assert!(s.morita_equivalent(&base));
                    assert_eq!(s.matrix_size, base.matrix_size * 16);
                }
                let s = classify(Signature::new(p + 1, n - p + 1), Real);
                assert_eq!(s, base.tensor_m2());
            }
        }
    }

    #[test]
    fn center_dimension_agrees_with_blade_oracle() {
        for n in 0..=5 {
            for p in 0..=n {
                let sig = Signature::new(p, n - p);
                let d = classify(sig, Real);
                let expected = if d.factors == 2 || d.ring == DivisionRing::C { 2 } else { 1 };
                assert_eq!(center_basis(sig).unwrap().len(), expected, "{sig}");
            }
        }
    }

    #[test]
    fn two_factor_split_by_central_idempotents() {
        // (3,0): center {1, ω} with ω² = 1, so (1 ± ω)/2 are complementary
        // central idempotents.
        let sig = Signature::new(3, 0);
        let w = top_element::<Rational>(sig);
        let one = CliffordElement::<Rational>::one(sig);
        let half = Rational::new(1.into(), 2.into());
        let plus = (&one + &w).scale(&half);
        let minus = (&one - &w).scale(&half);
        assert_eq!(&plus * &plus, plus);
        assert_eq!(&minus * &minus, minus);
        assert!((&plus * &minus).is_zero());
    }

    #[test]
    fn paper_iso_shape_examples() {
        use DivisionRing::*;
        let (lhs, (base, m2)) = paper_iso_shape(1, Real);
        assert_eq!(lhs, desc(1, 2, C, Real));
        assert_eq!(base, desc(1, 1, C, Real));
        assert_eq!(m2, desc(1, 2, R, Real));
        assert_eq!(base.tensor_m2(), lhs);

        let (lhs, (base, _)) = paper_iso_shape(0, Real);
        assert_eq!(lhs, desc(1, 2, R, Real));
        assert_eq!(base, desc(1, 1, R, Real));

        let (lhs, (base, _)) = paper_iso_shape(2, Real);
        assert_eq!(lhs, desc(1, 2, H, Real));
        assert_eq!(base, desc(1, 1, H, Real));

        for m in 0..=12 {
            for field in [Real, Complex] {
                let (lhs, (base, _)) = paper_iso_shape(m, field);
                assert_eq!(base.tensor_m2(), lhs, "m = {m}");
            }
        }
    }

    #[test]
    fn irrep_dims_examples() {
        assert_eq!(irrep_dims(Signature::new(1, 0), Real), vec![2]);
        assert_eq!(irrep_dims(Signature::new(3, 0), Real), vec![4, 4]);
        assert_eq!(irrep_dims(Signature::new(3, 0), Complex), vec![2, 2]);
    }

    #[test]
    fn notation() {
        let d = classify(Signature::new(3, 0), Real);
        assert_eq!(d.short_notation(), "H ⊕ H");
        assert_eq!(d.matrix_notation(), "M_1(H) ⊕ M_1(H)");
        assert_eq!(classify(Signature::new(1, 1), Real).to_string(), "M_2(R)");
    }
}
