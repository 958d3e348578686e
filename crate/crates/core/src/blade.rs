//! Exact arithmetic in the Clifford algebra `C^{p,q}`.
//!
//! Generators are numbered `e_1 … e_{p+q}`; the first `p` square to `−1` and
//! the remaining `q` square to `+1`. A basis blade is an ascending product of
//! distinct generators and is stored as a bit mask, bit `i − 1` standing for
//! `e_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::scalar::{Rational, Scalar};

/// Largest generator count for which [`center_basis`] runs unless a bound is
/// passed explicitly.
pub const DEFAULT_CENTER_BOUND: usize = 8;

/// `(p, q)`: `p` generators squaring to `−1`, `q` squaring to `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    /// Number of generators.
    pub const fn n(self) -> usize {
        self.p + self.q
    }

    /// Dimension `2^(p+q)` of the algebra.
    pub fn dim(self) -> usize {
        1usize << self.n()
    }

    pub fn full_mask(self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    /// Square of the generator with zero-based index `i`.
    pub fn generator_square(self, i: usize) -> i8 {
        if i < self.p {
            -1
        } else {
            1
        }
    }

    pub fn blades(self) -> impl Iterator<Item = Blade> {
        (0..self.dim() as u32).map(Blade)
    }

    fn check(self, b: Blade) -> Result<()> {
        if b.0 & !self.full_mask() != 0 {
            Err(Error::InvalidBlade { mask: b.0, sig: self })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{{{},{}}}", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(pub u32);

impl Blade {
    pub const ONE: Blade = Blade(0);

    /// The generator `e_{i+1}` for zero-based `i`.
    pub fn generator(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let names: Vec<String> = self.indices().map(|i| format!("e{}", i + 1)).collect();
        f.write_str(&names.join(""))
    }
}

/// Sign from reordering the concatenated generator word `a b` into ascending
/// order, ignoring squares.
fn reorder_sign(a: u32, b: u32) -> i8 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Product of two basis blades: `a · b = sign · result`.
pub fn blade_mul(a: Blade, b: Blade, sig: Signature) -> Result<(i8, Blade)> {
    sig.check(a)?;
    sig.check(b)?;
    let mut sign = reorder_sign(a.0, b.0);
    let negative = (a.0 & b.0) & ((1u32 << sig.p) - 1);
    if negative.count_ones() % 2 == 1 {
        sign = -sign;
    }
    Ok((sign, Blade(a.0 ^ b.0)))
}

fn blade_mul_unchecked(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    let mut sign = reorder_sign(a.0, b.0);
    if (a.0 & b.0 & ((1u32 << sig.p) - 1)).count_ones() % 2 == 1 {
        sign = -sign;
    }
    (sign, Blade(a.0 ^ b.0))
}

fn signed<S: Scalar>(sign: i8, value: S) -> S {
    if sign < 0 {
        -value
    } else {
        value
    }
}

/// Element of `C^{p,q}` with coefficients in `S`. No stored coefficient is
/// zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement<S = Rational> {
    sig: Signature,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> CliffordElement<S> {
    pub fn zero(sig: Signature) -> Self {
        CliffordElement {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: Signature, value: S) -> Self {
        Self::from_terms(sig, [(Blade::ONE, value)]).expect("unit blade is always valid")
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, S::one())
    }

    pub fn blade(sig: Signature, blade: Blade) -> Result<Self> {
        Self::from_terms(sig, [(blade, S::one())])
    }

    /// The generator `e_{i+1}`.
    pub fn generator(sig: Signature, i: usize) -> Result<Self> {
        if i >= sig.n() {
            return Err(Error::InvalidBlade {
                mask: if i < 32 { 1 << i } else { u32::MAX },
                sig,
            });
        }
        Self::blade(sig, Blade::generator(i))
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, S)>) -> Result<Self> {
        let mut out = Self::zero(sig);
        for (b, c) in terms {
            sig.check(b)?;
            out.add_term(b, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, b: Blade, c: S) {
        let v = self.terms.remove(&b).unwrap_or_else(S::zero) + c;
        if !v.is_zero() {
            self.terms.insert(b, v);
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &BTreeMap<Blade, S> {
        &self.terms
    }

    pub fn coefficient(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            out.add_term(*b, c.clone() * factor.clone());
        }
        out
    }

    fn same_sig(&self, other: &Self) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Bilinear extension of [`blade_mul`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (sign, blade) = blade_mul_unchecked(*a, *b, self.sig);
                out.add_term(blade, signed(sign, x.clone() * y.clone()));
            }
        }
        Ok(out)
    }

    /// `x y − y x`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Coefficient vector indexed by blade mask.
    pub fn to_sparse_vec(&self) -> Vec<(usize, S)> {
        self.terms.iter().map(|(b, c)| (b.0 as usize, c.clone())).collect()
    }
}

impl<S: Scalar> Add for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn add(self, rhs: Self) -> CliffordElement<S> {
        self.checked_add(rhs).expect("signature mismatch in Clifford addition")
    }
}

impl<S: Scalar> Sub for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn sub(self, rhs: Self) -> CliffordElement<S> {
        self.checked_sub(rhs).expect("signature mismatch in Clifford subtraction")
    }
}

impl<S: Scalar> Mul for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn mul(self, rhs: Self) -> CliffordElement<S> {
        self.checked_mul(rhs).expect("signature mismatch in Clifford product")
    }
}

impl<S: Scalar> Neg for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn neg(self) -> CliffordElement<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                if *b == Blade::ONE {
                    format!("{c}")
                } else if c.is_one() {
                    format!("{b}")
                } else {
                    format!("({c}){b}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The volume element `ω = e_1 e_2 … e_{p+q}`.
pub fn top_element<S: Scalar>(sig: Signature) -> CliffordElement<S> {
    CliffordElement::blade(sig, Blade(sig.full_mask())).expect("full mask is valid")
}

/// Basis of the center `{x : x e_i = e_i x for every generator}`, found by an
/// exact linear solve over the `2^(p+q)` coefficients.
pub fn center_basis(sig: Signature) -> Result<Vec<CliffordElement<Rational>>> {
    center_basis_with_bound(sig, DEFAULT_CENTER_BOUND)
}

pub fn center_basis_with_bound<S: Scalar>(sig: Signature, bound: usize) -> Result<Vec<CliffordElement<S>>> {
    if sig.n() > bound {
        return Err(Error::BoundExceeded {
            what: "p+q for center_basis",
            value: sig.n(),
            bound,
        });
    }
    let mut system = LinearSystem::<S>::new(sig.dim());
    for i in 0..sig.n() {
        let g = Blade::generator(i);
        // Coefficient rows of x ↦ x g − g x, one per output blade.
        let mut rows: BTreeMap<u32, Vec<(usize, S)>> = BTreeMap::new();
        for a in sig.blades() {
            let (s1, out) = blade_mul_unchecked(a, g, sig);
            let (s2, _) = blade_mul_unchecked(g, a, sig);
            let coef = S::from_int(i64::from(s1) - i64::from(s2));
            rows.entry(out.0).or_default().push((a.0 as usize, coef));
        }
        for (_, eq) in rows {
            system.add_equation(eq);
        }
    }
    let ns = system.nullspace();
    let mut basis: Vec<CliffordElement<S>> = ns
        .basis
        .into_iter()
        .map(|v| {
            CliffordElement::from_terms(sig, v.into_iter().map(|(i, c)| (Blade(i as u32), c)))
                .expect("nullspace coordinates are blades of sig")
        })
        .collect();
    basis.sort_by_key(|x| x.terms.keys().next().copied());
    Ok(basis)
}

/// Element of the ungraded tensor product `C^{left} ⊗ C^{right}`, whose two
/// factors commute with each other.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement<S = Rational> {
    left_sig: Signature,
    right_sig: Signature,
    terms: BTreeMap<(Blade, Blade), S>,
}

impl<S: Scalar> TensorElement<S> {
    pub fn zero(left_sig: Signature, right_sig: Signature) -> Self {
        TensorElement {
            left_sig,
            right_sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(left_sig: Signature, right_sig: Signature) -> Self {
        Self::pure(&CliffordElement::one(left_sig), &CliffordElement::one(right_sig))
    }

    /// `a ⊗ b`.
    pub fn pure(a: &CliffordElement<S>, b: &CliffordElement<S>) -> Self {
        let mut out = Self::zero(a.sig, b.sig);
        for (x, c) in &a.terms {
            for (y, d) in &b.terms {
                out.add_term((*x, *y), c.clone() * d.clone());
            }
        }
        out
    }

    fn add_term(&mut self, key: (Blade, Blade), c: S) {
        let v = self.terms.remove(&key).unwrap_or_else(S::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn signatures(&self) -> (Signature, Signature) {
        (self.left_sig, self.right_sig)
    }

    pub fn terms(&self) -> &BTreeMap<(Blade, Blade), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_sigs(&self, other: &Self) -> Result<()> {
        if self.left_sig != other.left_sig {
            return Err(Error::SignatureMismatch {
                left: self.left_sig,
                right: other.left_sig,
            });
        }
        if self.right_sig != other.right_sig {
            return Err(Error::SignatureMismatch {
                left: self.right_sig,
                right: other.right_sig,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_sigs(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    /// `(a ⊗ b)(a′ ⊗ b′) = (a a′) ⊗ (b b′)`, extended bilinearly.
    pub fn tensor_mul(&self, other: &Self) -> Result<Self> {
        self.same_sigs(other)?;
        let mut out = Self::zero(self.left_sig, self.right_sig);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let (s1, ac) = blade_mul_unchecked(*a, *c, self.left_sig);
                let (s2, bd) = blade_mul_unchecked(*b, *d, self.right_sig);
                out.add_term((ac, bd), signed(s1 * s2, x.clone() * y.clone()));
            }
        }
        Ok(out)
    }

    /// Coefficient vector indexed by `left_mask · 2^(right n) + right_mask`.
    pub fn to_sparse_vec(&self) -> Vec<(usize, S)> {
        let shift = self.right_sig.n();
        self.terms
            .iter()
            .map(|((a, b), c)| (((a.0 as usize) << shift) | b.0 as usize, c.clone()))
            .collect()
    }
}

impl<S: Scalar> fmt::Display for TensorElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c}){a}⊗{b}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
