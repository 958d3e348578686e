//! Splitting `C^{0,n+1} ⋊ Z/2` by a central involution.
//!
//! `Z/2 = {1, η}` acts on `C^{0,n+1} = C⁺(V ⊕ 1)` by the antipode of `V`:
//! `η e_i η = −e_i` for the first `n` generators and `η e_{n+1} η = e_{n+1}`
//! for the generator of the trivial summand. The element `z = η e_{n+1}`
//! commutes with every `e_i` and with `η`, and `z² = 1`, so `(1 ± z)/2` are
//! complementary central idempotents.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::blade::{blade_mul, Blade, Signature};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::{rat, Rational};

pub const MAX_UNTWIST_N: usize = 6;

/// Element `Σ c · a η^s` of the crossed product, keyed by `(a, s)`.
#[derive(Clone, Debug, PartialEq)]
struct Twisted {
    n: usize,
    terms: BTreeMap<(Blade, bool), Rational>,
}

impl Twisted {
    fn sig(&self) -> Signature {
        Signature::new(0, self.n + 1)
    }

    fn basis(n: usize, blade: Blade, eta: bool) -> Self {
        Twisted {
            n,
            terms: BTreeMap::from([((blade, eta), Rational::one())]),
        }
    }

    fn one(n: usize) -> Self {
        Self::basis(n, Blade::ONE, false)
    }

    fn add_term(&mut self, key: (Blade, bool), c: Rational) {
        let v = self.terms.remove(&key).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    fn add(&self, other: &Self, factor: &Rational) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone() * factor.clone());
        }
        out
    }

    fn scale(&self, factor: &Rational) -> Self {
        Twisted {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (*k, c.clone() * factor.clone())).collect(),
        }
    }

    /// `(a η^s)(b η^t) = a · σ^s(b) · η^{s+t}`, with `σ` negating the first
    /// `n` generators.
    fn mul(&self, other: &Self) -> Self {
        let sig = self.sig();
        let v_mask = (1u32 << self.n) - 1;
        let mut out = Twisted {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for ((a, s), x) in &self.terms {
            for ((b, t), y) in &other.terms {
                let (sign, ab) = blade_mul(*a, *b, sig).expect("blades of the same signature");
                let mut c = x.clone() * y.clone();
                if sign < 0 {
                    c = -c;
                }
                if *s && (b.0 & v_mask).count_ones() % 2 == 1 {
                    c = -c;
                }
                out.add_term((ab, s ^ t), c);
            }
        }
        out
    }

    fn sparse(&self) -> Vec<(usize, Rational)> {
        self.terms
            .iter()
            .map(|((b, e), c)| ((b.0 as usize) << 1 | usize::from(*e), c.clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntwistReport {
    pub n: usize,
    pub involution: bool,
    pub central: bool,
    pub corner_dims: (usize, usize),
    pub expected_corner_dim: usize,
    /// Inside each corner, the images of `e_1 … e_n` and `η` square to the
    /// corner's unit and pairwise anticommute, i.e. the corner is a quotient
    /// of `C^{0,n+1}`; with the dimension count it is isomorphic to it.
    pub corner_relations: bool,
}

impl UntwistReport {
    pub fn passed(&self) -> bool {
        self.involution
            && self.central
            && self.corner_dims == (self.expected_corner_dim, self.expected_corner_dim)
            && self.corner_relations
    }
}

pub fn untwist_report(n: usize) -> Result<UntwistReport> {
    if n > MAX_UNTWIST_N {
        return Err(Error::BoundExceeded {
            what: "n for untwist_split_check",
            value: n,
            bound: MAX_UNTWIST_N,
        });
    }
    let sig = Signature::new(0, n + 1);
    let one = Twisted::one(n);
    let eta = Twisted::basis(n, Blade::ONE, true);
    let gens: Vec<Twisted> = (0..=n).map(|i| Twisted::basis(n, Blade::generator(i), false)).collect();
    let z = eta.mul(&gens[n]);

    let involution = z.mul(&z) == one;
    let central = gens.iter().chain(std::iter::once(&eta)).all(|g| z.mul(g) == g.mul(&z));

    let half = Rational::new(1.into(), 2.into());
    let basis: Vec<Twisted> = sig
        .blades()
        .flat_map(|b| [Twisted::basis(n, b, false), Twisted::basis(n, b, true)])
        .collect();
    let mut corner_dims = [0usize; 2];
    let mut corner_relations = true;
    for (slot, sign) in [rat(1), rat(-1)].into_iter().enumerate() {
        let idem = one.add(&z, &sign).scale(&half);
        corner_dims[slot] = rank(basis.iter().map(|b| idem.mul(b).sparse()));

        let mut corner_gens: Vec<Twisted> = gens[..n].iter().map(|g| g.mul(&idem)).collect();
        corner_gens.push(eta.mul(&idem));
        for (i, a) in corner_gens.iter().enumerate() {
            corner_relations &= a.mul(a) == idem;
            for b in &corner_gens[i + 1..] {
                corner_relations &= a.mul(b).add(&b.mul(a), &rat(1)).terms.is_empty();
            }
        }
    }
    Ok(UntwistReport {
        n,
        involution,
        central,
        corner_dims: (corner_dims[0], corner_dims[1]),
        expected_corner_dim: sig.dim(),
        corner_relations,
    })
}

/// True iff `η e_{n+1}` is a central involution of `C^{0,n+1} ⋊ Z/2` whose
/// two idempotent corners each have dimension `2^(n+1)`.
pub fn untwist_split_check(n: usize) -> Result<bool> {
    Ok(untwist_report(n)?.passed())
}
