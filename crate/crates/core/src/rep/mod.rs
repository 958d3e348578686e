//! Explicit matrix representations of `C^{p,q}`.
//!
//! Real representations are assembled recursively from `(0,0)`, `(1,0)` and
//! `(0,1)` using four algebra isomorphisms:
//!
//! * `C^{p+1,q+1} ≅ C^{p,q} ⊗ M_2(R)` (block doubling),
//! * `C^{m+2,0} ≅ C^{0,m} ⊗ H`, used only for `m ≤ 1`,
//! * `C^{0,m+2} ≅ C^{m,0} ⊗ C^{0,2}` via `t ↦ t ⊗ e₁e₂`, `v ↦ 1 ⊗ v`,
//! * `C^{p+4,q−4} ≅ C^{p,q}`, replacing four positive generators `f_i` by
//!   `f_i f₁f₂f₃f₄`.
//!
//! Each step maps an irreducible module to an irreducible module, so the
//! result is irreducible for simple algebras and the sum of the two
//! irreducibles for two-factor algebras. All entries lie in `{−1, 0, 1}`.
//! Complex representations use Pauli-matrix doubling and multiply the first
//! `p` generators by `i`.

mod paper_iso;
mod restrict;
mod untwist;

pub use paper_iso::{paper_iso_report, verify_paper_iso, PaperIsoReport, MAX_PAPER_ISO_M};
pub use restrict::{restriction_multiplicities, RestrictionMatrix, MAX_RESTRICTION_GENERATORS};
pub use untwist::{untwist_report, untwist_split_check, UntwistReport, MAX_UNTWIST_N};

use std::collections::HashMap;

use crate::blade::Signature;
use crate::error::{Error, Result};
use crate::linalg::{rank, LinearSystem, Nullspace, SparseMatrix};
use crate::scalar::{Gaussian, Rational, Scalar, ScalarField};
use crate::structure::{classify, AlgebraDescriptor};

pub const MAX_REP_GENERATORS: usize = 16;
pub const MAX_VERIFY_GENERATORS: usize = 8;

/// Matrices `γ_1 … γ_{p+q}` with `γ_i² = −I` for `i ≤ p`, `+I` otherwise,
/// pairwise anticommuting. Generators are listed negative ones first.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<S: Scalar> {
    pub sig: Signature,
    pub dim: usize,
    pub generators: Vec<SparseMatrix<S>>,
}

impl<S: Scalar> MatrixRep<S> {
    pub fn check_relations(&self) -> bool {
        let id = SparseMatrix::<S>::identity(self.dim);
        let minus_id = -&id;
        self.generators.len() == self.sig.n()
            && self.generators.iter().enumerate().all(|(i, g)| {
                let sq = g * g;
                let expected = if i < self.sig.p { &minus_id } else { &id };
                sq == *expected
                    && self.generators[i + 1..]
                        .iter()
                        .all(|h| (&(g * h) + &(h * g)).is_zero())
            })
    }

    /// Images of all `2^(p+q)` basis blades, indexed by mask.
    pub fn blade_matrices(&self) -> Vec<SparseMatrix<S>> {
        let mut out = Vec::with_capacity(self.sig.dim());
        out.push(SparseMatrix::identity(self.dim));
        for mask in 1..self.sig.dim() {
            let top = usize::BITS - 1 - mask.leading_zeros();
            let rest = mask & !(1 << top);
            let m = &out[rest] * &self.generators[top as usize];
            out.push(m);
        }
        out
    }

    /// Image of the volume element `γ_1 ⋯ γ_{p+q}`.
    pub fn volume(&self) -> SparseMatrix<S> {
        self.generators
            .iter()
            .fold(SparseMatrix::identity(self.dim), |acc, g| &acc * g)
    }

    /// Dimension of the span of the image of the algebra.
    pub fn span_dim(&self) -> usize {
        rank(self.blade_matrices().iter().map(SparseMatrix::flatten))
    }

    /// Restriction along the initial-segment inclusion `C^{p',q'} ⊂ C^{p,q}`:
    /// the first `p'` negative and the first `q'` positive generators.
    pub fn restrict_to(&self, small: Signature) -> Result<MatrixRep<S>> {
        if small.p > self.sig.p || small.q > self.sig.q {
            return Err(Error::NotEmbeddable { big: self.sig, small });
        }
        let generators = (0..small.p)
            .chain(self.sig.p..self.sig.p + small.q)
            .map(|i| self.generators[i].clone())
            .collect();
        Ok(MatrixRep {
            sig: small,
            dim: self.dim,
            generators,
        })
    }
}

/// Scalars with a canonical faithful representation construction.
pub trait RepScalar: Scalar {
    fn faithful_rep(sig: Signature) -> Result<MatrixRep<Self>>;
}

impl RepScalar for Rational {
    fn faithful_rep(sig: Signature) -> Result<MatrixRep<Self>> {
        build_rep(sig)
    }
}

impl RepScalar for Gaussian {
    fn faithful_rep(sig: Signature) -> Result<MatrixRep<Self>> {
        build_complex_rep(sig)
    }
}

fn check_rep_bound(sig: Signature) -> Result<()> {
    if sig.n() > MAX_REP_GENERATORS {
        Err(Error::BoundExceeded {
            what: "p+q for build_rep",
            value: sig.n(),
            bound: MAX_REP_GENERATORS,
        })
    } else {
        Ok(())
    }
}

fn m2<S: Scalar>(rows: [[i64; 2]; 2]) -> SparseMatrix<S> {
    SparseMatrix::from_ints(&[&rows[0], &rows[1]])
}

fn sigma_z<S: Scalar>() -> SparseMatrix<S> {
    m2([[1, 0], [0, -1]])
}

fn sigma_x<S: Scalar>() -> SparseMatrix<S> {
    m2([[0, 1], [1, 0]])
}

/// Rotation by 90°, squares to `−I`.
fn rot<S: Scalar>() -> SparseMatrix<S> {
    m2([[0, -1], [1, 0]])
}

/// Faithful real representation of `C^{p,q}`, irreducible when the algebra is
/// simple.
pub fn build_rep(sig: Signature) -> Result<MatrixRep<Rational>> {
    check_rep_bound(sig)?;
    Ok(build_real(sig))
}

fn build_real(sig: Signature) -> MatrixRep<Rational> {
    match (sig.p, sig.q) {
        (0, 0) => MatrixRep {
            sig,
            dim: 1,
            generators: Vec::new(),
        },
        (1, 0) => MatrixRep {
            sig,
            dim: 2,
            generators: vec![rot()],
        },
        (0, 1) => MatrixRep {
            sig,
            dim: 2,
            generators: vec![sigma_z()],
        },
        (p, q) if p >= 1 && q >= 1 => double(&build_real(Signature::new(p - 1, q - 1))),
        (p, 0) if p <= 3 => quaternionic(&build_real(Signature::new(0, p - 2))),
        (p, 0) => shift_positive_to_negative(&build_real(Signature::new(p - 4, 4))),
        (0, q) => tensor_c02(&build_real(Signature::new(q - 2, 0))),
        _ => unreachable!(),
    }
}

/// `C^{p,q} → C^{p+1,q+1}`: old generators `γ ⊗ σ_z`, new negative `I ⊗ J`,
/// new positive `I ⊗ σ_x`.
fn double<S: Scalar>(rep: &MatrixRep<S>) -> MatrixRep<S> {
    let Signature { p, q } = rep.sig;
    let id = SparseMatrix::identity(rep.dim);
    let sz = sigma_z();
    let mut generators: Vec<SparseMatrix<S>> = rep.generators[..p].iter().map(|g| g.kron(&sz)).collect();
    generators.push(id.kron(&rot()));
    generators.extend(rep.generators[p..].iter().map(|g| g.kron(&sz)));
    generators.push(id.kron(&sigma_x()));
    debug_assert_eq!(generators.len(), p + q + 2);
    MatrixRep {
        sig: Signature::new(p + 1, q + 1),
        dim: rep.dim * 2,
        generators,
    }
}

/// `C^{0,m} → C^{m+2,0}` through `f ↦ f ⊗ ij`, then `1 ⊗ i`, `1 ⊗ j`, with
/// `H` acting on `R⁴`.
fn quaternionic(rep: &MatrixRep<Rational>) -> MatrixRep<Rational> {
    let m = rep.sig.q;
    let qi = rot::<Rational>().kron(&sigma_z());
    let qj = SparseMatrix::<Rational>::identity(2).kron(&rot());
    let qk = &qi * &qj;
    let id = SparseMatrix::identity(rep.dim);
    let mut generators: Vec<_> = rep.generators.iter().map(|f| f.kron(&qk)).collect();
    generators.push(id.kron(&qi));
    generators.push(id.kron(&qj));
    MatrixRep {
        sig: Signature::new(m + 2, 0),
        dim: rep.dim * 4,
        generators,
    }
}

/// `C^{m,0} → C^{0,m+2}` through `t ↦ t ⊗ e₁e₂`, `v ↦ 1 ⊗ v`.
fn tensor_c02<S: Scalar>(rep: &MatrixRep<S>) -> MatrixRep<S> {
    let m = rep.sig.p;
    let v1 = sigma_z::<S>();
    let v2 = sigma_x::<S>();
    let v12 = &v1 * &v2;
    let id = SparseMatrix::identity(rep.dim);
    let mut generators: Vec<_> = rep.generators.iter().map(|t| t.kron(&v12)).collect();
    generators.push(id.kron(&v1));
    generators.push(id.kron(&v2));
    MatrixRep {
        sig: Signature::new(0, m + 2),
        dim: rep.dim * 2,
        generators,
    }
}

/// `C^{p,q} → C^{p+4,q−4}` on the same space: the first four positive
/// generators `f_i` become `f_i ω₄` with `ω₄ = f₁f₂f₃f₄`.
fn shift_positive_to_negative<S: Scalar>(rep: &MatrixRep<S>) -> MatrixRep<S> {
    let Signature { p, q } = rep.sig;
    assert!(q >= 4);
    let four = &rep.generators[p..p + 4];
    let w4 = four.iter().skip(1).fold(four[0].clone(), |acc, f| &acc * f);
    let mut generators: Vec<_> = rep.generators[..p].to_vec();
    generators.extend(four.iter().map(|f| f * &w4));
    generators.extend(rep.generators[p + 4..].iter().cloned());
    MatrixRep {
        sig: Signature::new(p + 4, q - 4),
        dim: rep.dim,
        generators,
    }
}

/// Faithful complex representation of `C^{p,q} ⊗ C`, irreducible when
/// `p+q` is even.
pub fn build_complex_rep(sig: Signature) -> Result<MatrixRep<Gaussian>> {
    check_rep_bound(sig)?;
    let n = sig.n();
    let mut gammas: Vec<SparseMatrix<Gaussian>>;
    let mut dim;
    if n % 2 == 0 {
        gammas = Vec::new();
        dim = 1;
    } else {
        gammas = vec![sigma_z()];
        dim = 2;
    }
    let i = Gaussian::imaginary_unit().expect("Gaussian rationals contain i");
    let sigma_y = m2::<Gaussian>([[0, -1], [1, 0]]).scale(&-i.clone());
    while gammas.len() < n {
        let id = SparseMatrix::identity(dim);
        let sz = sigma_z();
        gammas = gammas.iter().map(|g| g.kron(&sz)).collect();
        gammas.push(id.kron(&sigma_x()));
        gammas.push(id.kron(&sigma_y));
        dim *= 2;
    }
    for g in gammas.iter_mut().take(sig.p) {
        *g = g.scale(&i);
    }
    Ok(MatrixRep {
        sig,
        dim,
        generators: gammas,
    })
}

/// Matrices of `rep` on the invariant subspace spanned by `basis`, written in
/// that basis.
fn restrict_to_subspace<S: Scalar>(rep: &MatrixRep<S>, basis: &Nullspace<S>) -> MatrixRep<S> {
    let d = basis.dim();
    let position: HashMap<usize, usize> = basis.free.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let generators = rep
        .generators
        .iter()
        .map(|g| {
            let columns = g.transpose();
            let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); d];
            for (l, v) in basis.basis.iter().enumerate() {
                // coordinate k of g·v is its entry at free[k]
                for (c, x) in v {
                    for (r, a) in columns.row(*c) {
                        if let Some(&k) = position.get(r) {
                            rows[k].push((l, a.clone() * x.clone()));
                        }
                    }
                }
            }
            SparseMatrix::from_rows(d, d, rows)
        })
        .collect();
    MatrixRep {
        sig: rep.sig,
        dim: d,
        generators,
    }
}

/// Irreducible modules of `C^{p,q}` over `S`, one per simple factor. For
/// two-factor algebras the faithful representation is split by the
/// eigenspaces of a central involution built from the volume element; the
/// `+1` eigenspace comes first.
pub fn irreducible_modules<S: RepScalar>(sig: Signature) -> Result<Vec<MatrixRep<S>>> {
    let rep = S::faithful_rep(sig)?;
    let desc = classify(sig, S::FIELD);
    if desc.factors == 1 {
        return Ok(vec![rep]);
    }
    let mut z = rep.volume();
    let id = SparseMatrix::<S>::identity(rep.dim);
    if &z * &z != id {
        let i = S::imaginary_unit().expect("a real two-factor volume element squares to +1");
        z = z.scale(&i);
    }
    debug_assert!(&z * &z == id);
    let modules = [S::one(), -S::one()]
        .into_iter()
        .map(|lambda| {
            let shifted = &z - &id.scale(&lambda);
            let mut system = LinearSystem::new(rep.dim);
            for r in 0..rep.dim {
                system.add_equation(shifted.row(r).to_vec());
            }
            restrict_to_subspace(&rep, &system.nullspace())
        })
        .collect();
    Ok(modules)
}

/// `dim Hom(S, T)` of intertwiners `X` with `T_g X = X S_g` for every pair
/// of generator matrices, found as the nullity of the linear system in the
/// entries of `X`.
pub fn intertwiner_dim<S: Scalar>(source: &MatrixRep<S>, target: &MatrixRep<S>) -> Result<usize> {
    if source.sig != target.sig {
        return Err(Error::SignatureMismatch {
            left: source.sig,
            right: target.sig,
        });
    }
    let ds = source.dim;
    let dt = target.dim;
    let mut system = LinearSystem::<S>::new(dt * ds);
    for (sg, tg) in source.generators.iter().zip(&target.generators) {
        let sg_cols = sg.transpose();
        for r in 0..dt {
            for c in 0..ds {
                let mut eq: Vec<(usize, S)> = tg.row(r).iter().map(|(k, v)| (k * ds + c, v.clone())).collect();
                eq.extend(sg_cols.row(c).iter().map(|(k, v)| (r * ds + k, -v.clone())));
                system.add_equation(eq);
            }
        }
    }
    Ok(system.nullity())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCheck {
    pub dim: usize,
    pub expected_dim: usize,
    pub span: usize,
    pub expected_span: usize,
    pub endomorphism_dim: usize,
    pub expected_endomorphism_dim: usize,
}

impl ComponentCheck {
    pub fn passed(&self) -> bool {
        self.dim == self.expected_dim
            && self.span == self.expected_span
            && self.endomorphism_dim == self.expected_endomorphism_dim
    }
}

/// Evidence that the explicit representation realizes [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub sig: Signature,
    pub descriptor: AlgebraDescriptor,
    pub relations_ok: bool,
    pub faithful_span: usize,
    pub components: Vec<ComponentCheck>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.relations_ok
            && self.faithful_span == self.sig.dim()
            && self.components.len() == self.descriptor.factors
            && self.components.iter().all(ComponentCheck::passed)
    }
}

pub fn classification_report(sig: Signature, field: ScalarField) -> Result<ClassificationReport> {
    if sig.n() > MAX_VERIFY_GENERATORS {
        return Err(Error::BoundExceeded {
            what: "p+q for verify_classification",
            value: sig.n(),
            bound: MAX_VERIFY_GENERATORS,
        });
    }
    match field {
        ScalarField::Real => classification_report_over::<Rational>(sig),
        ScalarField::Complex => classification_report_over::<Gaussian>(sig),
    }
}

fn classification_report_over<S: RepScalar>(sig: Signature) -> Result<ClassificationReport> {
    let descriptor = classify(sig, S::FIELD);
    let rep = S::faithful_rep(sig)?;
    let simple_dim = descriptor.dim() / descriptor.factors;
    let components = irreducible_modules::<S>(sig)?
        .iter()
        .map(|m| {
            Ok(ComponentCheck {
                dim: m.dim,
                expected_dim: descriptor.irrep_dim(),
                span: m.span_dim(),
                expected_span: simple_dim,
                endomorphism_dim: intertwiner_dim(m, m)?,
                expected_endomorphism_dim: descriptor.endomorphism_dim(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        sig,
        descriptor,
        relations_ok: rep.check_relations(),
        faithful_span: rep.span_dim(),
        components,
    })
}

/// True iff the explicit representation spans an algebra of dimension
/// `2^(p+q)` and splits into irreducibles of exactly the shape predicted by
/// [`classify`].
pub fn verify_classification(sig: Signature, field: ScalarField) -> Result<bool> {
    Ok(classification_report(sig, field)?.passed())
}
