//! K-groups of a point built from Clifford module categories.
//!
//! Everything here is a kernel or cokernel of a restriction map
//! `K₀(C^{big}) → K₀(C^{small})`. Indexing is cohomological throughout:
//! `point_k(i, ·)` is `K^{-i}(pt)`, which some sources write `K_i`.

use std::fmt;

use crate::abgroup::{cokernel, kernel, FGAbelianGroup, GroupHom, IntMatrix, MapSlot, Sequence, Slot};
use crate::blade::Signature;
use crate::error::{Error, Result};
use crate::rep::{restriction_multiplicities, MAX_RESTRICTION_GENERATORS};
use crate::scalar::ScalarField;
use crate::structure::{classify, AlgebraDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    KO,
    KU,
}

impl Theory {
    pub fn field(self) -> ScalarField {
        match self {
            Theory::KO => ScalarField::Real,
            Theory::KU => ScalarField::Complex,
        }
    }

    /// The classical Bott period, used only to label and to wrap negative
    /// degrees; the point groups themselves never assume it.
    pub fn period(self) -> usize {
        match self {
            Theory::KO => 8,
            Theory::KU => 2,
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::KO => "KO",
            Theory::KU => "KU",
        })
    }
}

/// Restriction of modules from `C^{big}` to `C^{small}` along the inclusion
/// of the first `small.p` negative and first `small.q` positive generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ForgetfulFunctor {
    big: Signature,
    small: Signature,
    field: ScalarField,
}

impl ForgetfulFunctor {
    pub fn new(big: Signature, small: Signature, field: ScalarField) -> Result<Self> {
        if small.p > big.p || small.q > big.q {
            return Err(Error::NotEmbeddable { big, small });
        }
        Ok(ForgetfulFunctor { big, small, field })
    }

    pub fn big(&self) -> Signature {
        self.big
    }

    pub fn small(&self) -> Signature {
        self.small
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    /// Both algebras tensored with `M_2`, i.e. `(p+1, q+1)` on each side.
    pub fn doubled(&self) -> Self {
        let up = |s: Signature| Signature::new(s.p + 1, s.q + 1);
        ForgetfulFunctor {
            big: up(self.big),
            small: up(self.small),
            field: self.field,
        }
    }
}

impl fmt::Display for ForgetfulFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} over {}", self.big, self.small, self.field)
    }
}

/// Kernel and cokernel of the `K₀` map of a forgetful functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeK {
    pub functor: ForgetfulFunctor,
    pub map: GroupHom,
    pub cokernel: FGAbelianGroup,
    pub kernel: FGAbelianGroup,
}

impl RelativeK {
    pub fn pair(&self) -> (FGAbelianGroup, FGAbelianGroup) {
        (self.cokernel.clone(), self.kernel.clone())
    }
}

/// A group together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroupResult {
    pub group: FGAbelianGroup,
    /// `None` when the group is the base case `Z` and no map was involved.
    pub derivation: Option<RelativeK>,
}

pub fn k0(sig: Signature, field: ScalarField) -> FGAbelianGroup {
    FGAbelianGroup::free(classify(sig, field).factors)
}

pub fn forgetful_k_map(f: &ForgetfulFunctor) -> Result<GroupHom> {
    let r = restriction_multiplicities(f.big, f.small, f.field)?;
    let m = IntMatrix::from_rows(r.rows(), r.cols(), &r.to_i64_rows());
    GroupHom::new(k0(f.big, f.field), k0(f.small, f.field), m)
}

pub fn relative_k(f: &ForgetfulFunctor) -> Result<RelativeK> {
    let map = forgetful_k_map(f)?;
    Ok(RelativeK {
        functor: *f,
        cokernel: cokernel(&map),
        kernel: kernel(&map),
        map,
    })
}

/// `#{0 < s ≤ n : s ≡ 0, 1, 2, 4 mod 8}`.
pub fn adams_f(n: usize) -> usize {
    (1..=n).filter(|s| matches!(s % 8, 0 | 1 | 2 | 4)).count()
}

/// Reduced `KO` or `KU` of `RPⁿ` as the cokernel of
/// `K₀(C^{n,0}) → K₀(C^{0,0})`.
pub fn reduced_k_rpn(n: usize, theory: Theory) -> Result<KGroupResult> {
    if n == 0 {
        return Err(Error::Shape("RP^n needs n ≥ 1".into()));
    }
    let f = ForgetfulFunctor::new(Signature::new(n, 0), Signature::new(0, 0), theory.field())?;
    let rel = relative_k(&f)?;
    Ok(KGroupResult {
        group: rel.cokernel.clone(),
        derivation: Some(rel),
    })
}

/// `K^{-i}(pt)`: `Z` for `i = 0`, otherwise the cokernel of
/// `K₀(C^{i,0}) → K₀(C^{i-1,0})`.
pub fn point_k(i: usize, theory: Theory) -> Result<KGroupResult> {
    if i == 0 {
        return Ok(KGroupResult {
            group: FGAbelianGroup::free(1),
            derivation: None,
        });
    }
    let f = ForgetfulFunctor::new(Signature::new(i, 0), Signature::new(i - 1, 0), theory.field())?;
    let rel = relative_k(&f)?;
    Ok(KGroupResult {
        group: rel.cokernel.clone(),
        derivation: Some(rel),
    })
}

/// One comparison of the relative groups of `C^{0,n+r+1} → C^{0,n+r}` and of
/// the same functor eight generators higher.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomComparison {
    pub r: usize,
    /// `(n + r) mod 8`, the residue both sides share.
    pub residue: usize,
    pub low: (FGAbelianGroup, FGAbelianGroup),
    pub high: (FGAbelianGroup, FGAbelianGroup),
}

impl ThomComparison {
    pub fn matches(&self) -> bool {
        self.low == self.high
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomReport {
    pub n: usize,
    pub r_max: usize,
    pub comparisons: Vec<ThomComparison>,
}

impl ThomReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(ThomComparison::matches)
    }
}

pub fn thom_report(n: usize, r_max: usize) -> Result<ThomReport> {
    let top = n + r_max + 9;
    if top > MAX_RESTRICTION_GENERATORS {
        return Err(Error::BoundExceeded {
            what: "n + r_max + 9 for thom_stability",
            value: top,
            bound: MAX_RESTRICTION_GENERATORS,
        });
    }
    let pair_at = |m: usize| -> Result<(FGAbelianGroup, FGAbelianGroup)> {
        let f = ForgetfulFunctor::new(Signature::new(0, m + 1), Signature::new(0, m), ScalarField::Real)?;
        Ok(relative_k(&f)?.pair())
    };
    let comparisons = (0..=r_max)
        .map(|r| {
            Ok(ThomComparison {
                r,
                residue: (n + r) % 8,
                low: pair_at(n + r)?,
                high: pair_at(n + r + 8)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ThomReport { n, r_max, comparisons })
}

/// True iff for every `r ≤ r_max` the (cokernel, kernel) pair of
/// `C^{0,n+r+1} → C^{0,n+r}` equals that of `C^{0,n+r+9} → C^{0,n+r+8}`.
pub fn thom_stability(n: usize, r_max: usize) -> Result<bool> {
    Ok(thom_report(n, r_max)?.passed())
}

/// `K^{-j}` for possibly negative `j`; negative degrees are wrapped by the
/// period of the theory.
fn point_group(j: i64, theory: Theory) -> Result<FGAbelianGroup> {
    let i = if j >= 0 { j } else { j.rem_euclid(theory.period() as i64) };
    Ok(point_k(i as usize, theory)?.group)
}

fn template(terms: Vec<FGAbelianGroup>, labels: Vec<String>, map_labels: Vec<String>) -> Result<Sequence> {
    let maps = vec![MapSlot::Unknown; terms.len() - 1];
    let checks = (1..terms.len() - 1).collect();
    Sequence::new(terms.into_iter().map(Slot::Known).collect(), maps)?
        .with_labels(labels, map_labels)?
        .with_checks(checks)
}

/// `KU^{-i} → KO^{-i} → KO^{-i-1} → KU^{-i+1}` at a point, `i` taken mod 8,
/// with every map unknown and exactness required at the two inner terms.
pub fn bott_sequence_instance(i: usize) -> Result<Sequence> {
    let i = (i % 8) as i64;
    let terms = vec![
        point_group(i, Theory::KU)?,
        point_group(i, Theory::KO)?,
        point_group(i + 1, Theory::KO)?,
        point_group(i - 1, Theory::KU)?,
    ];
    let labels = vec![
        format!("KU^-{i}"),
        format!("KO^-{i}"),
        format!("KO^-{}", i + 1),
        format!("KU^{}", 1 - i),
    ];
    template(terms, labels, vec!["r".into(), "eta".into(), "c".into()])
}

/// The sequence `KR(X) → KO_G(X) → KO_G(X × R) → KR_{-1}(X)` for
/// `X = Y × S⁰`, `Y` a point, shifted by `degree`. With the free involution
/// `KR(X) = KU(Y)`, `KO_G(X) = KO(Y)` and `KO_G(X × R) = KO^{-1}(Y)`, so the
/// underlying groups are those of [`bott_sequence_instance`].
pub fn sequence_e_instance(degree: usize) -> Result<Sequence> {
    let bott = bott_sequence_instance(degree)?;
    let d = degree % 8;
    let labels = vec![
        format!("KR^-{d}(X)"),
        format!("KO_G^-{d}(X)"),
        format!("KO_G^-{d}(X×R)"),
        format!("KR^-{}(X)", d + 1),
    ];
    let map_labels = bott.map_labels().to_vec();
    bott.with_labels(labels, map_labels)
}

pub fn sequence_e_point_instance() -> Result<Sequence> {
    sequence_e_instance(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub checks: Vec<SubCheck>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The `K₀` map between Morita-equivalent algebras: each simple module goes
/// to the corresponding simple module.
fn morita_identification(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> Option<IntMatrix> {
    a.morita_equivalent(b).then(|| IntMatrix::identity(a.factors))
}

/// Fiber-level checks for a real line bundle `L` over a point: twisted K of
/// `C⁻(L)` is `KU`, and the restriction `C⁻(L) → R` matches
/// `C⁺(L + 2) → C⁺(2)` under Morita equivalence.
pub fn fiber_twist_check() -> Result<FiberReport> {
    let real = ScalarField::Real;
    let minus_l = classify(Signature::new(1, 0), real);
    let point = classify(Signature::new(0, 0), real);
    let plus_l2 = classify(Signature::new(0, 3), real);
    let plus_2 = classify(Signature::new(0, 2), real);
    let mut checks = Vec::new();

    let k = k0(Signature::new(1, 0), real);
    checks.push(SubCheck {
        name: "(a) fiber algebra is C",
        passed: minus_l.short_notation() == "C" && k == FGAbelianGroup::free(1),
        detail: format!("C^{{1,0}} ≅ {minus_l}, K₀ = {k}"),
    });
    checks.push(SubCheck {
        name: "(b) source Morita equivalence",
        passed: plus_l2.morita_equivalent(&minus_l),
        detail: format!("C^{{0,3}} ≅ {} vs C^{{1,0}} ≅ {}", plus_l2.matrix_notation(), minus_l.matrix_notation()),
    });
    checks.push(SubCheck {
        name: "(c) target Morita equivalence",
        passed: plus_2.morita_equivalent(&point),
        detail: format!("C^{{0,2}} ≅ {} vs C^{{0,0}} ≅ {}", plus_2.matrix_notation(), point.matrix_notation()),
    });

    let direct = forgetful_k_map(&ForgetfulFunctor::new(Signature::new(1, 0), Signature::new(0, 0), real)?)?;
    let shifted = forgetful_k_map(&ForgetfulFunctor::new(Signature::new(0, 3), Signature::new(0, 2), real)?)?;
    let (d_passed, detail) = match (
        morita_identification(&minus_l, &plus_l2),
        morita_identification(&plus_2, &point),
    ) {
        (Some(into_source), Some(out_of_target)) => {
            let composite = &(&out_of_target * shifted.matrix()) * &into_source;
            let two = IntMatrix::from_i64(&[&[2]]);
            (
                composite == *direct.matrix() && composite == two,
                format!("direct {}, through C^{{0,3}} → C^{{0,2}} {}", direct.matrix(), composite),
            )
        }
        _ => (false, "Morita identifications unavailable".to_string()),
    };
    checks.push(SubCheck {
        name: "(d) K₀ square commutes",
        passed: d_passed,
        detail,
    });
    Ok(FiberReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{solve_exact, DEFAULT_SEARCH_CEILING};

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q)
    }

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    fn zn(d: u64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(d)
    }

    #[test]
    fn k0_examples() {
        assert_eq!(k0(sig(0, 0), ScalarField::Real), z());
        assert_eq!(k0(sig(3, 0), ScalarField::Real), FGAbelianGroup::free(2));
        assert_eq!(k0(sig(2, 0), ScalarField::Real), z());
        assert_eq!(k0(sig(1, 0), ScalarField::Complex), FGAbelianGroup::free(2));
    }

    #[test]
    fn forgetful_map_examples() {
        let f = ForgetfulFunctor::new(sig(1, 0), sig(0, 0), ScalarField::Real).unwrap();
        assert_eq!(forgetful_k_map(&f).unwrap().matrix(), &IntMatrix::from_i64(&[&[2]]));
        let f = ForgetfulFunctor::new(sig(3, 0), sig(0, 0), ScalarField::Real).unwrap();
        assert_eq!(forgetful_k_map(&f).unwrap().matrix(), &IntMatrix::from_i64(&[&[4, 4]]));
        let f = ForgetfulFunctor::new(sig(3, 0), sig(3, 0), ScalarField::Real).unwrap();
        assert_eq!(forgetful_k_map(&f).unwrap().matrix(), &IntMatrix::identity(2));
        assert!(ForgetfulFunctor::new(sig(0, 0), sig(1, 0), ScalarField::Real).is_err());
    }

    #[test]
    fn relative_examples() {
        let rel = |b, s| relative_k(&ForgetfulFunctor::new(b, s, ScalarField::Real).unwrap()).unwrap().pair();
        assert_eq!(rel(sig(1, 0), sig(0, 0)), (zn(2), FGAbelianGroup::trivial()));
        assert_eq!(rel(sig(3, 0), sig(0, 0)), (zn(4), z()));
        assert_eq!(rel(sig(2, 1), sig(2, 1)), (FGAbelianGroup::trivial(), FGAbelianGroup::trivial()));
    }

    #[test]
    fn adams_counts() {
        assert_eq!(adams_f(0), 0);
        assert_eq!(adams_f(4), 3);
        assert_eq!(adams_f(9), 5);
    }

    #[test]
    fn rpn_examples() {
        assert_eq!(reduced_k_rpn(1, Theory::KO).unwrap().group, zn(2));
        assert_eq!(reduced_k_rpn(4, Theory::KO).unwrap().group, zn(8));
        assert_eq!(reduced_k_rpn(3, Theory::KU).unwrap().group, zn(2));
        assert!(reduced_k_rpn(0, Theory::KO).is_err());
    }

    #[test]
    fn point_examples() {
        assert_eq!(point_k(1, Theory::KO).unwrap().group, zn(2));
        assert_eq!(point_k(4, Theory::KO).unwrap().group, z());
        assert_eq!(point_k(1, Theory::KU).unwrap().group, FGAbelianGroup::trivial());
        assert!(point_k(0, Theory::KO).unwrap().derivation.is_none());
    }

    #[test]
    fn negative_degrees_wrap() {
        assert_eq!(point_group(-1, Theory::KU).unwrap(), point_k(1, Theory::KU).unwrap().group);
        assert_eq!(point_group(3, Theory::KO).unwrap(), point_k(3, Theory::KO).unwrap().group);
        assert_eq!(point_group(9, Theory::KO).unwrap(), point_k(9, Theory::KO).unwrap().group);
    }

    #[test]
    fn thom_small() {
        assert!(thom_stability(0, 0).unwrap());
        assert!(thom_stability(1, 0).unwrap());
        assert!(matches!(thom_stability(5, 3), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn bott_zero_solutions() {
        let seq = bott_sequence_instance(0).unwrap();
        let sols = solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING).unwrap();
        let got: Vec<_> = sols
            .iter()
            .map(|a| a.maps.iter().map(|m| m.matrix().to_string()).collect::<Vec<_>>())
            .collect();
        assert_eq!(got.len(), 2, "{got:?}");
        for g in &got {
            assert!(g[0] == "[[2]]" || g[0] == "[[-2]]");
            assert_eq!(g[1], "[[1]]");
        }
    }

    #[test]
    fn sequence_e_terms() {
        let seq = sequence_e_point_instance().unwrap();
        let terms: Vec<_> = seq
            .terms()
            .iter()
            .map(|t| match t {
                Slot::Known(g) => g.to_string(),
                Slot::Unknown(_) => "?".into(),
            })
            .collect();
        assert_eq!(terms[..3], ["Z", "Z", "Z/2"]);
        assert_eq!(seq.term_labels()[0], "KR^-0(X)");
    }

    #[test]
    fn fiber_checks() {
        let r = fiber_twist_check().unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn morita_invariance_small() {
        for field in [ScalarField::Real, ScalarField::Complex] {
            let f = ForgetfulFunctor::new(sig(2, 0), sig(1, 0), field).unwrap();
            assert_eq!(relative_k(&f).unwrap().pair(), relative_k(&f.doubled()).unwrap().pair());
        }
    }
}
