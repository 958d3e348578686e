//! Finite sequences of groups and maps, exactness checks and a bounded
//! search over unknown terms and maps.

use num::{BigInt, BigUint, One, ToPrimitive, Zero};

use super::{cokernel, homology, image, FGAbelianGroup, GroupHom, IntMatrix};
use crate::error::{Error, Result};

/// Ceiling on the number of candidate assignments [`solve_exact`] will visit.
pub const DEFAULT_SEARCH_CEILING: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Known(FGAbelianGroup),
    /// Drawn from the listed candidates, in order.
    Unknown(Vec<FGAbelianGroup>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSlot {
    /// Columns are images of source generators in target coordinates.
    Known(IntMatrix),
    Unknown,
}

/// `terms[0] → terms[1] → …` with `maps[i] : terms[i] → terms[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    terms: Vec<Slot>,
    maps: Vec<MapSlot>,
    term_labels: Vec<String>,
    map_labels: Vec<String>,
    checks: Vec<usize>,
}

impl Sequence {
    /// Labels default to `T0, T1, …` and `f0, f1, …`; every interior
    /// position is checked until [`with_checks`](Self::with_checks) says
    /// otherwise.
    pub fn new(terms: Vec<Slot>, maps: Vec<MapSlot>) -> Result<Self> {
        if terms.len() != maps.len() + 1 {
            return Err(Error::Shape(format!(
                "{} terms need {} maps, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                maps.len()
            )));
        }
        let checks = (1..terms.len() - 1).collect();
        Ok(Sequence {
            term_labels: (0..terms.len()).map(|i| format!("T{i}")).collect(),
            map_labels: (0..maps.len()).map(|i| format!("f{i}")).collect(),
            terms,
            maps,
            checks,
        })
    }

    pub fn with_labels(mut self, terms: Vec<String>, maps: Vec<String>) -> Result<Self> {
        if terms.len() != self.terms.len() || maps.len() != self.maps.len() {
            return Err(Error::Shape("label count does not match the sequence".into()));
        }
        self.term_labels = terms;
        self.map_labels = maps;
        Ok(self)
    }

    pub fn with_checks(mut self, checks: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = checks.iter().find(|&&c| c == 0 || c + 1 >= self.terms.len()) {
            return Err(Error::InvalidPosition(bad));
        }
        self.checks = checks;
        Ok(self)
    }

    pub fn terms(&self) -> &[Slot] {
        &self.terms
    }

    pub fn maps(&self) -> &[MapSlot] {
        &self.maps
    }

    pub fn term_labels(&self) -> &[String] {
        &self.term_labels
    }

    pub fn map_labels(&self) -> &[String] {
        &self.map_labels
    }

    pub fn checks(&self) -> &[usize] {
        &self.checks
    }

    pub fn is_fully_bound(&self) -> bool {
        self.terms.iter().all(|t| matches!(t, Slot::Known(_)))
            && self.maps.iter().all(|m| matches!(m, MapSlot::Known(_)))
    }

    /// The concrete sequence, if no placeholders remain.
    pub fn bind(&self) -> Result<Assignment> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, label) in self.terms.iter().zip(&self.term_labels) {
            match t {
                Slot::Known(g) => terms.push(g.clone()),
                Slot::Unknown(_) => return Err(Error::Unbound(label.clone())),
            }
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (i, (m, label)) in self.maps.iter().zip(&self.map_labels).enumerate() {
            match m {
                MapSlot::Known(matrix) => maps.push(bind_map(&terms[i], &terms[i + 1], matrix)?),
                MapSlot::Unknown => return Err(Error::Unbound(label.clone())),
            }
        }
        Ok(Assignment { terms, maps })
    }
}

/// An all-zero matrix of any shape stands for the zero map.
fn bind_map(source: &FGAbelianGroup, target: &FGAbelianGroup, matrix: &IntMatrix) -> Result<GroupHom> {
    if matrix.is_zero() && matrix.shape() != (target.ngens(), source.ngens()) {
        return Ok(GroupHom::zero(source.clone(), target.clone()));
    }
    GroupHom::new(source.clone(), target.clone(), matrix.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub terms: Vec<FGAbelianGroup>,
    pub maps: Vec<GroupHom>,
}

impl Assignment {
    pub fn report_at(&self, at: usize) -> Result<ExactnessReport> {
        if at == 0 || at + 1 >= self.terms.len() {
            return Err(Error::InvalidPosition(at));
        }
        let incoming = &self.maps[at - 1];
        let out = &self.maps[at];
        let composite_zero = incoming.then(out)?.is_zero();
        let defect = if composite_zero {
            Some(homology(incoming, out)?)
        } else {
            None
        };
        Ok(ExactnessReport {
            position: at,
            composite_zero,
            image_index: cokernel(incoming).order(),
            kernel_index: image(out).order(),
            defect,
        })
    }

    pub fn is_exact_at(&self, at: usize) -> Result<bool> {
        Ok(self.report_at(at)?.exact())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub position: usize,
    /// Outgoing map after incoming map is zero, i.e. image ⊆ kernel.
    pub composite_zero: bool,
    /// Index of the incoming image in the term; `None` when infinite.
    pub image_index: Option<BigInt>,
    /// Index of the outgoing kernel in the term; `None` when infinite.
    pub kernel_index: Option<BigInt>,
    /// `kernel / image` when the composite vanishes.
    pub defect: Option<FGAbelianGroup>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.defect.as_ref().is_some_and(FGAbelianGroup::is_trivial)
    }
}

pub fn exactness_report(seq: &Sequence, at: usize) -> Result<ExactnessReport> {
    seq.bind()?.report_at(at)
}

/// `image(map in) = kernel(map out)` at term `at`.
pub fn check_exact(seq: &Sequence, at: usize) -> Result<bool> {
    seq.bind()?.is_exact_at(at)
}

/// Candidate values for one matrix entry. Free target coordinates range over
/// `[-bound, bound]`; torsion coordinates are reduced residues, and entries in
/// columns of torsion source generators must respect the source order.
fn entry_candidates(
    source: &FGAbelianGroup,
    target: &FGAbelianGroup,
    row: usize,
    col: usize,
    bound: i64,
) -> Vec<BigInt> {
    match (target.generator_order(row), source.generator_order(col)) {
        (None, None) => (-bound..=bound).map(BigInt::from).collect(),
        (None, Some(_)) => vec![BigInt::zero()],
        (Some(e), d) => {
            let e = e.to_u64().expect("torsion factor fits in u64");
            (0..e)
                .map(BigInt::from)
                .filter(|x| d.is_none_or(|d| (x * d) % BigInt::from(e) == BigInt::zero()))
                .collect()
        }
    }
}

/// All well-defined homs with bounded free coordinates, in row-major
/// odometer order.
fn enumerate_homs(source: &FGAbelianGroup, target: &FGAbelianGroup, bound: i64) -> Vec<GroupHom> {
    let (rows, cols) = (target.ngens(), source.ngens());
    let lists: Vec<Vec<BigInt>> = (0..rows * cols)
        .map(|k| entry_candidates(source, target, k / cols, k % cols, bound))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; lists.len()];
    loop {
        let mut m = IntMatrix::zeros(rows, cols);
        for (k, &i) in idx.iter().enumerate() {
            m[(k / cols, k % cols)] = lists[k][i].clone();
        }
        out.push(GroupHom::new(source.clone(), target.clone(), m).expect("candidates are well-defined"));
        let mut k = lists.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn hom_count(source: &FGAbelianGroup, target: &FGAbelianGroup, bound: i64) -> BigUint {
    let (rows, cols) = (target.ngens(), source.ngens());
    (0..rows * cols)
        .map(|k| BigUint::from(entry_candidates(source, target, k / cols, k % cols, bound).len()))
        .product()
}

fn term_choices(seq: &Sequence) -> Vec<Vec<FGAbelianGroup>> {
    seq.terms
        .iter()
        .map(|t| match t {
            Slot::Known(g) => vec![g.clone()],
            Slot::Unknown(c) => c.clone(),
        })
        .collect()
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// Every binding of the placeholders that makes all checked positions
/// exact. Unknown terms range over their candidates, unknown maps over
/// well-defined homs with free coordinates in `[-bound, bound]`. Results
/// come in a fixed order: term choices lexicographically, then maps by
/// position, each map's entries row-major from most negative.
pub fn solve_exact(seq: &Sequence, bound: u64, ceiling: u64) -> Result<Vec<Assignment>> {
    let bound = i64::try_from(bound).map_err(|_| Error::Shape(format!("bound {bound} is too large")))?;
    let combos = cartesian(&term_choices(seq));

    let mut total = BigUint::zero();
    for terms in &combos {
        let mut size = BigUint::one();
        for (i, m) in seq.maps.iter().enumerate() {
            if matches!(m, MapSlot::Unknown) {
                size *= hom_count(&terms[i], &terms[i + 1], bound);
            }
        }
        total += size;
    }
    if total > BigUint::from(ceiling) {
        return Err(Error::SearchTooLarge {
            size: total.to_string(),
            ceiling,
        });
    }

    let mut solutions = Vec::new();
    for terms in combos {
        let mut options: Vec<Vec<GroupHom>> = Vec::with_capacity(seq.maps.len());
        for (i, m) in seq.maps.iter().enumerate() {
            options.push(match m {
                MapSlot::Unknown => enumerate_homs(&terms[i], &terms[i + 1], bound),
                // A fixed matrix that does not fit this term choice rules it out.
                MapSlot::Known(matrix) => bind_map(&terms[i], &terms[i + 1], matrix).into_iter().collect(),
            });
        }
        for maps in cartesian(&options) {
            let candidate = Assignment {
                terms: terms.clone(),
                maps,
            };
            let mut exact = true;
            for &at in &seq.checks {
                if !candidate.is_exact_at(at)? {
                    exact = false;
                    break;
                }
            }
            if exact {
                solutions.push(candidate);
            }
        }
    }
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    fn zn(d: u64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(d)
    }

    fn zero() -> FGAbelianGroup {
        FGAbelianGroup::trivial()
    }

    fn known(rows: &[&[i64]]) -> MapSlot {
        MapSlot::Known(IntMatrix::from_i64(rows))
    }

    fn first_entry(h: &GroupHom) -> i64 {
        h.matrix()[(0, 0)].to_i64().unwrap()
    }

    #[test]
    fn identity_is_exact() {
        let seq = Sequence::new(
            vec![Slot::Known(zero()), Slot::Known(z()), Slot::Known(z()), Slot::Known(zero())],
            vec![
                MapSlot::Known(IntMatrix::zeros(1, 0)),
                known(&[&[1]]),
                MapSlot::Known(IntMatrix::zeros(0, 1)),
            ],
        )
        .unwrap();
        assert!(check_exact(&seq, 1).unwrap());
        assert!(check_exact(&seq, 2).unwrap());
    }

    #[test]
    fn multiplication_by_two_then_reduction() {
        let seq = |k: i64| {
            Sequence::new(
                vec![Slot::Known(z()), Slot::Known(z()), Slot::Known(zn(2)), Slot::Known(zero())],
                vec![known(&[&[k]]), known(&[&[1]]), known(&[&[0]])],
            )
            .unwrap()
        };
        assert!(check_exact(&seq(2), 1).unwrap());
        assert!(check_exact(&seq(2), 2).unwrap());

        let r = exactness_report(&seq(4), 1).unwrap();
        assert!(!r.exact());
        assert!(r.composite_zero);
        assert_eq!(r.image_index, Some(BigInt::from(4)));
        assert_eq!(r.kernel_index, Some(BigInt::from(2)));
        assert_eq!(r.defect, Some(zn(2)));

        // Composite nonzero: image not inside kernel.
        let r = exactness_report(&seq(1), 1).unwrap();
        assert!(!r.composite_zero);
        assert!(!r.exact());
    }

    #[test]
    fn placeholders_and_positions() {
        let seq = Sequence::new(vec![Slot::Known(z()), Slot::Known(z())], vec![MapSlot::Unknown]).unwrap();
        assert!(matches!(seq.bind(), Err(Error::Unbound(_))));
        let seq = Sequence::new(
            vec![Slot::Known(z()), Slot::Known(z()), Slot::Known(z())],
            vec![known(&[&[1]]), known(&[&[0]])],
        )
        .unwrap();
        assert!(matches!(check_exact(&seq, 0), Err(Error::InvalidPosition(0))));
        assert!(matches!(check_exact(&seq, 2), Err(Error::InvalidPosition(2))));
        assert!(seq.clone().with_checks(vec![2]).is_err());
        assert!(Sequence::new(vec![Slot::Known(z())], vec![MapSlot::Unknown]).is_err());
    }

    #[test]
    fn ill_defined_known_map_is_an_error() {
        let seq = Sequence::new(vec![Slot::Known(zn(2)), Slot::Known(z()), Slot::Known(zero())], vec![known(&[&[1]]), MapSlot::Known(IntMatrix::zeros(0, 1))])
            .unwrap();
        assert!(matches!(seq.bind(), Err(Error::IllDefinedHom(_))));
    }

    #[test]
    fn solve_bott_template() {
        let seq = Sequence::new(
            vec![Slot::Known(z()), Slot::Known(z()), Slot::Known(zn(2)), Slot::Known(zero())],
            vec![MapSlot::Unknown, MapSlot::Unknown, MapSlot::Unknown],
        )
        .unwrap();
        let sols = solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING).unwrap();
        let pairs: Vec<(i64, i64)> = sols
            .iter()
            .map(|a| (first_entry(&a.maps[0]), first_entry(&a.maps[1])))
            .collect();
        assert_eq!(pairs, vec![(-2, 1), (2, 1)]);
    }

    #[test]
    fn solve_unknown_term() {
        let seq = Sequence::new(
            vec![
                Slot::Known(zero()),
                Slot::Unknown(vec![zero(), z(), zn(2)]),
                Slot::Known(z()),
                Slot::Known(zero()),
            ],
            vec![MapSlot::Unknown, MapSlot::Unknown, MapSlot::Unknown],
        )
        .unwrap();
        let sols = solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            assert_eq!(s.terms[1], z());
            assert_eq!(first_entry(&s.maps[1]).abs(), 1);
        }
    }

    #[test]
    fn solve_surjections_onto_z2() {
        let seq = Sequence::new(
            vec![Slot::Known(z()), Slot::Known(zn(2)), Slot::Known(zero())],
            vec![MapSlot::Unknown, MapSlot::Unknown],
        )
        .unwrap();
        let sols = solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(first_entry(&sols[0].maps[0]), 1);
    }

    #[test]
    fn ceiling_is_enforced() {
        let z3 = FGAbelianGroup::free(3);
        let seq = Sequence::new(
            vec![Slot::Known(z3.clone()), Slot::Known(z3.clone()), Slot::Known(z3)],
            vec![MapSlot::Unknown, MapSlot::Unknown],
        )
        .unwrap();
        // 5^18 candidates.
        assert!(matches!(
            solve_exact(&seq, 2, DEFAULT_SEARCH_CEILING),
            Err(Error::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn torsion_entry_candidates_respect_orders() {
        // Homs Z/2 → Z/4: 0 and 2 only.
        let c = entry_candidates(&zn(2), &zn(4), 0, 0, 2);
        assert_eq!(c, vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(enumerate_homs(&zn(4), &zn(2), 2).len(), 2);
        assert_eq!(enumerate_homs(&zero(), &z(), 2).len(), 1);
    }
}
