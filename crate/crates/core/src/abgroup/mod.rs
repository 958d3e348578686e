//! Finitely generated abelian groups `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_t` and
//! homomorphisms between them.
//!
//! A group is presented on `r + t` generators (free ones first) with the
//! relation lattice spanned by `dᵢ·e_{r+i}`. Every subquotient computation
//! reduces to [`lattice_quotient`].

mod sequence;
mod snf;

use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use sequence::{
    check_exact, exactness_report, solve_exact, Assignment, ExactnessReport, MapSlot, Sequence, Slot,
    DEFAULT_SEARCH_CEILING,
};
pub use snf::{smith_normal_form, IntMatrix, Snf};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    /// Validating constructor: each factor must be at least 2 and divide
    /// the next.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|d| *d < &BigInt::from(2)) {
            return Err(Error::Shape(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Shape(format!("invariant factor {} does not divide {}", w[0], w[1])));
        }
        Ok(FGAbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FGAbelianGroup { rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { rank, torsion: vec![] }
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = 1` the trivial group.
    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FGAbelianGroup {
                rank: 0,
                torsion: vec![BigInt::from(d)],
            },
        }
    }

    /// Canonical form of `Z^rank ⊕ ⊕ Z/orders[i]` for arbitrary positive
    /// orders (e.g. `Z/2 ⊕ Z/3` becomes `Z/6`).
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        let q = lattice_quotient(&m);
        FGAbelianGroup {
            rank: rank + q.rank,
            torsion: q.torsion,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of presentation generators, `rank + torsion.len()`.
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of generator `i`, or `None` for a free generator.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.rank).map(|k| &self.torsion[k])
    }

    /// Relation matrix: `ngens × t`, column `k` is `d_k · e_{rank+k}`.
    pub fn relations(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ngens(), self.torsion.len());
        for (k, d) in self.torsion.iter().enumerate() {
            m[(self.rank + k, k)] = d.clone();
        }
        m
    }

    /// Reduces torsion coordinates to `0 ≤ x < d`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.generator_order(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// All elements of a finite group in lexicographic order of reduced
    /// coordinates. Panics on infinite groups.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![]];
        for d in &self.torsion {
            let d = d.to_u64().expect("torsion factor fits in u64");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(x));
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^n / span(columns of relations)` in canonical form.
pub fn lattice_quotient(relations: &IntMatrix) -> FGAbelianGroup {
    let snf = smith_normal_form(relations);
    let factors = snf.invariant_factors();
    FGAbelianGroup {
        rank: relations.rows() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// `span(num) / span(den)` for column-generated lattices in `Z^n` with
/// `span(den) ⊆ span(num)`.
pub fn subquotient(num: &IntMatrix, den: &IntMatrix) -> Result<FGAbelianGroup> {
    let n = num.rows();
    if den.rows() != n {
        return Err(Error::Shape(format!("subquotient of lattices in Z^{n} and Z^{}", den.rows())));
    }
    // U·num·V = D, so the first k columns of U⁻¹·diag(d) form a basis of
    // span(num) and U·x gives coordinates against it.
    let snf = smith_normal_form(num);
    let factors = snf.invariant_factors();
    let k = factors.len();
    let mut coords = IntMatrix::zeros(k, den.cols());
    let moved = &snf.u * den;
    for j in 0..den.cols() {
        for i in 0..n {
            let x = &moved[(i, j)];
            if i >= k {
                if !x.is_zero() {
                    return Err(Error::Shape("denominator lattice is not contained in numerator".into()));
                }
            } else {
                let (quot, rem) = x.div_rem(&factors[i]);
                if !rem.is_zero() {
                    return Err(Error::Shape("denominator lattice is not contained in numerator".into()));
                }
                coords[(i, j)] = quot;
            }
        }
    }
    Ok(lattice_quotient(&coords))
}

/// Generators of the integer kernel `{x : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    snf.v.col_block(r..a.cols())
}

/// Homomorphism given by the images of the source generators (columns) in
/// target coordinates. Stored with torsion rows reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(Error::Shape(format!(
                "matrix is {}×{} but {source} → {target} needs {}×{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let mut matrix = matrix;
        for j in 0..source.ngens() {
            if let Some(d) = source.generator_order(j) {
                let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * d).collect();
                if !target.is_zero_element(&image) {
                    return Err(Error::IllDefinedHom(format!(
                        "generator {} of {source} has order {d} but {d} times its image is nonzero in {target}",
                        j + 1
                    )));
                }
            }
        }
        for i in target.rank..target.ngens() {
            let d = &target.torsion[i - target.rank];
            for j in 0..source.ngens() {
                let v = matrix[(i, j)].mod_floor(d);
                matrix[(i, j)] = v;
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn from_i64(source: FGAbelianGroup, target: FGAbelianGroup, rows: &[&[i64]]) -> Result<Self> {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        if owned.len() != target.ngens() || owned.iter().any(|r| r.len() != source.ngens()) {
            return Err(Error::Shape(format!("literal does not fit {source} → {target}")));
        }
        let m = IntMatrix::from_rows(target.ngens(), source.ngens(), &owned);
        Self::new(source, target, m)
    }

    pub fn zero(source: FGAbelianGroup, target: FGAbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: FGAbelianGroup) -> Self {
        let matrix = IntMatrix::identity(g.ngens());
        GroupHom {
            source: g.clone(),
            target: g,
            matrix,
        }
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if next.source != self.target {
            return Err(Error::Shape(format!(
                "cannot compose {} → {} with {} → {}",
                self.source, self.target, next.source, next.target
            )));
        }
        GroupHom::new(self.source.clone(), next.target.clone(), &next.matrix * &self.matrix)
    }

    /// `[M | R_target]`: its column span is the preimage lattice of the image.
    fn image_lattice(&self) -> IntMatrix {
        self.matrix.hcat(&self.target.relations())
    }

    /// Generators in `Z^{ngens(source)}` of the lattice of elements mapping
    /// to zero; it contains the source relations.
    fn kernel_lattice(&self) -> IntMatrix {
        let k = integer_kernel(&self.image_lattice());
        k.row_block(0..self.source.ngens())
    }
}

pub fn cokernel(f: &GroupHom) -> FGAbelianGroup {
    lattice_quotient(&f.image_lattice())
}

pub fn image(f: &GroupHom) -> FGAbelianGroup {
    subquotient(&f.image_lattice(), &f.target.relations()).expect("relations lie in the image lattice")
}

pub fn kernel(f: &GroupHom) -> FGAbelianGroup {
    subquotient(&f.kernel_lattice(), &f.source.relations()).expect("well-defined hom kills the relations")
}

/// `ker(out) / im(incoming)` at the shared middle term, provided the
/// composite vanishes.
pub fn homology(incoming: &GroupHom, out: &GroupHom) -> Result<FGAbelianGroup> {
    if incoming.target != out.source {
        return Err(Error::Shape(format!(
            "maps do not compose: {} vs {}",
            incoming.target, out.source
        )));
    }
    if !incoming.then(out)?.is_zero() {
        return Err(Error::Shape("composite is nonzero".into()));
    }
    subquotient(&out.kernel_lattice(), &incoming.image_lattice())
}
