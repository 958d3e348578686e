use std::fmt;

use super::{intertwiner_dim, irreducible_modules, RepScalar};
use crate::blade::Signature;
use crate::error::{Error, Result};
use crate::scalar::{Gaussian, Rational, ScalarField};
use crate::structure::classify;

pub const MAX_RESTRICTION_GENERATORS: usize = 16;

/// Multiplicity of each irreducible of the small algebra (rows) in the
/// restriction of each irreducible of the big algebra (columns). As an
/// integer matrix this is the `K₀` map of the forgetful functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMatrix {
    pub big: Signature,
    pub small: Signature,
    pub field: ScalarField,
    pub small_dims: Vec<usize>,
    pub big_dims: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
}

impl RestrictionMatrix {
    pub fn rows(&self) -> usize {
        self.small_dims.len()
    }

    pub fn cols(&self) -> usize {
        self.big_dims.len()
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.entries[row][col]
    }

    /// `Σ_rows multiplicity · dim(small irrep) = dim(big irrep)` for every
    /// column.
    pub fn column_check(&self) -> bool {
        (0..self.cols()).all(|j| {
            (0..self.rows())
                .map(|i| self.entries[i][j] * self.small_dims[i])
                .sum::<usize>()
                == self.big_dims[j]
        })
    }

    /// Restriction along `big ⊃ self.small ⊃ inner.small` as the product
    /// `inner · self`.
    pub fn then(&self, inner: &RestrictionMatrix) -> Result<RestrictionMatrix> {
        if inner.big != self.small || inner.field != self.field {
            return Err(Error::Shape(format!(
                "cannot compose restriction {} → {} with {} → {}",
                self.big, self.small, inner.big, inner.small
            )));
        }
        let entries = (0..inner.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| (0..inner.cols()).map(|k| inner.entries[i][k] * self.entries[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(RestrictionMatrix {
            big: self.big,
            small: inner.small,
            field: self.field,
            small_dims: inner.small_dims.clone(),
            big_dims: self.big_dims.clone(),
            entries,
        })
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect()
    }
}

impl fmt::Display for RestrictionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(usize::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Multiplicities of small irreducibles in restricted big irreducibles along
/// the initial-segment inclusion, each computed as
/// `dim Hom_small(S, B|small) / dim End_small(S)` from exact intertwiner
/// solves.
pub fn restriction_multiplicities(
    big: Signature,
    small: Signature,
    field: ScalarField,
) -> Result<RestrictionMatrix> {
    if small.p > big.p || small.q > big.q {
        return Err(Error::NotEmbeddable { big, small });
    }
    if big.n() > MAX_RESTRICTION_GENERATORS {
        return Err(Error::BoundExceeded {
            what: "p+q for restriction_multiplicities",
            value: big.n(),
            bound: MAX_RESTRICTION_GENERATORS,
        });
    }
    match field {
        ScalarField::Real => restriction_over::<Rational>(big, small),
        ScalarField::Complex => restriction_over::<Gaussian>(big, small),
    }
}

fn restriction_over<S: RepScalar>(big: Signature, small: Signature) -> Result<RestrictionMatrix> {
    let big_mods = irreducible_modules::<S>(big)?;
    let small_mods = irreducible_modules::<S>(small)?;
    let restricted = big_mods
        .iter()
        .map(|b| b.restrict_to(small))
        .collect::<Result<Vec<_>>>()?;

    let mut entries = vec![vec![0; big_mods.len()]; small_mods.len()];
    for (i, s) in small_mods.iter().enumerate() {
        let end = intertwiner_dim(s, s)?;
        for (j, b) in restricted.iter().enumerate() {
            let hom = intertwiner_dim(s, b)?;
            if hom % end != 0 {
                return Err(Error::Shape(format!(
                    "Hom dimension {hom} is not a multiple of End dimension {end} for {small} in {big}"
                )));
            }
            entries[i][j] = hom / end;
        }
    }
    let result = RestrictionMatrix {
        big,
        small,
        field: S::FIELD,
        small_dims: small_mods.iter().map(|m| m.dim).collect(),
        big_dims: big_mods.iter().map(|m| m.dim).collect(),
        entries,
    };
    debug_assert_eq!(result.big_dims, vec![classify(big, S::FIELD).irrep_dim(); result.cols()]);
    if !result.column_check() {
        return Err(Error::Shape(format!("restriction {big} → {small} fails the dimension count")));
    }
    Ok(result)
}
