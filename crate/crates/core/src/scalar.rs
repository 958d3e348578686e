//! Exact scalar fields: the rationals and the Gaussian rationals.

use std::fmt::{self, Debug, Display};
use std::ops::Neg;

use num::{BigInt, BigRational, Complex, Num, One, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Gaussian rational `a + b·i` with `i² = −1`.
pub type Gaussian = Complex<BigRational>;

/// The ground field over which a Clifford algebra (or its representations)
/// is considered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarField {
    Real,
    Complex,
}

impl ScalarField {
    pub fn symbol(self) -> &'static str {
        match self {
            ScalarField::Real => "R",
            ScalarField::Complex => "C",
        }
    }
}

impl Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An exact field usable as coefficient ring for elements and matrices.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const FIELD: ScalarField;

    fn from_int(value: i64) -> Self;

    /// `√−1`, when the field contains it.
    fn imaginary_unit() -> Option<Self>;
}

impl Scalar for Rational {
    const FIELD: ScalarField = ScalarField::Real;

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }
}

impl Scalar for Gaussian {
    const FIELD: ScalarField = ScalarField::Complex;

    fn from_int(value: i64) -> Self {
        Complex::new(Rational::from_int(value), Rational::zero())
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(Rational::zero(), Rational::one()))
    }
}

pub fn rat(value: i64) -> Rational {
    Rational::from_int(value)
}

pub fn gauss(re: i64, im: i64) -> Gaussian {
    Complex::new(rat(re), rat(im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = Gaussian::imaginary_unit().unwrap();
        assert_eq!(i.clone() * i, Gaussian::from_int(-1));
        assert!(Rational::imaginary_unit().is_none());
    }

    #[test]
    fn gaussian_division_is_exact() {
        let a = gauss(3, 4);
        let b = gauss(1, -2);
        assert_eq!((a.clone() / b.clone()) * b, a);
    }
}
