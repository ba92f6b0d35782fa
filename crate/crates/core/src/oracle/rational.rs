use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        // Ratio::new reduces and normalizes the sign; panics on a zero denominator
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(x: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(x.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    /// Exact value of a finite double (every finite `f64` is a dyadic
    /// rational).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub(crate) fn from_ratio(r: BigRational) -> Self {
        Self(r)
    }

    pub(crate) fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: Self) -> Self {
                Self(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: Self) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Signed;

    #[test]
    fn canonical_form() {
        let x = ExactRational::new(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.numer().abs().gcd(x.denom()), BigInt::from(1));
        assert_eq!(x.to_string(), "-3/2");
    }

    #[test]
    fn float_conversion_is_exact() {
        let x = ExactRational::from_f64(0.1).unwrap();
        assert_eq!(x.to_f64(), 0.1);
        assert_ne!(x, ExactRational::new(1, 10));
        assert!(ExactRational::from_f64(f64::INFINITY).is_none());
        let third = ExactRational::new(1, 3);
        assert_eq!(&(&third + &third) + &third, ExactRational::from_integer(1));
    }
}
