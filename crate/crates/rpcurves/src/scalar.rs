//! Exact Gaussian-rational scalars.
//!
//! Every coefficient in the toolkit is a value `re + im·i` with arbitrary-
//! precision rational parts. Arithmetic never rounds; equality is decidable
//! because both parts are kept in lowest terms by `BigRational`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact Gaussian rational `re + im·i`.
///
/// The derived `Ord` is the lexicographic order on `(re, im)`; it is not
/// compatible with the field operations but gives every finite set of
/// scalars a deterministic ordering (used for stable output and
/// deduplication).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Exact rational `num/den`. Panics if `den == 0` (programming error;
    /// user input goes through the parser, which rejects zero denominators).
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// Gaussian rational with integer parts `re + im·i`.
    pub fn from_parts(re: i64, im: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`, an exact nonnegative rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::domain("scalar", "division by zero"));
        }
        let n = self.norm_sq();
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    /// Exact quotient. Errors on zero divisor.
    pub fn div_exact(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Small nonnegative integer power.
    pub fn pow(&self, k: usize) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renders a rational in lowest terms: `3`, `-1/2`, `0`.
    fn fmt_rat(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// Canonical rendering: `0`, `3`, `-1/2`, `i`, `-i`, `2/3*i`, `1+2*i`,
    /// `1/2-3*i`. Used verbatim in text and JSON output.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", Self::fmt_rat(im))
            }
        };
        if self.im.is_zero() {
            Self::fmt_rat(&self.re)
        } else if self.re.is_zero() {
            im_part(&self.im)
        } else if self.im.is_negative() {
            // fmt_rat of a negative value already carries the minus sign.
            format!("{}{}", Self::fmt_rat(&self.re), im_part(&self.im))
        } else {
            format!("{}+{}", Self::fmt_rat(&self.re), im_part(&self.im))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_is_exact() {
        let third = Scalar::from_ratio(1, 3);
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());

        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));

        let z = Scalar::from_parts(1, 2); // 1 + 2i
        let w = Scalar::from_parts(3, -1); // 3 - i
        assert_eq!(&z * &w, Scalar::from_parts(5, 5));
    }

    #[test]
    fn inverse_round_trips() {
        let z = Scalar::new(
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::new(BigInt::from(-5), BigInt::from(7)),
        );
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(Scalar::zero().render(), "0");
        assert_eq!(Scalar::from_int(3).render(), "3");
        assert_eq!(Scalar::from_ratio(-1, 2).render(), "-1/2");
        assert_eq!(Scalar::from_ratio(2, 4).render(), "1/2");
        assert_eq!(Scalar::i().render(), "i");
        assert_eq!((-&Scalar::i()).render(), "-i");
        assert_eq!(Scalar::from_parts(0, 2).render(), "2*i");
        assert_eq!(Scalar::from_parts(1, 2).render(), "1+2*i");
        assert_eq!(Scalar::from_parts(1, -2).render(), "1-2*i");
        let half_minus_3i = Scalar::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(-3)),
        );
        assert_eq!(half_minus_3i.render(), "1/2-3*i");
    }

    #[test]
    fn ordering_is_deterministic() {
        let mut v = vec![Scalar::one(), Scalar::zero(), Scalar::i(), Scalar::from_int(-1)];
        v.sort();
        let rendered: Vec<String> = v.iter().map(Scalar::render).collect();
        assert_eq!(rendered, vec!["-1", "0", "i", "1"]);
    }
}
