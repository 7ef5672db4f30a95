//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
//! rationals (complex numbers with rational real and imaginary parts).
//!
//! Every zero-test downstream is a variety-membership test, so there is no
//! floating-point mode; irrational amplitudes are represented unnormalized
//! (all classification predicates are scale-invariant).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator
/// (maintained by `BigRational`).
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Element of Q(i): the coefficient field for all tensors in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(rational(n, 1), Rational::zero())
    }

    /// re = a/b, im = c/d.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational::new(rational(a, b), rational(c, d))
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// |a|^2 = re^2 + im^2, exact.
    pub fn abs_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division. Division by zero is a distinct error.
    pub fn div(&self, rhs: &GaussianRational) -> Result<GaussianRational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = rhs.abs_squared();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &n;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &n;
        Ok(GaussianRational::new(re, im))
    }

    pub fn inv(&self) -> Result<GaussianRational> {
        GaussianRational::one().div(self)
    }

    pub fn pow(&self, mut exp: u32) -> GaussianRational {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> GaussianRational {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    /// sqrt(|a|^2) as f64, for display only.
    pub fn abs_f64(&self) -> f64 {
        self.abs_squared().to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Emits the scalar grammar shared with the state-file format:
/// `R` or `R+Ri` / `R-Ri` with `R` = `[-]digits[/digits]`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses one whitespace-free scalar token.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let bytes = text.as_bytes();
    let err = |pos: usize, msg: &str| Error::ScalarParse {
        pos,
        msg: msg.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty scalar"));
    }

    // One `R` component starting at `pos`; returns (value, next position).
    fn rational_at(bytes: &[u8], mut pos: usize) -> Result<(Rational, usize)> {
        let start = pos;
        let mut neg = false;
        if pos < bytes.len() && bytes[pos] == b'-' {
            neg = true;
            pos += 1;
        }
        let digits_at = |mut p: usize| {
            let s = p;
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            (s, p)
        };
        let (ds, de) = digits_at(pos);
        if ds == de {
            return Err(Error::ScalarParse {
                pos: start,
                msg: "expected digits".to_string(),
            });
        }
        let numer: BigInt = std::str::from_utf8(&bytes[ds..de]).unwrap().parse().unwrap();
        pos = de;
        let denom: BigInt = if pos < bytes.len() && bytes[pos] == b'/' {
            pos += 1;
            let (es, ee) = digits_at(pos);
            if es == ee {
                return Err(Error::ScalarParse {
                    pos,
                    msg: "expected denominator digits".to_string(),
                });
            }
            pos = ee;
            std::str::from_utf8(&bytes[es..ee]).unwrap().parse().unwrap()
        } else {
            BigInt::one()
        };
        if denom.is_zero() {
            return Err(Error::ScalarParse {
                pos: start,
                msg: "zero denominator".to_string(),
            });
        }
        let numer = if neg { -numer } else { numer };
        Ok((Rational::new(numer, denom), pos))
    }

    let (re, pos) = rational_at(bytes, 0)?;
    if pos == bytes.len() {
        return Ok(GaussianRational::from_rational(re));
    }
    let sign = match bytes[pos] {
        b'+' => Rational::one(),
        b'-' => -Rational::one(),
        _ => return Err(err(pos, "expected '+', '-' or end of token")),
    };
    let (im_mag, pos) = rational_at(bytes, pos + 1)?;
    if pos + 1 != bytes.len() || bytes[pos] != b'i' {
        return Err(err(pos, "expected trailing 'i'"));
    }
    Ok(GaussianRational::new(re, sign * im_mag))
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn conjugate_product() {
        let a = g(1, 1, 1, 1);
        let b = g(1, 1, -1, 1);
        assert_eq!(&a * &b, GaussianRational::from_int(2));
    }

    #[test]
    fn rational_addition() {
        let a = g(1, 2, 0, 1);
        let b = g(1, 3, 0, 1);
        assert_eq!(&a + &b, g(5, 6, 0, 1));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = GaussianRational::one();
        assert!(matches!(
            a.div(&GaussianRational::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn abs_squared_examples() {
        assert_eq!(g(3, 1, 4, 1).abs_squared(), rational(25, 1));
        assert_eq!(GaussianRational::zero().abs_squared(), rational(0, 1));
        assert_eq!(g(1, 2, 1, 2).abs_squared(), rational(1, 2));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_scalar("3/4").unwrap(), g(3, 4, 0, 1));
        assert_eq!(parse_scalar("-1/2+2/3i").unwrap(), g(-1, 2, 2, 3));
        assert_eq!(parse_scalar("0").unwrap(), GaussianRational::zero());
        assert_eq!(parse_scalar("1-1i").unwrap(), g(1, 1, -1, 1));
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "1/", "+1", "1+i", "1+2j", "1 + 2i", "1/0", "2i"] {
            assert!(parse_scalar(bad).is_err(), "accepted {:?}", bad);
        }
    }

    fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
        (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
            .prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in (arb_gaussian(), arb_gaussian(), arb_gaussian())) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_round_trip(a in arb_gaussian()) {
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
        }

        #[test]
        fn abs_squared_multiplicative((a, b) in (arb_gaussian(), arb_gaussian())) {
            prop_assert_eq!((&a * &b).abs_squared(), a.abs_squared() * b.abs_squared());
        }

        #[test]
        fn display_round_trips(a in arb_gaussian()) {
            prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
        }
    }
}
