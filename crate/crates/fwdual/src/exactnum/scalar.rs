//! The scalar coefficient field Q(i, sqrt2).
//!
//! Every matrix entry and every rational-function coefficient in the engine
//! lives in this field. Elements are stored as four rationals
//! `a + b*sqrt2 + c*i + d*i*sqrt2`, grouped into real and imaginary parts
//! over Q(sqrt2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::ExactError;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// An element of the real quadratic field Q(sqrt2): `a + b*sqrt2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Q2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Q2 { a, b }
    }

    pub fn zero() -> Self {
        Q2::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Q2::new(BigRational::one(), BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        Q2::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Q2::new(
            BigRational::new(BigInt::from(n), BigInt::from(d)),
            BigRational::zero(),
        )
    }

    pub fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Field norm `a^2 - 2 b^2`; zero only for the zero element since sqrt2
    /// is irrational.
    fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from(BigInt::from(2)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Q2::new(&self.a / &n, -&self.b / &n))
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * SQRT2
    }
}

impl Add for &Q2 {
    type Output = Q2;
    fn add(self, rhs: &Q2) -> Q2 {
        Q2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Q2 {
    type Output = Q2;
    fn sub(self, rhs: &Q2) -> Q2 {
        Q2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Q2 {
    type Output = Q2;
    fn mul(self, rhs: &Q2) -> Q2 {
        let two = BigRational::from(BigInt::from(2));
        Q2::new(
            &self.a * &rhs.a + &two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2::new(-&self.a, -&self.b)
    }
}

/// An element of Q(i, sqrt2), split into real and imaginary Q(sqrt2) parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Q2,
    pub im: Q2,
}

impl Scalar {
    pub fn new(re: Q2, im: Q2) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(Q2::zero(), Q2::zero())
    }

    pub fn one() -> Self {
        Scalar::new(Q2::one(), Q2::zero())
    }

    pub fn i() -> Self {
        Scalar::new(Q2::zero(), Q2::one())
    }

    pub fn sqrt2() -> Self {
        Scalar::new(Q2::sqrt2(), Q2::zero())
    }

    /// `1/sqrt2 = sqrt2/2`.
    pub fn inv_sqrt2() -> Self {
        Scalar::new(
            Q2::new(BigRational::zero(), BigRational::new(BigInt::one(), BigInt::from(2))),
            Q2::zero(),
        )
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Q2::from_ratio(n, 1), Q2::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::new(Q2::from_ratio(n, d), Q2::zero())
    }

    /// `n/d * i`.
    pub fn i_times(n: i64, d: i64) -> Self {
        Scalar::new(Q2::zero(), Q2::from_ratio(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// Complex conjugation: fixes sqrt2, negates i.
    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // 1/(x+iy) = (x-iy)/(x^2+y^2), with x, y in Q(sqrt2).
        let n = &(&self.re * &self.re) + &(&self.im * &self.im);
        let n_inv = n.inv()?;
        Ok(Scalar::new(&self.re * &n_inv, &(-&self.im) * &n_inv))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
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
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("scalar division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.re.a.is_zero() {
            parts.push(fmt_rat(&self.re.a));
        }
        if !self.re.b.is_zero() {
            parts.push(format!("{}*r2", fmt_rat(&self.re.b)));
        }
        if !self.im.a.is_zero() {
            parts.push(format!("{}*i", fmt_rat(&self.im.a)));
        }
        if !self.im.b.is_zero() {
            parts.push(format!("{}*i*r2", fmt_rat(&self.im.b)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, p) in parts.iter().enumerate() {
            if n == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_is_involution() {
        let x = &Scalar::new(Q2::from_ratio(1, 2), Q2::new(BigRational::from(BigInt::from(3)), BigRational::one()));
        assert_eq!(x.conj().conj(), *x);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let r = Scalar::sqrt2();
        assert_eq!(&r * &r, Scalar::from_int(2));
        assert_eq!(&Scalar::inv_sqrt2() * &Scalar::sqrt2(), Scalar::one());
    }

    #[test]
    fn inverse_round_trip() {
        // (1 + sqrt2 + i/3) * its inverse = 1
        let x = Scalar::new(
            Q2::new(BigRational::one(), BigRational::one()),
            Q2::from_ratio(1, 3),
        );
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, Scalar::one());
    }
}
