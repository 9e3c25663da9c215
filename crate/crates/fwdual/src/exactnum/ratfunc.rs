//! Rational functions in (k1, k2, k3, m, t) over Q(i, sqrt2).
//!
//! Canonical form: numerator and denominator share no common factor and the
//! denominator is monic in lex order. Equality is structural.

use num_complex::Complex64;
use std::fmt;

use super::gcd::{gcd_fast, normalize, reduce_fraction};
use super::poly::{MPoly, Var, NVARS};
use super::scalar::Scalar;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            reduce_fraction(&num, &den)
        };
        // make the denominator monic, moving the unit into the numerator
        if let Some((_, lc)) = den.leading() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                num = num.mul_scalar(&inv);
                den = normalize(&den);
            }
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(MPoly::one())
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(MPoly::var(v))
    }

    pub fn scalar(c: Scalar) -> Self {
        RatFunc::from_poly(MPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(MPoly::from_int(n))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::reduced(self.num.add(&other.num), self.den.clone());
        }
        // cross-cancel denominators before expanding to keep the lcm small
        let g = gcd_fast(&self.den, &other.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                other.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        RatFunc::reduced(num, den)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // cancel across the two fractions first
        let (n1, d2) = reduce_fraction(&self.num, &other.den);
        let (n2, d1) = reduce_fraction(&other.num, &self.den);
        RatFunc::reduced(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn mul_scalar(&self, c: &Scalar) -> RatFunc {
        RatFunc {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Quotient rule.
    pub fn differentiate(&self, v: Var) -> RatFunc {
        if !self.num.contains_var(v) && !self.den.contains_var(v) {
            return RatFunc::zero();
        }
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.differentiate(v));
        }
        let num = self
            .num
            .differentiate(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.differentiate(v)));
        let den = self.den.mul(&self.den);
        RatFunc::reduced(num, den)
    }

    /// Conjugate coefficients only (i -> -i), variables untouched.
    pub fn conj_coeffs(&self) -> RatFunc {
        RatFunc::reduced(self.num.conj_coeffs(), self.den.conj_coeffs())
    }

    /// Conjugate coefficients and send `k -> -k`.
    pub fn conj_reflect(&self) -> RatFunc {
        RatFunc::reduced(
            self.num.conj_coeffs().reflect_momenta(),
            self.den.conj_coeffs().reflect_momenta(),
        )
    }

    pub fn eval(&self, point: &[Complex64; NVARS]) -> Result<Complex64, ExactError> {
        let d = self.den.eval(point);
        if d.norm() < 1e-300 {
            return Err(ExactError::EvalSingularity);
        }
        Ok(self.num.eval(point) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> RatFunc {
        RatFunc::var(Var::K1)
    }

    #[test]
    fn canonical_reduction() {
        // (k1^2 - k2^2) / (k1 - k2) = k1 + k2
        let num = MPoly::var(Var::K1)
            .mul(&MPoly::var(Var::K1))
            .sub(&MPoly::var(Var::K2).mul(&MPoly::var(Var::K2)));
        let den = MPoly::var(Var::K1).sub(&MPoly::var(Var::K2));
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r, RatFunc::from_poly(MPoly::var(Var::K1).add(&MPoly::var(Var::K2))));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let r = k1().add(&RatFunc::from_int(2)).div(&RatFunc::var(Var::M)).unwrap();
        assert!(r.mul(&r.inv().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_detected() {
        assert!(RatFunc::zero().inv().is_err());
        assert!(RatFunc::new(MPoly::one(), MPoly::zero()).is_err());
    }

    #[test]
    fn quotient_rule() {
        // d/dk1 (k1/m) = 1/m
        let r = k1().div(&RatFunc::var(Var::M)).unwrap();
        assert_eq!(
            r.differentiate(Var::K1),
            RatFunc::one().div(&RatFunc::var(Var::M)).unwrap()
        );
        // d/dk1 (1/k1) = -1/k1^2
        let inv = k1().inv().unwrap();
        let expect = RatFunc::new(
            MPoly::from_int(-1),
            MPoly::var(Var::K1).mul(&MPoly::var(Var::K1)),
        )
        .unwrap();
        assert_eq!(inv.differentiate(Var::K1), expect);
    }
}
