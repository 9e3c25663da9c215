//! The coefficient field extended by the frequency symbol: elements
//! `p + q*w` with `w^2 = k1^2 + k2^2 + k3^2 + m^2` and `p`, `q` rational
//! functions. `w` is the momentum-space symbol of `sqrt(-laplace + m^2)`
//! and evaluates to the positive root for real momenta and `m > 0`.

use num_complex::Complex64;
use std::fmt;

use super::poly::{MPoly, Var, NVARS};
use super::ratfunc::RatFunc;
use super::scalar::Scalar;
use super::ExactError;

/// Numeric evaluation point; `m > 0` expected by callers.
#[derive(Clone, Copy, Debug)]
pub struct EvalPoint {
    pub k: [f64; 3],
    pub m: f64,
    pub t: f64,
}

impl EvalPoint {
    pub fn new(k: [f64; 3], m: f64, t: f64) -> Self {
        EvalPoint { k, m, t }
    }

    pub fn omega(&self) -> f64 {
        (self.k[0] * self.k[0] + self.k[1] * self.k[1] + self.k[2] * self.k[2]
            + self.m * self.m)
            .sqrt()
    }

    fn coords(&self) -> [Complex64; NVARS] {
        [
            Complex64::new(self.k[0], 0.0),
            Complex64::new(self.k[1], 0.0),
            Complex64::new(self.k[2], 0.0),
            Complex64::new(self.m, 0.0),
            Complex64::new(self.t, 0.0),
        ]
    }
}

/// `p + q*w`, normal form inherited from [`RatFunc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElem {
    pub p: RatFunc,
    pub q: RatFunc,
}

impl OmegaElem {
    pub fn new(p: RatFunc, q: RatFunc) -> Self {
        OmegaElem { p, q }
    }

    pub fn zero() -> Self {
        OmegaElem::new(RatFunc::zero(), RatFunc::zero())
    }

    pub fn one() -> Self {
        OmegaElem::new(RatFunc::one(), RatFunc::zero())
    }

    pub fn i() -> Self {
        OmegaElem::scalar(Scalar::i())
    }

    pub fn omega() -> Self {
        OmegaElem::new(RatFunc::zero(), RatFunc::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        OmegaElem::new(RatFunc::scalar(c), RatFunc::zero())
    }

    pub fn from_int(n: i64) -> Self {
        OmegaElem::scalar(Scalar::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        OmegaElem::scalar(Scalar::from_ratio(n, d))
    }

    pub fn var(v: Var) -> Self {
        OmegaElem::new(RatFunc::var(v), RatFunc::zero())
    }

    /// The defining relation `w^2` as a rational function.
    fn omega_sq() -> RatFunc {
        RatFunc::from_poly(MPoly::omega_sq())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn add(&self, other: &OmegaElem) -> OmegaElem {
        OmegaElem::new(self.p.add(&other.p), self.q.add(&other.q))
    }

    pub fn sub(&self, other: &OmegaElem) -> OmegaElem {
        OmegaElem::new(self.p.sub(&other.p), self.q.sub(&other.q))
    }

    pub fn neg(&self) -> OmegaElem {
        OmegaElem::new(self.p.neg(), self.q.neg())
    }

    pub fn mul(&self, other: &OmegaElem) -> OmegaElem {
        if self.is_zero() || other.is_zero() {
            return OmegaElem::zero();
        }
        let ksq = Self::omega_sq();
        OmegaElem::new(
            self.p.mul(&other.p).add(&self.q.mul(&other.q).mul(&ksq)),
            self.p.mul(&other.q).add(&self.q.mul(&other.p)),
        )
    }

    pub fn mul_scalar(&self, c: &Scalar) -> OmegaElem {
        OmegaElem::new(self.p.mul_scalar(c), self.q.mul_scalar(c))
    }

    /// `(p + qw)^-1 = (p - qw)/(p^2 - q^2 w^2)`. The norm vanishes only for
    /// the zero element because `w^2` is not a square in the function field.
    pub fn inv(&self) -> Result<OmegaElem, ExactError> {
        let norm = self
            .p
            .mul(&self.p)
            .sub(&self.q.mul(&self.q).mul(&Self::omega_sq()));
        if norm.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let ninv = norm.inv()?;
        Ok(OmegaElem::new(self.p.mul(&ninv), self.q.neg().mul(&ninv)))
    }

    pub fn div(&self, other: &OmegaElem) -> Result<OmegaElem, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact partial derivative; `dw/dk_j = k_j * w / (k^2 + m^2)` and
    /// `dw/dt = 0`.
    pub fn differentiate(&self, v: Var) -> OmegaElem {
        let dp = self.p.differentiate(v);
        let dq = self.q.differentiate(v);
        match v {
            Var::K1 | Var::K2 | Var::K3 => {
                let chain = self
                    .q
                    .mul(&RatFunc::var(v))
                    .div(&Self::omega_sq())
                    .expect("omega^2 is nonzero");
                OmegaElem::new(dp, dq.add(&chain))
            }
            Var::M | Var::T => OmegaElem::new(dp, dq),
        }
    }

    /// Plain coefficient conjugation: i -> -i, variables and `w` fixed.
    pub fn conj(&self) -> OmegaElem {
        OmegaElem::new(self.p.conj_coeffs(), self.q.conj_coeffs())
    }

    /// Momentum-space image of complex conjugation: coefficients conjugated
    /// and `k -> -k`; `w`, `m`, `t` fixed since `w` is even in `k`.
    pub fn conj_reflect(&self) -> OmegaElem {
        OmegaElem::new(self.p.conj_reflect(), self.q.conj_reflect())
    }

    pub fn eval(&self, pt: &EvalPoint) -> Result<Complex64, ExactError> {
        let coords = pt.coords();
        let w = Complex64::new(pt.omega(), 0.0);
        Ok(self.p.eval(&coords)? + self.q.eval(&coords)? * w)
    }

    /// Split into `sum_d t^d * e_d` with each `e_d` free of `t`. Requires a
    /// `t`-free denominator, which holds for every coefficient built here
    /// (denominators are products of `k^2 + m^2` and `k^2`).
    pub fn split_t(&self) -> Vec<(u32, OmegaElem)> {
        let mut out: std::collections::BTreeMap<u32, OmegaElem> = Default::default();
        for (part_is_q, rf) in [(false, &self.p), (true, &self.q)] {
            if rf.is_zero() {
                continue;
            }
            assert!(
                !rf.den().contains_var(Var::T),
                "t-dependent denominator in split_t"
            );
            for (deg, num_part) in rf.num().univariate_parts(Var::T) {
                let piece = RatFunc::new(num_part, rf.den().clone()).expect("den nonzero");
                let elem = if part_is_q {
                    OmegaElem::new(RatFunc::zero(), piece)
                } else {
                    OmegaElem::new(piece, RatFunc::zero())
                };
                let entry = out.entry(u32::from(deg)).or_insert_with(OmegaElem::zero);
                *entry = entry.add(&elem);
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for OmegaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.p),
            (true, false) => {
                if self.q.is_one() {
                    write!(f, "w")
                } else {
                    write!(f, "({})*w", self.q)
                }
            }
            (false, false) => write!(f, "{} + ({})*w", self.p, self.q),
        }
    }
}

/// Convenience constructors used throughout the operator modules.
impl OmegaElem {
    /// `1/(2w) = w / (2(k^2+m^2))`.
    pub fn half_inv_omega() -> OmegaElem {
        OmegaElem::omega()
            .mul(&OmegaElem::from_ratio(1, 2))
            .div(&OmegaElem::new(Self::omega_sq(), RatFunc::zero()))
            .expect("omega^2 nonzero")
    }

    /// `1/(w+m) = (w-m)/(k^2)`.
    pub fn inv_omega_plus_m() -> OmegaElem {
        OmegaElem::omega()
            .add(&OmegaElem::var(Var::M))
            .inv()
            .expect("w+m nonzero")
    }

    /// `2w(w+m)`, the square of the inverse normalization factor of the
    /// momentum-space wave transform.
    pub fn two_omega_omega_plus_m() -> OmegaElem {
        OmegaElem::from_int(2)
            .mul(&OmegaElem::omega())
            .mul(&OmegaElem::omega().add(&OmegaElem::var(Var::M)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_reduces() {
        let w = OmegaElem::omega();
        let expect = OmegaElem::new(RatFunc::from_poly(MPoly::omega_sq()), RatFunc::zero());
        assert_eq!(w.mul(&w), expect);
    }

    #[test]
    fn multiplicative_identity() {
        let x = OmegaElem::omega().add(&OmegaElem::var(Var::K1));
        assert_eq!(x.mul(&OmegaElem::one()), x);
    }

    #[test]
    fn omega_plus_m_times_omega_minus_m() {
        // (w+m)(w-m) = k1^2+k2^2+k3^2, by hand: w^2 - m^2
        let m = OmegaElem::var(Var::M);
        let w = OmegaElem::omega();
        let prod = w.add(&m).mul(&w.sub(&m));
        let expect = OmegaElem::new(RatFunc::from_poly(MPoly::k_sq()), RatFunc::zero());
        assert_eq!(prod, expect);
    }

    #[test]
    fn inverse_of_omega_plus_m() {
        let x = OmegaElem::omega().add(&OmegaElem::var(Var::M));
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(x.inv().unwrap(), OmegaElem::inv_omega_plus_m());
    }

    #[test]
    fn division_by_zero_flagged() {
        assert!(OmegaElem::zero().inv().is_err());
    }

    #[test]
    fn derivative_of_omega() {
        // dw/dk1 = k1*w/(k1^2+k2^2+k3^2+m^2), by implicit differentiation
        let dw = OmegaElem::omega().differentiate(Var::K1);
        let expect = OmegaElem::new(
            RatFunc::zero(),
            RatFunc::new(MPoly::var(Var::K1), MPoly::omega_sq()).unwrap(),
        );
        assert_eq!(dw, expect);
        assert_eq!(OmegaElem::var(Var::M).differentiate(Var::K2), OmegaElem::zero());
        assert_eq!(
            OmegaElem::var(Var::K1).mul(&OmegaElem::var(Var::K2)).differentiate(Var::K1),
            OmegaElem::var(Var::K2)
        );
        assert_eq!(OmegaElem::omega().differentiate(Var::T), OmegaElem::zero());
    }

    #[test]
    fn conj_reflect_cases() {
        // (i*k1) is fixed: both signs flip
        let ik1 = OmegaElem::i().mul(&OmegaElem::var(Var::K1));
        assert_eq!(ik1.conj_reflect(), ik1);
        // w is even and real
        assert_eq!(OmegaElem::omega().conj_reflect(), OmegaElem::omega());
        // involution
        let x = OmegaElem::omega()
            .add(&OmegaElem::var(Var::K2).mul(&OmegaElem::i()))
            .add(&OmegaElem::from_ratio(3, 7));
        assert_eq!(x.conj_reflect().conj_reflect(), x);
        // k1 alone flips sign
        assert_eq!(
            OmegaElem::var(Var::K1).conj_reflect(),
            OmegaElem::var(Var::K1).neg()
        );
    }

    #[test]
    fn eval_examples() {
        let at = EvalPoint::new([0.0, 0.0, 0.0], 1.0, 0.0);
        let w = OmegaElem::omega();
        assert!((w.eval(&at).unwrap().re - 1.0).abs() < 1e-15);

        // normalization: N = 1/sqrt(2w(w+m)) evaluates to 1/2 at k=0, m=1
        let nsq_inv = OmegaElem::two_omega_omega_plus_m();
        let n = 1.0 / nsq_inv.eval(&at).unwrap().re.sqrt();
        assert!((n - 0.5).abs() < 1e-15);

        // k1*w/(k^2+m^2) at k=(3,0,0), m=4: 3*5/25 = 0.6
        let e = OmegaElem::var(Var::K1)
            .mul(&OmegaElem::omega())
            .div(&OmegaElem::new(RatFunc::from_poly(MPoly::omega_sq()), RatFunc::zero()))
            .unwrap();
        let at2 = EvalPoint::new([3.0, 0.0, 0.0], 4.0, 0.0);
        assert!((e.eval(&at2).unwrap().re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn half_inv_omega_identity() {
        // (1/2w) * 2w = 1
        let x = OmegaElem::half_inv_omega();
        let two_w = OmegaElem::from_int(2).mul(&OmegaElem::omega());
        assert!(x.mul(&two_w).is_one());
    }
}
