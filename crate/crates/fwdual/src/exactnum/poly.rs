//! Sparse multivariate polynomials over [`Scalar`] in the momentum-space
//! variables `k1, k2, k3, m, t`.
//!
//! Monomials are ordered lexicographically (k1 > k2 > k3 > m > t), and the
//! term map is a `BTreeMap`, so every polynomial has one canonical
//! representation and equality is structural.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;

pub const NVARS: usize = 5;

/// A coordinate in the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    K1 = 0,
    K2 = 1,
    K3 = 2,
    M = 3,
    T = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::K1, Var::K2, Var::K3, Var::M, Var::T];
    pub const MOMENTA: [Var; 3] = [Var::K1, Var::K2, Var::K3];

    pub fn name(self) -> &'static str {
        match self {
            Var::K1 => "k1",
            Var::K2 => "k2",
            Var::K3 => "k3",
            Var::M => "m",
            Var::T => "t",
        }
    }
}

/// Exponent vector; `Ord` derives lexicographic order on the array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0u16; NVARS];
        e[v as usize] = 1;
        Mono(e)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for j in 0..NVARS {
            e[j] = self.0[j] + other.0[j];
        }
        Mono(e)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        (0..NVARS).all(|j| self.0[j] <= other.0[j])
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for j in 0..NVARS {
            e[j] = self.0[j] - other.0[j];
        }
        Mono(e)
    }

    pub fn deg(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Sparse polynomial; invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Mono, Scalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        MPoly::constant(Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        let mut p = MPoly::zero();
        p.terms.insert(Mono::var(v), Scalar::one());
        p
    }

    pub fn from_int(n: i64) -> Self {
        MPoly::constant(Scalar::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().map_or(false, |(m, c)| m.is_one() && c.is_one())
    }

    pub fn constant_value(&self) -> Option<&Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.terms.len() == 1 {
            if let Some((m, c)) = self.terms.iter().next() {
                if m.is_one() {
                    return Some(c);
                }
            }
        }
        None
    }

    fn insert(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(mm, k)| (mm.mul(m), k * c)).collect(),
        }
    }

    /// Lex-leading term (the largest key).
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn deg(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.deg(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.deg(v) > 0)
    }

    /// Exact polynomial division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (lm, lc) = {
            let (m, c) = divisor.leading().unwrap();
            (*m, c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (*m, c.clone())
            };
            if !lm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&lm);
            let qc = &rc / &lc;
            quot.insert(qm, qc.clone());
            rem = rem.sub(&divisor.mul_mono(&qm, &qc));
        }
        Some(quot)
    }

    /// Partial derivative.
    pub fn differentiate(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.deg(v);
            if e == 0 {
                continue;
            }
            let mut em = *m;
            em.0[v as usize] -= 1;
            out.insert(em, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Complex-conjugate all coefficients (i -> -i, sqrt2 fixed).
    pub fn conj_coeffs(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Substitute `k_j -> -k_j` for the three momentum variables.
    pub fn reflect_momenta(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let parity = (m.deg(Var::K1) + m.deg(Var::K2) + m.deg(Var::K3)) % 2;
                    let c = if parity == 1 { -c } else { c.clone() };
                    (*m, c)
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Complex64; NVARS]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_complex();
            for (j, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= point[j];
                }
            }
            acc += term;
        }
        acc
    }

    /// View as univariate in `v`: degree -> coefficient with the `v` power
    /// stripped.
    pub fn univariate_parts(&self, v: Var) -> std::collections::BTreeMap<u16, MPoly> {
        let mut out: std::collections::BTreeMap<u16, MPoly> = Default::default();
        for (m, c) in &self.terms {
            let d = m.deg(v);
            let mut rest = *m;
            rest.0[v as usize] = 0;
            out.entry(d).or_default().insert(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// The squared-frequency polynomial `k1^2 + k2^2 + k3^2 + m^2`.
    pub fn omega_sq() -> MPoly {
        let mut p = MPoly::zero();
        for v in [Var::K1, Var::K2, Var::K3, Var::M] {
            let mut e = [0u16; NVARS];
            e[v as usize] = 2;
            p.terms.insert(Mono(e), Scalar::one());
        }
        p
    }

    /// `k1^2 + k2^2 + k3^2`.
    pub fn k_sq() -> MPoly {
        let mut p = MPoly::zero();
        for v in Var::MOMENTA {
            let mut e = [0u16; NVARS];
            e[v as usize] = 2;
            p.terms.insert(Mono(e), Scalar::one());
        }
        p
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // print highest lex term first
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = format!("{c}");
            let needs_parens = cs.contains('+') || cs.contains('-');
            if m.is_one() {
                write!(f, "{cs}")?;
                continue;
            }
            if c.is_one() {
                // skip unit coefficient
            } else if needs_parens {
                write!(f, "({cs})*")?;
            } else {
                write!(f, "{cs}*")?;
            }
            let mut firstv = true;
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                let name = Var::ALL[j].name();
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: Var) -> MPoly {
        MPoly::var(v)
    }

    #[test]
    fn product_and_exact_division_round_trip() {
        let f = k(Var::K1).add(&k(Var::K2).mul_scalar(&Scalar::from_int(3)));
        let g = k(Var::K3).mul(&k(Var::K1)).add(&MPoly::from_int(7));
        let fg = f.mul(&g);
        assert_eq!(fg.div_exact(&g).unwrap(), f);
        assert_eq!(fg.div_exact(&f).unwrap(), g);
        assert!(fg.add(&MPoly::one()).div_exact(&g).is_none());
    }

    #[test]
    fn differentiate_product_rule() {
        let f = k(Var::K1).mul(&k(Var::K2));
        assert_eq!(f.differentiate(Var::K1), k(Var::K2));
        assert_eq!(MPoly::var(Var::M).differentiate(Var::K2), MPoly::zero());
    }

    #[test]
    fn reflect_momenta_parity() {
        let f = k(Var::K1).mul(&k(Var::K2)).add(&k(Var::K3));
        let r = f.reflect_momenta();
        // k1*k2 is even, k3 is odd
        assert_eq!(r, k(Var::K1).mul(&k(Var::K2)).sub(&k(Var::K3)));
    }
}
