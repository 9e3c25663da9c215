//! Multivariate polynomial GCD by primitive pseudo-remainder sequences.
//!
//! Coefficients live in the field Q(i, sqrt2), so constants are units: the
//! GCD is normalized to have lex-leading coefficient 1, and the GCD of two
//! nonzero constants is 1.

use super::poly::{MPoly, Var};
use super::scalar::Scalar;
use std::collections::BTreeMap;

/// Divide by the lex-leading coefficient so the result is monic.
pub fn normalize(p: &MPoly) -> MPoly {
    match p.leading() {
        None => MPoly::zero(),
        Some((_, lc)) => {
            if lc.is_one() {
                p.clone()
            } else {
                let inv = lc.inv().expect("nonzero leading coefficient");
                p.mul_scalar(&inv)
            }
        }
    }
}

/// View `p` as univariate in `v`: degree -> coefficient polynomial in the
/// remaining variables.
fn as_univariate(p: &MPoly, v: Var) -> BTreeMap<u16, MPoly> {
    let mut out: BTreeMap<u16, MPoly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let d = m.deg(v);
        let mut rest = *m;
        rest.0[v as usize] = 0;
        let entry = out.entry(d).or_default();
        let mut single = MPoly::zero();
        single.terms.insert(rest, c.clone());
        *entry = entry.add(&single);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Content with respect to `v`: the GCD of the univariate coefficients.
fn content(p: &MPoly, v: Var) -> MPoly {
    let coeffs = as_univariate(p, v);
    let mut acc = MPoly::zero();
    for c in coeffs.values() {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `f` by `g` in the variable `v` (deg_v f >= deg_v g).
/// The result differs from the true remainder by a power of lc_v(g), which
/// is harmless here because callers take primitive parts.
fn prem(f: &MPoly, g: &MPoly, v: Var) -> MPoly {
    let gu = as_univariate(g, v);
    let dg = *gu.keys().next_back().expect("g nonzero");
    let lg = gu[&dg].clone();
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let ru = as_univariate(&r, v);
        let dr = *ru.keys().next_back().unwrap();
        if dr < dg {
            return r;
        }
        let lr = ru[&dr].clone();
        // r <- lg*r - lr*g*v^(dr-dg)
        let mut shift = super::poly::Mono::one();
        shift.0[v as usize] = dr - dg;
        r = r.mul(&lg).sub(&g.mul(&lr).mul_mono(&shift, &Scalar::one()));
    }
}

/// Monic GCD over Q(i, sqrt2)[k1,k2,k3,m,t].
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one();
    }
    // main variable: the lowest-index variable present in either operand
    let v = Var::ALL
        .into_iter()
        .find(|&v| f.contains_var(v) || g.contains_var(v))
        .expect("non-constant polynomial has a variable");
    if !f.contains_var(v) {
        return gcd(f, &content(g, v));
    }
    if !g.contains_var(v) {
        return gcd(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.deg(v) < b.deg(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        a = b;
        b = primitive_part(&r, v);
    }
    normalize(&c.mul(&b))
}

// ---------------------------------------------------------------------------
// fast path: denominators in this problem factor over a fixed set of
// irreducibles (the variables, k^2, and k^2 + m^2, all irreducible since a
// quadratic form of rank >= 3 cannot split into linear factors)
// ---------------------------------------------------------------------------

fn known_irreducibles() -> &'static [MPoly] {
    use std::sync::OnceLock;
    static KNOWN: OnceLock<Vec<MPoly>> = OnceLock::new();
    KNOWN.get_or_init(|| {
        let mut v: Vec<MPoly> = Var::ALL.iter().map(|&x| MPoly::var(x)).collect();
        v.push(MPoly::k_sq());
        v.push(MPoly::omega_sq());
        v
    })
}

/// Full factorization over the known irreducibles: multiplicity per factor,
/// or `None` when a non-constant cofactor remains.
fn factor_over_knowns(p: &MPoly) -> Option<Vec<(usize, u32)>> {
    if p.is_zero() {
        return None;
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for (idx, f) in known_irreducibles().iter().enumerate() {
        let mut mult = 0u32;
        while let Some(q) = rest.div_exact(f) {
            rest = q;
            mult += 1;
            if rest.is_constant() {
                break;
            }
        }
        if mult > 0 {
            factors.push((idx, mult));
        }
        if rest.is_constant() {
            break;
        }
    }
    rest.is_constant().then_some(factors)
}

/// Multiplicity of `f` in `p`, capped at `max`.
fn multiplicity(p: &MPoly, f: &MPoly, max: u32) -> (u32, MPoly) {
    let mut rest = p.clone();
    let mut mult = 0;
    while mult < max {
        match rest.div_exact(f) {
            Some(q) => {
                rest = q;
                mult += 1;
            }
            None => break,
        }
    }
    (mult, rest)
}

/// GCD that first tries the known-irreducible factorization of either
/// operand; falls back to the primitive PRS.
pub fn gcd_fast(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let try_pair = |factored: &MPoly, other: &MPoly| -> Option<MPoly> {
        let facs = factor_over_knowns(factored)?;
        let mut g = MPoly::one();
        let mut rest = other.clone();
        for (idx, mult) in facs {
            let f = &known_irreducibles()[idx];
            let (m, r) = multiplicity(&rest, f, mult);
            rest = r;
            for _ in 0..m {
                g = g.mul(f);
            }
        }
        Some(g)
    };
    if let Some(g) = try_pair(a, b).or_else(|| try_pair(b, a)) {
        return normalize(&g);
    }
    gcd(a, b)
}

/// Cancel the common factor of a fraction; uses the factored fast path when
/// the denominator factors over the known irreducibles.
pub fn reduce_fraction(num: &MPoly, den: &MPoly) -> (MPoly, MPoly) {
    if num.is_zero() {
        return (MPoly::zero(), MPoly::one());
    }
    if den.is_constant() {
        return (num.clone(), den.clone());
    }
    if let Some(facs) = factor_over_knowns(den) {
        let mut num_rest = num.clone();
        let mut den_rest = den.clone();
        for (idx, mult) in facs {
            let f = &known_irreducibles()[idx];
            let (m, reduced_num) = multiplicity(&num_rest, f, mult);
            if m > 0 {
                num_rest = reduced_num;
                for _ in 0..m {
                    den_rest = den_rest.div_exact(f).expect("factor divides denominator");
                }
            }
        }
        return (num_rest, den_rest);
    }
    let g = gcd(num, den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: Var) -> MPoly {
        MPoly::var(v)
    }

    #[test]
    fn gcd_of_multiples() {
        // gcd((k1+k2)*k3, (k1+k2)*m) = k1+k2
        let s = var(Var::K1).add(&var(Var::K2));
        let f = s.mul(&var(Var::K3));
        let g = s.mul(&var(Var::M));
        assert_eq!(gcd(&f, &g), s);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = var(Var::K1).add(&MPoly::one());
        let g = var(Var::K2).add(&MPoly::from_int(2));
        assert_eq!(gcd(&f, &g), MPoly::one());
    }

    #[test]
    fn gcd_with_power_factors() {
        // gcd(K^2 * k1, K * k1^2) = K * k1 with K = k^2 + m^2
        let big_k = MPoly::omega_sq();
        let f = big_k.mul(&big_k).mul(&var(Var::K1));
        let g = big_k.mul(&var(Var::K1)).mul(&var(Var::K1));
        assert_eq!(gcd(&f, &g), big_k.mul(&var(Var::K1)));
    }

    #[test]
    fn gcd_constant_normalization() {
        let f = var(Var::K1).mul_scalar(&Scalar::from_int(6));
        let g = var(Var::K1).mul_scalar(&Scalar::from_int(4));
        assert_eq!(gcd(&f, &g), var(Var::K1));
    }
}
