//! The antilinear operator algebra on 4-component columns.
//!
//! An [`AntiOp`] is a pair `(L, A)` acting as `psi -> L psi + A psi*`. The
//! conjugation operator `C` is `(0, I)`; purely matrix operators are
//! `(L, 0)`. Composition follows
//! `(L1,A1)(L2,A2) = (L1 L2 + A1 A2*, L1 A2 + A1 L2*)`,
//! where `*` conjugates entries. Realification to 8x8 real matrices in
//! `(Re psi, Im psi)` coordinates turns antiunitarity questions into
//! orthogonality questions and makes rank and exponential computations
//! straightforward.

use crate::exactnum::{EvalPoint, ExactError, OmegaElem, Q2, Scalar};
use num_complex::Complex64;
use std::fmt;

/// 4x4 matrix over the `w`-extended coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat4 {
    pub e: [[OmegaElem; 4]; 4],
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4 {
            e: std::array::from_fn(|_| std::array::from_fn(|_| OmegaElem::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for j in 0..4 {
            m.e[j][j] = OmegaElem::one();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> OmegaElem) -> Self {
        Mat4 {
            e: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    /// Build from integer-pair entries `(re, im)` scaled by `1/den`.
    pub fn from_complex_ints(entries: [[(i64, i64); 4]; 4], den: i64) -> Self {
        Mat4::from_fn(|r, c| {
            let (re, im) = entries[r][c];
            let s = &Scalar::from_ratio(re, den) + &Scalar::i_times(im, den);
            OmegaElem::scalar(s)
        })
    }

    pub fn diag(d: [OmegaElem; 4]) -> Self {
        let mut m = Mat4::zero();
        for (j, x) in d.into_iter().enumerate() {
            m.e[j][j] = x;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(OmegaElem::is_zero)
    }

    pub fn add(&self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[r][c].add(&o.e[r][c]))
    }

    pub fn sub(&self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[r][c].sub(&o.e[r][c]))
    }

    pub fn neg(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[r][c].neg())
    }

    pub fn mul(&self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|r, c| {
            let mut acc = OmegaElem::zero();
            for j in 0..4 {
                let x = &self.e[r][j];
                let y = &o.e[j][c];
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add(&x.mul(y));
            }
            acc
        })
    }

    pub fn mul_elem(&self, x: &OmegaElem) -> Mat4 {
        if x.is_zero() {
            return Mat4::zero();
        }
        Mat4::from_fn(|r, c| self.e[r][c].mul(x))
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Mat4 {
        self.mul_elem(&OmegaElem::scalar(s.clone()))
    }

    /// Entrywise conjugation (i -> -i, variables fixed).
    pub fn conj(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[r][c].conj())
    }

    /// Entrywise conjugation with `k -> -k`.
    pub fn conj_reflect(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[r][c].conj_reflect())
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[c][r].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[c][r].conj())
    }

    /// All entries constant scalars (no variables, no `w`)?
    pub fn is_constant(&self) -> bool {
        self.constant_entries().is_some()
    }

    pub fn constant_entries(&self) -> Option<[[Scalar; 4]; 4]> {
        let mut out: [[Scalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()));
        for r in 0..4 {
            for c in 0..4 {
                let x = &self.e[r][c];
                if !x.q.is_zero() {
                    return None;
                }
                if x.p.is_zero() {
                    continue;
                }
                if !x.p.den().is_one() {
                    return None;
                }
                out[r][c] = x.p.num().constant_value()?.clone();
            }
        }
        Some(out)
    }

    pub fn eval(&self, pt: &EvalPoint) -> Result<[[Complex64; 4]; 4], ExactError> {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = self.e[r][c].eval(pt)?;
            }
        }
        Ok(out)
    }

    /// Apply to a column of field elements.
    pub fn apply(&self, v: &[OmegaElem; 4]) -> [OmegaElem; 4] {
        std::array::from_fn(|r| {
            let mut acc = OmegaElem::zero();
            for c in 0..4 {
                if self.e[r][c].is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = acc.add(&self.e[r][c].mul(&v[c]));
            }
            acc
        })
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..4 {
            write!(f, "[")?;
            for c in 0..4 {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.e[r][c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Real-linear operator `psi -> L psi + A psi*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiOp {
    pub l: Mat4,
    pub a: Mat4,
}

impl AntiOp {
    pub fn linear(l: Mat4) -> Self {
        AntiOp { l, a: Mat4::zero() }
    }

    pub fn antilinear(a: Mat4) -> Self {
        AntiOp { l: Mat4::zero(), a }
    }

    pub fn zero() -> Self {
        AntiOp::linear(Mat4::zero())
    }

    pub fn identity() -> Self {
        AntiOp::linear(Mat4::identity())
    }

    /// The conjugation involution `C`.
    pub fn conj_op() -> Self {
        AntiOp::antilinear(Mat4::identity())
    }

    pub fn is_zero(&self) -> bool {
        self.l.is_zero() && self.a.is_zero()
    }

    pub fn compose(&self, o: &AntiOp) -> AntiOp {
        AntiOp {
            l: self.l.mul(&o.l).add(&self.a.mul(&o.a.conj())),
            a: self.l.mul(&o.a).add(&self.a.mul(&o.l.conj())),
        }
    }

    pub fn add(&self, o: &AntiOp) -> AntiOp {
        AntiOp {
            l: self.l.add(&o.l),
            a: self.a.add(&o.a),
        }
    }

    pub fn sub(&self, o: &AntiOp) -> AntiOp {
        AntiOp {
            l: self.l.sub(&o.l),
            a: self.a.sub(&o.a),
        }
    }

    pub fn neg(&self) -> AntiOp {
        AntiOp {
            l: self.l.neg(),
            a: self.a.neg(),
        }
    }

    /// Left composition with multiplication by a constant: `c . (L, A)`.
    pub fn scale(&self, c: &Scalar) -> AntiOp {
        AntiOp {
            l: self.l.mul_scalar(c),
            a: self.a.mul_scalar(c),
        }
    }

    pub fn commutator(&self, o: &AntiOp) -> AntiOp {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn anticommutator(&self, o: &AntiOp) -> AntiOp {
        self.compose(o).add(&o.compose(self))
    }

    /// Apply to a constant column; the antilinear part sees the conjugated
    /// column.
    pub fn apply(&self, v: &[OmegaElem; 4]) -> [OmegaElem; 4] {
        let lv = self.l.apply(v);
        let vc: [OmegaElem; 4] = std::array::from_fn(|j| v[j].conj());
        let av = self.a.apply(&vc);
        std::array::from_fn(|j| lv[j].add(&av[j]))
    }

    /// Exact realification; requires constant scalar entries.
    pub fn realify_exact(&self) -> Option<Real8> {
        let l = self.l.constant_entries()?;
        let a = self.a.constant_entries()?;
        let mut m = Real8::zero();
        for r in 0..4 {
            for c in 0..4 {
                let (lr, li) = (&l[r][c].re, &l[r][c].im);
                let (ar, ai) = (&a[r][c].re, &a[r][c].im);
                m.e[r][c] = lr + ar; // Re block from x
                m.e[r][c + 4] = &(-li) + ai; // Re block from y
                m.e[r + 4][c] = li + ai; // Im block from x
                m.e[r + 4][c + 4] = lr - ar; // Im block from y
            }
        }
        Some(m)
    }

    /// Numeric realification at an evaluation point.
    pub fn realify_at(&self, pt: &EvalPoint) -> Result<[[f64; 8]; 8], ExactError> {
        let l = self.l.eval(pt)?;
        let a = self.a.eval(pt)?;
        let mut m = [[0.0f64; 8]; 8];
        for r in 0..4 {
            for c in 0..4 {
                m[r][c] = l[r][c].re + a[r][c].re;
                m[r][c + 4] = -l[r][c].im + a[r][c].im;
                m[r + 4][c] = l[r][c].im + a[r][c].im;
                m[r + 4][c + 4] = l[r][c].re - a[r][c].re;
            }
        }
        Ok(m)
    }

    /// True iff the exact realification is orthogonal; covers unitary and
    /// antiunitary operators uniformly. Requires constant entries.
    pub fn is_isometry(&self) -> Option<bool> {
        let m = self.realify_exact()?;
        Some(m.transpose().mul(&m).is_identity())
    }
}

/// 8x8 matrix over Q(sqrt2): the exact realification target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real8 {
    pub e: [[Q2; 8]; 8],
}

impl Real8 {
    pub fn zero() -> Self {
        Real8 {
            e: std::array::from_fn(|_| std::array::from_fn(|_| Q2::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Real8::zero();
        for j in 0..8 {
            m.e[j][j] = Q2::one();
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Real8::identity()
    }

    pub fn transpose(&self) -> Real8 {
        Real8 {
            e: std::array::from_fn(|r| std::array::from_fn(|c| self.e[c][r].clone())),
        }
    }

    pub fn mul(&self, o: &Real8) -> Real8 {
        Real8 {
            e: std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    let mut acc = Q2::zero();
                    for j in 0..8 {
                        if self.e[r][j].is_zero() || o.e[j][c].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&self.e[r][j] * &o.e[j][c]);
                    }
                    acc
                })
            }),
        }
    }

    pub fn to_f64(&self) -> [[f64; 8]; 8] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.e[r][c].to_f64()))
    }

    /// Flatten (row-major) for rank computations.
    pub fn flatten(&self) -> Vec<Q2> {
        self.e.iter().flatten().cloned().collect()
    }
}

/// Exact rank of a family of vectors over Q(sqrt2) by Gaussian elimination.
pub fn rank_q2(rows: &[Vec<Q2>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut mat: Vec<Vec<Q2>> = rows.to_vec();
    let mut rank = 0;
    let mut col = 0;
    while rank < mat.len() && col < ncols {
        // find pivot
        let pivot = (rank..mat.len()).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        mat.swap(rank, p);
        let inv = mat[rank][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            mat[rank][c] = &mat[rank][c] * &inv;
        }
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..ncols {
                    let sub = &factor * &mat[rank][c];
                    mat[r][c] = &mat[r][c] - &sub;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// numeric 8x8 helpers + matrix exponential
// ---------------------------------------------------------------------------

pub type R8 = [[f64; 8]; 8];

pub fn r8_identity() -> R8 {
    let mut m = [[0.0; 8]; 8];
    for j in 0..8 {
        m[j][j] = 1.0;
    }
    m
}

pub fn r8_mul(a: &R8, b: &R8) -> R8 {
    let mut out = [[0.0; 8]; 8];
    for r in 0..8 {
        for j in 0..8 {
            let x = a[r][j];
            if x == 0.0 {
                continue;
            }
            for c in 0..8 {
                out[r][c] += x * b[j][c];
            }
        }
    }
    out
}

pub fn r8_scale(a: &R8, s: f64) -> R8 {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

pub fn r8_add(a: &R8, b: &R8) -> R8 {
    let mut out = *a;
    for r in 0..8 {
        for c in 0..8 {
            out[r][c] += b[r][c];
        }
    }
    out
}

pub fn r8_max_diff(a: &R8, b: &R8) -> f64 {
    let mut d: f64 = 0.0;
    for r in 0..8 {
        for c in 0..8 {
            d = d.max((a[r][c] - b[r][c]).abs());
        }
    }
    d
}

fn r8_norm_inf(a: &R8) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(theta * realify(x))` by scaling and squaring with a Taylor series.
/// Requires constant (momentum-independent) entries.
pub fn expm(x: &AntiOp, theta: f64) -> R8 {
    let base = x
        .realify_exact()
        .expect("expm needs a constant-entry operator")
        .to_f64();
    let m = r8_scale(&base, theta);
    let norm = r8_norm_inf(&m);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = r8_scale(&m, 0.5f64.powi(s as i32));
    // Taylor on the scaled matrix; terms decay fast once the norm is <= 1/2
    let mut result = r8_identity();
    let mut term = r8_identity();
    for n in 1..40 {
        term = r8_scale(&r8_mul(&term, &scaled), 1.0 / n as f64);
        result = r8_add(&result, &term);
        if r8_norm_inf(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        result = r8_mul(&result, &result);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_times_identity() -> AntiOp {
        AntiOp::linear(Mat4::identity().mul_scalar(&Scalar::i()))
    }

    #[test]
    fn identity_and_conj_laws() {
        let c = AntiOp::conj_op();
        let id = AntiOp::identity();
        assert_eq!(id.compose(&c), c);
        assert_eq!(c.compose(&c), id);
    }

    #[test]
    fn conj_anticommutes_with_i() {
        // C . (i id) = (-i id) . C
        let c = AntiOp::conj_op();
        let i = i_times_identity();
        assert_eq!(c.compose(&i), i.neg().compose(&c));
    }

    #[test]
    fn realify_i_is_quarter_turn_and_orthogonal() {
        let i = i_times_identity();
        let m = i.realify_exact().unwrap();
        // block rotation: x -> -y, y -> x in each (Re, Im) plane
        assert!(m.e[0][4] == Q2::from_ratio(-1, 1) && m.e[4][0] == Q2::one());
        assert_eq!(i.is_isometry(), Some(true));
    }

    #[test]
    fn realification_is_multiplicative() {
        let c = AntiOp::conj_op();
        let i = i_times_identity();
        let prod = c.compose(&i);
        let lhs = prod.realify_exact().unwrap();
        let rhs = c.realify_exact().unwrap().mul(&i.realify_exact().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_of_identity_and_i() {
        let vs = vec![
            AntiOp::identity().realify_exact().unwrap().flatten(),
            i_times_identity().realify_exact().unwrap().flatten(),
        ];
        assert_eq!(rank_q2(&vs), 2);
    }

    #[test]
    fn expm_at_zero_is_identity() {
        let i = i_times_identity();
        let e = expm(&i, 0.0);
        assert!(r8_max_diff(&e, &r8_identity()) < 1e-15);
    }

    #[test]
    fn expm_additivity() {
        let i = i_times_identity();
        let a = expm(&i, 0.7);
        let b = expm(&i, 1.1);
        let ab = r8_mul(&a, &b);
        let direct = expm(&i, 1.8);
        assert!(r8_max_diff(&ab, &direct) < 1e-10);
    }
}
