//! Momentum-space differential-operator algebra and the Poincare generator
//! sets for the FW equation.
//!
//! Operators are finite sums of terms
//!     `matrix  .  d^alpha  .  KR^kappa`
//! with `matrix` a 4x4 array of exact field elements, `alpha` a derivative
//! monomial in (k1, k2, k3, t), and `KR` the momentum-space image of complex
//! conjugation, `a(k) -> a*(-k)`. Rewrite rules bring every product into
//! this normal form:
//!     `KR f = cr(f) KR`,  `KR d_kj = -d_kj KR`,  `KR d_t = d_t KR`,
//!     `KR M = M~ KR`,     `KR KR = 1`,
//! where `cr` conjugates coefficients and reflects `k -> -k`. Derivatives
//! move right of coefficients by the Leibniz rule. Like terms merge, zero
//! terms drop, and equality of normal forms is exact.
//!
//! The momentum dictionary is fixed by the plane-wave phase convention
//! `exp(i k x)` for the spatial dependence of the negative-frequency branch:
//! `d_n -> i k_n`, `x0 -> t`, `w(-laplace) -> w(k)`. The coordinate operator
//! appearing in the generators is the covariant component, which closure
//! forces to `x_l -> -i d/dk_l` (the contravariant coordinate maps to
//! `+i d/dk_l`); the sign is part of the convention search.

use crate::exactnum::{EvalPoint, OmegaElem, Scalar, Var};
use crate::ops4::{AntiOp, Mat4};
use crate::report::Check;
use crate::spinsets::{build_spin, SpinKind, SpinTriple};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymdiffError {
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("casimir did not reduce to a constant matrix: {0}")]
    NonScalarCasimir(String),
    #[error("no convention tuple passes invariance and closure:\n{0}")]
    ConventionUnresolvable(String),
}

/// Derivative monomial over (k1, k2, k3, t).
pub type Deriv = [u8; 4];

const DERIV_VARS: [Var; 4] = [Var::K1, Var::K2, Var::K3, Var::T];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermKey {
    pub kr: bool,
    pub deriv: Deriv,
}

/// Operator in normal form: map from (conjugation flag, derivative monomial)
/// to the matrix coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOp {
    pub terms: BTreeMap<TermKey, Mat4>,
}

fn binom(n: u8, k: u8) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let mut acc = 1i64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn from_mat(m: Mat4) -> Self {
        let mut op = DiffOp::zero();
        op.insert(TermKey { kr: false, deriv: [0; 4] }, m);
        op
    }

    /// Multiplication operator `f * I4`.
    pub fn from_elem(f: OmegaElem) -> Self {
        DiffOp::from_mat(Mat4::identity().mul_elem(&f))
    }

    pub fn identity() -> Self {
        DiffOp::from_mat(Mat4::identity())
    }

    /// A single derivative `d/dk_j` (j = 0,1,2) or `d/dt` (j = 3).
    pub fn deriv(j: usize) -> Self {
        let mut d = [0u8; 4];
        d[j] = 1;
        let mut op = DiffOp::zero();
        op.insert(TermKey { kr: false, deriv: d }, Mat4::identity());
        op
    }

    /// The conjugate-reflect symbol.
    pub fn kr() -> Self {
        let mut op = DiffOp::zero();
        op.insert(TermKey { kr: true, deriv: [0; 4] }, Mat4::identity());
        op
    }

    /// Image of an antilinear matrix operator: `L + A . KR`.
    pub fn from_antiop(x: &AntiOp) -> Self {
        let mut op = DiffOp::zero();
        op.insert(TermKey { kr: false, deriv: [0; 4] }, x.l.clone());
        op.insert(TermKey { kr: true, deriv: [0; 4] }, x.a.clone());
        op
    }

    fn insert(&mut self, key: TermKey, m: Mat4) {
        if m.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(m);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&m);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, m) in &o.terms {
            out.insert(*k, m.clone());
        }
        out
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|(k, m)| (*k, m.neg())).collect(),
        }
    }

    /// Left multiplication by a k-function (a multiplication operator).
    pub fn scale_elem(&self, f: &OmegaElem) -> DiffOp {
        let mut out = DiffOp::zero();
        for (k, m) in &self.terms {
            out.insert(*k, m.mul_elem(f));
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        self.scale_elem(&OmegaElem::scalar(s.clone()))
    }

    pub fn compose(&self, o: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (k1, m1) in &self.terms {
            for (k2, m2) in &o.terms {
                compose_terms(&mut out, k1, m1, k2, m2);
            }
        }
        out
    }

    pub fn commutator(&self, o: &DiffOp) -> DiffOp {
        self.compose(o).sub(&o.compose(self))
    }

    /// Apply to `f(k, t) * v` with `v` a constant column; derivative terms
    /// act on `f`, the KR flag sends `f` to its conjugate-reflection and
    /// conjugates `v`.
    pub fn apply_to_column(&self, f: &OmegaElem, v: &[OmegaElem; 4]) -> [OmegaElem; 4] {
        let mut out: [OmegaElem; 4] = std::array::from_fn(|_| OmegaElem::zero());
        for (key, m) in &self.terms {
            let (mut g, col): (OmegaElem, [OmegaElem; 4]) = if key.kr {
                (f.conj_reflect(), std::array::from_fn(|j| v[j].conj()))
            } else {
                (f.clone(), v.clone())
            };
            for (j, &ord) in key.deriv.iter().enumerate() {
                for _ in 0..ord {
                    g = g.differentiate(DERIV_VARS[j]);
                }
            }
            let applied = m.apply(&std::array::from_fn(|j| g.mul(&col[j])));
            for j in 0..4 {
                out[j] = out[j].add(&applied[j]);
            }
        }
        out
    }

    /// Constant matrix content when the operator is a pure matrix term.
    pub fn as_pure_matrix(&self) -> Option<&Mat4> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, m) = self.terms.iter().next()?;
        if *k == (TermKey { kr: false, deriv: [0; 4] }) {
            Some(m)
        } else {
            None
        }
    }
}

/// One term-pair product, normalized and merged into `out`.
fn compose_terms(out: &mut DiffOp, k1: &TermKey, m1: &Mat4, k2: &TermKey, m2: &Mat4) {
    // move KR^kappa1 through m2 and d^alpha2
    let m2_eff = if k1.kr { m2.conj_reflect() } else { m2.clone() };
    let mut sign_neg = false;
    if k1.kr {
        let spatial: u8 = k2.deriv[0] + k2.deriv[1] + k2.deriv[2];
        sign_neg = spatial % 2 == 1;
    }
    let kr_out = k1.kr ^ k2.kr;

    // Leibniz: d^alpha1 . M = sum_beta C(alpha1, beta) (d^(alpha1-beta) M) d^beta
    let alpha = k1.deriv;
    let mut betas: Vec<(Deriv, i64)> = vec![([0; 4], 1)];
    for (j, &aj) in alpha.iter().enumerate() {
        if aj == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(betas.len() * (aj as usize + 1));
        for (b, c) in &betas {
            for bj in 0..=aj {
                let mut nb = *b;
                nb[j] = bj;
                next.push((nb, c * binom(aj, bj)));
            }
        }
        betas = next;
    }

    for (beta, coeff) in betas {
        // matrix factor: m1 * d^(alpha-beta)(m2_eff)
        let mut dm = m2_eff.clone();
        let mut vanished = false;
        for (j, (&aj, &bj)) in alpha.iter().zip(beta.iter()).enumerate() {
            for _ in 0..(aj - bj) {
                dm = Mat4::from_fn(|r, c| dm.e[r][c].differentiate(DERIV_VARS[j]));
                if dm.is_zero() {
                    vanished = true;
                    break;
                }
            }
            if vanished {
                break;
            }
        }
        if vanished {
            continue;
        }
        let mut factor = Scalar::from_int(coeff);
        if sign_neg {
            factor = -&factor;
        }
        let matrix = m1.mul(&dm).mul_scalar(&factor);
        let deriv: Deriv = std::array::from_fn(|j| beta[j] + k2.deriv[j]);
        out.insert(TermKey { kr: kr_out, deriv }, matrix);
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, m) in &self.terms {
            if !first {
                writeln!(f, "+")?;
            }
            first = false;
            let mut head = String::new();
            for (j, &ord) in k.deriv.iter().enumerate() {
                if ord > 0 {
                    let name = ["dk1", "dk2", "dk3", "dt"][j];
                    if ord == 1 {
                        head.push_str(&format!(" {name}"));
                    } else {
                        head.push_str(&format!(" {name}^{ord}"));
                    }
                }
            }
            if k.kr {
                head.push_str(" KR");
            }
            writeln!(f, "term{}:", head)?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// generator construction
// ---------------------------------------------------------------------------

/// Which spin parts enter the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Fermi,
    BoseCartesian,
    BoseCyclic,
    /// No spin parts: the shared orbital generators.
    Orbital,
}

impl RepKind {
    pub fn name(self) -> &'static str {
        match self {
            RepKind::Fermi => "fermi",
            RepKind::BoseCartesian => "bose_cartesian",
            RepKind::BoseCyclic => "bose_cyclic",
            RepKind::Orbital => "orbital",
        }
    }

    fn spin(self) -> Option<SpinTriple> {
        match self {
            RepKind::Fermi => Some(build_spin(SpinKind::Fermi)),
            RepKind::BoseCartesian => Some(build_spin(SpinKind::CartesianBoson)),
            RepKind::BoseCyclic => Some(build_spin(SpinKind::CyclicBoson)),
            RepKind::Orbital => None,
        }
    }
}

/// Boost brace ordering for the product of the coordinate and the frequency
/// symbols, which do not commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraceOrder {
    /// `x_k . w` (frequency first, then coordinate).
    XThenOmega,
    /// `w . x_k`.
    OmegaThenX,
}

impl BraceOrder {
    pub fn name(self) -> &'static str {
        match self {
            BraceOrder::XThenOmega => "x*w",
            BraceOrder::OmegaThenX => "w*x",
        }
    }
}

/// Convention tuple for the generator transcription.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    /// `x_l -> coord_sign * i d/dk_l`.
    pub coord_sign: i8,
    /// Sign on the whole boost brace `i g0 { ... }`.
    pub brace_sign: i8,
    pub ordering: BraceOrder,
    /// `eps^{0123}` for the Lubanski-Pauli vector.
    pub eps_sign: i8,
}

impl Conventions {
    /// The tuple the automatic search resolves to.
    pub fn resolved() -> Self {
        Conventions {
            coord_sign: -1,
            brace_sign: 1,
            ordering: BraceOrder::XThenOmega,
            eps_sign: 1,
        }
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("conv.coord_sign".into(), format!("{:+}", self.coord_sign));
        m.insert("conv.brace_sign".into(), format!("{:+}", self.brace_sign));
        m.insert("conv.ordering".into(), self.ordering.name().into());
        m.insert("conv.eps_sign".into(), format!("{:+}", self.eps_sign));
        m
    }
}

/// The ten generators of one representation, indexed the covariant way:
/// `p[mu]` and `j[(mu, nu)]` with `mu < nu`.
pub struct GeneratorSet {
    pub rep: RepKind,
    pub conv: Conventions,
    pub p: [DiffOp; 4],
    pub j: BTreeMap<(usize, usize), DiffOp>,
}

impl GeneratorSet {
    pub fn j_signed(&self, mu: usize, nu: usize) -> DiffOp {
        if mu == nu {
            return DiffOp::zero();
        }
        if mu < nu {
            self.j[&(mu, nu)].clone()
        } else {
            self.j[&(nu, mu)].neg()
        }
    }

    /// (label, generator) pairs in a fixed order.
    pub fn labeled(&self) -> Vec<(String, &DiffOp)> {
        let mut out = Vec::with_capacity(10);
        for mu in 0..4 {
            out.push((format!("p{mu}"), &self.p[mu]));
        }
        for (pair, op) in &self.j {
            out.push((format!("j{}{}", pair.0, pair.1), op));
        }
        out
    }
}

/// The FW equation operator `D = d_t + i g0 w`.
pub fn build_d() -> DiffOp {
    let h = crate::spinsets::fw_hamiltonian();
    DiffOp::deriv(3).add(&DiffOp::from_antiop(&h))
}

fn mult_ik(n: usize) -> DiffOp {
    DiffOp::from_elem(OmegaElem::i().mul(&OmegaElem::var(Var::MOMENTA[n])))
}

/// Coordinate operator `x_l` under the dictionary, with the convention sign.
fn coord_op(l: usize, conv: &Conventions) -> DiffOp {
    let s = if conv.coord_sign >= 0 { Scalar::i() } else { -&Scalar::i() };
    DiffOp::deriv(l).scale(&s)
}

/// Spin matrix `s_{ln}` (l, n in 1..=3, l != n) of a triple, as a DiffOp.
fn spin_ln(sp: &SpinTriple, l: usize, n: usize) -> DiffOp {
    // s1 = s_{23}, s2 = s_{31}, s3 = s_{12}
    let (idx, sign) = match (l, n) {
        (2, 3) => (0, 1),
        (3, 2) => (0, -1),
        (3, 1) => (1, 1),
        (1, 3) => (1, -1),
        (1, 2) => (2, 1),
        (2, 1) => (2, -1),
        _ => unreachable!("spin component indices"),
    };
    let op = DiffOp::from_antiop(&sp.comps[idx]);
    if sign < 0 {
        op.neg()
    } else {
        op
    }
}

/// `p0 = -i g0 w`.
fn p0() -> DiffOp {
    let g0 = crate::cliffords::gamma0();
    let minus_i_omega = OmegaElem::i().neg().mul(&OmegaElem::omega());
    DiffOp::from_mat(g0.l.mul_elem(&minus_i_omega))
}

/// Rotation generator `j_{ln} = x_l d_n - x_n d_l + s_{ln}`.
fn rotation(l: usize, n: usize, conv: &Conventions, spin: Option<&SpinTriple>) -> DiffOp {
    let orbital = coord_op(l - 1, conv)
        .compose(&mult_ik(n - 1))
        .sub(&coord_op(n - 1, conv).compose(&mult_ik(l - 1)));
    match spin {
        Some(sp) => orbital.add(&spin_ln(sp, l, n)),
        None => orbital,
    }
}

/// Boost generator
/// `j_{0k} = x0 d_k + sigma i g0 { x_k w + d_k/(2w) + (s x d)_k/(w+m) }`.
fn boost(k: usize, conv: &Conventions, spin: Option<&SpinTriple>) -> DiffOp {
    let t_term = mult_ik(k - 1).scale_elem(&OmegaElem::var(Var::T));

    let omega = DiffOp::from_elem(OmegaElem::omega());
    let xk = coord_op(k - 1, conv);
    let xw = match conv.ordering {
        BraceOrder::XThenOmega => xk.compose(&omega),
        BraceOrder::OmegaThenX => omega.compose(&xk),
    };

    let half_inv = DiffOp::from_elem(
        OmegaElem::i()
            .mul(&OmegaElem::var(Var::MOMENTA[k - 1]))
            .mul(&OmegaElem::half_inv_omega()),
    );

    let mut brace = xw.add(&half_inv);
    if let Some(sp) = spin {
        // (s x d)_k = eps_{kab} s^a d_b with d_b -> i k_b
        let inv_wm = OmegaElem::inv_omega_plus_m();
        for (a, b, sign) in cross_indices(k) {
            let s_a = DiffOp::from_antiop(&sp.comps[a - 1]);
            let factor = OmegaElem::i()
                .mul(&OmegaElem::var(Var::MOMENTA[b - 1]))
                .mul(&inv_wm);
            let term = s_a.compose(&DiffOp::from_elem(factor));
            brace = if sign > 0 { brace.add(&term) } else { brace.sub(&term) };
        }
    }

    let i_g0 = DiffOp::from_mat(crate::cliffords::gamma0().l.mul_scalar(&Scalar::i()));
    let mut second = i_g0.compose(&brace);
    if conv.brace_sign < 0 {
        second = second.neg();
    }
    t_term.add(&second)
}

/// Nonzero `eps_{kab}` entries for fixed `k`.
fn cross_indices(k: usize) -> [(usize, usize, i8); 2] {
    match k {
        1 => [(2, 3, 1), (3, 2, -1)],
        2 => [(3, 1, 1), (1, 3, -1)],
        3 => [(1, 2, 1), (2, 1, -1)],
        _ => unreachable!(),
    }
}

/// Build the ten generators of a representation under a convention tuple.
pub fn build_poincare(rep: RepKind, conv: &Conventions) -> GeneratorSet {
    let spin = rep.spin();
    let p = [p0(), mult_ik(0), mult_ik(1), mult_ik(2)];
    let mut j = BTreeMap::new();
    j.insert((1, 2), rotation(1, 2, conv, spin.as_ref()));
    j.insert((1, 3), rotation(1, 3, conv, spin.as_ref()));
    j.insert((2, 3), rotation(2, 3, conv, spin.as_ref()));
    for k in 1..=3 {
        j.insert((0, k), boost(k, conv, spin.as_ref()));
    }
    GeneratorSet { rep, conv: *conv, p, j }
}

/// The three spin matrices of a representation as standalone operators.
pub fn spin_only_ops(rep: RepKind) -> Vec<(String, DiffOp)> {
    match rep.spin() {
        None => Vec::new(),
        Some(sp) => (0..3)
            .map(|j| (format!("s{}", j + 1), DiffOp::from_antiop(&sp.comps[j])))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

fn residual_summary(x: &DiffOp) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        format!("{} residual term(s)", x.terms.len())
    }
}

/// `[D, q] = 0` for every generator in the set.
pub fn verify_invariance(set: &GeneratorSet) -> Vec<Check> {
    let d = build_d();
    let rep = set.rep.name();
    set.labeled()
        .into_iter()
        .map(|(label, q)| {
            let comm = d.commutator(q);
            let pass = comm.is_zero();
            Check::new(
                format!("poincare.{rep}.inv.{label}"),
                format!("[D, {label}] = 0"),
                "0",
                residual_summary(&comm),
                pass,
            )
        })
        .collect()
}

/// `[D, s] = 0` for standalone spin parts.
pub fn verify_spin_invariance(rep: RepKind) -> Vec<Check> {
    let d = build_d();
    spin_only_ops(rep)
        .into_iter()
        .map(|(label, q)| {
            let comm = d.commutator(&q);
            let pass = comm.is_zero();
            Check::new(
                format!("poincare.{}.inv.spin.{label}", rep.name()),
                format!("[D, {}-spin {label}] = 0", rep.name()),
                "0",
                residual_summary(&comm),
                pass,
            )
        })
        .collect()
}

const METRIC: [i64; 4] = [1, -1, -1, -1];

fn metric(mu: usize, nu: usize) -> i64 {
    if mu == nu {
        METRIC[mu]
    } else {
        0
    }
}

/// Expected `[j_{mu nu}, p_sigma]` under global sign `g`.
fn expected_jp(set: &GeneratorSet, mu: usize, nu: usize, sigma: usize, g: i64) -> DiffOp {
    let mut rhs = DiffOp::zero();
    let c1 = g * metric(nu, sigma);
    if c1 != 0 {
        let t = set.p[mu].scale(&Scalar::from_int(c1));
        rhs = rhs.add(&t);
    }
    let c2 = -g * metric(mu, sigma);
    if c2 != 0 {
        rhs = rhs.add(&set.p[nu].scale(&Scalar::from_int(c2)));
    }
    rhs
}

/// Expected `[j_{mu nu}, j_{rho sigma}]` under global sign `g`.
fn expected_jj(
    set: &GeneratorSet,
    (mu, nu): (usize, usize),
    (rho, sigma): (usize, usize),
    g: i64,
) -> DiffOp {
    let mut rhs = DiffOp::zero();
    let contributions = [
        (metric(nu, rho), (mu, sigma)),
        (metric(mu, sigma), (nu, rho)),
        (-metric(mu, rho), (nu, sigma)),
        (-metric(nu, sigma), (mu, rho)),
    ];
    for (c, (a, b)) in contributions {
        let c = c * g;
        if c == 0 || a == b {
            continue;
        }
        rhs = rhs.add(&set.j_signed(a, b).scale(&Scalar::from_int(c)));
    }
    rhs
}

/// Full closure check. The global sign is fixed from `[j_{12}, p_1]` and
/// then applied uniformly; the resolved sign is returned with the checks.
pub fn verify_closure(set: &GeneratorSet) -> Result<(Vec<Check>, i64), SymdiffError> {
    let rep = set.rep.name();
    // determine the global sign
    let probe = set.j[&(1, 2)].commutator(&set.p[1]);
    let g = if probe == expected_jp(set, 1, 2, 1, 1) {
        1
    } else if probe == expected_jp(set, 1, 2, 1, -1) {
        -1
    } else {
        return Err(SymdiffError::ClosureFailure(format!(
            "[j12, p1] matches neither sign of the momentum relation; residual vs +: {}",
            residual_summary(&probe.sub(&expected_jp(set, 1, 2, 1, 1)))
        )));
    };

    let mut labeled: Vec<(String, DiffOp)> = Vec::new();
    for mu in 0..4 {
        labeled.push((format!("p{mu}"), set.p[mu].clone()));
    }
    for (pair, op) in &set.j {
        labeled.push((format!("j{}{}", pair.0, pair.1), op.clone()));
    }

    enum Kind {
        P(usize),
        J(usize, usize),
    }
    let kind = |label: &str| -> Kind {
        let b = label.as_bytes();
        if b[0] == b'p' {
            Kind::P((b[1] - b'0') as usize)
        } else {
            Kind::J((b[1] - b'0') as usize, (b[2] - b'0') as usize)
        }
    };

    let mut checks = Vec::with_capacity(45);
    for i in 0..labeled.len() {
        for jdx in (i + 1)..labeled.len() {
            let (la, qa) = &labeled[i];
            let (lb, qb) = &labeled[jdx];
            let lhs = qa.commutator(qb);
            let rhs = match (kind(la), kind(lb)) {
                (Kind::P(_), Kind::P(_)) => DiffOp::zero(),
                (Kind::J(mu, nu), Kind::P(sigma)) => expected_jp(set, mu, nu, sigma, g),
                (Kind::P(sigma), Kind::J(mu, nu)) => {
                    expected_jp(set, mu, nu, sigma, g).neg()
                }
                (Kind::J(a, b), Kind::J(c, d)) => expected_jj(set, (a, b), (c, d), g),
            };
            let diff = lhs.sub(&rhs);
            let pass = diff.is_zero();
            checks.push(Check::new(
                format!("poincare.{rep}.close.{la}.{lb}"),
                format!("[{la}, {lb}] matches the algebra (global sign {g:+})"),
                "0",
                residual_summary(&diff),
                pass,
            ));
        }
    }
    Ok((checks, g))
}

/// Result of the Casimir reduction.
pub struct CasimirReport {
    pub checks: Vec<Check>,
    /// Sign of `p^mu p_mu` relative to `+m^2`.
    pub p_squared_sign: i64,
}

/// Lubanski-Pauli vector `w^mu = (1/2) eps^{mu nu rho sigma} p_nu j_{rho sigma}`.
pub fn lubanski(set: &GeneratorSet, eps_sign: i64) -> [DiffOp; 4] {
    std::array::from_fn(|mu| {
        let mut acc = DiffOp::zero();
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let eps = eps4(mu, nu, rho, sigma);
                    if eps == 0 {
                        continue;
                    }
                    let term = set.p[nu].compose(&set.j_signed(rho, sigma));
                    let c = Scalar::from_ratio(eps * eps_sign, 2);
                    acc = acc.add(&term.scale(&c));
                }
            }
        }
        acc
    })
}

fn eps4(a: usize, b: usize, c: usize, d: usize) -> i64 {
    let idx = [a, b, c, d];
    let mut seen = [false; 4];
    for &x in &idx {
        if seen[x] {
            return 0;
        }
        seen[x] = true;
    }
    let mut perm = idx;
    let mut sign = 1i64;
    for i in 0..4 {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// `p^mu p_mu` and `w^mu w_mu`, reduced in normal form and compared against
/// the expected constant matrices; `w_0` is compared against
/// `spin . (i k)` to pin the epsilon sign.
pub fn casimirs(set: &GeneratorSet, eps_sign: i64) -> Result<CasimirReport, SymdiffError> {
    let rep = set.rep.name();
    let mut checks = Vec::new();

    // p^mu p_mu
    let mut p2 = DiffOp::zero();
    for mu in 0..4 {
        let sq = set.p[mu].compose(&set.p[mu]);
        p2 = p2.add(&sq.scale(&Scalar::from_int(METRIC[mu])));
    }
    let m2 = OmegaElem::var(Var::M).mul(&OmegaElem::var(Var::M));
    let plus = DiffOp::from_elem(m2.clone());
    let minus = DiffOp::from_elem(m2.clone().neg());
    let p_squared_sign = if p2 == plus {
        1
    } else if p2 == minus {
        -1
    } else {
        return Err(SymdiffError::NonScalarCasimir(format!(
            "p^mu p_mu is not +-m^2: {}",
            residual_summary(&p2.sub(&minus))
        )));
    };
    checks.push(Check::new(
        format!("poincare.{rep}.casimir.p2"),
        format!("p^mu p_mu = ({p_squared_sign:+}) m^2 (|p^2| = m^2, sign recorded)"),
        "+-m^2",
        format!("{p_squared_sign:+}m^2"),
        true,
    ));

    // w^mu and its square
    let w = lubanski(set, eps_sign);
    let mut w2 = DiffOp::zero();
    for mu in 0..4 {
        let sq = w[mu].compose(&w[mu]);
        w2 = w2.add(&sq.scale(&Scalar::from_int(METRIC[mu])));
    }
    let expected_mat = match set.rep {
        RepKind::Fermi => Mat4::identity().mul_elem(&m2.mul_scalar(&Scalar::from_ratio(-3, 4))),
        RepKind::BoseCartesian | RepKind::BoseCyclic => Mat4::diag([
            m2.mul_scalar(&Scalar::from_int(-2)),
            m2.mul_scalar(&Scalar::from_int(-2)),
            m2.mul_scalar(&Scalar::from_int(-2)),
            OmegaElem::zero(),
        ]),
        RepKind::Orbital => {
            return Err(SymdiffError::NonScalarCasimir(
                "spin Casimir undefined for the orbital-only set".into(),
            ))
        }
    };
    let expected = DiffOp::from_mat(expected_mat);
    let w2_pass = w2 == expected;
    if !w2_pass && w2.as_pure_matrix().is_none() {
        return Err(SymdiffError::NonScalarCasimir(format!(
            "w^mu w_mu retains non-matrix terms: {}",
            residual_summary(&w2)
        )));
    }
    checks.push(Check::new(
        format!("poincare.{rep}.casimir.w2"),
        match set.rep {
            RepKind::Fermi => "w^mu w_mu = -(3/4) m^2 I".to_string(),
            _ => "w^mu w_mu = -2 m^2 diag(1,1,1,0)".to_string(),
        },
        "expected constant matrix",
        if w2_pass {
            "expected constant matrix".into()
        } else {
            residual_summary(&w2.sub(&expected))
        },
        w2_pass,
    ));

    // w_0 = s . grad: fixes the epsilon sign
    if let Some(sp) = set.rep.spin() {
        let mut s_dot_grad = DiffOp::zero();
        for a in 0..3 {
            let ik = OmegaElem::i().mul(&OmegaElem::var(Var::MOMENTA[a]));
            s_dot_grad =
                s_dot_grad.add(&DiffOp::from_antiop(&sp.comps[a]).compose(&DiffOp::from_elem(ik)));
        }
        let pass = w[0] == s_dot_grad;
        checks.push(Check::new(
            format!("poincare.{rep}.casimir.w0"),
            format!("w_0 = s . grad with eps^0123 = {eps_sign:+}"),
            "spin . (i k)",
            if pass {
                "spin . (i k)".into()
            } else {
                residual_summary(&w[0].sub(&s_dot_grad))
            },
            pass,
        ));
    }

    Ok(CasimirReport { checks, p_squared_sign })
}

// ---------------------------------------------------------------------------
// convention search
// ---------------------------------------------------------------------------

/// Resolution of the transcription ambiguities: tries the finite candidate
/// set and accepts the tuple passing invariance, closure, and the Casimir
/// values. Returns the conventions, the closure sign, and the `p^2` sign.
pub fn resolve_conventions(rep: RepKind) -> Result<(Conventions, i64, i64), SymdiffError> {
    let mut failures = String::new();
    for coord_sign in [-1i8, 1] {
        for brace_sign in [1i8, -1] {
            for ordering in [BraceOrder::XThenOmega, BraceOrder::OmegaThenX] {
                let mut conv = Conventions {
                    coord_sign,
                    brace_sign,
                    ordering,
                    eps_sign: 1,
                };
                let set = build_poincare(rep, &conv);
                // cheap gates first
                let d = build_d();
                let inv_bad = set
                    .labeled()
                    .iter()
                    .find(|(_, q)| !d.commutator(q).is_zero())
                    .map(|(l, _)| l.clone());
                if let Some(l) = inv_bad {
                    failures.push_str(&format!(
                        "  ({coord_sign:+}, {brace_sign:+}, {}): [D, {l}] != 0\n",
                        ordering.name()
                    ));
                    continue;
                }
                let closure = match verify_closure(&set) {
                    Ok((checks, g)) => {
                        if let Some(c) = checks.iter().find(|c| !c.pass) {
                            failures.push_str(&format!(
                                "  ({coord_sign:+}, {brace_sign:+}, {}): closure fails at {}\n",
                                ordering.name(),
                                c.id
                            ));
                            continue;
                        }
                        g
                    }
                    Err(e) => {
                        failures.push_str(&format!(
                            "  ({coord_sign:+}, {brace_sign:+}, {}): {e}\n",
                            ordering.name()
                        ));
                        continue;
                    }
                };
                // epsilon sign from w_0
                let mut chosen = None;
                for eps in [1i64, -1] {
                    conv.eps_sign = eps as i8;
                    if let Ok(rep_report) = casimirs(&set, eps) {
                        if rep_report.checks.iter().all(|c| c.pass) {
                            chosen = Some((conv, closure, rep_report.p_squared_sign));
                            break;
                        }
                    }
                }
                match chosen {
                    Some(out) => return Ok(out),
                    None => failures.push_str(&format!(
                        "  ({coord_sign:+}, {brace_sign:+}, {}): casimir values fail for both eps signs\n",
                        ordering.name()
                    )),
                }
            }
        }
    }
    Err(SymdiffError::ConventionUnresolvable(failures))
}

// ---------------------------------------------------------------------------
// numeric cross-check support
// ---------------------------------------------------------------------------

/// Apply `q` to the closed-form amplitude `f * v` and evaluate at a point.
pub fn eval_applied(
    q: &DiffOp,
    f: &OmegaElem,
    v: &[OmegaElem; 4],
    at: &EvalPoint,
) -> Result<[Complex64; 4], crate::exactnum::ExactError> {
    let applied = q.apply_to_column(f, v);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for j in 0..4 {
        out[j] = applied[j].eval(at)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_elem(n: usize) -> OmegaElem {
        OmegaElem::var(Var::MOMENTA[n])
    }

    #[test]
    fn canonical_pair() {
        // [k1, i d/dk1] = -i
        let k1 = DiffOp::from_elem(k_elem(0));
        let x = DiffOp::deriv(0).scale(&Scalar::i());
        let comm = k1.commutator(&x);
        let expect = DiffOp::from_elem(OmegaElem::i().neg());
        assert_eq!(comm, expect);
    }

    #[test]
    fn time_leibniz() {
        // [d_t, t] = 1
        let dt = DiffOp::deriv(3);
        let t = DiffOp::from_elem(OmegaElem::var(Var::T));
        assert_eq!(dt.commutator(&t), DiffOp::identity());
    }

    #[test]
    fn kr_through_ik1_is_even() {
        // KR (i k1) = (i k1) KR: two sign flips cancel
        let kr = DiffOp::kr();
        let ik1 = DiffOp::from_elem(OmegaElem::i().mul(&k_elem(0)));
        assert_eq!(kr.compose(&ik1), ik1.compose(&kr));
        assert!(kr.compose(&kr).sub(&DiffOp::identity()).is_zero());
    }

    #[test]
    fn kr_anticommutes_with_k_derivative() {
        let kr = DiffOp::kr();
        let d1 = DiffOp::deriv(0);
        assert_eq!(kr.compose(&d1), d1.compose(&kr).neg());
        let dt = DiffOp::deriv(3);
        assert_eq!(kr.compose(&dt), dt.compose(&kr));
    }

    #[test]
    fn composition_is_associative_on_mixed_terms() {
        let a = DiffOp::deriv(0)
            .scale(&Scalar::i())
            .add(&DiffOp::from_elem(k_elem(1)))
            .add(&DiffOp::kr());
        let b = DiffOp::from_elem(OmegaElem::omega()).add(&DiffOp::deriv(1));
        let c = DiffOp::kr()
            .compose(&DiffOp::from_elem(k_elem(0)))
            .add(&DiffOp::deriv(3));
        let lhs = a.compose(&b).compose(&c);
        let rhs = a.compose(&b.compose(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_operator_shape() {
        let d = build_d();
        assert_eq!(d.terms.len(), 2);
        // matrix part squared: (i g0 w)^2 = -w^2
        let h = DiffOp::from_antiop(&crate::spinsets::fw_hamiltonian());
        let sq = h.compose(&h);
        let expect = DiffOp::from_elem(
            OmegaElem::omega().mul(&OmegaElem::omega()).neg(),
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn resolved_conventions_match_prediction() {
        let (conv, g, psign) = resolve_conventions(RepKind::Fermi).expect("resolvable");
        assert_eq!(conv.coord_sign, -1);
        assert_eq!(conv.brace_sign, 1);
        assert_eq!(conv.ordering, BraceOrder::XThenOmega);
        assert_eq!(conv.eps_sign, 1);
        assert_eq!(g, 1);
        assert_eq!(psign, -1);
    }

    #[test]
    fn fermi_invariance_and_closure() {
        let set = build_poincare(RepKind::Fermi, &Conventions::resolved());
        for c in verify_invariance(&set) {
            assert!(c.pass, "failed: {}", c.id);
        }
        let (checks, g) = verify_closure(&set).unwrap();
        assert_eq!(g, 1);
        assert_eq!(checks.len(), 45);
        for c in checks {
            assert!(c.pass, "failed: {}", c.id);
        }
    }

    #[test]
    fn rotation_momentum_spot_value() {
        // [j12, p1] = +p2 under the resolved covariant dictionary
        let set = build_poincare(RepKind::Fermi, &Conventions::resolved());
        let comm = set.j[&(1, 2)].commutator(&set.p[1]);
        assert_eq!(comm, set.p[2]);
    }

    #[test]
    fn fermi_casimirs() {
        let set = build_poincare(RepKind::Fermi, &Conventions::resolved());
        let rep = casimirs(&set, 1).unwrap();
        assert!(rep.checks.iter().all(|c| c.pass));
        assert_eq!(rep.p_squared_sign, -1);
    }

    #[test]
    fn orbital_set_invariance_and_closure() {
        let set = build_poincare(RepKind::Orbital, &Conventions::resolved());
        for c in verify_invariance(&set) {
            assert!(c.pass, "failed: {}", c.id);
        }
        let (checks, g) = verify_closure(&set).unwrap();
        assert_eq!(g, 1);
        assert!(checks.iter().all(|c| c.pass));
    }

    #[test]
    fn spin_only_invariance() {
        for rep in [RepKind::Fermi, RepKind::BoseCartesian, RepKind::BoseCyclic] {
            for c in verify_spin_invariance(rep) {
                assert!(c.pass, "failed: {}", c.id);
            }
        }
    }
}
