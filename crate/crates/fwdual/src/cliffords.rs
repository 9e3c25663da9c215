//! The Clifford-Dirac algebra in the standard Pauli-Dirac representation,
//! its extension by `i` and the conjugation operator `C`, and the SO(8)
//! generator family living inside the extension.
//!
//! Ort conventions, fixed once for the whole crate:
//!   gamma0 = diag(1,1,-1,-1), gamma^j off-diagonal with Pauli blocks,
//!   gamma4 = gamma0 gamma1 gamma2 gamma3,
//!   gamma5 = gamma1 gamma3 C, gamma6 = i gamma1 gamma3 C, gamma7 = i gamma0.
//! The seven orts gamma1..gamma7 obey
//! `gammaA gammaB + gammaB gammaA = -2 delta_{AB}`.

use crate::exactnum::Scalar;
use crate::ops4::{rank_q2, AntiOp, Mat4};
use crate::report::Check;

/// gamma0 = diag(1, 1, -1, -1).
pub fn gamma0() -> AntiOp {
    AntiOp::linear(Mat4::from_complex_ints(
        [
            [(1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
        ],
        1,
    ))
}

/// gamma1: sigma1 blocks.
pub fn gamma1() -> AntiOp {
    AntiOp::linear(Mat4::from_complex_ints(
        [
            [(0, 0), (0, 0), (0, 0), (1, 0)],
            [(0, 0), (0, 0), (1, 0), (0, 0)],
            [(0, 0), (-1, 0), (0, 0), (0, 0)],
            [(-1, 0), (0, 0), (0, 0), (0, 0)],
        ],
        1,
    ))
}

/// gamma2: sigma2 blocks.
pub fn gamma2() -> AntiOp {
    AntiOp::linear(Mat4::from_complex_ints(
        [
            [(0, 0), (0, 0), (0, 0), (0, -1)],
            [(0, 0), (0, 0), (0, 1), (0, 0)],
            [(0, 0), (0, 1), (0, 0), (0, 0)],
            [(0, -1), (0, 0), (0, 0), (0, 0)],
        ],
        1,
    ))
}

/// gamma3: sigma3 blocks.
pub fn gamma3() -> AntiOp {
    AntiOp::linear(Mat4::from_complex_ints(
        [
            [(0, 0), (0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
            [(-1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
        ],
        1,
    ))
}

/// gamma4 = gamma0 gamma1 gamma2 gamma3.
pub fn gamma4() -> AntiOp {
    gamma0().compose(&gamma1()).compose(&gamma2()).compose(&gamma3())
}

/// gamma5 = gamma1 gamma3 C (pure antilinear part).
pub fn gamma5() -> AntiOp {
    gamma1().compose(&gamma3()).compose(&AntiOp::conj_op())
}

/// gamma6 = i gamma1 gamma3 C.
pub fn gamma6() -> AntiOp {
    gamma5().scale(&Scalar::i())
}

/// gamma7 = i gamma0.
pub fn gamma7() -> AntiOp {
    gamma0().scale(&Scalar::i())
}

/// The seven anticommuting orts of the extended algebra, in index order.
pub fn gamma_orts() -> [AntiOp; 7] {
    [gamma1(), gamma2(), gamma3(), gamma4(), gamma5(), gamma6(), gamma7()]
}

/// All bases the extension carries, built deterministically from the
/// Pauli-Dirac gammas.
pub struct ErcdBasis {
    /// gamma1..gamma7.
    pub orts: [AntiOp; 7],
    /// 16 products of distinct gamma^mu (mu = 0..3), in index order.
    pub cd: Vec<(String, AntiOp)>,
    /// 64 elements: every CD ort composed with {1, i, C, iC}.
    pub ercd: Vec<(String, AntiOp)>,
    /// 28 generators s^{AB} (A<B<=7) and s^{A8} = gammaA/2, labeled by the
    /// index pair (a, b) with 1 <= a < b <= 8.
    pub so8: Vec<((u8, u8), AntiOp)>,
}

/// s^{AB} = [gammaA, gammaB]/4 for A,B <= 7; s^{A8} = gammaA/2.
pub fn so8_generator(a: u8, b: u8, orts: &[AntiOp; 7]) -> AntiOp {
    assert!(a >= 1 && b >= 1 && a <= 8 && b <= 8);
    if a == b {
        return AntiOp::zero();
    }
    if a > b {
        return so8_generator(b, a, orts).neg();
    }
    if b == 8 {
        orts[(a - 1) as usize].scale(&Scalar::from_ratio(1, 2))
    } else {
        let ga = &orts[(a - 1) as usize];
        let gb = &orts[(b - 1) as usize];
        ga.commutator(gb).scale(&Scalar::from_ratio(1, 4))
    }
}

pub fn build_bases() -> ErcdBasis {
    let orts = gamma_orts();
    let base = [gamma0(), gamma1(), gamma2(), gamma3()];

    let mut cd = Vec::with_capacity(16);
    for mask in 0u8..16 {
        let mut name = String::new();
        let mut op = AntiOp::identity();
        for (mu, g) in base.iter().enumerate() {
            if mask & (1 << mu) != 0 {
                name.push_str(&format!("g{mu}"));
                op = op.compose(g);
            }
        }
        if name.is_empty() {
            name.push('1');
        }
        cd.push((name, op));
    }
    cd.sort_by_key(|(name, _)| (name.len(), name.clone()));

    let mut ercd = Vec::with_capacity(64);
    let units: [(&str, AntiOp); 4] = [
        ("", AntiOp::identity()),
        ("*i", AntiOp::identity().scale(&Scalar::i())),
        ("*C", AntiOp::conj_op()),
        ("*iC", AntiOp::conj_op().scale(&Scalar::i())),
    ];
    for (name, op) in &cd {
        for (suffix, u) in &units {
            ercd.push((format!("{name}{suffix}"), op.compose(u)));
        }
    }

    let mut so8 = Vec::with_capacity(28);
    for a in 1..=8u8 {
        for b in (a + 1)..=8u8 {
            so8.push(((a, b), so8_generator(a, b, &orts)));
        }
    }

    ErcdBasis { orts, cd, ercd, so8 }
}

impl ErcdBasis {
    pub fn generator(&self, a: u8, b: u8) -> AntiOp {
        so8_generator(a, b, &self.orts)
    }
}

/// The 28 anticommutator relations (index pairs a <= b) of
/// `gammaA gammaB + gammaB gammaA = -2 delta_{AB}` plus the 7 composition
/// squares `gammaA gammaA = -1`: 35 checks total.
pub fn verify_clifford7(basis: &ErcdBasis) -> Vec<Check> {
    let minus_two = AntiOp::identity().scale(&Scalar::from_int(-2));
    let minus_one = AntiOp::identity().scale(&Scalar::from_int(-1));
    let mut checks = Vec::new();
    for a in 0..7 {
        for b in a..7 {
            let anti = basis.orts[a].anticommutator(&basis.orts[b]);
            let (expected, pass) = if a == b {
                (String::from("-2"), anti == minus_two)
            } else {
                (String::from("0"), anti.is_zero())
            };
            let got = if pass {
                expected.clone()
            } else {
                format!("residual L={} A={}", anti.l, anti.a)
            };
            checks.push(Check::new(
                format!("clifford.g{}.g{}", a + 1, b + 1),
                format!("g{} g{} + g{} g{} = {}", a + 1, b + 1, b + 1, a + 1, expected),
                expected,
                got,
                pass,
            ));
        }
    }
    for a in 0..7 {
        let sq = basis.orts[a].compose(&basis.orts[a]);
        let pass = sq == minus_one;
        checks.push(Check::new(
            format!("clifford.sq.g{}", a + 1),
            format!("g{} g{} = -1", a + 1, a + 1),
            "-1",
            if pass {
                "-1".to_string()
            } else {
                format!("residual L={} A={}", sq.l, sq.a)
            },
            pass,
        ));
    }
    checks
}

/// Real-linear rank of the realified ERCD family (64 expected) and of the
/// CD subfamily (16 expected).
pub fn span_rank(basis: &ErcdBasis) -> (usize, usize) {
    let ercd_rows: Vec<_> = basis
        .ercd
        .iter()
        .map(|(_, op)| {
            op.realify_exact()
                .expect("ERCD elements have constant entries")
                .flatten()
        })
        .collect();
    let cd_rows: Vec<_> = basis
        .cd
        .iter()
        .map(|(_, op)| op.realify_exact().unwrap().flatten())
        .collect();
    (rank_q2(&ercd_rows), rank_q2(&cd_rows))
}

/// The SO(8) structure relation for every unordered pair of the 28
/// generators:
/// `[s^{ab}, s^{cd}] = d_{ac} s^{bd} + d_{cb} s^{da} + d_{bd} s^{ac} + d_{da} s^{cb}`.
pub fn verify_so8(basis: &ErcdBasis) -> Vec<Check> {
    let mut checks = Vec::with_capacity(378);
    let d = |x: u8, y: u8| u8::from(x == y);
    for i in 0..basis.so8.len() {
        for j in (i + 1)..basis.so8.len() {
            let ((a, b), ref sab) = basis.so8[i];
            let ((c, dd), ref scd) = basis.so8[j];
            let lhs = sab.commutator(scd);
            let mut rhs = AntiOp::zero();
            if d(a, c) == 1 {
                rhs = rhs.add(&basis.generator(b, dd));
            }
            if d(c, b) == 1 {
                rhs = rhs.add(&basis.generator(dd, a));
            }
            if d(b, dd) == 1 {
                rhs = rhs.add(&basis.generator(a, c));
            }
            if d(dd, a) == 1 {
                rhs = rhs.add(&basis.generator(c, b));
            }
            let pass = lhs == rhs;
            checks.push(Check::new(
                format!("so8.s{a}{b}.s{c}{dd}"),
                format!("[s{a}{b}, s{c}{dd}] = delta-sum"),
                "structure relation".to_string(),
                if pass {
                    "structure relation".to_string()
                } else {
                    "violated".to_string()
                },
                pass,
            ));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::OmegaElem;

    #[test]
    fn gamma4_matches_block_form() {
        // gamma0 gamma1 gamma2 gamma3 = [[0, -i I2], [-i I2, 0]]
        let expect = AntiOp::linear(Mat4::from_complex_ints(
            [
                [(0, 0), (0, 0), (0, -1), (0, 0)],
                [(0, 0), (0, 0), (0, 0), (0, -1)],
                [(0, -1), (0, 0), (0, 0), (0, 0)],
                [(0, 0), (0, -1), (0, 0), (0, 0)],
            ],
            1,
        ));
        assert_eq!(gamma4(), expect);
    }

    #[test]
    fn gamma5_gamma6_antilinear_structure() {
        let g5 = gamma5();
        let g6 = gamma6();
        assert!(g5.l.is_zero() && g6.l.is_zero());
        // gamma1 gamma3 is real, so the antilinear parts must be real/imag
        assert!(!g5.a.is_zero());
        let g7 = gamma7();
        assert!(g7.a.is_zero());
    }

    #[test]
    fn clifford_squares() {
        // examples: gamma1^2 = -1 (as {g1,g1} = -2), {g1, g5} = 0, {g5, g6} = 0
        let minus_two = AntiOp::identity().scale(&Scalar::from_int(-2));
        assert_eq!(gamma1().anticommutator(&gamma1()), minus_two);
        assert!(gamma1().anticommutator(&gamma5()).is_zero());
        assert!(gamma5().anticommutator(&gamma6()).is_zero());
        assert_eq!(gamma5().compose(&gamma5()), AntiOp::identity().scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn full_clifford_report_passes() {
        let basis = build_bases();
        let checks = verify_clifford7(&basis);
        assert_eq!(checks.len(), 35);
        assert!(checks.iter().all(|c| c.pass));
    }

    #[test]
    fn ranks_are_64_and_16() {
        let basis = build_bases();
        let (ercd, cd) = span_rank(&basis);
        assert_eq!(ercd, 64);
        assert_eq!(cd, 16);
    }

    #[test]
    fn so8_pairs_all_hold() {
        let basis = build_bases();
        let checks = verify_so8(&basis);
        assert_eq!(checks.len(), 378);
        assert!(checks.iter().all(|c| c.pass));
    }

    #[test]
    fn so8_spot_values() {
        let basis = build_bases();
        // [s12, s34] = 0: all deltas vanish
        assert!(basis.generator(1, 2).commutator(&basis.generator(3, 4)).is_zero());
        // [s12, s23] = s31 = -s13
        assert_eq!(
            basis.generator(1, 2).commutator(&basis.generator(2, 3)),
            basis.generator(3, 1)
        );
        // [s18, s28] = s12, fixed by the b=d=8 delta
        assert_eq!(
            basis.generator(1, 8).commutator(&basis.generator(2, 8)),
            basis.generator(1, 2)
        );
        // s18 = gamma1/2
        assert_eq!(basis.generator(1, 8), gamma1().scale(&Scalar::from_ratio(1, 2)));
    }

    #[test]
    fn sab_equals_quarter_commutator_independently() {
        // independent recomputation of each s^{AB}, A,B <= 6
        let basis = build_bases();
        for a in 1..=6u8 {
            for b in (a + 1)..=6u8 {
                let ga = &basis.orts[(a - 1) as usize];
                let gb = &basis.orts[(b - 1) as usize];
                let direct = ga
                    .compose(gb)
                    .sub(&gb.compose(ga))
                    .scale(&Scalar::from_ratio(1, 4));
                assert_eq!(basis.generator(a, b), direct);
            }
        }
    }

    #[test]
    fn antilinear_orts_anticommute_with_i() {
        let i_id = AntiOp::identity().scale(&Scalar::i());
        for g in [gamma5(), gamma6()] {
            assert!(g.compose(&i_id).add(&i_id.compose(&g)).is_zero());
        }
    }

    #[test]
    fn rank_of_i_and_identity_is_two() {
        let rows = vec![
            AntiOp::identity().realify_exact().unwrap().flatten(),
            AntiOp::identity()
                .scale(&Scalar::i())
                .realify_exact()
                .unwrap()
                .flatten(),
        ];
        assert_eq!(rank_q2(&rows), 2);
    }

    #[test]
    fn gamma_squares_check_block_value() {
        // (gamma4)^2 = -I as an OmegaElem identity
        let sq = gamma4().compose(&gamma4());
        assert_eq!(sq.l.e[0][0], OmegaElem::from_int(-1));
        assert!(sq.a.is_zero());
    }
}
