//! Fundamental plane-wave solutions of the FW equation in the fermionic,
//! Cartesian bosonic, and cyclic bosonic bases, their eigenvalue labels,
//! and the momentum-space FW map to Pauli-Dirac spinors.
//!
//! A branch is a labeled pair (frequency sign, constant ort): the state
//! `exp(s i (w t - k.x)) * ort` with `s` the frequency sign. The FW equation
//! ties the frequency to the `g0` eigenvalue of the ort: `g0 ort = -s ort`.
//!
//! The FW map acts per frequency branch as the unitary matrix
//! `V_branch = N ((w + m) I - phi gamma.k)`, `N^-2 = 2w(w + m)`,
//! with `phi = -s` the physical momentum sign of the branch. On the
//! negative-frequency orts this reproduces the textbook spinor columns
//! `N ((w+m) d ; (sigma.k) d)`, and on the positive-frequency orts
//! `N ((sigma.k) d ; (w+m) d)`, matching the printed forms with a plus sign
//! in both blocks.

use crate::cliffords::{gamma0, gamma1, gamma2, gamma3};
use crate::exactnum::{EvalPoint, OmegaElem, Scalar, Var};
use crate::ops4::{AntiOp, Mat4};
use crate::spinsets::{build_spin, cartesian_ort, cyclic_orts, SpinKind};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionsError {
    #[error("unknown branch label {0} for family {1}")]
    UnknownLabel(String, &'static str),
    #[error("convention mismatch: {0}")]
    ConventionMismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Fermi,
    BoseCartesian,
    BoseCyclic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Fermi => "fermi",
            Family::BoseCartesian => "bose_cartesian",
            Family::BoseCyclic => "bose_cyclic",
        }
    }

    pub const ALL: [Family; 3] = [Family::Fermi, Family::BoseCartesian, Family::BoseCyclic];
}

/// One labeled fundamental solution.
#[derive(Clone, Debug)]
pub struct BranchState {
    pub family: Family,
    pub index: usize,
    /// Quantum-number label: (charge sign, spin) for fermions, the spin
    /// projection label for bosons, the cyclic ort name for the cyclic set.
    pub label: String,
    /// Frequency sign `s` in the phase `exp(s i (w t - k.x))`.
    pub freq: i8,
    pub ort: [OmegaElem; 4],
}

impl BranchState {
    /// Physical momentum carried by the branch, in units of the label `k`.
    pub fn momentum_sign(&self) -> i8 {
        -self.freq
    }
}

fn fermi_labels() -> [&'static str; 4] {
    ["e1=-,e2=+", "e1=-,e2=-", "e1=+,e2=+", "e1=+,e2=-"]
}

fn cartesian_labels() -> [&'static str; 4] {
    ["eps=+1", "eps=0", "eps=-1", "eps=0'"]
}

fn cyclic_labels() -> [&'static str; 4] {
    ["C1", "C2", "C3", "C4"]
}

/// The frequency sign forced by the FW equation: `s = -(g0 eigenvalue)`.
fn freq_for_ort(ort: &[OmegaElem; 4]) -> i8 {
    let g0 = gamma0();
    let image = g0.apply(ort);
    let plus = image == *ort;
    if plus {
        -1
    } else {
        1
    }
}

pub fn fundamental(family: Family, index: usize) -> Result<BranchState, SolutionsError> {
    if index >= 4 {
        return Err(SolutionsError::UnknownLabel(
            index.to_string(),
            family.name(),
        ));
    }
    let (label, ort) = match family {
        Family::Fermi => (fermi_labels()[index].to_string(), cartesian_ort(index)),
        Family::BoseCartesian => (cartesian_labels()[index].to_string(), cartesian_ort(index)),
        Family::BoseCyclic => {
            let orts = cyclic_orts();
            (cyclic_labels()[index].to_string(), orts[index].clone())
        }
    };
    let freq = freq_for_ort(&ort);
    Ok(BranchState {
        family,
        index,
        label,
        freq,
        ort,
    })
}

pub fn all_branches(family: Family) -> Vec<BranchState> {
    (0..4).map(|j| fundamental(family, j).unwrap()).collect()
}

/// Substitute the branch into `(d_t + i g0 w)`: the residual column is
/// `(s i w) ort + i w g0 ort`, which must vanish exactly.
pub fn check_satisfies_fw(b: &BranchState) -> bool {
    let i_omega = OmegaElem::i().mul(&OmegaElem::omega());
    let g0 = gamma0();
    let g0_ort = g0.apply(&b.ort);
    let s = OmegaElem::from_int(b.freq as i64);
    (0..4).all(|j| {
        let time_part = s.mul(&i_omega).mul(&b.ort[j]);
        let ham_part = i_omega.mul(&g0_ort[j]);
        time_part.add(&ham_part).is_zero()
    })
}

/// Exact rational eigenvalue of a (Hermitian, constant) operator on a
/// branch ort; `None` when the ort is not an eigenvector.
pub fn exact_eigenvalue(op: &AntiOp, ort: &[OmegaElem; 4], candidates: &[Scalar]) -> Option<Scalar> {
    let image = op.apply(ort);
    candidates.iter().find_map(|lambda| {
        let matches = (0..4).all(|j| image[j] == ort[j].mul_scalar(lambda));
        matches.then(|| lambda.clone())
    })
}

/// Hermitian spin projection operator of the family (`i s3`).
pub fn hermitian_spin3(family: Family) -> AntiOp {
    let kind = match family {
        Family::Fermi => SpinKind::Fermi,
        Family::BoseCartesian => SpinKind::CartesianBoson,
        Family::BoseCyclic => SpinKind::CyclicBoson,
    };
    build_spin(kind).comps[2].scale(&Scalar::i())
}

/// Hermitian helicity along the 3-axis for the branch: `i (s . khat)` with
/// `khat` the direction of the branch's physical momentum `(0, 0, k3)`,
/// k3 > 0.
pub fn hermitian_helicity_axis3(b: &BranchState) -> AntiOp {
    let spin3 = hermitian_spin3(b.family);
    if b.momentum_sign() >= 0 {
        spin3
    } else {
        spin3.neg()
    }
}

/// Expected labels for the suite tables.
pub struct BranchExpectation {
    pub charge_sign: Option<i64>,
    pub spin3: Scalar,
    pub note: Option<&'static str>,
}

pub fn expectation(family: Family, index: usize) -> BranchExpectation {
    match family {
        Family::Fermi => {
            let charge = [1, 1, -1, -1][index];
            let spin = [
                Scalar::from_ratio(1, 2),
                Scalar::from_ratio(-1, 2),
                Scalar::from_ratio(1, 2),
                Scalar::from_ratio(-1, 2),
            ][index]
                .clone();
            BranchExpectation {
                charge_sign: Some(charge),
                spin3: spin,
                note: None,
            }
        }
        Family::BoseCartesian => {
            // literal diagonal of i st3 is (1, 0, 1, 0); the printed label
            // -1 for the third ort is the frequency-branch convention
            let spin = [1i64, 0, 1, 0][index];
            BranchExpectation {
                charge_sign: None,
                spin3: Scalar::from_int(spin),
                note: (index == 2).then_some(
                    "label eps=-1 refers to the positive-frequency branch; the literal eigenvalue is +1",
                ),
            }
        }
        Family::BoseCyclic => {
            let spin = [1i64, 0, -1, 0][index];
            BranchExpectation {
                charge_sign: None,
                spin3: Scalar::from_int(spin),
                note: None,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// FW map
// ---------------------------------------------------------------------------

/// `sum_j gamma^j k_j` (linear parts only; the spatial gammas are linear).
pub fn gamma_dot_k() -> Mat4 {
    let gs = [gamma1().l, gamma2().l, gamma3().l];
    let mut acc = Mat4::zero();
    for (j, g) in gs.iter().enumerate() {
        acc = acc.add(&g.mul_elem(&OmegaElem::var(Var::MOMENTA[j])));
    }
    acc
}

/// A matrix with a positive scalar prefactor `1/sqrt(inv_scale_sq)` kept
/// symbolic; the square of the scale stays in the exact field.
#[derive(Clone, Debug)]
pub struct ScaledMat {
    pub inv_scale_sq: OmegaElem,
    pub mat: Mat4,
}

impl ScaledMat {
    /// Exact unitarity: `mat mat^dagger = inv_scale_sq * I`.
    pub fn is_unitary(&self) -> bool {
        let prod = self.mat.mul(&self.mat.adjoint());
        let expected = Mat4::identity().mul_elem(&self.inv_scale_sq);
        prod == expected && {
            let prod2 = self.mat.adjoint().mul(&self.mat);
            prod2 == expected
        }
    }

    pub fn eval_apply(
        &self,
        v: &[OmegaElem; 4],
        at: &EvalPoint,
    ) -> Result<[Complex64; 4], crate::exactnum::ExactError> {
        let col = self.mat.apply(v);
        let scale = 1.0 / self.inv_scale_sq.eval(at)?.re.sqrt();
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for j in 0..4 {
            out[j] = col[j].eval(at)? * scale;
        }
        Ok(out)
    }
}

/// Per-branch FW matrix `V_branch = N ((w + m) I - phi gamma.k)` with
/// `phi` the branch's physical momentum sign.
pub fn fw_matrix(freq: i8) -> ScaledMat {
    let wm = OmegaElem::omega().add(&OmegaElem::var(Var::M));
    let base = Mat4::identity().mul_elem(&wm);
    let gk = gamma_dot_k();
    let mat = if freq < 0 {
        // phi = +1
        base.sub(&gk)
    } else {
        base.add(&gk)
    };
    ScaledMat {
        inv_scale_sq: OmegaElem::two_omega_omega_plus_m(),
        mat,
    }
}

/// Unscaled Pauli-Dirac image of a branch ort (the normalization `N`
/// cancels in every relation checked here).
pub fn pd_spinor_unscaled(b: &BranchState) -> [OmegaElem; 4] {
    fw_matrix(b.freq).mat.apply(&b.ort)
}

/// Momentum-space Dirac Hamiltonian `H(p) = g0 (gamma.p + m)` at the
/// branch momentum `p = phi k`.
pub fn dirac_hamiltonian(momentum_sign: i8) -> Mat4 {
    let gk = gamma_dot_k();
    let gk_signed = if momentum_sign >= 0 { gk } else { gk.neg() };
    let m_id = Mat4::identity().mul_elem(&OmegaElem::var(Var::M));
    gamma0().l.mul(&gk_signed.add(&m_id))
}

/// `H(phi k) v = E v` with `E = -s w`: +w on the negative-frequency branch,
/// -w on the positive-frequency branch. Exact in the field.
pub fn dirac_check(b: &BranchState) -> bool {
    let v = pd_spinor_unscaled(b);
    let h = dirac_hamiltonian(b.momentum_sign());
    let hv = h.apply(&v);
    let energy = OmegaElem::omega().mul(&OmegaElem::from_int(-(b.freq as i64)));
    (0..4).all(|j| hv[j] == energy.mul(&v[j]))
}

/// The printed spinor columns (times `1/N`): the negative-frequency pair
/// `((w+m) d ; (sigma.k) d)` and the positive-frequency pair
/// `((sigma.k) d ; (w+m) d)`.
pub fn printed_spinor_unscaled(index: usize) -> [OmegaElem; 4] {
    let wm = OmegaElem::omega().add(&OmegaElem::var(Var::M));
    let k1 = OmegaElem::var(Var::K1);
    let k2 = OmegaElem::var(Var::K2);
    let k3 = OmegaElem::var(Var::K3);
    let ik2 = OmegaElem::i().mul(&k2);
    let zero = OmegaElem::zero;
    match index {
        // sigma.k d+ = (k3, k1 + i k2); sigma.k d- = (k1 - i k2, -k3)
        0 => [wm, zero(), k3, k1.add(&ik2)],
        1 => [zero(), wm, k1.sub(&ik2), k3.neg()],
        2 => [k3, k1.add(&ik2), wm, zero()],
        3 => [k1.sub(&ik2), k3.neg(), zero(), wm],
        _ => unreachable!(),
    }
}

/// Inner product `<a, b> = sum conj(a_j) b_j` over the exact field.
pub fn inner(a: &[OmegaElem; 4], b: &[OmegaElem; 4]) -> OmegaElem {
    let mut acc = OmegaElem::zero();
    for j in 0..4 {
        acc = acc.add(&a[j].conj().mul(&b[j]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_frequencies_follow_gamma0() {
        // two orts per family on each frequency branch
        for family in Family::ALL {
            let branches = all_branches(family);
            let minus = branches.iter().filter(|b| b.freq == -1).count();
            assert_eq!(minus, 2, "family {:?}", family);
        }
        // spot pairings
        assert_eq!(fundamental(Family::Fermi, 0).unwrap().freq, -1);
        assert_eq!(fundamental(Family::BoseCartesian, 2).unwrap().freq, 1);
        // C2 = d3 rides the positive-frequency branch
        assert_eq!(fundamental(Family::BoseCyclic, 1).unwrap().freq, 1);
    }

    #[test]
    fn all_branches_satisfy_fw() {
        for family in Family::ALL {
            for b in all_branches(family) {
                assert!(check_satisfies_fw(&b), "branch {} of {:?}", b.label, family);
            }
        }
    }

    #[test]
    fn mismatched_frequency_fails_fw() {
        let mut b = fundamental(Family::Fermi, 0).unwrap();
        b.freq = 1;
        assert!(!check_satisfies_fw(&b));
    }

    #[test]
    fn fermi_spin_eigenvalues() {
        let spin3 = hermitian_spin3(Family::Fermi);
        let half = Scalar::from_ratio(1, 2);
        let candidates = [half.clone(), -&half];
        let expected = [&half, &-&half, &half, &-&half];
        for (j, b) in all_branches(Family::Fermi).iter().enumerate() {
            let got = exact_eigenvalue(&spin3, &b.ort, &candidates).unwrap();
            assert_eq!(&got, expected[j]);
        }
    }

    #[test]
    fn cyclic_spin_eigenvalues() {
        let spin3 = hermitian_spin3(Family::BoseCyclic);
        let candidates = [Scalar::from_int(1), Scalar::zero(), Scalar::from_int(-1)];
        let expected = [1i64, 0, -1, 0];
        for (j, b) in all_branches(Family::BoseCyclic).iter().enumerate() {
            let got = exact_eigenvalue(&spin3, &b.ort, &candidates).unwrap();
            assert_eq!(got, Scalar::from_int(expected[j]));
        }
    }

    #[test]
    fn fw_matrix_is_exactly_unitary() {
        for freq in [-1i8, 1] {
            assert!(fw_matrix(freq).is_unitary());
        }
    }

    #[test]
    fn pd_spinors_match_printed_forms() {
        for (j, b) in all_branches(Family::Fermi).iter().enumerate() {
            assert_eq!(pd_spinor_unscaled(b), printed_spinor_unscaled(j));
        }
    }

    #[test]
    fn dirac_check_all_families() {
        for family in Family::ALL {
            for b in all_branches(family) {
                assert!(dirac_check(&b), "branch {} of {:?}", b.label, family);
            }
        }
    }

    #[test]
    fn spinors_reduce_at_k_zero() {
        // at k = 0 the images are the rest spinors (d; 0) and (0; d)
        let at = EvalPoint::new([0.0, 0.0, 0.0], 1.0, 0.0);
        for (j, b) in all_branches(Family::Fermi).iter().enumerate() {
            let v = fw_matrix(b.freq).eval_apply(&b.ort, &at).unwrap();
            for (c, x) in v.iter().enumerate() {
                let expected = if c == j { 1.0 } else { 0.0 };
                assert!((x - Complex64::new(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn helicity_on_axis3() {
        // fermionic orts: +-1/2; cyclic C1, C3: +-1
        let half = Scalar::from_ratio(1, 2);
        let fermi_expected = [half.clone(), -&half, -&half, half.clone()];
        for (j, b) in all_branches(Family::Fermi).iter().enumerate() {
            let h = hermitian_helicity_axis3(b);
            let got = exact_eigenvalue(&h, &b.ort, &[half.clone(), -&half]).unwrap();
            assert_eq!(got, fermi_expected[j], "fermi branch {j}");
        }
        let one = Scalar::one();
        let cyclic_expected = [one.clone(), Scalar::zero(), -&one, Scalar::zero()];
        for (j, b) in all_branches(Family::BoseCyclic).iter().enumerate() {
            let h = hermitian_helicity_axis3(b);
            let got =
                exact_eigenvalue(&h, &b.ort, &[one.clone(), Scalar::zero(), -&one]).unwrap();
            assert_eq!(got, cyclic_expected[j], "cyclic branch {j}");
        }
    }

    #[test]
    fn families_are_orthonormal() {
        for family in Family::ALL {
            let branches = all_branches(family);
            for a in 0..4 {
                for b in 0..4 {
                    let ip = inner(&branches[a].ort, &branches[b].ort);
                    let expected = if a == b {
                        OmegaElem::one()
                    } else {
                        OmegaElem::zero()
                    };
                    assert_eq!(ip, expected, "{:?} <{a},{b}>", family);
                }
            }
        }
    }

    #[test]
    fn fermi_joint_labels_distinguish_branches() {
        // the complete set (momentum sign, charge sign, spin projection)
        // separates all four branches
        let spin3 = hermitian_spin3(Family::Fermi);
        let g0 = gamma0();
        let half = Scalar::from_ratio(1, 2);
        let mut labels = Vec::new();
        for b in all_branches(Family::Fermi) {
            let charge = exact_eigenvalue(&g0, &b.ort, &[Scalar::one(), Scalar::from_int(-1)]);
            let spin = exact_eigenvalue(&spin3, &b.ort, &[half.clone(), -&half]);
            labels.push((b.momentum_sign(), format!("{charge:?}"), format!("{spin:?}")));
        }
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 4);
    }

    #[test]
    fn fw_images_orthonormal_at_random_k() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let at = EvalPoint::new(
                [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
                rng.gen_range(0.3..2.0),
                0.0,
            );
            for family in Family::ALL {
                let branches = all_branches(family);
                let images: Vec<_> = branches
                    .iter()
                    .map(|b| fw_matrix(b.freq).eval_apply(&b.ort, &at).unwrap())
                    .collect();
                for a in 0..4 {
                    for b in 0..4 {
                        // images on the same frequency branch come from the
                        // same unitary, so orthonormality holds pairwise
                        if branches[a].freq != branches[b].freq {
                            continue;
                        }
                        let mut ip = Complex64::new(0.0, 0.0);
                        for j in 0..4 {
                            ip += images[a][j].conj() * images[b][j];
                        }
                        let expected = if a == b { 1.0 } else { 0.0 };
                        assert!(
                            (ip - Complex64::new(expected, 0.0)).norm() < 1e-12,
                            "{:?} <{a},{b}> at {:?}",
                            family,
                            at
                        );
                    }
                }
            }
        }
    }
}
