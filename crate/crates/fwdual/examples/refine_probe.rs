use fwdual::conservation::*;
use fwdual::solutions::Family;
use fwdual::symdiff::{build_poincare, Conventions, RepKind};

fn main() {
    let set = build_poincare(RepKind::Fermi, &Conventions::resolved());
    let study = refinement_study(Family::Fermi, &set.j[&(0, 1)], 40, 6.0, 0.5, 1.0, 3.0).unwrap();
    println!(
        "coarse {:.3e} fine {:.3e} ratio {:.2} drifts {:?}",
        study.coarse_diff, study.fine_diff, study.ratio, study.drifts
    );
}
