//! Bosonic Poincare generator set: invariance, closure, and Casimirs with
//! antilinear spin parts.

use fwdual::symdiff::{
    build_poincare, casimirs, resolve_conventions, verify_closure, verify_invariance,
    Conventions, RepKind,
};

#[test]
fn bose_cartesian_invariance_closure_casimirs() {
    let set = build_poincare(RepKind::BoseCartesian, &Conventions::resolved());
    for c in verify_invariance(&set) {
        assert!(c.pass, "invariance failed: {}", c.id);
    }
    let (checks, g) = verify_closure(&set).expect("closure resolvable");
    assert_eq!(g, 1);
    assert_eq!(checks.len(), 45);
    for c in checks {
        assert!(c.pass, "closure failed: {}", c.id);
    }
    let rep = casimirs(&set, 1).expect("casimirs reduce");
    for c in &rep.checks {
        assert!(c.pass, "casimir failed: {}", c.id);
    }
    assert_eq!(rep.p_squared_sign, -1);
}

#[test]
fn bose_cyclic_invariance_and_casimirs() {
    let set = build_poincare(RepKind::BoseCyclic, &Conventions::resolved());
    for c in verify_invariance(&set) {
        assert!(c.pass, "invariance failed: {}", c.id);
    }
    let rep = casimirs(&set, 1).expect("casimirs reduce");
    for c in &rep.checks {
        assert!(c.pass, "casimir failed: {}", c.id);
    }
}

#[test]
fn bose_conventions_resolve_to_same_tuple() {
    let (conv, g, psign) = resolve_conventions(RepKind::BoseCartesian).expect("resolvable");
    assert_eq!(conv, Conventions::resolved());
    assert_eq!(g, 1);
    assert_eq!(psign, -1);
}
