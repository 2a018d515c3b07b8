use mvmeasure::convex::{ConvexBody, EPS_GEOM};
use mvmeasure::error::Error;
use mvmeasure::examples::{make_interval_mm, make_interval_pair, make_range_mm, Pair};
use mvmeasure::measure::{Event, FiniteMeasurableSpace, SignedMeasure};
use mvmeasure::multimeasure::Multimeasure;
use mvmeasure::radstrom::DirectionSet;
use mvmeasure::rn::*;

fn space(n: usize) -> FiniteMeasurableSpace {
    FiniteMeasurableSpace::with_atoms(n).unwrap()
}

fn measure(v: &[f64]) -> SignedMeasure {
    SignedMeasure::new(space(v.len()), v.to_vec()).unwrap()
}

fn iv(lo: f64, hi: f64) -> ConvexBody {
    ConvexBody::interval(lo, hi).unwrap()
}

fn mm(atoms: Vec<ConvexBody>) -> Multimeasure {
    Multimeasure::new(space(atoms.len()), atoms).unwrap()
}

fn d1() -> DirectionSet {
    DirectionSet::axis(1).unwrap()
}

fn cfg(dim: usize) -> CheckConfig {
    CheckConfig {
        dirs: DirectionSet::low_discrepancy(dim, 16.max(2 * dim), 1).unwrap(),
        budget: 10_000,
        seed: 3,
        event_cap: 16,
        tol: EPS_GEOM,
    }
}

fn pair62(mu: &[f64], nu: &[f64]) -> Pair {
    make_interval_pair(&measure(mu), &measure(nu)).unwrap()
}

fn constant(r: &ConditionReport) -> f64 {
    match r.verdict {
        Verdict::Holds { constant } => constant,
        Verdict::Fails { .. } => panic!("expected Holds, got {r:?}"),
    }
}

fn witness(r: &ConditionReport) -> &Witness {
    match &r.verdict {
        Verdict::Fails { witness } => witness,
        Verdict::Holds { .. } => panic!("expected Fails, got {r:?}"),
    }
}

#[test]
fn derive_interval_pair() {
    let p = pair62(&[1.0, 1.0], &[2.0, 5.0]);
    let cert = derive(&p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    assert_eq!(cert.theta.values(), &[2.0, 5.0]);
    assert_eq!(cert.sign_set, Event::full(2));
    assert_eq!(cert.bound, 5.0);
    assert_eq!(cert.residual, 0.0);
}

#[test]
fn derive_identity_and_negative_side() {
    let n = make_interval_mm(&measure(&[1.0, 3.0])).unwrap();
    let cert = derive(&n, &n, &d1(), EPS_GEOM).unwrap();
    assert_eq!(cert.theta.values(), &[1.0, 1.0]);
    assert_eq!(cert.residual, 0.0);

    let cert = derive(&mm(vec![iv(-2.0, 0.0)]), &mm(vec![iv(0.0, 1.0)]), &d1(), EPS_GEOM).unwrap();
    assert_eq!(cert.theta.values(), &[-2.0]);
    assert!(cert.sign_set.is_empty());
}

#[test]
fn derive_errors() {
    // A point over a non-point atom breaks consistency.
    let err = derive(&mm(vec![iv(1.0, 1.0), iv(0.0, 1.0)]), &mm(vec![iv(0.0, 1.0), iv(0.0, 1.0)]), &d1(), EPS_GEOM);
    assert_eq!(err.unwrap_err(), Error::Consistency { atoms: vec![0] });
    let err = derive(&mm(vec![iv(0.0, 1.0)]), &mm(vec![iv(1.0, 2.0)]), &d1(), EPS_GEOM);
    assert!(matches!(err, Err(Error::NoDerivative { atom: 0, .. })));
    let err = derive(&mm(vec![iv(0.0, 1.0)]), &mm(vec![iv(0.0, 0.0)]), &d1(), EPS_GEOM);
    assert_eq!(err.unwrap_err(), Error::NotAbsolutelyContinuous { atom: 0 });
}

#[test]
fn derive_local_bands() {
    let p = pair62(&[1.0, 1.0], &[2.0, 5.0]);
    let cert = derive_local(&p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    assert_eq!(
        cert.mode,
        Mode::Local {
            bands: vec![AtomBand { atom: 0, band: 3 }, AtomBand { atom: 1, band: 6 }]
        }
    );
    let p = pair62(&[1.0, 1.0], &[0.3, 0.7]);
    match derive_local(&p.m, &p.n, &d1(), EPS_GEOM).unwrap().mode {
        Mode::Local { bands } => assert!(bands.iter().all(|b| b.band == 1)),
        Mode::Bounded => unreachable!(),
    }
    let err = derive_local(&mm(vec![iv(0.0, 1.0)]), &mm(vec![iv(1.0, 2.0)]), &d1(), EPS_GEOM);
    assert!(matches!(err, Err(Error::NoDerivative { atom: 0, .. })));
}

#[test]
fn usd_examples() {
    let p = pair62(&[1.0, 2.0], &[2.0, 4.0]);
    let r = check_usd(&p.m, &p.n, None, &cfg(1)).unwrap();
    assert!((constant(&r) - 2.0).abs() < 1e-12);
    assert_eq!(r.sign_set, Event::full(2));

    let n = make_interval_mm(&measure(&[1.0, 2.0])).unwrap();
    let r = check_usd(&n, &n, Some(&Event::full(2)), &cfg(1)).unwrap();
    assert!((constant(&r) - 1.0).abs() < 1e-12);

    let p = pair62(&[1.0, 0.0], &[1.0, 1.0]);
    let r = check_usd(&p.m, &p.n, None, &cfg(1)).unwrap();
    assert_eq!(witness(&r).event, Event::singleton(2, 1));
}

#[test]
fn usac_examples() {
    let p = pair62(&[1.0, 2.0], &[2.0, 4.0]);
    let eps = [0.01, 0.1, 1.0];
    let r = check_usac(&p.m, &p.n, None, &eps, &cfg(1)).unwrap();
    assert!(r.verdict.holds());
    for pt in r.delta_profile.as_ref().unwrap() {
        // Linear domination with constant 2 gives δ(ε) ≥ ε / 2.
        assert!(pt.delta.unwrap() >= pt.epsilon / 2.0 * (1.0 - 1e-9));
    }

    let z = mm(vec![iv(0.0, 0.0), iv(0.0, 0.0)]);
    let r = check_usac(&z, &p.n, None, &eps, &cfg(1)).unwrap();
    assert!(r.verdict.holds());
    assert!(r.delta_profile.unwrap().iter().all(|pt| pt.delta.is_none()));

    let p = pair62(&[1.0, 0.0], &[1.0, 1.0]);
    let usd = check_usd(&p.m, &p.n, None, &cfg(1)).unwrap();
    let usac = check_usac(&p.m, &p.n, None, &eps, &cfg(1)).unwrap();
    assert_eq!(witness(&usac).event, witness(&usd).event);
}

#[test]
fn uss_examples() {
    let p = pair62(&[1.0, 2.0, 0.5], &[3.0, 1.0, 0.5]);
    let cert = derive(&p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    let r = check_uss(&p.m, &p.n, None, cert.bound + 0.5, &cfg(1)).unwrap();
    assert!(r.verdict.holds());
    assert!(r.empirical_constant <= cert.bound + 1e-9);

    let z = mm(vec![iv(0.0, 0.0), iv(0.0, 0.0), iv(0.0, 0.0)]);
    assert!(check_uss(&z, &p.n, None, 0.0, &cfg(1)).unwrap().verdict.holds());
    assert!(!check_uss(&p.m, &p.n, None, 0.0, &cfg(1)).unwrap().verdict.holds());
}

#[test]
fn uss_dominates_usd_constant() {
    let p = pair62(&[1.0, 2.0, 0.5], &[3.0, 1.0, 0.5]);
    let usd = check_usd(&p.m, &p.n, None, &cfg(1)).unwrap();
    let uss = check_uss(&p.m, &p.n, None, 10.0, &cfg(1)).unwrap();
    assert!(constant(&usd) <= uss.empirical_constant + 1e-12);
}

#[test]
fn strong_examples() {
    let p = pair62(&[1.0, 2.0], &[2.0, 5.0]);
    let r = check_susd(&p.m, &p.n, 3, &cfg(1)).unwrap();
    assert!((constant(&r) - 2.5).abs() < 1e-9);

    let single = check_susd(&p.m, &p.n, 1, &cfg(1)).unwrap();
    let plain = check_usd(&p.m, &p.n, Some(&Event::full(2)), &cfg(1)).unwrap();
    assert!(constant(&single) <= constant(&plain) + 1e-12);

    // [0,1] over the point 1: s(1,N) + s(-1,N) = 0 while s(1,M) + s(-1,M) = 1.
    let r = check_susd(&mm(vec![iv(0.0, 1.0)]), &mm(vec![iv(1.0, 1.0)]), 2, &cfg(1)).unwrap();
    assert!(!r.verdict.holds());
    let r = check_susd(&mm(vec![iv(0.0, 1.0)]), &mm(vec![iv(1.0, 1.0)]), 1, &cfg(1)).unwrap();
    assert!(r.verdict.holds());
}

#[test]
fn strong_continuity_and_subordination() {
    let p = pair62(&[1.0, 2.0], &[2.0, 5.0]);
    assert!(check_susac(&p.m, &p.n, 3, &[0.1, 1.0], &cfg(1)).unwrap().verdict.holds());
    assert!(check_suss(&p.m, &p.n, 3, 2.5 + 1e-6, &cfg(1)).unwrap().verdict.holds());
    assert!(!check_suss(&p.m, &p.n, 3, 1.0, &cfg(1)).unwrap().verdict.holds());
}

#[test]
fn sub_containment_examples() {
    let p = pair62(&[1.0, 2.0], &[2.0, 5.0]);
    let full = Event::full(2);
    assert!(sub_containment(&p.m, &p.n, 2.5, &full, &d1(), 16, EPS_GEOM).unwrap().contained);
    let r = sub_containment(&p.m, &p.n, 0.0, &full, &d1(), 16, EPS_GEOM).unwrap();
    assert!(!r.contained);
    assert_eq!(r.direction, Some(vec![1.0]));

    let r3 = make_range_mm(&[vec![1.0], vec![-2.0], vec![0.5]], 16).unwrap();
    assert!(sub_containment(&r3.m, &r3.n, 1.0, &Event::full(3), &d1(), 16, EPS_GEOM).unwrap().contained);
    assert!(matches!(derive(&r3.m, &r3.n, &d1(), EPS_GEOM), Err(Error::NoDerivative { .. })));
    assert!(check_sub(&r3.m, &r3.n, 1.0, &cfg(1)).unwrap().verdict.holds());
}

#[test]
fn positivity_audit_examples() {
    let p = pair62(&[1.0, 1.0], &[2.0, 5.0]);
    let cert = derive(&p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    let a = positivity_audit(&cert, &p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    assert!(a.ok && a.nonnegative);
    assert_eq!(a.single_integral_residual, Some(0.0));

    let pts = mm(vec![iv(2.0, 2.0)]);
    let m = mm(vec![iv(-4.0, -4.0)]);
    let cert = derive(&m, &pts, &d1(), EPS_GEOM).unwrap();
    let a = positivity_audit(&cert, &m, &pts, &d1(), EPS_GEOM).unwrap();
    assert!(a.ok);
    assert_eq!(a.point_negative, vec![0]);

    let mut bad = derive(&p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    bad.theta = bad.theta.scaled(-1.0);
    let a = positivity_audit(&bad, &p.m, &p.n, &d1(), EPS_GEOM).unwrap();
    assert!(!a.ok);
    assert_eq!(a.set_violations, vec![0, 1]);
}
