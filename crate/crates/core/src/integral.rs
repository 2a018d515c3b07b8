//! The BDS_m integral `∫_E f dN` and the selection (Aumann) integral.
//!
//! On atoms the BDS_m integral is `⊕_{ω∈E} f⁺(ω) N({ω}) ⊕ f⁻(ω) (−N)({ω})`,
//! and its support function is the scalar route
//! `∫_E f⁺ d h_N(u) + ∫_E f⁻ d h_{−N}(u)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::convex::{contains_point, hausdorff, ConvexBody, EPS_GEOM};
use crate::convex::vec::add;
use crate::error::{Error, Result};
use crate::measure::{Event, MeasurableFunction};
use crate::multimeasure::Multimeasure;
use crate::radstrom::DirectionSet;

/// Upper bound on the number of vertex selections enumerated.
pub const SELECTION_CAP: usize = 1_000_000;

/// Support value of the body against the scalar route, for one direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionResidual {
    pub direction: Vec<f64>,
    pub support: f64,
    pub scalar_route: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralResult {
    pub body: ConvexBody,
    pub residual: f64,
    pub table: Vec<DirectionResidual>,
}

fn check_inputs(f: &MeasurableFunction, n: &Multimeasure, e: &Event) -> Result<()> {
    n.space().check_same(f.space())?;
    n.space().check_event(e)
}

/// Atom body `f⁺(ω) N({ω}) ⊕ f⁻(ω) (−N)({ω})`.
fn atom_integral(n: &Multimeasure, i: usize, v: f64) -> Result<ConvexBody> {
    let b = n.atom(i);
    b.scale(v.max(0.0)).minkowski_sum(&b.negate().scale((-v).max(0.0)))
}

/// The BDS_m integral with its support-function residual on `dirs`.
pub fn bds_integrate(
    f: &MeasurableFunction,
    n: &Multimeasure,
    e: &Event,
    dirs: &DirectionSet,
) -> Result<IntegralResult> {
    check_inputs(f, n, e)?;
    if dirs.dim() != n.dim() {
        return Err(Error::Dimension {
            expected: n.dim(),
            found: dirs.dim(),
        });
    }
    let mut body = ConvexBody::zero(n.dim());
    for i in e.iter() {
        body = body.minkowski_sum(&atom_integral(n, i, f.at(i))?)?;
    }
    let (fp, fm) = (f.positive_part(), f.negative_part());
    let neg = n.negate();
    let mut table = Vec::with_capacity(dirs.len());
    let mut residual = 0.0f64;
    for u in dirs.iter() {
        let support = body.support(u)?;
        let scalar_route =
            fp.integrate(&n.support_measure(u)?, e)? + fm.integrate(&neg.support_measure(u)?, e)?;
        let defect = (support - scalar_route).abs();
        residual = residual.max(defect);
        table.push(DirectionResidual {
            direction: u.as_slice().to_vec(),
            support,
            scalar_route,
            defect,
        });
    }
    Ok(IntegralResult {
        body,
        residual,
        table,
    })
}

/// The indefinite integral `E ↦ ∫_E f dN` as a multimeasure.
pub fn indefinite_integral(f: &MeasurableFunction, n: &Multimeasure) -> Result<Multimeasure> {
    n.space().check_same(f.space())?;
    let atoms = (0..n.space().len())
        .map(|i| atom_integral(n, i, f.at(i)))
        .collect::<Result<Vec<_>>>()?;
    Multimeasure::new(n.space().clone(), atoms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SelectionStrategy {
    /// Every choice of one vertex per atom.
    VertexEnumeration,
    /// `k` seeded random selections, each a random convex combination per atom.
    RandomSample { k: usize, seed: u64 },
}

/// Convex hull of `{ Σ_{ω∈E} f(ω) n(ω) : n a selection of N }`.
pub fn aumann_integrate(
    f: &MeasurableFunction,
    n: &Multimeasure,
    e: &Event,
    strategy: SelectionStrategy,
) -> Result<ConvexBody> {
    check_inputs(f, n, e)?;
    let dim = n.dim();
    let mut verts = Vec::with_capacity(e.len());
    for i in e.iter() {
        let v = n
            .atom(i)
            .vertices()
            .ok_or_else(|| Error::Shape("selection integral over a ball atom".into()))?;
        verts.push((f.at(i), v));
    }
    match strategy {
        SelectionStrategy::VertexEnumeration => {
            let total = verts
                .iter()
                .try_fold(1usize, |acc, (_, v)| acc.checked_mul(v.len()))
                .unwrap_or(usize::MAX);
            if total > SELECTION_CAP {
                return Err(Error::Cap {
                    what: "vertex selections",
                    size: total,
                    cap: SELECTION_CAP,
                });
            }
            // Extreme points of a sum of polytopes are sums of extreme points,
            // so partial sums can be reduced to their hull after every atom.
            let mut acc = ConvexBody::zero(dim);
            for (w, vs) in &verts {
                let mut pts = Vec::new();
                for p in acc.vertices().expect("polytope") {
                    for v in vs {
                        pts.push(add(&p, &v.iter().map(|c| w * c).collect::<Vec<_>>()));
                    }
                }
                acc = ConvexBody::polytope(pts)?;
            }
            Ok(acc)
        }
        SelectionStrategy::RandomSample { k, seed } => {
            if k == 0 {
                return Err(Error::Argument("at least one sampled selection is required".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pts = Vec::with_capacity(k);
            for _ in 0..k {
                let mut s = vec![0.0; dim];
                for (w, vs) in &verts {
                    let weights: Vec<f64> = vs.iter().map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
                    let total: f64 = weights.iter().sum();
                    for (v, lam) in vs.iter().zip(&weights) {
                        for (c, x) in s.iter_mut().zip(v) {
                            *c += w * lam / total * x;
                        }
                    }
                }
                pts.push(s);
            }
            ConvexBody::polytope(pts)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditivityReport {
    pub distance: f64,
    pub exact: bool,
}

/// `d_H(∫_{A∪B} f dN, ∫_A f dN ⊕ ∫_B f dN)` for disjoint `A`, `B`.
pub fn check_additivity(
    f: &MeasurableFunction,
    n: &Multimeasure,
    a: &Event,
    b: &Event,
    dirs: &DirectionSet,
) -> Result<AdditivityReport> {
    check_inputs(f, n, a)?;
    n.space().check_event(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::Argument(format!("events {a:?} and {b:?} overlap")));
    }
    let whole = bds_integrate(f, n, &a.union(b), dirs)?.body;
    let parts = bds_integrate(f, n, a, dirs)?
        .body
        .minkowski_sum(&bds_integrate(f, n, b, dirs)?.body)?;
    let h = hausdorff(&whole, &parts)?;
    Ok(AdditivityReport {
        distance: h.distance,
        exact: h.exact,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SublinearityReport {
    /// `max_u [h(∫(af+bg)) − a h(∫f) − b h(∫g)]`; at most `tol` when sublinear.
    pub max_excess: f64,
    pub holds: bool,
    /// True when the two sides agree on every direction.
    pub equality: bool,
    /// A direction with strict inequality, if any.
    pub strict_at: Option<Vec<f64>>,
}

/// Sublinearity of `f ↦ ∫_E f dN` for a positive `N` (every atom holds 0).
#[allow(clippy::too_many_arguments)]
pub fn check_sublinearity(
    f: &MeasurableFunction,
    g: &MeasurableFunction,
    a: f64,
    b: f64,
    n: &Multimeasure,
    e: &Event,
    dirs: &DirectionSet,
    tol: f64,
) -> Result<SublinearityReport> {
    check_inputs(g, n, e)?;
    if a < 0.0 || b < 0.0 {
        return Err(Error::Argument("sublinearity needs a, b ≥ 0".into()));
    }
    for i in 0..n.space().len() {
        if !contains_point(n.atom(i), &vec![0.0; n.dim()], tol)?.inside {
            return Err(Error::Argument(format!(
                "multimeasure is not positive: 0 ∉ N({{{}}})",
                n.space().label(i)
            )));
        }
    }
    let combo = MeasurableFunction::new(
        n.space().clone(),
        f.values().iter().zip(g.values()).map(|(x, y)| a * x + b * y).collect(),
    )?;
    let (lhs, jf, jg) = (
        bds_integrate(&combo, n, e, dirs)?,
        bds_integrate(f, n, e, dirs)?,
        bds_integrate(g, n, e, dirs)?,
    );
    let mut max_excess = f64::NEG_INFINITY;
    let mut strict_at = None;
    let mut equality = true;
    for ((l, x), y) in lhs.table.iter().zip(&jf.table).zip(&jg.table) {
        let excess = l.support - a * x.support - b * y.support;
        max_excess = max_excess.max(excess);
        if excess < -tol {
            equality = false;
            strict_at.get_or_insert_with(|| l.direction.clone());
        } else if excess > tol {
            equality = false;
        }
    }
    Ok(SublinearityReport {
        max_excess,
        holds: max_excess <= tol,
        equality,
        strict_at,
    })
}

/// A direction where `h(u, ∫_E (−1) dN) ≠ −h(u, N(E))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegOneWitness {
    pub direction: Vec<f64>,
    /// `h(u, ∫_E (−1) dN) = h(−u, N(E))`.
    pub integral_support: f64,
    /// `−h(u, N(E))`.
    pub negated_support: f64,
    pub gap: f64,
}

/// Searches `dirs` for the largest gap between integrating `−1` and
/// negating the support; `None` when `N(E)` is symmetric on `dirs`.
pub fn negative_one_counterexample(
    n: &Multimeasure,
    e: &Event,
    dirs: &DirectionSet,
) -> Result<Option<NegOneWitness>> {
    let minus_one = MeasurableFunction::constant(n.space().clone(), -1.0);
    let integral = bds_integrate(&minus_one, n, e, dirs)?.body;
    let ne = n.eval(e)?;
    let mut best: Option<NegOneWitness> = None;
    for u in dirs.iter() {
        let integral_support = integral.support(u)?;
        let negated_support = -ne.support(u)?;
        let gap = integral_support - negated_support;
        if gap > EPS_GEOM && best.as_ref().is_none_or(|b| gap > b.gap) {
            best = Some(NegOneWitness {
                direction: u.as_slice().to_vec(),
                integral_support,
                negated_support,
                gap,
            });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::FiniteMeasurableSpace;

    fn space(n: usize) -> FiniteMeasurableSpace {
        FiniteMeasurableSpace::with_atoms(n).unwrap()
    }

    fn iv(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::interval(lo, hi).unwrap()
    }

    fn intervals(mu: &[f64]) -> Multimeasure {
        Multimeasure::new(space(mu.len()), mu.iter().map(|&m| iv(0.0, m)).collect()).unwrap()
    }

    fn func(v: &[f64]) -> MeasurableFunction {
        MeasurableFunction::new(space(v.len()), v.to_vec()).unwrap()
    }

    fn d1() -> DirectionSet {
        DirectionSet::axis(1).unwrap()
    }

    #[test]
    fn interval_examples() {
        let n = intervals(&[1.0, 1.0]);
        let r = bds_integrate(&func(&[2.0, -3.0]), &n, &Event::full(2), &d1()).unwrap();
        assert_eq!(r.body, iv(-3.0, 2.0));
        assert_eq!(r.residual, 0.0);
        let r = bds_integrate(&func(&[-1.0, -1.0]), &n, &Event::full(2), &d1()).unwrap();
        assert_eq!(r.body, iv(-2.0, 0.0));
        let n = intervals(&[1.0, 2.0]);
        let r = bds_integrate(&func(&[1.0, 1.0]), &n, &Event::full(2), &d1()).unwrap();
        assert_eq!(r.body, n.eval(&Event::full(2)).unwrap());
    }

    #[test]
    fn aumann_examples() {
        let n = intervals(&[1.0, 1.0]);
        let f = func(&[2.0, -3.0]);
        let a = aumann_integrate(&f, &n, &Event::full(2), SelectionStrategy::VertexEnumeration).unwrap();
        assert_eq!(a, iv(-3.0, 2.0));
        let pts = Multimeasure::new(space(2), vec![iv(1.0, 1.0), iv(4.0, 4.0)]).unwrap();
        let a = aumann_integrate(&f, &pts, &Event::full(2), SelectionStrategy::VertexEnumeration).unwrap();
        assert_eq!(a, iv(-10.0, -10.0));
        let balls = Multimeasure::new(space(1), vec![ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap()]).unwrap();
        assert!(matches!(
            aumann_integrate(&func(&[1.0]), &balls, &Event::full(1), SelectionStrategy::VertexEnumeration),
            Err(Error::Shape(_))
        ));
        let big = intervals(&[1.0; 21]);
        assert!(matches!(
            aumann_integrate(&func(&[1.0; 21]), &big, &Event::full(21), SelectionStrategy::VertexEnumeration),
            Err(Error::Cap { .. })
        ));
    }

    #[test]
    fn additivity_examples() {
        let n = intervals(&[1.0, 1.0]);
        let f = func(&[1.0, 1.0]);
        let (a, b) = (Event::singleton(2, 0), Event::singleton(2, 1));
        assert_eq!(check_additivity(&f, &n, &a, &b, &d1()).unwrap().distance, 0.0);
        assert_eq!(check_additivity(&f, &n, &a, &Event::empty(2), &d1()).unwrap().distance, 0.0);
        assert!(matches!(
            check_additivity(&f, &n, &a, &Event::full(2), &d1()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn sublinearity_examples() {
        let n = intervals(&[1.0, 1.0]);
        let e = Event::full(2);
        let f = func(&[1.0, 2.0]);
        let r = check_sublinearity(&f, &f.scaled(-1.0), 1.0, 1.0, &n, &e, &d1(), EPS_GEOM).unwrap();
        assert!(r.holds && !r.equality && r.strict_at.is_some());
        let r = check_sublinearity(&f, &func(&[0.5, 0.0]), 2.0, 3.0, &n, &e, &d1(), EPS_GEOM).unwrap();
        assert!(r.holds && r.equality);
        let r = check_sublinearity(&f, &f, 0.0, 0.0, &n, &e, &d1(), EPS_GEOM).unwrap();
        assert_eq!(r.max_excess, 0.0);
        let shifted = Multimeasure::new(space(2), vec![iv(1.0, 2.0), iv(0.0, 1.0)]).unwrap();
        assert!(check_sublinearity(&f, &f, 1.0, 1.0, &shifted, &e, &d1(), EPS_GEOM).is_err());
    }

    #[test]
    fn negative_one_examples() {
        let n = intervals(&[1.0, 1.0]);
        let w = negative_one_counterexample(&n, &Event::singleton(2, 0), &d1()).unwrap().unwrap();
        assert_eq!((w.direction[0], w.integral_support, w.negated_support, w.gap), (1.0, 0.0, -1.0, 1.0));
        let sym = Multimeasure::new(space(1), vec![iv(-1.0, 1.0)]).unwrap();
        let w = negative_one_counterexample(&sym, &Event::full(1), &d1()).unwrap().unwrap();
        // [-1,1] is symmetric about 0 but not a point: the gap is its width.
        assert_eq!(w.gap, 2.0);
        let pts = Multimeasure::new(space(1), vec![iv(3.0, 3.0)]).unwrap();
        assert!(negative_one_counterexample(&pts, &Event::full(1), &d1()).unwrap().is_none());
    }
}
