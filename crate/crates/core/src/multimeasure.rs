//! Multimeasures: convex-body valued set functions whose support function
//! is a scalar measure in every direction.
//!
//! On a finite atomic space a multimeasure is determined by its atom
//! bodies: `M(E) = ⊕_{ω∈E} M({ω})`, `M(∅) = {0}`.

use serde::Serialize;

use crate::convex::{hausdorff, hull_3d, ConvexBody, Direction};
use crate::convex::vec::{cross3, dot, norm, sub};
use crate::error::{Error, Result};
use crate::measure::{Event, FiniteMeasurableSpace, SignedMeasure};
use crate::radstrom::DirectionSet;

/// Structural type of a single atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    /// Body `{0}`.
    Null,
    /// Singleton other than `{0}`.
    Point,
    /// Non-singleton body.
    Set,
}

/// Atom kinds and the pointless part `H` (union of `Set` atoms).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub kinds: Vec<AtomKind>,
    pub pointless_part: Event,
}

/// Outcome of a yes/no structural test that names a witness on failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", content = "witness", rename_all = "lowercase")]
pub enum Check {
    Holds,
    Witness(Event),
}

impl Check {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multimeasure {
    space: FiniteMeasurableSpace,
    dim: usize,
    atoms: Vec<ConvexBody>,
}

impl Multimeasure {
    pub fn new(space: FiniteMeasurableSpace, atoms: Vec<ConvexBody>) -> Result<Self> {
        if atoms.len() != space.len() {
            return Err(Error::Space(format!(
                "{} atom bodies for {} atoms",
                atoms.len(),
                space.len()
            )));
        }
        let dim = atoms[0].dim();
        if let Some(b) = atoms.iter().find(|b| b.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: b.dim(),
            });
        }
        Ok(Multimeasure { space, dim, atoms })
    }

    /// The multimeasure identically `{0}`.
    pub fn zero(space: FiniteMeasurableSpace, dim: usize) -> Self {
        let atoms = vec![ConvexBody::zero(dim); space.len()];
        Multimeasure { space, dim, atoms }
    }

    /// Builds a multimeasure from an event → body table.
    ///
    /// Every singleton must be present. Each other entry is checked against
    /// the Minkowski sum of its atoms on `dirs` (and exactly where a
    /// Hausdorff route exists); the first failure is reported as the pair
    /// `A = {first atom}`, `B = rest`.
    pub fn from_event_table(
        space: FiniteMeasurableSpace,
        dim: usize,
        table: &[(Event, ConvexBody)],
        dirs: &DirectionSet,
        tol: f64,
    ) -> Result<Self> {
        let mut atoms: Vec<Option<ConvexBody>> = vec![None; space.len()];
        for (e, b) in table {
            space.check_event(e)?;
            if b.dim() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: b.dim(),
                });
            }
            if e.len() == 1 {
                let i = e.iter().next().unwrap();
                atoms[i] = Some(b.clone());
            }
        }
        let atoms = atoms
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or_else(|| {
                    Error::Argument(format!("event table lacks the singleton {{{}}}", space.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mm = Multimeasure::new(space, atoms)?;
        for (e, b) in table {
            let expected = mm.eval(e)?;
            let gap = hausdorff(b, &expected)?.distance;
            let dir_gap = dirs
                .iter()
                .map(|u| (u, (b.support_at(u.as_slice()) - expected.support_at(u.as_slice())).abs()))
                .fold((None, 0.0f64), |acc, (u, g)| if g > acc.1 { (Some(u), g) } else { acc });
            if gap > tol || dir_gap.1 > tol {
                let first = e.iter().next().unwrap_or(0);
                let a = Event::singleton(e.universe(), first).intersection(e);
                let rest = e.difference(&a);
                return Err(Error::Additivity {
                    a: a.iter().collect(),
                    b: rest.iter().collect(),
                    direction: dir_gap
                        .0
                        .map(|u| u.as_slice().to_vec())
                        .unwrap_or_else(|| vec![0.0; dim]),
                    gap: gap.max(dir_gap.1),
                });
            }
        }
        Ok(mm)
    }

    pub fn space(&self) -> &FiniteMeasurableSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[ConvexBody] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> &ConvexBody {
        &self.atoms[i]
    }

    /// `M(E) = ⊕_{ω∈E} M({ω})`.
    pub fn eval(&self, e: &Event) -> Result<ConvexBody> {
        self.space.check_event(e)?;
        e.iter()
            .try_fold(ConvexBody::zero(self.dim), |acc, i| acc.minkowski_sum(&self.atoms[i]))
    }

    /// The scalar measure `E ↦ h_{M(E)}(u)`.
    pub fn support_measure(&self, u: &Direction) -> Result<SignedMeasure> {
        if u.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: u.dim(),
            });
        }
        Ok(self.support_measure_at(u.as_slice()))
    }

    /// Support measure at an arbitrary (not necessarily unit) vector.
    pub fn support_measure_at(&self, x: &[f64]) -> SignedMeasure {
        let values = self.atoms.iter().map(|b| b.support_at(x)).collect();
        SignedMeasure::new(self.space.clone(), values).expect("finite supports")
    }

    /// `(-M)(E) = -M(E)`.
    pub fn negate(&self) -> Multimeasure {
        self.map_atoms(|b| b.negate())
    }

    pub fn scale(&self, lambda: f64) -> Multimeasure {
        self.map_atoms(|b| b.scale(lambda))
    }

    /// `M|_A(E) = M(E ∩ A)`.
    pub fn restrict(&self, a: &Event) -> Multimeasure {
        let mut out = self.clone();
        for i in 0..self.atoms.len() {
            if !a.contains(i) {
                out.atoms[i] = ConvexBody::zero(self.dim);
            }
        }
        out
    }

    fn map_atoms(&self, f: impl Fn(&ConvexBody) -> ConvexBody) -> Multimeasure {
        Multimeasure {
            space: self.space.clone(),
            dim: self.dim,
            atoms: self.atoms.iter().map(f).collect(),
        }
    }

    /// `E ∈ 𝒩(M)`, i.e. every atom of `E` carries `{0}`.
    pub fn is_null(&self, e: &Event, tol: f64) -> Result<bool> {
        self.space.check_event(e)?;
        Ok(e.iter().all(|i| self.atoms[i].is_zero(tol)))
    }

    /// Union of all null atoms.
    pub fn null_atoms(&self, tol: f64) -> Event {
        Event::from_atoms(
            self.space.len(),
            (0..self.atoms.len()).filter(|&i| self.atoms[i].is_zero(tol)),
        )
        .expect("indices in range")
    }

    pub fn kind(&self, i: usize, tol: f64) -> AtomKind {
        let b = &self.atoms[i];
        if b.is_zero(tol) {
            AtomKind::Null
        } else if b.singleton(tol).is_some() {
            AtomKind::Point
        } else {
            AtomKind::Set
        }
    }

    pub fn classify(&self, tol: f64) -> Classification {
        let kinds: Vec<AtomKind> = (0..self.atoms.len()).map(|i| self.kind(i, tol)).collect();
        let pointless_part = Event::from_atoms(
            kinds.len(),
            kinds
                .iter()
                .enumerate()
                .filter_map(|(i, k)| (*k == AtomKind::Set).then_some(i)),
        )
        .expect("indices in range");
        Classification {
            kinds,
            pointless_part,
        }
    }

    /// The bodies `M(F)` for every `F ⊆ E`, the empty set first.
    pub fn reach(&self, e: &Event, cap: usize) -> Result<Vec<ConvexBody>> {
        self.space.check_event(e)?;
        if e.len() > cap {
            return Err(Error::Cap {
                what: "range enumeration",
                size: e.len(),
                cap,
            });
        }
        e.subsets().map(|f| self.eval(&f)).collect()
    }

    /// Control measure `Σ_n 2^{-n} |h_M(u_n)|(·) / (1 + |h_M(u_n)|(Ω))`.
    ///
    /// `dirs` must positively span ℝ^d so that vanishing supports force `{0}`.
    pub fn control_measure(&self, dirs: &DirectionSet) -> Result<SignedMeasure> {
        if dirs.is_empty() {
            return Err(Error::Control("empty direction sequence".into()));
        }
        if dirs.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: dirs.dim(),
            });
        }
        positively_spanning(dirs)?;
        let mut values = vec![0.0; self.space.len()];
        let mut weight = 1.0;
        for u in dirs.iter() {
            weight *= 0.5;
            let var = self.support_measure_at(u.as_slice()).abs();
            let total: f64 = var.values().iter().sum();
            for (acc, v) in values.iter_mut().zip(var.values()) {
                *acc += weight * v / (1.0 + total);
            }
        }
        SignedMeasure::new(self.space.clone(), values)
    }
}

/// Rejects direction sets whose nonnegative combinations miss part of ℝ^d.
fn positively_spanning(dirs: &DirectionSet) -> Result<()> {
    let us: Vec<&[f64]> = dirs.iter().map(|u| u.as_slice()).collect();
    let fail = |why: &str| Err(Error::Control(why.to_string()));
    match dirs.dim() {
        1 => {
            if us.iter().any(|u| u[0] > 0.0) && us.iter().any(|u| u[0] < 0.0) {
                Ok(())
            } else {
                fail("both +1 and -1 are required on the line")
            }
        }
        2 => {
            let mut angles: Vec<f64> = us.iter().map(|u| u[1].atan2(u[0])).collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut gap = angles[0] + std::f64::consts::TAU - angles[angles.len() - 1];
            for w in angles.windows(2) {
                gap = gap.max(w[1] - w[0]);
            }
            if gap < std::f64::consts::PI - 1e-12 {
                Ok(())
            } else {
                fail("directions leave an angular gap of at least π")
            }
        }
        3 => {
            // The origin must lie strictly inside the hull of the directions.
            let pts: Vec<Vec<f64>> = us.iter().map(|u| u.to_vec()).collect();
            let hull = hull_3d(&pts);
            if hull.len() < 4 {
                return fail("directions are not full-dimensional");
            }
            for i in 0..hull.len() {
                for j in i + 1..hull.len() {
                    for k in j + 1..hull.len() {
                        let n = cross3(&sub(&hull[j], &hull[i]), &sub(&hull[k], &hull[i]));
                        if norm(&n) < 1e-12 {
                            continue;
                        }
                        let off = dot(&n, &hull[i]);
                        let sides: Vec<f64> = hull.iter().map(|p| dot(&n, p) - off).collect();
                        let supporting_above = sides.iter().all(|&s| s <= 1e-12);
                        let supporting_below = sides.iter().all(|&s| s >= -1e-12);
                        // Origin side of a supporting plane: -off relative to the plane.
                        if (supporting_above && -off >= -1e-12) || (supporting_below && -off <= 1e-12) {
                            return fail("the origin is not interior to the direction hull");
                        }
                    }
                }
            }
            Ok(())
        }
        d => {
            let has_axes = (0..d).all(|k| {
                [true, false].iter().all(|&pos| {
                    let e = Direction::axis(d, k, pos);
                    us.iter().any(|u| norm(&sub(u, e.as_slice())) < 1e-12)
                })
            });
            if has_axes {
                Ok(())
            } else {
                fail("in dimension ≥ 4 the set must contain all ±e_i")
            }
        }
    }
}

/// `𝒩(N) ⊂ 𝒩(M)`: every `N`-null atom is `M`-null.
pub fn abs_continuous(m: &Multimeasure, n: &Multimeasure, tol: f64) -> Result<Check> {
    m.space.check_same(&n.space)?;
    let bad = n.null_atoms(tol).difference(&m.null_atoms(tol));
    Ok(if bad.is_empty() {
        Check::Holds
    } else {
        Check::Witness(bad)
    })
}

/// Both multimeasures are pointless on one event `H` and vector measures
/// off it. Null atoms of either side are compatible with both; the witness
/// collects atoms where one side is a point and the other a set.
pub fn consistent(m: &Multimeasure, n: &Multimeasure, tol: f64) -> Result<Check> {
    m.space.check_same(&n.space)?;
    let (cm, cn) = (m.classify(tol), n.classify(tol));
    let bad = Event::from_atoms(
        m.space.len(),
        cm.kinds
            .iter()
            .zip(&cn.kinds)
            .enumerate()
            .filter_map(|(i, (a, b))| {
                matches!(
                    (a, b),
                    (AtomKind::Set, AtomKind::Point) | (AtomKind::Point, AtomKind::Set)
                )
                .then_some(i)
            }),
    )?;
    Ok(if bad.is_empty() {
        Check::Holds
    } else {
        Check::Witness(bad)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::EPS_GEOM;

    fn space(n: usize) -> FiniteMeasurableSpace {
        FiniteMeasurableSpace::with_atoms(n).unwrap()
    }

    fn iv(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::interval(lo, hi).unwrap()
    }

    fn intervals(mu: &[f64]) -> Multimeasure {
        Multimeasure::new(space(mu.len()), mu.iter().map(|&m| iv(0.0, m)).collect()).unwrap()
    }

    fn unit_square() -> ConvexBody {
        ConvexBody::polytope(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let n = intervals(&[1.0, 2.0]);
        assert_eq!(n.eval(&Event::full(2)).unwrap(), iv(0.0, 3.0));
        assert_eq!(n.eval(&Event::empty(2)).unwrap(), ConvexBody::zero(1));
        let sq = Multimeasure::new(space(2), vec![unit_square(), unit_square()]).unwrap();
        let two = unit_square().scale(2.0);
        assert!(hausdorff(&sq.eval(&Event::full(2)).unwrap(), &two).unwrap().distance < 1e-12);
        assert!(n.eval(&Event::full(3)).is_err());
    }

    #[test]
    fn support_measure_examples() {
        let n = intervals(&[1.0, 2.0]);
        let plus = Direction::new(vec![1.0]).unwrap();
        assert_eq!(n.support_measure(&plus).unwrap().values(), &[1.0, 2.0]);
        assert_eq!(n.support_measure(&plus.neg()).unwrap().values(), &[0.0, 0.0]);
        let p = Multimeasure::new(space(1), vec![ConvexBody::point(vec![1.0, 2.0]).unwrap()]).unwrap();
        let up = Direction::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(p.support_measure(&up).unwrap().values(), &[2.0]);
    }

    #[test]
    fn negation_examples() {
        assert_eq!(intervals(&[1.0]).negate().atom(0), &iv(-1.0, 0.0));
        let p = Multimeasure::new(space(1), vec![ConvexBody::point(vec![1.0, 2.0]).unwrap()]).unwrap();
        assert_eq!(p.negate().atom(0), &ConvexBody::point(vec![-1.0, -2.0]).unwrap());
        let s = Multimeasure::new(space(1), vec![iv(-1.0, 1.0)]).unwrap();
        assert_eq!(s.negate(), s);
    }

    #[test]
    fn null_examples() {
        let n = intervals(&[1.0, 0.0]);
        assert!(!n.is_null(&Event::full(2), EPS_GEOM).unwrap());
        assert!(n.is_null(&Event::empty(2), EPS_GEOM).unwrap());
        assert!(n.is_null(&Event::singleton(2, 1), EPS_GEOM).unwrap());
        assert_eq!(n.null_atoms(EPS_GEOM), Event::singleton(2, 1));
    }

    #[test]
    fn absolute_continuity_examples() {
        let n = intervals(&[1.0, 0.0]);
        assert!(abs_continuous(&n, &n, EPS_GEOM).unwrap().holds());
        let m = intervals(&[1.0, 1.0]);
        assert_eq!(
            abs_continuous(&m, &n, EPS_GEOM).unwrap(),
            Check::Witness(Event::singleton(2, 1))
        );
        assert!(abs_continuous(&intervals(&[2.0, 5.0]), &intervals(&[1.0, 1.0]), EPS_GEOM)
            .unwrap()
            .holds());
    }

    #[test]
    fn classify_examples() {
        let c = intervals(&[1.0, 2.0]).classify(EPS_GEOM);
        assert_eq!(c.kinds, vec![AtomKind::Set, AtomKind::Set]);
        assert_eq!(c.pointless_part, Event::full(2));
        let pts = Multimeasure::new(space(2), vec![iv(1.0, 1.0), iv(-2.0, -2.0)]).unwrap();
        assert!(pts.classify(EPS_GEOM).pointless_part.is_empty());
        let mixed = Multimeasure::new(space(2), vec![iv(0.0, 1.0), iv(3.0, 3.0)]).unwrap();
        let c = mixed.classify(EPS_GEOM);
        assert_eq!(c.kinds, vec![AtomKind::Set, AtomKind::Point]);
        assert_eq!(c.pointless_part, Event::singleton(2, 0));
    }

    #[test]
    fn consistency_examples() {
        let n = intervals(&[1.0, 1.0]);
        let m = intervals(&[2.0, 5.0]);
        assert!(consistent(&m, &n, EPS_GEOM).unwrap().holds());
        let pts = Multimeasure::new(space(2), vec![iv(1.0, 1.0), iv(2.0, 2.0)]).unwrap();
        assert_eq!(consistent(&m, &pts, EPS_GEOM).unwrap(), Check::Witness(Event::full(2)));
        assert!(consistent(&m, &m, EPS_GEOM).unwrap().holds());
    }

    #[test]
    fn control_measure_examples() {
        let n = intervals(&[1.0, 2.0]);
        let ctrl = n.control_measure(&DirectionSet::axis(1).unwrap()).unwrap();
        // ν₁ = μ with ν₁(Ω) = 3 and ν₂ = 0.
        assert!((ctrl.atom(0) - 0.5 * 1.0 / 4.0).abs() < 1e-15);
        assert!((ctrl.atom(1) - 0.5 * 2.0 / 4.0).abs() < 1e-15);
        let z = Multimeasure::zero(space(3), 2);
        let ctrl = z.control_measure(&DirectionSet::axis(2).unwrap()).unwrap();
        assert!(ctrl.values().iter().all(|&v| v == 0.0));
        let half = DirectionSet::explicit(vec![Direction::new(vec![1.0]).unwrap()]).unwrap();
        assert!(matches!(n.control_measure(&half), Err(Error::Control(_))));
        let up = DirectionSet::explicit(vec![
            Direction::new(vec![1.0, 0.0]).unwrap(),
            Direction::new(vec![0.0, 1.0]).unwrap(),
            Direction::new(vec![-1.0, 0.0]).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            Multimeasure::zero(space(1), 2).control_measure(&up),
            Err(Error::Control(_))
        ));
        assert!(Multimeasure::zero(space(1), 3)
            .control_measure(&DirectionSet::axis(3).unwrap())
            .is_ok());
        let flat = DirectionSet::explicit(vec![
            Direction::new(vec![1.0, 0.0, 0.0]).unwrap(),
            Direction::new(vec![-1.0, 0.0, 0.0]).unwrap(),
            Direction::new(vec![0.0, 1.0, 0.0]).unwrap(),
            Direction::new(vec![0.0, -1.0, 0.0]).unwrap(),
        ])
        .unwrap();
        assert!(Multimeasure::zero(space(1), 3).control_measure(&flat).is_err());
    }

    #[test]
    fn reach_examples() {
        let n = intervals(&[1.0]);
        assert_eq!(n.reach(&Event::full(1), 16).unwrap(), vec![ConvexBody::zero(1), iv(0.0, 1.0)]);
        assert_eq!(n.reach(&Event::empty(1), 16).unwrap(), vec![ConvexBody::zero(1)]);
        let pts = Multimeasure::new(space(2), vec![iv(1.0, 1.0), iv(2.0, 2.0)]).unwrap();
        let r = pts.reach(&Event::full(2), 16).unwrap();
        let vals: Vec<f64> = r.iter().map(|b| b.anchor()[0]).collect();
        assert_eq!(vals, vec![0.0, 1.0, 2.0, 3.0]);
        assert!(matches!(intervals(&[1.0; 5]).reach(&Event::full(5), 4), Err(Error::Cap { .. })));
    }

    #[test]
    fn event_table_validation() {
        let sp = space(2);
        let dirs = DirectionSet::axis(1).unwrap();
        let good = vec![
            (Event::singleton(2, 0), iv(0.0, 1.0)),
            (Event::singleton(2, 1), iv(-1.0, 0.0)),
            (Event::full(2), iv(-1.0, 1.0)),
        ];
        let mm = Multimeasure::from_event_table(sp.clone(), 1, &good, &dirs, EPS_GEOM).unwrap();
        assert_eq!(mm.eval(&Event::full(2)).unwrap(), iv(-1.0, 1.0));
        let mut bad = good.clone();
        bad[2].1 = iv(-1.0, 2.0);
        match Multimeasure::from_event_table(sp, 1, &bad, &dirs, EPS_GEOM) {
            Err(Error::Additivity { a, b, direction, gap }) => {
                assert_eq!((a, b), (vec![0], vec![1]));
                assert_eq!(direction, vec![1.0]);
                assert_eq!(gap, 1.0);
            }
            other => panic!("expected additivity failure, got {other:?}"),
        }
    }
}
