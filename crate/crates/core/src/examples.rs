//! Constructors for the interval, interval-pair, ball-pair and range
//! multimeasures, and a seeded generator of random pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convex::ConvexBody;
use crate::error::{Error, Result};
use crate::integral::indefinite_integral;
use crate::measure::{Event, FiniteMeasurableSpace, MeasurableFunction, SignedMeasure};
use crate::multimeasure::Multimeasure;
use crate::radstrom::DirectionSet;

/// A multimeasure `M` paired with a reference multimeasure `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pair {
    pub m: Multimeasure,
    pub n: Multimeasure,
}

/// `N(E) = [0, μ(E)]` for a nonnegative `μ`.
pub fn make_interval_mm(mu: &SignedMeasure) -> Result<Multimeasure> {
    if !mu.is_nonnegative() {
        return Err(Error::Argument("interval multimeasure needs μ ≥ 0".into()));
    }
    let atoms = mu
        .values()
        .iter()
        .map(|&v| ConvexBody::interval(0.0, v))
        .collect::<Result<Vec<_>>>()?;
    Multimeasure::new(mu.space().clone(), atoms)
}

/// `N(E) = [0, μ(E)]` and `M(E) = [0, ν(E)]`; `dM/dN = dν/dμ`.
pub fn make_interval_pair(mu: &SignedMeasure, nu: &SignedMeasure) -> Result<Pair> {
    mu.space().check_same(nu.space())?;
    Ok(Pair {
        m: make_interval_mm(nu)?,
        n: make_interval_mm(mu)?,
    })
}

/// Per-atom data of a ball-valued multimeasure `B(∫ f dμ, ∫ r dμ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallData {
    pub centers: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
}

/// Atom bodies `B(μ(ω) f_i(ω), μ(ω) r_i(ω))` for `M` (i = 1) and `N` (i = 2).
pub fn make_ball_pair(m: &BallData, n: &BallData, mu: &SignedMeasure) -> Result<Pair> {
    let build = |data: &BallData| -> Result<Multimeasure> {
        let k = mu.space().len();
        if data.centers.len() != k || data.radii.len() != k {
            return Err(Error::Argument(format!("ball data must have {k} entries")));
        }
        let atoms = (0..k)
            .map(|w| {
                let weight = mu.atom(w);
                if weight < 0.0 {
                    return Err(Error::Argument("ball pair needs μ ≥ 0".into()));
                }
                if weight > 0.0 && data.radii[w] <= 0.0 {
                    return Err(Error::Argument(format!("radius at atom {w} must be positive")));
                }
                let c: Vec<f64> = data.centers[w].iter().map(|x| weight * x).collect();
                ConvexBody::ball(c, weight * data.radii[w])
            })
            .collect::<Result<Vec<_>>>()?;
        Multimeasure::new(mu.space().clone(), atoms)
    };
    Ok(Pair {
        m: build(m)?,
        n: build(n)?,
    })
}

/// `N = κ` as a point-valued multimeasure and `M(E) = co ℛ(κ_E)`, the hull
/// of the partial sums `κ(F)`, `F ⊆ E`.
///
/// `M` is assembled from its full event table and validated for
/// additivity before being reduced to atoms.
pub fn make_range_mm(kappa: &[Vec<f64>], event_cap: usize) -> Result<Pair> {
    let k = kappa.len();
    if k == 0 {
        return Err(Error::Argument("κ needs at least one atom".into()));
    }
    if k > event_cap {
        return Err(Error::Cap {
            what: "range multimeasure atoms",
            size: k,
            cap: event_cap,
        });
    }
    let space = FiniteMeasurableSpace::with_atoms(k)?;
    let dim = kappa[0].len();
    let n = Multimeasure::new(
        space.clone(),
        kappa.iter().map(|p| ConvexBody::point(p.clone())).collect::<Result<Vec<_>>>()?,
    )?;
    let mut table = Vec::with_capacity(1 << k);
    for e in Event::full(k).subsets().filter(|e| !e.is_empty()) {
        let sums: Vec<Vec<f64>> = n.reach(&e, event_cap)?.iter().map(|b| b.anchor()).collect();
        table.push((e, ConvexBody::polytope(sums)?));
    }
    let dirs = DirectionSet::axis(dim)?;
    let m = Multimeasure::from_event_table(space, dim, &table, &dirs, 1e-9)?;
    Ok(Pair { m, n })
}

/// `M := ∫ θ dN` atomwise, so `dM/dN = θ`.
pub fn plant(theta: &MeasurableFunction, n: &Multimeasure) -> Result<Pair> {
    Ok(Pair {
        m: indefinite_integral(theta, n)?,
        n: n.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Polytope,
    Ball,
}

/// Parameters of [`random_scenario`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub atoms: usize,
    pub dim: usize,
    pub body: BodyKind,
    /// Probability that an atom is a single point.
    pub point_fraction: f64,
    /// Probability that an atom is `{0}` for `N`.
    pub null_fraction: f64,
    /// Plant a derivative (`M = ∫ θ dN`) instead of drawing `M` independently.
    pub plant: bool,
    /// For independent draws, put a non-null `M` atom on an `N`-null atom.
    pub break_continuity: bool,
}

impl Default for Profile {
    fn default() -> Self {
        Profile {
            atoms: 4,
            dim: 2,
            body: BodyKind::Polytope,
            point_fraction: 0.25,
            null_fraction: 0.1,
            plant: true,
            break_continuity: false,
        }
    }
}

impl Profile {
    pub fn validate(&self) -> Result<()> {
        if self.atoms == 0 || self.atoms > 12 {
            return Err(Error::Argument(format!("profile atoms {} outside 1..=12", self.atoms)));
        }
        if self.dim == 0 || self.dim > 3 {
            return Err(Error::Argument(format!("profile dimension {} outside 1..=3", self.dim)));
        }
        for (name, p) in [("point_fraction", self.point_fraction), ("null_fraction", self.null_fraction)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Argument(format!("{name} {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// A generated pair and, when planted, its derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomScenario {
    pub pair: Pair,
    pub planted: Option<MeasurableFunction>,
}

/// The generator behind [`random_scenario`], for callers drawing their own parameters.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Null,
    Point,
    Set,
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect()
}

/// A random non-point body of the profile's kind.
pub fn random_body(rng: &mut ChaCha8Rng, dim: usize, kind: BodyKind) -> Result<ConvexBody> {
    loop {
        let body = match (kind, dim) {
            (_, 1) => {
                let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                ConvexBody::interval(f64::min(a, b), f64::max(a, b))?
            }
            (BodyKind::Ball, _) => ConvexBody::ball(random_point(rng, dim), rng.random_range(0.2..2.0))?,
            (BodyKind::Polytope, _) => {
                let count = rng.random_range(dim + 1..=dim + 4);
                ConvexBody::polytope((0..count).map(|_| random_point(rng, dim)).collect())?
            }
        };
        if body.spread() > 0.05 {
            return Ok(body);
        }
    }
}

fn random_nonzero_point(rng: &mut ChaCha8Rng, dim: usize) -> Result<ConvexBody> {
    loop {
        let p = random_point(rng, dim);
        if p.iter().any(|c| c.abs() > 0.1) {
            return ConvexBody::point(p);
        }
    }
}

/// Seeded random pair following `profile`.
///
/// Planted pairs have `M = ∫ θ dN` with `|θ| ∈ [0.1, 5]` of random sign on
/// non-null atoms. Independent pairs share the atom kinds of `N` (so they
/// are consistent) but draw `M` separately.
pub fn random_scenario(profile: &Profile, seed: u64) -> Result<RandomScenario> {
    profile.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (k, dim) = (profile.atoms, profile.dim);
    let space = FiniteMeasurableSpace::with_atoms(k)?;
    let mut kinds: Vec<Kind> = (0..k)
        .map(|_| {
            let r: f64 = rng.random();
            if r < profile.null_fraction {
                Kind::Null
            } else if r < profile.null_fraction + (1.0 - profile.null_fraction) * profile.point_fraction {
                Kind::Point
            } else {
                Kind::Set
            }
        })
        .collect();
    if profile.break_continuity && !kinds.contains(&Kind::Null) {
        kinds[rng.random_range(0..k)] = Kind::Null;
    }
    let draw = |rng: &mut ChaCha8Rng, kind: Kind| -> Result<ConvexBody> {
        match kind {
            Kind::Null => Ok(ConvexBody::zero(dim)),
            Kind::Point => random_nonzero_point(rng, dim),
            Kind::Set => random_body(rng, dim, profile.body),
        }
    };
    let n_atoms = kinds.iter().map(|&kd| draw(&mut rng, kd)).collect::<Result<Vec<_>>>()?;
    let n = Multimeasure::new(space.clone(), n_atoms)?;
    if profile.plant {
        let theta: Vec<f64> = kinds
            .iter()
            .map(|&kd| {
                let mag = rng.random_range(0.1..5.0);
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                if kd == Kind::Null {
                    0.0
                } else {
                    sign * mag
                }
            })
            .collect();
        let theta = MeasurableFunction::new(space, theta)?;
        return Ok(RandomScenario {
            pair: plant(&theta, &n)?,
            planted: Some(theta),
        });
    }
    let mut m_atoms = kinds.iter().map(|&kd| draw(&mut rng, kd)).collect::<Result<Vec<_>>>()?;
    if profile.break_continuity {
        let w = kinds.iter().position(|&kd| kd == Kind::Null).expect("null atom present");
        m_atoms[w] = random_body(&mut rng, dim, profile.body)?;
    }
    Ok(RandomScenario {
        pair: Pair {
            m: Multimeasure::new(space, m_atoms)?,
            n,
        },
        planted: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::EPS_GEOM;
    use crate::rn::derive;

    fn space(n: usize) -> FiniteMeasurableSpace {
        FiniteMeasurableSpace::with_atoms(n).unwrap()
    }

    fn measure(v: &[f64]) -> SignedMeasure {
        SignedMeasure::new(space(v.len()), v.to_vec()).unwrap()
    }

    fn iv(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::interval(lo, hi).unwrap()
    }

    #[test]
    fn interval_mm_examples() {
        let n = make_interval_mm(&measure(&[1.0, 2.0])).unwrap();
        assert_eq!(n.atoms(), &[iv(0.0, 1.0), iv(0.0, 2.0)]);
        assert_eq!(n.eval(&Event::full(2)).unwrap(), iv(0.0, 3.0));
        let z = make_interval_mm(&measure(&[0.0, 0.0])).unwrap();
        assert!(z.is_null(&Event::full(2), EPS_GEOM).unwrap());
        assert!(make_interval_mm(&measure(&[1.0, -1.0])).is_err());
    }

    #[test]
    fn interval_pair_examples() {
        let d1 = DirectionSet::axis(1).unwrap();
        let p = make_interval_pair(&measure(&[1.0, 1.0]), &measure(&[2.0, 5.0])).unwrap();
        assert_eq!(derive(&p.m, &p.n, &d1, EPS_GEOM).unwrap().theta.values(), &[2.0, 5.0]);
        let p = make_interval_pair(&measure(&[1.0, 3.0]), &measure(&[1.0, 3.0])).unwrap();
        assert_eq!(derive(&p.m, &p.n, &d1, EPS_GEOM).unwrap().theta.values(), &[1.0, 1.0]);
        let p = make_interval_pair(&measure(&[0.0, 1.0]), &measure(&[1.0, 0.0])).unwrap();
        assert!(matches!(
            derive(&p.m, &p.n, &d1, EPS_GEOM),
            Err(Error::NotAbsolutelyContinuous { atom: 0 })
        ));
    }

    #[test]
    fn range_mm_examples() {
        let p = make_range_mm(&[vec![1.0], vec![-1.0]], 16).unwrap();
        assert_eq!(p.m.eval(&Event::full(2)).unwrap(), iv(-1.0, 1.0));
        let p = make_range_mm(&[vec![2.0]], 16).unwrap();
        assert_eq!(p.m.atom(0), &iv(0.0, 2.0));
        assert!(matches!(make_range_mm(&vec![vec![1.0]; 5], 4), Err(Error::Cap { .. })));
    }

    #[test]
    fn random_scenarios_are_deterministic() {
        let profile = Profile::default();
        assert_eq!(random_scenario(&profile, 7).unwrap(), random_scenario(&profile, 7).unwrap());
        assert_ne!(random_scenario(&profile, 7).unwrap(), random_scenario(&profile, 8).unwrap());
        let bad = Profile {
            atoms: 13,
            ..Profile::default()
        };
        assert!(random_scenario(&bad, 0).is_err());
    }

    #[test]
    fn planted_zero_gives_zero() {
        let n = make_interval_mm(&measure(&[1.0, 2.0])).unwrap();
        let p = plant(&MeasurableFunction::constant(space(2), 0.0), &n).unwrap();
        assert!(p.m.is_null(&Event::full(2), EPS_GEOM).unwrap());
    }
}
