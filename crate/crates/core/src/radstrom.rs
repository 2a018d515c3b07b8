//! Direction sets on the unit sphere and the embedding `B ↦ h_B(·)`.
//!
//! A convex body is identified with its support function sampled on a
//! fixed, ordered [`DirectionSet`]. Under this identification Minkowski
//! sums become vector sums, nonnegative scaling becomes scalar
//! multiplication, and the Hausdorff distance is approached from below by
//! the sup-norm of differences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::convex::{hausdorff, sampled_support_gap, ConvexBody, Direction};
use crate::error::{Error, Result};
use crate::measure::{Event, MeasurableFunction};
use crate::multimeasure::Multimeasure;

const GOLDEN_STEP: f64 = 0.618_033_988_749_894_9;
// Reciprocals of the plastic number and its square: the two-dimensional
// Kronecker step with the lowest known discrepancy.
const PLASTIC_STEP_1: f64 = 0.754_877_666_246_692_7;
const PLASTIC_STEP_2: f64 = 0.569_840_290_998_053_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Axis,
    LowDiscrepancy { count: usize, seed: u64 },
    Explicit,
}

/// Ordered, nonempty list of unit directions sharing one dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionSet {
    dim: usize,
    directions: Vec<Direction>,
    provenance: Provenance,
}

fn axis_directions(dim: usize) -> Vec<Direction> {
    (0..dim)
        .flat_map(|k| [Direction::axis(dim, k, true), Direction::axis(dim, k, false)])
        .collect()
}

/// Default size of the shared direction set for a given dimension.
pub fn default_direction_count(dim: usize) -> usize {
    (2 * dim).max(16 * dim.saturating_sub(1))
}

impl DirectionSet {
    /// The `2d` coordinate directions `+e1, -e1, +e2, -e2, ...`.
    pub fn axis(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Argument("dimension must be positive".into()));
        }
        Ok(DirectionSet {
            dim,
            directions: axis_directions(dim),
            provenance: Provenance::Axis,
        })
    }

    /// Axis directions followed by a seeded low-discrepancy sequence.
    ///
    /// Sets with the same `(dim, seed)` are nested: a shorter set is a prefix
    /// of a longer one. In dimension one the set is always `{+1, -1}`.
    pub fn low_discrepancy(dim: usize, count: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Argument("dimension must be positive".into()));
        }
        if count < 2 * dim {
            return Err(Error::Argument(format!(
                "direction count {count} is below the {} axis directions",
                2 * dim
            )));
        }
        let mut directions = axis_directions(dim);
        if dim > 1 {
            let extra = count - 2 * dim;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match dim {
                2 => {
                    let offset: f64 = rng.random();
                    for k in 0..extra {
                        let t = (offset + k as f64 * GOLDEN_STEP).fract();
                        let a = std::f64::consts::TAU * t;
                        directions.push(Direction::normalized(vec![a.cos(), a.sin()])?);
                    }
                }
                3 => {
                    let (s1, s2): (f64, f64) = (rng.random(), rng.random());
                    for k in 0..extra {
                        let z = 1.0 - 2.0 * (s1 + k as f64 * PLASTIC_STEP_1).fract();
                        let phi = std::f64::consts::TAU * (s2 + k as f64 * PLASTIC_STEP_2).fract();
                        let r = (1.0 - z * z).max(0.0).sqrt();
                        directions.push(Direction::normalized(vec![
                            r * phi.cos(),
                            r * phi.sin(),
                            z,
                        ])?);
                    }
                }
                _ => {
                    for _ in 0..extra {
                        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
                        directions.push(Direction::normalized(v)?);
                    }
                }
            }
        }
        Ok(DirectionSet {
            dim,
            directions,
            provenance: Provenance::LowDiscrepancy { count, seed },
        })
    }

    pub fn explicit(directions: Vec<Direction>) -> Result<Self> {
        let dim = directions
            .first()
            .ok_or_else(|| Error::Argument("empty direction set".into()))?
            .dim();
        if let Some(bad) = directions.iter().find(|u| u.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(DirectionSet {
            dim,
            directions,
            provenance: Provenance::Explicit,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Direction> {
        self.directions.iter()
    }

    pub fn get(&self, i: usize) -> &Direction {
        &self.directions[i]
    }

    pub fn as_slice(&self) -> &[Direction] {
        &self.directions
    }
}

/// Seeded direction set with axis directions first.
pub fn make_directions(dim: usize, count: usize, seed: u64) -> Result<DirectionSet> {
    DirectionSet::low_discrepancy(dim, count, seed)
}

/// Support values of a body on a direction set.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EmbeddedVector(pub Vec<f64>);

impl EmbeddedVector {
    pub fn sup_distance(&self, other: &EmbeddedVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn embed(body: &ConvexBody, dirs: &DirectionSet) -> Result<EmbeddedVector> {
    if body.dim() != dirs.dim() {
        return Err(Error::Dimension {
            expected: dirs.dim(),
            found: body.dim(),
        });
    }
    Ok(EmbeddedVector(
        dirs.iter().map(|u| body.support_at(u.as_slice())).collect(),
    ))
}

/// Max over `dirs` of `|j(αA ⊕ βC) - α j(A) - β j(C)|`.
pub fn check_embedding_a(
    a: &ConvexBody,
    c: &ConvexBody,
    alpha: f64,
    beta: f64,
    dirs: &DirectionSet,
) -> Result<f64> {
    if alpha < 0.0 || beta < 0.0 {
        return Err(Error::Argument(
            "embedding is additive only for nonnegative coefficients".into(),
        ));
    }
    let combo = a.scale(alpha).minkowski_sum(&c.scale(beta))?;
    let (jc, ja, jb) = (embed(&combo, dirs)?, embed(a, dirs)?, embed(c, dirs)?);
    Ok(jc
        .0
        .iter()
        .zip(ja.0.iter().zip(&jb.0))
        .map(|(s, (x, y))| (s - alpha * x - beta * y).abs())
        .fold(0.0, f64::max))
}

/// Sampled sup-norm distance against the Hausdorff distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsometryGap {
    pub sampled_sup: f64,
    pub exact_dh: f64,
    pub exact: bool,
    pub gap: f64,
}

pub fn check_embedding_b(a: &ConvexBody, c: &ConvexBody, dirs: &DirectionSet) -> Result<IsometryGap> {
    let sampled_sup = sampled_support_gap(a, c, dirs)?;
    let h = hausdorff(a, c)?;
    Ok(IsometryGap {
        sampled_sup,
        exact_dh: h.distance,
        exact: h.exact,
        gap: h.distance - sampled_sup,
    })
}

/// Max over `dirs` of the defect in
/// `h_{M(E)}(u) = ∫_E θ⁺ d h_N(u) + ∫_E θ⁻ d h_{-N}(u)`.
///
/// The left side comes from the Minkowski sum `M(E)`; the right side from
/// scalar integrals of the atomwise support measures.
pub fn embedded_rn_residual(
    m: &Multimeasure,
    n: &Multimeasure,
    theta: &MeasurableFunction,
    dirs: &DirectionSet,
    event: &Event,
) -> Result<f64> {
    m.space().check_same(n.space())?;
    m.space().check_same(theta.space())?;
    m.space().check_event(event)?;
    let me = m.eval(event)?;
    let neg_n = n.negate();
    let (tp, tm) = (theta.positive_part(), theta.negative_part());
    let mut worst = 0.0f64;
    for u in dirs.iter() {
        let lhs = me.support(u)?;
        let rhs = tp.integrate(&n.support_measure(u)?, event)?
            + tm.integrate(&neg_n.support_measure(u)?, event)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_set_examples() {
        let d1 = make_directions(1, 2, 99).unwrap();
        assert_eq!(d1.len(), 2);
        assert_eq!(d1.get(0).as_slice(), &[1.0]);
        assert_eq!(d1.get(1).as_slice(), &[-1.0]);
        assert_eq!(make_directions(1, 7, 3).unwrap().len(), 2);

        let d2 = make_directions(2, 4, 5).unwrap();
        let got: Vec<&[f64]> = d2.iter().map(|u| u.as_slice()).collect();
        assert_eq!(got, vec![&[1.0, 0.0][..], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);

        assert_eq!(make_directions(3, 40, 11).unwrap(), make_directions(3, 40, 11).unwrap());
        assert!(make_directions(2, 3, 0).is_err());
    }

    #[test]
    fn sets_are_nested_and_unit() {
        for dim in 2..=4 {
            let small = make_directions(dim, 20, 4).unwrap();
            let large = make_directions(dim, 60, 4).unwrap();
            assert_eq!(&large.as_slice()[..20], small.as_slice());
            for u in large.iter() {
                let n: f64 = u.as_slice().iter().map(|c| c * c).sum::<f64>().sqrt();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn embed_examples() {
        let d1 = DirectionSet::axis(1).unwrap();
        let e = embed(&ConvexBody::interval(0.0, 3.0).unwrap(), &d1).unwrap();
        assert_eq!(e.0, vec![3.0, 0.0]);
        let d2 = make_directions(2, 12, 1).unwrap();
        assert!(embed(&ConvexBody::zero(2), &d2).unwrap().0.iter().all(|&v| v == 0.0));
        let sq = ConvexBody::polytope(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(embed(&sq, &DirectionSet::axis(2).unwrap()).unwrap().0, vec![1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn property_a_examples() {
        let d1 = DirectionSet::axis(1).unwrap();
        let a = ConvexBody::interval(0.0, 1.0).unwrap();
        assert_eq!(check_embedding_a(&a, &a, 1.0, 1.0, &d1).unwrap(), 0.0);
        assert_eq!(check_embedding_a(&a, &a, 0.0, 2.5, &d1).unwrap(), 0.0);
        assert!(check_embedding_a(&a, &a, -1.0, 1.0, &d1).is_err());
    }

    #[test]
    fn property_b_examples() {
        let d1 = DirectionSet::axis(1).unwrap();
        let g = check_embedding_b(
            &ConvexBody::interval(0.0, 1.0).unwrap(),
            &ConvexBody::interval(0.0, 3.0).unwrap(),
            &d1,
        )
        .unwrap();
        assert_eq!((g.sampled_sup, g.exact_dh, g.gap), (2.0, 2.0, 0.0));

        let sq = ConvexBody::polytope(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        let g = check_embedding_b(&sq, &sq, &d1_or_2(2)).unwrap();
        assert_eq!((g.sampled_sup, g.exact_dh, g.gap), (0.0, 0.0, 0.0));
        let g = check_embedding_b(&sq, &sq.scale(2.0), &make_directions(2, 720, 0).unwrap()).unwrap();
        assert!(g.gap >= 0.0);
        assert!(g.gap <= 1e-2 * g.exact_dh);
    }

    fn d1_or_2(dim: usize) -> DirectionSet {
        make_directions(dim, 64, 0).unwrap()
    }
}
