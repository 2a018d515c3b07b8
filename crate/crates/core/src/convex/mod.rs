//! Convex bodies in ℝ^d described by support functions.
//!
//! Three shapes are exact: closed intervals on the line, polytopes given by
//! vertices, and Euclidean balls. Everything downstream (multimeasures,
//! integrals, derivative fits) only ever asks a body for its support value
//! `h_B(u) = sup { <u, x> : x ∈ B }`, so the shapes are kept as small closed
//! forms and combined through Minkowski sums.
//!
//! Dimension one is always normalized to [`Shape::Interval`]. Polytopes in
//! two and three dimensions are stored as their extreme points (the planar
//! ones in counter-clockwise order).

mod hull;
pub mod vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radstrom::DirectionSet;
use vec::{add, dot, norm, scaled, segment_distance, sub};

pub use hull::{hull_2d, hull_3d};

/// Default geometric tolerance on support values and coordinates.
pub const EPS_GEOM: f64 = 1e-9;

/// Number of sampled directions used when an exact route is unavailable.
pub const FALLBACK_DIRECTIONS: usize = 4096;

/// A unit vector of ℝ^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Accepts `components` only if its Euclidean norm is within 1e-12 of one.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        let n = norm(&components);
        if components.is_empty() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::Argument(format!(
                "direction must have unit norm, got {n}"
            )));
        }
        Ok(Direction(components))
    }

    /// Rescales a nonzero vector onto the unit sphere.
    pub fn normalized(components: Vec<f64>) -> Result<Self> {
        let n = norm(&components);
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::Argument("cannot normalize a zero vector".into()));
        }
        Ok(Direction(components.into_iter().map(|c| c / n).collect()))
    }

    pub fn axis(dim: usize, k: usize, positive: bool) -> Self {
        let mut v = vec![0.0; dim];
        v[k] = if positive { 1.0 } else { -1.0 };
        Direction(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        Direction(self.0.iter().map(|c| -c).collect())
    }
}

/// Concrete representation of a body.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Interval { lo: f64, hi: f64 },
    Polytope { vertices: Vec<Vec<f64>> },
    Ball { center: Vec<f64>, radius: f64 },
}

/// A nonempty compact convex subset of ℝ^d.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "BodyLiteral")]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
}

/// Text form of a body: `{"interval": [lo, hi]}`, `{"polytope": [[x, y], ...]}`,
/// `{"ball": {"center": [..], "radius": r}}`, `{"point": [..]}` or `{"zero": d}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyLiteral {
    Interval([f64; 2]),
    Polytope(Vec<Vec<f64>>),
    Ball { center: Vec<f64>, radius: f64 },
    Point(Vec<f64>),
    Zero(usize),
}

impl From<ConvexBody> for BodyLiteral {
    fn from(b: ConvexBody) -> Self {
        match b.shape {
            Shape::Interval { lo, hi } => BodyLiteral::Interval([lo, hi]),
            Shape::Polytope { vertices } => BodyLiteral::Polytope(vertices),
            Shape::Ball { center, radius } => BodyLiteral::Ball { center, radius },
        }
    }
}

impl TryFrom<BodyLiteral> for ConvexBody {
    type Error = Error;

    fn try_from(lit: BodyLiteral) -> Result<Self> {
        match lit {
            BodyLiteral::Interval([lo, hi]) => ConvexBody::interval(lo, hi),
            BodyLiteral::Polytope(v) => ConvexBody::polytope(v),
            BodyLiteral::Ball { center, radius } => ConvexBody::ball(center, radius),
            BodyLiteral::Point(p) => ConvexBody::point(p),
            BodyLiteral::Zero(d) if d > 0 => Ok(ConvexBody::zero(d)),
            BodyLiteral::Zero(_) => Err(Error::Argument("dimension must be positive".into())),
        }
    }
}

fn check_finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Argument("non-finite coordinate".into()))
    }
}

impl ConvexBody {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        check_finite(&[lo, hi])?;
        if lo > hi {
            return Err(Error::Argument(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(ConvexBody {
            dim: 1,
            shape: Shape::Interval { lo, hi },
        })
    }

    /// Convex hull of `vertices`; duplicates and non-extreme points are dropped.
    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match vertices.first() {
            None => return Err(Error::Argument("polytope needs at least one vertex".into())),
            Some(v) if v.is_empty() => {
                return Err(Error::Argument("zero-dimensional vertex".into()))
            }
            Some(v) => v.len(),
        };
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: v.len(),
                });
            }
            check_finite(v)?;
        }
        Ok(Self::canonical_polytope(dim, vertices))
    }

    fn canonical_polytope(dim: usize, vertices: Vec<Vec<f64>>) -> Self {
        match dim {
            1 => {
                let lo = vertices.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
                let hi = vertices.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
                ConvexBody {
                    dim,
                    shape: Shape::Interval { lo, hi },
                }
            }
            2 => ConvexBody {
                dim,
                shape: Shape::Polytope {
                    vertices: hull_2d(&vertices),
                },
            },
            3 => ConvexBody {
                dim,
                shape: Shape::Polytope {
                    vertices: hull_3d(&vertices),
                },
            },
            _ => ConvexBody {
                dim,
                shape: Shape::Polytope {
                    vertices: hull::dedup(&vertices, 0.0),
                },
            },
        }
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::Argument("ball center has no coordinates".into()));
        }
        check_finite(&center)?;
        if radius < 0.0 || !radius.is_finite() {
            return Err(Error::Argument(format!("ball radius {radius} must be ≥ 0")));
        }
        if center.len() == 1 {
            return Self::interval(center[0] - radius, center[0] + radius);
        }
        Ok(ConvexBody {
            dim: center.len(),
            shape: Shape::Ball { center, radius },
        })
    }

    pub fn point(coords: Vec<f64>) -> Result<Self> {
        Self::polytope(vec![coords])
    }

    /// The singleton `{0}` in ℝ^dim.
    pub fn zero(dim: usize) -> Self {
        Self::canonical_polytope(dim, vec![vec![0.0; dim]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if self.dim == found {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                found,
            })
        }
    }

    /// Support value at a unit direction.
    pub fn support(&self, u: &Direction) -> Result<f64> {
        self.check_dim(u.dim())?;
        Ok(self.support_at(u.as_slice()))
    }

    /// Positively homogeneous support function at an arbitrary vector `x`.
    ///
    /// The caller guarantees `x.len() == self.dim()`.
    pub fn support_at(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.shape {
            Shape::Interval { lo, hi } => (x[0] * lo).max(x[0] * hi),
            Shape::Polytope { vertices } => vertices
                .iter()
                .map(|v| dot(v, x))
                .fold(f64::NEG_INFINITY, f64::max),
            Shape::Ball { center, radius } => dot(center, x) + radius * norm(x),
        }
    }

    /// Extreme points, or `None` for a ball of positive radius.
    pub fn vertices(&self) -> Option<Vec<Vec<f64>>> {
        match &self.shape {
            Shape::Interval { lo, hi } if lo == hi => Some(vec![vec![*lo]]),
            Shape::Interval { lo, hi } => Some(vec![vec![*lo], vec![*hi]]),
            Shape::Polytope { vertices } => Some(vertices.clone()),
            Shape::Ball { center, radius } if *radius == 0.0 => Some(vec![center.clone()]),
            Shape::Ball { .. } => None,
        }
    }

    /// Diameter of the body.
    pub fn spread(&self) -> f64 {
        match &self.shape {
            Shape::Interval { lo, hi } => hi - lo,
            Shape::Ball { radius, .. } => 2.0 * radius,
            Shape::Polytope { vertices } => {
                let mut d = 0.0f64;
                for (i, a) in vertices.iter().enumerate() {
                    for b in &vertices[i + 1..] {
                        d = d.max(norm(&sub(a, b)));
                    }
                }
                d
            }
        }
    }

    /// Some point of the body; the center for balls and intervals.
    pub fn anchor(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Interval { lo, hi } => vec![0.5 * (lo + hi)],
            Shape::Polytope { vertices } => vertices[0].clone(),
            Shape::Ball { center, .. } => center.clone(),
        }
    }

    /// `Some(point)` when the body is a singleton up to `tol`.
    pub fn singleton(&self, tol: f64) -> Option<Vec<f64>> {
        (self.spread() <= tol).then(|| self.anchor())
    }

    /// True when the body is `{0}` up to `tol`.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.singleton(tol)
            .is_some_and(|p| p.iter().all(|c| c.abs() <= tol))
    }

    /// Closed Minkowski sum `self ⊕ other`.
    ///
    /// Mixed ball/polytope sums are only supported when one side is a
    /// single point (a translation).
    pub fn minkowski_sum(&self, other: &ConvexBody) -> Result<ConvexBody> {
        self.check_dim(other.dim)?;
        use Shape::*;
        match (&self.shape, &other.shape) {
            (Interval { lo: a, hi: b }, Interval { lo: c, hi: d }) => {
                ConvexBody::interval(a + c, b + d)
            }
            (Polytope { vertices: va }, Polytope { vertices: vb }) => {
                let mut sums = Vec::with_capacity(va.len() * vb.len());
                for a in va {
                    for b in vb {
                        sums.push(add(a, b));
                    }
                }
                Ok(Self::canonical_polytope(self.dim, sums))
            }
            (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) => {
                ConvexBody::ball(add(c1, c2), r1 + r2)
            }
            (Ball { center, radius }, Polytope { vertices })
            | (Polytope { vertices }, Ball { center, radius }) => {
                if vertices.len() == 1 {
                    ConvexBody::ball(add(center, &vertices[0]), *radius)
                } else if *radius == 0.0 {
                    let moved = vertices.iter().map(|v| add(v, center)).collect();
                    Ok(Self::canonical_polytope(self.dim, moved))
                } else {
                    Err(Error::Shape(
                        "Minkowski sum of a ball and a non-degenerate polytope".into(),
                    ))
                }
            }
            _ => Err(Error::Shape("incompatible shapes".into())),
        }
    }

    /// `α·B = {α x : x ∈ B}`; α may be negative, `0·B = {0}`.
    pub fn scale(&self, alpha: f64) -> ConvexBody {
        if alpha == 0.0 {
            return ConvexBody::zero(self.dim);
        }
        let shape = match &self.shape {
            Shape::Interval { lo, hi } => {
                let (a, b) = (alpha * lo, alpha * hi);
                Shape::Interval {
                    lo: a.min(b),
                    hi: a.max(b),
                }
            }
            Shape::Polytope { vertices } => Shape::Polytope {
                vertices: vertices.iter().map(|v| scaled(v, alpha)).collect(),
            },
            Shape::Ball { center, radius } => Shape::Ball {
                center: scaled(center, alpha),
                radius: alpha.abs() * radius,
            },
        };
        ConvexBody {
            dim: self.dim,
            shape,
        }
    }

    /// Reflection through the origin, `-B`.
    pub fn negate(&self) -> ConvexBody {
        self.scale(-1.0)
    }

    fn is_proper_ball(&self) -> bool {
        matches!(self.shape, Shape::Ball { radius, .. } if radius > 0.0)
    }
}

/// Result of a Hausdorff distance computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hausdorff {
    pub distance: f64,
    /// False when the value is a supremum over sampled directions.
    pub exact: bool,
    /// Number of sampled directions for inexact values, zero otherwise.
    pub directions: usize,
}

/// Sup over `dirs` of `|h_A(u) - h_B(u)|`.
pub fn sampled_support_gap(a: &ConvexBody, b: &ConvexBody, dirs: &DirectionSet) -> Result<f64> {
    a.check_dim(b.dim)?;
    a.check_dim(dirs.dim())?;
    Ok(dirs
        .iter()
        .map(|u| (a.support_at(u.as_slice()) - b.support_at(u.as_slice())).abs())
        .fold(0.0, f64::max))
}

/// Hausdorff distance; exact for intervals, ball pairs and planar polytopes.
pub fn hausdorff(a: &ConvexBody, b: &ConvexBody) -> Result<Hausdorff> {
    a.check_dim(b.dim)?;
    use Shape::*;
    let exact = |distance| {
        Ok(Hausdorff {
            distance,
            exact: true,
            directions: 0,
        })
    };
    match (&a.shape, &b.shape) {
        (Interval { lo: a0, hi: a1 }, Interval { lo: b0, hi: b1 }) => {
            exact((a0 - b0).abs().max((a1 - b1).abs()))
        }
        (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) => {
            exact(norm(&sub(c1, c2)) + (r1 - r2).abs())
        }
        (Polytope { vertices: va }, Polytope { vertices: vb }) if a.dim == 2 => {
            let one_side = |from: &[Vec<f64>], to: &[Vec<f64>]| {
                from.iter()
                    .map(|v| polygon_distance(v, to))
                    .fold(0.0, f64::max)
            };
            exact(one_side(va, vb).max(one_side(vb, va)))
        }
        _ => {
            let dirs = DirectionSet::low_discrepancy(a.dim, FALLBACK_DIRECTIONS, 0)?;
            Ok(Hausdorff {
                distance: sampled_support_gap(a, b, &dirs)?,
                exact: false,
                directions: dirs.len(),
            })
        }
    }
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Distance from a planar point to a convex polygon given in CCW order.
fn polygon_distance(p: &[f64], poly: &[Vec<f64>]) -> f64 {
    match poly.len() {
        1 => norm(&sub(p, &poly[0])),
        2 => segment_distance(p, &poly[0], &poly[1]),
        k => {
            let inside = (0..k).all(|i| cross2(&poly[i], &poly[(i + 1) % k], p) >= 0.0);
            if inside {
                0.0
            } else {
                (0..k)
                    .map(|i| segment_distance(p, &poly[i], &poly[(i + 1) % k]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Outward normals that cut out a planar polytope (CCW vertex order).
fn planar_normals(poly: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let axes = vec![
        vec![1.0, 0.0],
        vec![-1.0, 0.0],
        vec![0.0, 1.0],
        vec![0.0, -1.0],
    ];
    match poly.len() {
        1 => axes,
        2 => {
            let d = sub(&poly[1], &poly[0]);
            let n = norm(&d);
            let t = vec![d[0] / n, d[1] / n];
            let p = vec![-t[1], t[0]];
            vec![t.clone(), scaled(&t, -1.0), p.clone(), scaled(&p, -1.0)]
        }
        k => (0..k)
            .map(|i| {
                let d = sub(&poly[(i + 1) % k], &poly[i]);
                let n = norm(&d);
                vec![d[1] / n, -d[0] / n]
            })
            .collect(),
    }
}

/// Outcome of a containment test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub inside: bool,
    /// False when the answer rests on sampled directions (d ≥ 3 polytopes).
    pub exact: bool,
}

/// `inner ⊆ outer` up to `tol` on support values.
pub fn contains_body(outer: &ConvexBody, inner: &ConvexBody, tol: f64) -> Result<Membership> {
    outer.check_dim(inner.dim)?;
    let dominated = |normals: &[Vec<f64>]| {
        normals
            .iter()
            .all(|u| inner.support_at(u) <= outer.support_at(u) + tol)
    };
    let exact = |inside| {
        Ok(Membership {
            inside,
            exact: true,
        })
    };
    match &outer.shape {
        Shape::Interval { .. } => exact(dominated(&[vec![1.0], vec![-1.0]])),
        Shape::Ball { center, radius } => match &inner.shape {
            Shape::Ball {
                center: c2,
                radius: r2,
            } => exact(norm(&sub(center, c2)) + r2 <= radius + tol),
            _ => {
                let verts = inner.vertices().expect("non-ball body has vertices");
                exact(verts.iter().all(|v| norm(&sub(v, center)) <= radius + tol))
            }
        },
        Shape::Polytope { vertices } if outer.dim == 2 => exact(dominated(&planar_normals(vertices))),
        Shape::Polytope { .. } => {
            let dirs = DirectionSet::low_discrepancy(outer.dim, FALLBACK_DIRECTIONS, 0)?;
            let normals: Vec<Vec<f64>> = dirs.iter().map(|u| u.as_slice().to_vec()).collect();
            Ok(Membership {
                inside: dominated(&normals),
                exact: false,
            })
        }
    }
}

/// `x ∈ body` up to `tol`.
pub fn contains_point(body: &ConvexBody, x: &[f64], tol: f64) -> Result<Membership> {
    contains_body(body, &ConvexBody::point(x.to_vec())?, tol)
}

/// `d · co(V ∪ -V)` where `V` collects the vertices of every body.
///
/// Its support function is `d · max_B max(h_B(u), h_B(-u))`.
pub fn aco_hull(bodies: &[ConvexBody], d: f64) -> Result<ConvexBody> {
    let first = bodies
        .first()
        .ok_or_else(|| Error::Argument("absolutely convex hull of an empty family".into()))?;
    if d < 0.0 || !d.is_finite() {
        return Err(Error::Argument(format!("hull factor {d} must be ≥ 0")));
    }
    let mut pts = Vec::new();
    for b in bodies {
        first.check_dim(b.dim)?;
        if b.is_proper_ball() {
            return Err(Error::Shape("absolutely convex hull of a ball".into()));
        }
        for v in b.vertices().expect("non-ball body has vertices") {
            pts.push(scaled(&v, -d));
            pts.push(scaled(&v, d));
        }
    }
    ConvexBody::polytope(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexBody {
        ConvexBody::polytope(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ])
        .unwrap()
    }

    fn square(side: f64) -> ConvexBody {
        unit_square().scale(side)
    }

    fn iv(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::interval(lo, hi).unwrap()
    }

    #[test]
    fn support_examples() {
        let plus = Direction::new(vec![1.0]).unwrap();
        assert_eq!(iv(0.0, 3.0).support(&plus).unwrap(), 3.0);
        assert_eq!(iv(0.0, 3.0).support(&plus.neg()).unwrap(), 0.0);
        // Brute force over the four vertices.
        let u = Direction::new(vec![1.0, 0.0]).unwrap();
        let brute = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
            .iter()
            .map(|v| v[0] * 1.0 + v[1] * 0.0)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(unit_square().support(&u).unwrap(), brute);
        assert!(matches!(
            unit_square().support(&plus),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(iv(0.0, 1.0).minkowski_sum(&iv(0.0, 2.0)).unwrap(), iv(0.0, 3.0));
        let b = unit_square();
        assert_eq!(b.minkowski_sum(&ConvexBody::zero(2)).unwrap(), b);
        let sum = b.minkowski_sum(&b).unwrap();
        assert!(hausdorff(&sum, &square(2.0)).unwrap().distance < 1e-12);
        let ball = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        assert!(matches!(ball.minkowski_sum(&b), Err(Error::Shape(_))));
        let moved = ball.minkowski_sum(&ConvexBody::point(vec![1.0, 2.0]).unwrap()).unwrap();
        assert_eq!(moved, ConvexBody::ball(vec![1.0, 2.0], 1.0).unwrap());
    }

    #[test]
    fn scale_examples() {
        assert_eq!(iv(0.0, 1.0).scale(2.0), iv(0.0, 2.0));
        assert_eq!(iv(0.0, 1.0).scale(-1.0), iv(-1.0, 0.0));
        assert_eq!(unit_square().scale(0.0), ConvexBody::point(vec![0.0, 0.0]).unwrap());
    }

    #[test]
    fn hausdorff_examples() {
        let h = hausdorff(&iv(0.0, 1.0), &iv(0.0, 3.0)).unwrap();
        assert_eq!(h.distance, 2.0);
        assert!(h.exact);
        assert_eq!(hausdorff(&unit_square(), &unit_square()).unwrap().distance, 0.0);
        let h = hausdorff(&unit_square(), &square(2.0)).unwrap();
        assert!((h.distance - 2f64.sqrt()).abs() < 1e-15);
        let b1 = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        let b2 = ConvexBody::ball(vec![3.0, 4.0], 2.0).unwrap();
        assert_eq!(hausdorff(&b1, &b2).unwrap().distance, 6.0);
    }

    #[test]
    fn hausdorff_in_three_dimensions_is_tagged_approximate() {
        let a = ConvexBody::point(vec![0.0, 0.0, 0.0]).unwrap();
        let b = ConvexBody::point(vec![0.0, 0.0, 1.0]).unwrap();
        let h = hausdorff(&a, &b).unwrap();
        assert!(!h.exact);
        assert_eq!(h.directions, FALLBACK_DIRECTIONS);
        assert!(h.distance <= 1.0 && h.distance > 0.99);
    }

    #[test]
    fn aco_hull_examples() {
        assert_eq!(aco_hull(&[iv(0.0, 1.0)], 1.0).unwrap(), iv(-1.0, 1.0));
        assert_eq!(aco_hull(&[iv(2.0, 3.0)], 2.0).unwrap(), iv(-6.0, 6.0));
        assert_eq!(aco_hull(&[ConvexBody::zero(1)], 5.0).unwrap(), iv(0.0, 0.0));
        assert!(aco_hull(&[], 1.0).is_err());
        let ball = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        assert!(matches!(aco_hull(&[ball], 1.0), Err(Error::Shape(_))));
    }

    #[test]
    fn containment_examples() {
        assert!(contains_body(&iv(0.0, 2.0), &iv(0.0, 1.0), EPS_GEOM).unwrap().inside);
        assert!(!contains_point(&unit_square(), &[1.5, 0.0], EPS_GEOM).unwrap().inside);
        assert!(contains_point(&iv(-1.0, 1.0), &[1.0 + 1e-12], EPS_GEOM).unwrap().inside);
        assert!(!contains_point(&iv(-1.0, 1.0), &[1.0 + 1e-6], EPS_GEOM).unwrap().inside);
        let seg = ConvexBody::polytope(vec![vec![0.0, 0.0], vec![2.0, 2.0]]).unwrap();
        assert!(contains_point(&seg, &[1.0, 1.0], EPS_GEOM).unwrap().inside);
        assert!(!contains_point(&seg, &[1.0, 1.1], EPS_GEOM).unwrap().inside);
        let ball = ConvexBody::ball(vec![0.5, 0.5], 1.0).unwrap();
        assert!(contains_body(&ball, &unit_square(), EPS_GEOM).unwrap().inside);
        assert!(!contains_body(&unit_square(), &ball, EPS_GEOM).unwrap().inside);
    }

    #[test]
    fn one_dimensional_shapes_normalize_to_intervals() {
        assert_eq!(ConvexBody::ball(vec![1.0], 2.0).unwrap(), iv(-1.0, 3.0));
        assert_eq!(
            ConvexBody::polytope(vec![vec![3.0], vec![-1.0], vec![0.0]]).unwrap(),
            iv(-1.0, 3.0)
        );
    }

    #[test]
    fn invalid_inputs() {
        assert!(ConvexBody::interval(1.0, 0.0).is_err());
        assert!(ConvexBody::ball(vec![0.0, 0.0], -1.0).is_err());
        assert!(ConvexBody::polytope(vec![]).is_err());
        assert!(ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0]]).is_err());
        assert!(Direction::new(vec![1.0, 1.0]).is_err());
    }
}
