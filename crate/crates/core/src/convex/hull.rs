//! Convex hulls of small point sets in one, two and three dimensions.
//!
//! The planar hull is Andrew's monotone chain. The spatial hull is an
//! incremental beneath-beyond construction that falls back to the planar
//! routine when the input is coplanar. Both return extreme points only
//! (up to a relative tolerance), in no particular order for 3-D and in
//! counter-clockwise order for 2-D.

use super::vec::{cross3, dot, norm, sub};

/// Relative tolerance for orientation predicates inside the hull routines.
const HULL_REL_EPS: f64 = 1e-12;

fn scale_of(points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, &c| m.max(c.abs()))
        .max(1.0)
}

pub(crate) fn dedup(points: &[Vec<f64>], eps: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    for p in sorted {
        if !out
            .iter()
            .rev()
            .take(8)
            .any(|q| norm(&sub(&p, q)) <= eps)
        {
            out.push(p);
        }
    }
    out
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull of planar points; collinear points are dropped.
pub fn hull_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let scale = scale_of(points);
    let eps = HULL_REL_EPS * scale;
    let mut pts = dedup(points, eps);
    if pts.len() <= 2 {
        return pts;
    }
    pts.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap()
            .then(a[1].partial_cmp(&b[1]).unwrap())
    });
    let area_eps = eps * scale;
    let mut lower: Vec<Vec<f64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= area_eps
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= area_eps
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // Fully collinear input collapses to a doubled segment.
    if lower.len() == 2 && norm(&sub(&lower[0], &lower[1])) <= eps {
        lower.truncate(1);
    }
    lower
}

struct Face {
    v: [usize; 3],
    normal: Vec<f64>,
    offset: f64,
}

impl Face {
    fn new(pts: &[Vec<f64>], v: [usize; 3]) -> Self {
        let n = cross3(&sub(&pts[v[1]], &pts[v[0]]), &sub(&pts[v[2]], &pts[v[0]]));
        let len = norm(&n);
        let normal: Vec<f64> = n.iter().map(|c| c / len).collect();
        let offset = dot(&normal, &pts[v[0]]);
        Face { v, normal, offset }
    }

    fn distance(&self, p: &[f64]) -> f64 {
        dot(&self.normal, p) - self.offset
    }
}

/// Extreme points of a spatial point set.
pub fn hull_3d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let scale = scale_of(points);
    let eps = HULL_REL_EPS * scale * 16.0;
    let pts = dedup(points, eps);
    if pts.len() <= 2 {
        return pts;
    }

    // Initial simplex: two far points, the farthest from their line, the
    // farthest from their plane.
    let i0 = 0;
    let i1 = (0..pts.len())
        .max_by(|&a, &b| {
            norm(&sub(&pts[a], &pts[i0]))
                .partial_cmp(&norm(&sub(&pts[b], &pts[i0])))
                .unwrap()
        })
        .unwrap();
    let axis = sub(&pts[i1], &pts[i0]);
    let line_dist = |p: &[f64]| norm(&cross3(&axis, &sub(p, &pts[i0]))) / norm(&axis);
    let i2 = (0..pts.len())
        .max_by(|&a, &b| line_dist(&pts[a]).partial_cmp(&line_dist(&pts[b])).unwrap())
        .unwrap();
    if line_dist(&pts[i2]) <= eps {
        return collinear_extremes(&pts, &axis);
    }
    let plane_n = cross3(&axis, &sub(&pts[i2], &pts[i0]));
    let plane_len = norm(&plane_n);
    let plane_dist = |p: &[f64]| dot(&plane_n, &sub(p, &pts[i0])) / plane_len;
    let i3 = (0..pts.len())
        .max_by(|&a, &b| {
            plane_dist(&pts[a])
                .abs()
                .partial_cmp(&plane_dist(&pts[b]).abs())
                .unwrap()
        })
        .unwrap();
    if plane_dist(&pts[i3]).abs() <= eps {
        return coplanar_hull(&pts, &pts[i0], &axis, &plane_n);
    }

    let mut faces: Vec<Face> = Vec::new();
    let simplex = [i0, i1, i2, i3];
    let centroid: Vec<f64> = (0..3)
        .map(|k| simplex.iter().map(|&i| pts[i][k]).sum::<f64>() / 4.0)
        .collect();
    for tri in [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]] {
        let mut f = Face::new(&pts, tri);
        if f.distance(&centroid) > 0.0 {
            f = Face::new(&pts, [tri[0], tri[2], tri[1]]);
        }
        faces.push(f);
    }

    for (p_idx, p) in pts.iter().enumerate() {
        if simplex.contains(&p_idx) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| f.distance(p) > eps).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for k in 0..3 {
                edges.push((f.v[k], f.v[(k + 1) % 3]));
            }
        }
        let horizon: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| !edges.contains(&(b, a)))
            .collect();
        let mut kept: Vec<Face> = faces
            .into_iter()
            .zip(visible)
            .filter_map(|(f, v)| (!v).then_some(f))
            .collect();
        for (a, b) in horizon {
            kept.push(Face::new(&pts, [a, b, p_idx]));
        }
        faces = kept;
    }

    let mut used: Vec<usize> = faces.iter().flat_map(|f| f.v).collect();
    used.sort_unstable();
    used.dedup();
    used.into_iter().map(|i| pts[i].clone()).collect()
}

fn collinear_extremes(pts: &[Vec<f64>], axis: &[f64]) -> Vec<Vec<f64>> {
    let key = |p: &Vec<f64>| dot(p, axis);
    let lo = pts
        .iter()
        .min_by(|a, b| key(a).partial_cmp(&key(b)).unwrap())
        .unwrap();
    let hi = pts
        .iter()
        .max_by(|a, b| key(a).partial_cmp(&key(b)).unwrap())
        .unwrap();
    vec![lo.clone(), hi.clone()]
}

fn coplanar_hull(
    pts: &[Vec<f64>],
    origin: &[f64],
    axis: &[f64],
    plane_n: &[f64],
) -> Vec<Vec<f64>> {
    let e1: Vec<f64> = axis.iter().map(|c| c / norm(axis)).collect();
    let e2_raw = cross3(plane_n, &e1);
    let e2: Vec<f64> = e2_raw.iter().map(|c| c / norm(&e2_raw)).collect();
    let flat: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| {
            let d = sub(p, origin);
            vec![dot(&d, &e1), dot(&d, &e2)]
        })
        .collect();
    let hull = hull_2d(&flat);
    // Map hull points back to the original vertices by index.
    hull.iter()
        .map(|h| {
            let idx = flat
                .iter()
                .position(|q| q[0] == h[0] && q[1] == h[1])
                .expect("hull point comes from input");
            pts[idx].clone()
        })
        .collect()
}
