//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes and returns JSON strings so the page needs no
//! generated type glue beyond the function shims.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use mvmeasure::convex::{hausdorff, sampled_support_gap};
use mvmeasure::integral::bds_integrate;
use mvmeasure::{ConvexBody, DirectionSet, Error, FiniteMeasurableSpace, MeasurableFunction, Multimeasure};

type Polygon = Vec<[f64; 2]>;

fn polygon(points: &[[f64; 2]]) -> Result<ConvexBody, Error> {
    ConvexBody::polytope(points.iter().map(|p| p.to_vec()).collect())
}

/// Vertices in order; balls are traced with 96 points.
fn outline(b: &ConvexBody) -> Polygon {
    match b.vertices() {
        Some(v) => v.iter().map(|p| [p[0], p[1]]).collect(),
        None => {
            let c = b.anchor();
            let r = b.spread() / 2.0;
            (0..96)
                .map(|k| {
                    let a = std::f64::consts::TAU * k as f64 / 96.0;
                    [c[0] + r * a.cos(), c[1] + r * a.sin()]
                })
                .collect()
        }
    }
}

#[derive(Debug, Serialize)]
pub struct IntegralView {
    pub atoms: Vec<Polygon>,
    pub total: Polygon,
    pub integral: Polygon,
    /// Largest gap between the body and the scalar support integrals.
    pub residual: f64,
}

pub fn integrate_view(atoms: &[Polygon], f: &[f64]) -> Result<IntegralView, Error> {
    if atoms.len() != f.len() {
        return Err(Error::Argument(format!("{} atoms but {} function values", atoms.len(), f.len())));
    }
    let space = FiniteMeasurableSpace::with_atoms(atoms.len())?;
    let bodies = atoms.iter().map(|a| polygon(a)).collect::<Result<Vec<_>, _>>()?;
    let n = Multimeasure::new(space.clone(), bodies)?;
    let f = MeasurableFunction::new(space.clone(), f.to_vec())?;
    let full = space.full();
    let dirs = DirectionSet::low_discrepancy(2, 64, 0)?;
    let r = bds_integrate(&f, &n, &full, &dirs)?;
    Ok(IntegralView {
        atoms: n.atoms().iter().map(outline).collect(),
        total: outline(&n.eval(&full)?),
        integral: outline(&r.body),
        residual: r.residual,
    })
}

#[derive(Debug, Serialize)]
pub struct HausdorffView {
    pub exact: f64,
    pub sampled: f64,
    pub relative_gap: f64,
    pub directions: Vec<[f64; 2]>,
}

pub fn hausdorff_view(a: &[[f64; 2]], b: &[[f64; 2]], count: usize) -> Result<HausdorffView, Error> {
    let (a, b) = (polygon(a)?, polygon(b)?);
    let dirs = DirectionSet::low_discrepancy(2, count, 0)?;
    let exact = hausdorff(&a, &b)?.distance;
    let sampled = sampled_support_gap(&a, &b, &dirs)?;
    Ok(HausdorffView {
        exact,
        sampled,
        relative_gap: if exact > 0.0 { (exact - sampled) / exact } else { 0.0 },
        directions: dirs.iter().map(|u| [u.as_slice()[0], u.as_slice()[1]]).collect(),
    })
}

#[derive(Debug, Deserialize)]
pub struct Ball {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DeriveView {
    Derivative { theta: Vec<f64> },
    NoDerivative { atom: usize, reason: String, residual: f64 },
}

/// A zero radius gives the center point.
fn ball_body(b: &Ball) -> Result<ConvexBody, Error> {
    if b.radius == 0.0 {
        ConvexBody::point(b.center.to_vec())
    } else {
        ConvexBody::ball(b.center.to_vec(), b.radius)
    }
}

/// `dM/dN` for ball-valued multimeasures given atom by atom.
pub fn derive_view(m: &[Ball], n: &[Ball]) -> Result<DeriveView, Error> {
    if m.len() != n.len() || m.is_empty() {
        return Err(Error::Argument("M and N need the same positive number of balls".into()));
    }
    let space = FiniteMeasurableSpace::with_atoms(m.len())?;
    let build = |bs: &[Ball]| -> Result<Multimeasure, Error> {
        Multimeasure::new(space.clone(), bs.iter().map(ball_body).collect::<Result<Vec<_>, _>>()?)
    };
    let (mm, nn) = (build(m)?, build(n)?);
    let dirs = DirectionSet::low_discrepancy(2, 64, 0)?;
    match mvmeasure::rn::derive(&mm, &nn, &dirs, 1e-9) {
        Ok(cert) => Ok(DeriveView::Derivative {
            theta: cert.theta.values().to_vec(),
        }),
        Err(Error::NoDerivative { atom, reason, residual, .. }) => Ok(DeriveView::NoDerivative {
            atom,
            reason: reason.to_string(),
            residual,
        }),
        Err(e) => Err(e),
    }
}

fn respond<T: Serialize>(r: Result<T, Error>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

fn input<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, JsError> {
    serde_json::from_str(text).map_err(|e| JsError::new(&format!("bad input: {e}")))
}

/// `atoms`: `[[[x, y], ...], ...]`; `f`: one value per atom.
#[wasm_bindgen]
pub fn integrate(atoms: &str, f: &[f64]) -> Result<String, JsError> {
    let atoms: Vec<Polygon> = input(atoms)?;
    respond(integrate_view(&atoms, f))
}

#[wasm_bindgen(js_name = hausdorffGap)]
pub fn hausdorff_gap(a: &str, b: &str, directions: usize) -> Result<String, JsError> {
    let (a, b): (Polygon, Polygon) = (input(a)?, input(b)?);
    respond(hausdorff_view(&a, &b, directions))
}

/// `m`, `n`: `[{"center": [x, y], "radius": r}, ...]`.
#[wasm_bindgen(js_name = deriveBalls)]
pub fn derive_balls(m: &str, n: &str) -> Result<String, JsError> {
    let (m, n): (Vec<Ball>, Vec<Ball>) = (input(m)?, input(n)?);
    respond(derive_view(&m, &n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(c: [f64; 2], h: f64) -> Polygon {
        vec![[c[0] - h, c[1] - h], [c[0] + h, c[1] - h], [c[0] + h, c[1] + h], [c[0] - h, c[1] + h]]
    }

    #[test]
    fn integral_of_squares() {
        let v = integrate_view(&[square([1.0, 0.0], 1.0), square([0.0, 2.0], 0.5)], &[2.0, -1.0]).unwrap();
        // 2·[0,2]×[-1,1] ⊕ -([-0.5,0.5]×[1.5,2.5]) = [-0.5,4.5]×[-4.5,0.5]
        let xs: Vec<f64> = v.integral.iter().map(|p| p[0]).collect();
        let ys: Vec<f64> = v.integral.iter().map(|p| p[1]).collect();
        assert_eq!(xs.iter().cloned().fold(f64::INFINITY, f64::min), -0.5);
        assert_eq!(xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 4.5);
        assert_eq!(ys.iter().cloned().fold(f64::INFINITY, f64::min), -4.5);
        assert_eq!(ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 0.5);
        assert!(v.residual <= 1e-12);
        assert!(integrate_view(&[square([0.0, 0.0], 1.0)], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn sampled_gap_shrinks() {
        let a = square([0.0, 0.0], 1.0);
        let b = vec![[0.3, -2.0], [2.5, 0.1], [-0.4, 1.7]];
        let coarse = hausdorff_view(&a, &b, 8).unwrap();
        let fine = hausdorff_view(&a, &b, 720).unwrap();
        assert_eq!(coarse.exact, fine.exact);
        assert!(fine.sampled >= coarse.sampled && fine.sampled <= fine.exact);
        assert_eq!(fine.directions.len(), 720);
    }

    #[test]
    fn ball_derivative_and_perturbation() {
        let n = vec![Ball { center: [1.0, 0.0], radius: 1.0 }, Ball { center: [0.0, 2.0], radius: 0.5 }];
        let m = vec![Ball { center: [3.0, 0.0], radius: 3.0 }, Ball { center: [0.0, -2.0], radius: 0.5 }];
        match derive_view(&m, &n).unwrap() {
            DeriveView::Derivative { theta } => assert_eq!(theta, vec![3.0, -1.0]),
            other => panic!("{other:?}"),
        }
        let bent = vec![Ball { center: [3.0, 0.0], radius: 3.0 }, Ball { center: [0.0, -2.0], radius: 0.6 }];
        assert!(matches!(derive_view(&bent, &n).unwrap(), DeriveView::NoDerivative { atom: 1, .. }));
        let zero = vec![Ball { center: [0.0, 0.0], radius: 0.0 }, Ball { center: [0.0, -2.0], radius: 0.5 }];
        match derive_view(&zero, &n).unwrap() {
            DeriveView::Derivative { theta } => assert_eq!(theta, vec![0.0, -1.0]),
            other => panic!("{other:?}"),
        }
    }
}
