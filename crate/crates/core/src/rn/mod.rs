//! Radon–Nikodým derivatives of one multimeasure with respect to another.
//!
//! On atoms the derivative is a per-atom proportionality fit: a non-point
//! atom `M_ω` must equal `c N_ω` (then `θ(ω) = c`, `ω ∈ A`) or `c (−N_ω)`
//! (then `θ(ω) = −c`, `ω ∉ A`) for some `c ≥ 0`; a point atom must be a
//! real multiple of the `N` point. The certificate reproduces
//! `M(E) = ∫_E θ⁺ dN ⊕ ∫_E θ⁻ d(−N)` for every event.

mod conditions;

pub use conditions::{
    check_susac, check_susd, check_suss, check_usac, check_usd, check_uss, CheckConfig, Condition,
    ConditionReport, DeltaPoint, Samples, Term, Verdict, Witness, CIRCLE_POINTS,
};

use serde::Serialize;

use crate::convex::{aco_hull, contains_body, hausdorff, ConvexBody, FALLBACK_DIRECTIONS};
use crate::convex::vec::{dot, norm};
use crate::error::{Error, Result};
use crate::measure::{Event, MeasurableFunction};
use crate::multimeasure::{abs_continuous, AtomKind, Check, Multimeasure};
use crate::radstrom::DirectionSet;

/// Sign convention recorded in every certificate.
pub const THETA_CONVENTION: &str =
    "theta >= 0 on A pairs with N; theta <= 0 off A pairs |theta| with -N";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomBand {
    pub atom: usize,
    pub band: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Bounded,
    /// Band `k` holds the atoms with `k − 1 ≤ |θ| < k`.
    Local { bands: Vec<AtomBand> },
}

/// How one atom was fitted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomFit {
    pub atom: usize,
    pub m_kind: AtomKind,
    pub n_kind: AtomKind,
    pub theta: f64,
    /// Hausdorff distance between `M_ω` and the fitted body.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RnCertificate {
    pub theta: MeasurableFunction,
    pub sign_set: Event,
    pub bound: f64,
    /// Largest support defect over the directions and all events.
    pub residual: f64,
    pub mode: Mode,
    pub convention: &'static str,
    pub atoms: Vec<AtomFit>,
}

/// Best `c ≥ 0` with `M_ω ≈ c B` and its Hausdorff residual.
fn fit_scale(mb: &ConvexBody, b: &ConvexBody, dirs: &DirectionSet) -> Result<(f64, f64)> {
    let (mut best, mut den) = (0, f64::NEG_INFINITY);
    for (k, u) in dirs.iter().enumerate() {
        let s = b.support(u)?;
        if s > den {
            (best, den) = (k, s);
        }
    }
    if den <= 0.0 {
        return Ok((0.0, hausdorff(mb, &ConvexBody::zero(mb.dim()))?.distance));
    }
    let c = (mb.support(dirs.get(best))? / den).max(0.0);
    Ok((c, hausdorff(mb, &b.scale(c))?.distance))
}

/// Least-squares `t` with `m ≈ t n` for points, and `‖m − t n‖`.
fn fit_point(m: &[f64], n: &[f64]) -> (f64, f64) {
    let nn = dot(n, n);
    let t = if nn > 0.0 { dot(m, n) / nn } else { 0.0 };
    let r: Vec<f64> = m.iter().zip(n).map(|(a, b)| a - t * b).collect();
    (t, norm(&r))
}

/// Bounded derivative of `M` with respect to `N`.
#[allow(clippy::needless_range_loop)]
pub fn derive(m: &Multimeasure, n: &Multimeasure, dirs: &DirectionSet, tol: f64) -> Result<RnCertificate> {
    m.space().check_same(n.space())?;
    if m.dim() != n.dim() {
        return Err(Error::Dimension {
            expected: n.dim(),
            found: m.dim(),
        });
    }
    if let Check::Witness(bad) = abs_continuous(m, n, tol)? {
        return Err(Error::NotAbsolutelyContinuous {
            atom: bad.iter().next().expect("nonempty witness"),
        });
    }
    let (cm, cn) = (m.classify(tol), n.classify(tol));
    let mismatched: Vec<usize> = (0..cm.kinds.len())
        .filter(|&w| cm.kinds[w] == AtomKind::Point && cn.kinds[w] == AtomKind::Set)
        .collect();
    if !mismatched.is_empty() {
        return Err(Error::Consistency { atoms: mismatched });
    }
    let k = m.space().len();
    let mut theta = vec![0.0; k];
    let mut in_a = Vec::new();
    let mut atoms = Vec::with_capacity(k);
    for w in 0..k {
        let (mb, nb) = (m.atom(w), n.atom(w));
        let (t, residual) = match cn.kinds[w] {
            AtomKind::Null => (0.0, 0.0),
            AtomKind::Point => {
                let (t, r) = fit_point(&mb.anchor(), &nb.anchor());
                if cm.kinds[w] == AtomKind::Set {
                    let r = hausdorff(mb, &nb.scale(t))?.distance;
                    return Err(Error::NoDerivative {
                        atom: w,
                        best_c: t,
                        residual: r,
                        reason: "non-point atom over a point atom".into(),
                    });
                }
                if r > tol {
                    return Err(Error::NoDerivative {
                        atom: w,
                        best_c: t,
                        residual: r,
                        reason: "points are not parallel".into(),
                    });
                }
                (t, r)
            }
            AtomKind::Set => {
                let (cp, rp) = fit_scale(mb, nb, dirs)?;
                if rp <= tol {
                    (cp, rp)
                } else {
                    let (cn_, rn_) = fit_scale(mb, &nb.negate(), dirs)?;
                    if rn_ <= tol {
                        (-cn_, rn_)
                    } else {
                        let (best_c, residual) = if rp <= rn_ { (cp, rp) } else { (-cn_, rn_) };
                        return Err(Error::NoDerivative {
                            atom: w,
                            best_c,
                            residual,
                            reason: "atom is not a multiple of N or -N".into(),
                        });
                    }
                }
            }
        };
        theta[w] = t;
        if t >= 0.0 {
            in_a.push(w);
        }
        atoms.push(AtomFit {
            atom: w,
            m_kind: cm.kinds[w],
            n_kind: cn.kinds[w],
            theta: t,
            residual,
        });
    }
    let theta = MeasurableFunction::new(m.space().clone(), theta)?;
    let residual = support_defect(m, n, &theta, dirs, false)?;
    Ok(RnCertificate {
        bound: theta.sup_norm(),
        theta,
        sign_set: Event::from_atoms(k, in_a)?,
        residual,
        mode: Mode::Bounded,
        convention: THETA_CONVENTION,
        atoms,
    })
}

/// As [`derive`], additionally reporting the bands of `|θ|`.
pub fn derive_local(m: &Multimeasure, n: &Multimeasure, dirs: &DirectionSet, tol: f64) -> Result<RnCertificate> {
    let mut cert = derive(m, n, dirs, tol)?;
    let bands = cert
        .theta
        .values()
        .iter()
        .enumerate()
        .map(|(atom, t)| AtomBand {
            atom,
            band: t.abs().floor() as usize + 1,
        })
        .collect();
    cert.mode = Mode::Local { bands };
    Ok(cert)
}

/// `max_u max_E |h_{M(E)}(u) − ∫_E θ⁺ dh_N(u) − ∫_E θ⁻ dh_{−N}(u)|`.
///
/// Both sides add over atoms, so the maximum over events is the larger of
/// the positive and the negative parts of the atom defects. With `single`
/// the right side is `∫_E θ dh_N(u)` instead.
pub fn support_defect(
    m: &Multimeasure,
    n: &Multimeasure,
    theta: &MeasurableFunction,
    dirs: &DirectionSet,
    single: bool,
) -> Result<f64> {
    m.space().check_same(theta.space())?;
    let mut worst = 0.0f64;
    for u in dirs.iter() {
        let (mut pos, mut neg) = (0.0, 0.0);
        for w in 0..m.space().len() {
            let t = theta.at(w);
            let fit = if single || t >= 0.0 {
                t * n.atom(w).support(u)?
            } else {
                -t * n.atom(w).support(&u.neg())?
            };
            let d = m.atom(w).support(u)? - fit;
            if d > 0.0 {
                pos += d;
            } else {
                neg -= d;
            }
        }
        worst = worst.max(pos).max(neg);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub ok: bool,
    /// Non-point atoms whose `θ` sign disagrees with the sign set.
    pub set_violations: Vec<usize>,
    /// Point atoms with negative `θ`; allowed (vector part).
    pub point_negative: Vec<usize>,
    pub nonnegative: bool,
    /// Defect of `h_{M(E)}(u) = ∫_E θ dh_N(u)` when `θ ≥ 0` everywhere.
    pub single_integral_residual: Option<f64>,
}

/// Sign audit of a certificate against the kinds of `N`.
pub fn positivity_audit(
    cert: &RnCertificate,
    m: &Multimeasure,
    n: &Multimeasure,
    dirs: &DirectionSet,
    tol: f64,
) -> Result<AuditReport> {
    let kinds = n.classify(tol).kinds;
    let theta = cert.theta.values();
    let mut set_violations = Vec::new();
    let mut point_negative = Vec::new();
    for (w, kind) in kinds.iter().enumerate() {
        let t = theta[w];
        match kind {
            AtomKind::Set => {
                let in_a = cert.sign_set.contains(w);
                if (in_a && t < -tol) || (!in_a && t > tol) {
                    set_violations.push(w);
                }
            }
            AtomKind::Point if t < 0.0 => point_negative.push(w),
            _ => {}
        }
    }
    let nonnegative = theta.iter().all(|&t| t >= -tol);
    let single_integral_residual = if nonnegative {
        let clipped = MeasurableFunction::new(m.space().clone(), theta.iter().map(|t| t.max(0.0)).collect())?;
        Some(support_defect(m, n, &clipped, dirs, true)?)
    } else {
        None
    };
    let single_ok = single_integral_residual.is_none_or(|r| r <= tol);
    Ok(AuditReport {
        ok: set_violations.is_empty() && single_ok,
        set_violations,
        point_negative,
        nonnegative,
        single_integral_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubContainment {
    pub contained: bool,
    pub exact: bool,
    /// A direction with `h_{M(E)}(u) > h_hull(u)` on failure.
    pub direction: Option<Vec<f64>>,
    pub gap: f64,
}

/// `M(E) ⊆ d · aco[ℛ(N_E) ∪ ℛ(−N_E)]`.
///
/// The absolutely convex hull is symmetric, so the ranges of `N_E` alone
/// generate it.
pub fn sub_containment(
    m: &Multimeasure,
    n: &Multimeasure,
    d: f64,
    e: &Event,
    dirs: &DirectionSet,
    event_cap: usize,
    tol: f64,
) -> Result<SubContainment> {
    m.space().check_same(n.space())?;
    let hull = aco_hull(&n.reach(e, event_cap)?, d)?;
    let me = m.eval(e)?;
    let member = contains_body(&hull, &me, tol)?;
    let gap_on = |set: &DirectionSet| -> Result<(f64, Vec<f64>)> {
        let mut best = (f64::NEG_INFINITY, Vec::new());
        for u in set.iter() {
            let g = me.support(u)? - hull.support(u)?;
            if g > best.0 {
                best = (g, u.as_slice().to_vec());
            }
        }
        Ok(best)
    };
    let (mut gap, mut dir) = gap_on(dirs)?;
    if !member.inside && gap <= tol {
        (gap, dir) = gap_on(&DirectionSet::low_discrepancy(m.dim(), FALLBACK_DIRECTIONS, 0)?)?;
    }
    Ok(SubContainment {
        contained: member.inside,
        exact: member.exact,
        direction: (!member.inside).then_some(dir),
        gap: gap.max(0.0),
    })
}

/// The subordination condition `M(E) ⊆ d · aco ℛ(N_E)` over events.
///
/// All events are checked up to `min(event_cap, 10)` atoms (the ranges
/// grow like `3^n`); beyond that only singletons and `Ω`.
pub fn check_sub(m: &Multimeasure, n: &Multimeasure, d: f64, cfg: &CheckConfig) -> Result<ConditionReport> {
    let k = m.space().len();
    let exhaustive = k <= cfg.event_cap.min(10);
    let events: Vec<Event> = if exhaustive {
        Event::full(k).subsets().collect()
    } else {
        (0..k).map(|w| Event::singleton(k, w)).chain([Event::full(k)]).collect()
    };
    let mut witness = None;
    let mut worst = 0.0f64;
    for e in &events {
        let r = sub_containment(m, n, d, e, &cfg.dirs, cfg.event_cap, cfg.tol)?;
        worst = worst.max(r.gap);
        if !r.contained && witness.is_none() {
            let u = r.direction.clone().expect("direction on failure");
            let me = m.eval(e)?;
            let lhs = me.support_at(&u);
            witness = Some(Witness {
                functional: vec![Term {
                    coef: 1.0,
                    direction: u,
                }],
                event: e.clone(),
                lhs,
                rhs: lhs - r.gap,
            });
        }
    }
    let events_checked = events.len();
    Ok(ConditionReport {
        condition: Condition::Sub,
        verdict: match witness {
            Some(w) => Verdict::Fails { witness: Box::new(w) },
            None => Verdict::Holds { constant: d },
        },
        sign_set: Event::full(k),
        empirical_constant: worst,
        samples: Samples {
            functionals: 0,
            direction_pairs: 0,
            events_per_functional: events_checked,
        },
        exhaustive,
        delta_profile: None,
        note: "containment tested exactly in d ≤ 2, on sampled directions in d ≥ 3",
    })
}
