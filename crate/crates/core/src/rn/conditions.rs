//! Empirical checkers for the domination conditions usd, usac, uss and
//! their strong variants.
//!
//! Every functional that appears in the conditions is a finite combination
//! `Σ a_k s(x_k, ·)` of support measures at sampled directions. On a finite
//! space such a combination is a signed measure given atomwise, so once the
//! support tables `h_{M_ω}(D_i)`, `h_{N_ω}(D_i)` and `h_{N_ω}(−D_i)` are
//! known each functional costs `O(n)` per event.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::Result;
use crate::measure::Event;
use crate::multimeasure::Multimeasure;
use crate::radstrom::DirectionSet;

/// Points `(cos t, sin t)` used for `(α, β)` in the plain conditions.
pub const CIRCLE_POINTS: usize = 64;

/// Random events added when events cannot be enumerated.
const SAMPLED_EVENTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    Usac,
    Usd,
    Uss,
    SUsac,
    SUsd,
    SUss,
    Sub,
}

impl Condition {
    pub fn is_strong(self) -> bool {
        matches!(self, Condition::SUsac | Condition::SUsd | Condition::SUss)
    }
}

/// Sampling and tolerance settings shared by all checkers.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub dirs: DirectionSet,
    /// Upper bound on the number of functionals evaluated.
    pub budget: usize,
    pub seed: u64,
    /// Events are enumerated exhaustively up to this many atoms.
    pub event_cap: usize,
    pub tol: f64,
}

/// One term `a · s(x, ·)` of a sampled functional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub coef: f64,
    pub direction: Vec<f64>,
}

/// A failing functional and event, enough to replay the inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub functional: Vec<Term>,
    pub event: Event,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Holds { constant: f64 },
    Fails { witness: Box<Witness> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Samples {
    pub functionals: usize,
    pub direction_pairs: usize,
    pub events_per_functional: usize,
}

/// `δ(ε)`: the least right-hand side among events whose left side exceeds
/// `ε`; `None` when no sampled event exceeds `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaPoint {
    pub epsilon: f64,
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub verdict: Verdict,
    /// Sign set `A` under which the verdict was obtained.
    pub sign_set: Event,
    /// Least constant consistent with the sample, ignoring zero-rhs tuples.
    pub empirical_constant: f64,
    pub samples: Samples,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_profile: Option<Vec<DeltaPoint>>,
    pub note: &'static str,
}

const EMPIRICAL: &str = "empirical verdict over the sampled functionals; not a proof";

/// Support values per atom on the direction set.
pub(crate) struct Tables {
    n_atoms: usize,
    sm: Vec<Vec<f64>>,
    sp: Vec<Vec<f64>>,
    sn: Vec<Vec<f64>>,
    scale: Vec<f64>,
}

impl Tables {
    pub(crate) fn new(m: &Multimeasure, n: &Multimeasure, dirs: &DirectionSet) -> Result<Self> {
        m.space().check_same(n.space())?;
        if m.dim() != n.dim() || dirs.dim() != m.dim() {
            return Err(crate::error::Error::Dimension {
                expected: m.dim(),
                found: if m.dim() != n.dim() { n.dim() } else { dirs.dim() },
            });
        }
        let k = m.space().len();
        let row = |b: &crate::convex::ConvexBody, neg: bool| -> Vec<f64> {
            dirs.iter()
                .map(|u| {
                    if neg {
                        b.support(&u.neg()).expect("dimension checked")
                    } else {
                        b.support(u).expect("dimension checked")
                    }
                })
                .collect()
        };
        let sm: Vec<Vec<f64>> = (0..k).map(|i| row(m.atom(i), false)).collect();
        let sp: Vec<Vec<f64>> = (0..k).map(|i| row(n.atom(i), false)).collect();
        let sn: Vec<Vec<f64>> = (0..k).map(|i| row(n.atom(i), true)).collect();
        let scale = (0..k)
            .map(|i| {
                sm[i].iter()
                    .chain(&sp[i])
                    .chain(&sn[i])
                    .fold(0.0f64, |a, v| a.max(v.abs()))
            })
            .collect();
        Ok(Tables {
            n_atoms: k,
            sm,
            sp,
            sn,
            scale,
        })
    }
}

/// `Σ a_k s(D_{i_k}, ·)` with the directions as indices into the table.
#[derive(Debug, Clone)]
pub(crate) struct Functional(Vec<(f64, usize)>);

impl Functional {
    fn apply(&self, row: &[f64]) -> f64 {
        self.0.iter().map(|&(a, i)| a * row[i]).sum()
    }

    fn terms(&self, dirs: &DirectionSet) -> Vec<Term> {
        self.0
            .iter()
            .map(|&(coef, i)| Term {
                coef,
                direction: dirs.get(i).as_slice().to_vec(),
            })
            .collect()
    }
}

/// Per-atom values of one functional: against `M`, `N` and `−N`.
struct AtomValues {
    m: Vec<f64>,
    p: Vec<f64>,
    q: Vec<f64>,
}

impl AtomValues {
    fn of(t: &Tables, f: &Functional) -> Self {
        AtomValues {
            m: t.sm.iter().map(|r| f.apply(r)).collect(),
            p: t.sp.iter().map(|r| f.apply(r)).collect(),
            q: t.sn.iter().map(|r| f.apply(r)).collect(),
        }
    }

    /// Right-hand values under the sign set: `N` on `A`, `−N` off it.
    fn side(&self, a: &Event, i: usize) -> f64 {
        if a.contains(i) {
            self.p[i]
        } else {
            self.q[i]
        }
    }
}

/// The `k`-th unordered pair `(i, j)`, `i ≤ j`, in row-major order.
fn pair_at(mut k: usize, len: usize) -> (usize, usize) {
    for i in 0..len {
        let row = len - i;
        if k < row {
            return (i, i + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range")
}

fn sampled_pairs(len: usize, wanted: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let total = len * (len + 1) / 2;
    if wanted >= total {
        return (0..total).map(|k| pair_at(k, len)).collect();
    }
    let mut picked: Vec<usize> = sample(rng, total, wanted.max(1)).into_iter().collect();
    picked.sort_unstable();
    picked.into_iter().map(|k| pair_at(k, len)).collect()
}

/// `(α, β)` proportional to `(row[j], −row[i])`, so the pair cancels on `row`.
fn critical(row: &[f64], i: usize, j: usize) -> Option<(f64, f64)> {
    let (a, b) = (row[j], -row[i]);
    let h = a.hypot(b);
    (h > 1e-300).then(|| (a / h, b / h))
}

/// Functionals `α s(x,·) + β s(y,·)` of the plain conditions.
pub(crate) fn plain_functionals(t: &Tables, cfg: &CheckConfig) -> (Vec<Functional>, usize) {
    let per_pair = CIRCLE_POINTS + 2 * t.n_atoms;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs = sampled_pairs(cfg.dirs.len(), (cfg.budget / per_pair).max(1), &mut rng);
    let mut out = Vec::with_capacity(pairs.len() * per_pair);
    for &(i, j) in &pairs {
        for k in 0..CIRCLE_POINTS {
            let a = std::f64::consts::TAU * k as f64 / CIRCLE_POINTS as f64;
            out.push(Functional(vec![(a.cos(), i), (a.sin(), j)]));
        }
        if i == j {
            continue;
        }
        for w in 0..t.n_atoms {
            for row in [&t.sp[w], &t.sn[w]] {
                if let Some((a, b)) = critical(row, i, j) {
                    out.push(Functional(vec![(a, i), (b, j)]));
                }
            }
        }
    }
    (out, pairs.len())
}

/// Spans `Σ_{k ≤ m_max} a_k s(x_k, ·)` of the strong conditions.
pub(crate) fn span_functionals(t: &Tables, cfg: &CheckConfig, m_max: usize) -> (Vec<Functional>, usize) {
    let len = cfg.dirs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out: Vec<Functional> = (0..len).map(|i| Functional(vec![(1.0, i)])).collect();
    if m_max < 2 {
        return (out, 0);
    }
    let remaining = cfg.budget.saturating_sub(len);
    let per_pair = t.n_atoms.max(1);
    let pairs = sampled_pairs(len, (remaining / 2 / per_pair).max(1), &mut rng);
    for &(i, j) in &pairs {
        if i == j {
            continue;
        }
        for w in 0..t.n_atoms {
            if let Some((a, b)) = critical(&t.sp[w], i, j) {
                out.push(Functional(vec![(a, i), (b, j)]));
            }
        }
    }
    while out.len() < cfg.budget.max(len + 1) {
        let m = rng.random_range(2..=m_max);
        let mut terms: Vec<(f64, usize)> = (0..m)
            .map(|_| (rng.sample(StandardNormal), rng.random_range(0..len)))
            .collect();
        let h = terms.iter().map(|(a, _)| a * a).sum::<f64>().sqrt();
        if h < 1e-12 {
            continue;
        }
        for term in &mut terms {
            term.0 /= h;
        }
        out.push(Functional(terms));
    }
    (out, pairs.len())
}

/// Per-atom domination data for one side (`N` or `−N`).
#[derive(Debug, Clone)]
struct SideStats {
    ratio: f64,
    witness: Option<(usize, f64, f64)>,
}

fn side_stats(t: &Tables, vals: &[AtomValues], tol: f64, use_p: bool) -> Vec<SideStats> {
    (0..t.n_atoms)
        .map(|w| {
            let thr = tol * (1.0 + t.scale[w]);
            let mut s = SideStats {
                ratio: 0.0,
                witness: None,
            };
            for (k, v) in vals.iter().enumerate() {
                let lhs = v.m[w].abs();
                let rhs = if use_p { v.p[w] } else { v.q[w] }.abs();
                if rhs <= thr {
                    if lhs > thr && s.witness.is_none() {
                        s.witness = Some((k, lhs, rhs));
                    }
                } else {
                    s.ratio = s.ratio.max(lhs / rhs);
                }
            }
            s
        })
        .collect()
}

/// Cosine-like agreement of the support rows of `M` and `±N`.
fn alignment(t: &Tables, w: usize, plus: bool) -> f64 {
    let other = if plus { &t.sp[w] } else { &t.sn[w] };
    t.sm[w].iter().zip(other).map(|(a, b)| a * b).sum()
}

/// Chooses each atom's side independently. Because variations add over
/// atoms, this choice is optimal among all sign sets for the sample.
fn choose_sign_set(t: &Tables, plus: &[SideStats], minus: &[SideStats]) -> Event {
    let atoms = (0..t.n_atoms).filter(|&w| {
        let (p, m) = (&plus[w], &minus[w]);
        match (p.witness.is_some(), m.witness.is_some()) {
            (false, true) | (true, true) => true,
            (true, false) => false,
            (false, false) => {
                let scale = p.ratio.max(m.ratio).max(1.0);
                if (p.ratio - m.ratio).abs() <= 1e-9 * scale {
                    alignment(t, w, true) >= alignment(t, w, false)
                } else {
                    p.ratio < m.ratio
                }
            }
        }
    });
    Event::from_atoms(t.n_atoms, atoms).expect("atoms in range")
}

/// Shared front end: tables, functionals, values, and the sign set.
struct Prepared {
    tables: Tables,
    funcs: Vec<Functional>,
    vals: Vec<AtomValues>,
    pairs: usize,
    sign_set: Event,
    plus: Vec<SideStats>,
    minus: Vec<SideStats>,
}

fn prepare(
    m: &Multimeasure,
    n: &Multimeasure,
    a: Option<&Event>,
    strong: Option<usize>,
    cfg: &CheckConfig,
) -> Result<Prepared> {
    let tables = Tables::new(m, n, &cfg.dirs)?;
    if let Some(a) = a {
        m.space().check_event(a)?;
    }
    let (funcs, pairs) = match strong {
        Some(m_max) => span_functionals(&tables, cfg, m_max),
        None => plain_functionals(&tables, cfg),
    };
    let vals: Vec<AtomValues> = funcs.iter().map(|f| AtomValues::of(&tables, f)).collect();
    let plus = side_stats(&tables, &vals, cfg.tol, true);
    let minus = side_stats(&tables, &vals, cfg.tol, false);
    let sign_set = match (strong, a) {
        (Some(_), _) => Event::full(tables.n_atoms),
        (None, Some(a)) => a.clone(),
        (None, None) => choose_sign_set(&tables, &plus, &minus),
    };
    Ok(Prepared {
        tables,
        funcs,
        vals,
        pairs,
        sign_set,
        plus,
        minus,
    })
}

impl Prepared {
    fn stats(&self, w: usize) -> &SideStats {
        if self.sign_set.contains(w) {
            &self.plus[w]
        } else {
            &self.minus[w]
        }
    }

    fn constant(&self) -> f64 {
        (0..self.tables.n_atoms).map(|w| self.stats(w).ratio).fold(0.0, f64::max)
    }

    fn singleton_witness(&self, dirs: &DirectionSet) -> Option<Witness> {
        (0..self.tables.n_atoms).find_map(|w| {
            self.stats(w).witness.map(|(k, lhs, rhs)| Witness {
                functional: self.funcs[k].terms(dirs),
                event: Event::singleton(self.tables.n_atoms, w),
                lhs,
                rhs,
            })
        })
    }

    fn samples(&self, events: usize) -> Samples {
        Samples {
            functionals: self.funcs.len(),
            direction_pairs: self.pairs,
            events_per_functional: events,
        }
    }

    /// Events to scan: every subset when small, else a seeded selection.
    fn event_plan(&self, cfg: &CheckConfig) -> EventPlan {
        let k = self.tables.n_atoms;
        if k <= cfg.event_cap && k < 31 {
            return EventPlan::All(k);
        }
        let mut events: Vec<Event> = (0..k).map(|w| Event::singleton(k, w)).collect();
        events.push(Event::full(k));
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
        for _ in 0..SAMPLED_EVENTS {
            let atoms: Vec<usize> = (0..k).filter(|_| rng.random::<bool>()).collect();
            events.push(Event::from_atoms(k, atoms).expect("atoms in range"));
        }
        EventPlan::Sampled(events)
    }
}

enum EventPlan {
    All(usize),
    Sampled(Vec<Event>),
}

impl EventPlan {
    fn exhaustive(&self) -> bool {
        matches!(self, EventPlan::All(_))
    }

    fn per_functional(&self) -> usize {
        match self {
            EventPlan::All(k) => 1 << k,
            // Two Hahn sets per functional come on top of the fixed list.
            EventPlan::Sampled(v) => v.len() + 2,
        }
    }

    /// Calls `visit(event, sums)` with per-event sums of every column.
    fn scan(&self, cols: &[Vec<f64>], signed: &[f64], buf: &mut Vec<Vec<f64>>, mut visit: impl FnMut(EventRef<'_>, &[f64])) {
        match self {
            EventPlan::All(k) => {
                let size = 1usize << k;
                buf.resize(cols.len(), Vec::new());
                for (c, out) in cols.iter().zip(buf.iter_mut()) {
                    subset_sums(c, size, out);
                }
                let mut sums = vec![0.0; cols.len()];
                for mask in 0..size {
                    for (s, b) in sums.iter_mut().zip(buf.iter()) {
                        *s = b[mask];
                    }
                    visit(EventRef::Mask(mask as u64), &sums);
                }
            }
            EventPlan::Sampled(events) => {
                let k = signed.len();
                let hahn_pos = Event::from_atoms(k, (0..k).filter(|&w| signed[w] > 0.0)).expect("in range");
                let hahn_neg = hahn_pos.complement();
                let mut sums = vec![0.0; cols.len()];
                for e in events.iter().chain([&hahn_pos, &hahn_neg]) {
                    for (s, c) in sums.iter_mut().zip(cols) {
                        *s = e.iter().map(|w| c[w]).sum();
                    }
                    visit(EventRef::Event(e), &sums);
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum EventRef<'a> {
    Mask(u64),
    Event(&'a Event),
}

impl EventRef<'_> {
    fn to_event(self, k: usize) -> Event {
        match self {
            EventRef::Mask(m) => Event::from_mask(k, m),
            EventRef::Event(e) => e.clone(),
        }
    }
}

/// `out[mask] = Σ_{w ∈ mask} vals[w]` for every mask below `size`.
fn subset_sums(vals: &[f64], size: usize, out: &mut Vec<f64>) {
    out.clear();
    out.resize(size, 0.0);
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        out[mask] = out[mask & (mask - 1)] + vals[low];
    }
}

/// Uniform scalar domination: `|φ(M)|(E) ≤ c |φ(N)|(E∩A) + c |φ(−N)|(E∩A^c)`.
///
/// Variations add over atoms, so the least `c` over all events is the
/// largest atom ratio; every event is covered without enumeration.
pub fn check_usd(m: &Multimeasure, n: &Multimeasure, a: Option<&Event>, cfg: &CheckConfig) -> Result<ConditionReport> {
    let p = prepare(m, n, a, None, cfg)?;
    Ok(domination_report(Condition::Usd, &p, cfg))
}

/// Strong domination `|Σ a_k s(x_k, M)|(E) ≤ d |Σ a_k s(x_k, N)|(E)`.
pub fn check_susd(m: &Multimeasure, n: &Multimeasure, m_max: usize, cfg: &CheckConfig) -> Result<ConditionReport> {
    let p = prepare(m, n, None, Some(m_max.max(1)), cfg)?;
    Ok(domination_report(Condition::SUsd, &p, cfg))
}

fn domination_report(condition: Condition, p: &Prepared, cfg: &CheckConfig) -> ConditionReport {
    let constant = p.constant();
    let verdict = match p.singleton_witness(&cfg.dirs) {
        Some(w) => Verdict::Fails { witness: Box::new(w) },
        None => Verdict::Holds { constant },
    };
    ConditionReport {
        condition,
        verdict,
        sign_set: p.sign_set.clone(),
        empirical_constant: constant,
        samples: p.samples(1usize.checked_shl(p.tables.n_atoms as u32).unwrap_or(usize::MAX)),
        exhaustive: true,
        delta_profile: None,
        note: EMPIRICAL,
    }
}

/// Uniform scalar absolute continuity, with `δ(ε)` computed as the least
/// right-hand side among sampled events whose left side exceeds `ε`.
pub fn check_usac(
    m: &Multimeasure,
    n: &Multimeasure,
    a: Option<&Event>,
    epsilons: &[f64],
    cfg: &CheckConfig,
) -> Result<ConditionReport> {
    let p = prepare(m, n, a, None, cfg)?;
    Ok(continuity_report(Condition::Usac, &p, epsilons, cfg))
}

pub fn check_susac(
    m: &Multimeasure,
    n: &Multimeasure,
    m_max: usize,
    epsilons: &[f64],
    cfg: &CheckConfig,
) -> Result<ConditionReport> {
    let p = prepare(m, n, None, Some(m_max.max(1)), cfg)?;
    Ok(continuity_report(Condition::SUsac, &p, epsilons, cfg))
}

fn continuity_report(condition: Condition, p: &Prepared, epsilons: &[f64], cfg: &CheckConfig) -> ConditionReport {
    let k = p.tables.n_atoms;
    let plan = p.event_plan(cfg);
    let thr_col: Vec<f64> = p.tables.scale.iter().map(|s| cfg.tol * s).collect();
    let mut deltas: Vec<Option<f64>> = vec![None; epsilons.len()];
    let mut witness: Option<Witness> = None;
    let mut buf = Vec::new();
    for (f, v) in p.funcs.iter().zip(&p.vals) {
        let lhs: Vec<f64> = v.m.iter().map(|x| x.abs()).collect();
        let rhs: Vec<f64> = (0..k).map(|w| v.side(&p.sign_set, w).abs()).collect();
        let cols = [lhs, rhs, thr_col.clone()];
        plan.scan(&cols, &v.m, &mut buf, |e, s| {
            let (l, r, t) = (s[0], s[1], cfg.tol + s[2]);
            if r <= t && l > t && witness.is_none() {
                witness = Some(Witness {
                    functional: f.terms(&cfg.dirs),
                    event: e.to_event(k),
                    lhs: l,
                    rhs: r,
                });
            }
            for (eps, d) in epsilons.iter().zip(deltas.iter_mut()) {
                if l > *eps && d.is_none_or(|d| r < d) {
                    *d = Some(r);
                }
            }
        });
    }
    let profile: Vec<DeltaPoint> = epsilons
        .iter()
        .zip(&deltas)
        .map(|(&epsilon, &delta)| DeltaPoint { epsilon, delta })
        .collect();
    let modulus = profile
        .iter()
        .filter_map(|pt| pt.delta.filter(|&d| d > 0.0).map(|d| pt.epsilon / d))
        .fold(0.0, f64::max);
    let verdict = match witness {
        Some(w) => Verdict::Fails { witness: Box::new(w) },
        None => Verdict::Holds { constant: modulus },
    };
    ConditionReport {
        condition,
        verdict,
        sign_set: p.sign_set.clone(),
        empirical_constant: modulus,
        samples: p.samples(plan.per_functional()),
        exhaustive: plan.exhaustive(),
        delta_profile: Some(profile),
        note: EMPIRICAL,
    }
}

/// Uniform scalar subordination at the constant `d`:
/// `|φ(M(E))| ≤ d (a₁ + a₂)` with `a₁ = max_{F⊆E} |φ(N(F∩A))|` and `a₂`
/// the `−N` analogue on `A^c`.
///
/// The inner maximum is `max(Σ_{E∩A} φ⁺, Σ_{E∩A} φ⁻)`, the larger of the
/// positive and negative mass of `φ(N)` on `E∩A`.
pub fn check_uss(m: &Multimeasure, n: &Multimeasure, a: Option<&Event>, d: f64, cfg: &CheckConfig) -> Result<ConditionReport> {
    let p = prepare(m, n, a, None, cfg)?;
    Ok(subordination_report(Condition::Uss, &p, d, cfg))
}

pub fn check_suss(m: &Multimeasure, n: &Multimeasure, m_max: usize, d: f64, cfg: &CheckConfig) -> Result<ConditionReport> {
    let p = prepare(m, n, None, Some(m_max.max(1)), cfg)?;
    Ok(subordination_report(Condition::SUss, &p, d, cfg))
}

fn subordination_report(condition: Condition, p: &Prepared, d: f64, cfg: &CheckConfig) -> ConditionReport {
    let k = p.tables.n_atoms;
    let plan = p.event_plan(cfg);
    let thr_col: Vec<f64> = p.tables.scale.iter().map(|s| cfg.tol * s).collect();
    let mut worst = 0.0f64;
    let mut witness: Option<Witness> = None;
    let mut buf = Vec::new();
    for (f, v) in p.funcs.iter().zip(&p.vals) {
        let mut a_pos = vec![0.0; k];
        let mut a_neg = vec![0.0; k];
        let mut c_pos = vec![0.0; k];
        let mut c_neg = vec![0.0; k];
        for w in 0..k {
            if p.sign_set.contains(w) {
                (a_pos[w], a_neg[w]) = (v.p[w].max(0.0), (-v.p[w]).max(0.0));
            } else {
                (c_pos[w], c_neg[w]) = (v.q[w].max(0.0), (-v.q[w]).max(0.0));
            }
        }
        let cols = [v.m.clone(), a_pos, a_neg, c_pos, c_neg, thr_col.clone()];
        plan.scan(&cols, &v.m, &mut buf, |e, s| {
            let lhs = s[0].abs();
            let hull = s[1].max(s[2]) + s[3].max(s[4]);
            let t = cfg.tol + s[5];
            if hull > t {
                worst = worst.max(lhs / hull);
            }
            if lhs > d * hull + t && witness.is_none() {
                witness = Some(Witness {
                    functional: f.terms(&cfg.dirs),
                    event: e.to_event(k),
                    lhs,
                    rhs: d * hull,
                });
            }
        });
    }
    let verdict = match witness {
        Some(w) => Verdict::Fails { witness: Box::new(w) },
        None => Verdict::Holds { constant: d },
    };
    ConditionReport {
        condition,
        verdict,
        sign_set: p.sign_set.clone(),
        empirical_constant: worst,
        samples: p.samples(plan.per_functional()),
        exhaustive: plan.exhaustive(),
        delta_profile: None,
        note: EMPIRICAL,
    }
}
