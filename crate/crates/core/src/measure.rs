//! Finite atomic measurable spaces and scalar signed measures on them.
//!
//! The σ-algebra is always the full power set of the atoms, so a measure is
//! a vector of atom masses and every function on atoms is measurable.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Atoms `ω1, ..., ωn` with the power-set σ-algebra.
#[derive(Debug, Clone)]
pub struct FiniteMeasurableSpace {
    labels: Arc<[String]>,
}

impl PartialEq for FiniteMeasurableSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl FiniteMeasurableSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Argument("a measurable space needs at least one atom".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Argument(format!("duplicate atom label {l:?}")));
            }
        }
        Ok(FiniteMeasurableSpace {
            labels: labels.into(),
        })
    }

    /// Space with atoms labelled `ω1..ωn`.
    pub fn with_atoms(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("ω{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, atom: usize) -> &str {
        &self.labels[atom]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.len())
    }

    pub fn singleton(&self, atom: usize) -> Event {
        Event::singleton(self.len(), atom)
    }

    pub fn check_same(&self, other: &FiniteMeasurableSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Space("operands live on different measurable spaces".into()))
        }
    }

    pub fn check_event(&self, e: &Event) -> Result<()> {
        if e.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::Space(format!(
                "event over {} atoms used on a space of {} atoms",
                e.universe(),
                self.len()
            )))
        }
    }

    /// Event from atom labels.
    pub fn event_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Event> {
        let mut e = self.empty_event();
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::Space(format!("unknown atom {:?}", l.as_ref())))?;
            e.insert(i);
        }
        Ok(e)
    }
}

/// A set of atoms of a space with `universe` atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    universe: usize,
    words: Vec<u64>,
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl Event {
    pub fn empty(universe: usize) -> Self {
        Event {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut e = Self::empty(universe);
        for i in 0..universe {
            e.insert(i);
        }
        e
    }

    pub fn singleton(universe: usize, atom: usize) -> Self {
        let mut e = Self::empty(universe);
        e.insert(atom);
        e
    }

    /// Event whose members are the set bits of `mask` (`universe ≤ 64`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask events need at most 64 atoms");
        let mut e = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
            e.words[0] = mask & keep;
        }
        e
    }

    pub fn from_atoms(universe: usize, atoms: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut e = Self::empty(universe);
        for a in atoms {
            if a >= universe {
                return Err(Error::Space(format!("atom index {a} out of range")));
            }
            e.insert(a);
        }
        Ok(e)
    }

    /// Bit mask of the members; only meaningful for `universe ≤ 64`.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, atom: usize) {
        assert!(atom < self.universe);
        self.words[atom / 64] |= 1 << (atom % 64);
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.universe && self.words[atom / 64] & (1 << (atom % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    fn zip_with(&self, other: &Event, op: impl Fn(u64, u64) -> u64) -> Event {
        assert_eq!(self.universe, other.universe, "events from different spaces");
        Event {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Event {
        Event::full(self.universe).difference(self)
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.difference(other).is_empty()
    }

    /// All subsets of this event, the empty set first.
    pub fn subsets(&self) -> impl Iterator<Item = Event> + '_ {
        let members: Vec<usize> = self.iter().collect();
        let k = members.len();
        assert!(k < 64, "too many atoms to enumerate subsets");
        (0u64..(1u64 << k)).map(move |bits| {
            let mut e = Event::empty(self.universe);
            for (j, &a) in members.iter().enumerate() {
                if bits >> j & 1 == 1 {
                    e.insert(a);
                }
            }
            e
        })
    }
}

/// Real-valued countably additive set function given by atom masses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignedMeasure {
    #[serde(skip)]
    space: FiniteMeasurableSpace,
    values: Vec<f64>,
}

fn check_values(space: &FiniteMeasurableSpace, values: &[f64]) -> Result<()> {
    if values.len() != space.len() {
        return Err(Error::Space(format!(
            "{} values given for {} atoms",
            values.len(),
            space.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Argument("non-finite atom value".into()));
    }
    Ok(())
}

impl SignedMeasure {
    pub fn new(space: FiniteMeasurableSpace, values: Vec<f64>) -> Result<Self> {
        check_values(&space, &values)?;
        Ok(SignedMeasure { space, values })
    }

    pub fn zero(space: FiniteMeasurableSpace) -> Self {
        let values = vec![0.0; space.len()];
        SignedMeasure { space, values }
    }

    pub fn space(&self) -> &FiniteMeasurableSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn atom(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn eval(&self, e: &Event) -> Result<f64> {
        self.space.check_event(e)?;
        Ok(e.iter().map(|i| self.values[i]).sum())
    }

    /// `|ν|(E)`.
    pub fn variation(&self, e: &Event) -> Result<f64> {
        self.space.check_event(e)?;
        Ok(e.iter().map(|i| self.values[i].abs()).sum())
    }

    /// The variation measure `|ν|`.
    pub fn abs(&self) -> SignedMeasure {
        SignedMeasure {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    /// Hahn decomposition `(P, N)`; atoms of zero mass go to `P`.
    pub fn hahn(&self) -> (Event, Event) {
        let n = self.space.len();
        let pos = Event::from_atoms(n, (0..n).filter(|&i| self.values[i] >= 0.0))
            .expect("indices in range");
        let neg = pos.complement();
        (pos, neg)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }
}

/// Real function on the atoms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurableFunction {
    #[serde(skip)]
    space: FiniteMeasurableSpace,
    values: Vec<f64>,
}

impl MeasurableFunction {
    pub fn new(space: FiniteMeasurableSpace, values: Vec<f64>) -> Result<Self> {
        check_values(&space, &values)?;
        Ok(MeasurableFunction { space, values })
    }

    pub fn constant(space: FiniteMeasurableSpace, c: f64) -> Self {
        let values = vec![c; space.len()];
        MeasurableFunction { space, values }
    }

    pub fn space(&self) -> &FiniteMeasurableSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> MeasurableFunction {
        MeasurableFunction {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `f⁺ = max(f, 0)`.
    pub fn positive_part(&self) -> MeasurableFunction {
        self.map(|v| v.max(0.0))
    }

    /// `f⁻ = max(-f, 0)`, a nonnegative function.
    pub fn negative_part(&self) -> MeasurableFunction {
        self.map(|v| (-v).max(0.0))
    }

    pub fn scaled(&self, s: f64) -> MeasurableFunction {
        self.map(|v| s * v)
    }

    /// `∫_E f dν = Σ_{ω∈E} f(ω) ν({ω})`.
    pub fn integrate(&self, nu: &SignedMeasure, e: &Event) -> Result<f64> {
        self.space.check_same(&nu.space)?;
        self.space.check_event(e)?;
        Ok(e.iter().map(|i| self.values[i] * nu.values[i]).sum())
    }

    /// Supremum norm.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn variation(nu: &SignedMeasure, e: &Event) -> Result<f64> {
    nu.variation(e)
}

pub fn hahn(nu: &SignedMeasure) -> (Event, Event) {
    nu.hahn()
}

pub fn integrate_scalar(f: &MeasurableFunction, nu: &SignedMeasure, e: &Event) -> Result<f64> {
    f.integrate(nu, e)
}

/// Density `dν/dμ` for `μ ≥ 0`, with the convention `0/0 = 0`.
pub fn rn_scalar(nu: &SignedMeasure, mu: &SignedMeasure) -> Result<MeasurableFunction> {
    nu.space.check_same(&mu.space)?;
    if !mu.is_nonnegative() {
        return Err(Error::Argument("reference measure must be nonnegative".into()));
    }
    let mut h = Vec::with_capacity(mu.values.len());
    for (i, (&n, &m)) in nu.values.iter().zip(&mu.values).enumerate() {
        if m > 0.0 {
            h.push(n / m);
        } else if n == 0.0 {
            h.push(0.0);
        } else {
            return Err(Error::NotAbsolutelyContinuous { atom: i });
        }
    }
    MeasurableFunction::new(nu.space.clone(), h)
}
