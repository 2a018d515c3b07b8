//! Randomized agreement suite: on consistent pairs, a derivative exists
//! exactly when usd, usac and uss (at `ĉ + 1`) hold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::examples::{random_scenario, BodyKind, Profile};
use crate::radstrom::DirectionSet;
use crate::rn::{check_usac, check_usd, check_uss, derive, CheckConfig};

/// `ε` grid used for the usac verdict.
pub const EPSILONS: [f64; 4] = [1e-3, 1e-2, 1e-1, 1.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub seed: u64,
    pub planted: bool,
    pub atoms: usize,
    pub dim: usize,
    pub derive: bool,
    pub usd: bool,
    pub usac: bool,
    pub uss: bool,
    /// `None` when derive succeeded; otherwise the error kind.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derive_error: Option<String>,
}

impl CaseOutcome {
    pub fn agree(&self) -> bool {
        self.derive == self.usd && self.usd == self.usac && self.usac == self.uss
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub agreements: usize,
    pub derivable: usize,
    pub divergent: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.divergent.is_empty()
    }
}

/// Profile of the `i`-th case: up to 6 atoms in dimension 1 or 2, half
/// planted, half independent.
pub fn case_profile(rng: &mut ChaCha8Rng) -> Profile {
    let plant = rng.random::<bool>();
    Profile {
        atoms: rng.random_range(1..=6),
        dim: rng.random_range(1..=2),
        body: if rng.random::<bool>() { BodyKind::Polytope } else { BodyKind::Ball },
        point_fraction: 0.3,
        null_fraction: 0.15,
        plant,
        break_continuity: !plant && rng.random_range(0..4) == 0,
    }
}

/// Runs all four verdicts on one generated pair.
pub fn run_case(seed: u64, profile: &Profile, budget: usize, tol: f64) -> Result<CaseOutcome> {
    let sc = random_scenario(profile, seed)?;
    let (m, n) = (&sc.pair.m, &sc.pair.n);
    let dim = profile.dim;
    let dirs = DirectionSet::low_discrepancy(dim, crate::radstrom::default_direction_count(dim), seed)?;
    let cfg = CheckConfig {
        dirs: dirs.clone(),
        budget,
        seed,
        event_cap: 16,
        tol,
    };
    let (derive_ok, derive_error) = match derive(m, n, &dirs, tol) {
        Ok(_) => (true, None),
        Err(e @ (Error::NoDerivative { .. } | Error::NotAbsolutelyContinuous { .. } | Error::Consistency { .. })) => {
            (false, Some(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let usd = check_usd(m, n, None, &cfg)?;
    let usac = check_usac(m, n, None, &EPSILONS, &cfg)?;
    let uss = check_uss(m, n, None, usd.empirical_constant + 1.0, &cfg)?;
    Ok(CaseOutcome {
        seed,
        planted: profile.plant,
        atoms: profile.atoms,
        dim,
        derive: derive_ok,
        usd: usd.verdict.holds(),
        usac: usac.verdict.holds(),
        uss: uss.verdict.holds(),
        derive_error,
    })
}

/// `count` cases with seeds drawn from `seed`.
pub fn run_suite(seed: u64, count: usize, budget: usize, tol: f64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    let mut derivable = 0;
    let mut divergent = Vec::new();
    for _ in 0..count {
        let profile = case_profile(&mut rng);
        let case_seed = rng.random();
        let out = run_case(case_seed, &profile, budget, tol)?;
        derivable += out.derive as usize;
        if out.agree() {
            agreements += 1;
        } else {
            divergent.push(out);
        }
    }
    Ok(SuiteReport {
        seed,
        count,
        agreements,
        derivable,
        divergent,
    })
}
