//! Numerical check of the inequality chain on arbitrary three-qubit states:
//! `E_Hmin ≥ E_MB ≥ E_G`, `E_MB ≥ E_bi`, `E_MB ≥ E_LOCC`, and the ordering of
//! the relative-entropy sandwich bounds.

use serde::Serialize;

use crate::emb::{e_hmin, e_locc, emb_tripartite, Budget};
use crate::geometric::geometric_measure_general;
use crate::measures::max_bipartite_entanglement;
use crate::par::map_indices;
use crate::random::random_state;
use crate::state::StateTensor;
use crate::Result;

/// Slack for every inequality and for reporting an equality as tight.
pub const VERIFY_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateCheck {
    /// Seed the state was drawn with, if random.
    pub seed: Option<u64>,
    pub emb: f64,
    pub ehmin: f64,
    pub egeom: f64,
    pub ebi: f64,
    pub elocc: f64,
    /// Inequalities that failed beyond [`VERIFY_TOLERANCE`].
    pub failures: Vec<String>,
    /// Inequalities that hold with equality within [`VERIFY_TOLERANCE`].
    pub tight: Vec<String>,
    /// Whether any optimizer reported non-convergence.
    pub unconverged: bool,
}

impl StateCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_state(s: &StateTensor, budget: &Budget) -> Result<StateCheck> {
    s.require_qubits(3)?;
    let emb = emb_tripartite(s, &budget.emb)?;
    let hmin = e_hmin(s, budget)?;
    let geom = geometric_measure_general(s, &budget.geometric)?;
    let locc = e_locc(s, budget)?;
    let ebi = max_bipartite_entanglement(s)?;
    let (emb_v, ehmin, egeom, elocc) = (emb.value, hmin.value, geom.value, locc.value);
    let mut failures = Vec::new();
    let mut tight = Vec::new();
    // The sandwich is [E_bi, E_MB]; its ordering is the E_MB ≥ E_bi line.
    for (name, big, small) in [
        ("E_Hmin >= E_MB", ehmin, emb_v),
        ("E_MB >= E_G", emb_v, egeom),
        ("E_MB >= E_bi (sandwich)", emb_v, ebi),
        ("E_MB >= E_LOCC", emb_v, elocc),
    ] {
        if big < small - VERIFY_TOLERANCE {
            failures.push(format!("{name}: {big} < {small}"));
        } else if big - small <= VERIFY_TOLERANCE {
            tight.push(name.replace(">=", "="));
        }
    }
    let unconverged = [&emb, &hmin, &geom, &locc].iter().any(|r| !r.diagnostics.converged);
    Ok(StateCheck { seed: None, emb: emb_v, ehmin, egeom, ebi, elocc, failures, tight, unconverged })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<StateCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

/// Checks `trials` random states; state `i` is drawn with seed `seed + i`.
pub fn verify_random(seed: u64, trials: usize, budget: &Budget) -> Result<VerifyReport> {
    let checks: Result<Vec<StateCheck>> = map_indices(trials, |i| {
        let s_seed = seed.wrapping_add(i as u64);
        let s = random_state(vec![2, 2, 2], s_seed)?;
        let mut c = check_state(&s, budget)?;
        c.seed = Some(s_seed);
        Ok(c)
    })
    .into_iter()
    .collect();
    Ok(VerifyReport { checks: checks? })
}
