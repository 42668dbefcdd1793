//! Acceptance suite. Prints one PASS/FAIL line per criterion with its checks.
//!
//! A few checks are expected to fail because the stated target contradicts the
//! formulas it is derived from; they are marked `known` and do not affect the
//! exit status. Every other failed check does.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use emb_core::closedform::{
    commutator_condition, omega1_emb, omega_eigenvalues, CommutatorClass, OmegaBranchSpectrum, StandardFormParams,
};
use emb_core::emb::{e_hmin, emb_tripartite, emb_tripartite_first, Budget};
use emb_core::measures::{
    binary_entropy, bipartite_entanglement, bipartite_lower_bound, max_bipartite_entanglement, outcome_distribution,
    shannon_entropy,
};
use emb_core::random::{random_state, random_unitary};
use emb_core::state::{named_state, OutcomeTree};
use emb_core::sweep::{ghz_w_sweep, SweepRow};
use emb_core::verify::verify_random;
use emb_core::{Complex64, MeasurementBasis, OptimizerConfig, Partition, StateTensor};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

struct Check {
    name: String,
    pass: bool,
    known: bool,
}

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass, known: false }
}

fn known(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass, known: true }
}

fn omega_value() -> f64 {
    h2(0.5 * (1.0 + 1.0 / 5f64.sqrt()))
}

fn criterion_1() -> Vec<Check> {
    let start = Instant::now();
    let closed = binary_entropy(0.5 * (1.0 + 1.0 / 5f64.sqrt())).unwrap();
    let oracle = omega_value();
    let om = named_state("Omega", &[]).unwrap();
    let budget = Budget::default();
    let ebi = max_bipartite_entanglement(&om).unwrap();
    let emb = emb_tripartite(&om, &budget.emb).unwrap().value;
    let ehmin = e_hmin(&om, &budget).unwrap().value;
    let spectral = OmegaBranchSpectrum::from_k(OmegaBranchSpectrum::K_MAX).entropy();
    let secs = start.elapsed().as_secs_f64();
    vec![
        check(format!("closed form {closed:.13} vs oracle {oracle:.13} within 1e-12"), (closed - oracle).abs() < 1e-12),
        check("closed form rounds to the printed 0.8505", (closed - 0.8505).abs() < 5e-5),
        check(format!("spectral closed form {spectral:.13} within 1e-12"), (spectral - oracle).abs() < 1e-12),
        check(format!("E_bi = {ebi:.10} within 1e-4"), (ebi - oracle).abs() < 1e-4),
        check(format!("E_MB = {emb:.10} within 1e-4"), (emb - oracle).abs() < 1e-4),
        check(format!("E_Hmin = {ehmin:.10} within 1e-4"), (ehmin - oracle).abs() < 1e-4),
        check(format!("runtime {secs:.2} s < 5 s"), secs < 5.0),
    ]
}

fn criterion_2() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s5 = 5f64.sqrt();
    let (mut stated_plus, mut stated_minus, mut same_plus, mut same_minus) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let t = rng.random_range(0.0..std::f64::consts::PI);
        let p = rng.random_range(0.0..std::f64::consts::TAU);
        let sp = omega_eigenvalues(t, p);
        stated_plus = stated_plus.max((sp.lambda0_plus + sp.lambda1_minus - (5.0 + s5) / 10.0).abs());
        stated_minus = stated_minus.max((sp.lambda0_minus + sp.lambda1_plus - (5.0 - s5) / 10.0).abs());
        same_plus = same_plus.max((sp.lambda0_plus + sp.lambda1_plus - (5.0 + s5) / 10.0).abs());
        same_minus = same_minus.max((sp.lambda0_minus + sp.lambda1_minus - (5.0 - s5) / 10.0).abs());
    }
    let x = 0.5 * (1.0 + 1.0 / s5);
    let mut extremal = 0.0f64;
    for k in [OmegaBranchSpectrum::K_MAX, OmegaBranchSpectrum::K_MIN] {
        let mut v = OmegaBranchSpectrum::from_k(k).values().to_vec();
        v.sort_by(f64::total_cmp);
        for (a, b) in v.iter().zip([0.0, 0.0, 1.0 - x, x]) {
            extremal = extremal.max((a - b).abs());
        }
    }
    vec![
        known(format!("λ0+ + λ1- = (5+√5)/10 on 1000 angles (max dev {stated_plus:.3e})"), stated_plus < 1e-12),
        known(format!("λ0- + λ1+ = (5-√5)/10 on 1000 angles (max dev {stated_minus:.3e})"), stated_minus < 1e-12),
        check(format!("λ0+ + λ1+ = (5+√5)/10 (max dev {same_plus:.3e})"), same_plus < 1e-12),
        check(format!("λ0- + λ1- = (5-√5)/10 (max dev {same_minus:.3e})"), same_minus < 1e-12),
        check(format!("extremal-K spectrum {{0, 0, (1±1/√5)/2}} (max dev {extremal:.3e})"), extremal < 1e-12),
    ]
}

/// Uniform point on the positive part of `2q₀² + 2q₂² + q₄² = 1`.
fn random_omega1(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let u: [f64; 3] = std::array::from_fn(|_| rng.sample::<f64, _>(StandardNormal).abs());
    let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    (u[0] / n / 2f64.sqrt(), u[1] / n / 2f64.sqrt(), u[2] / n)
}

fn criterion_3() -> Vec<Check> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = OptimizerConfig::default();
    let (mut emb_ok, mut lb_ok) = (0, 0);
    let (mut worst_emb, mut worst_lb) = (0.0f64, 0.0f64);
    let mut worst_case = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..50 {
        let (q0, q2, q4) = random_omega1(&mut rng);
        let closed = omega1_emb(q0, q2, q4).unwrap().value;
        let s = StateTensor::standard_form(&StandardFormParams::omega1(q0, q2, q4).unwrap());
        let numeric = emb_tripartite(&s, &cfg).unwrap().value;
        let lb = bipartite_lower_bound(&s).unwrap();
        let de = (closed - numeric).abs();
        let dl = (closed - lb).abs();
        emb_ok += (de < 1e-4) as usize;
        lb_ok += (dl < 1e-8) as usize;
        if de > worst_emb {
            worst_emb = de;
            worst_case = (q0, q2, q4, closed, numeric);
        }
        worst_lb = worst_lb.max(dl);
    }
    let secs = start.elapsed().as_secs_f64();
    let (q0, q2, q4, c, n) = worst_case;
    vec![
        known(
            format!(
                "omega1_emb vs emb_tripartite within 1e-4: {emb_ok}/50 \
                 (worst q0={q0:.4} q2={q2:.4} q4={q4:.4}: closed {c:.6}, numeric {n:.6})"
            ),
            emb_ok == 50,
        ),
        check(format!("omega1_emb vs bipartite_lower_bound within 1e-8: {lb_ok}/50 (max dev {worst_lb:.2e})"), lb_ok == 50),
        check(format!("runtime {secs:.1} s < 60 s"), secs < 60.0),
    ]
}

fn criterion_4() -> Vec<Check> {
    let start = Instant::now();
    let budget = Budget::default();
    let rows = ghz_w_sweep(41, &budget).unwrap();
    let omega_row = SweepRow::compute(0.6f64.sqrt(), &budget).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let violations: Vec<String> = rows.iter().chain([&omega_row]).flat_map(|r| r.violations()).collect();
    let zero = rows.iter().find(|r| r.x == 0.0).expect("x = 0 is on the grid");
    let one = rows.last().unwrap();
    let near_one = |v: f64| (v - 1.0).abs() <= 1e-4;
    let mut out = vec![
        check(format!("41 rows plus x = √(3/5); ordering violations: {}", violations.len()), violations.is_empty() && rows.len() == 41),
        check(
            format!(
                "x = 0: emb {:.8} egeom {:.8} ehmin {:.8} ebi {:.8} within 1e-4 of 1, tangle {}",
                zero.emb, zero.egeom, zero.ehmin, zero.ebi, zero.tangle
            ),
            near_one(zero.emb) && near_one(zero.egeom) && near_one(zero.ehmin) && near_one(zero.ebi) && zero.tangle == 1.0,
        ),
        check(format!("x = 1: tangle = {} exactly 0", one.tangle), one.x == 1.0 && one.tangle == 0.0),
        check(
            format!("x = √(3/5): emb {:.8} vs ebi {:.8} within 1e-4", omega_row.emb, omega_row.ebi),
            (omega_row.emb - omega_row.ebi).abs() < 1e-4,
        ),
        check(format!("runtime {secs:.1} s < 600 s"), secs < 600.0),
    ];
    for v in violations.iter().take(5) {
        out.push(check(v.clone(), false));
    }
    out
}

/// Orthonormal basis whose first vector is `v`.
fn basis_containing(v: &[Complex64]) -> MeasurementBasis {
    let d = v.len();
    let mut m = DMatrix::<Complex64>::identity(d, d);
    m.set_column(0, &nalgebra::DVector::from_column_slice(v));
    // Swap in the identity column least aligned with v for rank safety.
    let (q, r) = m.qr().unpack();
    let phase = r[(0, 0)] / r[(0, 0)].norm();
    let mut q = q;
    let mut c0 = q.column_mut(0);
    c0 *= phase;
    MeasurementBasis::from_columns(q).unwrap()
}

fn hierarchy_with_first_basis(s: &StateTensor, first: &MeasurementBasis) -> f64 {
    OutcomeTree::build(s, &[0, 1], |r| {
        if r.num_parties() == 2 {
            first.clone()
        } else {
            basis_containing(r.amplitudes())
        }
    })
    .unwrap()
    .entropy()
}

fn criterion_5() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut eig_dev = 0.0f64;
    let mut below = 0.0f64;
    let mut states = 0;
    for (d, count) in [(2usize, 100usize), (3, 20)] {
        for _ in 0..count {
            let s = random_state(vec![d, d], rng.random()).unwrap();
            let e = bipartite_entanglement(&s, &Partition::finest(2)).unwrap();
            let rho = s.reduced_density(&[0]).unwrap();
            let eig = MeasurementBasis::from_columns(rho.symmetric_eigen().eigenvectors).unwrap();
            let h = hierarchy_with_first_basis(&s, &eig);
            eig_dev = eig_dev.max((h - e).abs());
            eig_dev = eig_dev.max((shannon_entropy(&outcome_distribution(&s, 0, &eig).unwrap()) - e).abs());
            for _ in 0..200 {
                let basis = MeasurementBasis::from_columns(random_unitary(d, &mut rng)).unwrap();
                below = below.max(e - hierarchy_with_first_basis(&s, &basis));
            }
            states += 1;
        }
    }
    vec![
        check(format!("{states} states: eigenbasis entropy = E within 1e-8 (max dev {eig_dev:.2e})"), eig_dev < 1e-8),
        check(format!("200 random bases each never below E by 1e-8 (worst {below:.2e})"), below <= 1e-8),
    ]
}

fn criterion_6() -> Vec<Check> {
    let start = Instant::now();
    let report = verify_random(0, 500, &Budget::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let mut out = vec![
        check(format!("{}/500 random states pass the inequality chain within 1e-4", report.passed()), report.failed() == 0),
        check(format!("runtime {secs:.1} s < 1800 s"), secs < 1800.0),
    ];
    for c in report.checks.iter().filter(|c| !c.passed()).take(5) {
        out.push(check(format!("seed {:?}: {}", c.seed, c.failures.join("; ")), false));
    }
    out
}

fn criterion_7() -> Vec<Check> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let f = 1.0 / 5f64.sqrt();
    let t = 1.0 / 3f64.sqrt();
    let ghz = commutator_condition(&StandardFormParams::new([h, 0.0, 0.0, 0.0, h], 0.0).unwrap());
    let om = commutator_condition(&StandardFormParams::new([f; 5], 0.0).unwrap());
    let wp = commutator_condition(&StandardFormParams::new([0.0, t, t, t, 0.0], 0.0).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = Budget::default();
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..20 {
        let (q0, q2, q4) = random_omega1(&mut rng);
        let s = StateTensor::standard_form(&StandardFormParams::omega1(q0, q2, q4).unwrap());
        let gap = e_hmin(&s, &budget).unwrap().value - emb_tripartite(&s, &budget.emb).unwrap().value;
        worst = worst.max(gap);
    }
    vec![
        check(format!("GHZ -> {:?}", ghz.class), ghz.class == CommutatorClass::Omega2 && ghz.numerically_verified),
        check(format!("|Ω⟩ -> {:?}", om.class), om.class == CommutatorClass::Omega1 && om.numerically_verified),
        check(format!("W′ -> {:?} (max commutator {:.3})", wp.class, wp.max_commutator), wp.class == CommutatorClass::None),
        check(format!("20 Omega1 states: max E_Hmin - E_MB = {worst:.2e} < 2e-4"), worst < 2e-4),
    ]
}

fn criterion_8() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = OptimizerConfig::default();
    let mut worst = 0.0f64;
    let mut within = 0;
    let mut above_grid = f64::NEG_INFINITY;
    let mut worst_fine = 0.0f64;
    for _ in 0..25 {
        let s = random_state(vec![2, 2, 2], rng.random()).unwrap();
        let mut state_worst = 0.0f64;
        for first in 0..3 {
            let v = emb_tripartite_first(&s, first, &cfg).unwrap().value;
            let g = common::grid(256).map(|(t, p)| hierarchy_entropy(&s, first, t, p)).fold(f64::INFINITY, f64::min);
            state_worst = state_worst.max((v - g).abs());
            above_grid = above_grid.max(v - g);
        }
        let v = emb_tripartite(&s, &cfg).unwrap().value;
        state_worst = state_worst.max((v - grid_emb(&s, 256)).abs());
        within += (state_worst < 1e-4) as usize;
        worst = worst.max(state_worst);
        worst_fine = worst_fine.max((v - grid_emb(&s, 1024)).abs());
    }
    vec![
        known(
            format!("25 states: |optimizer - 256x256 grid| < 1e-4 on {within}/25 (max {worst:.2e})"),
            worst < 1e-4,
        ),
        check(format!("optimizer never above the grid (max excess {above_grid:.2e})"), above_grid <= 1e-12),
        check(format!("|optimizer - 1024x1024 grid| max {worst_fine:.2e} < 1e-4"), worst_fine < 1e-4),
    ]
}

type Criterion = fn() -> Vec<Check>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("|Ω⟩ exact values", criterion_1),
        ("|Ω⟩ eigenvalue structure", criterion_2),
        ("Ω₁ closed form", criterion_3),
        ("GHZ–W′ sweep", criterion_4),
        ("bipartite measurement theorem", criterion_5),
        ("inequality harness", criterion_6),
        ("commutator classifier", criterion_7),
        ("oracle equivalence", criterion_8),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str()) || title.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let checks = run();
        let pass = checks.iter().all(|c| c.pass);
        println!("{label}: {} {title} ({:.1} s)", if pass { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
        for c in &checks {
            let tag = match (c.pass, c.known) {
                (true, false) => "ok",
                (true, true) => "ok (expected discrepancy did not reproduce)",
                (false, true) => "FAIL (known discrepancy)",
                (false, false) => "FAIL",
            };
            println!("    [{tag}] {}", c.name);
            if !c.pass && !c.known {
                unexpected += 1;
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failing check(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
