//! Budgeted derivative-free minimization over low-dimensional angle domains.
//!
//! A coarse grid is scanned first; the best, mutually non-adjacent grid cells then
//! seed Nelder–Mead refinements. The simplex moves in unconstrained coordinates
//! and the reported argmin is wrapped back into each axis' canonical period.
//! Grid points and restarts are evaluated independently and reduced in a fixed
//! order, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::par::map_indices;
use crate::{Error, Result};

/// Largest number of angles a single search may range over.
pub const MAX_AXES: usize = 8;
const MAX_GRID_POINTS: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerConfig {
    /// Grid points per axis.
    pub grid_resolution: usize,
    /// Number of local refinements, started from the best grid cells.
    pub restart_count: usize,
    /// Objective evaluations allowed per refinement.
    pub max_evaluations: usize,
    /// Stop once the simplex values agree to this.
    pub objective_tolerance: f64,
    /// ...and its vertices to this.
    pub parameter_tolerance: f64,
    /// Drives the orientation and size of each restart's initial simplex.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_resolution: 48,
            restart_count: 5,
            max_evaluations: 2000,
            objective_tolerance: 1e-9,
            parameter_tolerance: 1e-7,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_resolution == 0 || self.restart_count == 0 || self.max_evaluations == 0 {
            return Err(Error::InvalidConfig(
                "grid resolution, restart count and evaluation budget must be positive".into(),
            ));
        }
        for (name, tol) in [
            ("objective tolerance", self.objective_tolerance),
            ("parameter tolerance", self.parameter_tolerance),
        ] {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(Error::InvalidConfig(format!("{name} {tol} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// One search coordinate. The grid covers `[start, start + span]`; values are
/// reported modulo `period`. A span equal to the period is a full circle sampled
/// from `start`; shorter spans are sampled at cell centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub span: f64,
    pub period: f64,
}

impl Axis {
    pub fn periodic(start: f64, period: f64) -> Self {
        Axis { start, span: period, period }
    }

    pub fn interval(start: f64, end: f64, period: f64) -> Self {
        Axis { start, span: end - start, period }
    }

    fn is_circle(&self) -> bool {
        self.span >= self.period
    }

    fn grid_point(&self, i: usize, res: usize) -> f64 {
        if self.is_circle() {
            self.start + self.span * i as f64 / res as f64
        } else {
            // Cell centers: an interval end is often a coordinate singularity
            // (a pole in θ) where a whole grid row would tie.
            self.start + self.span * (i as f64 + 0.5) / res as f64
        }
    }

    fn cell(&self, res: usize) -> f64 {
        self.span / res as f64
    }

    fn wrap(&self, x: f64) -> f64 {
        if !self.period.is_finite() {
            return x;
        }
        let y = (x - self.start).rem_euclid(self.period) + self.start;
        // rem_euclid may round up to exactly one period.
        if y >= self.start + self.period {
            self.start
        } else {
            y
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Objective evaluations, grid included.
    pub evaluations: usize,
    pub restarts: usize,
    /// Whether the winning refinement met both tolerances within its budget.
    pub converged: bool,
    /// Best value seen on the grid.
    pub grid_best: f64,
    /// Second-best minus best refinement value, when there were two or more.
    pub gap: Option<f64>,
}

impl Diagnostics {
    /// Folds another search's diagnostics into this one (counts add, flags combine).
    pub fn absorb(&mut self, other: &Diagnostics) {
        self.evaluations += other.evaluations;
        self.restarts += other.restarts;
        self.converged &= other.converged;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Optimum {
    pub value: f64,
    pub argmin: Vec<f64>,
    pub diagnostics: Diagnostics,
}

struct Refined {
    value: f64,
    point: Vec<f64>,
    evaluations: usize,
    converged: bool,
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn decode(mut flat: usize, res: usize, k: usize, out: &mut [usize]) {
    for slot in out[..k].iter_mut().rev() {
        *slot = flat % res;
        flat /= res;
    }
}

fn adjacent(a: &[usize], b: &[usize], axes: &[Axis], res: usize) -> bool {
    a.iter().zip(b).zip(axes).all(|((&i, &j), ax)| {
        let d = i.abs_diff(j);
        d <= 1 || (ax.is_circle() && d == res - 1)
    })
}

/// Minimizes `f` over the product of `axes`.
pub fn minimize_periodic<F>(f: F, axes: &[Axis], cfg: &OptimizerConfig) -> Result<Optimum>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    let k = axes.len();
    if k == 0 || k > MAX_AXES {
        return Err(Error::InvalidConfig(format!("{k} axes; 1 to {MAX_AXES} supported")));
    }
    if axes.iter().any(|a| !(a.period > 0.0 && a.span > 0.0)) {
        return Err(Error::InvalidConfig("axis span and period must be positive".into()));
    }
    let res = cfg.grid_resolution;
    let total = (0..k)
        .try_fold(1usize, |acc, _| acc.checked_mul(res))
        .filter(|&t| t <= MAX_GRID_POINTS)
        .ok_or_else(|| Error::InvalidConfig(format!("grid {res}^{k} is too large")))?;

    let grid: Vec<f64> = map_indices(total, |flat| {
        let mut idx = [0usize; MAX_AXES];
        decode(flat, res, k, &mut idx);
        let mut x = [0.0f64; MAX_AXES];
        for a in 0..k {
            x[a] = axes[a].grid_point(idx[a], res);
        }
        sanitize(f(&x[..k]))
    });

    let mut ranked: Vec<usize> = (0..total).collect();
    ranked.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]).then(a.cmp(&b)));
    let grid_best = grid[ranked[0]];

    // Prefer distinct basins; fall back to plain rank order if there are too few.
    let wanted = cfg.restart_count.min(total);
    let mut starts: Vec<usize> = Vec::with_capacity(wanted);
    let mut idx_a = [0usize; MAX_AXES];
    let mut idx_b = [0usize; MAX_AXES];
    for &cand in &ranked {
        if starts.len() == wanted {
            break;
        }
        decode(cand, res, k, &mut idx_a);
        let clash = starts.iter().any(|&s| {
            decode(s, res, k, &mut idx_b);
            adjacent(&idx_a[..k], &idx_b[..k], axes, res)
        });
        if !clash {
            starts.push(cand);
        }
    }
    for &cand in &ranked {
        if starts.len() == wanted {
            break;
        }
        if !starts.contains(&cand) {
            starts.push(cand);
        }
    }

    let refined: Vec<Refined> = map_indices(starts.len(), |r| {
        let mut idx = [0usize; MAX_AXES];
        decode(starts[r], res, k, &mut idx);
        let x0: Vec<f64> = (0..k).map(|a| axes[a].grid_point(idx[a], res)).collect();
        let steps: Vec<f64> = axes.iter().map(|a| a.cell(res)).collect();
        let seed = cfg.seed ^ (r as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        nelder_mead(&f, x0, grid[starts[r]], &steps, seed, cfg)
    });

    let mut best = 0;
    for (i, r) in refined.iter().enumerate() {
        if r.value < refined[best].value {
            best = i;
        }
    }
    let gap = refined
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best)
        .map(|(_, r)| r.value - refined[best].value)
        .min_by(f64::total_cmp);
    let winner = &refined[best];
    Ok(Optimum {
        value: winner.value,
        argmin: winner.point.iter().zip(axes).map(|(&x, a)| a.wrap(x)).collect(),
        diagnostics: Diagnostics {
            evaluations: total + refined.iter().map(|r| r.evaluations).sum::<usize>(),
            restarts: refined.len(),
            converged: winner.converged,
            grid_best,
            gap,
        },
    })
}

/// Maximizes `f` by minimizing its negation.
pub fn maximize_periodic<F>(f: F, axes: &[Axis], cfg: &OptimizerConfig) -> Result<Optimum>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut opt = minimize_periodic(|x| -f(x), axes, cfg)?;
    opt.value = -opt.value;
    opt.diagnostics.grid_best = -opt.diagnostics.grid_best;
    Ok(opt)
}

fn nelder_mead<F>(
    f: &F,
    x0: Vec<f64>,
    f0: f64,
    steps: &[f64],
    seed: u64,
    cfg: &OptimizerConfig,
) -> Refined
where
    F: Fn(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evals = 0usize;
    let eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        sanitize(f(x))
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.clone(), f0));
    for j in 0..n {
        let mut x = x0.clone();
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        x[j] += sign * steps[j] * rng.random_range(0.5..1.0);
        let fx = eval(&x, &mut evals);
        simplex.push((x, fx));
    }

    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (f_best, f_worst) = (simplex[0].1, simplex[n].1);
        let spread = f_worst - f_best;
        let size = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        let flat = spread <= 4.0 * f64::EPSILON * (1.0 + f_best.abs());
        if (spread <= cfg.objective_tolerance && size <= cfg.parameter_tolerance) || flat {
            converged = true;
            break;
        }
        if evals >= cfg.max_evaluations {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let along = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, w)| c + t * (w - c)).collect()
        };

        let worst = simplex[n].0.clone();
        let xr = along(-REFLECT, &worst);
        let fr = eval(&xr, &mut evals);
        if fr < f_best {
            let xe = along(-REFLECT * EXPAND, &worst);
            let fe = eval(&xe, &mut evals);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < f_worst {
            let xc = along(-REFLECT * CONTRACT, &worst);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        } else {
            let xc = along(CONTRACT, &worst);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        };
        if fc < fr.min(f_worst) {
            simplex[n] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex[1..].iter_mut() {
            let x: Vec<f64> =
                anchor.iter().zip(&vertex.0).map(|(a, v)| a + SHRINK * (v - a)).collect();
            let fx = eval(&x, &mut evals);
            *vertex = (x, fx);
        }
    }
    let (point, value) = simplex.swap_remove(0);
    Refined { value, point, evaluations: evals, converged }
}
