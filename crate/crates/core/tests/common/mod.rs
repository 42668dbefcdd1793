//! Independent reference computations, written directly from the definitions
//! and sharing no code paths with the library beyond amplitude access.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, TAU};

use emb_core::{Complex64, StateTensor};

pub fn h2(x: f64) -> f64 {
    let f = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    f(x) + f(1.0 - x)
}

pub fn shannon(ps: &[f64]) -> f64 {
    ps.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// Entropy of a two-qubit pure state from its concurrence.
pub fn entropy_of_concurrence(c: f64) -> f64 {
    h2(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()))
}

/// `ψ_{ijk}` with the given party measured first and the other two in ascending order.
fn reordered(s: &StateTensor, first: usize) -> [[[Complex64; 2]; 2]; 2] {
    let rest: Vec<usize> = (0..3).filter(|&p| p != first).collect();
    let mut out = [[[Complex64::new(0.0, 0.0); 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut digits = [0usize; 3];
                digits[first] = i;
                digits[rest[0]] = j;
                digits[rest[1]] = k;
                out[i][j][k] = s.amplitude(&digits);
            }
        }
    }
    out
}

/// Measure `first` in `{(a₀, a₁), (−a₁*, a₀*)}` and the remaining pair optimally:
/// `H(p) + Σ pₗ E(ψₗ)`, with `E` from the concurrence `2|det Bₗ|/pₗ`.
pub fn hierarchy_entropy(s: &StateTensor, first: usize, theta: f64, phi: f64) -> f64 {
    hierarchy_terms(s, first, theta, phi).0
}

/// `Σ pₗ E(ψₗ)` for the same measurement.
pub fn average_entanglement(s: &StateTensor, first: usize, theta: f64, phi: f64) -> f64 {
    hierarchy_terms(s, first, theta, phi).1
}

fn hierarchy_terms(s: &StateTensor, first: usize, theta: f64, phi: f64) -> (f64, f64) {
    let psi = reordered(s, first);
    let a0 = Complex64::new(theta.cos(), 0.0);
    let a1 = Complex64::from_polar(theta.sin(), phi);
    let rows = [[a0, a1], [-a1.conj(), a0.conj()]];
    let mut total = 0.0;
    let mut avg = 0.0;
    for r in rows {
        let mut b = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (j, row) in b.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                *x = r[0] * psi[0][j][k] + r[1] * psi[1][j][k];
            }
        }
        let p: f64 = b.iter().flatten().map(|z| z.norm_sqr()).sum();
        if p <= 1e-15 {
            continue;
        }
        let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        let e = entropy_of_concurrence((2.0 * det.norm() / p).min(1.0));
        total += -p * p.log2() + p * e;
        avg += p * e;
    }
    (total, avg)
}

/// `(θᵢ, φⱼ)` on an `n × n` grid: θ over `[0, π/2]` with both ends, φ over `[0, 2π)`.
pub fn grid(n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n).flat_map(move |i| {
        (0..n).map(move |j| (FRAC_PI_2 * i as f64 / (n - 1) as f64, TAU * j as f64 / n as f64))
    })
}

/// Exhaustive-grid EMB over the first party and its basis angles.
pub fn grid_emb(s: &StateTensor, n: usize) -> f64 {
    (0..3)
        .flat_map(|first| grid(n).map(move |(t, p)| hierarchy_entropy(s, first, t, p)))
        .fold(f64::INFINITY, f64::min)
}

pub fn grid_locc(s: &StateTensor, n: usize) -> f64 {
    (0..3)
        .flat_map(|first| grid(n).map(move |(t, p)| average_entanglement(s, first, t, p)))
        .fold(0.0, f64::max)
}

/// Largest `|⟨φ|^{⊗3}ψ⟩|²` with `|φ⟩ = cos θ|0⟩ + sin θ e^{iφ}|1⟩` on a grid.
pub fn grid_symmetric_overlap(s: &StateTensor, n: usize) -> f64 {
    grid(n)
        .map(|(t, p)| {
            let v = [Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), p)];
            let mut z = Complex64::new(0.0, 0.0);
            for idx in 0..8usize {
                let (i, j, k) = (idx >> 2 & 1, idx >> 1 & 1, idx & 1);
                z += s.amplitude(&[i, j, k]) * (v[i] * v[j] * v[k]).conj();
            }
            z.norm_sqr()
        })
        .fold(0.0, f64::max)
}

/// One-qubit reduced density matrix of a three-qubit state by explicit partial trace.
pub fn qubit_reduced_density(s: &StateTensor, party: usize) -> [[Complex64; 2]; 2] {
    let psi = reordered(s, party);
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    rho[a][b] += psi[a][j][k] * psi[b][j][k].conj();
                }
            }
        }
    }
    rho
}

/// Eigenvalues of a 2×2 Hermitian matrix from its trace and determinant.
pub fn eig2(m: [[Complex64; 2]; 2]) -> (f64, f64) {
    let tr = (m[0][0] + m[1][1]).re;
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    (tr / 2.0 + disc, tr / 2.0 - disc)
}

/// Entropy of the one-vs-rest cut of a three-qubit state.
pub fn one_vs_rest_entropy(s: &StateTensor, party: usize) -> f64 {
    let (a, _) = eig2(qubit_reduced_density(s, party));
    h2(a)
}
