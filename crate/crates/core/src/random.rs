//! Seeded random states and unitaries.
//!
//! A state with seed `s` is drawn from `ChaCha8Rng::seed_from_u64(s)`: for each
//! amplitude in storage order, one standard normal for the real part, then one for
//! the imaginary part; the vector is then normalized. This is the Haar measure
//! on pure states and is stable across platforms.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::state::StateTensor;
use crate::Result;

fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random unit vector in `ℂ^d`.
pub fn random_unit_vector<R: Rng>(d: usize, rng: &mut R) -> DVector<Complex64> {
    loop {
        let v = DVector::from_fn(d, |_, _| complex_normal(rng));
        let n = v.norm();
        if n > 1e-300 {
            return v / Complex64::new(n, 0.0);
        }
    }
}

pub fn random_state(dims: Vec<usize>, seed: u64) -> Result<StateTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = dims.iter().product();
    let amps = (0..total).map(|_| complex_normal(&mut rng)).collect();
    StateTensor::from_unnormalized(dims, amps)
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of R's
/// diagonal moved into Q.
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| complex_normal(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let z = r[(j, j)];
        let phase = if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Applies an independent random unitary to every party.
pub fn random_local_unitaries(s: &StateTensor, seed: u64) -> Result<StateTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = s.clone();
    for (p, &d) in s.dims().iter().enumerate() {
        out = out.apply_local(p, &random_unitary(d, &mut rng))?;
    }
    Ok(out)
}
