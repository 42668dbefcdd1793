use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;

use super::StateTensor;
use crate::closedform::StandardFormParams;
use crate::{Error, Result};

/// Identifiers accepted by [`named_state`] (matched case-insensitively).
pub const NAMED_STATES: &[&str] =
    &["GHZ", "W", "Wprime", "Omega", "Omega1", "Omega2", "Bell", "GHZ-W", "standard"];

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn qubits(n: usize, terms: &[(usize, Complex64)]) -> StateTensor {
    let mut amps = vec![r(0.0); 1 << n];
    for &(idx, a) in terms {
        amps[idx] = a;
    }
    StateTensor::from_unnormalized(vec![2; n], amps).expect("named states are nonzero")
}

fn expect_params(name: &str, params: &[f64], counts: &[usize]) -> Result<()> {
    if counts.contains(&params.len()) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "{name} takes {counts:?} parameters, got {}",
            params.len()
        )))
    }
}

/// `cos α·|GHZ⟩ + sin α·|W′⟩` with `|W′⟩ = (|011⟩+|101⟩+|110⟩)/√3`, α ∈ [−π/2, π/2].
pub fn ghz_w(alpha: f64) -> Result<StateTensor> {
    if !(alpha.abs() <= FRAC_PI_2 + 1e-12) {
        return Err(Error::OutOfRange { what: "alpha", value: alpha });
    }
    let g = alpha.cos() * FRAC_1_SQRT_2;
    let w = alpha.sin() / 3f64.sqrt();
    Ok(qubits(3, &[(0b000, r(g)), (0b011, r(w)), (0b101, r(w)), (0b110, r(w)), (0b111, r(g))]))
}

/// Builds one of the states listed in [`NAMED_STATES`].
///
/// Parameterized families:
/// - `GHZ-W`: `[alpha]`
/// - `Omega1`: `[q0, q2, q4]`, or `[q0, q4]` with `q2` fixed by normalization
/// - `Omega2`: `[q0, q1, q4, gamma]`
/// - `standard`: `[q0, q1, q2, q3, q4, gamma]`
pub fn named_state(name: &str, params: &[f64]) -> Result<StateTensor> {
    let s3 = 1.0 / 3f64.sqrt();
    match name.to_ascii_lowercase().as_str() {
        "ghz" => {
            expect_params(name, params, &[0])?;
            Ok(qubits(3, &[(0b000, r(FRAC_1_SQRT_2)), (0b111, r(FRAC_1_SQRT_2))]))
        }
        "w" => {
            expect_params(name, params, &[0])?;
            Ok(qubits(3, &[(0b001, r(s3)), (0b010, r(s3)), (0b100, r(s3))]))
        }
        "wprime" | "w'" => {
            expect_params(name, params, &[0])?;
            Ok(qubits(3, &[(0b011, r(s3)), (0b101, r(s3)), (0b110, r(s3))]))
        }
        "omega" => {
            expect_params(name, params, &[0])?;
            let a = r(1.0 / 5f64.sqrt());
            Ok(qubits(3, &[(0b000, a), (0b011, a), (0b101, a), (0b110, a), (0b111, a)]))
        }
        "bell" => {
            expect_params(name, params, &[0])?;
            Ok(qubits(2, &[(0b00, r(FRAC_1_SQRT_2)), (0b11, r(FRAC_1_SQRT_2))]))
        }
        "ghz-w" | "ghzw" => {
            expect_params(name, params, &[1])?;
            ghz_w(params[0])
        }
        "omega1" => {
            expect_params(name, params, &[2, 3])?;
            let p = match *params {
                [q0, q4] => StandardFormParams::omega1_from_q0_q4(q0, q4)?,
                [q0, q2, q4] => StandardFormParams::omega1(q0, q2, q4)?,
                _ => unreachable!(),
            };
            Ok(StateTensor::standard_form(&p))
        }
        "omega2" => {
            expect_params(name, params, &[4])?;
            let p = StandardFormParams::omega2(params[0], params[1], params[2], params[3])?;
            Ok(StateTensor::standard_form(&p))
        }
        "standard" => {
            expect_params(name, params, &[6])?;
            let q = [params[0], params[1], params[2], params[3], params[4]];
            Ok(StateTensor::standard_form(&StandardFormParams::new(q, params[5])?))
        }
        _ => Err(Error::UnknownState(name.to_string())),
    }
}

impl StateTensor {
    /// `q₀|000⟩ + q₁|011⟩ + q₂|101⟩ + q₃|110⟩ + q₄e^{iγ}|111⟩`.
    pub fn standard_form(p: &StandardFormParams) -> StateTensor {
        let q = p.q();
        qubits(
            3,
            &[
                (0b000, r(q[0])),
                (0b011, r(q[1])),
                (0b101, r(q[2])),
                (0b110, r(q[3])),
                (0b111, Complex64::from_polar(q[4], p.gamma())),
            ],
        )
    }
}
