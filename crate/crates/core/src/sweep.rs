//! The GHZ–W′ family `cos α|GHZ⟩ + sin α|W′⟩`, tabulated against `x = sin α`.

use serde::Serialize;

use crate::emb::{e_hmin, emb_tripartite, Budget};
use crate::geometric::{geometric_measure_symmetric, tangle_ghz_w_x};
use crate::measures::max_bipartite_entanglement;
use crate::par::map_indices;
use crate::state::ghz_w;
use crate::{Error, Result};

/// Slack allowed in the row ordering checks.
pub const ROW_TOLERANCE: f64 = 1e-4;

pub const CSV_HEADER: &str = "x,emb,egeom,ehmin,ebi,tangle";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub emb: f64,
    pub egeom: f64,
    pub ehmin: f64,
    pub ebi: f64,
    pub tangle: f64,
}

impl SweepRow {
    pub fn compute(x: f64, budget: &Budget) -> Result<Self> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange { what: "x", value: x });
        }
        let alpha = x.asin();
        let s = ghz_w(alpha)?;
        Ok(SweepRow {
            x,
            emb: emb_tripartite(&s, &budget.emb)?.value,
            egeom: geometric_measure_symmetric(&s, &budget.emb)?.value,
            ehmin: e_hmin(&s, budget)?.value,
            ebi: max_bipartite_entanglement(&s)?,
            tangle: tangle_ghz_w_x(x),
        })
    }

    /// Orderings that fail: `E_Hmin ≥ E_MB`, `E_MB ≥ E_G`, `E_MB ≥ E_bi`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, big, small) in [
            ("ehmin >= emb", self.ehmin, self.emb),
            ("emb >= egeom", self.emb, self.egeom),
            ("emb >= ebi", self.emb, self.ebi),
        ] {
            if big < small - ROW_TOLERANCE {
                out.push(format!("x = {}: {name} fails ({big} < {small})", self.x));
            }
        }
        out
    }

    pub fn csv_line(&self) -> String {
        [self.x, self.emb, self.egeom, self.ehmin, self.ebi, self.tangle]
            .iter()
            .map(|&v| format_sig(v, 10))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Uniform grid of `points` values of `x` over `[−1, 1]`, endpoints included.
pub fn sweep_points(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidParams(format!("a sweep needs at least 2 points, got {points}")));
    }
    let last = (points - 1) as f64;
    // Symmetric formula so the midpoint is exactly zero for odd counts.
    Ok((0..points).map(|i| (2.0 * i as f64 - last) / last).collect())
}

/// Rows in increasing `x`, computed independently.
pub fn ghz_w_sweep(points: usize, budget: &Budget) -> Result<Vec<SweepRow>> {
    let xs = sweep_points(points)?;
    map_indices(xs.len(), |i| SweepRow::compute(xs[i], budget)).into_iter().collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// `v` with `sig` significant digits in plain or exponent notation, whichever
/// is shorter; `-0` prints as `0`.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..=(sig as i32)).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        trim_zeros(&s)
    } else {
        let s = format!("{v:.prec$e}", prec = sig - 1);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        format!("{}e{e}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" { "0".into() } else { t.into() }
    } else {
        s.into()
    }
}
