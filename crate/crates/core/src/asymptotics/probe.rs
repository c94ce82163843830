//! Finite-`n` boundary distribution against `F2` at the edge scaling
//! `s = n y_c - n^{1/3} sigma / (2^{4/3} 3^{1/6})`.

use super::arctic::diagonal_height;
use super::boundary::{boundary_cdf, BoundaryEstimate};
use super::tracy_widom::{tw_f2, TwValue};
use super::PrecisionConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwProbe {
    pub n: u32,
    pub sigma: f64,
    pub s: u32,
    pub cdf: BoundaryEstimate,
    pub tw: TwValue,
    /// `|P(boundary > s) - F2(sigma)|`.
    pub gap: f64,
}

/// Edge fluctuation scale `2^{4/3} 3^{1/6}`.
pub fn edge_scale() -> f64 {
    2f64.powf(4.0 / 3.0) * 3f64.powf(1.0 / 6.0)
}

/// Frozen size probed at `(n, sigma)`, floored and clamped to `0..=n`.
pub fn scaled_s(n: u32, sigma: f64) -> Result<u32> {
    if n == 0 || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "need n >= 1 and finite sigma, got n={n}, sigma={sigma}"
        )));
    }
    let nf = n as f64;
    let raw = (nf * diagonal_height() - nf.cbrt() * sigma / edge_scale()).floor();
    Ok(raw.clamp(0.0, nf) as u32)
}

/// One probe per entry of `ns`, sharing a single `F2(sigma)` evaluation.
pub fn tw_convergence_probe(sigma: f64, ns: &[u32], cfg: &PrecisionConfig) -> Result<Vec<TwProbe>> {
    let tw = tw_f2(sigma, cfg)?;
    ns.iter()
        .map(|&n| {
            let s = scaled_s(n, sigma)?;
            let cdf = boundary_cdf(n, s, cfg)?;
            Ok(TwProbe {
                n,
                sigma,
                s,
                cdf,
                tw,
                gap: (cdf.value - tw.value).abs(),
            })
        })
        .collect()
}
