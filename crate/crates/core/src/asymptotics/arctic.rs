//! Parametrised boundary of the frozen region of a uniform ASM, in unit
//! square coordinates.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcticPoint {
    pub omega: f64,
    pub x: f64,
    pub y: f64,
}

/// Point on the curve for parameter `omega >= 1`.
pub fn arctic_point(omega: f64) -> Result<ArcticPoint> {
    if !omega.is_finite() || omega < 1.0 {
        return Err(Error::Domain(format!(
            "arctic parameter must be finite and >= 1, got {omega}"
        )));
    }
    let r = 2.0 * (omega * omega - omega + 1.0).sqrt();
    Ok(ArcticPoint {
        omega,
        x: 1.0 - (2.0 * omega - 1.0) / r,
        y: 1.0 - (omega + 1.0) / r,
    })
}

/// Zero exactly on the ellipse `4x^2 + 4y^2 - 4xy - 4x - 4y + 1 = 0`.
pub fn ellipse_residual(x: f64, y: f64) -> f64 {
    4.0 * x * x + 4.0 * y * y - 4.0 * x * y - 4.0 * x - 4.0 * y + 1.0
}

/// Height where the curve crosses the diagonal, `1 - sqrt(3)/2`.
pub fn diagonal_height() -> f64 {
    1.0 - 3f64.sqrt() / 2.0
}

/// `samples` points with `omega = 1 + t/(1-t)` for `t` evenly spaced in `[0, 1)`.
pub fn sample_curve(samples: usize) -> Result<Vec<ArcticPoint>> {
    (0..samples)
        .map(|k| {
            let t = k as f64 / samples as f64;
            arctic_point(1.0 + t / (1.0 - t))
        })
        .collect()
}
