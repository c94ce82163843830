//! GUE Tracy–Widom distribution `F2(sigma) = det(I - K_Airy)` on
//! `L^2(sigma, inf)`, by Nyström discretisation.
//!
//! Gauss–Legendre nodes on `(0, 1)` are pushed to the half line with
//! `x = sigma - kappa ln(1 - u)`, which packs nodes near `sigma` and thins
//! them out where the kernel decays like `exp(-4/3 x^{3/2})`.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use super::airy::airy_pair;
use super::PrecisionConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwValue {
    pub sigma: f64,
    pub value: f64,
    /// Change between the last two node counts.
    pub error: f64,
    pub nodes: usize,
}

/// Airy kernel from precomputed values.
fn kernel(x: f64, ax: f64, apx: f64, y: f64, ay: f64, apy: f64) -> f64 {
    if x == y {
        apx * apx - x * ax * ax
    } else {
        (ax * apy - apx * ay) / (x - y)
    }
}

/// Determinant of a dense row-major matrix, partial pivoting.
pub fn det_f64(mut a: Vec<f64>, dim: usize) -> f64 {
    let mut det = 1.0;
    for c in 0..dim {
        let pivot = (c..dim)
            .max_by(|&x, &y| a[x * dim + c].abs().total_cmp(&a[y * dim + c].abs()))
            .unwrap();
        let pv = a[pivot * dim + c];
        if pv == 0.0 {
            return 0.0;
        }
        if pivot != c {
            for k in 0..dim {
                a.swap(c * dim + k, pivot * dim + k);
            }
            det = -det;
        }
        det *= pv;
        for r in c + 1..dim {
            let f = a[r * dim + c] / pv;
            if f != 0.0 {
                for k in c..dim {
                    a[r * dim + k] -= f * a[c * dim + k];
                }
            }
        }
    }
    det
}

/// `F2(sigma)` with a fixed number of nodes.
pub fn tw_f2_nodes(sigma: f64, nodes: usize, cfg: &PrecisionConfig) -> Result<f64> {
    if !sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be finite, got {sigma}")));
    }
    let m = NonZeroUsize::new(nodes)
        .ok_or_else(|| Error::Usage("node count must be positive".into()))?;
    let rule = GaussLegendre::new(m);
    let kappa = cfg.tail_scale;
    let pts: Vec<(f64, f64, f64, f64)> = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(t, w)| {
            let u = 0.5 * (t + 1.0);
            let x = sigma - kappa * (-u).ln_1p();
            let wx = 0.5 * w * kappa / (1.0 - u);
            let (a, ap) = airy_pair(x, cfg.airy_switch);
            (x, wx.sqrt(), a, ap)
        })
        .collect();
    let dim = pts.len();
    let mut mat = vec![0.0; dim * dim];
    for (i, &(x, sx, ax, apx)) in pts.iter().enumerate() {
        for (j, &(y, sy, ay, apy)) in pts.iter().enumerate() {
            let k = sx * kernel(x, ax, apx, y, ay, apy) * sy;
            mat[i * dim + j] = if i == j { 1.0 - k } else { -k };
        }
    }
    Ok(det_f64(mat, dim).clamp(0.0, 1.0))
}

/// `F2(sigma)` at `cfg.nodes`, doubled until two successive values agree
/// within `cfg.tw_tolerance`.
pub fn tw_f2(sigma: f64, cfg: &PrecisionConfig) -> Result<TwValue> {
    let mut nodes = cfg.nodes;
    let mut prev = tw_f2_nodes(sigma, nodes, cfg)?;
    let mut error = f64::INFINITY;
    for _ in 0..=cfg.max_node_doublings {
        nodes *= 2;
        let next = tw_f2_nodes(sigma, nodes, cfg)?;
        error = (next - prev).abs();
        prev = next;
        if error <= cfg.tw_tolerance {
            return Ok(TwValue {
                sigma,
                value: prev,
                error,
                nodes,
            });
        }
    }
    Err(Error::Convergence(format!(
        "F2({sigma}) still moves by {error:e} at {nodes} nodes"
    )))
}
