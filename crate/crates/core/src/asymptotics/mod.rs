//! Large-`n` behaviour of the frozen boundary: the arctic curve, the exact
//! distribution `det(1 - M)` evaluated in multiprecision, and its
//! comparison with the GUE Tracy–Widom law.

pub mod airy;
pub mod arctic;
pub mod boundary;
pub mod probe;
pub mod tracy_widom;

pub use airy::{airy_ai, airy_ai_prime, airy_pair};
pub use arctic::{arctic_point, diagonal_height, ellipse_residual, sample_curve, ArcticPoint};
pub use boundary::{boundary_cdf, boundary_cdf_exact, default_bits, BoundaryEstimate};
pub use probe::{scaled_s, tw_convergence_probe, TwProbe};
pub use tracy_widom::{tw_f2, tw_f2_nodes, TwValue};

/// Numerical knobs for the floating-point routes.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionConfig {
    /// Starting significand for `det(1 - M)`; `None` picks one from the
    /// size of `A_n`.
    pub bits: Option<u32>,
    pub max_doublings: u32,
    /// Accepted change between two precisions.
    pub cdf_tolerance: f64,
    /// Starting Gauss–Legendre node count for `F2`.
    pub nodes: usize,
    pub max_node_doublings: u32,
    pub tw_tolerance: f64,
    /// `|x|` beyond which Airy functions use their asymptotic expansions.
    pub airy_switch: f64,
    /// Length scale of the map from `(0, 1)` to the half line.
    pub tail_scale: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            bits: None,
            max_doublings: 3,
            cdf_tolerance: 1e-15,
            nodes: 64,
            max_node_doublings: 2,
            tw_tolerance: 1e-10,
            airy_switch: airy::DEFAULT_SWITCH,
            tail_scale: 4.0,
        }
    }
}
