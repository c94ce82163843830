//! Frozen-corner enumeration of alternating sign matrices.
//!
//! `B(n, s)` counts `n x n` ASMs whose top-left `s x s` block is zero. This
//! crate computes it three independent ways:
//!
//! * [`frozen_oracle`]: memoized counting of constrained monotone triangles
//!   (plus a brute-force scan for `n <= 4`);
//! * [`conjecture`]: `A_n det(1 - M)` for an explicit `s x s` matrix `M`;
//! * [`mir`]: a constant-term extraction from a multiple-integral formula.
//!
//! The counters share the [`method::FrozenCounter`] trait and are selected
//! by name through [`method::Registry`]. [`asymptotics`] evaluates
//! `det(1 - M)` in multiprecision floating point for large `n` and compares
//! it with the GUE Tracy–Widom distribution.

pub mod asm_enum;
pub mod asymptotics;
pub mod conjecture;
pub mod error;
pub mod frozen_oracle;
pub mod golden;
pub mod method;
pub mod mir;
pub mod numkit;
pub mod verify;

pub use error::{Error, Result};
pub use numkit::{ExactInteger, ExactRational};
