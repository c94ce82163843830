//! Airy function `Ai` and its derivative on the real line.
//!
//! Inside `|x| <= switch` the Maclaurin series is summed in multiprecision
//! arithmetic with enough guard bits to absorb its cancellation (terms grow
//! like `exp(2/3 |x|^{3/2})`); outside, the standard asymptotic expansions
//! are summed to their smallest term.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::LazyLock;

use rug::ops::Pow;
use rug::Float;

pub const DEFAULT_SWITCH: f64 = 10.0;

const CONST_BITS: u32 = 1024;

/// `Ai(0)` and `-Ai'(0)` at `CONST_BITS` precision.
static ORIGIN_VALUES: LazyLock<(Float, Float)> = LazyLock::new(|| origin_values(CONST_BITS));

fn origin_values(prec: u32) -> (Float, Float) {
    let three = Float::with_val(prec, 3);
    let third = Float::with_val(prec, 1) / &three;
    let g13 = Float::with_val(prec, third.gamma_ref());
    let two_thirds = Float::with_val(prec, 2) / &three;
    let g23 = Float::with_val(prec, two_thirds.gamma_ref());
    let c1 = Float::with_val(prec, 1) / (Float::with_val(prec, (&three).pow(&two_thirds)) * g23);
    let c2 = Float::with_val(prec, 1) / (Float::with_val(prec, (&three).pow(&third)) * g13);
    (c1, c2)
}

fn zeta(x: f64) -> f64 {
    2.0 / 3.0 * x.abs().powf(1.5)
}

/// `(Ai(x), Ai'(x))` from the Maclaurin series.
fn maclaurin(x: f64) -> (f64, f64) {
    let prec = 64 + (2.0 * zeta(x) / std::f64::consts::LN_2).ceil() as u32 + 16;
    let (c1, c2) = if prec <= CONST_BITS {
        let (a, b) = &*ORIGIN_VALUES;
        (Float::with_val(prec, a), Float::with_val(prec, b))
    } else {
        origin_values(prec)
    };
    let xf = Float::with_val(prec, x);
    let x3 = Float::with_val(prec, (&xf).pow(3u32));
    // f = sum f_k, g = sum g_k and their derivatives h = f', e = g'.
    let mut f_k = Float::with_val(prec, 1);
    let mut g_k = xf.clone();
    let mut h_k = Float::with_val(prec, xf.square_ref()) / 2u32;
    let mut e_k = Float::with_val(prec, 1);
    let (mut f, mut g, mut h, mut e) = (f_k.clone(), g_k.clone(), h_k.clone(), e_k.clone());
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    for k in 0u32..2000 {
        let k3 = 3 * k;
        f_k = f_k * &x3 / ((k3 + 2) * (k3 + 3));
        g_k = g_k * &x3 / ((k3 + 3) * (k3 + 4));
        h_k = h_k * &x3 / ((k3 + 3) * (k3 + 5));
        e_k = e_k * &x3 / ((k3 + 1) * (k3 + 3));
        f += &f_k;
        g += &g_k;
        h += &h_k;
        e += &e_k;
        let small = |t: &Float, s: &Float| {
            Float::with_val(prec, t.abs_ref()) <= Float::with_val(prec, s.abs_ref()) * &tiny
        };
        if k > 2 && small(&f_k, &f) && small(&g_k, &g) && small(&h_k, &h) && small(&e_k, &e) {
            break;
        }
    }
    let ai = Float::with_val(prec, &c1 * &f) - Float::with_val(prec, &c2 * &g);
    let aip = Float::with_val(prec, &c1 * &h) - Float::with_val(prec, &c2 * &e);
    (ai.to_f64(), aip.to_f64())
}

/// Coefficients `u_k` and `v_k` of the large-argument expansions, up to
/// the point where the terms in `1/zeta` stop decreasing.
fn asymptotic_coeffs(z: f64) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let next = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let size = next / z.powi(k as i32);
        if size >= last || size < 1e-18 {
            break;
        }
        last = size;
        u.push(next);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * next);
    }
    (u, v)
}

fn asymptotic(x: f64) -> (f64, f64) {
    let z = zeta(x);
    let (u, v) = asymptotic_coeffs(z);
    let a = x.abs();
    if x > 0.0 {
        let alt = |c: &[f64]| {
            c.iter()
                .enumerate()
                .map(|(k, ck)| if k % 2 == 0 { 1.0 } else { -1.0 } * ck / z.powi(k as i32))
                .sum::<f64>()
        };
        let decay = (-z).exp() / (2.0 * PI.sqrt());
        (
            decay / a.powf(0.25) * alt(&u),
            -decay * a.powf(0.25) * alt(&v),
        )
    } else {
        // Even and odd parts, each with alternating signs.
        let split = |c: &[f64]| {
            let (mut even, mut odd) = (0.0, 0.0);
            for (k, ck) in c.iter().enumerate() {
                let t = ck / z.powi(k as i32);
                let sgn = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                if k % 2 == 0 {
                    even += sgn * t;
                } else {
                    odd += sgn * t;
                }
            }
            (even, odd)
        };
        let (ue, uo) = split(&u);
        let (ve, vo) = split(&v);
        let phase = z - FRAC_PI_4;
        let (sn, cs) = phase.sin_cos();
        let amp = 1.0 / PI.sqrt();
        (
            amp / a.powf(0.25) * (cs * ue + sn * uo),
            amp * a.powf(0.25) * (sn * ve - cs * vo),
        )
    }
}

/// `(Ai(x), Ai'(x))` with the series/asymptotic boundary at `|x| = switch`.
pub fn airy_pair(x: f64, switch: f64) -> (f64, f64) {
    if x.abs() <= switch {
        maclaurin(x)
    } else {
        asymptotic(x)
    }
}

pub fn airy_ai(x: f64) -> f64 {
    airy_pair(x, DEFAULT_SWITCH).0
}

pub fn airy_ai_prime(x: f64) -> f64 {
    airy_pair(x, DEFAULT_SWITCH).1
}

#[cfg(test)]
mod tests {
    use super::*;

    /// MPFR's own Ai, evaluated at high precision.
    fn reference_ai(x: f64) -> f64 {
        Float::with_val(256, x).ai().to_f64()
    }

    fn envelope(x: f64) -> f64 {
        if x >= 0.0 {
            reference_ai(x).abs()
        } else {
            (-x).powf(-0.25) / PI.sqrt()
        }
    }

    #[test]
    fn values_at_origin() {
        assert!((airy_ai(0.0) - 0.355_028_053_887_817_2).abs() < 1e-16);
        assert!((airy_ai_prime(0.0) + 0.258_819_403_792_806_8).abs() < 1e-16);
    }

    #[test]
    fn matches_reference_on_window() {
        for k in 0..=400 {
            let x = -10.0 + 0.05 * k as f64;
            let err = (airy_ai(x) - reference_ai(x)).abs();
            assert!(err <= 1e-13 * envelope(x), "x={x} err={err:e}");
        }
    }

    #[test]
    fn both_sides_of_switch_agree() {
        for x in [-12.0, -10.5, -9.0, 9.0, 10.5, 12.0, 15.0, 25.0] {
            let (a, ap) = airy_pair(x, 30.0);
            let (b, bp) = airy_pair(x, 8.0);
            let scale_a = envelope(x);
            assert!((a - b).abs() <= 1e-13 * scale_a, "Ai x={x}: {a:e} vs {b:e}");
            let scale_p = if x > 0.0 { ap.abs() } else { (-x).powf(0.25) };
            assert!(
                (ap - bp).abs() <= 1e-12 * scale_p,
                "Ai' x={x}: {ap:e} vs {bp:e}"
            );
        }
    }

    #[test]
    fn right_tail() {
        let a10 = airy_ai(10.0);
        assert!(a10 > 0.0 && a10 < 1e-9);
        for x in [12.0, 20.0, 40.0] {
            assert!((airy_ai(x) - reference_ai(x)).abs() < 1e-15, "x={x}");
            assert!(
                (airy_ai(x) - reference_ai(x)).abs() <= 1e-13 * reference_ai(x),
                "x={x}"
            );
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        let h = 2.5e-3;
        for x in [-2.0, 0.0, 2.0] {
            let f = |t: f64| airy_ai(t);
            let second = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h)
                - f(x - 2.0 * h))
                / (12.0 * h * h);
            assert!(
                (second - x * f(x)).abs() < 1e-10,
                "x={x} {:e}",
                second - x * f(x)
            );
            let first =
                (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
            assert!(
                (first - airy_ai_prime(x)).abs() < 1e-10,
                "x={x} {:e}",
                first - airy_ai_prime(x)
            );
            let g = |t: f64| airy_ai_prime(t);
            let dprime =
                (-g(x + 2.0 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2.0 * h)) / (12.0 * h);
            assert!(
                (dprime - x * f(x)).abs() < 1e-10,
                "x={x} {:e}",
                dprime - x * f(x)
            );
        }
    }
}
