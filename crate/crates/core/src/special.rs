//! Special functions: log-factorial, log of the modified Bessel function of
//! the first kind for integer order, and the Gaussian tail function.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

const FACTORIAL_TABLE_LEN: usize = 171;

fn ln_factorial_table() -> &'static [f64; FACTORIAL_TABLE_LEN] {
    static TABLE: OnceLock<[f64; FACTORIAL_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; FACTORIAL_TABLE_LEN];
        let mut product = 1.0f64;
        for (n, slot) in table.iter_mut().enumerate().skip(1) {
            product *= n as f64;
            *slot = product.ln();
        }
        table
    })
}

/// `ln(n!)`. Exact products up to 170!, Stirling series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < FACTORIAL_TABLE_LEN {
        return ln_factorial_table()[n as usize];
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x
        + 0.5 * (2.0 * PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// Natural log of `I_order(x)` for `x >= 0`.
///
/// Sums the power series `Σ_k (x/2)^(2k+ν) / (k! (k+ν)!)` in scaled form.
/// Every term is positive, so there is no cancellation and the relative
/// error stays at the level of accumulated rounding (~1e-14) for any
/// argument; the cost grows roughly linearly with `x`.
pub fn ln_bessel_i(order: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0 && x.is_finite());
    if x == 0.0 {
        return if order == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let nu = order as f64;
    let half = 0.5 * x;
    let quarter_sq = half * half;
    let leading = nu * half.ln() - ln_factorial(order as u64);

    let mut ln_scale = 0.0;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut k = 0.0f64;
    loop {
        k += 1.0;
        term *= quarter_sq / (k * (k + nu));
        sum += term;
        // past the peak the terms shrink geometrically
        if k * (k + nu) > quarter_sq && term < sum * 1e-17 {
            break;
        }
        if sum > 1e250 {
            ln_scale += sum.ln();
            term /= sum;
            sum = 1.0;
        }
    }
    leading + ln_scale + sum.ln()
}

/// Gaussian tail `Q(x) = P(Z > x)` for a standard normal `Z`.
pub fn gaussian_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Inverse of [`gaussian_tail`] on `(0, 1/2]`, by bisection on `[0, 40]`.
pub fn inverse_gaussian_tail(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 0.5);
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gaussian_tail(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `-p log2 p - (1-p) log2 (1-p)` with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    xlog2x(p) + xlog2x(1.0 - p)
}

/// `-x log2 x` with the `0 log 0 = 0` convention.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln() / LN_2
    }
}

/// `ln(1 + e^t)` without overflow.
pub(crate) fn softplus(t: f64) -> f64 {
    if t > 35.0 {
        t + (-t).exp()
    } else if t < -35.0 {
        t.exp()
    } else {
        t.exp().ln_1p()
    }
}
