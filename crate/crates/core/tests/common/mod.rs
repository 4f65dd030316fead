//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use photoncount::channel::{arm_means, truncation_window};
use photoncount::{Bit, ChannelParams};

/// Poisson pmf `P(k)` for `k < len` by forward recurrence in linear space.
pub fn poisson_table(mean: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut p = (-mean).exp();
    for k in 0..len {
        if k > 0 {
            p *= mean / k as f64;
        }
        out.push(p);
    }
    out
}

/// Enumeration length leaving a Poisson tail far below 1e-15.
pub fn enumeration_len(nc: f64) -> usize {
    (nc + 20.0 * (nc + 1.0).sqrt() + 40.0).ceil() as usize
}

/// `P(n1 - n0 = d)` by brute-force convolution of the two arm laws.
pub fn difference_by_enumeration(params: &ChannelParams, bit: Bit, d: i64) -> f64 {
    let (m0, m1) = arm_means(params, bit);
    let len = enumeration_len(params.mean_photon_number());
    let t0 = poisson_table(m0, len);
    let t1 = poisson_table(m1, len);
    (0..len as i64)
        .filter(|&n0| n0 + d >= 0 && ((n0 + d) as usize) < len)
        .map(|n0| t0[n0 as usize] * t1[(n0 + d) as usize])
        .sum()
}

/// QBER by enumerating every outcome `(n0, n1)` with bit 0 sent.
pub fn qber_by_enumeration(params: &ChannelParams) -> f64 {
    let (m0, m1) = arm_means(params, Bit::Zero);
    let len = enumeration_len(params.mean_photon_number());
    let t0 = poisson_table(m0, len);
    let t1 = poisson_table(m1, len);
    let mut err = 0.0;
    for (n0, p0) in t0.iter().enumerate() {
        for (n1, p1) in t1.iter().enumerate() {
            if n1 > n0 {
                err += p0 * p1;
            } else if n1 == n0 {
                err += 0.5 * p0 * p1;
            }
        }
    }
    err
}

/// `H(Φ | D)` in bits straight from its definition, with the difference law
/// obtained by enumeration and posteriors by Bayes' rule.
pub fn conditional_entropy_by_definition(params: &ChannelParams, z0: f64) -> f64 {
    let d_max = truncation_window(params.mean_photon_number());
    let mut h = 0.0;
    for d in -d_max..=d_max {
        let a = z0 * difference_by_enumeration(params, Bit::Zero, d);
        let b = (1.0 - z0) * difference_by_enumeration(params, Bit::One, d);
        let total = a + b;
        for w in [a, b] {
            if w > 0.0 {
                h -= w * (w / total).log2();
            }
        }
    }
    h
}

pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Four standard errors of a binomial proportion.
pub fn four_sigma(p: f64, trials: u64) -> f64 {
    4.0 * (p * (1.0 - p) / trials as f64).sqrt()
}
