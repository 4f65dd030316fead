//! Mutual information and capacity of the photon-counting channel.
//!
//! The conditional entropy is evaluated in the closed form built from
//! `α_Δ = (√2 + e^{-Δ²}) / (√2 - e^{-Δ²})` and
//! `B_m = I_|m|(N_c √(1 - e^{-2Δ²}/2))`, for which
//! `p_D(m | φ0) = e^{-N_c} α_Δ^{-m/2} B_m` and
//! `p_D(m | φ1) = e^{-N_c} α_Δ^{m/2} B_m`.

use std::f64::consts::{LN_2, SQRT_2};

use rayon::prelude::*;

use crate::channel::{qber, truncation_window, ChannelParams};
use crate::error::{Error, Result};
use crate::special::{binary_entropy, ln_bessel_i, softplus, xlog2x};

/// A-priori probability of sending bit 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputPrior(f64);

impl InputPrior {
    pub fn new(z0: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&z0) {
            Ok(Self(z0))
        } else {
            Err(Error::InvalidParameter(format!(
                "prior z0 must lie in [0, 1], got {z0}"
            )))
        }
    }

    pub fn uniform() -> Self {
        Self(0.5)
    }

    pub fn z0(&self) -> f64 {
        self.0
    }

    pub fn z1(&self) -> f64 {
        1.0 - self.0
    }

    /// `H(Φ)` in bits.
    pub fn entropy(&self) -> f64 {
        binary_entropy(self.0)
    }
}

/// One row of a capacity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityPoint {
    pub params: ChannelParams,
    pub bimo_capacity: f64,
    pub bsc_capacity: f64,
    pub qber: f64,
}

/// `α_Δ`, the likelihood ratio step per unit of `D`.
pub fn alpha_delta(phase_diffusion: f64) -> f64 {
    let c = (-phase_diffusion * phase_diffusion).exp();
    (SQRT_2 + c) / (SQRT_2 - c)
}

/// Bessel argument `N_c √(1 - e^{-2Δ²}/2)` shared by both inputs.
pub fn bessel_argument(params: &ChannelParams) -> f64 {
    let delta = params.phase_diffusion();
    params.mean_photon_number() * (1.0 - 0.5 * (-2.0 * delta * delta).exp()).sqrt()
}

/// `ln B_m(N_c, Δ)`.
pub fn ln_bessel_weight(params: &ChannelParams, m: i64) -> f64 {
    ln_bessel_i(m.unsigned_abs() as u32, bessel_argument(params))
}

/// `ln((1 - z0)/z0) + m ln α_Δ`: the log-odds of bit 1 after observing `D = m`.
fn posterior_log_odds(prior: InputPrior, ln_alpha: f64, m: i64) -> f64 {
    let (z0, z1) = (prior.z0(), prior.z1());
    let prior_odds = if z0 == 0.0 {
        f64::INFINITY
    } else if z1 == 0.0 {
        f64::NEG_INFINITY
    } else {
        z1.ln() - z0.ln()
    };
    prior_odds + m as f64 * ln_alpha
}

/// Posterior `(p(φ0 | D=m), p(φ1 | D=m))`.
pub fn posterior(prior: InputPrior, phase_diffusion: f64, m: i64) -> (f64, f64) {
    if m == 0 {
        return (prior.z0(), prior.z1());
    }
    let t = posterior_log_odds(prior, alpha_delta(phase_diffusion).ln(), m);
    (logistic(-t), logistic(t))
}

fn logistic(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `H(Φ | D)` in bits.
pub fn conditional_entropy(params: &ChannelParams, prior: InputPrior) -> f64 {
    let nc = params.mean_photon_number();
    if nc == 0.0 {
        return prior.entropy();
    }
    let ln_alpha = alpha_delta(params.phase_diffusion()).ln();
    let d_max = truncation_window(nc);
    let (z0, z1) = (prior.z0(), prior.z1());

    let mut entropy = 0.0;
    for m in -d_max..=d_max {
        let ln_b = -nc + ln_bessel_weight(params, m);
        let half = 0.5 * m as f64 * ln_alpha;
        let t = posterior_log_odds(prior, ln_alpha, m);
        // -log2 p0 = softplus(t)/ln2, -log2 p1 = softplus(-t)/ln2
        if z0 > 0.0 && t.is_finite() {
            entropy += z0 * (ln_b - half).exp() * softplus(t) / LN_2;
        }
        if z1 > 0.0 && t.is_finite() {
            entropy += z1 * (ln_b + half).exp() * softplus(-t) / LN_2;
        }
    }
    entropy
}

/// `I(Φ; D) = H(Φ) - H(Φ | D)` in bits.
pub fn mutual_information(params: &ChannelParams, prior: InputPrior) -> f64 {
    (prior.entropy() - conditional_entropy(params, prior)).clamp(0.0, 1.0)
}

/// Capacity of the photon-counting channel; the uniform prior is optimal.
pub fn bimo_capacity(params: &ChannelParams) -> f64 {
    mutual_information(params, InputPrior::uniform())
}

/// `1 - h2(qber)`.
pub fn bsc_capacity(qber: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&qber) {
        return Err(Error::InvalidParameter(format!(
            "BSC crossover must lie in [0, 1/2], got {qber}"
        )));
    }
    Ok(1.0 - xlog2x(qber) - xlog2x(1.0 - qber))
}

fn capacity_point(params: &ChannelParams) -> Result<CapacityPoint> {
    let qber = qber(params);
    Ok(CapacityPoint {
        params: *params,
        bimo_capacity: bimo_capacity(params),
        bsc_capacity: bsc_capacity(qber.clamp(0.0, 0.5))?,
        qber,
    })
}

/// Evaluates every grid point (in parallel), keeping grid order.
pub fn capacity_sweep(grid: &[ChannelParams]) -> Result<Vec<CapacityPoint>> {
    grid.par_iter()
        .enumerate()
        .map(|(index, params)| {
            capacity_point(params).map_err(|e| Error::AtGridPoint {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}
