//! Photon-counting channel statistics.
//!
//! A bit `k` is sent as a polarization phase shift `φ_k` (`π/4` for 0,
//! `3π/4` for 1) on a coherent carrier of mean photon number `N_c`. The
//! receiver splits the beam into two arms and counts photons, producing the
//! outcome `(n0, n1)`. The counts are independent Poisson variables whose
//! means depend on the bit and on the phase-diffusion width `Δ`:
//!
//! ```text
//! N0(φ) = N_c (1 + e^{-Δ²} cos φ) / 2
//! N1(φ) = N_c (1 - e^{-Δ²} cos φ) / 2
//! ```
//!
//! The difference `D = n1 - n0` is a sufficient statistic and follows a
//! Skellam law.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::special::{ln_bessel_i, ln_factorial};

/// Search ceiling for [`nc_for_qber`].
pub const NC_SEARCH_CEILING: f64 = 1e3;

/// Tolerance on the QBER reached by [`nc_for_qber`].
pub const QBER_MATCH_TOLERANCE: f64 = 1e-9;

/// Mean photon number and phase-diffusion width of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    mean_photon_number: f64,
    phase_diffusion: f64,
}

impl ChannelParams {
    pub fn new(mean_photon_number: f64, phase_diffusion: f64) -> Result<Self> {
        if !(mean_photon_number.is_finite() && mean_photon_number >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mean photon number must be finite and >= 0, got {mean_photon_number}"
            )));
        }
        if !(phase_diffusion.is_finite() && phase_diffusion >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "phase diffusion must be finite and >= 0, got {phase_diffusion}"
            )));
        }
        Ok(Self {
            mean_photon_number,
            phase_diffusion,
        })
    }

    /// `N_c`.
    pub fn mean_photon_number(&self) -> f64 {
        self.mean_photon_number
    }

    /// `Δ`, in radians.
    pub fn phase_diffusion(&self) -> f64 {
        self.phase_diffusion
    }
}

/// A binary channel input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn from_u8(v: u8) -> Self {
        if v & 1 == 0 {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    /// Polarization phase shift encoding this bit.
    pub fn phase(self) -> f64 {
        match self {
            Bit::Zero => std::f64::consts::FRAC_PI_4,
            Bit::One => 3.0 * std::f64::consts::FRAC_PI_4,
        }
    }

    /// `cos φ_k`, exact in sign so that the two encodings stay mirror images.
    fn cos_phase(self) -> f64 {
        match self {
            Bit::Zero => FRAC_1_SQRT_2,
            Bit::One => -FRAC_1_SQRT_2,
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

/// Photon counts in the reflected (`n0`) and transmitted (`n1`) arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhotonOutcome {
    pub n0: u32,
    pub n1: u32,
}

impl PhotonOutcome {
    pub fn new(n0: u32, n1: u32) -> Self {
        Self { n0, n1 }
    }

    pub fn total(&self) -> u64 {
        self.n0 as u64 + self.n1 as u64
    }

    /// `D = n1 - n0`.
    pub fn difference(&self) -> i64 {
        self.n1 as i64 - self.n0 as i64
    }
}

/// Probability mass of `D = n1 - n0` on the window `[-d_max, d_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferencePmf {
    d_max: i64,
    mass: Vec<f64>,
}

impl DifferencePmf {
    pub fn d_min(&self) -> i64 {
        -self.d_max
    }

    pub fn d_max(&self) -> i64 {
        self.d_max
    }

    /// Mass at `d`, zero outside the window.
    pub fn get(&self, d: i64) -> f64 {
        if d.abs() > self.d_max {
            0.0
        } else {
            self.mass[(d + self.d_max) as usize]
        }
    }

    /// `(d, p_D(d))` pairs in increasing `d`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .map(move |(i, &p)| (i as i64 - self.d_max, p))
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }
}

/// Truncation half-width used by every infinite sum over `D`.
pub fn truncation_window(mean_photon_number: f64) -> i64 {
    (mean_photon_number + 10.0 * (mean_photon_number + 1.0).sqrt() + 20.0).ceil() as i64
}

/// Signal contrast `e^{-Δ²}/√2` left after phase diffusion.
fn contrast(phase_diffusion: f64) -> f64 {
    (-phase_diffusion * phase_diffusion).exp() * FRAC_1_SQRT_2
}

/// Mean photon numbers `(N0, N1)` in the two arms when `bit` is sent.
pub fn arm_means(params: &ChannelParams, bit: Bit) -> (f64, f64) {
    let nc = params.mean_photon_number;
    let shift = contrast(params.phase_diffusion) * bit.cos_phase().signum();
    (0.5 * nc * (1.0 + shift), 0.5 * nc * (1.0 - shift))
}

/// Fraction of `N_c` landing in the minority arm: `q = (1 - e^{-Δ²} cos(π/4)) / 2`.
pub fn q_param(phase_diffusion: f64) -> f64 {
    0.5 * (1.0 - contrast(phase_diffusion))
}

/// `ln p(n0, n1 | bit)`.
pub fn ln_joint_pmf(params: &ChannelParams, bit: Bit, outcome: PhotonOutcome) -> f64 {
    let (m0, m1) = arm_means(params, bit);
    -params.mean_photon_number
        + ln_poisson_kernel(m0, outcome.n0)
        + ln_poisson_kernel(m1, outcome.n1)
}

/// `n ln λ - ln n!`, with `0 ln 0 = 0`.
fn ln_poisson_kernel(mean: f64, n: u32) -> f64 {
    if n == 0 {
        0.0
    } else if mean == 0.0 {
        f64::NEG_INFINITY
    } else {
        n as f64 * mean.ln() - ln_factorial(n as u64)
    }
}

/// Joint probability of the outcome `(n0, n1)` given the sent bit.
pub fn joint_pmf(params: &ChannelParams, bit: Bit, outcome: PhotonOutcome) -> f64 {
    ln_joint_pmf(params, bit, outcome).exp()
}

/// `ln p_D(d | bit)`, the Skellam law of `D = n1 - n0`.
pub fn ln_skellam_pmf(params: &ChannelParams, bit: Bit, d: i64) -> f64 {
    let nc = params.mean_photon_number;
    if nc == 0.0 {
        return if d == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let (m0, m1) = arm_means(params, bit);
    let order = d.unsigned_abs() as u32;
    -nc + 0.5 * d as f64 * (m1.ln() - m0.ln()) + ln_bessel_i(order, 2.0 * (m0 * m1).sqrt())
}

pub fn skellam_pmf(params: &ChannelParams, bit: Bit, d: i64) -> f64 {
    ln_skellam_pmf(params, bit, d).exp()
}

/// Skellam mass on the truncation window.
pub fn difference_pmf(params: &ChannelParams, bit: Bit) -> DifferencePmf {
    let d_max = truncation_window(params.mean_photon_number);
    let mass = (-d_max..=d_max)
        .map(|d| skellam_pmf(params, bit, d))
        .collect();
    DifferencePmf { d_max, mass }
}

/// Raw bit error rate of the hard-decision receiver (fair coin on `D = 0`).
pub fn qber(params: &ChannelParams) -> f64 {
    let d_max = truncation_window(params.mean_photon_number);
    let wrong_side: f64 = (1..=d_max)
        .map(|m| skellam_pmf(params, Bit::Zero, m))
        .sum();
    wrong_side + 0.5 * skellam_pmf(params, Bit::Zero, 0)
}

/// `N_c` at which the channel with diffusion `Δ` has the requested QBER.
///
/// Bisection on `[0, NC_SEARCH_CEILING]`; the QBER is strictly decreasing in
/// `N_c`.
pub fn nc_for_qber(target_qber: f64, phase_diffusion: f64) -> Result<f64> {
    let at = |nc: f64| ChannelParams::new(nc, phase_diffusion).map(|p| qber(&p));
    let floor = at(NC_SEARCH_CEILING)?;
    if !(target_qber.is_finite() && target_qber > floor && target_qber < 0.5) {
        return Err(Error::TargetUnreachable {
            target: target_qber,
            floor,
        });
    }
    let (mut lo, mut hi) = (0.0f64, NC_SEARCH_CEILING);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-13 * hi {
            break;
        }
        if at(mid)? > target_qber {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let nc = 0.5 * (lo + hi);
    let reached = at(nc)?;
    if (reached - target_qber).abs() > QBER_MATCH_TOLERANCE {
        return Err(Error::TargetUnreachable {
            target: target_qber,
            floor,
        });
    }
    Ok(nc)
}

/// Poisson variate: sequential-search inversion for small means, the
/// `rand_distr` sampler otherwise.
pub fn sample_poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u32 {
    if mean <= 0.0 {
        return 0;
    }
    if mean < 30.0 {
        let u: f64 = rng.random();
        let mut p = (-mean).exp();
        let mut cdf = p;
        let mut k = 0u32;
        while u > cdf {
            k += 1;
            p *= mean / k as f64;
            let next = cdf + p;
            if next == cdf {
                // cdf saturated below u through rounding
                break;
            }
            cdf = next;
        }
        k
    } else {
        let dist = Poisson::new(mean).expect("positive finite mean");
        dist.sample(rng) as u32
    }
}

/// Draws one photon-count outcome for `bit`.
pub fn sample_outcome<R: Rng + ?Sized>(params: &ChannelParams, bit: Bit, rng: &mut R) -> PhotonOutcome {
    let (m0, m1) = arm_means(params, bit);
    let n0 = sample_poisson(m0, rng);
    let n1 = sample_poisson(m1, rng);
    PhotonOutcome { n0, n1 }
}
