//! Soft and hard demappers.
//!
//! Every LLR in this crate is a natural-log ratio `ln P(obs | 1) / P(obs | 0)`:
//! positive values favor bit 1. Use [`Llr::log2`] for the base-2 value.

use std::f64::consts::LN_2;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::{q_param, Bit, ChannelParams, PhotonOutcome};
use crate::error::{Error, Result};
use crate::special::{gaussian_tail, inverse_gaussian_tail};

/// Natural-log likelihood ratio, positive favoring bit 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Llr(pub f64);

impl Llr {
    pub fn nat(self) -> f64 {
        self.0
    }

    pub fn log2(self) -> f64 {
        self.0 / LN_2
    }

    /// Hard decision on the sign; zero maps to 0.
    pub fn hard_bit(self) -> Bit {
        Bit::from(self.0 > 0.0)
    }
}

/// Antipodal AWGN channel matched to a target uncoded error rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AwgnOperatingPoint {
    symbol_energy_to_noise: f64,
    noise_std: f64,
}

impl AwgnOperatingPoint {
    /// Builds the point from `E_s/N_0` for unit-energy symbols.
    pub fn from_es_n0(symbol_energy_to_noise: f64) -> Result<Self> {
        if !(symbol_energy_to_noise.is_finite() && symbol_energy_to_noise > 0.0) {
            return Err(Error::DegenerateChannel(format!(
                "E_s/N_0 must be positive and finite, got {symbol_energy_to_noise}"
            )));
        }
        Ok(Self {
            symbol_energy_to_noise,
            noise_std: 1.0 / (2.0 * symbol_energy_to_noise).sqrt(),
        })
    }

    pub fn symbol_energy_to_noise(&self) -> f64 {
        self.symbol_energy_to_noise
    }

    /// Per-dimension noise standard deviation.
    pub fn noise_std(&self) -> f64 {
        self.noise_std
    }

    /// Uncoded antipodal error probability `Q(√(2 E_s/N_0))`.
    pub fn uncoded_error_rate(&self) -> f64 {
        gaussian_tail((2.0 * self.symbol_energy_to_noise).sqrt())
    }
}

/// Exact LLR of a photon-count outcome: `(n0 - n1) ln(q / (1 - q))`.
pub fn bimo_llr(params: &ChannelParams, outcome: PhotonOutcome) -> Result<Llr> {
    let q = q_param(params.phase_diffusion());
    if q >= 0.5 {
        return Err(Error::DegenerateChannel(
            "phase diffusion wipes out the signal contrast (q = 1/2)".into(),
        ));
    }
    let slope = (q / (1.0 - q)).ln();
    // + 0.0 turns the tie value -0 into 0
    Ok(Llr((outcome.n0 as f64 - outcome.n1 as f64) * slope + 0.0))
}

/// LLR of a hard decision made on a BSC with crossover `qber`.
pub fn bsc_llr(qber: f64, hard_bit: Bit) -> Result<Llr> {
    check_open_half(qber)?;
    let magnitude = ((1.0 - qber) / qber).ln();
    Ok(Llr(match hard_bit {
        Bit::One => magnitude,
        Bit::Zero => -magnitude,
    }))
}

/// Majority-arm decision; a tie is settled by a fair coin from `rng`.
pub fn hard_decision<R: Rng + ?Sized>(outcome: PhotonOutcome, rng: &mut R) -> Bit {
    match outcome.n1.cmp(&outcome.n0) {
        std::cmp::Ordering::Greater => Bit::One,
        std::cmp::Ordering::Less => Bit::Zero,
        std::cmp::Ordering::Equal => Bit::from(rng.random::<bool>()),
    }
}

/// AWGN operating point whose uncoded antipodal error rate is `target_qber`.
pub fn snr_from_qber(target_qber: f64) -> Result<AwgnOperatingPoint> {
    check_open_half(target_qber)?;
    let threshold = inverse_gaussian_tail(target_qber);
    AwgnOperatingPoint::from_es_n0(0.5 * threshold * threshold)
}

/// Sends `bit` as `±1` through the AWGN channel and returns `2y/σ²`.
pub fn awgn_sample_llr<R: Rng + ?Sized>(op: &AwgnOperatingPoint, bit: Bit, rng: &mut R) -> Llr {
    let noise: f64 = StandardNormal.sample(rng);
    let y = antipodal(bit) + op.noise_std * noise;
    awgn_llr(op, y)
}

/// Antipodal demapper for an observation `y`.
pub fn awgn_llr(op: &AwgnOperatingPoint, y: f64) -> Llr {
    Llr(2.0 * y / (op.noise_std * op.noise_std))
}

fn antipodal(bit: Bit) -> f64 {
    match bit {
        Bit::One => 1.0,
        Bit::Zero => -1.0,
    }
}

fn check_open_half(p: f64) -> Result<()> {
    if p > 0.0 && p < 0.5 {
        Ok(())
    } else {
        Err(Error::DegenerateChannel(format!(
            "error probability must lie in (0, 1/2), got {p}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{joint_pmf, ln_joint_pmf, qber, sample_outcome};
    use crate::rng::stream_from_seed;

    fn params(nc: f64, delta: f64) -> ChannelParams {
        ChannelParams::new(nc, delta).unwrap()
    }

    #[test]
    fn balanced_outcome_is_uninformative() {
        let p = params(3.0, 0.2);
        for n in 0..10 {
            assert_eq!(bimo_llr(&p, PhotonOutcome::new(n, n)).unwrap().nat(), 0.0);
        }
    }

    #[test]
    fn bimo_llr_oracle() {
        let llr = bimo_llr(&params(1.0, 0.0), PhotonOutcome::new(2, 0)).unwrap();
        assert!((llr.nat() - -3.525_494_348_078_172).abs() < 1e-14);
        assert!(llr.nat() < 0.0);
        assert!(bimo_llr(&params(1.0, 0.0), PhotonOutcome::new(0, 1)).unwrap().nat() > 0.0);
    }

    #[test]
    fn bimo_llr_matches_log_ratio() {
        for nc in [1.0, 3.0, 7.0, 12.0] {
            for delta in [0.0, 0.25, 0.5] {
                let p = params(nc, delta);
                for n in 0..=30u32 {
                    for n0 in 0..=n {
                        let o = PhotonOutcome::new(n0, n - n0);
                        let direct = ln_joint_pmf(&p, Bit::One, o) - ln_joint_pmf(&p, Bit::Zero, o);
                        let got = bimo_llr(&p, o).unwrap().nat();
                        assert!((got - direct).abs() <= 1e-12, "nc={nc} delta={delta} {o:?}");
                    }
                }
                // sanity: the linear-space ratio agrees where it does not underflow
                let o = PhotonOutcome::new(1, 2);
                let ratio = (joint_pmf(&p, Bit::One, o) / joint_pmf(&p, Bit::Zero, o)).ln();
                assert!((bimo_llr(&p, o).unwrap().nat() - ratio).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bimo_llr_degenerate() {
        let p = params(3.0, 40.0);
        assert!(matches!(
            bimo_llr(&p, PhotonOutcome::new(1, 0)),
            Err(Error::DegenerateChannel(_))
        ));
    }

    #[test]
    fn bsc_llr_values() {
        let nine = 9f64.ln();
        assert!((bsc_llr(0.1, Bit::One).unwrap().nat() - nine).abs() < 1e-15);
        assert!((bsc_llr(0.1, Bit::Zero).unwrap().nat() + nine).abs() < 1e-15);
        assert!(bsc_llr(0.5 - 1e-12, Bit::One).unwrap().nat().abs() < 1e-11);
        assert!(bsc_llr(0.5, Bit::One).is_err());
        assert!(bsc_llr(0.0, Bit::One).is_err());
        assert!((bsc_llr(0.1, Bit::One).unwrap().log2() - 9f64.log2()).abs() < 1e-15);
    }

    #[test]
    fn hard_decision_majority_and_coin() {
        let mut rng = stream_from_seed(1);
        assert_eq!(hard_decision(PhotonOutcome::new(3, 1), &mut rng), Bit::Zero);
        assert_eq!(hard_decision(PhotonOutcome::new(1, 3), &mut rng), Bit::One);
        let trials = 1_000_000;
        let ones = (0..trials)
            .filter(|_| hard_decision(PhotonOutcome::new(2, 2), &mut rng) == Bit::One)
            .count();
        let frac = ones as f64 / trials as f64;
        assert!((frac - 0.5).abs() < 4.0 * (0.25 / trials as f64).sqrt());
    }

    #[test]
    fn hard_decision_realizes_qber() {
        let p = params(4.0, 0.3);
        let expected = qber(&p);
        let mut rng = stream_from_seed(11);
        let trials = 1_000_000;
        let errors = (0..trials)
            .filter(|_| {
                let o = sample_outcome(&p, Bit::Zero, &mut rng);
                hard_decision(o, &mut rng) != Bit::Zero
            })
            .count();
        let rate = errors as f64 / trials as f64;
        let se = (expected * (1.0 - expected) / trials as f64).sqrt();
        assert!((rate - expected).abs() < 4.0 * se, "rate={rate} qber={expected}");
    }

    /// Gaussian tail by composite Simpson on `[x, x + 40]`.
    fn tail_by_quadrature(x: f64) -> f64 {
        let n = 200_000;
        let h = 40.0 / n as f64;
        let f = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut acc = f(x) + f(x + 40.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(x + i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn snr_from_qber_oracle() {
        let op = snr_from_qber(0.1).unwrap();
        let threshold = (2.0 * op.symbol_energy_to_noise()).sqrt();
        // mpmath: Qinv(0.1) = 1.2815515655446004670
        assert!((threshold - 1.281_551_565_544_600_5).abs() < 1e-10);
        assert!((tail_by_quadrature(threshold) - 0.1).abs() < 1e-10);
        assert!((op.symbol_energy_to_noise() - 0.821_187_207_574_908_2).abs() < 1e-10);
        assert!((op.noise_std() - 1.0 / threshold).abs() < 1e-12);
    }

    #[test]
    fn snr_round_trip() {
        for target in [0.01, 0.05, 0.1, 0.2] {
            let op = snr_from_qber(target).unwrap();
            assert!((op.uncoded_error_rate() - target).abs() < 1e-9);
            assert!((tail_by_quadrature(1.0 / op.noise_std()) - target).abs() < 1e-9);
        }
        assert!(snr_from_qber(0.5 - 1e-9).unwrap().symbol_energy_to_noise() < 1e-15);
        assert!(snr_from_qber(0.5).is_err());
        assert!(snr_from_qber(0.0).is_err());
    }

    #[test]
    fn awgn_llr_shape() {
        let op = snr_from_qber(0.1).unwrap();
        assert_eq!(awgn_llr(&op, 0.0).nat(), 0.0);
        let quiet = AwgnOperatingPoint::from_es_n0(1e6).unwrap();
        let loud = AwgnOperatingPoint::from_es_n0(1.0).unwrap();
        let mut rng = stream_from_seed(0);
        let strong = awgn_sample_llr(&quiet, Bit::One, &mut rng).nat();
        assert!(strong > 0.0);
        assert!((strong - 2.0 / quiet.noise_std().powi(2)).abs() < 0.01 * strong);
        assert!(2.0 / quiet.noise_std().powi(2) > 2.0 / loud.noise_std().powi(2));
    }

    #[test]
    fn awgn_sign_error_rate_matches_target() {
        let op = snr_from_qber(0.1).unwrap();
        let mut rng = stream_from_seed(77);
        let trials = 1_000_000;
        let errors = (0..trials)
            .filter(|_| awgn_sample_llr(&op, Bit::One, &mut rng).hard_bit() != Bit::One)
            .count();
        let rate = errors as f64 / trials as f64;
        let se = (0.1 * 0.9 / trials as f64).sqrt();
        assert!((rate - 0.1).abs() < 4.0 * se, "rate={rate}");
    }
}
