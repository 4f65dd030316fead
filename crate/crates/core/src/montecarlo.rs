//! Coded BER/FER simulation over the photon-counting, BSC and AWGN models.
//!
//! Each frame draws its own stream from `(master_seed, point index, frame
//! index)`. Frames run in parallel in fixed-size batches and are tallied in
//! frame order, so the stopping point and every counter are independent of
//! the worker count.

use std::fmt;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{nc_for_qber, qber, sample_outcome, Bit, ChannelParams};
use crate::error::{Error, Result};
use crate::ldpc::{construct_code, decode, CodeSpec, LdpcCode, DEFAULT_MAX_ITERS};
use crate::metrics::{awgn_sample_llr, bimo_llr, bsc_llr, hard_decision, snr_from_qber, AwgnOperatingPoint, Llr};
use crate::rng::{frame_seed, point_seed, stream_from_seed, RandomStream};

pub const DEFAULT_MIN_FRAME_ERRORS: u64 = 100;
pub const DEFAULT_MAX_FRAMES: u64 = 100_000;

/// Frames simulated per parallel batch.
const BATCH_FRAMES: u64 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelModelKind {
    /// Photon counting with the exact soft metric.
    Bimo,
    /// Hard decisions with BSC metrics.
    Bsc,
    /// Antipodal AWGN reference at the same uncoded error rate.
    Awgn,
}

impl ChannelModelKind {
    pub const ALL: [ChannelModelKind; 3] = [Self::Bimo, Self::Bsc, Self::Awgn];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Bimo => "BIMO",
            Self::Bsc => "BSC",
            Self::Awgn => "AWGN",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.tag().eq_ignore_ascii_case(s.trim()))
    }
}

impl fmt::Display for ChannelModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Where on the sweep axis a simulation runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatingPoint {
    /// Target uncoded error rate; the photon number follows from it.
    Qber { target: f64, delta: f64 },
    /// Explicit mean photon number; the error rate follows from it.
    PhotonNumber { nc: f64, delta: f64 },
}

impl OperatingPoint {
    pub fn delta(&self) -> f64 {
        match *self {
            Self::Qber { delta, .. } | Self::PhotonNumber { delta, .. } => delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub code_spec: CodeSpec,
    pub code_seed: u64,
    pub model: ChannelModelKind,
    pub points: Vec<OperatingPoint>,
    pub max_frames: u64,
    pub min_frame_errors: u64,
    pub max_iters: usize,
    pub master_seed: u64,
}

impl SimConfig {
    pub fn new(code_spec: CodeSpec, model: ChannelModelKind, points: Vec<OperatingPoint>) -> Self {
        Self {
            code_spec,
            code_seed: 1,
            model,
            points,
            max_frames: DEFAULT_MAX_FRAMES,
            min_frame_errors: DEFAULT_MIN_FRAME_ERRORS,
            max_iters: DEFAULT_MAX_ITERS,
            master_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_frame_errors < 1 || self.max_frames < 1 || self.max_iters < 1 {
            return Err(Error::InvalidParameter(
                "min_frame_errors, max_frames and max_iters must all be >= 1".into(),
            ));
        }
        for point in &self.points {
            if let OperatingPoint::Qber { target, .. } = *point {
                if !(target > 0.0 && target < 0.5) {
                    return Err(Error::DegenerateChannel(format!(
                        "target QBER must lie in (0, 1/2), got {target}"
                    )));
                }
            }
            ChannelParams::new(0.0, point.delta())?;
            if let OperatingPoint::PhotonNumber { nc, delta } = *point {
                ChannelParams::new(nc, delta)?;
            }
        }
        Ok(())
    }
}

/// Channel resolved for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedChannel {
    Bimo(ChannelParams),
    Bsc { crossover: f64 },
    Awgn(AwgnOperatingPoint),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedPoint {
    pub qber: f64,
    pub nc: Option<f64>,
    pub delta: f64,
    pub channel: ResolvedChannel,
}

/// Maps an operating point onto concrete channel parameters for `model`.
pub fn resolve_point(model: ChannelModelKind, point: OperatingPoint) -> Result<ResolvedPoint> {
    let (qber_value, nc) = match point {
        OperatingPoint::Qber { target, delta } => {
            let nc = match model {
                ChannelModelKind::Bimo => Some(nc_for_qber(target, delta)?),
                _ => None,
            };
            (target, nc)
        }
        OperatingPoint::PhotonNumber { nc, delta } => (qber(&ChannelParams::new(nc, delta)?), Some(nc)),
    };
    let delta = point.delta();
    let channel = match model {
        ChannelModelKind::Bimo => {
            let params = ChannelParams::new(nc.expect("photon number resolved"), delta)?;
            // reject channels whose soft metric is undefined up front
            bimo_llr(&params, crate::PhotonOutcome::new(0, 0))?;
            ResolvedChannel::Bimo(params)
        }
        ChannelModelKind::Bsc => {
            bsc_llr(qber_value, Bit::One)?;
            ResolvedChannel::Bsc {
                crossover: qber_value,
            }
        }
        ChannelModelKind::Awgn => ResolvedChannel::Awgn(snr_from_qber(qber_value)?),
    };
    Ok(ResolvedPoint {
        qber: qber_value,
        nc,
        delta,
        channel,
    })
}

impl ResolvedChannel {
    /// Sends one bit and returns the receiver's LLR.
    pub fn transmit<R: Rng + ?Sized>(&self, bit: Bit, rng: &mut R) -> Llr {
        match self {
            Self::Bimo(params) => {
                let outcome = sample_outcome(params, bit, rng);
                bimo_llr(params, outcome).expect("validated when the point was resolved")
            }
            Self::Bsc { crossover } => {
                let flipped = rng.random::<f64>() < *crossover;
                let received = if flipped { bit.flip() } else { bit };
                bsc_llr(*crossover, received).expect("validated when the point was resolved")
            }
            Self::Awgn(op) => awgn_sample_llr(op, bit, rng),
        }
    }

    /// Uncoded hard decision for one bit.
    pub fn hard_decide<R: Rng + ?Sized>(&self, bit: Bit, rng: &mut R) -> Bit {
        match self {
            Self::Bimo(params) => hard_decision(sample_outcome(params, bit, rng), rng),
            _ => self.transmit(bit, rng).hard_bit(),
        }
    }
}

/// One row of a BER/FER sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub model: ChannelModelKind,
    pub rate: f64,
    pub qber_target: f64,
    pub nc: Option<f64>,
    pub delta: f64,
    pub frames_run: u64,
    pub frame_errors: u64,
    pub info_bit_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub seed: u64,
}

impl SimRecord {
    pub const CSV_HEADER: &'static str =
        "model,rate,qber_target,nc,delta,frames_run,frame_errors,info_bit_errors,ber,fer,seed";

    pub fn to_csv_row(&self) -> String {
        let nc = self.nc.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.model,
            self.rate,
            self.qber_target,
            nc,
            self.delta,
            self.frames_run,
            self.frame_errors,
            self.info_bit_errors,
            self.ber,
            self.fer,
            self.seed
        )
    }
}

/// Header plus one line per record.
pub fn records_to_csv(records: &[SimRecord]) -> String {
    let mut out = String::new();
    writeln!(out, "{}", SimRecord::CSV_HEADER).unwrap();
    for r in records {
        writeln!(out, "{}", r.to_csv_row()).unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
struct FrameTally {
    bit_errors: u64,
    frame_error: bool,
}

/// A configured simulation: the code is built once and shared by all points.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: SimConfig,
    code: LdpcCode,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let code = construct_code(config.code_spec, config.code_seed)?;
        Ok(Self { config, code })
    }

    /// Uses an existing code; its dimensions override `config.code_spec`.
    pub fn with_code(mut config: SimConfig, code: LdpcCode) -> Result<Self> {
        config.validate()?;
        config.code_spec = code.spec();
        Ok(Self { config, code })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn code(&self) -> &LdpcCode {
        &self.code
    }

    /// Resolves every configured point, failing on the first invalid one.
    pub fn resolve_all(&self) -> Result<Vec<ResolvedPoint>> {
        self.config
            .points
            .iter()
            .enumerate()
            .map(|(index, &p)| {
                resolve_point(self.config.model, p).map_err(|e| Error::AtGridPoint {
                    index,
                    source: Box::new(e),
                })
            })
            .collect()
    }

    fn simulate_frame(&self, channel: &ResolvedChannel, seed: u64) -> FrameTally {
        let spec = self.code.spec();
        let mut rng: RandomStream = stream_from_seed(seed);
        let info: Vec<u8> = (0..spec.info_len).map(|_| rng.random::<bool>() as u8).collect();
        let codeword = self.code.encode(&info).expect("info length matches code");
        let llrs: Vec<Llr> = codeword
            .bits()
            .iter()
            .map(|&b| channel.transmit(Bit::from_u8(b), &mut rng))
            .collect();
        let decoded = decode(&self.code, &llrs, self.config.max_iters).expect("block length matches code");
        let bit_errors = decoded.decided_bits[..spec.info_len]
            .iter()
            .zip(&info)
            .filter(|(a, b)| a != b)
            .count() as u64;
        FrameTally {
            bit_errors,
            frame_error: bit_errors > 0,
        }
    }

    /// Simulates one operating point until `min_frame_errors` frame errors
    /// or `max_frames` frames, whichever comes first.
    pub fn run_point(&self, index: usize, point: OperatingPoint) -> Result<SimRecord> {
        let resolved = resolve_point(self.config.model, point)?;
        Ok(self.run_resolved(index, &resolved))
    }

    pub fn run_resolved(&self, index: usize, resolved: &ResolvedPoint) -> SimRecord {
        let cfg = &self.config;
        let seed = point_seed(cfg.master_seed, index as u64);
        let (mut frames, mut frame_errors, mut bit_errors) = (0u64, 0u64, 0u64);
        'outer: while frames < cfg.max_frames {
            let batch_end = (frames + BATCH_FRAMES).min(cfg.max_frames);
            let tallies: Vec<FrameTally> = (frames..batch_end)
                .into_par_iter()
                .map(|f| self.simulate_frame(&resolved.channel, frame_seed(seed, f)))
                .collect();
            for t in tallies {
                frames += 1;
                bit_errors += t.bit_errors;
                if t.frame_error {
                    frame_errors += 1;
                    if frame_errors >= cfg.min_frame_errors {
                        break 'outer;
                    }
                }
            }
        }
        let info_len = self.code.spec().info_len as u64;
        SimRecord {
            model: cfg.model,
            rate: self.code.spec().rate(),
            qber_target: resolved.qber,
            nc: resolved.nc,
            delta: resolved.delta,
            frames_run: frames,
            frame_errors,
            info_bit_errors: bit_errors,
            ber: bit_errors as f64 / (frames * info_len) as f64,
            fer: frame_errors as f64 / frames as f64,
            seed,
        }
    }

    /// Runs every point in order; a failing point is reported and the sweep
    /// moves on.
    pub fn run_sweep(&self) -> Vec<Result<SimRecord>> {
        self.config
            .points
            .iter()
            .enumerate()
            .map(|(i, &p)| self.run_point(i, p))
            .collect()
    }
}

/// Empirical uncoded error rate of `model` at `point` over `trials` bits.
pub fn uncoded_check(model: ChannelModelKind, point: OperatingPoint, trials: u64, seed: u64) -> Result<f64> {
    let resolved = resolve_point(model, point)?;
    let mut rng = stream_from_seed(seed);
    let mut errors = 0u64;
    for _ in 0..trials {
        let bit = Bit::from(rng.random::<bool>());
        if resolved.channel.hard_decide(bit, &mut rng) != bit {
            errors += 1;
        }
    }
    Ok(errors as f64 / trials.max(1) as f64)
}
