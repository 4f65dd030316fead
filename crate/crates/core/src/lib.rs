//! Simulation toolkit for polarization-encoded binary links read out by a
//! photon-counting receiver.
//!
//! - [`channel`]: exact outcome statistics (Poisson arms, Skellam difference,
//!   QBER) and outcome sampling.
//! - [`metrics`]: soft and hard demappers (photon-count, BSC and AWGN LLRs).
//! - [`capacity`]: mutual information and capacity versus the hard-decision
//!   binary symmetric channel.
//! - [`ldpc`]: systematic LDPC construction, encoding, sum-product decoding.
//! - [`montecarlo`]: coded BER/FER simulation over the three channel models.
//! - [`cli`]: batch front-end emitting CSV.

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod error;
pub mod ldpc;
pub mod metrics;
pub mod montecarlo;
pub mod rng;
pub mod special;

pub use channel::{Bit, ChannelParams, PhotonOutcome};
pub use error::{Error, Result};
pub use metrics::Llr;
