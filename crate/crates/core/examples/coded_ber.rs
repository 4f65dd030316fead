//! Short coded BER sweep comparing the three receiver models at equal raw
//! error rate. Increase the frame budget for smoother curves.
//!
//!     cargo run --release --example coded_ber

use photoncount::ldpc::CodeSpec;
use photoncount::montecarlo::{records_to_csv, ChannelModelKind, OperatingPoint, SimConfig, Simulation};

fn main() -> photoncount::Result<()> {
    let points: Vec<OperatingPoint> = [0.06, 0.08, 0.10, 0.12]
        .iter()
        .map(|&target| OperatingPoint::Qber { target, delta: 0.0 })
        .collect();
    let mut records = Vec::new();
    for model in ChannelModelKind::ALL {
        let mut cfg = SimConfig::new(CodeSpec::RATE_HALF, model, points.clone());
        cfg.max_frames = 2000;
        cfg.min_frame_errors = 50;
        let sim = Simulation::new(cfg)?;
        for rec in sim.run_sweep() {
            records.push(rec?);
        }
    }
    print!("{}", records_to_csv(&records));
    Ok(())
}
