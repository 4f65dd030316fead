//! Checks that the three channel models really share the same raw error
//! rate once matched to a target QBER.
//!
//!     cargo run --release --example uncoded_matching

use photoncount::montecarlo::{uncoded_check, ChannelModelKind, OperatingPoint};

fn main() -> photoncount::Result<()> {
    let trials = 200_000;
    for target in [0.02, 0.05, 0.1, 0.2] {
        let point = OperatingPoint::Qber { target, delta: 0.3 };
        let sigma = (target * (1.0 - target) / trials as f64).sqrt();
        print!("target {target:<5}");
        for model in ChannelModelKind::ALL {
            let rate = uncoded_check(model, point, trials, 7)?;
            print!("  {model}: {rate:.5} ({:+.1} sd)", (rate - target) / sigma);
        }
        println!();
    }
    Ok(())
}
