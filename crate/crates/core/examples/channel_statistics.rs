//! Arm means, the photon-number difference law and the raw error rate for a
//! few receiver settings, plus the N_c that achieves a given QBER.
//!
//!     cargo run --example channel_statistics

use photoncount::channel::{arm_means, difference_pmf, nc_for_qber, q_param, qber};
use photoncount::{Bit, ChannelParams};

fn main() -> photoncount::Result<()> {
    for (nc, delta) in [(2.0, 0.0), (7.0, 0.0), (7.0, 0.5)] {
        let p = ChannelParams::new(nc, delta)?;
        let (n0, n1) = arm_means(&p, Bit::Zero);
        let pmf = difference_pmf(&p, Bit::Zero);
        println!("N_c = {nc}, delta = {delta}");
        println!("  bit 0 arm means: N0 = {n0:.4}, N1 = {n1:.4}  (q = {:.4})", q_param(delta));
        println!("  QBER = {:.6}, window +-{}, mass {:.12}", qber(&p), pmf.d_max(), pmf.total_mass());
        let peak: Vec<String> = (-3..=3).map(|d| format!("{d}:{:.4}", pmf.get(d))).collect();
        println!("  P(D = d) near 0: {}", peak.join(" "));
    }

    println!();
    for target in [0.15, 0.1, 0.05, 0.01] {
        println!("QBER {target:<5} needs N_c = {:.4} at delta = 0", nc_for_qber(target, 0.0)?);
    }
    Ok(())
}
