//! Soft metrics handed to the decoder by each receiver model at the same
//! raw error rate.
//!
//!     cargo run --example llr_table

use photoncount::channel::nc_for_qber;
use photoncount::metrics::{bimo_llr, bsc_llr, snr_from_qber};
use photoncount::{Bit, ChannelParams, PhotonOutcome};

fn main() -> photoncount::Result<()> {
    let target = 0.08;
    let params = ChannelParams::new(nc_for_qber(target, 0.0)?, 0.0)?;
    println!("QBER {target}: N_c = {:.4}", params.mean_photon_number());

    println!("\nphoton counting, LLR(n0, n1) in nats (positive favours bit 1)");
    print!("{:>6}", "n0\\n1");
    for n1 in 0..6 {
        print!("{n1:>8}");
    }
    println!();
    for n0 in 0..6 {
        print!("{n0:>6}");
        for n1 in 0..6 {
            print!("{:>8.3}", bimo_llr(&params, PhotonOutcome::new(n0, n1))?.nat());
        }
        println!();
    }

    println!("\nhard decision:  bit 0 -> {:.3}, bit 1 -> {:.3}", bsc_llr(target, Bit::Zero)?.nat(), bsc_llr(target, Bit::One)?.nat());
    let awgn = snr_from_qber(target)?;
    println!(
        "matched AWGN:   Es/N0 = {:.3} ({:.2} dB), sigma = {:.4}",
        awgn.symbol_energy_to_noise(),
        10.0 * awgn.symbol_energy_to_noise().log10(),
        awgn.noise_std()
    );
    Ok(())
}
