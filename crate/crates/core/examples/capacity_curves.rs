//! Capacity of the photon-counting channel against the hard-decision BSC,
//! swept over N_c for a few phase-diffusion widths.
//!
//!     cargo run --example capacity_curves

use photoncount::capacity::capacity_sweep;
use photoncount::ChannelParams;

fn main() -> photoncount::Result<()> {
    let deltas = [0.0, 0.5, 1.0];
    let grid: Vec<ChannelParams> = deltas
        .iter()
        .flat_map(|&d| (1..=12).map(move |nc| ChannelParams::new(nc as f64, d)))
        .collect::<photoncount::Result<_>>()?;
    let points = capacity_sweep(&grid)?;

    for (delta, rows) in deltas.iter().zip(points.chunks(12)) {
        println!("delta = {delta}");
        println!("  {:>4} {:>8} {:>8} {:>8} {:>8}", "N_c", "qber", "bimo", "bsc", "gain");
        for pt in rows {
            println!(
                "  {:>4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
                pt.params.mean_photon_number(),
                pt.qber,
                pt.bimo_capacity,
                pt.bsc_capacity,
                pt.bimo_capacity - pt.bsc_capacity
            );
        }
    }
    Ok(())
}
