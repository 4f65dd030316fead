//! Builds the rate-0.61 code, encodes a random message, corrupts it with
//! photon-counting noise, decodes it, and writes the matrix as alist.
//!
//!     cargo run --example ldpc_roundtrip [out.alist]

use photoncount::channel::{nc_for_qber, sample_outcome};
use photoncount::ldpc::{construct_code, decode, to_alist, CodeSpec, DEFAULT_MAX_ITERS};
use photoncount::metrics::bimo_llr;
use photoncount::rng::stream_from_seed;
use photoncount::{Bit, ChannelParams, Llr};
use rand::Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CodeSpec::RATE_061;
    let code = construct_code(spec, 1)?;
    println!(
        "code: n = {}, k = {}, rate {:.4}, {} edges",
        spec.block_len(),
        spec.info_len,
        spec.rate(),
        code.parity_check().n_edges()
    );

    let mut rng = stream_from_seed(2024);
    let info: Vec<u8> = (0..spec.info_len).map(|_| rng.random::<bool>() as u8).collect();
    let codeword = code.encode(&info)?;
    assert!(code.syndrome(codeword.bits())?.iter().all(|&s| s == 0));

    let params = ChannelParams::new(nc_for_qber(0.06, 0.0)?, 0.0)?;
    let llrs: Vec<Llr> = codeword
        .bits()
        .iter()
        .map(|&b| bimo_llr(&params, sample_outcome(&params, Bit::from_u8(b), &mut rng)))
        .collect::<photoncount::Result<_>>()?;
    let raw_errors = llrs
        .iter()
        .zip(codeword.bits())
        .filter(|(l, &b)| l.hard_bit().as_u8() != b)
        .count();

    let out = decode(&code, &llrs, DEFAULT_MAX_ITERS)?;
    let residual = out.decided_bits[..spec.info_len]
        .iter()
        .zip(&info)
        .filter(|(a, b)| a != b)
        .count();
    println!("channel flipped {raw_errors} of {} hard decisions", spec.block_len());
    println!(
        "decoder: converged = {}, iterations = {}, residual info errors = {residual}",
        out.converged, out.iterations_used
    );

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, to_alist(code.parity_check()))?;
        println!("parity-check matrix written to {path}");
    }
    Ok(())
}
