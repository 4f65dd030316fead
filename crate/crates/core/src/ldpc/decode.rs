//! Flooding sum-product decoder in the log domain.
//!
//! Input LLRs follow the crate convention (positive favors bit 1). Inside the
//! decoder messages use the textbook sign `ln P(0)/P(1)` so the tanh rule
//! applies unchanged.

use super::LdpcCode;
use crate::error::{Error, Result};
use crate::metrics::Llr;

pub const DEFAULT_MAX_ITERS: usize = 50;

/// Magnitude bound applied to variable-to-check messages before `tanh`.
pub const MESSAGE_CLAMP: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub decided_bits: Vec<u8>,
    pub converged: bool,
    pub iterations_used: usize,
}

/// Hard decisions from textbook-sign posteriors. Returns false if any
/// posterior is exactly zero (no decision possible there; decided as 0).
fn decide(posterior: &[f64], out: &mut [u8]) -> bool {
    let mut all_decided = true;
    for (bit, &l) in out.iter_mut().zip(posterior) {
        *bit = (l < 0.0) as u8;
        all_decided &= l != 0.0;
    }
    all_decided
}

fn syndrome_is_zero(code: &LdpcCode, bits: &[u8]) -> bool {
    code.parity_check()
        .rows()
        .iter()
        .all(|row| row.iter().fold(0u8, |acc, &j| acc ^ bits[j]) == 0)
}

/// Decodes one frame. Stops as soon as the hard decisions satisfy every
/// check; a frame whose posteriors contain an exact zero is never reported
/// as converged.
pub fn decode(code: &LdpcCode, llrs: &[Llr], max_iters: usize) -> Result<DecodeResult> {
    let n = code.block_len();
    if llrs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: llrs.len(),
        });
    }
    if let Some(bad) = llrs.iter().position(|l| !l.nat().is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite LLR at position {bad}")));
    }
    let graph = code.graph();
    let channel: Vec<f64> = llrs.iter().map(|l| -l.nat()).collect();
    let mut posterior = channel.clone();
    let mut bits = vec![0u8; n];

    if decide(&posterior, &mut bits) && syndrome_is_zero(code, &bits) {
        return Ok(DecodeResult {
            decided_bits: bits,
            converged: true,
            iterations_used: 0,
        });
    }

    let n_edges = graph.edge_var.len();
    let mut var_to_check: Vec<f64> = graph.edge_var.iter().map(|&v| channel[v]).collect();
    let mut check_to_var = vec![0.0f64; n_edges];
    let mut tanhs: Vec<f64> = Vec::new();
    let mut suffix: Vec<f64> = Vec::new();

    for iter in 1..=max_iters {
        for window in graph.check_offsets.windows(2) {
            let (start, end) = (window[0], window[1]);
            tanhs.clear();
            tanhs.extend(
                var_to_check[start..end]
                    .iter()
                    .map(|&m| (0.5 * m.clamp(-MESSAGE_CLAMP, MESSAGE_CLAMP)).tanh()),
            );
            let deg = tanhs.len();
            suffix.clear();
            suffix.resize(deg + 1, 1.0);
            for k in (0..deg).rev() {
                suffix[k] = suffix[k + 1] * tanhs[k];
            }
            let mut prefix = 1.0;
            for k in 0..deg {
                let excl = prefix * suffix[k + 1];
                let msg = 2.0 * excl.atanh();
                debug_assert!(msg.is_finite());
                check_to_var[start + k] = msg;
                prefix *= tanhs[k];
            }
        }

        for v in 0..n {
            let edges = &graph.var_edges[graph.var_offsets[v]..graph.var_offsets[v + 1]];
            let total = channel[v] + edges.iter().map(|&e| check_to_var[e]).sum::<f64>();
            posterior[v] = total;
            for &e in edges {
                var_to_check[e] = total - check_to_var[e];
                debug_assert!(var_to_check[e].is_finite());
            }
        }

        if decide(&posterior, &mut bits) && syndrome_is_zero(code, &bits) {
            return Ok(DecodeResult {
                decided_bits: bits,
                converged: true,
                iterations_used: iter,
            });
        }
    }

    Ok(DecodeResult {
        decided_bits: bits,
        converged: false,
        iterations_used: max_iters,
    })
}
