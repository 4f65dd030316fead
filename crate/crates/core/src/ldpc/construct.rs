//! Random column-weight-3 parity-check matrices without 4-cycles.

use rand::seq::SliceRandom;
use rand::Rng;

use super::matrix::ParityCheckMatrix;
use super::{CodeSpec, LdpcCode};
use crate::error::{Error, Result};
use crate::rng::{mix64, stream_from_seed};

pub const COLUMN_WEIGHT: usize = 3;
pub const MAX_CONSTRUCTION_ATTEMPTS: usize = 64;

/// Symmetric row-pair occupancy: set once two rows share a column.
struct PairTable {
    n: usize,
    bits: Vec<u64>,
}

impl PairTable {
    fn new(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    fn get(&self, a: usize, b: usize) -> bool {
        let i = a * self.n + b;
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    fn set(&mut self, a: usize, b: usize) {
        for i in [a * self.n + b, b * self.n + a] {
            self.bits[i / 64] |= 1 << (i % 64);
        }
    }
}

/// Places `n` columns of weight 3 over `r` rows, least-loaded rows first,
/// refusing any placement that would close a 4-cycle.
fn place_columns<R: Rng>(n_rows: usize, n_cols: usize, rng: &mut R) -> Option<Vec<Vec<usize>>> {
    let mut weights = vec![0usize; n_rows];
    let mut pairs = PairTable::new(n_rows);
    let mut order: Vec<usize> = (0..n_rows).collect();
    let mut columns = Vec::with_capacity(n_cols);
    for _ in 0..n_cols {
        order.shuffle(rng);
        order.sort_by_key(|&r| weights[r]);
        let mut chosen: Vec<usize> = Vec::with_capacity(COLUMN_WEIGHT);
        for &row in &order {
            if chosen.iter().all(|&c| !pairs.get(row, c)) {
                chosen.push(row);
                if chosen.len() == COLUMN_WEIGHT {
                    break;
                }
            }
        }
        if chosen.len() < COLUMN_WEIGHT {
            return None;
        }
        for (i, &a) in chosen.iter().enumerate() {
            weights[a] += 1;
            for &b in &chosen[i + 1..] {
                pairs.set(a, b);
            }
        }
        columns.push(chosen);
    }
    Some(columns)
}

/// Builds a girth-6 column-weight-3 code with a systematic encoder.
///
/// Deterministic in `(spec, seed)`. Attempts that hit a dead end during
/// placement or yield a rank-deficient matrix are retried with a derived
/// seed; after [`MAX_CONSTRUCTION_ATTEMPTS`] the call fails.
pub fn construct_code(spec: CodeSpec, seed: u64) -> Result<LdpcCode> {
    let failed = |attempts| Error::ConstructionFailed {
        info_len: spec.info_len,
        parity_len: spec.parity_len,
        attempts,
    };
    if spec.info_len == 0 || spec.parity_len == 0 {
        return Err(failed(0));
    }
    let (n_rows, n_cols) = (spec.parity_len, spec.block_len());
    if n_rows < COLUMN_WEIGHT {
        return Err(failed(0));
    }
    for attempt in 0..MAX_CONSTRUCTION_ATTEMPTS {
        let mut rng = stream_from_seed(mix64(seed ^ mix64(attempt as u64)));
        let Some(columns) = place_columns(n_rows, n_cols, &mut rng) else {
            continue;
        };
        let h = ParityCheckMatrix::from_columns(n_rows, columns)?;
        if let Ok(code) = LdpcCode::from_parity_check(h) {
            return Ok(code);
        }
    }
    Err(failed(MAX_CONSTRUCTION_ATTEMPTS))
}
