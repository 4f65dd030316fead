//! Systematic LDPC codes: construction, encoding and sum-product decoding.

mod alist;
mod construct;
mod decode;
mod gf2;
mod matrix;

pub use alist::{from_alist, to_alist};
pub use construct::{construct_code, COLUMN_WEIGHT, MAX_CONSTRUCTION_ATTEMPTS};
pub use decode::{decode, DecodeResult, DEFAULT_MAX_ITERS, MESSAGE_CLAMP};
pub use gf2::BitRow;
pub use matrix::ParityCheckMatrix;

use crate::error::{Error, Result};

/// Dimensions of a systematic code: `L` information bits, `r` parity bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub info_len: usize,
    pub parity_len: usize,
}

impl CodeSpec {
    /// Rate 1/2, `L = 500`, `r = 500`.
    pub const RATE_HALF: CodeSpec = CodeSpec::new_unchecked(500, 500);
    /// `L = 252`, `r = 156`; rate 0.6176, labeled 0.61.
    pub const RATE_061: CodeSpec = CodeSpec::new_unchecked(252, 156);
    /// Rate 3/4, `L = 750`, `r = 250`.
    pub const RATE_THREE_QUARTERS: CodeSpec = CodeSpec::new_unchecked(750, 250);

    /// The three standard operating points, with their labels.
    pub const STANDARD: [(&'static str, CodeSpec); 3] = [
        ("0.5", Self::RATE_HALF),
        ("0.61", Self::RATE_061),
        ("0.75", Self::RATE_THREE_QUARTERS),
    ];

    const fn new_unchecked(info_len: usize, parity_len: usize) -> Self {
        Self {
            info_len,
            parity_len,
        }
    }

    pub fn new(info_len: usize, parity_len: usize) -> Result<Self> {
        if info_len == 0 || parity_len == 0 {
            return Err(Error::InvalidParameter(format!(
                "code needs L >= 1 and r >= 1, got L={info_len}, r={parity_len}"
            )));
        }
        Ok(Self::new_unchecked(info_len, parity_len))
    }

    /// Looks up a standard spec by its rate label (`"0.5"`, `"0.61"`, `"0.75"`).
    pub fn from_rate_label(label: &str) -> Option<CodeSpec> {
        let wanted: f64 = label.trim().parse().ok()?;
        Self::STANDARD
            .iter()
            .find(|(l, _)| (l.parse::<f64>().unwrap() - wanted).abs() < 1e-9)
            .map(|&(_, spec)| spec)
    }

    pub fn block_len(&self) -> usize {
        self.info_len + self.parity_len
    }

    pub fn rate(&self) -> f64 {
        self.info_len as f64 / self.block_len() as f64
    }
}

/// Codeword bits; the first `L` positions carry the information bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword(pub Vec<u8>);

impl Codeword {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn info_bits(&self, info_len: usize) -> &[u8] {
        &self.0[..info_len]
    }
}

/// Tanner graph adjacency used by the decoder; edges are numbered check-major.
#[derive(Debug, Clone)]
pub(crate) struct TannerGraph {
    pub check_offsets: Vec<usize>,
    pub edge_var: Vec<usize>,
    pub var_offsets: Vec<usize>,
    pub var_edges: Vec<usize>,
}

impl TannerGraph {
    fn new(h: &ParityCheckMatrix) -> Self {
        let mut check_offsets = Vec::with_capacity(h.n_rows() + 1);
        let mut edge_var = Vec::with_capacity(h.n_edges());
        let mut per_var: Vec<Vec<usize>> = vec![Vec::new(); h.n_cols()];
        check_offsets.push(0);
        for row in h.rows() {
            for &j in row {
                per_var[j].push(edge_var.len());
                edge_var.push(j);
            }
            check_offsets.push(edge_var.len());
        }
        let mut var_offsets = Vec::with_capacity(h.n_cols() + 1);
        let mut var_edges = Vec::with_capacity(h.n_edges());
        var_offsets.push(0);
        for edges in per_var {
            var_edges.extend(edges);
            var_offsets.push(var_edges.len());
        }
        Self {
            check_offsets,
            edge_var,
            var_offsets,
            var_edges,
        }
    }
}

/// A systematic LDPC code: parity-check matrix plus dense parity generator.
#[derive(Debug, Clone)]
pub struct LdpcCode {
    spec: CodeSpec,
    h: ParityCheckMatrix,
    /// Row `i` gives parity bit `i` as a GF(2) dot product with the info bits.
    parity_generator: Vec<BitRow>,
    /// `column_order[k]` is the column of the input matrix now at position `k`.
    column_order: Vec<usize>,
    graph: TannerGraph,
}

impl LdpcCode {
    /// Builds a systematic encoder for `h` by Gaussian elimination.
    ///
    /// Pivots are taken from the trailing columns first; if those are not
    /// independent the columns are reordered so that the last `r` positions
    /// are parity and the permutation is kept in [`LdpcCode::column_order`].
    /// Fails when `h` does not have full row rank.
    pub fn from_parity_check(h: ParityCheckMatrix) -> Result<Self> {
        let (n_rows, n_cols) = (h.n_rows(), h.n_cols());
        if n_rows == 0 || n_rows >= n_cols {
            return Err(Error::InvalidParameter(format!(
                "parity-check matrix must be r x n with 0 < r < n, got {n_rows} x {n_cols}"
            )));
        }
        let info_len = n_cols - n_rows;
        let mut rows = h.dense_rows();
        let preference = (info_len..n_cols).chain(0..info_len);
        let mut pivots = Vec::with_capacity(n_rows);
        for col in preference {
            let rank = pivots.len();
            if rank == n_rows {
                break;
            }
            let Some(found) = (rank..n_rows).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
        }
        if pivots.len() < n_rows {
            return Err(Error::InvalidParameter(format!(
                "parity-check matrix is rank deficient ({} < {n_rows})",
                pivots.len()
            )));
        }

        let mut is_pivot = vec![false; n_cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n_cols).filter(|&c| !is_pivot[c]).collect();
        let parity_generator = rows
            .iter()
            .map(|row| {
                let mut g = BitRow::zeros(info_len);
                for (k, &c) in free.iter().enumerate() {
                    if row.get(c) {
                        g.set(k);
                    }
                }
                g
            })
            .collect();

        let column_order: Vec<usize> = free.iter().chain(&pivots).copied().collect();
        let identity = column_order.iter().enumerate().all(|(k, &c)| k == c);
        let h = if identity { h } else { h.permute_columns(&column_order) };
        let graph = TannerGraph::new(&h);
        Ok(Self {
            spec: CodeSpec::new(info_len, n_rows)?,
            h,
            parity_generator,
            column_order,
            graph,
        })
    }

    pub fn spec(&self) -> CodeSpec {
        self.spec
    }

    pub fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn column_order(&self) -> &[usize] {
        &self.column_order
    }

    pub fn block_len(&self) -> usize {
        self.h.n_cols()
    }

    pub(crate) fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn encode(&self, info_bits: &[u8]) -> Result<Codeword> {
        encode(self, info_bits)
    }

    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>> {
        syndrome(self, bits)
    }
}

/// Systematic encoding: `[info | parity]`.
pub fn encode(code: &LdpcCode, info_bits: &[u8]) -> Result<Codeword> {
    let info_len = code.spec.info_len;
    if info_bits.len() != info_len {
        return Err(Error::LengthMismatch {
            expected: info_len,
            actual: info_bits.len(),
        });
    }
    let packed = BitRow::from_bits(info_bits);
    let mut bits = Vec::with_capacity(code.block_len());
    bits.extend(info_bits.iter().map(|b| b & 1));
    bits.extend(code.parity_generator.iter().map(|g| g.dot(&packed)));
    Ok(Codeword(bits))
}

/// `H · bitsᵀ` over GF(2).
pub fn syndrome(code: &LdpcCode, bits: &[u8]) -> Result<Vec<u8>> {
    code.h.syndrome(bits)
}
