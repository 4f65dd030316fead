//! Plain-text "alist" sparse matrix format.
//!
//! ```text
//! n_cols n_rows
//! max_col_weight max_row_weight
//! <n_cols column weights>
//! <n_rows row weights>
//! <n_cols lines: 1-based row indices of each column, zero padded>
//! <n_rows lines: 1-based column indices of each row, zero padded>
//! ```

use std::fmt::Write;

use super::matrix::ParityCheckMatrix;
use crate::error::{Error, Result};

fn join_padded(indices: &[usize], width: usize) -> String {
    let mut line = String::new();
    for k in 0..width {
        if k > 0 {
            line.push(' ');
        }
        let v = indices.get(k).map_or(0, |&i| i + 1);
        write!(line, "{v}").unwrap();
    }
    line
}

/// Serializes `h` as alist text, one trailing newline.
pub fn to_alist(h: &ParityCheckMatrix) -> String {
    let max_col = h.cols().iter().map(Vec::len).max().unwrap_or(0);
    let max_row = h.rows().iter().map(Vec::len).max().unwrap_or(0);
    let weights = |lists: &[Vec<usize>]| {
        lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    writeln!(out, "{} {}", h.n_cols(), h.n_rows()).unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", weights(h.cols())).unwrap();
    writeln!(out, "{}", weights(h.rows())).unwrap();
    for col in h.cols() {
        writeln!(out, "{}", join_padded(col, max_col)).unwrap();
    }
    for row in h.rows() {
        writeln!(out, "{}", join_padded(row, max_row)).unwrap();
    }
    out
}

/// Parses alist text; the column and row lists must describe the same matrix.
pub fn from_alist(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut numbers = |what: &str| -> Result<Vec<usize>> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Alist(format!("missing {what}")))?;
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Alist(format!("bad number {tok:?} in {what}")))
            })
            .collect()
    };

    let dims = numbers("dimensions")?;
    let [n_cols, n_rows] = dims[..] else {
        return Err(Error::Alist("dimension line needs two numbers".into()));
    };
    numbers("maximum weights")?;
    let col_weights = numbers("column weights")?;
    let row_weights = numbers("row weights")?;
    if col_weights.len() != n_cols || row_weights.len() != n_rows {
        return Err(Error::Alist("weight list length mismatch".into()));
    }

    let mut columns = Vec::with_capacity(n_cols);
    for (j, &w) in col_weights.iter().enumerate() {
        let entries: Vec<usize> = numbers("column list")?.into_iter().filter(|&v| v != 0).collect();
        if entries.len() != w {
            return Err(Error::Alist(format!("column {} has {} entries, weight says {w}", j + 1, entries.len())));
        }
        if entries.iter().any(|&v| v > n_rows) {
            return Err(Error::Alist(format!("column {} references a row beyond {n_rows}", j + 1)));
        }
        columns.push(entries.into_iter().map(|v| v - 1).collect::<Vec<_>>());
    }
    let h = ParityCheckMatrix::from_columns(n_rows, columns)?;

    for (i, &w) in row_weights.iter().enumerate() {
        let mut entries: Vec<usize> = numbers("row list")?
            .into_iter()
            .filter(|&v| v != 0)
            .map(|v| v - 1)
            .collect();
        entries.sort_unstable();
        if entries.len() != w || entries != h.row(i) {
            return Err(Error::Alist(format!("row {} disagrees with the column lists", i + 1)));
        }
    }
    Ok(h)
}
