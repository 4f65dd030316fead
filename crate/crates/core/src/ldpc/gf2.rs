//! Dense bit-packed GF(2) rows.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut row = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                row.set(i);
            }
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND with `other`.
    pub fn dot(&self, other: &BitRow) -> u8 {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        (ones & 1) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Rank over GF(2) by forward elimination.
pub fn rank(mut rows: Vec<BitRow>) -> usize {
    let Some(cols) = rows.first().map(BitRow::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
