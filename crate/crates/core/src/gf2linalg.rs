//! Linear algebra over GF(2): a small xor-basis for vectors of at most 64
//! bits and a dense bit matrix for longer rows.

/// Echelonised set of 64-bit vectors, each remembering which inserted
/// vectors it was combined from.
#[derive(Clone, Debug, Default)]
pub(crate) struct XorBasis {
    /// (vector, combination mask), highest pivot first.
    rows: Vec<(u64, u64)>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// combination of basis sources that was xored in.
    pub fn reduce(&self, mut v: u64) -> (u64, u64) {
        let mut combo = 0u64;
        for &(row, src) in &self.rows {
            let pivot = 63 - row.leading_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= row;
                combo ^= src;
            }
        }
        (v, combo)
    }

    /// Inserts `v` tagged with `source`. If `v` is dependent, returns the
    /// combination of sources that sums to zero (including `source`).
    pub fn insert(&mut self, v: u64, source: u64) -> Option<u64> {
        let (rem, combo) = self.reduce(v);
        let combo = combo ^ source;
        if rem == 0 {
            return Some(combo);
        }
        let pivot = 63 - rem.leading_zeros();
        let at = self
            .rows
            .iter()
            .position(|&(row, _)| 63 - row.leading_zeros() < pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, (rem, combo));
        None
    }
}

/// Row-major bit matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![vec![0u64; cols.div_ceil(64)]; rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols.div_ceil(64)));
        BitMatrix { cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.rows[r][c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        let w = &mut self.rows[r][c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            let Some(p) = (lead..self.rows.len()).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.rows.swap(lead, p);
            let pivot_row = self.rows[lead].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != lead && (row[c / 64] >> (c % 64)) & 1 == 1 {
                    for (w, pw) in row.iter_mut().zip(&pivot_row) {
                        *w ^= pw;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
            if lead == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(lead);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let words = self.cols.div_ceil(64);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; words];
            v[free / 64] |= 1 << (free % 64);
            for (i, &p) in pivots.iter().enumerate() {
                if m.get(i, free) {
                    v[p / 64] |= 1 << (p % 64);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &[u64]) -> Vec<bool> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_basis_finds_dependencies() {
        let mut b = XorBasis::new();
        assert_eq!(b.insert(0b011, 1), None);
        assert_eq!(b.insert(0b110, 2), None);
        assert_eq!(b.insert(0b101, 4), Some(0b111));
        assert_eq!(b.rank(), 2);
        let (rem, combo) = b.reduce(0b101);
        assert_eq!(rem, 0);
        assert_eq!(combo, 0b011);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        // Parity-check matrix of the [7,4] Hamming code.
        let mut h = BitMatrix::zeros(3, 7);
        for c in 0..7 {
            for r in 0..3 {
                h.set(r, c, ((c + 1) >> r) & 1 == 1);
            }
        }
        let ker = h.kernel();
        assert_eq!(ker.len(), 4);
        for v in &ker {
            assert!(h.mul_vec(v).iter().all(|&b| !b));
        }
        assert_eq!(h.rank(), 3);
    }
}
