use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2linalg::BitMatrix;

/// Exhaustive weight enumeration is refused above dimension 24.
pub const WEIGHT_ENUMERATOR_MAX_DIM: usize = 24;

/// A binary linear code given by a generator basis and a parity-check
/// matrix, both in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
}

pub(crate) fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

fn weight(v: &[u64]) -> u32 {
    v.iter().map(|w| w.count_ones()).sum()
}

impl BinaryCode {
    /// The code with parity-check matrix `h`: its kernel, with the rows of
    /// `h` reduced to a basis.
    pub fn from_parity_check(h: BitMatrix) -> Self {
        let length = h.ncols();
        let generator = BitMatrix::from_rows(length, h.kernel());
        Self::assemble(length, generator, h)
    }

    /// The span of `rows`, with the dual as parity-check matrix.
    pub fn from_generator(g: BitMatrix) -> Self {
        let length = g.ncols();
        let parity_check = BitMatrix::from_rows(length, g.kernel());
        Self::assemble(length, g, parity_check)
    }

    fn assemble(length: usize, mut generator: BitMatrix, mut parity_check: BitMatrix) -> Self {
        generator.rref();
        parity_check.rref();
        BinaryCode {
            length,
            generator,
            parity_check,
        }
    }

    /// {0} of the given length.
    pub fn zero(length: usize) -> Self {
        let mut h = BitMatrix::zeros(length, length);
        for i in 0..length {
            h.set(i, i, true);
        }
        Self::from_parity_check(h)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// Whether `word` (packed little-endian in 64-bit words) is a codeword.
    pub fn contains(&self, word: &[u64]) -> bool {
        word.len() == words(self.length) && !self.parity_check.mul_vec(word).into_iter().any(|b| b)
    }

    /// Appends an overall parity coordinate.
    pub fn extend(&self) -> BinaryCode {
        let len = self.length + 1;
        let rows = self
            .generator
            .rows()
            .iter()
            .map(|row| {
                let mut v = row.clone();
                v.resize(words(len), 0);
                if weight(row) % 2 == 1 {
                    v[self.length / 64] |= 1 << (self.length % 64);
                }
                v
            })
            .collect();
        BinaryCode::from_generator(BitMatrix::from_rows(len, rows))
    }

    /// Deletes the last coordinate.
    pub fn puncture(&self) -> Result<BinaryCode> {
        if self.length == 0 {
            return Err(Error::Precondition("cannot puncture a code of length 0".into()));
        }
        let len = self.length - 1;
        let rows = self
            .generator
            .rows()
            .iter()
            .map(|row| {
                let mut v = row.clone();
                v[len / 64] &= !(1u64 << (len % 64));
                v.truncate(words(len));
                v
            })
            .collect();
        Ok(BinaryCode::from_generator(BitMatrix::from_rows(len, rows)))
    }

    /// Codeword-weight histogram, entries 0..=length, by Gray-code
    /// enumeration of all 2^dim codewords.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        let k = self.dimension();
        if k > WEIGHT_ENUMERATOR_MAX_DIM {
            return Err(Error::guard("code dimension for weight enumeration", k, WEIGHT_ENUMERATOR_MAX_DIM));
        }
        let rows = self.generator.rows();
        // Top `split` generators pick a chunk; each chunk walks the rest.
        let split = k.saturating_sub(12).min(8);
        let low = k - split;
        let chunks: Vec<u64> = (0..1u64 << split).collect();
        let partials = crate::par::map(&chunks, |&c| {
            let mut hist = vec![0u64; self.length + 1];
            let mut word = vec![0u64; words(self.length)];
            for (j, row) in rows[low..].iter().enumerate() {
                if (c >> j) & 1 == 1 {
                    xor_into(&mut word, row);
                }
            }
            hist[weight(&word) as usize] += 1;
            for i in 1..1u64 << low {
                xor_into(&mut word, &rows[i.trailing_zeros() as usize]);
                hist[weight(&word) as usize] += 1;
            }
            hist
        });
        let mut hist = vec![0u64; self.length + 1];
        for p in partials {
            for (h, x) in hist.iter_mut().zip(p) {
                *h += x;
            }
        }
        Ok(hist)
    }

    /// Every codeword, for small dimensions.
    pub fn codewords(&self) -> Result<Vec<Vec<u64>>> {
        let k = self.dimension();
        if k > WEIGHT_ENUMERATOR_MAX_DIM {
            return Err(Error::guard("code dimension for codeword listing", k, WEIGHT_ENUMERATOR_MAX_DIM));
        }
        let rows = self.generator.rows();
        let mut word = vec![0u64; words(self.length)];
        let mut out = vec![word.clone()];
        for i in 1..1u64 << k {
            xor_into(&mut word, &rows[i.trailing_zeros() as usize]);
            out.push(word.clone());
        }
        out.sort();
        Ok(out)
    }

    /// Least nonzero weight, by exhaustive enumeration; None for {0}.
    pub fn minimum_distance(&self) -> Result<Option<usize>> {
        Ok(self.weight_enumerator()?.iter().skip(1).position(|&c| c > 0).map(|i| i + 1))
    }

    /// One generator row per line, as 0/1 characters.
    pub fn generator_text(&self) -> String {
        let mut out = String::new();
        for row in self.generator.rows() {
            out.extend((0..self.length).map(|i| if bit(row, i) { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }
}

fn xor_into(acc: &mut [u64], row: &[u64]) {
    for (a, b) in acc.iter_mut().zip(row) {
        *a ^= b;
    }
}

impl Serialize for BinaryCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BinaryCode", 3)?;
        st.serialize_field("length", &self.length)?;
        st.serialize_field("dimension", &self.dimension())?;
        let rows: Vec<String> = self.generator_text().lines().map(str::to_owned).collect();
        st.serialize_field("generator", &rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> BinaryCode {
        // columns are 1..=7 in binary
        let mut h = BitMatrix::zeros(3, 7);
        for c in 0..7 {
            for r in 0..3 {
                h.set(r, c, ((c + 1) >> r) & 1 == 1);
            }
        }
        BinaryCode::from_parity_check(h)
    }

    #[test]
    fn hamming_weight_enumerator() {
        let code = hamming();
        assert_eq!(code.dimension(), 4);
        assert_eq!(code.weight_enumerator().unwrap(), vec![1, 0, 0, 7, 7, 0, 0, 1]);
        assert_eq!(code.minimum_distance().unwrap(), Some(3));
        let ext = code.extend();
        assert_eq!(ext.weight_enumerator().unwrap(), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    }

    #[test]
    fn zero_code() {
        let z = BinaryCode::zero(5);
        assert_eq!(z.dimension(), 0);
        assert_eq!(z.weight_enumerator().unwrap(), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(z.extend().weight_enumerator().unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(z.minimum_distance().unwrap(), None);
    }

    #[test]
    fn puncture_undoes_extend() {
        let code = hamming();
        let back = code.extend().puncture().unwrap();
        assert_eq!(back.codewords().unwrap(), code.codewords().unwrap());
    }

    #[test]
    fn chunked_enumeration_matches_listing() {
        // A random-ish code of dimension 16 exercises the chunk split.
        let len = 40;
        let rows: Vec<Vec<u64>> = (0..16u64)
            .map(|i| vec![(1u64 << i) | (i.wrapping_mul(0x9E37_79B9_7F4A_7C15) & 0xFF_FFFF_0000 & ((1 << len) - 1))])
            .collect();
        let code = BinaryCode::from_generator(BitMatrix::from_rows(len, rows));
        assert_eq!(code.dimension(), 16);
        let mut hist = vec![0u64; len + 1];
        for w in code.codewords().unwrap() {
            hist[weight(&w) as usize] += 1;
        }
        assert_eq!(code.weight_enumerator().unwrap(), hist);
    }

    #[test]
    fn membership_and_text() {
        let code = hamming();
        for w in code.codewords().unwrap() {
            assert!(code.contains(&w));
        }
        assert!(!code.contains(&[1]));
        assert_eq!(code.generator_text().lines().count(), 4);
        let json = serde_json::to_value(&code).unwrap();
        assert_eq!(json["dimension"], 4);
    }
}
