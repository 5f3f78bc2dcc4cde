//! Packed GF(2) rows: 64 lanes per `u64` word.

/// Number of words needed for `bits` lanes.
#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

/// Index of the first set bit at position `>= from`.
pub fn first_one_from(words: &[u64], from: usize, len: usize) -> Option<usize> {
    if from >= len {
        return None;
    }
    let mut w = from / 64;
    let mut word = words[w] & (!0u64 << (from % 64));
    loop {
        if word != 0 {
            let i = w * 64 + word.trailing_zeros() as usize;
            return (i < len).then_some(i);
        }
        w += 1;
        if w >= words.len() {
            return None;
        }
        word = words[w];
    }
}

/// Iterates over the indices of set bits.
pub fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + bit)
        })
    })
}

/// Dense row-major GF(2) matrix, each row padded to a whole number of words.
/// Padding bits are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        get_bit(self.row(i), j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let mask = 1u64 << (j % 64);
        let word = &mut self.row_mut(i)[j / 64];
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        if dst < src {
            let (head, tail) = self.data.split_at_mut(src * s);
            xor_into(&mut head[dst * s..(dst + 1) * s], &tail[..s]);
        } else {
            let (head, tail) = self.data.split_at_mut(dst * s);
            xor_into(&mut tail[..s], &head[src * s..(src + 1) * s]);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Classical product: each output row is the XOR of the rows of `other`
    /// selected by the set bits of the corresponding row of `self`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in ones(self.row(i)) {
                xor_into(dst, other.row(k));
            }
        }
        out
    }
}
