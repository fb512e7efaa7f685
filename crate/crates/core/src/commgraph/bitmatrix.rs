/// Dense square bit-matrix, one padded row of `u64` words per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Assemble from precomputed rows, each `ceil(n/64)` words long.
    pub fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let words = n.div_ceil(64);
        debug_assert!(rows.len() == n && rows.iter().all(|r| r.len() == words));
        BitMatrix {
            n,
            words,
            bits: rows.into_iter().flatten().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_count(&self, i: usize) -> u64 {
        self.row(i).iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `|row(i) ∧ row(j)|`.
    #[inline]
    pub fn and_count(&self, i: usize, j: usize) -> u64 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    /// Number of set bits of `row(i)` at positions in `mask`.
    pub fn masked_count(&self, i: usize, mask: &[u64]) -> u64 {
        self.row(i)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Bit mask with the given positions set.
    pub fn mask(n: usize, members: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; n.div_ceil(64)];
        for &v in members {
            m[v / 64] |= 1 << (v % 64);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_counts() {
        let mut m = BitMatrix::new(130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 129, true);
        m.set(1, 64, true);
        assert!(m.get(0, 129) && !m.get(0, 128));
        assert_eq!(m.row_count(0), 2);
        assert_eq!(m.and_count(0, 1), 1);
        m.set(0, 129, false);
        assert_eq!(m.and_count(0, 1), 0);
        assert_eq!(m.masked_count(1, &BitMatrix::mask(130, &[64, 3])), 1);
    }
}
