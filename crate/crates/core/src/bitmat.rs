//! Dense bit matrices over GF(2).
//!
//! Carrier for companion-matrix powers, psi(A) blocks, and materialized
//! parity-check matrices. Rows are packed into `u64` words.

/// Row-major bit matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
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
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.bits[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Matrix product over GF(2). Panics on dimension mismatch.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "bit-matrix product dimensions");
        let mut out = BitMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (dst, src) = (r * out.words_per_row, c * other.words_per_row);
                    for w in 0..out.words_per_row {
                        out.bits[dst + w] ^= other.bits[src + w];
                    }
                }
            }
        }
        out
    }

    /// XOR of two equal-shaped matrices.
    pub fn xor(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        out
    }

    /// Apply to a column vector packed in the low `cols` bits of a `u32`.
    /// Bit `c` of the input is the vector's `c`-th coordinate.
    pub fn mul_col(&self, v: u32) -> u32 {
        debug_assert!(self.cols <= 32);
        let mut out = 0u32;
        for r in 0..self.rows {
            let mut acc = false;
            for c in 0..self.cols {
                acc ^= self.get(r, c) && (v >> c) & 1 == 1;
            }
            if acc {
                out |= 1 << r;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Nonsingularity over GF(2) by row elimination. Requires square.
    pub fn is_nonsingular(&self) -> bool {
        assert_eq!(self.rows, self.cols, "nonsingularity needs a square matrix");
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row_words(r).to_vec()).collect();
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (col..self.rows).find(|&r| (rows[r][w] >> b) & 1 == 1) else {
                return false;
            };
            rows.swap(col, p);
            let pivot = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && (row[w] >> b) & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_nonsingular_and_multiplicative_unit() {
        let id = BitMatrix::identity(5);
        assert!(id.is_nonsingular());
        let mut m = BitMatrix::zero(5, 5);
        m.set(0, 4, true);
        m.set(2, 1, true);
        m.set(4, 4, true);
        assert_eq!(id.mul(&m), m);
        assert_eq!(m.mul(&id), m);
    }

    #[test]
    fn singular_when_rows_repeat() {
        let mut m = BitMatrix::zero(3, 3);
        for c in 0..3 {
            m.set(0, c, c != 1);
            m.set(1, c, c != 1);
        }
        m.set(2, 1, true);
        assert!(!m.is_nonsingular());
    }

    #[test]
    fn mul_col_matches_per_entry_dot() {
        let mut m = BitMatrix::zero(3, 3);
        // cyclic shift
        m.set(0, 2, true);
        m.set(1, 0, true);
        m.set(2, 1, true);
        assert_eq!(m.mul_col(0b001), 0b010);
        assert_eq!(m.mul_col(0b110), 0b101);
    }

    #[test]
    fn wide_matrix_crossing_word_boundary() {
        let mut m = BitMatrix::zero(2, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        assert!(m.get(0, 129));
        assert!(!m.get(0, 128));
        let id = BitMatrix::identity(130);
        assert_eq!(m.mul(&id), m);
    }
}
