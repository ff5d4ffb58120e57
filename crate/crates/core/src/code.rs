//! Code assembly, systematic encoding, and syndrome computation.
//!
//! A codeword is `n = m + k` symbols: information symbols in positions
//! `1..=k`, parity symbols in `k+1..=k+m`. The parity-check matrix is
//! `H = [psi(A) | I]`, but it is never materialized on hot paths: every
//! product `C^sigma * v` goes through the exponent tables. The explicit
//! bit-matrix form exists for tests and the table dump.

use crate::bitmat::BitMatrix;
use crate::field::{build_field, FieldTables, PrimitivePolynomial, Symbol};
use crate::matrix::{is_superregular, ExponentMatrix, MatrixSpec};
use crate::{Error, Result};

/// Everything needed to rebuild the code: parameters, polynomial, matrix.
#[derive(Debug)]
pub struct CodeParams {
    b: u32,
    m: usize,
    k: usize,
    poly: PrimitivePolynomial,
    spec: MatrixSpec,
    matrix: ExponentMatrix,
    tables: FieldTables,
    trusted: bool,
}

/// Builds the code, resolving the matrix spec and verifying superregularity
/// unless `trusted` is set (recorded, so manifests can carry it forward).
pub fn build_code(
    b: u32,
    m: usize,
    k: usize,
    poly: PrimitivePolynomial,
    spec: MatrixSpec,
    trusted: bool,
) -> Result<CodeParams> {
    if m == 0 || k == 0 {
        return Err(Error::DimensionMismatch("m and k must be positive".into()));
    }
    if poly.degree() != b {
        return Err(Error::DimensionMismatch(format!(
            "polynomial degree {} does not match b = {b}",
            poly.degree()
        )));
    }
    let tables = build_field(poly)?;
    let matrix = spec.resolve(&tables, m, k)?;
    if !trusted && !is_superregular(&tables, &matrix)? {
        return Err(Error::NotSuperregular);
    }
    Ok(CodeParams {
        b,
        m,
        k,
        poly,
        spec,
        matrix,
        tables,
        trusted,
    })
}

impl CodeParams {
    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.m + self.k
    }

    /// Minimum symbol distance, m + 1 by construction.
    pub fn d(&self) -> usize {
        self.m + 1
    }

    /// Guaranteed correction radius in symbols.
    pub fn radius(&self) -> usize {
        self.m / 2
    }

    pub fn poly(&self) -> PrimitivePolynomial {
        self.poly
    }

    pub fn spec(&self) -> &MatrixSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    pub fn tables(&self) -> &FieldTables {
        &self.tables
    }

    pub fn trusted(&self) -> bool {
        self.trusted
    }

    /// Shorthand for the grid exponent at (i, j), 1-based, widened.
    #[inline]
    pub(crate) fn sig(&self, i: usize, j: usize) -> i64 {
        self.matrix.sig(i, j)
    }

    /// Systematic encoding: parity `p_i = sum_j C^sigma(i,j) * u_j`.
    pub fn encode(&self, info: &[Symbol]) -> Word {
        assert_eq!(info.len(), self.k, "info block length");
        let mut symbols = info.to_vec();
        for i in 1..=self.m {
            let mut p = Symbol::ZERO;
            for (j, &u) in info.iter().enumerate() {
                p = p.xor(self.tables.apply_power(self.sig(i, j + 1), u));
            }
            symbols.push(p);
        }
        Word { symbols }
    }

    /// Syndrome `s_i = sum_j C^sigma(i,j) * v_j + v_(k+i)`; all-zero exactly
    /// on codewords.
    pub fn syndrome(&self, v: &Word) -> Syndrome {
        assert_eq!(v.len(), self.n(), "received word length");
        let mut s = Vec::with_capacity(self.m);
        for i in 1..=self.m {
            let mut acc = v.sym(self.k + i);
            for j in 1..=self.k {
                acc = acc.xor(self.tables.apply_power(self.sig(i, j), v.sym(j)));
            }
            s.push(acc);
        }
        Syndrome(s)
    }

    pub fn is_codeword(&self, v: &Word) -> bool {
        self.syndrome(v).is_zero()
    }

    /// The explicit mb x nb parity-check matrix `[psi(A) | I]`.
    pub fn parity_check_matrix(&self) -> BitMatrix {
        let b = self.b as usize;
        let mut h = BitMatrix::zero(self.m * b, self.n() * b);
        for i in 0..self.m {
            for j in 0..self.k {
                let block = self.tables.psi_block(self.sig(i + 1, j + 1));
                for r in 0..b {
                    for c in 0..b {
                        if block.get(r, c) {
                            h.set(i * b + r, j * b + c, true);
                        }
                    }
                }
            }
            for d in 0..b {
                h.set(i * b + d, (self.k + i) * b + d, true);
            }
        }
        h
    }
}

/// A length-n vector of symbols; positions are 1-based, information first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word { symbols }
    }

    pub fn zero(n: usize) -> Self {
        Word {
            symbols: vec![Symbol::ZERO; n],
        }
    }

    /// Parse a whitespace-separated list of bit strings.
    pub fn parse(text: &str) -> Result<Self> {
        let symbols = text
            .split_whitespace()
            .map(Symbol::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at 1-based position.
    #[inline]
    pub fn sym(&self, pos: usize) -> Symbol {
        self.symbols[pos - 1]
    }

    /// XOR `mag` into the symbol at 1-based position.
    pub fn xor_at(&mut self, pos: usize, mag: Symbol) {
        self.symbols[pos - 1] = self.symbols[pos - 1].xor(mag);
    }

    pub fn bit_strings(&self, b: u32) -> String {
        self.symbols
            .iter()
            .map(|s| s.bit_string(b))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The m syndrome symbols, 1-based access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome(pub Vec<Symbol>);

impl Syndrome {
    #[inline]
    pub fn s(&self, i: usize) -> Symbol {
        self.0[i - 1]
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Symbol::is_zero)
    }

    /// 1-based indices of nonzero syndrome symbols.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        (1..=self.m()).filter(|&i| !self.s(i).is_zero()).collect()
    }
}

/// The worked example codes used throughout the tests, benches, and docs.
pub mod presets {
    use super::*;

    /// [4,2,3] over GF(2)^3, poly x^3+x^2+1, standard Vandermonde.
    pub fn code_4_2_3() -> CodeParams {
        build_code(
            3,
            2,
            2,
            PrimitivePolynomial::new(0b1101).unwrap(),
            MatrixSpec::standard_vandermonde(2),
            false,
        )
        .unwrap()
    }

    /// [10,5,6] over GF(2)^5, poly x^5+x^3+x^2+x+1, standard Vandermonde.
    pub fn code_10_5_6() -> CodeParams {
        build_code(
            5,
            5,
            5,
            PrimitivePolynomial::new(0b101111).unwrap(),
            MatrixSpec::standard_vandermonde(5),
            false,
        )
        .unwrap()
    }

    /// [8,4,5] over GF(2)^4, poly x^4+x^3+1, Cauchy matrix.
    pub fn code_8_4_5_cauchy() -> CodeParams {
        build_code(
            4,
            4,
            4,
            PrimitivePolynomial::new(0b11001).unwrap(),
            MatrixSpec::Cauchy {
                xs: vec![12, 1, 0, 7],
                ys: vec![5, 10, 3, 14],
            },
            false,
        )
        .unwrap()
    }

    /// [11,5,7] over GF(2)^5, poly x^5+x^2+1, standard Vandermonde.
    ///
    /// Built with the trusted flag: this grid is NOT fully superregular
    /// (four 3x3 minors vanish, e.g. rows {1,3,6} x columns {1,2,4}), so the
    /// designed distance is not guaranteed everywhere. The minors involved
    /// in the worked three-error decodes are nonsingular, which is what the
    /// triple-error exercises here rely on.
    pub fn code_11_5_7() -> CodeParams {
        build_code(
            5,
            6,
            5,
            PrimitivePolynomial::new(0b100101).unwrap(),
            MatrixSpec::standard_vandermonde(5),
            true,
        )
        .unwrap()
    }

    /// [10,4,7] over GF(2)^5, Cauchy matrix. Cauchy grids are superregular
    /// whenever their point lists are valid, so this code's full radius-3
    /// guarantee holds (unlike the trusted [11,5,7] preset).
    pub fn code_10_4_7_cauchy() -> CodeParams {
        build_code(
            5,
            6,
            4,
            PrimitivePolynomial::new(0b100101).unwrap(),
            MatrixSpec::Cauchy {
                xs: vec![0, 1, 2, 3, 4, 5],
                ys: vec![10, 20, 25, 30],
            },
            false,
        )
        .unwrap()
    }

    /// [6,2,5] over GF(2)^3: the tiny code used for exhaustive oracle
    /// comparisons (m = 4, so two-error decoding applies).
    pub fn code_6_2_5() -> CodeParams {
        build_code(
            3,
            4,
            2,
            PrimitivePolynomial::new(0b1101).unwrap(),
            MatrixSpec::standard_vandermonde(2),
            false,
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sym(s: &str) -> Symbol {
        Symbol::parse(s).unwrap()
    }

    #[test]
    fn build_rejects_bad_parameters() {
        let poly = PrimitivePolynomial::new(0b1101).unwrap();
        assert!(matches!(
            build_code(4, 2, 2, poly, MatrixSpec::standard_vandermonde(2), false),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            build_code(3, 0, 2, poly, MatrixSpec::standard_vandermonde(2), false),
            Err(Error::DimensionMismatch(_))
        ));
        // two equal columns: rejected unless trusted
        let dup = MatrixSpec::Explicit {
            sigma: vec![vec![1, 1], vec![2, 2]],
        };
        assert!(matches!(
            build_code(3, 2, 2, poly, dup.clone(), false),
            Err(Error::NotSuperregular)
        ));
        assert!(build_code(3, 2, 2, poly, dup, true).is_ok());
    }

    #[test]
    fn parity_check_matrix_of_4_2_3() {
        let p = presets::code_4_2_3();
        let h = p.parity_check_matrix();
        // [[I, I], [C, C^2] | I_6]
        let t = p.tables();
        let mut expect = BitMatrix::zero(6, 12);
        let blocks: [[i64; 2]; 2] = [[0, 0], [1, 2]];
        for i in 0..2 {
            for j in 0..2 {
                let blk = t.psi_block(blocks[i][j]);
                for r in 0..3 {
                    for c in 0..3 {
                        if blk.get(r, c) {
                            expect.set(i * 3 + r, j * 3 + c, true);
                        }
                    }
                }
            }
            for d in 0..3 {
                expect.set(i * 3 + d, (2 + i) * 3 + d, true);
            }
        }
        assert_eq!(h, expect);
    }

    #[test]
    fn degenerate_repetition_code() {
        // k = 1, m = 1, row exponent 0: H = [I | I]
        let poly = PrimitivePolynomial::new(0b1101).unwrap();
        let p = build_code(
            3,
            1,
            1,
            poly,
            MatrixSpec::Explicit {
                sigma: vec![vec![0]],
            },
            false,
        )
        .unwrap();
        let h = p.parity_check_matrix();
        for r in 0..3 {
            for c in 0..6 {
                assert_eq!(h.get(r, c), c == r || c == r + 3);
            }
        }
        let w = p.encode(&[sym("101")]);
        assert_eq!(w.symbols, vec![sym("101"), sym("101")]);
    }

    #[test]
    fn encode_worked_examples() {
        let p = presets::code_4_2_3();
        let w = p.encode(&[sym("101"), sym("110")]);
        assert_eq!(w, Word::parse("101 110 011 011").unwrap());
        assert!(p.is_codeword(&w));

        let p = presets::code_8_4_5_cauchy();
        let w = p.encode(&[sym("1101"), sym("0101"), sym("1001"), sym("1001")]);
        assert_eq!(
            w,
            Word::parse("1101 0101 1001 1001 1000 1011 0111 1001").unwrap()
        );
        assert!(p.is_codeword(&w));

        let p = presets::code_10_5_6();
        let zero = p.encode(&[Symbol::ZERO; 5]);
        assert_eq!(zero, Word::zero(10));
    }

    #[test]
    fn syndrome_worked_examples() {
        let p = presets::code_4_2_3();
        let v = Word::parse("110 110 011 011").unwrap();
        let s = p.syndrome(&v);
        assert_eq!(s.s(1), sym("011"));
        assert_eq!(s.s(2), sym("100"));

        let p = presets::code_8_4_5_cauchy();
        let v = Word::parse("1011 0101 0111 1001 1000 1011 0111 1001").unwrap();
        let s = p.syndrome(&v);
        assert_eq!(
            s.0,
            vec![sym("0111"), sym("0110"), sym("0000"), sym("0111")]
        );
    }

    #[test]
    fn syndrome_matches_explicit_parity_check_product() {
        let p = presets::code_8_4_5_cauchy();
        let h = p.parity_check_matrix();
        let b = p.b() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let v = Word::new((0..p.n()).map(|_| Symbol(rng.gen_range(0..16))).collect());
            let s = p.syndrome(&v);
            for row in 0..h.rows() {
                let mut acc = false;
                for col in 0..h.cols() {
                    acc ^= h.get(row, col) && (v.symbols[col / b].0 >> (col % b)) & 1 == 1;
                }
                let bit = (s.0[row / b].0 >> (row % b)) & 1 == 1;
                assert_eq!(acc, bit, "row {row}");
            }
        }
    }

    #[test]
    fn flipping_any_bit_leaves_the_code() {
        let p = presets::code_4_2_3();
        let w = p.encode(&[sym("101"), sym("110")]);
        for pos in 1..=4 {
            for bit in 0..3 {
                let mut v = w.clone();
                v.xor_at(pos, Symbol(1 << bit));
                assert!(!p.is_codeword(&v));
            }
        }
    }

    #[test]
    fn minimum_distance_by_enumeration_on_tiny_codes() {
        // weight of every nonzero codeword is at least m + 1
        for (params, _) in [
            (presets::code_4_2_3(), "4_2_3"),
            (presets::code_6_2_5(), "6_2_5"),
        ] {
            let (b, k) = (params.b(), params.k());
            let total = 1u32 << (b as usize * k);
            let mut min_weight = usize::MAX;
            for raw in 1..total {
                let info: Vec<Symbol> = (0..k)
                    .map(|j| Symbol((raw >> (j as u32 * b)) & ((1 << b) - 1)))
                    .collect();
                let w = params.encode(&info);
                let weight = w.symbols.iter().filter(|s| !s.is_zero()).count();
                min_weight = min_weight.min(weight);
            }
            assert_eq!(min_weight, params.d());
        }
    }

    proptest! {
        #[test]
        fn encode_is_linear(a in proptest::collection::vec(0u32..32, 5),
                            b in proptest::collection::vec(0u32..32, 5)) {
            let p = presets::code_10_5_6();
            let ua: Vec<Symbol> = a.iter().map(|&x| Symbol(x)).collect();
            let ub: Vec<Symbol> = b.iter().map(|&x| Symbol(x)).collect();
            let sum: Vec<Symbol> = ua.iter().zip(&ub).map(|(x, y)| x.xor(*y)).collect();
            let wa = p.encode(&ua);
            let wb = p.encode(&ub);
            let ws = p.encode(&sum);
            let xored: Vec<Symbol> = wa.symbols.iter().zip(&wb.symbols).map(|(x, y)| x.xor(*y)).collect();
            prop_assert_eq!(ws.symbols, xored);
        }

        #[test]
        fn syndrome_depends_only_on_the_error(info in proptest::collection::vec(0u32..32, 5),
                                              err in proptest::collection::vec(0u32..32, 10)) {
            let p = presets::code_10_5_6();
            let c = p.encode(&info.iter().map(|&x| Symbol(x)).collect::<Vec<_>>());
            let e = Word::new(err.iter().map(|&x| Symbol(x)).collect());
            let mut v = c.clone();
            for pos in 1..=10 {
                v.xor_at(pos, e.sym(pos));
            }
            prop_assert_eq!(p.syndrome(&v), p.syndrome(&e));
        }
    }
}
