//! Exact arithmetic in GF(2^b) under a chosen primitive polynomial.
//!
//! Elements live in two interchangeable forms: the *exponent* form
//! [`FieldElement`] (zero, or a power of the primitive element `alpha`) used
//! for arithmetic, and the *coordinate* form [`Symbol`] (b bits, bit `j` the
//! coefficient of `alpha^j` in the basis `{1, alpha, ..., alpha^(b-1)}`) used
//! for I/O. [`FieldTables`] holds the log/antilog tables, the Zech table
//! `Z(n)` defined by `alpha^Z(n) = 1 + alpha^n`, and the Frobenius companion
//! matrix `C` of the polynomial, whose powers realize multiplication:
//! `C^e * s = alpha^e * s` coordinate-wise.
//!
//! All exponent arithmetic is carried out modulo `2^b - 1`, with negative
//! inputs normalized first. `Z(n)` is undefined exactly at `n = 0 (mod
//! 2^b - 1)` because `1 + 1 = 0` in characteristic 2; that case is a hard
//! error here, and additions that hit it return [`FieldElement::Zero`]
//! instead of consulting the table.

use crate::bitmat::BitMatrix;
use crate::ops;
use crate::{Error, Result};

pub const MAX_B: u32 = 16;

/// A primitive polynomial over GF(2), bit `i` of `bits` the coefficient of `x^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitivePolynomial {
    b: u32,
    bits: u32,
}

impl PrimitivePolynomial {
    /// Validates shape only (degree, constant term); primitivity is checked
    /// by [`build_field`].
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 {
            return Err(Error::MalformedPolynomial("zero polynomial".into()));
        }
        let b = 31 - bits.leading_zeros();
        if b == 0 {
            return Err(Error::MalformedPolynomial(
                "degree must be at least 1".into(),
            ));
        }
        if b > MAX_B {
            return Err(Error::MalformedPolynomial(format!(
                "degree {b} exceeds supported maximum {MAX_B}"
            )));
        }
        if bits & 1 == 0 {
            return Err(Error::MalformedPolynomial("constant term must be 1".into()));
        }
        Ok(PrimitivePolynomial { b, bits })
    }

    pub fn degree(&self) -> u32 {
        self.b
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: u32) -> bool {
        i <= self.b && (self.bits >> i) & 1 == 1
    }
}

/// A coordinate vector of b bits; bit `j` is the coefficient of `alpha^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Symbol(pub u32);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn xor(self, other: Symbol) -> Symbol {
        Symbol(self.0 ^ other.0)
    }

    /// Parse a bit string like "0111", leftmost char the coefficient of
    /// `alpha^0`.
    pub fn parse(s: &str) -> Result<Symbol> {
        if s.len() > 32 {
            return Err(Error::Config(format!("symbol bit string too long: {s:?}")));
        }
        let mut bits = 0u32;
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << j,
                _ => return Err(Error::Config(format!("invalid symbol bit string {s:?}"))),
            }
        }
        Ok(Symbol(bits))
    }

    /// Render as a bit string of length `b`, leftmost char the coefficient of
    /// `alpha^0`.
    pub fn bit_string(&self, b: u32) -> String {
        (0..b)
            .map(|j| if (self.0 >> j) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// An element of GF(2^b): zero, or `alpha^e` with `0 <= e < 2^b - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Zero,
    Power(u32),
}

impl FieldElement {
    pub const ONE: FieldElement = FieldElement::Power(0);

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Zero)
    }

    /// The exponent, when nonzero.
    pub fn exponent(&self) -> Option<u32> {
        match self {
            FieldElement::Zero => None,
            FieldElement::Power(e) => Some(*e),
        }
    }
}

/// Precomputed tables for one primitive polynomial.
///
/// Immutable after construction and freely shareable across threads; every
/// operation is a pure function of its inputs.
pub struct FieldTables {
    poly: PrimitivePolynomial,
    b: u32,
    /// 2^b - 1, the order of the multiplicative group.
    q1: u32,
    /// antilog[e] = coordinates of alpha^e; length q1.
    antilog: Vec<u32>,
    /// log[bits] = exponent of the element with those coordinates; log[0] unused.
    log: Vec<u32>,
    /// zech[n] = Z(n); zech[0] = None (undefined).
    zech: Vec<Option<u32>>,
    companion: BitMatrix,
}

const LOG_SENTINEL: u32 = u32::MAX;

/// Builds log/antilog/Zech tables and the companion matrix, verifying along
/// the way that `x` has multiplicative order exactly `2^b - 1`.
pub fn build_field(poly: PrimitivePolynomial) -> Result<FieldTables> {
    let b = poly.degree();
    let q1 = (1u32 << b) - 1;

    let mut antilog = vec![0u32; q1 as usize];
    let mut log = vec![LOG_SENTINEL; 1usize << b];
    let mut cur = 1u32;
    for e in 0..q1 {
        if cur == 1 && e > 0 {
            // cycled back early: order of x divides e < q1
            return Err(Error::NotPrimitive);
        }
        if log[cur as usize] != LOG_SENTINEL {
            // repeated value without reaching 1: x is not even a unit of full order
            return Err(Error::NotPrimitive);
        }
        antilog[e as usize] = cur;
        log[cur as usize] = e;
        cur = mul_by_x(cur, poly);
    }
    if cur != 1 {
        return Err(Error::NotPrimitive);
    }

    let mut zech = vec![None; q1 as usize];
    for n in 1..q1 {
        let sum = 1 ^ antilog[n as usize];
        // sum == 0 only at n == 0, excluded by the loop range
        zech[n as usize] = Some(log[sum as usize]);
    }

    let mut companion = BitMatrix::zero(b as usize, b as usize);
    for r in 1..b as usize {
        companion.set(r, r - 1, true);
    }
    for r in 0..b as usize {
        companion.set(r, b as usize - 1, poly.coeff(r as u32));
    }

    Ok(FieldTables {
        poly,
        b,
        q1,
        antilog,
        log,
        zech,
        companion,
    })
}

/// Multiply a coordinate vector by x, reducing by the polynomial.
fn mul_by_x(v: u32, poly: PrimitivePolynomial) -> u32 {
    let b = poly.degree();
    let shifted = v << 1;
    if (shifted >> b) & 1 == 1 {
        (shifted ^ poly.bits()) & ((1 << b) - 1)
    } else {
        shifted
    }
}

impl FieldTables {
    pub fn poly(&self) -> PrimitivePolynomial {
        self.poly
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Order of the multiplicative group, 2^b - 1.
    pub fn group_order(&self) -> u32 {
        self.q1
    }

    pub fn companion(&self) -> &BitMatrix {
        &self.companion
    }

    /// Normalize an exponent to the canonical range [0, 2^b - 2].
    pub fn norm_exp(&self, e: i64) -> u32 {
        let q1 = self.q1 as i64;
        (((e % q1) + q1) % q1) as u32
    }

    /// Coordinates of `alpha^e`.
    pub fn alpha_pow(&self, e: i64) -> Symbol {
        Symbol(self.antilog[self.norm_exp(e) as usize])
    }

    /// Exponent-form view of a coordinate vector.
    pub fn element(&self, s: Symbol) -> FieldElement {
        if s.is_zero() {
            FieldElement::Zero
        } else {
            FieldElement::Power(self.log[s.0 as usize])
        }
    }

    /// Coordinate-form view of an element.
    pub fn symbol(&self, e: FieldElement) -> Symbol {
        match e {
            FieldElement::Zero => Symbol::ZERO,
            FieldElement::Power(p) => Symbol(self.antilog[self.norm_exp(p as i64) as usize]),
        }
    }

    /// Zech logarithm `Z(n)`, the exponent with `alpha^Z(n) = 1 + alpha^n`.
    pub fn zech(&self, n: i64) -> Result<u32> {
        let n = self.norm_exp(n);
        ops::bump_zech();
        self.zech[n as usize].ok_or(Error::UndefinedZech)
    }

    /// Sum of two elements. Characteristic 2: equal exponents cancel to zero;
    /// otherwise the exponent of the sum is `x + Z(y - x)`.
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Zero, x) | (x, FieldElement::Zero) => x,
            (FieldElement::Power(x), FieldElement::Power(y)) => {
                if x == y {
                    FieldElement::Zero
                } else {
                    let z = self
                        .zech(y as i64 - x as i64)
                        .expect("distinct exponents have a defined Zech logarithm");
                    FieldElement::Power(self.norm_exp(x as i64 + z as i64))
                }
            }
        }
    }

    /// Product of two elements: exponents add mod 2^b - 1, zero absorbs.
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        ops::bump_mult();
        match (a, b) {
            (FieldElement::Zero, _) | (_, FieldElement::Zero) => FieldElement::Zero,
            (FieldElement::Power(x), FieldElement::Power(y)) => {
                FieldElement::Power(self.norm_exp(x as i64 + y as i64))
            }
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match a {
            FieldElement::Zero => Err(Error::DivisionByZero),
            FieldElement::Power(x) => Ok(FieldElement::Power(self.norm_exp(-(x as i64)))),
        }
    }

    /// Integer power, negative `n` through modular reduction of the exponent.
    pub fn pow(&self, a: FieldElement, n: i64) -> Result<FieldElement> {
        match a {
            FieldElement::Zero => match n {
                0 => Ok(FieldElement::ONE),
                n if n > 0 => Ok(FieldElement::Zero),
                _ => Err(Error::DivisionByZero),
            },
            FieldElement::Power(x) => {
                let e = (x as i128 * n as i128).rem_euclid(self.q1 as i128);
                Ok(FieldElement::Power(e as u32))
            }
        }
    }

    /// `C^e * s`: multiply the coordinate vector `s` by `alpha^e`. Table path;
    /// agrees with the explicit bit-matrix product of [`Self::psi_block`].
    pub fn apply_power(&self, e: i64, s: Symbol) -> Symbol {
        ops::bump_mult();
        if s.is_zero() {
            return Symbol::ZERO;
        }
        let log = self.log[s.0 as usize];
        Symbol(self.antilog[self.norm_exp(e + log as i64) as usize])
    }

    /// The b x b matrix `C^(e mod 2^b - 1)`.
    pub fn psi_block(&self, e: i64) -> BitMatrix {
        let b = self.b as usize;
        let mut m = BitMatrix::zero(b, b);
        for c in 0..b {
            let col = self.apply_power(e, Symbol(1 << c));
            for r in 0..b {
                m.set(r, c, (col.0 >> r) & 1 == 1);
            }
        }
        m
    }
}

impl std::fmt::Debug for FieldTables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldTables(b={}, poly={:#b})", self.b, self.poly.bits())
    }
}

/// The canonical table dump: CSV with columns `n, antilog_bits, zech_n`,
/// antilog bits leftmost = coefficient of alpha^0, empty Zech cell where
/// undefined.
pub fn table_csv(tables: &FieldTables) -> String {
    let mut out = String::from("n,antilog_bits,zech_n\n");
    for n in 0..tables.group_order() {
        let bits = tables.alpha_pow(n as i64).bit_string(tables.b());
        let z = tables.zech[n as usize]
            .map(|z| z.to_string())
            .unwrap_or_default();
        out.push_str(&format!("{n},{bits},{z}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn gf(bits: u32) -> FieldTables {
        build_field(PrimitivePolynomial::new(bits).unwrap()).unwrap()
    }

    /// Independent polynomial-arithmetic oracle: alpha^e computed by
    /// square-and-multiply in GF(2)[x] mod p, with schoolbook carry-less
    /// multiplication and long division.
    fn oracle_pow(poly: PrimitivePolynomial, e: u64) -> u32 {
        fn clmul(a: u64, b: u64) -> u64 {
            let mut acc = 0;
            for i in 0..64 {
                if (b >> i) & 1 == 1 {
                    acc ^= a << i;
                }
            }
            acc
        }
        fn reduce(mut v: u64, poly: PrimitivePolynomial) -> u32 {
            let b = poly.degree();
            let p = poly.bits() as u64;
            let mut d = 63 - v.leading_zeros().min(63);
            while v != 0 && d >= b {
                v ^= p << (d - b);
                d = 63 - v.leading_zeros().min(63);
            }
            v as u32
        }
        let mut result = 1u64;
        let mut base = 2u64; // the element x
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = reduce(clmul(result, base), poly) as u64;
            }
            base = reduce(clmul(base, base), poly) as u64;
            e >>= 1;
        }
        result as u32
    }

    #[test]
    fn gf4_antilog_by_hand() {
        let t = gf(0b111); // x^2 + x + 1
        let strings: Vec<String> = (0..3).map(|e| t.alpha_pow(e).bit_string(2)).collect();
        assert_eq!(strings, ["10", "01", "11"]);
    }

    #[test]
    fn gf8_x3_x2_1_companion_column_gives_alpha3() {
        let t = gf(0b1101); // x^3 + x^2 + 1
        assert_eq!(t.alpha_pow(3).bit_string(3), "101");
        // companion: ones on the subdiagonal, last column (p0, p1, p2)
        let c = t.companion();
        let expect = [[0, 0, 1], [1, 0, 0], [0, 1, 1]];
        for r in 0..3 {
            for col in 0..3 {
                assert_eq!(c.get(r, col), expect[r][col] == 1, "({r},{col})");
            }
        }
    }

    #[test]
    fn gf8_x3_x_1_full_table_vs_oracle() {
        let poly = PrimitivePolynomial::new(0b1011).unwrap(); // x^3 + x + 1
        let t = build_field(poly).unwrap();
        let frozen = ["100", "010", "001", "110", "011", "111", "101"];
        for (e, want) in frozen.iter().enumerate() {
            assert_eq!(t.alpha_pow(e as i64).bit_string(3), *want);
            assert_eq!(t.alpha_pow(e as i64).0, oracle_pow(poly, e as u64));
        }
    }

    #[test]
    fn antilog_matches_oracle_across_fields() {
        for bits in [0b111u32, 0b1101, 0b11001, 0b100101, 0b101111, 0b100011101] {
            let poly = PrimitivePolynomial::new(bits).unwrap();
            let t = build_field(poly).unwrap();
            for e in 0..t.group_order() as u64 {
                assert_eq!(
                    t.alpha_pow(e as i64).0,
                    oracle_pow(poly, e),
                    "bits={bits:#b} e={e}"
                );
            }
        }
    }

    #[test]
    fn non_primitive_rejected() {
        // x^4 + x^3 + x^2 + x + 1: x has order 5, not 15
        let poly = PrimitivePolynomial::new(0b11111).unwrap();
        assert!(matches!(build_field(poly), Err(Error::NotPrimitive)));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 is reducible
        let poly = PrimitivePolynomial::new(0b10101).unwrap();
        assert!(matches!(build_field(poly), Err(Error::NotPrimitive)));
    }

    #[test]
    fn malformed_polynomials_rejected() {
        assert!(PrimitivePolynomial::new(0).is_err());
        assert!(PrimitivePolynomial::new(1).is_err()); // degree 0
        assert!(PrimitivePolynomial::new(0b1010).is_err()); // constant term 0
        assert!(PrimitivePolynomial::new(1 << 20 | 1).is_err()); // degree over cap
    }

    #[test]
    fn zech_identity_exhaustive_small_fields() {
        for bits in [
            0b111u32,
            0b1011,
            0b1101,
            0b11001,
            0b100101,
            0b101111,
            0b1000011,
            0b10000011,
            0b100011101,
        ] {
            let t = gf(bits);
            let one = t.alpha_pow(0);
            for n in 1..t.group_order() {
                let z = t.zech(n as i64).unwrap();
                assert_eq!(
                    t.alpha_pow(z as i64),
                    one.xor(t.alpha_pow(n as i64)),
                    "bits={bits:#b} n={n}"
                );
            }
        }
    }

    #[test]
    fn zech_undefined_at_zero() {
        let t = gf(0b1101);
        assert!(matches!(t.zech(0), Err(Error::UndefinedZech)));
        assert!(matches!(t.zech(7), Err(Error::UndefinedZech)));
        assert!(matches!(t.zech(-14), Err(Error::UndefinedZech)));
    }

    #[test]
    fn zech_known_values() {
        let t = gf(0b100101); // x^5 + x^2 + 1
        assert_eq!(t.zech(-1).unwrap(), 17);
        assert_eq!(t.zech(-2).unwrap(), 3);
        // The identity pins Z(-13) = Z(18): alpha^18 = 1 + alpha, so 1 + alpha^18 = alpha.
        assert_eq!(t.alpha_pow(18).bit_string(5), "11000");
        assert_eq!(t.zech(-13).unwrap(), 1);

        let t = gf(0b111); // GF(4)
        assert_eq!(t.zech(1).unwrap(), 2);
    }

    #[test]
    fn add_examples() {
        let t = gf(0b100101);
        let a5 = FieldElement::Power(5);
        assert_eq!(t.add(a5, a5), FieldElement::Zero);
        assert_eq!(
            t.add(FieldElement::Zero, FieldElement::Power(7)),
            FieldElement::Power(7)
        );

        let t = gf(0b11001); // x^4 + x^3 + 1, Z(2) = 9
        assert_eq!(t.zech(2).unwrap(), 9);
        assert_eq!(
            t.add(FieldElement::Power(0), FieldElement::Power(2)),
            FieldElement::Power(9)
        );
    }

    #[test]
    fn mul_inv_pow_examples() {
        let t = gf(0b1101); // b = 3
        assert_eq!(
            t.mul(FieldElement::Power(3), FieldElement::Power(6)),
            FieldElement::Power(2)
        );
        let t = gf(0b11001); // GF(16)
        assert_eq!(
            t.inv(FieldElement::Power(3)).unwrap(),
            FieldElement::Power(12)
        );
        assert!(matches!(
            t.inv(FieldElement::Zero),
            Err(Error::DivisionByZero)
        ));

        let t = gf(0b100101); // GF(32)
        let direct = t.pow(FieldElement::Power(1), -13).unwrap();
        assert_eq!(direct, FieldElement::Power(18));
        // cross-check: invert then multiply 13 times
        let inv = t.inv(FieldElement::Power(1)).unwrap();
        let mut acc = FieldElement::ONE;
        for _ in 0..13 {
            acc = t.mul(acc, inv);
        }
        assert_eq!(acc, direct);
        assert_eq!(t.pow(FieldElement::Zero, 0).unwrap(), FieldElement::ONE);
        assert!(t.pow(FieldElement::Zero, -1).is_err());
    }

    #[test]
    fn companion_power_apply_examples() {
        let t = gf(0b1101);
        let s = Symbol::parse("110").unwrap();
        assert_eq!(t.apply_power(0, s), s);
        assert_eq!(
            t.apply_power(1, Symbol::parse("100").unwrap()),
            Symbol::parse("010").unwrap()
        );
        assert_eq!(
            t.apply_power(1, Symbol::parse("001").unwrap()),
            Symbol::parse("101").unwrap()
        );
    }

    #[test]
    fn companion_power_bit_matrix_path_equals_table_path() {
        for bits in [0b111u32, 0b1101, 0b11001, 0b100101] {
            let t = gf(bits);
            for e in 0..t.group_order() as i64 {
                let m = t.psi_block(e);
                for s in 0..(1u32 << t.b()) {
                    assert_eq!(
                        m.mul_col(s),
                        t.apply_power(e, Symbol(s)).0,
                        "bits={bits:#b} e={e} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn psi_block_examples() {
        let t = gf(0b1101);
        assert_eq!(t.psi_block(0), BitMatrix::identity(3));
        assert_eq!(t.psi_block(7), BitMatrix::identity(3)); // wraparound
        let t = gf(0b101111); // x^5 + x^3 + x^2 + x + 1
        assert_eq!(&t.psi_block(1), t.companion());
    }

    #[test]
    fn table_csv_shape() {
        let t = gf(0b1101);
        let csv = table_csv(&t);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,antilog_bits,zech_n");
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[1], "0,100,"); // Z(0) undefined -> empty cell
        assert_eq!(lines[4], "3,101,2"); // 1 + alpha^3 = alpha^2
    }

    proptest! {
        #[test]
        fn field_axioms(xs in proptest::collection::vec(0u32..32, 3)) {
            let t = gf(0b100101);
            let el = |v: u32| if v == 31 { FieldElement::Zero } else { FieldElement::Power(v) };
            let (a, b, c) = (el(xs[0]), el(xs[1]), el(xs[2]));
            prop_assert_eq!(t.add(a, b), t.add(b, a));
            prop_assert_eq!(t.mul(a, b), t.mul(b, a));
            prop_assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
            prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
            prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
            if !a.is_zero() {
                prop_assert_eq!(t.mul(a, t.inv(a).unwrap()), FieldElement::ONE);
            }
        }

        #[test]
        fn add_matches_coordinate_xor(x in 0u32..15, y in 0u32..15) {
            let t = gf(0b11001);
            let (a, b) = (FieldElement::Power(x), FieldElement::Power(y));
            let via_zech = t.symbol(t.add(a, b));
            let via_xor = t.symbol(a).xor(t.symbol(b));
            prop_assert_eq!(via_zech, via_xor);
        }

        #[test]
        fn psi_is_a_ring_homomorphism(x in 0i64..15, y in 0i64..15) {
            let t = gf(0b11001);
            prop_assert_eq!(t.psi_block(x).mul(&t.psi_block(y)), t.psi_block(x + y));
            let sum = t.add(FieldElement::Power(x as u32), FieldElement::Power(y as u32));
            let xored = t.psi_block(x).xor(&t.psi_block(y));
            match sum {
                FieldElement::Zero => prop_assert!(xored.is_zero()),
                FieldElement::Power(z) => prop_assert_eq!(xored, t.psi_block(z as i64)),
            }
        }

        #[test]
        fn symbol_element_round_trip(s in 0u32..32) {
            let t = gf(0b100101);
            let sym = Symbol(s);
            prop_assert_eq!(t.symbol(t.element(sym)), sym);
        }
    }
}
