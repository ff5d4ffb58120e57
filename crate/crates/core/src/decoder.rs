//! Syndrome decoding of one, two, and three symbol errors at unknown
//! locations.
//!
//! Everything runs off the per-hypothesis vectors
//!
//! ```text
//! y_1 = s_1 + C^(sigma(1,l1) - sigma(m,l1)) s_m          (cyclic wrap)
//! y_i = s_i + C^(sigma(i,l1) - sigma(i-1,l1)) s_(i-1)    i = 2..m
//! ```
//!
//! which cancel the contribution of a hypothesized information-symbol error
//! at column `l1`. The error configuration then shows up as a pattern:
//!
//! * single error at `l1`: every `y_i` vanishes;
//! * error at `l1` plus one parity error at `k+j`: exactly the cyclically
//!   adjacent pair `y_j, y_(j+1)` is nonzero;
//! * second information error at `l2`: no `y_i` vanishes and the tail obeys
//!   the one-term recurrence `y_i = C^(r_(i-2)) y_(i-1)` for `i = 3..m`;
//! * information errors at `l2 < l3`: the tail obeys the two-term recurrence
//!   `y_i = C1_i y_(i-1) + C2_i y_(i-2)` for `i = 4..m`, with coefficients
//!   composed from the same 2x2-minor identities.
//!
//! On Vandermonde grids the recurrence exponents collapse to closed forms
//! ([`vandermonde_r`], [`vandermonde_rhat`]) that skip the per-row Zech
//! evaluations of the generic path.
//!
//! Scan order is deterministic: `l1` ascending, `l2` ascending above `l1`,
//! triples lexicographic; the first consistent hypothesis wins. Within the
//! correction radius that hypothesis is unique, so order only affects
//! behavior beyond the radius. Every accepted correction set is checked
//! against the full syndrome before being returned, so a `Corrected` outcome
//! always maps the input to a codeword.

use crate::code::{CodeParams, Syndrome, Word};
use crate::comb::combinations;
use crate::field::{FieldElement, Symbol};
use crate::{Error, Result};

/// One corrected symbol: 1-based position and the XOR magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub position: usize,
    pub magnitude: Symbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// The scan was exhausted: more errors than the decoder's radius.
    RadiusExceeded,
    /// No hypothesis within the oracle's radius explains the syndrome.
    NoConsistentHypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    NoError,
    Corrected(Vec<Correction>),
    Failure(FailureReason),
}

impl DecodeOutcome {
    pub fn corrections(&self) -> Option<&[Correction]> {
        match self {
            DecodeOutcome::Corrected(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, DecodeOutcome::Failure(_))
    }

    /// The input with corrections applied (identity for non-corrected
    /// outcomes).
    pub fn apply_to(&self, v: &Word) -> Word {
        let mut out = v.clone();
        if let DecodeOutcome::Corrected(corr) = self {
            for c in corr {
                out.xor_at(c.position, c.magnitude);
            }
        }
        out
    }
}

/// Which recurrence-exponent path the two- and three-error scans use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RStrategy {
    Generic,
    VandermondeFast,
}

/// Optional per-decode diagnostic log, one step per line.
#[derive(Debug)]
pub enum Trace {
    Off,
    On(Vec<String>),
}

impl Trace {
    pub fn new(enabled: bool) -> Self {
        if enabled {
            Trace::On(Vec::new())
        } else {
            Trace::Off
        }
    }

    pub fn enabled(&self) -> bool {
        matches!(self, Trace::On(_))
    }

    pub fn lines(&self) -> &[String] {
        match self {
            Trace::Off => &[],
            Trace::On(lines) => lines,
        }
    }

    fn line(&mut self, f: impl FnOnce() -> String) {
        if let Trace::On(lines) = self {
            lines.push(f());
        }
    }
}

/// The error-cancellation vectors for a hypothesized first error column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YVector(pub Vec<Symbol>);

impl YVector {
    /// 1-based access.
    #[inline]
    pub fn y(&self, i: usize) -> Symbol {
        self.0[i - 1]
    }

    pub fn nonzero_indices(&self) -> Vec<usize> {
        (1..=self.0.len())
            .filter(|&i| !self.y(i).is_zero())
            .collect()
    }
}

/// Computes the y-vectors for column hypothesis `l1` (requires m >= 2).
pub fn compute_y(params: &CodeParams, s: &Syndrome, l1: usize) -> YVector {
    let m = params.m();
    debug_assert!(m >= 2 && l1 >= 1 && l1 <= params.k());
    let t = params.tables();
    let mut y = Vec::with_capacity(m);
    y.push(
        s.s(1)
            .xor(t.apply_power(params.sig(1, l1) - params.sig(m, l1), s.s(m))),
    );
    for i in 2..=m {
        y.push(
            s.s(i)
                .xor(t.apply_power(params.sig(i, l1) - params.sig(i - 1, l1), s.s(i - 1))),
        );
    }
    YVector(y)
}

/// Recurrence exponent `r_(i-2)` linking `y_i` to `y_(i-1)` under the
/// hypothesis of information errors at columns `l1` and `l2`:
///
/// ```text
/// r_(i-2) = sigma(i,l2) - sigma(i-1,l2)
///         + Z(sigma(i,l1) - sigma(i,l2) - sigma(i-1,l1) + sigma(i-1,l2))
///         - Z(sigma(i-1,l1) - sigma(i-1,l2) - sigma(i-2,l1) + sigma(i-2,l2))
/// ```
///
/// Both Zech arguments are nonzero whenever the grid's 2x2 minors are
/// nonsingular; an `UndefinedZech` therefore signals a non-superregular
/// (trusted) grid and rejects the hypothesis.
pub fn r_generic(params: &CodeParams, l1: usize, l2: usize, i: usize) -> Result<u32> {
    debug_assert!(i >= 3 && i <= params.m() && l1 != l2);
    let t = params.tables();
    let sg = |r, c| params.sig(r, c);
    let z1 = t.zech(sg(i, l1) - sg(i, l2) - sg(i - 1, l1) + sg(i - 1, l2))?;
    let z2 = t.zech(sg(i - 1, l1) - sg(i - 1, l2) - sg(i - 2, l1) + sg(i - 2, l2))?;
    Ok(t.norm_exp(sg(i, l2) - sg(i - 1, l2) + z1 as i64 - z2 as i64))
}

fn vandermonde_points(params: &CodeParams) -> Result<&[u32]> {
    match params.spec() {
        crate::matrix::MatrixSpec::Vandermonde { points } => Ok(points),
        _ => Err(Error::WrongMatrixKind),
    }
}

/// Closed-form replacement for [`r_generic`] on Vandermonde grids: the
/// consecutive-row law makes the two Zech terms cancel, leaving the
/// evaluation exponent of column `l2` (which is `l2` itself under the
/// standard `a_j = j` convention), independent of `l1` and `i`.
pub fn vandermonde_r(params: &CodeParams, l2: usize) -> Result<u32> {
    let pts = vandermonde_points(params)?;
    Ok(params.tables().norm_exp(pts[l2 - 1] as i64))
}

/// Two-term recurrence coefficients `(C1_i, C2_i)` with
/// `y_i = C1_i y_(i-1) + C2_i y_(i-2)` under the hypothesis of information
/// errors at `l1 < l2 < l3`, for `4 <= i <= m`.
///
/// Under that hypothesis `y_j = A_j e_(l2) + B_j e_(l3)` for `j >= 2`, with
///
/// ```text
/// A_j = C^sigma(j,l2) + C^(sigma(j,l1) - sigma(j-1,l1) + sigma(j-1,l2))
/// B_j = C^sigma(j,l3) + C^(sigma(j,l1) - sigma(j-1,l1) + sigma(j-1,l3))
/// ```
///
/// Eliminating `e_(l2)` through row `i-2` and `e_(l3)` through row `i-1`
/// gives
///
/// ```text
/// C1_i = U_i / Bbar       with U_i = B_i + (A_i / A_(i-2)) B_(i-2)
/// C2_i = A_i / A_(i-2) + C1_i * (A_(i-1) / A_(i-2))
/// Bbar = B_(i-1) + (A_(i-1) / A_(i-2)) B_(i-2)
/// ```
///
/// The composition is carried out on field elements (exponent-or-zero), so a
/// sum that collapses to zero yields a zero-matrix coefficient instead of an
/// undefined Zech lookup. Only `Bbar = 0` (or a vanishing `A`/`B`, which a
/// superregular grid excludes) leaves the triple without a usable relation;
/// that case surfaces as [`Error::DegenerateRelation`] and the caller falls
/// back to solve-and-verify.
pub fn three_error_exponents(
    params: &CodeParams,
    l1: usize,
    l2: usize,
    l3: usize,
    i: usize,
) -> Result<(FieldElement, FieldElement)> {
    debug_assert!(l1 < l2 && l2 < l3 && l3 <= params.k());
    debug_assert!(i >= 4 && i <= params.m());
    let t = params.tables();
    let coeff = |j: usize, l: usize| -> FieldElement {
        t.add(
            FieldElement::Power(params.matrix().sigma(j, l)),
            FieldElement::Power(
                t.norm_exp(params.sig(j, l1) - params.sig(j - 1, l1) + params.sig(j - 1, l)),
            ),
        )
    };
    let (a_i, a_i1, a_i2) = (coeff(i, l2), coeff(i - 1, l2), coeff(i - 2, l2));
    let (b_i, b_i1, b_i2) = (coeff(i, l3), coeff(i - 1, l3), coeff(i - 2, l3));
    if [a_i, a_i1, a_i2, b_i, b_i1, b_i2]
        .iter()
        .any(FieldElement::is_zero)
    {
        return Err(Error::DegenerateRelation);
    }
    let inv_a2 = t.inv(a_i2).unwrap();
    let bar_a = t.mul(a_i1, inv_a2);
    let bar_b = t.add(b_i1, t.mul(bar_a, b_i2));
    if bar_b.is_zero() {
        return Err(Error::DegenerateRelation);
    }
    let ratio = t.mul(a_i, inv_a2);
    let u = t.add(b_i, t.mul(ratio, b_i2));
    let c1 = t.mul(u, t.inv(bar_b).unwrap());
    let c2 = t.add(ratio, t.mul(c1, bar_a));
    Ok((c1, c2))
}

/// Closed form of [`three_error_exponents`] on Vandermonde grids,
/// independent of `l1` and `i`.
///
/// With evaluation exponents `a_2 = a(l2)`, `a_3 = a(l3)` the y-tail is a
/// linear combination of the two geometric progressions with ratios
/// `alpha^a_2` and `alpha^a_3`, so the recurrence coefficients are their
/// elementary symmetric functions:
///
/// ```text
/// C1 = alpha^a_2 + alpha^a_3 = alpha^(a_3 + Z(a_2 - a_3))
/// C2 = alpha^(a_2 + a_3)
/// ```
///
/// The pair is symmetric in `l2` and `l3`.
pub fn vandermonde_rhat(
    params: &CodeParams,
    l2: usize,
    l3: usize,
) -> Result<(FieldElement, FieldElement)> {
    let pts = vandermonde_points(params)?;
    let t = params.tables();
    let a2 = pts[l2 - 1] as i64;
    let a3 = pts[l3 - 1] as i64;
    let z = t.zech(a2 - a3)?;
    let c1 = FieldElement::Power(t.norm_exp(a3 + z as i64));
    let c2 = FieldElement::Power(t.norm_exp(a2 + a3));
    Ok((c1, c2))
}

/// Solves the t x t block system `sum_j C^sigma(row_i, pos_j) e_j = s_row_i`
/// over GF(2^b). The coefficient grid is a minor of the superregular matrix,
/// so the solution is unique; a singular system signals a grid that was
/// trusted without being superregular.
pub fn solve_magnitudes(
    params: &CodeParams,
    positions: &[usize],
    rows: &[usize],
    s: &Syndrome,
) -> Result<Vec<Symbol>> {
    let t = positions.len();
    debug_assert_eq!(rows.len(), t);
    let tb = params.tables();
    crate::ops::bump_solve();
    let mut a: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|&r| {
            positions
                .iter()
                .map(|&p| FieldElement::Power(params.matrix().sigma(r, p)))
                .collect()
        })
        .collect();
    let mut rhs: Vec<FieldElement> = rows.iter().map(|&r| tb.element(s.s(r))).collect();
    for col in 0..t {
        let Some(p) = (col..t).find(|&r| !a[r][col].is_zero()) else {
            return Err(Error::SingularSystem);
        };
        a.swap(col, p);
        rhs.swap(col, p);
        let inv = tb.inv(a[col][col]).unwrap();
        for c in col..t {
            a[col][c] = tb.mul(a[col][c], inv);
        }
        rhs[col] = tb.mul(rhs[col], inv);
        for r in 0..t {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..t {
                    a[r][c] = tb.add(a[r][c], tb.mul(f, a[col][c]));
                }
                rhs[r] = tb.add(rhs[r], tb.mul(f, rhs[col]));
            }
        }
    }
    Ok(rhs.into_iter().map(|e| tb.symbol(e)).collect())
}

/// True iff XOR-ing the corrections into the received word would zero the
/// syndrome, i.e. the corrections alone reproduce `s`.
fn corrections_explain_syndrome(params: &CodeParams, s: &Syndrome, corr: &[Correction]) -> bool {
    let (m, k) = (params.m(), params.k());
    let t = params.tables();
    let mut acc = vec![Symbol::ZERO; m];
    for c in corr {
        if c.position <= k {
            for (i, slot) in acc.iter_mut().enumerate() {
                *slot = slot.xor(t.apply_power(params.sig(i + 1, c.position), c.magnitude));
            }
        } else {
            let i = c.position - k - 1;
            acc[i] = acc[i].xor(c.magnitude);
        }
    }
    acc.iter().enumerate().all(|(i, sym)| *sym == s.s(i + 1))
}

fn fmt_syms(b: u32, syms: &[Symbol]) -> String {
    syms.iter()
        .map(|s| s.bit_string(b))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Registers a consistent hypothesis. Returns true when the caller should
/// stop scanning: the first hit wins, but a trace-enabled decode keeps going
/// so that later consistent hypotheses (possible only beyond the radius) are
/// flagged.
fn register_accept(
    slot: &mut Option<Vec<Correction>>,
    corr: Vec<Correction>,
    trace: &mut Trace,
    desc: String,
) -> bool {
    if slot.is_none() {
        trace.line(|| format!("accept {desc}"));
        *slot = Some(corr);
        !trace.enabled()
    } else {
        trace.line(|| format!("AMBIGUOUS_OUTSIDE_RADIUS: {desc} also consistent"));
        false
    }
}

/// Corrects a single symbol error (requires m >= 2).
pub struct SingleErrorDecoder<'a> {
    params: &'a CodeParams,
}

impl<'a> SingleErrorDecoder<'a> {
    pub fn new(params: &'a CodeParams) -> Result<Self> {
        if params.m() < 2 {
            return Err(Error::UnsupportedRadius {
                radius: 1,
                m: params.m(),
            });
        }
        Ok(SingleErrorDecoder { params })
    }

    pub fn decode(&self, v: &Word) -> DecodeOutcome {
        self.decode_traced(v, &mut Trace::Off)
    }

    pub fn decode_traced(&self, v: &Word, trace: &mut Trace) -> DecodeOutcome {
        let p = self.params;
        let (m, k, b) = (p.m(), p.k(), p.b());
        let s = p.syndrome(v);
        trace.line(|| format!("s: {}", fmt_syms(b, &s.0)));
        let nz = s.nonzero_indices();
        if nz.is_empty() {
            return DecodeOutcome::NoError;
        }
        // single nonzero syndrome: the error sits in that parity symbol
        if nz.len() == 1 {
            let j = nz[0];
            return DecodeOutcome::Corrected(vec![Correction {
                position: k + j,
                magnitude: s.s(j),
            }]);
        }
        let mut accepted = None;
        for l1 in 1..=k {
            let y = compute_y(p, &s, l1);
            trace.line(|| format!("l1={l1} y: {}", fmt_syms(b, &y.0)));
            if !y.nonzero_indices().is_empty() {
                continue;
            }
            let e = p.tables().apply_power(-p.sig(1, l1), s.s(1));
            debug_assert!((1..=m).all(|i| p.tables().apply_power(-p.sig(i, l1), s.s(i)) == e));
            let corr = vec![Correction {
                position: l1,
                magnitude: e,
            }];
            if e.is_zero() || !corrections_explain_syndrome(p, &s, &corr) {
                continue;
            }
            if register_accept(&mut accepted, corr, trace, format!("info l1={l1}")) {
                break;
            }
        }
        match accepted {
            Some(corr) => DecodeOutcome::Corrected(corr),
            None => DecodeOutcome::Failure(FailureReason::RadiusExceeded),
        }
    }
}

/// Corrects up to two symbol errors (requires m >= 4).
pub struct DoubleErrorDecoder<'a> {
    params: &'a CodeParams,
    strategy: RStrategy,
}

impl<'a> DoubleErrorDecoder<'a> {
    pub fn new(params: &'a CodeParams) -> Result<Self> {
        Self::with_strategy(params, RStrategy::Generic)
    }

    pub fn with_strategy(params: &'a CodeParams, strategy: RStrategy) -> Result<Self> {
        if params.m() < 4 {
            return Err(Error::UnsupportedRadius {
                radius: 2,
                m: params.m(),
            });
        }
        if strategy == RStrategy::VandermondeFast {
            vandermonde_points(params)?;
        }
        Ok(DoubleErrorDecoder { params, strategy })
    }

    pub fn decode(&self, v: &Word) -> DecodeOutcome {
        self.decode_traced(v, &mut Trace::Off)
    }

    pub fn decode_traced(&self, v: &Word, trace: &mut Trace) -> DecodeOutcome {
        let p = self.params;
        let s = p.syndrome(v);
        trace.line(|| format!("s: {}", fmt_syms(p.b(), &s.0)));
        let nz = s.nonzero_indices();
        if nz.is_empty() {
            return DecodeOutcome::NoError;
        }
        // one or two nonzero syndromes: parity-only error pattern
        if nz.len() <= 2 {
            return DecodeOutcome::Corrected(
                nz.iter()
                    .map(|&j| Correction {
                        position: p.k() + j,
                        magnitude: s.s(j),
                    })
                    .collect(),
            );
        }
        match scan_two(p, &s, self.strategy, trace) {
            Some(corr) => DecodeOutcome::Corrected(corr),
            None => DecodeOutcome::Failure(FailureReason::RadiusExceeded),
        }
    }
}

/// The information-error scan shared by the two- and three-error decoders:
/// for each hypothesized `l1` try, in order, a lone information error (all y
/// zero), an information+parity pair (exactly one cyclically adjacent
/// nonzero y pair), and a second information error at each `l2 > l1` via the
/// one-term recurrence.
fn scan_two(
    p: &CodeParams,
    s: &Syndrome,
    strategy: RStrategy,
    trace: &mut Trace,
) -> Option<Vec<Correction>> {
    let (m, k, b) = (p.m(), p.k(), p.b());
    let t = p.tables();
    let mut accepted = None;
    'outer: for l1 in 1..=k {
        let y = compute_y(p, s, l1);
        trace.line(|| format!("l1={l1} y: {}", fmt_syms(b, &y.0)));
        let ynz = y.nonzero_indices();

        if ynz.is_empty() {
            // lone information error at l1
            let e = t.apply_power(-p.sig(1, l1), s.s(1));
            let corr = vec![Correction {
                position: l1,
                magnitude: e,
            }];
            if !e.is_zero()
                && corrections_explain_syndrome(p, s, &corr)
                && register_accept(&mut accepted, corr, trace, format!("info l1={l1}"))
            {
                break 'outer;
            }
            continue;
        }

        if let Some(j) = adjacent_nonzero_pair(&ynz, m) {
            // information error at l1 plus parity error at k+j: recover the
            // information magnitude from any row other than j
            let i0 = if j == 1 { 2 } else { 1 };
            let e1 = t.apply_power(-p.sig(i0, l1), s.s(i0));
            let ep = s.s(j).xor(t.apply_power(p.sig(j, l1), e1));
            if !e1.is_zero() && !ep.is_zero() {
                let corr = vec![
                    Correction {
                        position: l1,
                        magnitude: e1,
                    },
                    Correction {
                        position: k + j,
                        magnitude: ep,
                    },
                ];
                if corrections_explain_syndrome(p, s, &corr) {
                    if register_accept(
                        &mut accepted,
                        corr,
                        trace,
                        format!("info l1={l1} + parity j={j}"),
                    ) {
                        break 'outer;
                    }
                    continue;
                }
            }
        }

        // second information error at some l2 > l1
        'l2: for l2 in l1 + 1..=k {
            let mut rs = Vec::with_capacity(m - 2);
            for i in 3..=m {
                let r = match strategy {
                    RStrategy::Generic => r_generic(p, l1, l2, i),
                    RStrategy::VandermondeFast => vandermonde_r(p, l2),
                };
                let Ok(r) = r else {
                    trace.line(|| format!("l1={l1} l2={l2} degenerate r, reject"));
                    continue 'l2;
                };
                rs.push(r);
                if y.y(i) != t.apply_power(r as i64, y.y(i - 1)) {
                    trace.line(|| format!("l1={l1} l2={l2} r={rs:?} reject at i={i}"));
                    continue 'l2;
                }
            }
            trace.line(|| format!("l1={l1} l2={l2} r={rs:?} recurrence holds"));
            let Ok(mags) = solve_magnitudes(p, &[l1, l2], &[1, 2], s) else {
                continue;
            };
            if mags.iter().any(Symbol::is_zero) {
                continue;
            }
            let corr = vec![
                Correction {
                    position: l1,
                    magnitude: mags[0],
                },
                Correction {
                    position: l2,
                    magnitude: mags[1],
                },
            ];
            if corrections_explain_syndrome(p, s, &corr)
                && register_accept(&mut accepted, corr, trace, format!("info l1={l1} l2={l2}"))
            {
                break 'outer;
            }
        }
    }
    accepted
}

/// If the 1-based indices form exactly one cyclically adjacent pair, returns
/// the parity row j such that the pair is (y_j, y_(j+1)), with (y_m, y_1)
/// mapping to j = m.
fn adjacent_nonzero_pair(ynz: &[usize], m: usize) -> Option<usize> {
    if ynz.len() != 2 {
        return None;
    }
    let (a, b) = (ynz[0], ynz[1]);
    if b == a + 1 {
        Some(a)
    } else if a == 1 && b == m {
        Some(m)
    } else {
        None
    }
}

/// Corrects up to three symbol errors (requires m >= 6).
///
/// Dispatch order: pure-parity patterns straight from the syndrome, then the
/// two-error information paths, then the lexicographic `(l1, l2, l3)` scan
/// with the two-term recurrence, and finally the hypothesis search, which
/// covers the mixed two-information-plus-parity and
/// one-information-plus-two-parity configurations.
pub struct TripleErrorDecoder<'a> {
    params: &'a CodeParams,
    strategy: RStrategy,
}

impl<'a> TripleErrorDecoder<'a> {
    pub fn new(params: &'a CodeParams) -> Result<Self> {
        Self::with_strategy(params, RStrategy::Generic)
    }

    pub fn with_strategy(params: &'a CodeParams, strategy: RStrategy) -> Result<Self> {
        if params.m() < 6 {
            return Err(Error::UnsupportedRadius {
                radius: 3,
                m: params.m(),
            });
        }
        if strategy == RStrategy::VandermondeFast {
            vandermonde_points(params)?;
        }
        Ok(TripleErrorDecoder { params, strategy })
    }

    pub fn decode(&self, v: &Word) -> DecodeOutcome {
        self.decode_traced(v, &mut Trace::Off)
    }

    pub fn decode_traced(&self, v: &Word, trace: &mut Trace) -> DecodeOutcome {
        let p = self.params;
        let (m, k, b) = (p.m(), p.k(), p.b());
        let t = p.tables();
        let s = p.syndrome(v);
        trace.line(|| format!("s: {}", fmt_syms(b, &s.0)));
        let nz = s.nonzero_indices();
        if nz.is_empty() {
            return DecodeOutcome::NoError;
        }
        // with at most three errors, three or fewer nonzero syndromes can
        // only come from parity-symbol errors
        if nz.len() <= 3 {
            return DecodeOutcome::Corrected(
                nz.iter()
                    .map(|&j| Correction {
                        position: k + j,
                        magnitude: s.s(j),
                    })
                    .collect(),
            );
        }
        if let Some(corr) = scan_two(p, &s, self.strategy, trace) {
            return DecodeOutcome::Corrected(corr);
        }
        let mut accepted = None;
        'outer: for l1 in 1..=k {
            let y = compute_y(p, &s, l1);
            for l2 in l1 + 1..=k {
                'l3: for l3 in l2 + 1..=k {
                    let mut coeffs = Vec::with_capacity(m - 3);
                    let mut degenerate = false;
                    for i in 4..=m {
                        let pair = match self.strategy {
                            RStrategy::Generic => three_error_exponents(p, l1, l2, l3, i),
                            RStrategy::VandermondeFast => vandermonde_rhat(p, l2, l3),
                        };
                        match pair {
                            Ok(c) => coeffs.push(c),
                            Err(_) => {
                                degenerate = true;
                                break;
                            }
                        }
                    }
                    if !degenerate {
                        for (idx, i) in (4..=m).enumerate() {
                            let (c1, c2) = coeffs[idx];
                            let want =
                                apply_coeff(t, c1, y.y(i - 1)).xor(apply_coeff(t, c2, y.y(i - 2)));
                            if y.y(i) != want {
                                trace.line(|| format!("l1={l1} l2={l2} l3={l3} reject at i={i}"));
                                continue 'l3;
                            }
                        }
                        trace.line(|| format!("l1={l1} l2={l2} l3={l3} recurrence holds"));
                    } else {
                        trace.line(|| {
                            format!("l1={l1} l2={l2} l3={l3} degenerate relation, solve-and-verify")
                        });
                    }
                    let Ok(mags) = solve_magnitudes(p, &[l1, l2, l3], &[1, 2, 3], &s) else {
                        continue;
                    };
                    if mags.iter().any(Symbol::is_zero) {
                        continue;
                    }
                    let corr: Vec<Correction> = [l1, l2, l3]
                        .iter()
                        .zip(&mags)
                        .map(|(&pos, &mag)| Correction {
                            position: pos,
                            magnitude: mag,
                        })
                        .collect();
                    if corrections_explain_syndrome(p, &s, &corr)
                        && register_accept(
                            &mut accepted,
                            corr,
                            trace,
                            format!("info l1={l1} l2={l2} l3={l3}"),
                        )
                    {
                        break 'outer;
                    }
                }
            }
        }
        if let Some(corr) = accepted {
            return DecodeOutcome::Corrected(corr);
        }
        // mixed configurations (2 info + 1 parity, 1 info + 2 parity)
        match hypothesis_decode(p, v, 3) {
            DecodeOutcome::Failure(_) => DecodeOutcome::Failure(FailureReason::RadiusExceeded),
            other => other,
        }
    }
}

fn apply_coeff(t: &crate::field::FieldTables, c: FieldElement, s: Symbol) -> Symbol {
    match c {
        FieldElement::Zero => Symbol::ZERO,
        FieldElement::Power(e) => t.apply_power(e as i64, s),
    }
}

/// Minimum-weight hypothesis search: enumerate error supports of total
/// weight <= t (ascending weight, then lexicographic by position set), solve
/// for the information magnitudes from the lowest rows outside the
/// hypothesized parity rows, and accept the first support whose magnitudes
/// are all nonzero and reproduce the full syndrome. Within the code's radius
/// the accepted support is unique.
pub fn hypothesis_decode(params: &CodeParams, v: &Word, t: usize) -> DecodeOutcome {
    let (m, k, n) = (params.m(), params.k(), params.n());
    let s = params.syndrome(v);
    if s.is_zero() {
        return DecodeOutcome::NoError;
    }
    for w in 1..=t.min(n) {
        for support in combinations(n, w) {
            let positions: Vec<usize> = support.iter().map(|&p| p + 1).collect();
            let info: Vec<usize> = positions.iter().copied().filter(|&p| p <= k).collect();
            let parity_rows: Vec<usize> = positions
                .iter()
                .copied()
                .filter(|&p| p > k)
                .map(|p| p - k)
                .collect();
            if info.len() + parity_rows.len() > m {
                continue;
            }
            let solve_rows: Vec<usize> = (1..=m)
                .filter(|r| !parity_rows.contains(r))
                .take(info.len())
                .collect();
            if solve_rows.len() < info.len() {
                continue;
            }
            let info_mags = if info.is_empty() {
                Vec::new()
            } else {
                match solve_magnitudes(params, &info, &solve_rows, &s) {
                    Ok(mags) => mags,
                    Err(_) => continue,
                }
            };
            if info_mags.iter().any(Symbol::is_zero) {
                continue;
            }
            let info_corr: Vec<Correction> = info
                .iter()
                .zip(&info_mags)
                .map(|(&pos, &mag)| Correction {
                    position: pos,
                    magnitude: mag,
                })
                .collect();
            let tb = params.tables();
            let mut corr = info_corr.clone();
            let mut parity_ok = true;
            for &j in &parity_rows {
                let mut mag = s.s(j);
                for c in &info_corr {
                    mag = mag.xor(tb.apply_power(params.sig(j, c.position), c.magnitude));
                }
                if mag.is_zero() {
                    parity_ok = false;
                    break;
                }
                corr.push(Correction {
                    position: k + j,
                    magnitude: mag,
                });
            }
            if !parity_ok {
                continue;
            }
            corr.sort_by_key(|c| c.position);
            if corrections_explain_syndrome(params, &s, &corr) {
                return DecodeOutcome::Corrected(corr);
            }
        }
    }
    DecodeOutcome::Failure(FailureReason::NoConsistentHypothesis)
}

/// Nearest-codeword oracle for tiny codes: enumerates all `2^(k*b)`
/// codewords and returns the unique one within symbol distance `t` of `v`.
pub fn brute_force_decode(params: &CodeParams, v: &Word, t: usize) -> Result<DecodeOutcome> {
    let kb = params.k() as u32 * params.b();
    if kb > 20 {
        return Err(Error::TooLarge(format!(
            "brute force enumerates 2^{kb} codewords"
        )));
    }
    let (b, k) = (params.b(), params.k());
    let mask = (1u32 << b) - 1;
    let mut best: Option<(usize, Word)> = None;
    let mut tie = false;
    for raw in 0..(1u64 << kb) {
        let info: Vec<Symbol> = (0..k)
            .map(|j| Symbol(((raw >> (j as u32 * b)) as u32) & mask))
            .collect();
        let c = params.encode(&info);
        let dist = c
            .symbols
            .iter()
            .zip(&v.symbols)
            .filter(|(a, b)| a != b)
            .count();
        match &best {
            Some((d, _)) if dist > *d => {}
            Some((d, _)) if dist == *d => tie = true,
            _ => {
                best = Some((dist, c));
                tie = false;
            }
        }
    }
    let (dist, codeword) = best.expect("at least the zero codeword exists");
    if dist > t || (tie && dist > 0) {
        return Ok(DecodeOutcome::Failure(
            FailureReason::NoConsistentHypothesis,
        ));
    }
    if dist == 0 {
        return Ok(DecodeOutcome::NoError);
    }
    let corr: Vec<Correction> = (1..=params.n())
        .filter(|&pos| v.sym(pos) != codeword.sym(pos))
        .map(|pos| Correction {
            position: pos,
            magnitude: v.sym(pos).xor(codeword.sym(pos)),
        })
        .collect();
    Ok(DecodeOutcome::Corrected(corr))
}

/// A decoder chosen by target radius, holding its parameter checks.
pub enum AnyDecoder<'a> {
    Single(SingleErrorDecoder<'a>),
    Double(DoubleErrorDecoder<'a>),
    Triple(TripleErrorDecoder<'a>),
    Hypothesis { params: &'a CodeParams, t: usize },
}

impl<'a> AnyDecoder<'a> {
    /// The specialized decoder for radius `t` (t = 0 decodes as radius 1).
    pub fn for_radius(params: &'a CodeParams, t: usize, strategy: RStrategy) -> Result<Self> {
        match t {
            0 | 1 => Ok(AnyDecoder::Single(SingleErrorDecoder::new(params)?)),
            2 => Ok(AnyDecoder::Double(DoubleErrorDecoder::with_strategy(
                params, strategy,
            )?)),
            3 => Ok(AnyDecoder::Triple(TripleErrorDecoder::with_strategy(
                params, strategy,
            )?)),
            _ => Err(Error::UnsupportedRadius {
                radius: t,
                m: params.m(),
            }),
        }
    }

    /// The strongest specialized decoder covering radius `t`, falling back to
    /// the hypothesis search where no specialized path exists.
    pub fn strongest(params: &'a CodeParams, t: usize) -> Self {
        let strat = if vandermonde_points(params).is_ok() {
            RStrategy::VandermondeFast
        } else {
            RStrategy::Generic
        };
        Self::for_radius(params, t, strat).unwrap_or(AnyDecoder::Hypothesis { params, t })
    }

    pub fn decode(&self, v: &Word) -> DecodeOutcome {
        self.decode_traced(v, &mut Trace::Off)
    }

    pub fn decode_traced(&self, v: &Word, trace: &mut Trace) -> DecodeOutcome {
        match self {
            AnyDecoder::Single(d) => d.decode_traced(v, trace),
            AnyDecoder::Double(d) => d.decode_traced(v, trace),
            AnyDecoder::Triple(d) => d.decode_traced(v, trace),
            AnyDecoder::Hypothesis { params, t } => hypothesis_decode(params, v, *t),
        }
    }
}
