//! Monte-Carlo and exhaustive decode experiments.
//!
//! Each trial draws random information symbols, encodes, injects `t`
//! distinct-position nonzero symbol errors, decodes through the chosen path,
//! and classifies the outcome. Trials are keyed by `(seed, trial index)`
//! through per-trial ChaCha streams, so they are order-independent: the
//! parallel and sequential drivers produce bit-identical statistics
//! (wall-clock time aside) for the same configuration.

use crate::code::CodeParams;
use crate::decoder::{hypothesis_decode, AnyDecoder, Correction, DecodeOutcome, RStrategy};
use crate::field::Symbol;
use crate::ops::{self, OpCounts};
use crate::{Error, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which decode implementation a trial exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodePath {
    Generic,
    VandermondeFast,
    Hypothesis,
}

#[derive(Debug, Clone)]
pub struct TrialConfig<'a> {
    pub params: &'a CodeParams,
    /// Errors injected per trial.
    pub t: usize,
    pub trials: u64,
    pub seed: u64,
    pub path: DecodePath,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrialStats {
    pub successes: u64,
    pub failures: u64,
    pub miscorrections: u64,
    pub zech_evals: u64,
    pub field_mults: u64,
    pub linear_solves: u64,
    pub wall_time: Duration,
}

impl TrialStats {
    pub fn trials(&self) -> u64 {
        self.successes + self.failures + self.miscorrections
    }

    /// Equality of everything except the wall clock.
    pub fn same_counts(&self, other: &TrialStats) -> bool {
        self.successes == other.successes
            && self.failures == other.failures
            && self.miscorrections == other.miscorrections
            && self.zech_evals == other.zech_evals
            && self.field_mults == other.field_mults
            && self.linear_solves == other.linear_solves
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    successes: u64,
    failures: u64,
    miscorrections: u64,
    ops: OpCounts,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.successes += other.successes;
        self.failures += other.failures;
        self.miscorrections += other.miscorrections;
        self.ops.zech_evals += other.ops.zech_evals;
        self.ops.field_mults += other.ops.field_mults;
        self.ops.linear_solves += other.ops.linear_solves;
        self
    }

    fn into_stats(self, wall_time: Duration) -> TrialStats {
        TrialStats {
            successes: self.successes,
            failures: self.failures,
            miscorrections: self.miscorrections,
            zech_evals: self.ops.zech_evals,
            field_mults: self.ops.field_mults,
            linear_solves: self.ops.linear_solves,
            wall_time,
        }
    }
}

fn classify(outcome: &DecodeOutcome, injected: &[Correction]) -> Tally {
    let mut tally = Tally::default();
    let success = if injected.is_empty() {
        matches!(outcome, DecodeOutcome::NoError)
    } else {
        outcome.corrections() == Some(injected)
    };
    if success {
        tally.successes = 1;
    } else if outcome.is_failure() {
        tally.failures = 1;
    } else {
        tally.miscorrections = 1;
    }
    tally
}

/// Per-trial generator keyed by (seed, index): one ChaCha key, one stream per
/// trial, so trials can run in any order.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

fn one_trial(cfg: &TrialConfig, decoder: &AnyDecoder, index: u64) -> Tally {
    let p = cfg.params;
    let (k, n, b) = (p.k(), p.n(), p.b());
    let mask = (1u32 << b) - 1;
    let mut rng = trial_rng(cfg.seed, index);
    let info: Vec<Symbol> = (0..k).map(|_| Symbol(rng.gen_range(0..=mask))).collect();
    let mut v = p.encode(&info);
    let mut injected: Vec<Correction> = sample(&mut rng, n, cfg.t)
        .iter()
        .map(|pos| Correction {
            position: pos + 1,
            magnitude: Symbol(rng.gen_range(1..=mask)),
        })
        .collect();
    injected.sort_by_key(|c| c.position);
    for c in &injected {
        v.xor_at(c.position, c.magnitude);
    }
    let base = ops::snapshot();
    let outcome = decoder.decode(&v);
    let mut tally = classify(&outcome, &injected);
    tally.ops = ops::since(base);
    tally
}

fn build_decoder<'a>(cfg: &TrialConfig<'a>) -> Result<AnyDecoder<'a>> {
    match cfg.path {
        DecodePath::Hypothesis => Ok(AnyDecoder::Hypothesis {
            params: cfg.params,
            t: cfg.t,
        }),
        DecodePath::Generic => AnyDecoder::for_radius(cfg.params, cfg.t, RStrategy::Generic),
        DecodePath::VandermondeFast => {
            if !matches!(
                cfg.params.spec(),
                crate::matrix::MatrixSpec::Vandermonde { .. }
            ) {
                return Err(Error::WrongMatrixKind);
            }
            AnyDecoder::for_radius(cfg.params, cfg.t, RStrategy::VandermondeFast)
        }
    }
}

fn validate(cfg: &TrialConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if cfg.t > cfg.params.radius() {
        return Err(Error::UnsupportedRadius {
            radius: cfg.t,
            m: cfg.params.m(),
        });
    }
    Ok(())
}

/// Runs the configured trials, in parallel when the `parallel` feature is
/// enabled. Deterministic given the seed, independent of thread count.
pub fn run_trials(cfg: &TrialConfig) -> Result<TrialStats> {
    validate(cfg)?;
    let decoder = build_decoder(cfg)?;
    let start = Instant::now();
    #[cfg(feature = "parallel")]
    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|i| one_trial(cfg, &decoder, i))
        .reduce(Tally::default, Tally::merge);
    #[cfg(not(feature = "parallel"))]
    let tally = (0..cfg.trials)
        .map(|i| one_trial(cfg, &decoder, i))
        .fold(Tally::default(), Tally::merge);
    Ok(tally.into_stats(start.elapsed()))
}

/// Single-threaded driver with identical semantics, kept callable for
/// determinism checks and the benchmark comparison.
pub fn run_trials_sequential(cfg: &TrialConfig) -> Result<TrialStats> {
    validate(cfg)?;
    let decoder = build_decoder(cfg)?;
    let start = Instant::now();
    let tally = (0..cfg.trials)
        .map(|i| one_trial(cfg, &decoder, i))
        .fold(Tally::default(), Tally::merge);
    Ok(tally.into_stats(start.elapsed()))
}

/// Decodes every error pattern of symbol weight <= t injected into the zero
/// codeword (weight 0 alone when t = 0), through the strongest specialized
/// decoder for radius t, and counts exact recoveries.
pub fn exhaustive_check(params: &CodeParams, t: usize) -> Result<TrialStats> {
    let (n, b) = (params.n(), params.b());
    let q1 = ((1u64 << b) - 1) as u128;
    let weights: Vec<usize> = if t == 0 { vec![0] } else { (1..=t).collect() };
    let mut total: u128 = 0;
    for &w in &weights {
        total += crate::comb::binomial(n as u64, w as u64) as u128 * q1.pow(w as u32);
    }
    if total > 10_000_000 {
        return Err(Error::TooLarge(format!("{total} error patterns")));
    }
    let decoder = AnyDecoder::for_radius(params, t, RStrategy::Generic)?;
    let start = Instant::now();

    let run_subset = |positions: &Vec<usize>| -> Tally {
        let w = positions.len();
        let mut tally = Tally::default();
        if w == 0 {
            let v = crate::code::Word::zero(n);
            let base = ops::snapshot();
            let outcome = decoder.decode(&v);
            tally = tally.merge(classify(&outcome, &[]));
            tally.ops = ops::since(base);
            return tally;
        }
        let mask = (1u32 << b) - 1;
        let mut mags = vec![1u32; w];
        loop {
            let injected: Vec<Correction> = positions
                .iter()
                .zip(&mags)
                .map(|(&pos, &mag)| Correction {
                    position: pos + 1,
                    magnitude: Symbol(mag),
                })
                .collect();
            let mut v = crate::code::Word::zero(n);
            for c in &injected {
                v.xor_at(c.position, c.magnitude);
            }
            let base = ops::snapshot();
            let outcome = decoder.decode(&v);
            let mut one = classify(&outcome, &injected);
            one.ops = ops::since(base);
            tally = tally.merge(one);
            // odometer over nonzero magnitudes
            let mut d = 0;
            loop {
                if d == w {
                    return tally;
                }
                if mags[d] == mask {
                    mags[d] = 1;
                    d += 1;
                } else {
                    mags[d] += 1;
                    break;
                }
            }
        }
    };

    let mut subsets = Vec::new();
    for &w in &weights {
        subsets.extend(crate::comb::combinations(n, w));
    }
    #[cfg(feature = "parallel")]
    let tally = subsets
        .par_iter()
        .map(run_subset)
        .reduce(Tally::default, Tally::merge);
    #[cfg(not(feature = "parallel"))]
    let tally = subsets
        .iter()
        .map(run_subset)
        .fold(Tally::default(), Tally::merge);
    Ok(tally.into_stats(start.elapsed()))
}

/// Exhaustive three-way agreement between the algorithmic decoder, the
/// hypothesis search, and the brute-force nearest-codeword oracle, over all
/// patterns of weight <= t on the zero codeword. Returns the number of
/// patterns compared.
pub fn oracle_agreement_check(params: &CodeParams, t: usize) -> Result<u64> {
    let (n, b) = (params.n(), params.b());
    let decoder = AnyDecoder::for_radius(params, t, RStrategy::Generic)?;
    let mask = (1u32 << b) - 1;
    let mut compared = 0u64;
    for w in 1..=t {
        for positions in crate::comb::combinations(n, w) {
            let mut mags = vec![1u32; w];
            loop {
                let mut v = crate::code::Word::zero(n);
                let mut injected = Vec::with_capacity(w);
                for (&pos, &mag) in positions.iter().zip(&mags) {
                    v.xor_at(pos + 1, Symbol(mag));
                    injected.push(Correction {
                        position: pos + 1,
                        magnitude: Symbol(mag),
                    });
                }
                let expect = DecodeOutcome::Corrected(injected);
                let algo = decoder.decode(&v);
                let hypo = hypothesis_decode(params, &v, t);
                let brute = crate::decoder::brute_force_decode(params, &v, t)?;
                if algo != expect || hypo != expect || brute != expect {
                    return Err(Error::Config(format!(
                        "oracle disagreement at {positions:?} mags {mags:?}: algo={algo:?} hypo={hypo:?} brute={brute:?}"
                    )));
                }
                compared += 1;
                let mut d = 0;
                loop {
                    if d == w {
                        break;
                    }
                    if mags[d] == mask {
                        mags[d] = 1;
                        d += 1;
                    } else {
                        mags[d] += 1;
                        break;
                    }
                }
                if mags.iter().all(|&m| m == 1) {
                    break;
                }
            }
        }
    }
    Ok(compared)
}
