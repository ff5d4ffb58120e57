//! RAID-like file striping: split a byte stream into k-symbol rows, encode
//! each row to n symbols, and distribute symbol j of every row to shard j.
//!
//! Bit layout is fixed and platform-independent:
//!
//! * the input file is a bitstream read least-significant-bit first within
//!   each byte; stripe row `r` takes bits `[r*k*b, (r+1)*k*b)`, information
//!   symbol `j` of a row takes the j-th `b`-bit group, coefficient of
//!   `alpha^c` at offset `c`;
//! * shard `j` stores symbol `j` of every row: row `r`, coefficient `c`
//!   occupies shard bit `r*b + c`, bytes filled least-significant-bit first,
//!   final partial byte zero-padded.
//!
//! The manifest records everything needed to rebuild the code plus one
//! 64-bit FNV-1a checksum per shard. Corruption tooling leaves the manifest
//! alone: errors stay at unknown locations as far as the decoder is
//! concerned, and the checksums are only consulted after repair to flag
//! stale manifests or miscorrected rows.

use crate::code::{CodeParams, Word};
use crate::decoder::{AnyDecoder, Correction, DecodeOutcome, FailureReason};
use crate::field::{PrimitivePolynomial, Symbol};
use crate::matrix::MatrixSpec;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub const MANIFEST_MAGIC: &str = "MDSA1";
pub const MANIFEST_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.toml";

/// Stripe metadata stored next to the shards as `manifest.toml`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripeManifest {
    pub magic: String,
    pub version: u32,
    pub b: u32,
    pub m: usize,
    pub k: usize,
    /// Primitive polynomial, bit i the coefficient of x^i.
    pub poly: u32,
    pub trusted: bool,
    pub original_length: u64,
    pub stripe_rows: u64,
    /// FNV-1a 64 of each shard's packed bytes, hex-encoded.
    pub shard_digests: Vec<String>,
    pub matrix: MatrixSpec,
}

impl StripeManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let m: StripeManifest =
            toml::from_str(text).map_err(|e| Error::Shard(format!("manifest: {e}")))?;
        if m.magic != MANIFEST_MAGIC {
            return Err(Error::Shard(format!("bad manifest magic {:?}", m.magic)));
        }
        if m.version != MANIFEST_VERSION {
            return Err(Error::Shard(format!(
                "unsupported manifest version {}",
                m.version
            )));
        }
        Ok(m)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn to_params(&self) -> Result<CodeParams> {
        crate::code::build_code(
            self.b,
            self.m,
            self.k,
            PrimitivePolynomial::new(self.poly)?,
            self.matrix.clone(),
            self.trusted,
        )
    }
}

/// 64-bit FNV-1a, the shard checksum.
pub fn fnv1a64(data: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &byte in data {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[inline]
fn get_bit(data: &[u8], idx: u64) -> bool {
    let byte = (idx / 8) as usize;
    byte < data.len() && (data[byte] >> (idx % 8)) & 1 == 1
}

#[inline]
fn set_bit(data: &mut [u8], idx: u64) {
    data[(idx / 8) as usize] |= 1 << (idx % 8);
}

fn stripe_rows_for(len_bytes: u64, k: usize, b: u32) -> u64 {
    let kb = (k as u64) * b as u64;
    (len_bytes * 8).div_ceil(kb)
}

fn shard_len_bytes(rows: u64, b: u32) -> usize {
    ((rows * b as u64).div_ceil(8)) as usize
}

/// The information symbols of stripe row `r`, zero-padded past end of input.
fn row_info(data: &[u8], params: &CodeParams, r: u64) -> Vec<Symbol> {
    let (k, b) = (params.k(), params.b());
    let kb = (k as u64) * b as u64;
    (0..k)
        .map(|j| {
            let mut bits = 0u32;
            for c in 0..b as u64 {
                if get_bit(data, r * kb + j as u64 * b as u64 + c) {
                    bits |= 1 << c;
                }
            }
            Symbol(bits)
        })
        .collect()
}

fn pack_words(params: &CodeParams, words: &[Word], rows: u64) -> Vec<Vec<u8>> {
    let (n, b) = (params.n(), params.b());
    let len = shard_len_bytes(rows, b);
    let mut shards = vec![vec![0u8; len]; n];
    for (r, w) in words.iter().enumerate() {
        for (j, shard) in shards.iter_mut().enumerate() {
            let sym = w.symbols[j];
            for c in 0..b as u64 {
                if (sym.0 >> c) & 1 == 1 {
                    set_bit(shard, r as u64 * b as u64 + c);
                }
            }
        }
    }
    shards
}

/// Shards plus manifest for one encoded input.
#[derive(Debug, Clone)]
pub struct ShardSet {
    pub manifest: StripeManifest,
    pub shards: Vec<Vec<u8>>,
}

fn build_manifest(params: &CodeParams, len: u64, rows: u64, shards: &[Vec<u8>]) -> StripeManifest {
    StripeManifest {
        magic: MANIFEST_MAGIC.to_string(),
        version: MANIFEST_VERSION,
        b: params.b(),
        m: params.m(),
        k: params.k(),
        poly: params.poly().bits(),
        trusted: params.trusted(),
        original_length: len,
        stripe_rows: rows,
        shard_digests: shards
            .iter()
            .map(|s| format!("{:016x}", fnv1a64(s)))
            .collect(),
        matrix: params.spec().clone(),
    }
}

/// Encodes a byte stream into n shards plus manifest. Deterministic,
/// byte-exact output.
pub fn encode_stripes(params: &CodeParams, data: &[u8]) -> ShardSet {
    let rows = stripe_rows_for(data.len() as u64, params.k(), params.b());
    let words: Vec<Word> = (0..rows)
        .map(|r| params.encode(&row_info(data, params, r)))
        .collect();
    let shards = pack_words(params, &words, rows);
    ShardSet {
        manifest: build_manifest(params, data.len() as u64, rows, &shards),
        shards,
    }
}

/// Parallel-row variant of [`encode_stripes`]; identical output.
#[cfg(feature = "parallel")]
pub fn par_encode_stripes(params: &CodeParams, data: &[u8]) -> ShardSet {
    let rows = stripe_rows_for(data.len() as u64, params.k(), params.b());
    let words: Vec<Word> = (0..rows)
        .into_par_iter()
        .map(|r| params.encode(&row_info(data, params, r)))
        .collect();
    let shards = pack_words(params, &words, rows);
    ShardSet {
        manifest: build_manifest(params, data.len() as u64, rows, &shards),
        shards,
    }
}

/// Outcome summary of a stripe repair.
#[derive(Debug, Clone, Default)]
pub struct StripeReport {
    pub rows: u64,
    pub corrected_rows: u64,
    pub corrected_symbols: u64,
    /// Rows the decoder declared undecodable.
    pub row_failures: Vec<(u64, FailureReason)>,
    /// Per-row corrections, collected only on request.
    pub row_corrections: Vec<(u64, Vec<Correction>)>,
    /// Shards whose manifest digest does not match the repaired data
    /// (stale manifest or miscorrection beyond the decoder's radius).
    pub digest_mismatches: Vec<usize>,
}

fn unpack_row(shards: &[Vec<u8>], b: u32, r: u64) -> Word {
    let symbols = shards
        .iter()
        .map(|shard| {
            let mut bits = 0u32;
            for c in 0..b as u64 {
                if get_bit(shard, r * b as u64 + c) {
                    bits |= 1 << c;
                }
            }
            Symbol(bits)
        })
        .collect();
    Word::new(symbols)
}

fn validate_shards(
    params: &CodeParams,
    manifest: &StripeManifest,
    shards: &[Vec<u8>],
) -> Result<()> {
    if shards.len() != params.n() {
        return Err(Error::Shard(format!(
            "{} shards for an n = {} code",
            shards.len(),
            params.n()
        )));
    }
    let expect_rows = stripe_rows_for(manifest.original_length, params.k(), params.b());
    if manifest.stripe_rows != expect_rows {
        return Err(Error::Shard(format!(
            "manifest stripe_rows {} inconsistent with original_length {}",
            manifest.stripe_rows, manifest.original_length
        )));
    }
    let want = shard_len_bytes(manifest.stripe_rows, params.b());
    for (j, s) in shards.iter().enumerate() {
        if s.len() != want {
            return Err(Error::Shard(format!(
                "shard {} has {} bytes, expected {want}",
                j + 1,
                s.len()
            )));
        }
    }
    Ok(())
}

/// Decodes every stripe row with the strongest decoder for `max_errors` and
/// reassembles the original bytes. Rows that fail to decode are reported and
/// the output is not produced; after a full repair the manifest digests are
/// re-checked against the repaired shards.
pub fn decode_stripes(
    params: &CodeParams,
    manifest: &StripeManifest,
    shards: &[Vec<u8>],
    max_errors: usize,
    collect_corrections: bool,
) -> Result<(Vec<u8>, StripeReport)> {
    validate_shards(params, manifest, shards)?;
    let rows = manifest.stripe_rows;
    let decoder = AnyDecoder::strongest(params, max_errors);
    let decode_row = |r: u64| -> (u64, DecodeOutcome, Word) {
        let v = unpack_row(shards, params.b(), r);
        let outcome = decoder.decode(&v);
        let fixed = outcome.apply_to(&v);
        (r, outcome, fixed)
    };
    #[cfg(feature = "parallel")]
    let results: Vec<(u64, DecodeOutcome, Word)> =
        (0..rows).into_par_iter().map(decode_row).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(u64, DecodeOutcome, Word)> = (0..rows).map(decode_row).collect();

    assemble(params, manifest, results, collect_corrections)
}

/// Single-threaded variant of [`decode_stripes`]; identical output.
pub fn decode_stripes_sequential(
    params: &CodeParams,
    manifest: &StripeManifest,
    shards: &[Vec<u8>],
    max_errors: usize,
    collect_corrections: bool,
) -> Result<(Vec<u8>, StripeReport)> {
    validate_shards(params, manifest, shards)?;
    let rows = manifest.stripe_rows;
    let decoder = AnyDecoder::strongest(params, max_errors);
    let results: Vec<(u64, DecodeOutcome, Word)> = (0..rows)
        .map(|r| {
            let v = unpack_row(shards, params.b(), r);
            let outcome = decoder.decode(&v);
            let fixed = outcome.apply_to(&v);
            (r, outcome, fixed)
        })
        .collect();
    assemble(params, manifest, results, collect_corrections)
}

fn assemble(
    params: &CodeParams,
    manifest: &StripeManifest,
    results: Vec<(u64, DecodeOutcome, Word)>,
    collect_corrections: bool,
) -> Result<(Vec<u8>, StripeReport)> {
    let (k, b) = (params.k(), params.b());
    let kb = (k as u64) * b as u64;
    let rows = manifest.stripe_rows;
    let mut report = StripeReport {
        rows,
        ..Default::default()
    };
    let mut out = vec![0u8; ((rows * kb).div_ceil(8)) as usize];
    let mut fixed_words = Vec::with_capacity(results.len());
    for (r, outcome, fixed) in results {
        match &outcome {
            DecodeOutcome::NoError => {}
            DecodeOutcome::Corrected(corr) => {
                report.corrected_rows += 1;
                report.corrected_symbols += corr.len() as u64;
                if collect_corrections {
                    report.row_corrections.push((r, corr.clone()));
                }
            }
            DecodeOutcome::Failure(reason) => {
                report.row_failures.push((r, *reason));
            }
        }
        for (j, sym) in fixed.symbols[..k].iter().enumerate() {
            for c in 0..b as u64 {
                if (sym.0 >> c) & 1 == 1 {
                    set_bit(&mut out, r * kb + j as u64 * b as u64 + c);
                }
            }
        }
        fixed_words.push(fixed);
    }
    out.truncate(manifest.original_length as usize);
    if report.row_failures.is_empty() {
        let repacked = pack_words(params, &fixed_words, rows);
        for (j, shard) in repacked.iter().enumerate() {
            let digest = format!("{:016x}", fnv1a64(shard));
            if manifest.shard_digests.get(j) != Some(&digest) {
                report.digest_mismatches.push(j);
            }
        }
    }
    Ok((out, report))
}

/// XOR a symbol magnitude into one row of a packed shard.
pub fn xor_symbol_into_shard(shard: &mut [u8], b: u32, row: u64, mag: Symbol) {
    for c in 0..b as u64 {
        if (mag.0 >> c) & 1 == 1 {
            let idx = row * b as u64 + c;
            shard[(idx / 8) as usize] ^= 1 << (idx % 8);
        }
    }
}

pub fn shard_file_name(index: usize) -> String {
    format!("shard_{:02}.bin", index + 1)
}

/// Writes manifest and shards into a directory (created if missing).
pub fn write_shard_set(dir: &Path, set: &ShardSet) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(MANIFEST_FILE), set.manifest.to_toml())?;
    for (j, shard) in set.shards.iter().enumerate() {
        std::fs::write(dir.join(shard_file_name(j)), shard)?;
    }
    Ok(())
}

/// Reads manifest and all shards back from a directory.
pub fn read_shard_set(dir: &Path) -> Result<(StripeManifest, Vec<Vec<u8>>)> {
    let manifest = StripeManifest::parse(&std::fs::read_to_string(dir.join(MANIFEST_FILE))?)?;
    let n = manifest.m + manifest.k;
    let mut shards = Vec::with_capacity(n);
    for j in 0..n {
        shards.push(std::fs::read(dir.join(shard_file_name(j)))?);
    }
    Ok((manifest, shards))
}
