//! Cross-module flows through the public API: config -> code -> stripes ->
//! corruption -> repair, and harness runs on config-built codes.

use mdsa_core::config::CodeConfigFile;
use mdsa_core::decoder::{DoubleErrorDecoder, Trace};
use mdsa_core::field::Symbol;
use mdsa_core::harness::{exhaustive_check, run_trials, DecodePath, TrialConfig};
use mdsa_core::stripe::{decode_stripes, encode_stripes, xor_symbol_into_shard};
use mdsa_core::Error;

const CAUCHY_CONFIG: &str = r#"
b = 4
m = 4
k = 4
poly = 25

[matrix]
kind = "cauchy"
xs = [12, 1, 0, 7]
ys = [5, 10, 3, 14]
"#;

#[test]
fn config_to_repair_pipeline() {
    let params = CodeConfigFile::parse(CAUCHY_CONFIG)
        .unwrap()
        .to_params()
        .unwrap();
    let data: Vec<u8> = (0u32..3000).map(|i| (i % 256) as u8).collect();
    let mut set = encode_stripes(&params, &data);

    // hit two symbols of every third row
    let rows = set.manifest.stripe_rows;
    for r in (0..rows).step_by(3) {
        let mag = Symbol(((r % 15) + 1) as u32);
        xor_symbol_into_shard(&mut set.shards[0], 4, r, mag);
        xor_symbol_into_shard(&mut set.shards[5], 4, r, mag);
    }
    let (recovered, report) =
        decode_stripes(&params, &set.manifest, &set.shards, 2, false).unwrap();
    assert_eq!(recovered, data);
    assert_eq!(report.corrected_rows, rows.div_ceil(3));
    assert!(report.digest_mismatches.is_empty());
}

#[test]
fn manifest_rebuild_refuses_tampered_matrix() {
    let params = CodeConfigFile::parse(CAUCHY_CONFIG)
        .unwrap()
        .to_params()
        .unwrap();
    let set = encode_stripes(&params, b"some bytes");
    let mut manifest = set.manifest.clone();
    // a tampered, rank-deficient grid must be caught on rebuild
    manifest.matrix = mdsa_core::matrix::MatrixSpec::Explicit {
        sigma: vec![vec![1, 1, 1, 1]; 4],
    };
    manifest.trusted = false;
    assert!(matches!(manifest.to_params(), Err(Error::NotSuperregular)));
}

#[test]
fn harness_on_config_built_code() {
    let params = CodeConfigFile::parse(CAUCHY_CONFIG)
        .unwrap()
        .to_params()
        .unwrap();
    let cfg = TrialConfig {
        params: &params,
        t: 2,
        trials: 150,
        seed: 77,
        path: DecodePath::Generic,
    };
    let stats = run_trials(&cfg).unwrap();
    assert_eq!(stats.successes, 150);
    let stats = exhaustive_check(&params, 1).unwrap();
    assert_eq!(stats.successes, 8 * 15);
}

#[test]
fn traced_decode_reports_scan() {
    let params = CodeConfigFile::parse(CAUCHY_CONFIG)
        .unwrap()
        .to_params()
        .unwrap();
    let mut v = params.encode(&[Symbol(3), Symbol(9), Symbol(0), Symbol(15)]);
    v.xor_at(2, Symbol(5));
    v.xor_at(4, Symbol(12));
    let d = DoubleErrorDecoder::new(&params).unwrap();
    let mut trace = Trace::new(true);
    let out = d.decode_traced(&v, &mut trace);
    assert!(out.corrections().is_some());
    let text = trace.lines().join("\n");
    assert!(text.contains("l1=2 l2=4"));
    assert!(text.contains("accept"));
}
