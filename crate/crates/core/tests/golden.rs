//! Committed count tables for three protocol specs.
//!
//! Regenerate with `CONDLAB_BLESS=1 cargo test -p condlab-core --test golden`
//! only when the generator or sampling scheme changes on purpose.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use condlab_core::{run_protocol, FrequencyTable, ProtocolSpec};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Golden {
    spec: ProtocolSpec,
    table: FrequencyTable,
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn check(name: &str, theta_first: f64, theta_second: f64, seed: u64) {
    let spec = ProtocolSpec::from_angles(theta_first, theta_second, 1_000_000, seed).unwrap();
    let table = run_protocol(&spec).unwrap();
    let path = fixture(name);
    if std::env::var_os("CONDLAB_BLESS").is_some() {
        let json = serde_json::to_string_pretty(&Golden { spec, table }).unwrap();
        std::fs::write(&path, json + "\n").unwrap();
        return;
    }
    let golden: Golden = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(golden.spec, spec, "{name}: spec drifted");
    assert_eq!(golden.table, table, "{name}: counts drifted");
}

#[test]
fn quarter_turn_from_zero() {
    check("golden_quarter_turn.json", 0.0, FRAC_PI_2, 42);
}

#[test]
fn twenty_degrees_from_zero() {
    check("golden_twenty_degrees.json", 0.0, PI / 9.0, 7);
}

#[test]
fn generic_pair() {
    check("golden_generic_pair.json", 0.3, 1.1, 2024);
}
