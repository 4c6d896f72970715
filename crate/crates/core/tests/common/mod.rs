#![allow(dead_code)]

use std::sync::OnceLock;

use li_core::zeros::{find_zeros, ZeroTable};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Data rows of a CSV fixture, split on commas.
pub fn rows(name: &str) -> Vec<Vec<String>> {
    fixture(name)
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

pub fn oracle_lambda(n: u32) -> f64 {
    rows("li_oracle.csv")
        .into_iter()
        .find(|r| r[0] == n.to_string())
        .map(|r| r[1].parse().unwrap())
        .unwrap_or_else(|| panic!("no oracle λ_{n}"))
}

/// Zeros up to T = 1000, computed once per test binary.
pub fn zeros_1000() -> &'static ZeroTable {
    static T: OnceLock<ZeroTable> = OnceLock::new();
    T.get_or_init(|| find_zeros(1000.0).unwrap())
}

/// Deterministic uniform samples in [0, 1).
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}
