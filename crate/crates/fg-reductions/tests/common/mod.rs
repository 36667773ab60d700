#![allow(dead_code)]

use std::path::PathBuf;

use fg_reductions::{KovInstance, NtmSpec, TmSpec};

pub fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn tm(name: &str) -> TmSpec {
    fixture(name).parse().unwrap()
}

pub fn ntm(name: &str) -> NtmSpec {
    fixture(name).parse().unwrap()
}

pub fn kov(name: &str) -> KovInstance {
    fixture(name).parse().unwrap()
}

/// All binary strings of length `len`.
pub fn binary_strings(len: usize) -> Vec<String> {
    (0..1u32 << len)
        .map(|m| {
            (0..len)
                .rev()
                .map(|b| if m >> b & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect()
}
