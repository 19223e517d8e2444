#![allow(dead_code)]

pub mod dot;

use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary; arguments ending in `.poset` are resolved as fixtures.
pub fn posetdim(args: &[&str]) -> Run {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".poset") {
                fixture(a).to_string_lossy().into_owned()
            } else {
                a.to_string()
            }
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_posetdim"))
        .args(&args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// `(golden file, arguments)` for every JSON golden.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "validate_three_level",
        &["validate", "three_level.poset", "--json"],
    ),
    (
        "levels_three_level",
        &["levels", "three_level.poset", "--json"],
    ),
    ("incidence_bowtie", &["incidence", "bowtie.poset", "--json"]),
    (
        "inverse_three_level",
        &["inverse", "three_level.poset", "--json"],
    ),
    (
        "mobius_three_level",
        &["mobius", "three_level.poset", "--json"],
    ),
    ("factors_wedge", &["factors", "wedge.poset", "--json"]),
    (
        "euler_three_level",
        &["euler", "three_level.poset", "--json"],
    ),
    ("euler_bowtie", &["euler", "bowtie.poset", "--json"]),
    ("tits_wedge", &["tits", "wedge.poset", "--json"]),
    (
        "tits_raw_wedge",
        &["tits", "--raw", "wedge.poset", "--json"],
    ),
    (
        "coordinate_three_level",
        &["coordinate", "three_level.poset", "--json"],
    ),
    (
        "admissible_bowtie",
        &["admissible", "bowtie.poset", "--json"],
    ),
    (
        "iterate_three_level",
        &["iterate", "three_level.poset", "--json"],
    ),
    ("dim_three_level", &["dim", "three_level.poset", "--json"]),
    (
        "dim_trace_three_level",
        &[
            "dim",
            "--recursive",
            "--trace",
            "three_level.poset",
            "--json",
        ],
    ),
    (
        "dim_bowtie_enlarged",
        &["dim", "bowtie_enlarged.poset", "--json"],
    ),
    ("dim_bowtie_error", &["dim", "bowtie.poset", "--json"]),
    (
        "sum_dim_below_6",
        &["sum-dim", "three_level.poset", "--below", "6", "--json"],
    ),
    (
        "sum_dim_below_6_f2",
        &[
            "sum-dim",
            "three_level.poset",
            "--below",
            "6",
            "--q",
            "2",
            "--json",
        ],
    ),
    (
        "peel_check_three_level",
        &["lemma2-check", "three_level.poset", "--x", "6", "--json"],
    ),
    (
        "summand_scan_antichain4",
        &["summand-scan", "antichain4.poset", "--json"],
    ),
    (
        "summand_scan_antichain2",
        &["summand-scan", "antichain2.poset", "--json"],
    ),
    (
        "count_wedge_f2",
        &["count", "wedge.poset", "--q", "2", "--json"],
    ),
    (
        "fit_singleton",
        &[
            "fit-dim",
            "singleton.poset",
            "--vector",
            "line",
            "--primes",
            "2,3,5",
            "--json",
        ],
    ),
    (
        "fit_singleton_wrong_degree",
        &[
            "fit-dim",
            "singleton.poset",
            "--vector",
            "line",
            "--primes",
            "2,3,5",
            "--claimed",
            "2",
            "--json",
        ],
    ),
    ("dot_wedge", &["dot", "wedge.poset", "--json"]),
    ("overflow_error", &["euler", "overflow.poset", "--json"]),
];
