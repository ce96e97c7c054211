//! Quick tour: build a few module families, compute their endomorphism
//! algebras, and print the four-flag classification next to the expected
//! verdicts. Run with `cargo run --release --example tour`.

use endosym::parse::analyze_object;
use endosym::suites::SuiteConfig;

fn main() {
    let cfg = SuiteConfig::default();
    for object in [
        "string:abab",
        "string:aba",
        "band:abAB:m=1:lambda=1",
        "band:abAB:m=1:lambda=w^1@GF(16)",
        "band:abaBAB:m=1:lambda=1",
        "cyclic:r=2:parts=2,2",
        "cyclic:r=2:parts=2,3",
        "nakayama:cyclic:n=3:pl=9,9,9;module top=2 len=7",
        "regular:d8",
    ] {
        let report = analyze_object(object, &cfg).expect("analyzable object");
        println!(
            "{:60} dimM={:3} dimE={:3} [{}]{}",
            report.key,
            report.module_dim,
            report.end_dim,
            report.verdict.summary(),
            if report.matched == Some(true) { "" } else { "  <- UNEXPECTED" },
        );
    }
}
