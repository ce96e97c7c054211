//! Command-line front end: analyze single objects, enumerate word families,
//! and run the theorem-verification suites.
//!
//! Exit codes: 0 success / no mismatch, 1 mismatch found, 2 usage error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use endosym::gf::FieldSpec;
use endosym::parse::analyze_object;
use endosym::suites::{
    enumerate_report, suite_bands, suite_cyclic, suite_dimbound, suite_klein4, suite_local,
    suite_nakayama_hom, suite_nakayama_sym, suite_semisimple_converse, suite_strings, RunReport,
    SuiteConfig,
};

#[derive(Parser)]
#[command(
    name = "endosym",
    about = "Exact classification of symmetry properties of endomorphism algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Working field, e.g. "2^16" or a full descriptor "p^e:c0,c1,...".
    #[arg(long, default_value = "2^16")]
    field: String,
    /// Classifier seed; "random" draws one from the OS.
    #[arg(long, default_value = "0")]
    seed: String,
    /// Trials for randomized witness searches.
    #[arg(long, default_value_t = 4)]
    trials: u32,
    /// Treat probabilistic negatives as mismatches.
    #[arg(long)]
    strict_deterministic: bool,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single object: build it, compute End, classify.
    Analyze {
        /// Object descriptor, e.g. "string:abab", "band:abAB:m=1:lambda=1",
        /// "cyclic:r=2:parts=2,3", "nakayama:cyclic:n=3:pl=9,9,9;module top=2 len=7",
        /// "regular:d8".
        object: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a theorem-verification suite.
    Verify {
        /// One of: strings, bands, cyclic, nakayama-hom, nakayama-sym,
        /// local, klein4, dimbound, semisimple-converse.
        suite: String,
        #[command(flatten)]
        common: CommonOpts,
        /// Maximum word length (strings default 10, bands 8).
        #[arg(long)]
        max_len: Option<usize>,
        /// Maximum band multiplicity.
        #[arg(long, default_value_t = 3)]
        max_mult: usize,
        /// Maximum number of simples for Nakayama suites.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Maximum uniform projective Loewy length.
        #[arg(long, default_value_t = 12)]
        max_ll: usize,
        /// Number of random multisets for nakayama-sym.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Sample seed for randomized object generation.
        #[arg(long, default_value_t = 0)]
        sample_seed: u64,
        /// Dimension cap for the Klein-four census.
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// Dihedral parameter: modules over the dihedral group of order 4q.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Worker threads (default: all cores; 1 disables parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report to a file.
        #[arg(long)]
        out: Option<String>,
        /// List every record in the text output, not just mismatches.
        #[arg(long)]
        verbose: bool,
    },
    /// Stream canonical representatives of a word family.
    Enumerate {
        /// One of: strings, bands.
        family: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
}

fn build_config(common: &CommonOpts) -> Result<SuiteConfig, String> {
    let field = FieldSpec::parse(&common.field).map_err(|e| e.to_string())?;
    let seed = if common.seed == "random" {
        rand_seed()
    } else {
        common.seed.parse::<u64>().map_err(|_| "seed must be a number or 'random'".to_string())?
    };
    let mut cfg = SuiteConfig::new(field);
    cfg.seed = seed;
    cfg.trials = common.trials;
    cfg.strict = common.strict_deterministic;
    Ok(cfg)
}

fn rand_seed() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.subsec_nanos()).unwrap_or(0);
    let pid = std::process::id();
    ((nanos as u64) << 32) ^ (pid as u64) ^ 0x9e37_79b9_7f4a_7c15
}

fn emit_report(report: &RunReport, json: bool, verbose: bool, out: Option<&str>) -> ExitCode {
    let rendered = if json {
        serde_json::to_string_pretty(&report.to_json()).expect("serializable report")
    } else {
        report.render_text(verbose)
    };
    println!("{rendered}");
    if let Some(path) = out {
        let payload = serde_json::to_string_pretty(&report.to_json()).expect("serializable report");
        if let Err(e) = std::fs::File::create(path).and_then(|mut f| f.write_all(payload.as_bytes())) {
            eprintln!("error: cannot write report to {path}: {e}");
            return ExitCode::from(2);
        }
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { object, common } => {
            let cfg = match build_config(&common) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match analyze_object(&object, &cfg) {
                Ok(report) => {
                    if common.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&report.to_json()).expect("serializable")
                        );
                    } else {
                        print!("{}", report.render_text());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify {
            suite,
            common,
            max_len,
            max_mult,
            max_n,
            max_ll,
            count,
            sample_seed,
            max_dim,
            q,
            jobs,
            out,
            verbose,
        } => {
            let mut cfg = match build_config(&common) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            cfg.sample_seed = sample_seed;
            if let Some(j) = jobs {
                if j <= 1 {
                    cfg.parallel = false;
                } else {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
                }
            }
            let report = match suite.as_str() {
                "strings" => suite_strings(&cfg, max_len.unwrap_or(10)),
                "bands" => suite_bands(&cfg, max_len.unwrap_or(8), max_mult),
                "cyclic" => suite_cyclic(&cfg),
                "nakayama-hom" => suite_nakayama_hom(&cfg, max_n, max_ll),
                "nakayama-sym" => suite_nakayama_sym(&cfg, count),
                "local" => suite_local(&cfg),
                "klein4" => suite_klein4(&cfg, max_dim),
                "dimbound" => suite_dimbound(&cfg, q),
                "semisimple-converse" => suite_semisimple_converse(&cfg),
                other => {
                    eprintln!("error: unknown suite {other:?}");
                    return ExitCode::from(2);
                }
            };
            emit_report(&report, common.json, verbose, out.as_deref())
        }
        Command::Enumerate { family, max_len, json } => {
            let cfg = SuiteConfig::default();
            match enumerate_report(&cfg, &family, max_len) {
                Some(report) => emit_report(&report, json, true, None),
                None => {
                    eprintln!("error: unknown family {family:?} (expected strings or bands)");
                    ExitCode::from(2)
                }
            }
        }
    }
}
