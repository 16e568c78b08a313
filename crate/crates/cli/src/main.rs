//! `ddelta` — command-line front door for the divisor-delta toolkit.

// negated float comparisons in validation reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

use divisor_delta::Error;
use table::Format;

#[derive(Parser, Debug)]
#[command(
    name = "ddelta",
    version,
    about = "Divisor-problem error term: sieves, moments, singular series, counting oracles",
    args_override_self = true
)]
pub struct Cli {
    /// Plain-text key=value defaults, merged under explicit flags
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Cache directory (env DDELTA_CACHE_DIR as fallback)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized regressions
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file (default: stdout); `report` treats this as a directory
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sieve d(n) up to a limit; optionally persist the block cache
    Sieve {
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 1 << 20)]
        block_size: u64,
        /// Write (or reuse) the DDT1 block cache under --cache-dir
        #[arg(long)]
        use_cache: bool,
    },
    /// Evaluate Δ(x) at points
    Delta {
        /// Comma-separated evaluation points
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<f64>>,
        #[arg(long, requires = "to", requires = "count")]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        count: Option<u64>,
    },
    /// Power moments of Δ over a T grid, with predicted main terms
    Moment {
        #[arg(long)]
        k: f64,
        /// Integrate |Δ|^k instead of the signed power
        #[arg(long)]
        absolute: bool,
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        /// Truncation for the singular-series coefficients
        #[arg(long, default_value_t = 256)]
        y: u64,
        #[arg(long, default_value_t = 8)]
        quad_order: usize,
    },
    /// Truncated singular series s_{k;l}(d; y)
    Series {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        l: u8,
        #[arg(long)]
        y: u64,
        /// auto = cached stream when a cache dir is set, else blocked DP
        #[arg(long, value_enum, default_value_t = commands::SeriesRoute::Auto)]
        route: commands::SeriesRoute,
    },
    /// Diophantine counting: exact counts, minimal gaps, fractional parts
    Count {
        #[arg(long, value_enum)]
        mode: commands::CountMode,
        /// Dyadic range parameters N_j (ranges are (N, 2N])
        #[arg(long, value_delimiter = ',')]
        ranges: Option<Vec<u64>>,
        /// Sign pattern like +,+,- or ++-
        #[arg(long)]
        signs: Option<String>,
        #[arg(long)]
        delta: Option<f64>,
        /// Lemma bound to report (7, 8, 9, 10)
        #[arg(long)]
        lemma: Option<u8>,
        /// Count zero sums too (default excludes exact zeros)
        #[arg(long)]
        include_zero: bool,
        /// min-gap: largest n per slot
        #[arg(long)]
        nmax: Option<u64>,
        /// fractional: α, β, K
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        big_k: Option<u64>,
        /// regression: number of random boxes
        #[arg(long)]
        boxes: Option<u64>,
        #[arg(long)]
        max_volume: Option<u64>,
    },
    /// Exponential sum S(x;N): values and moment ratios
    Expsum {
        #[arg(long, value_enum)]
        mode: commands::ExpsumMode,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        u: Option<f64>,
    },
    /// Smooth bump: transform bound checks and profiles
    Bump {
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Smoothness order k
        #[arg(long)]
        smooth: Option<u32>,
        /// Grid spec log:<lo>:<hi>:<points> or lin:<lo>:<hi>:<points>
        #[arg(long, default_value = "log:1e-3:1e6:200")]
        check_grid: String,
        /// Emit (y, φ(y)) profile rows instead of the bound table
        #[arg(long)]
        profile_points: Option<u64>,
        /// Check this many random valid configs instead of one explicit one
        #[arg(long)]
        random_configs: Option<u64>,
    },
    /// One-stop desk report: moments, series, remainder and bump checks
    Report {
        #[arg(long, default_value_t = 1.0e4)]
        t: f64,
        #[arg(long, default_value_t = 128)]
        y: u64,
    },
}

/// Value-taking config keys per subcommand (flags stay CLI-only).
const SUBCOMMAND_KEYS: &[(&str, &[&str])] = &[
    ("sieve", &["limit", "block-size"]),
    ("delta", &["at", "from", "to", "count"]),
    ("moment", &["k", "grid", "y", "quad-order"]),
    ("series", &["k", "l", "y", "route"]),
    (
        "count",
        &[
            "mode", "ranges", "signs", "delta", "lemma", "nmax", "alpha", "beta", "big-k",
            "boxes", "max-volume",
        ],
    ),
    ("expsum", &["mode", "n", "x", "u"]),
    ("bump", &["a", "delta", "smooth", "check-grid", "profile-points", "random-configs"]),
    ("report", &["t", "y"]),
];

fn find_config_path(args: &[String]) -> Option<PathBuf> {
    let mut i = 0;
    while i < args.len() {
        if let Some(rest) = args[i].strip_prefix("--config=") {
            return Some(PathBuf::from(rest));
        }
        if args[i] == "--config" {
            return args.get(i + 1).map(PathBuf::from);
        }
        i += 1;
    }
    None
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let bin = raw[0].clone();
    let user_args = raw[1..].to_vec();

    let argv = match find_config_path(&user_args) {
        Some(path) => {
            let entries = match config::parse_file(&path) {
                Ok(e) => e,
                Err(msg) => return usage_error(&msg),
            };
            match config::merged_argv(bin, user_args, &entries, SUBCOMMAND_KEYS) {
                Ok(v) => v,
                Err(msg) => return usage_error(&msg),
            }
        }
        None => raw,
    };

    let matches = match Cli::command().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => {
            // clap exits 0 for --help/--version, 2 for usage errors
            e.exit();
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };

    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return usage_error(&format!("thread pool: {e}")),
    };

    match pool.install(|| commands::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::InvalidArgument(_) => 2,
                Error::Resource(_) => 3,
                Error::CacheIntegrity(_) => 4,
                Error::Io(_) => 1,
            };
            ExitCode::from(code)
        }
    }
}
