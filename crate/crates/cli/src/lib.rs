//! Command-line surface over `wzw-core`.

mod commands;
pub mod config;
pub mod schema;

use clap::{Args, Parser, Subcommand};
use config::Config;
use std::path::PathBuf;
use wzw::{AlgebraSpec, Family, WzwError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "wzw", version, about = "Fusion rings and auto-equivalences of WZW modular categories")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Common {
    /// A, B, C or G2.
    #[arg(long, global = true)]
    pub family: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    #[arg(long, global = true)]
    pub level: Option<i64>,
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key=value file; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Basis and fusion table.
    Fusion,
    /// Twists, quantum dimensions, S-matrix and the Verlinde check.
    ModularDump,
    /// Fusion-ring automorphism group.
    Autos {
        /// Restrict to twist-preserving automorphisms.
        #[arg(long)]
        braided: bool,
    },
    /// Simple-current auto-equivalences F_a.
    SimpleCurrents,
    /// The groups {a : gcd(1+ka, n) = 1} against G(n, gcd(n, k)).
    Appendix {
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        max_k: Option<u64>,
    },
    /// Tambara-Yamagami data over Z_m.
    Ty {
        /// Group order m; defaults to 2r+1 from --rank.
        #[arg(long)]
        order: Option<usize>,
        /// chi(i, j) = exp(2 pi i c ij/m); defaults to r.
        #[arg(long)]
        c: Option<i64>,
    },
    /// The level-4 G2 algebra decomposition.
    G2Algebras,
    /// Residuals of the stated skein solution families.
    SkeinVerify {
        /// Rank and level bound of the BMW locus scan.
        #[arg(long)]
        scan_max: Option<usize>,
    },
    /// Constructed groups against the classification over a grid.
    TheoremCheck {
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        max_level: Option<i64>,
        #[arg(long)]
        g2_max_level: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// Exit code and captured streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<WzwError> for CliError {
    fn from(e: WzwError) -> Self {
        match e {
            WzwError::InvalidSpec(_) | WzwError::WeylBoundExceeded { .. } | WzwError::AlcoveBoundExceeded { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Fully resolved options after merging the config file.
#[derive(Clone, Debug)]
pub struct Options {
    pub common: Common,
    pub config: Config,
    pub format: Format,
}

impl Options {
    pub fn family(&self) -> Result<Option<Family>, CliError> {
        match self.string("family", &self.common.family) {
            None => Ok(None),
            Some(s) => s
                .parse::<Family>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--family: unknown family '{s}' (expected A, B, C or G2)"))),
        }
    }

    pub fn string(&self, key: &str, flag: &Option<String>) -> Option<String> {
        flag.clone().or_else(|| self.config.get(key).map(str::to_string))
    }

    pub fn number<T: std::str::FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--{key}: cannot parse '{v}' from config"))),
        }
    }

    /// The algebra named by --family, --rank and --level; G2 needs no rank.
    pub fn spec(&self) -> Result<AlgebraSpec, CliError> {
        let family = self.family()?.ok_or_else(|| CliError::Usage("--family is required".into()))?;
        let rank = self.number("rank", self.common.rank)?;
        let level = self
            .number("level", self.common.level)?
            .ok_or_else(|| CliError::Usage("--level is required".into()))?;
        let rank = match (family, rank) {
            (Family::G2, None) => 2,
            (Family::G2, Some(2)) => 2,
            (Family::G2, Some(r)) => return Err(CliError::Usage(format!("--rank: G2 has rank 2, got {r}"))),
            (_, Some(r)) => r,
            (_, None) => return Err(CliError::Usage("--rank is required".into())),
        };
        if level < 1 {
            return Err(CliError::Usage(format!("--level: must be positive, got {level}")));
        }
        AlgebraSpec::new(family, rank, level).map_err(|e| CliError::Usage(format!("--rank/--level: {e}")))
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Parses `argv` (program name first), runs the verb and renders its output.
pub fn run(argv: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let config = match &cli.common.config {
        None => Config::default(),
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => return usage(format!("--config: {e}")),
        },
    };
    let flag = |given: bool, key: &str| -> Result<bool, CliError> {
        if given {
            return Ok(true);
        }
        config.flag(key).map_err(CliError::Usage)
    };
    let (json, tsv) = match (flag(cli.common.json, "json"), flag(cli.common.tsv, "tsv")) {
        (Ok(j), Ok(t)) => (j, t),
        (Err(CliError::Usage(m)), _) | (_, Err(CliError::Usage(m))) => return usage(m),
        _ => unreachable!(),
    };
    let format = match (json, tsv) {
        (true, true) => return usage("--json and --tsv are exclusive".into()),
        (true, false) => Format::Json,
        (false, true) => Format::Tsv,
        _ => Format::Text,
    };
    let opts = Options {
        common: cli.common.clone(),
        config,
        format,
    };
    let rendered = match commands::dispatch(&cli.verb, &opts) {
        Ok(r) => r,
        Err(CliError::Usage(m)) => return usage(m),
        Err(CliError::Failed(m)) => {
            return Outcome {
                code: EXIT_FAILED,
                stdout: String::new(),
                stderr: format!("error: {m}\n"),
            }
        }
    };
    let code = if rendered.ok { EXIT_OK } else { EXIT_FAILED };
    let out_path = opts.string("out", &opts.common.out.as_ref().map(|p| p.display().to_string()));
    match out_path {
        Some(p) => match std::fs::write(&p, &rendered.body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: --out: cannot write {p}: {e}\n"),
            },
        },
        None => Outcome {
            code,
            stdout: rendered.body,
            stderr: String::new(),
        },
    }
}
