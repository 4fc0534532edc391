use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use verlinde_cli::config::{parse_config_file, RunConfig};
use verlinde_cli::{cmd_fuse, cmd_qdim, cmd_resolve, cmd_table, cmd_verify, Outcome};

const LABELS_HELP: &str = "\
Label grammar:
  minimal     (r,s)
  heisenberg  pi[lam=a:b:...]
  pi0         Pi[l=ell;lam=x]
  singlet     F[lam=x]  F[r=..,s=..]  M[r=..,s=..]  Fbar[r=..,s=..]
  sl2         E[l=..;lam=..;r=..,s=..]  E+[..]  E-[..]  D+[l=..;r=..,s=..]  D-[..]  L[l=..;r=..]  S[..]
Real numbers accept fractions such as -3/2.

Exit codes: 0 success, 1 verification suite failure, 2 malformed input,
3 unsupported request, 4 numerical cross-check failure.";

#[derive(Parser, Debug)]
#[command(name = "verlinde", version, about = "Fusion rules, quantum dimensions and standard resolutions", after_help = LABELS_HELP)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// minimal | heisenberg | pi0 | singlet | sl2
    #[arg(long, global = true)]
    theory: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    v: Option<String>,
    /// singlet parameter p ≥ 2
    #[arg(long, global = true)]
    p: Option<String>,
    /// admissible level k = −2 + u/v, e.g. -1/2
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<String>,
    /// Heisenberg Gram matrix, rows separated by ';'
    #[arg(long, global = true, allow_hyphen_values = true)]
    gram: Option<String>,
    /// Heisenberg shift vector, comma separated
    #[arg(long, global = true, allow_hyphen_values = true)]
    shift: Option<String>,
    /// [default: 42]
    #[arg(long, global = true)]
    seed: Option<String>,
    /// number of spectral sample points [default: 20]
    #[arg(long, global = true)]
    samples: Option<String>,
    /// integer rounding tolerance [default: 1e-6]
    #[arg(long = "tol-round", global = true)]
    tol_round: Option<String>,
    /// limit and cross-check tolerance [default: 1e-8]
    #[arg(long = "tol-limit", global = true)]
    tol_limit: Option<String>,
    /// json | csv | text [default: text]
    #[arg(long, global = true)]
    format: Option<String>,
    /// write the output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<String>,
    /// omit the generation timestamp from metadata
    #[arg(long = "no-timestamp", global = true)]
    no_timestamp: bool,
    /// key=value file mirroring the long flags; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// table window: r values a..b
    #[arg(long = "r-range", global = true, allow_hyphen_values = true)]
    r_range: Option<String>,
    /// table window: s values a..b
    #[arg(long = "s-range", global = true, allow_hyphen_values = true)]
    s_range: Option<String>,
    /// table window: spectral flow indices a..b
    #[arg(long = "l-range", global = true, allow_hyphen_values = true)]
    l_range: Option<String>,
    /// table window: comma separated weights
    #[arg(long = "lam-grid", global = true, allow_hyphen_values = true)]
    lam_grid: Option<String>,
}

impl Global {
    fn settings(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("theory", self.theory.clone()),
            ("u", self.u.clone()),
            ("v", self.v.clone()),
            ("p", self.p.clone()),
            ("k", self.k.clone()),
            ("gram", self.gram.clone()),
            ("shift", self.shift.clone()),
            ("seed", self.seed.clone()),
            ("samples", self.samples.clone()),
            ("tol-round", self.tol_round.clone()),
            ("tol-limit", self.tol_limit.clone()),
            ("format", self.format.clone()),
            ("output", self.output.clone()),
            ("no-timestamp", self.no_timestamp.then(|| "true".to_string())),
            ("r-range", self.r_range.clone()),
            ("s-range", self.s_range.clone()),
            ("l-range", self.l_range.clone()),
            ("lam-grid", self.lam_grid.clone()),
        ]
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fuse two labels
    Fuse {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// skip the quantum-dimension cross-check
        #[arg(long = "no-check")]
        no_check: bool,
    },
    /// Fusion table of the finite label set or the supplied window
    Table,
    /// Quantum dimension of a label
    Qdim {
        #[arg(allow_hyphen_values = true)]
        label: String,
        /// spectral point; defaults to the sample points
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Standard resolution of a label
    Resolve {
        #[arg(allow_hyphen_values = true)]
        label: String,
        /// number of slots to spell out
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Run a verification suite
    Verify {
        /// smatrix | verlinde-vs-closed | resolution-limits | euler | homomorphism | all
        suite: String,
    },
}

fn fail(msg: String, code: u8) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut settings = BTreeMap::new();
    if let Some(path) = &cli.global.config {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(format!("cannot read {}: {e}", path.display()), 2),
        };
        match parse_config_file(&text) {
            Ok(m) => settings = m,
            Err(e) => return fail(e.to_string(), 2),
        }
    }
    for (k, v) in cli.global.settings() {
        if let Some(v) = v {
            settings.insert(k.to_string(), v);
        }
    }
    let mut cfg = match RunConfig::from_settings(&settings) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string(), 2),
    };
    let out: Outcome = match &cli.command {
        Command::Fuse { x, y, no_check } => {
            cfg.qdim_check = !no_check;
            cmd_fuse(&cfg, x, y)
        }
        Command::Table => cmd_table(&cfg),
        Command::Qdim { label, at } => cmd_qdim(&cfg, label, at.as_deref()),
        Command::Resolve { label, depth } => cmd_resolve(&cfg, label, *depth),
        Command::Verify { suite } => cmd_verify(&cfg, suite),
    };
    if !out.stdout.is_empty() {
        match &cfg.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &out.stdout) {
                    return fail(format!("cannot write {}: {e}", path.display()), 2);
                }
            }
            None => {
                let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            }
        }
    }
    if !out.stderr.is_empty() {
        let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
