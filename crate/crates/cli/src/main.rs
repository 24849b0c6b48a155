//! `lefschetz`: command-line front end. Every error is reported on stderr
//! and ends the process with status 2.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Exact computations on Artinian Gorenstein algebras of forms")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Variables of the form, in order (comma separated).
    #[arg(long, global = true, value_delimiter = ',',
          default_values_t = ["x0".to_string(), "x1".into(), "x2".into(), "u".into(), "v".into()])]
    pub vars: Vec<String>,
    /// Variables of binary forms.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = ["u".to_string(), "v".into()])]
    pub bvars: Vec<String>,
    /// Input form; may be repeated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub form: Vec<String>,
    /// File with one form per line (blank lines and `#` comments skipped).
    #[arg(long, global = true)]
    pub form_file: Option<PathBuf>,
    #[arg(long, global = true, env = "LEFSCHETZ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Random linear forms tried for the weak Lefschetz property.
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    /// Random lines used when a Hessian is too large to expand.
    #[arg(long, global = true, default_value_t = 3)]
    pub lines: usize,
    #[arg(long, global = true)]
    pub json: bool,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert vector of S/Ann(f).
    Hilbert,
    /// Graded bases of the annihilator, or a check of a generator list.
    Ann {
        /// Only this degree.
        #[arg(long)]
        degree: Option<u32>,
        /// Generators to verify, separated by `;`, in the operator variables.
        #[arg(long)]
        generators: Option<String>,
        /// Divided-power action instead of plain differentiation.
        #[arg(long)]
        contraction: bool,
    },
    /// Higher Hessian of order k and its vanishing verdict.
    Hessian {
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Weak Lefschetz property.
    Wlp,
    /// Strong Lefschetz property.
    Slp,
    /// Waring decomposition of a binary form.
    Waring,
    /// Catalecticant matrices of a binary form.
    Catalecticant {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Perazzo forms x0*p0 + x1*p1 + x2*p2 + g.
    #[command(subcommand)]
    Perazzo(PerazzoCmd),
    /// Self-vanishing systems and algebraic relations among partials.
    #[command(subcommand)]
    Gn(GnCmd),
    /// Checks on integer sequences.
    #[command(subcommand)]
    Sequence(SequenceCmd),
}

#[derive(Subcommand, Debug)]
pub enum PerazzoCmd {
    /// Assemble a Perazzo form from binary forms in the `--bvars`.
    Build {
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
    },
    /// Catalecticant blocks and their ranks.
    Blocks {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Hilbert vector from the blocks, checked against the annihilator.
    Classify,
    /// Member with the largest Hilbert vector.
    Maximal {
        #[arg(long)]
        degree: usize,
    },
    /// Member of one of the families with the smallest Hilbert vector.
    Minimal {
        #[arg(long)]
        degree: usize,
        /// I, II or III.
        #[arg(long, default_value = "I")]
        family: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        mu: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        b: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        c: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GnCmd {
    /// Lowest-degree relation among the partial derivatives.
    Relation {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Self-vanishing system from that relation.
    Svs {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Check f(x) = f(x + t h(x)).
    Identity {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Eliminate a variable along the system.
    Cremona {
        #[arg(long)]
        pivot: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum SequenceCmd {
    /// Whether h is an O-sequence.
    OCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<usize>,
    },
    /// Whether h is an SI-sequence.
    SiCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<usize>,
    },
    /// The s-th binomial expansion of m and m^<s>.
    Expand {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        s: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut report) => {
            if cli.global.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let body = if cli.global.json {
                serde_json::to_string_pretty(&report.to_json()).expect("json values serialize") + "\n"
            } else {
                report.to_text()
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
