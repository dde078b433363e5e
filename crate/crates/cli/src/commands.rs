//! Argument parsing and command dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rcm_core::corpus::{corpus_entry, corpus_names};
use rcm_core::local_cohomology::{default_j_window, default_k_window, lc_component_from, component_resolution};
use rcm_core::oracle::cross_check_with;
use rcm_core::rcm::{descent_chain, maximal_rcm_check, rcm_report_with};
use rcm_core::{free_resolution, PresentedModule, PrimeField, DEFAULT_PRIME};
use serde::Serialize;
use serde_json::Value;

use crate::format::{parse_module_file, write_json, write_text, FormatError};
use crate::report::{
    render_text, AnalyzeReport, CrossCheckJson, DescentJson, LcRecord, MaximalJson, RcmVerdict,
    ResolutionJson, ComponentResolutionJson,
};
use crate::suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "rcm", version, about = "Relative Cohen-Macaulay analysis of bigraded modules over F_p[x, y]")]
pub struct Cli {
    /// Seed for randomized steps (regular-element search)
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Prime field characteristic, overriding the module file
    #[arg(long, global = true)]
    pub field: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, grades, cohomological dimensions and identity checks
    Analyze { file: PathBuf },
    /// Relative Cohen-Macaulay verdicts for Q and P
    Rcm { file: PathBuf },
    /// Components H^i_Q(M)_j for j in a window, as K[x]-modules
    Lc {
        #[arg(long)]
        i: usize,
        #[arg(long, allow_negative_numbers = true)]
        j_min: i32,
        #[arg(long, allow_negative_numbers = true)]
        j_max: i32,
        file: PathBuf,
    },
    /// Minimal bigraded free resolution
    Resolve { file: PathBuf },
    /// Explicit K[x]-resolution of H^q_Q(M)_j for relative Cohen-Macaulay M
    Thm22 {
        #[arg(long)]
        q: usize,
        #[arg(long, allow_negative_numbers = true)]
        j: i32,
        file: PathBuf,
    },
    /// Compare local cohomology dimensions with the strand duality oracle
    OracleCheck {
        /// x-degree window LO:HI (default from the resolution twists)
        #[arg(long, allow_hyphen_values = true)]
        k_window: Option<String>,
        /// y-degree window LO:HI (default from the resolution twists)
        #[arg(long, allow_hyphen_values = true)]
        j_window: Option<String>,
        file: PathBuf,
    },
    /// Regular-element descent to relative dimension 0
    Descent { file: PathBuf },
    /// Maximal relative Cohen-Macaulay and freeness verdicts
    Maximal { file: PathBuf },
    /// Built-in test modules
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Run the acceptance criteria over the built-in corpus
    Suite,
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// List entry names
    List,
    /// Print an entry as a module file
    Gen { name: String },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Math(String),
    Internal(String),
}

impl From<rcm_core::Error> for Failure {
    fn from(e: rcm_core::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else if e.is_mathematical() {
            Failure::Math(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(path: &PathBuf, field: Option<u32>) -> Result<PresentedModule, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_module_file(&text, field).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_window(s: &str) -> Result<(i32, i32), Failure> {
    let bad = || Failure::Input(format!("window must look like LO:HI, got {s}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: i32 = a.trim().parse().map_err(|_| bad())?;
    let hi: i32 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn emit<T: Serialize>(value: &T, format: Format) -> String {
    let v: Value = serde_json::to_value(value).expect("reports serialize");
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(&v),
    }
}

#[derive(Serialize)]
struct LcTable {
    i: usize,
    j_min: i32,
    j_max: i32,
    components: Vec<LcRecord>,
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Analyze { file } => {
            let m = load(file, cli.field)?;
            let res = free_resolution(&m)?;
            let rep = rcm_report_with(&m, &res)?;
            Ok(emit(&AnalyzeReport::new(&rep, &res), fmt))
        }
        Command::Rcm { file } => {
            let m = load(file, cli.field)?;
            let res = free_resolution(&m)?;
            let rep = rcm_report_with(&m, &res)?;
            let v = RcmVerdict::new(&rep);
            Ok(match fmt {
                Format::Text => v.text(),
                Format::Json => emit(&v, fmt),
            })
        }
        Command::Lc { i, j_min, j_max, file } => {
            if j_min > j_max {
                return Err(Failure::Input("--j-min exceeds --j-max".into()));
            }
            let m = load(file, cli.field)?;
            let res = free_resolution(&m)?;
            let mut components = Vec::new();
            for j in *j_min..=*j_max {
                let h = lc_component_from(&res, *i, j)?;
                components.push(LcRecord::new(*i, j, &h)?);
            }
            Ok(emit(&LcTable { i: *i, j_min: *j_min, j_max: *j_max, components }, fmt))
        }
        Command::Resolve { file } => {
            let m = load(file, cli.field)?;
            Ok(emit(&ResolutionJson::from(&free_resolution(&m)?), fmt))
        }
        Command::Thm22 { q, j, file } => {
            let m = load(file, cli.field)?;
            let t = component_resolution(&m, *q, *j)?;
            if !t.kernel_is_free() {
                return Err(Failure::Internal(format!("kernel at j = {j} is not free")));
            }
            Ok(emit(&ComponentResolutionJson::from(&t), fmt))
        }
        Command::OracleCheck { k_window, j_window, file } => {
            let m = load(file, cli.field)?;
            let res = free_resolution(&m)?;
            let kw = match k_window {
                Some(s) => parse_window(s)?,
                None => default_k_window(&res),
            };
            let jw = match j_window {
                Some(s) => parse_window(s)?,
                None => default_j_window(&res),
            };
            let rep = CrossCheckJson::from(&cross_check_with(&m, &res, kw, jw)?);
            Ok(match fmt {
                Format::Json => emit(&rep, fmt),
                Format::Text => {
                    let mut s = format!(
                        "{} mismatches (checked {} values, k window [{}, {}], j window [{}, {}])\n",
                        rep.mismatch_count, rep.checked, rep.k_window[0], rep.k_window[1], rep.j_window[0], rep.j_window[1]
                    );
                    for mm in &rep.mismatches {
                        s.push_str(&format!(
                            "k {} j {} i {}: pipeline {} oracle {}\n",
                            mm.k, mm.j, mm.i, mm.pipeline_dim, mm.oracle_dim
                        ));
                    }
                    s
                }
            })
        }
        Command::Descent { file } => {
            let m = load(file, cli.field)?;
            let chain = descent_chain(&m, cli.seed)?;
            Ok(emit(&DescentJson::new(&chain, m.ring()), fmt))
        }
        Command::Maximal { file } => {
            let m = load(file, cli.field)?;
            Ok(emit(&MaximalJson::from(&maximal_rcm_check(&m)?), fmt))
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => Ok(corpus_names().join("\n") + "\n"),
            CorpusAction::Gen { name } => {
                let field = PrimeField::new(cli.field.unwrap_or(DEFAULT_PRIME)).map_err(Failure::from)?;
                let e = corpus_entry(name, field).map_err(|e| Failure::Input(e.to_string()))?;
                Ok(match fmt {
                    Format::Text => format!("# {}\n{}", e.name, write_text(&e.module)),
                    Format::Json => write_json(&e.module) + "\n",
                })
            }
        },
        Command::Suite => {
            let field = PrimeField::new(cli.field.unwrap_or(DEFAULT_PRIME)).map_err(Failure::from)?;
            let report = suite::run_all(field, cli.seed);
            Ok(match fmt {
                Format::Json => report.to_json(),
                Format::Text => report.lines(),
            })
        }
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Math(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("rejected: {msg}\n") },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("input error: {msg}\n") },
        Err(Failure::Internal(msg)) => {
            Outcome { code: 3, stdout: String::new(), stderr: format!("internal error: {msg}\n") }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rcm_core::Ideal;

    fn code(e: rcm_core::Error) -> i32 {
        match Failure::from(e) {
            Failure::Math(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    #[test]
    fn error_classes() {
        assert_eq!(code(rcm_core::Error::NotRelativeCm(Ideal::Q)), 1);
        assert_eq!(code(rcm_core::Error::SearchExhausted { attempts: 32 }), 1);
        assert_eq!(code(rcm_core::Error::InvalidPrime(4)), 2);
        assert_eq!(code(rcm_core::Error::NotBihomogeneous), 2);
        assert_eq!(code(rcm_core::Error::Internal("x".into())), 3);
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("-3:4").unwrap(), (-3, 4));
        assert!(parse_window("4:-3").is_err());
        assert!(parse_window("4").is_err());
    }
}
