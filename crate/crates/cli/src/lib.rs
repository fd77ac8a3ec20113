//! Command-line front end: argument parsing, JSON documents and reports.

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use equilog::{EquilogError, LimitKind, Transfer};

#[derive(Parser, Debug)]
#[command(
    name = "equilog",
    version,
    about = "Constructions on finite equilogical objects and bounded verification of their properties"
)]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms of whatever the file contains.
    Check { file: PathBuf },
    /// Build a limit or colimit. Products and coproducts take two objects,
    /// (co)equalizers two parallel morphisms, terminal and initial `--base`.
    Limit {
        #[arg(long, value_enum)]
        kind: KindArg,
        files: Vec<PathBuf>,
        #[arg(long, default_value = "ord")]
        base: String,
        /// Also check the universal property against a bounded universe.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Exponential of two V-categories, or of two partial equilogical objects.
    Exp {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        pequ: bool,
    },
    /// Presheaf embedding of a V-category, or the partial equilogical object
    /// of an equilogical one.
    Hat { x: PathBuf },
    /// The equilogical object of a partial equilogical object.
    ReflectR { x: PathBuf },
    /// Constructions on assemblies.
    Assm {
        #[command(subcommand)]
        command: AssmCommand,
    },
    /// Pseudo-equivalence relations.
    Per {
        #[command(subcommand)]
        command: PerCommand,
    },
    /// Transfer an object along one of the functors between base categories.
    Adj {
        #[arg(long, value_enum)]
        pair: PairArg,
        #[arg(long, value_enum)]
        dir: DirArg,
        file: PathBuf,
    },
    /// Bounded brute-force verification.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// List the morphisms (one per class) between two objects.
    EnumerateHoms { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum AssmCommand {
    /// Exponential `y^x`.
    Exp { x: PathBuf, y: PathBuf },
    /// Reflection into modest sets.
    Reflect { x: PathBuf },
    /// All regular subobjects with their coforks.
    Subobjects { x: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum PerCommand {
    /// Search for reflexivity, symmetry and transitivity witnesses.
    Verify { span: PathBuf },
    /// The equilogical object of a regular-mono span.
    ToEqu { span: PathBuf },
    /// Kernel pair of a V-functor, with explicit witnesses.
    Kernel { morphism: PathBuf },
    /// Exhibit a regular-mono span as the kernel pair of its quotient.
    AsKernel { span: PathBuf },
    /// Reflection of a span into equilogical objects.
    Reflect { span: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Universal properties of limits and colimits. With `--kind` and files
    /// a single instance is checked, otherwise every instance of the universe.
    Ump {
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        files: Vec<PathBuf>,
        #[arg(long, default_value = "ord")]
        base: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Hom-set equality, unit, counit and triangle identities for a pair of
    /// transfer functors. The direction defaults to the left adjoint.
    Adjunction {
        #[arg(long, value_enum)]
        pair: PairArg,
        #[arg(long, value_enum)]
        dir: Option<DirArg>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Injectivity of a V-category with respect to initial morphisms.
    Inject {
        file: PathBuf,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// The conditions (a)-(f) on a V-category base.
    Conditions {
        #[arg(long, default_value = "ord")]
        base: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Largest carrier in competitor universes.
    #[arg(long, env = "EQUILOG_MAX_CARRIER", default_value_t = 3)]
    pub max_carrier: usize,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub time_budget: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Product,
    Coproduct,
    Equalizer,
    Coequalizer,
    Terminal,
    Initial,
}

impl From<KindArg> for LimitKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Product => LimitKind::Product,
            KindArg::Coproduct => LimitKind::Coproduct,
            KindArg::Equalizer => LimitKind::Equalizer,
            KindArg::Coequalizer => LimitKind::Coequalizer,
            KindArg::Terminal => LimitKind::Terminal,
            KindArg::Initial => LimitKind::Initial,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairArg {
    OrdMet,
    OrdTop,
    MetApp,
    TopApp,
}

impl From<PairArg> for Transfer {
    fn from(p: PairArg) -> Self {
        match p {
            PairArg::OrdMet => Transfer::OrdMet,
            PairArg::OrdTop => Transfer::OrdTop,
            PairArg::MetApp => Transfer::MetApp,
            PairArg::TopApp => Transfer::TopApp,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirArg {
    Fwd,
    Bwd,
}

/// What a command produced: success or a mathematical failure with witness.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub status: Status,
    pub summary: String,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Report {
    pub fn pass(summary: impl Into<String>, result: serde_json::Value) -> Self {
        Report {
            status: Status::Pass,
            summary: summary.into(),
            result,
            witness: None,
        }
    }

    pub fn fail(summary: impl Into<String>, result: serde_json::Value, witness: String) -> Self {
        Report {
            status: Status::Fail,
            summary: summary.into(),
            result,
            witness: Some(witness),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("reports serialize");
        }
        let mut out = self.summary.clone();
        if let Some(w) = &self.witness {
            out.push_str("\nwitness: ");
            out.push_str(w);
        }
        if !self.result.is_null() {
            out.push('\n');
            out.push_str(&serde_json::to_string_pretty(&self.result).expect("values serialize"));
        }
        out
    }
}

/// Errors that describe a property failing rather than bad input.
pub fn is_mathematical(e: &EquilogError) -> bool {
    matches!(
        e,
        EquilogError::CandidateRejected(_)
            | EquilogError::NotRegularMono
            | EquilogError::Unverified(_)
            | EquilogError::NotModest
    )
}

/// Runs one command line; returns the exit code and the text for stdout
/// and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (2, String::new(), text)
            } else {
                (0, text, String::new())
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(report) => (report.exit_code(), report.render(cli.json), String::new()),
        Err(e) if is_mathematical(&e) => {
            let report = Report::fail(format!("FAIL: {e}"), serde_json::Value::Null, e.to_string());
            (1, report.render(cli.json), String::new())
        }
        Err(e) => {
            let report = Report {
                status: Status::Error,
                summary: format!("error: {e}"),
                result: serde_json::Value::Null,
                witness: None,
            };
            if cli.json {
                (2, report.render(true), String::new())
            } else {
                (2, String::new(), report.summary)
            }
        }
    }
}
