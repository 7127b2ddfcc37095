//! Command-line front end: argument parsing, input loading and report
//! rendering. The binary in `main.rs` only maps [`CliError`] to exit codes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degree0::experiment::{self, ExperimentConfig, ExperimentOutput, Family};
use degree0::hopf::{self, HopfParam, DEFAULT_HEIGHT_BOUND};
use degree0::io::{FormSpec, HopfInput, K3Input, TorusInput};
use degree0::k3::{self, IntersectionForm, PeriodPoint};
use degree0::linalg::FieldMatrix;
use degree0::serde_util::canonical_json;
use degree0::torus::{self, SConvention};
use degree0::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "degree0", version, about = "Transcendence degree of complex tori, Hopf surfaces and K3 surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one surface given as JSON input or a built-in example.
    Classify {
        family: FamilyArg,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: CommonArgs,
    },
    /// Check that a witness function is invariant under `t`.
    VerifyWitness {
        family: HopfOnly,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: CommonArgs,
    },
    /// Classify random samples and summarize the verdicts.
    Experiment {
        family: FamilyArg,
        /// Comma-separated radicands of the coefficient field.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        radicands: Vec<i64>,
        /// Height bound for sampled rational coordinates.
        #[arg(long, default_value_t = 7)]
        height: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Intersection form for K3 samples: `preset:u`, `preset:uu` or `preset:k3`.
        #[arg(long, default_value = "preset:uu")]
        form: String,
        /// Include wall-clock time in the summary (not reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        opts: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Torus,
    Hopf,
    K3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HopfOnly {
    Hopf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ConventionArg {
    #[default]
    Displayed,
    Transposed,
}

impl From<ConventionArg> for SConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Displayed => SConvention::Displayed,
            ConventionArg::Transposed => SConvention::Transposed,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON input file.
    #[arg(short, long, conflicts_with = "example")]
    pub input: Option<PathBuf>,
    /// Built-in input: siegel, shafarevich, riemann-s3, s3-outside-m,
    /// diag35, diag28, diag22, jordan2, uu-generic, uu-special.
    #[arg(long)]
    pub example: Option<String>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Dependence search bound for Hopf eigenvalues outside Q(i).
    #[arg(long)]
    pub bound: Option<u64>,
    /// Reading of the Riemann locus `S_n` for tori.
    #[arg(long, value_enum, default_value_t)]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DivisionByZero | Error::NotReal | Error::NoWitnessForDegree0 => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        CliError { code, message: e.to_string() }
    }
}

/// What a command produced: the main report and an optional side channel
/// (the experiment summary when rows go out as CSV).
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: Cli) -> Result<Rendered, CliError> {
    let (rendered, output) = match cli.command {
        Command::Classify { family, input, opts } => (classify(family, &input, &opts)?, opts.output),
        Command::VerifyWitness { input, opts, .. } => (verify_witness(&input, &opts)?, opts.output),
        Command::Experiment { family, radicands, height, count, seed, form, timing, opts } => {
            let mut config = ExperimentConfig::new(match family {
                FamilyArg::Torus => Family::Torus,
                FamilyArg::Hopf => Family::Hopf,
                FamilyArg::K3 => Family::K3,
            });
            config.radicands = radicands;
            config.height = height;
            config.count = count;
            config.seed = seed;
            config.bound = opts.bound.unwrap_or(DEFAULT_HEIGHT_BOUND);
            config.convention = opts.convention.into();
            config.form = FormSpec::Preset(form).resolve()?;
            let start = std::time::Instant::now();
            let mut out = experiment::run(&config)?;
            if timing {
                out.summary.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            (render_experiment(&out, opts.format), opts.output)
        }
    };
    match output {
        Some(path) => {
            std::fs::write(&path, &rendered.stdout)
                .map_err(|e| CliError { code: EXIT_INTERNAL, message: format!("{}: {e}", path.display()) })?;
            Ok(Rendered { stdout: String::new(), stderr: rendered.stderr })
        }
        None => Ok(rendered),
    }
}

fn read_input(input: &InputArgs) -> Result<Option<String>, CliError> {
    match &input.input {
        Some(path) => std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display()))),
        None => Ok(None),
    }
}

fn missing_input() -> CliError {
    CliError::invalid("one of --input or --example is required")
}

fn unknown_example(name: &str, family: &str) -> CliError {
    CliError::invalid(format!("no {family} example named `{name}`"))
}

fn torus_matrix(input: &InputArgs) -> Result<(FieldMatrix, Option<SConvention>), CliError> {
    if let Some(text) = read_input(input)? {
        let inp = TorusInput::from_json_str(&text)?;
        return Ok((inp.matrix()?, inp.convention));
    }
    let name = input.example.as_deref().ok_or_else(missing_input)?;
    let z = match name {
        "siegel" => torus::examples::siegel().matrix().clone(),
        "shafarevich" => torus::examples::shafarevich().matrix().clone(),
        "riemann-s3" => torus::examples::riemann_s3().matrix().clone(),
        "s3-outside-m" => torus::examples::s3_outside_m(),
        other => return Err(unknown_example(other, "torus")),
    };
    Ok((z, None))
}

fn hopf_param(input: &InputArgs) -> Result<(HopfParam, Option<u64>, Option<hopf::WitnessFunction>), CliError> {
    if let Some(text) = read_input(input)? {
        let inp = HopfInput::from_json_str(&text)?;
        return Ok((inp.param()?, Some(inp.height_bound), inp.witness_function()?));
    }
    let name = input.example.as_deref().ok_or_else(missing_input)?;
    let t = match name {
        "diag35" => hopf::examples::diag35(),
        "diag28" => hopf::examples::diag28(),
        "diag22" => hopf::examples::diag22(),
        "jordan2" => hopf::examples::jordan2(),
        other => return Err(unknown_example(other, "hopf")),
    };
    Ok((t, None, None))
}

fn k3_point(input: &InputArgs) -> Result<(IntersectionForm, PeriodPoint), CliError> {
    if let Some(text) = read_input(input)? {
        return Ok(K3Input::from_json_str(&text)?.resolve()?);
    }
    let name = input.example.as_deref().ok_or_else(missing_input)?;
    let p = match name {
        "uu-generic" => k3::examples::generic_uu(),
        "uu-special" => k3::examples::special_uu(),
        other => return Err(unknown_example(other, "k3")),
    };
    Ok((IntersectionForm::uu(), p))
}

fn no_csv(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::invalid("csv output is only available for experiments"));
    }
    Ok(())
}

fn classify(family: FamilyArg, input: &InputArgs, opts: &CommonArgs) -> Result<Rendered, CliError> {
    no_csv(opts.format)?;
    let text = match family {
        FamilyArg::Torus => {
            let (z, conv) = torus_matrix(input)?;
            let conv = if opts.convention == ConventionArg::Transposed { SConvention::Transposed } else { conv.unwrap_or_default() };
            let report = torus::classify_matrix(z, conv)?;
            match opts.format {
                Format::Text => {
                    let mut s = String::new();
                    writeln!(s, "verdict: {}", report.verdict.as_str()).unwrap();
                    writeln!(s, "in_M: {}", report.in_m).unwrap();
                    let sn = report.s_membership.as_ref().map(ToString::to_string);
                    writeln!(s, "s_membership: {}", sn.as_deref().unwrap_or("none")).unwrap();
                    writeln!(s, "in_S0: {}", report.in_s0).unwrap();
                    writeln!(s, "r_kernel_rank: {}", report.r_kernel.rank()).unwrap();
                    let w = report.admissible_witness.as_ref().map(|m| {
                        m.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                    });
                    writeln!(s, "admissible_witness: {}", w.as_deref().unwrap_or("none")).unwrap();
                    s
                }
                _ => canonical_json(&report),
            }
        }
        FamilyArg::Hopf => {
            let (t, bound, _) = hopf_param(input)?;
            let bound = opts.bound.or(bound).unwrap_or(DEFAULT_HEIGHT_BOUND);
            let report = hopf::classify(&t, bound)?;
            match opts.format {
                Format::Text => {
                    let mut s = String::new();
                    writeln!(s, "verdict: {}", report.verdict.as_str()).unwrap();
                    writeln!(s, "class: {:?}", report.class).unwrap();
                    writeln!(s, "satisfies_ks_inequalities: {}", report.satisfies_ks_inequalities).unwrap();
                    let d = report.dependence.map(|w| format!("m={}, n={}", w.m, w.n));
                    writeln!(s, "dependence: {}", d.as_deref().unwrap_or("none")).unwrap();
                    writeln!(s, "witness: {}", report.witness_description.as_deref().unwrap_or("none")).unwrap();
                    let v = report.witness_verified.map(|b| b.to_string());
                    writeln!(s, "witness_verified: {}", v.as_deref().unwrap_or("n/a")).unwrap();
                    s
                }
                _ => canonical_json(&report),
            }
        }
        FamilyArg::K3 => {
            let (form, p) = k3_point(input)?;
            let report = k3::classify(&p, &form)?;
            match opts.format {
                Format::Text => {
                    let mut s = String::new();
                    writeln!(s, "verdict: {}", report.verdict.as_str()).unwrap();
                    let i = report.inertia;
                    writeln!(s, "inertia: ({}, {}, {})", i.pos, i.neg, i.zero).unwrap();
                    writeln!(s, "kernel_rank: {}", report.kernel_rank).unwrap();
                    s
                }
                _ => canonical_json(&report),
            }
        }
    };
    Ok(Rendered { stdout: text, stderr: String::new() })
}

#[derive(serde::Serialize)]
struct WitnessCheck {
    witness: hopf::WitnessFunction,
    description: String,
    verified: bool,
}

fn verify_witness(input: &InputArgs, opts: &CommonArgs) -> Result<Rendered, CliError> {
    no_csv(opts.format)?;
    let (t, bound, given) = hopf_param(input)?;
    let witness = match given {
        Some(f) => f,
        None => {
            let bound = opts.bound.or(bound).unwrap_or(DEFAULT_HEIGHT_BOUND);
            hopf::classify(&t, bound)?.witness.ok_or(Error::NoWitnessForDegree0).map_err(|e| {
                CliError::invalid(e.to_string())
            })?
        }
    };
    let verified = hopf::verify_witness(&witness, &t)?;
    let check = WitnessCheck { description: witness.describe(), witness, verified };
    let stdout = match opts.format {
        Format::Text => format!("witness: {}\nverified: {}\n", check.description, check.verified),
        _ => canonical_json(&check),
    };
    Ok(Rendered { stdout, stderr: String::new() })
}

pub fn render_experiment(out: &ExperimentOutput, format: Format) -> Rendered {
    match format {
        Format::Csv => Rendered { stdout: out.csv(), stderr: canonical_json(&out.summary) },
        Format::Json => Rendered { stdout: canonical_json(out), stderr: String::new() },
        Format::Text => {
            let s = &out.summary;
            let mut t = String::new();
            writeln!(t, "family: {}", s.family).unwrap();
            writeln!(t, "total: {}", s.total).unwrap();
            for (k, v) in &s.fractions {
                writeln!(t, "{k}: {v}").unwrap();
            }
            Rendered { stdout: t, stderr: String::new() }
        }
    }
}
