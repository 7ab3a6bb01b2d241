//! Command-line front end: norms, pairings, operators and experiment reports.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flatnorm::flat_norm::{dual_norm, Ball, NormConfig, DEFAULT_SUPPORT_CAP};
use flatnorm::io::{
    format_number, norm_result_to_json, parse_function, parse_measure, parse_measure_list,
    parse_operator, parse_space, point_from_json, serialize_measure,
};
use flatnorm::markov::{eproperty_probe, MarkovOperator};
use flatnorm::measure::DiscreteSignedMeasure;
use flatnorm::metric::{validate_metric, MetricSpace, Point};
use flatnorm::schur_lab::{
    default_line_dictionary, dictionary_convergence_scan, dirac_drift_demo, discrete_l1_demo,
    find_separated_clusters, oscillating_density_demo, verify_clusters, Column, ExperimentReport,
    MeasureSequence, Table,
};
use flatnorm::Error;

/// Exit status for malformed input or arguments.
pub const EXIT_INVALID: i32 = 2;
/// Exit status when a size cap is exceeded.
pub const EXIT_CAP: i32 = 3;
/// Exit status for internal failures (solver breakdown, failed self-checks).
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "flatnorm",
    version,
    about = "Flat and Fortet-Mourier norms of discrete signed measures"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Unit ball of the dual norm.
    #[arg(long, global = true, value_enum, default_value = "bl")]
    ball: BallArg,
    /// Tolerance for identifying nearby points in input measures.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest support accepted by the LP (overrides FLATNORM_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BallArg {
    Bl,
    Fm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Total variation of a measure.
    Tv { measure: String },
    /// Dual norm of a measure, with witness.
    Norm { measure: String },
    /// Dual-norm distance between two measures.
    Dist { a: String, b: String },
    /// Pairing of a measure with a function.
    Pair { measure: String, function: String },
    /// Image of a measure under an operator (or its n-th power).
    Pushforward {
        operator: String,
        measure: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Sampled modulus of continuity of U^k f, k = 0..=n-max, at a point.
    Eproperty {
        operator: String,
        function: String,
        /// Centre point, as JSON (a number, coordinate array, integer or label).
        #[arg(long)]
        x0: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.001, 0.01, 0.1])]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        /// Operator space, as JSON, when the operator file names none.
        #[arg(long)]
        space: Option<String>,
    },
    /// Experiment reports.
    #[command(subcommand)]
    Demo(Demo),
    /// Check the metric axioms of a finite space.
    ValidateMetric { space: String },
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Oscillating densities n·sin(2πnx) against the sawtooth functions.
    #[command(name = "oscillating-density", alias = "counterexample-3-2")]
    OscillatingDensity {
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 4, 8, 16, 32, 64])]
        n: Vec<u32>,
    },
    /// δ_n - δ_{n+1/n}: flat norms and Jordan-part pairings.
    DiracDrift {
        #[arg(long, default_value_t = 64)]
        n_max: u32,
    },
    /// BL/TV ratios of random signed measures on {0, ..., n-1}.
    DiscreteL1 {
        #[arg(long, default_value_t = 51)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Separated clusters in a list of positive measures (default: δ_{3k}, k = 1..=n).
    Clusters {
        measures: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
    /// Dictionary pairings and flat tail of δ_n - δ_{n+1/n}.
    Scan {
        #[arg(long, default_value_t = 64)]
        n_max: u32,
    },
}

struct Failure {
    code: i32,
    message: String,
    stdout: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SupportTooLarge { .. } | Error::AtomCapExceeded { .. } => EXIT_CAP,
            Error::Solver(_) | Error::InvariantViolation(_) => EXIT_FAILURE,
            _ => EXIT_INVALID,
        };
        let stdout = match &e {
            Error::SupportTooLarge { size, cap } => {
                Some(json!({"status": "size_exceeded", "size": size, "cap": cap}))
            }
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            stdout,
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
        stdout: None,
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { EXIT_INVALID };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(f) => {
            if let Some(v) = f.stdout {
                let _ = writeln!(out, "{v}");
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read `{path}`: {e}")))
}

fn in_file(path: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        if f.code == EXIT_INVALID {
            f.message = format!("{path}: {}", f.message);
        }
        f
    }
}

impl Global {
    fn config(&self) -> Result<NormConfig, Failure> {
        let cap = match self.cap {
            Some(c) => c,
            None => match std::env::var("FLATNORM_CAP") {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("FLATNORM_CAP: `{v}` is not a size")))?,
                Err(_) => DEFAULT_SUPPORT_CAP,
            },
        };
        Ok(NormConfig { support_cap: cap })
    }

    fn ball(&self) -> Ball {
        match self.ball {
            BallArg::Bl => Ball::Bl,
            BallArg::Fm => Ball::Fm,
        }
    }

    fn measure(&self, path: &str) -> Result<DiscreteSignedMeasure, Failure> {
        let mu = parse_measure(&read(path)?).map_err(in_file(path))?;
        match self.tol {
            None => Ok(mu),
            Some(tol) => {
                let space = mu.space().clone().with_point_tolerance(tol)?;
                Ok(DiscreteSignedMeasure::new(&space, mu.atoms().to_vec())?)
            }
        }
    }

    fn check(&self) -> Result<(), Failure> {
        if let Some(t) = self.tol {
            if !(t > 0.0) || !t.is_finite() {
                return Err(invalid("--tol must be positive"));
            }
        }
        Ok(())
    }

    fn emit(&self, report: &ExperimentReport) -> String {
        match self.format {
            Format::Json => report.to_json_string(),
            Format::Csv => report.to_csv().trim_end().to_string(),
        }
    }
}

fn json_only(g: &Global, command: &str) -> Result<(), Failure> {
    if g.format == Format::Csv {
        return Err(invalid(format!(
            "--format csv is not available for `{command}`"
        )));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    g.check()?;
    match &cli.command {
        Command::Tv { measure } => Ok(format_number(g.measure(measure)?.tv_norm())),
        Command::Norm { measure } => {
            json_only(g, "norm")?;
            let mu = g.measure(measure)?;
            let result = dual_norm(&mu, g.ball(), &g.config()?)?;
            Ok(norm_result_to_json(&result, mu.space()).to_string())
        }
        Command::Dist { a, b } => {
            let (mu, nu) = (g.measure(a)?, g.measure(b)?);
            let diff = mu.subtract(&nu)?;
            Ok(format_number(
                dual_norm(&diff, g.ball(), &g.config()?)?.value,
            ))
        }
        Command::Pair { measure, function } => {
            let mu = g.measure(measure)?;
            let f = parse_function(&read(function)?, mu.space()).map_err(in_file(function))?;
            Ok(format_number(mu.pair(&f)?))
        }
        Command::Pushforward {
            operator,
            measure,
            n,
        } => {
            json_only(g, "pushforward")?;
            let mu = g.measure(measure)?;
            let op = parse_operator(&read(operator)?, mu.space()).map_err(in_file(operator))?;
            Ok(serialize_measure(&op.iterate(&mu, *n)?)?)
        }
        Command::Eproperty {
            operator,
            function,
            x0,
            radii,
            samples,
            n_max,
            space,
        } => {
            let default_space = match space {
                Some(s) => parse_space(s).map_err(in_file("--space"))?,
                None => MetricSpace::real_line(),
            };
            let op = parse_operator(&read(operator)?, &default_space).map_err(in_file(operator))?;
            let f = parse_function(&read(function)?, op.space()).map_err(in_file(function))?;
            let x0_value: Value =
                serde_json::from_str(x0).map_err(|e| invalid(format!("--x0: {e}")))?;
            let x0 = point_from_json(op.space(), &x0_value, "--x0")?;
            let family = op.iterates(*n_max)?;
            let report = eproperty_report(&family, &f, &x0, radii, *samples, g.seed)?;
            Ok(g.emit(&report))
        }
        Command::Demo(demo) => Ok(g.emit(&run_demo(demo, g)?)),
        Command::ValidateMetric { space } => {
            json_only(g, "validate-metric")?;
            let s = parse_space(&read(space)?).map_err(in_file(space))?;
            let violations = validate_metric(&s)?;
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Ok(json!({"valid": list.is_empty(), "violations": list}).to_string())
        }
    }
}

fn eproperty_report(
    family: &[MarkovOperator],
    f: &flatnorm::lipschitz::LipFunction,
    x0: &Point,
    radii: &[f64],
    samples: usize,
    seed: u64,
) -> Result<ExperimentReport, Failure> {
    let table = eproperty_probe(family, f, x0, radii, samples, seed)?;
    let mut t = Table::default()
        .with("radius", Column::Real(table.radii.clone()))
        .with("modulus", Column::Real(table.modulus.clone()))
        .with(
            "samples",
            Column::Int(table.samples.iter().map(|&s| s as i64).collect()),
        );
    for (label, row) in table.labels.iter().zip(&table.per_member) {
        t = t.with(label, Column::Real(row.clone()));
    }
    let mut report = ExperimentReport::new("eproperty")
        .param("center", json!(table.center.to_string()))
        .param("members", json!(table.labels.len()))
        .param("samples_per_radius", json!(samples));
    report.seed = Some(seed);
    report.tables.push(("modulus".into(), t));
    Ok(report)
}

fn run_demo(demo: &Demo, g: &Global) -> Result<ExperimentReport, Failure> {
    Ok(match demo {
        Demo::OscillatingDensity { n } => oscillating_density_demo(n)?,
        Demo::DiracDrift { n_max } => dirac_drift_demo(*n_max)?,
        Demo::DiscreteL1 { n, trials } => discrete_l1_demo(*n, *trials, g.seed, &g.config()?)?,
        Demo::Clusters {
            measures,
            epsilon,
            n,
        } => {
            let ms = match measures {
                Some(path) => parse_measure_list(&read(path)?).map_err(in_file(path))?,
                None => {
                    let r = MetricSpace::real_line();
                    (1..=*n)
                        .map(|k| DiscreteSignedMeasure::dirac(&r, Point::real(3.0 * k as f64)))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            let witnesses = find_separated_clusters(&ms, *epsilon)?.unwrap_or_default();
            let verified = verify_clusters(&ms, *epsilon, &witnesses)?;
            let mut report = ExperimentReport::new("clusters")
                .param("epsilon", json!(epsilon))
                .param("measures", json!(ms.len()));
            report.tables.push((
                "witnesses".into(),
                Table::default()
                    .with(
                        "index",
                        Column::Int(witnesses.iter().map(|w| w.index as i64).collect()),
                    )
                    .with(
                        "cluster",
                        Column::Text(
                            witnesses
                                .iter()
                                .map(|w| {
                                    w.cluster
                                        .iter()
                                        .map(ToString::to_string)
                                        .collect::<Vec<_>>()
                                        .join(" ")
                                })
                                .collect(),
                        ),
                    )
                    .with(
                        "mass",
                        Column::Real(witnesses.iter().map(|w| w.mass).collect()),
                    ),
            ));
            report
                .summary
                .push(("witnesses".into(), witnesses.len() as f64));
            report
                .summary
                .push(("post_check_passed".into(), if verified { 1.0 } else { 0.0 }));
            report
        }
        Demo::Scan { n_max } => {
            let dict = default_line_dictionary()?;
            dictionary_convergence_scan(&MeasureSequence::dirac_drift(), &dict, *n_max)?
        }
    })
}
