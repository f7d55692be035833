//! Command-line front end. The binary is a thin wrapper over [`main_with`].
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 domain error.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::Tolerances;
use crate::dynamics::{trajectory, StateVector};
use crate::emfield::{apply_pstar, decompose, parse_field};
use crate::error::Error;
use crate::roots::{project, Projection, RootSystem};
use crate::s4lb::{lb_radial_residual, RadialSolution, POLE_EXCLUSION};
use crate::sample;
use crate::verify::{self, RunConfig, Suite, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectionArg {
    None,
    Planar,
    Spatial,
}

#[derive(Debug, Parser)]
#[command(
    name = "quatflag",
    version,
    about = "Quaternionic flag-manifold geometry: checks and tables"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Random draws per sampled check.
    #[arg(long, global = true, default_value_t = 500)]
    pub trials: usize,
    /// Tolerance override, KEY=VAL; repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VAL")]
    pub tol: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an invariant suite: all, coset, forms, liealg, s4, em, dynamics, roots.
    Verify { suite: String },
    /// Tabulate a radial solution on S^4.
    Lb {
        /// l as an integer or half-integer ("3/2" or "1.5"); 0 selects f0.
        #[arg(long, default_value = "0")]
        ell: String,
        #[arg(long = "n", default_value_t = 0)]
        n: u32,
        /// Grid points on (0.05, pi - 0.05); odd counts include pi/2.
        #[arg(long, default_value_t = 201)]
        samples: usize,
        /// Also write solution metadata as JSON here.
        #[arg(long, value_name = "PATH")]
        meta: Option<PathBuf>,
    },
    /// List the roots of sp(n).
    Roots {
        #[arg(long = "n", default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ProjectionArg::None)]
        projection: ProjectionArg,
    },
    /// Apply p* to a polynomial field, e.g. --field "A0=x0*x3; A1=-x2".
    Em {
        #[arg(long, required = true)]
        field: Vec<String>,
    },
    /// Evolve a random state under a random generator from the seed.
    Evolve {
        #[arg(long = "n", default_value_t = 3)]
        n: usize,
        /// Size of the system block.
        #[arg(long, default_value_t = 1)]
        split: usize,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
}

/// Outcome of a command: text to emit and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(_) | Error::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn parse_ell(s: &str) -> Result<u32, CliError> {
    let bad = || CliError::Usage(format!("ell must be a nonnegative integer or half-integer, got '{s}'"));
    let twice = if let Some((num, den)) = s.split_once('/') {
        let num: u32 = num.trim().parse().map_err(|_| bad())?;
        match den.trim() {
            "1" => 2 * num,
            "2" => num,
            _ => return Err(bad()),
        }
    } else {
        let v: f64 = s.trim().parse().map_err(|_| bad())?;
        let t = 2.0 * v;
        if !(t >= 0.0 && t.fract() == 0.0 && t < 1e6) {
            return Err(bad());
        }
        t as u32
    };
    Ok(twice)
}

/// Execute a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = Tolerances::default().with_overrides(cli.tol.iter().map(String::as_str))?;
    match &cli.command {
        Command::Verify { suite } => {
            let suites = Suite::parse(suite)?;
            let cfg = RunConfig {
                seed: cli.seed,
                trials: cli.trials,
                tol,
            };
            let report = verify::run(&suites, &cfg);
            let output = match cli.format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from("suite,check,passed,residual,threshold,samples\n");
                    for r in &report.suites {
                        for c in &r.checks {
                            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
                            writeln!(
                                s,
                                "{},\"{}\",{},{},{},{}",
                                r.suite.name(),
                                c.name.replace('"', "\"\""),
                                c.passed,
                                opt(c.residual),
                                opt(c.threshold),
                                c.samples.map(|n| n.to_string()).unwrap_or_default()
                            )
                            .unwrap();
                        }
                    }
                    s
                }
            };
            Ok(Outcome {
                output,
                code: if report.passed { EXIT_PASS } else { EXIT_CHECK_FAILED },
            })
        }
        Command::Lb { ell, n, samples, meta } => {
            let two_ell = parse_ell(ell)?;
            let sol = if two_ell == 0 {
                RadialSolution::f0()
            } else {
                RadialSolution::g_ell(two_ell, *n)?
            };
            let samples = (*samples).max(1);
            let span = PI - 2.0 * POLE_EXCLUSION;
            let mut rows = Vec::with_capacity(samples);
            let mut max_res = 0.0f64;
            for i in 0..samples {
                let w = POLE_EXCLUSION + span * (i + 1) as f64 / (samples + 1) as f64;
                let r = lb_radial_residual(&sol, w)?;
                max_res = max_res.max(r.abs());
                rows.push((w, sol.value(w), r));
            }
            let metadata = json!({
                "schema_version": SCHEMA_VERSION,
                "kind": sol.kind,
                "ell": sol.ell(),
                "n": sol.n,
                "theta_sq": sol.theta_sq,
                "theta": sol.theta(),
                "coefficients": sol.coeffs,
                "samples": samples,
                "residual_max": max_res,
            });
            if let Some(path) = meta {
                std::fs::write(path, to_json(&metadata))
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let output = match cli.format {
                Format::Csv => {
                    let mut s = String::from("omega,value,residual\n");
                    for (w, v, r) in &rows {
                        writeln!(s, "{w},{v},{r}").unwrap();
                    }
                    s
                }
                Format::Json => {
                    let table: Vec<_> = rows
                        .iter()
                        .map(|(w, v, r)| json!({"omega": w, "value": v, "residual": r}))
                        .collect();
                    to_json(&json!({"metadata": metadata, "rows": table, "schema_version": SCHEMA_VERSION}))
                }
            };
            Ok(Outcome {
                output,
                code: EXIT_PASS,
            })
        }
        Command::Roots { n, projection } => {
            let rs = RootSystem::generate(*n)?;
            let proj = match projection {
                ProjectionArg::None => None,
                ProjectionArg::Planar => Some(Projection::Planar),
                ProjectionArg::Spatial => Some(Projection::Spatial),
            };
            let output = match cli.format {
                Format::Csv => {
                    let mut header: Vec<String> = (1..=*n).map(|i| format!("L{i}")).collect();
                    match proj {
                        Some(Projection::Planar) => header.extend(["x".into(), "y".into()]),
                        Some(Projection::Spatial) => header.extend(["x".into(), "y".into(), "z".into()]),
                        None => {}
                    }
                    let mut s = header.join(",") + "\n";
                    for r in &rs.roots {
                        let mut cells: Vec<String> = r.iter().map(i32::to_string).collect();
                        if let Some(p) = proj {
                            cells.extend(project(r, p).iter().map(f64::to_string));
                        }
                        s += &(cells.join(",") + "\n");
                    }
                    s
                }
                Format::Json => {
                    let roots: Vec<_> = rs
                        .roots
                        .iter()
                        .map(|r| match proj {
                            Some(p) => json!({"coeffs": r, "projection": project(r, p)}),
                            None => json!({"coeffs": r}),
                        })
                        .collect();
                    to_json(&json!({"schema_version": SCHEMA_VERSION, "n": n, "count": rs.len(), "roots": roots}))
                }
            };
            Ok(Outcome {
                output,
                code: EXIT_PASS,
            })
        }
        Command::Em { field } => {
            let psi = parse_field(field)?;
            let image = apply_pstar(&psi);
            let d = decompose(&psi);
            let rendered = d.render();
            let output = match cli.format {
                Format::Csv => {
                    let mut s = String::from("quantity,expression\n");
                    let names = ["A0", "A1", "A2", "A3"];
                    for (nm, e) in names.iter().zip(psi.render()) {
                        writeln!(s, "{nm},\"{e}\"").unwrap();
                    }
                    for (nm, e) in ["pstar0", "pstar1", "pstar2", "pstar3"].iter().zip(image.render()) {
                        writeln!(s, "{nm},\"{e}\"").unwrap();
                    }
                    writeln!(s, "scalar,\"{}\"", rendered.scalar).unwrap();
                    for i in 0..3 {
                        writeln!(s, "E{},\"{}\"", i + 1, rendered.e[i]).unwrap();
                    }
                    for i in 0..3 {
                        writeln!(s, "B{},\"{}\"", i + 1, rendered.b[i]).unwrap();
                    }
                    writeln!(s, "consistent,{}", rendered.consistent).unwrap();
                    s
                }
                Format::Json => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "field": psi.render(),
                    "pstar": image.render(),
                    "decomposition": rendered,
                })),
            };
            Ok(Outcome {
                output,
                code: if d.consistent { EXIT_PASS } else { EXIT_CHECK_FAILED },
            })
        }
        Command::Evolve { n, split, t_end, steps } => {
            if *n == 0 || *split == 0 || split >= n {
                return Err(CliError::Domain(format!(
                    "need 1 <= split < n, got split={split}, n={n}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let gen = sample::skew(&mut rng, *n, 1.0);
            let psi = StateVector::new((0..*n).map(|_| sample::quaternion(&mut rng, 1.0)).collect(), *split)?;
            let points = trajectory(&gen, &psi, *t_end, *steps, &tol)?;
            let output = match cli.format {
                Format::Csv => {
                    let mut s =
                        String::from("t,norm_sq,system_norm_sq,surroundings_norm_sq,exchange_in,exchange_out\n");
                    for p in &points {
                        writeln!(
                            s,
                            "{},{},{},{},{},{}",
                            p.t, p.norm_sq, p.system_norm_sq, p.surroundings_norm_sq, p.exchange_in, p.exchange_out
                        )
                        .unwrap();
                    }
                    s
                }
                Format::Json => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "seed": cli.seed,
                    "n": n,
                    "split": split,
                    "points": points,
                })),
            };
            Ok(Outcome {
                output,
                code: EXIT_PASS,
            })
        }
    }
}

/// Parse arguments, run, write output; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &out.output),
                None => std::io::stdout().write_all(out.output.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            out.code
        }
        Err(e) => {
            match &e {
                CliError::Usage(m) | CliError::Domain(m) => eprintln!("error: {m}"),
            }
            e.code()
        }
    }
}
