mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use symdisc_core::exactform::format_fraction;
use symdisc_core::nearest::{
    critical_points_with, nearest_in_discriminant_with, spherical_nearest_with, verify_criticality, Tolerances,
    GAP_REL_TOL, TIE_TOL,
};
use symdisc_core::polyhermite::{second_moment_integral, second_moment_integral_closed_form, second_moment_poly};
use symdisc_core::randgeom::{
    gap_probability, mc_second_moment, restricted_volume_estimate, two_plane_count, two_plane_csv,
    volume_identity_check, TwoPlaneConfig,
};
use symdisc_core::rng::{replica_rng, DEFAULT_SEED};
use symdisc_core::strata::{codim, count_planes, eddeg, enumerate_multiplicity_vectors};
use symdisc_core::symmat::goe_sample;
use symdisc_core::{Error, MultiplicityVector, SymmetricMatrix};

use output::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "symdisc", version, about = "Distances to, and random geometry of, symmetric matrices with repeated eigenvalues")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Random seed; the default is fixed so runs are reproducible.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Worker threads for Monte Carlo runs (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress progress lines on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct MatrixArg {
    /// Inline matrix: JSON rows like '[[1,0],[0,3]]' or {"n":..,"rows":..}.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    matrix: Option<String>,
    /// File holding the matrix as JSON or plain text ('-' for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Reject inputs whose smallest eigenvalue gap is ≤ this × (1 + ‖A‖_F).
    #[arg(long, default_value_t = GAP_REL_TOL)]
    gap_tol: f64,
    /// Critical distances closer than this tie for the minimum.
    #[arg(long, default_value_t = TIE_TOL)]
    tie_tol: f64,
}

impl TolArgs {
    fn get(&self) -> Tolerances {
        Tolerances {
            gap_rel: self.gap_tol,
            tie: self.tie_tol,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nearest matrix with a repeated eigenvalue.
    Nearest {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// All critical points of the distance to the stratum of type w.
    Critical {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Multiplicity vector, e.g. 2,1,0,0 (w_i blocks of size i).
        #[arg(long)]
        w: MultiplicityVector,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Nearest point on the discriminant within the unit sphere (geodesic distance).
    Spherical {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Scale the input to unit Frobenius norm first.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Table of strata: codimension, number of planes and ED degree.
    Strata {
        #[arg(long)]
        n: usize,
        /// Include the open stratum of simple spectra.
        #[arg(long)]
        all: bool,
    },
    /// Exact E det(Q − u)² over GOE(k) and its Gaussian integral.
    Moment {
        #[arg(long)]
        k: usize,
        /// Also evaluate the polynomial at this point.
        #[arg(long)]
        u: Option<f64>,
        /// Monte Carlo samples to check the value at --u (0 to skip).
        #[arg(long, default_value_t = 0, requires = "u")]
        samples: u64,
    },
    /// Check the Gaussian integral of every moment polynomial k = 1..=max_k exactly.
    VerifyCharpol {
        #[arg(long, default_value_t = 30)]
        max_k: usize,
    },
    /// Check the exact volume identity for n = 2..=max_n.
    VolumeCheck {
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
    /// Probability that the smallest eigenvalue gap of GOE(n) is at most ε.
    GapProb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
    },
    /// Count matrices with a repeated eigenvalue on random projective 2-planes.
    TwoPlane {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Seed points on the sphere.
        #[arg(long, default_value_t = TwoPlaneConfig::default().grid_points)]
        grid_points: usize,
        /// Eigenvalue gap at or below which a candidate counts as a zero.
        #[arg(long, default_value_t = TwoPlaneConfig::default().zero_tol)]
        zero_tol: f64,
        /// Candidates stuck between --zero-tol and this are unresolved.
        #[arg(long, default_value_t = TwoPlaneConfig::default().reject_ceiling)]
        reject_ceiling: f64,
        /// Zeros closer than this (modulo antipodes) are merged.
        #[arg(long, default_value_t = TwoPlaneConfig::default().cluster_radius)]
        cluster_radius: f64,
        #[arg(long, default_value_t = TwoPlaneConfig::default().max_newton_steps)]
        max_newton_steps: usize,
        /// Also write per-trial counts as CSV to this file.
        #[arg(long)]
        trials_csv: Option<PathBuf>,
    },
    /// Volume of the part of the discriminant with a given eigenvalue configuration.
    RestrictedVolume {
        #[arg(long)]
        n: usize,
        /// Position of the repeated eigenvalue, 1..=n−1 counted from the bottom.
        #[arg(long)]
        config: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Gauss–Hermite nodes for the outer integral.
        #[arg(long, default_value_t = 48)]
        quadrature: usize,
    },
    /// Draw GOE matrices.
    GoeSample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateInput(_) | Error::UnresolvedZero(_) | Error::NoConvergence { .. } => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// A report plus the exit code to finish with once it is printed.
struct Outcome {
    report: Value,
    code: u8,
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Self { report, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(bad_input(format!("cannot start {t} threads: {e}"))),
        },
        None => run(&cli),
    };
    match result {
        Ok(out) => {
            print!("{}", render(&out.report, cli.format));
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn progress(cli: &Cli, msg: &str) {
    if !cli.quiet {
        eprintln!("{msg}");
    }
}

fn read_matrix(arg: &MatrixArg) -> Result<SymmetricMatrix, Failure> {
    let text = match (&arg.matrix, &arg.input) {
        (Some(m), _) => m.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => std::io::read_to_string(std::io::stdin())
            .map_err(|e| bad_input(format!("reading stdin: {e}")))?,
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| bad_input(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(bad_input("give --matrix or --input")),
    };
    Ok(SymmetricMatrix::parse(&text)?)
}

/// Integers that fit in `u64` stay JSON numbers; larger ones become strings.
fn big(v: &BigUint) -> Value {
    v.to_u64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Nearest { matrix, tol } => {
            let a = read_matrix(matrix)?;
            Ok(to_value(&nearest_in_discriminant_with(&a, &tol.get())?).into())
        }
        Command::Critical { matrix, w, tol } => {
            let a = read_matrix(matrix)?;
            let points = critical_points_with(&a, w, &tol.get())?;
            let mut residual = 0.0f64;
            for cp in &points {
                residual = residual.max(verify_criticality(&a, cp, w)?);
            }
            Ok(json!({
                "w": w.to_string(),
                "eddeg": big(&eddeg(w)?),
                "count": points.len(),
                "max_criticality_residual": residual,
                "points": points,
            })
            .into())
        }
        Command::Spherical { matrix, normalize, tol } => {
            let mut a = read_matrix(matrix)?;
            if *normalize {
                let norm = a.frobenius_norm();
                if norm == 0.0 {
                    return Err(bad_input("cannot normalise the zero matrix"));
                }
                a = a.scale(1.0 / norm);
            }
            Ok(to_value(&spherical_nearest_with(&a, &tol.get())?).into())
        }
        Command::Strata { n, all } => {
            if *n == 0 {
                return Err(bad_input("n must be positive"));
            }
            let rows: Vec<Value> = enumerate_multiplicity_vectors(*n, !*all)
                .iter()
                .map(|w| {
                    json!({
                        "w": w.to_string(),
                        "codim": codim(w),
                        "planes": big(&count_planes(w)),
                        "eddeg": eddeg(w).ok().as_ref().map_or(Value::Null, big),
                    })
                })
                .collect();
            Ok(json!({"n": n, "count": rows.len(), "rows": rows}).into())
        }
        Command::Moment { k, u, samples } => {
            let p = second_moment_poly(*k);
            let integral = second_moment_integral(*k);
            let closed = second_moment_integral_closed_form(*k);
            let mut report = json!({
                "k": k,
                "polynomial": p,
                "polynomial_text": p.to_string(),
                "integral": integral,
                "integral_text": integral.to_string(),
                "integral_f64": integral.to_f64(),
                "closed_form_text": closed.to_string(),
                "matches_closed_form": integral == closed,
            });
            if let Some(u) = u {
                report["u"] = json!(u);
                report["value_at_u"] = json!(p.eval_f64(*u));
                if *samples > 0 {
                    progress(cli, &format!("moment: {samples} samples of GOE({k}) at u = {u}"));
                    report["monte_carlo"] = to_value(&mc_second_moment(*k, *u, *samples, cli.seed)?);
                }
            }
            Ok(report.into())
        }
        Command::VerifyCharpol { max_k } => {
            let failures: Vec<usize> = (1..=*max_k)
                .filter(|&k| second_moment_integral(k) != second_moment_integral_closed_form(k))
                .collect();
            let exact = max_k - failures.len();
            Ok(Outcome {
                report: json!({
                    "checked": max_k,
                    "exact": exact,
                    "failures": failures,
                    "summary": format!("{exact}/{max_k} exact"),
                }),
                code: u8::from(!failures.is_empty()),
            })
        }
        Command::VolumeCheck { max_n } => {
            if *max_n < 2 {
                return Err(bad_input("max-n must be at least 2"));
            }
            let mut rows = Vec::new();
            let mut exact = 0;
            for n in 2..=*max_n {
                let v = volume_identity_check(n)?;
                let expected = n * (n - 1) / 2;
                let ok = v.as_rational().is_some_and(|q| format_fraction(q) == expected.to_string());
                exact += usize::from(ok);
                rows.push(json!({"n": n, "value": v.to_string(), "expected": expected, "exact": ok}));
            }
            let checked = max_n - 1;
            Ok(Outcome {
                report: json!({
                    "checked": checked,
                    "exact": exact,
                    "summary": format!("{exact}/{checked} exact"),
                    "rows": rows,
                }),
                code: u8::from(exact != checked),
            })
        }
        Command::GapProb { n, eps, samples } => {
            progress(cli, &format!("gap-prob: {samples} samples of GOE({n}), eps = {eps}"));
            Ok(to_value(&gap_probability(*n, *eps, *samples, cli.seed)?).into())
        }
        Command::TwoPlane {
            n,
            trials,
            grid_points,
            zero_tol,
            reject_ceiling,
            cluster_radius,
            max_newton_steps,
            trials_csv,
        } => {
            let cfg = TwoPlaneConfig {
                grid_points: *grid_points,
                zero_tol: *zero_tol,
                reject_ceiling: *reject_ceiling,
                cluster_radius: *cluster_radius,
                max_newton_steps: *max_newton_steps,
            };
            progress(cli, &format!("two-plane: {trials} trials at n = {n}, {grid_points} grid points"));
            let (report, outcomes) = two_plane_count(*n, *trials, cli.seed, &cfg)?;
            if let Some(path) = trials_csv {
                std::fs::write(path, two_plane_csv(&outcomes))
                    .map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
            }
            let unresolved = outcomes.iter().filter(|o| o.unresolved > 0).count();
            let code = if 2 * unresolved > outcomes.len() {
                eprintln!("error: {unresolved} of {} trials had unresolved zeros", outcomes.len());
                1
            } else {
                0
            };
            Ok(Outcome {
                report: to_value(&report),
                code,
            })
        }
        Command::RestrictedVolume {
            n,
            config,
            samples,
            quadrature,
        } => {
            progress(cli, &format!("restricted-volume: {samples} samples, n = {n}, config = {config}"));
            Ok(to_value(&restricted_volume_estimate(*n, *config, *samples, *quadrature, cli.seed)?).into())
        }
        Command::GoeSample { n, count } => {
            if *n == 0 {
                return Err(bad_input("n must be positive"));
            }
            let mut rng = replica_rng(cli.seed, 0);
            let samples: Vec<SymmetricMatrix> = (0..*count).map(|_| goe_sample(*n, &mut rng)).collect();
            Ok(json!({"n": n, "count": count, "seed": cli.seed, "samples": samples}).into())
        }
    }
}
