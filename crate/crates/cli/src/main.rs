use std::fmt::Display;
use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcn::bench::{run_throughput_with, BenchError, DEFAULT_RUNS, MIN_ITERATIONS};
use dcn::cmat2::{from_cmat2, to_cmat2, CMat2};
use dcn::deform::{auto_weights, deform, Mesh, Rect, DEFAULT_ALPHA, DEFAULT_EPS};
use dcn::dualquat::{from_dualquat, to_dualquat, DualQuat};
use dcn::io::{self, FormatError};
use dcn::se2::{from_se2, to_se2, Se2Mat};
use dcn::{dlb, slerp, Dcn, UnitDcn};

/// Dual complex number transforms, blending and mesh deformation.
#[derive(Debug, Parser)]
#[command(name = "dcn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a DCN to every point of a points file
    Transform {
        /// p0.re p0.im p1.re p1.im (normalized before use)
        #[arg(long, num_args = 4, value_names = ["P0RE", "P0IM", "P1RE", "P1IM"], allow_negative_numbers = true, required = true)]
        dcn: Vec<f64>,
        /// JSON array of [x, y]
        #[arg(long, short)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Multiply DCNs left to right
    Compose {
        /// Repeat once per factor
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["P0RE", "P0IM", "P1RE", "P1IM"])]
        dcn: Vec<f64>,
        /// JSON array of DCNs, multiplied before any --dcn factors
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Dual number linear blend of weighted DCNs
    Blend {
        /// {"dcns": [[...], ...], "weights": [...]}
        #[arg(long, short)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Screw-linear interpolation from p to q
    Slerp {
        #[arg(long, num_args = 4, allow_negative_numbers = true, required = true, value_names = ["P0RE", "P0IM", "P1RE", "P1IM"])]
        p: Vec<f64>,
        #[arg(long, num_args = 4, allow_negative_numbers = true, required = true, value_names = ["P0RE", "P0IM", "P1RE", "P1IM"])]
        q: Vec<f64>,
        /// Values outside [0, 1] extrapolate
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Convert between DCN, SE(2) matrix, dual quaternion and 2×2 complex matrix
    Convert {
        #[arg(long, value_enum)]
        from: Rep,
        #[arg(long, value_enum)]
        to: Rep,
        /// Flat values (4 for dcn, 9 for se2, 8 for dq and cmat2)
        #[arg(allow_negative_numbers = true, conflicts_with = "input")]
        values: Vec<f64>,
        /// JSON array holding the flat values
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Deform a mesh by its probes
    Deform {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        probes: PathBuf,
        /// Row-per-probe weights; Shepard weights when omitted
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Write a regular triangulated grid mesh
    Grid {
        /// Vertex rows
        #[arg(long)]
        rows: usize,
        /// Vertex columns
        #[arg(long)]
        cols: usize,
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["X0", "Y0", "X1", "Y1"], default_values_t = [0.0, 0.0, 1.0, 1.0])]
        rect: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Operation counts and throughput of the four representations
    Bench {
        #[arg(long, default_value_t = MIN_ITERATIONS)]
        iterations: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
struct Output {
    /// Write here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rep {
    Dcn,
    Se2,
    Dq,
    Cmat2,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Tolerance for `from_dualquat` / `from_cmat2` on converted input.
const EMBED_TOL: f64 = 1e-9;

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::domain(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Failure::Domain(format!("cannot write stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn unit(values: &[f64], what: &str) -> Result<UnitDcn> {
    let a: [f64; 4] = values
        .try_into()
        .map_err(|_| Failure::Usage(format!("{what} needs 4 numbers")))?;
    io::unit_from_array(a).map_err(|e| Failure::Domain(format!("{what}: {e}")))
}

fn exact<const N: usize>(values: &[f64], rep: &str) -> Result<[f64; N]> {
    values
        .try_into()
        .map_err(|_| Failure::Domain(format!("{rep} needs {N} values, got {}", values.len())))
}

fn convert(from: Rep, to: Rep, values: &[f64]) -> Result<Vec<f64>> {
    let p = match from {
        Rep::Dcn => Dcn::from_array(exact(values, "dcn")?).map_err(Failure::domain)?,
        Rep::Se2 => {
            let m = Se2Mat::from_rows(exact(values, "se2")?).map_err(Failure::domain)?;
            from_se2(&m).map_err(Failure::domain)?.as_dcn()
        }
        Rep::Dq => from_dualquat(DualQuat::from_array(exact(values, "dq")?), EMBED_TOL).map_err(Failure::domain)?,
        Rep::Cmat2 => from_cmat2(&CMat2::from_array(exact(values, "cmat2")?), EMBED_TOL).map_err(Failure::domain)?,
    };
    Ok(match to {
        Rep::Dcn => p.to_array().to_vec(),
        Rep::Se2 => to_se2(p.normalize().map_err(Failure::domain)?).to_rows().to_vec(),
        Rep::Dq => to_dualquat(p).to_array().to_vec(),
        Rep::Cmat2 => to_cmat2(p).to_array().to_vec(),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Transform { dcn, input, out } => {
            let p = unit(&dcn, "--dcn")?;
            let points = io::parse_points(&read(&input)?)?;
            let moved: Vec<_> = points.into_iter().map(|v| p.act(v)).collect();
            emit(&out, &io::to_json(&moved))
        }
        Command::Compose { dcn, input, out } => {
            let mut factors = match input {
                Some(path) => io::parse_dcns(&read(&path)?)?,
                None => Vec::new(),
            };
            for chunk in dcn.chunks(4) {
                factors.push(unit(chunk, "--dcn")?);
            }
            if factors.is_empty() {
                return Err(Failure::Usage("compose needs --input or at least one --dcn".into()));
            }
            let product = factors.into_iter().fold(UnitDcn::IDENTITY, |acc, f| acc * f);
            emit(&out, &io::to_json(&product))
        }
        Command::Blend { input, out } => {
            let (dcns, weights) = io::parse_blend(&read(&input)?)?;
            let blended = dlb(&dcns, &weights).map_err(Failure::domain)?;
            emit(&out, &io::to_json(&blended))
        }
        Command::Slerp { p, q, t, out } => {
            let (p, q) = (unit(&p, "--p")?, unit(&q, "--q")?);
            let r = slerp(p, q, t).map_err(Failure::domain)?;
            emit(&out, &io::to_json(&r))
        }
        Command::Convert {
            from,
            to,
            values,
            input,
            out,
        } => {
            let values = match input {
                Some(path) => serde_json::from_str::<Vec<f64>>(&read(&path)?)
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?,
                None if values.is_empty() => return Err(Failure::Usage("convert needs values or --input".into())),
                None => values,
            };
            emit(&out, &io::to_json(&convert(from, to, &values)?))
        }
        Command::Deform {
            mesh,
            probes,
            weights,
            alpha,
            eps,
            out,
        } => {
            let mut mesh = io::parse_mesh(&read(&mesh)?)?;
            let probes = io::parse_probes(&read(&probes)?)?;
            let weights = match weights {
                Some(path) => io::parse_weights(&read(&path)?)?,
                None => auto_weights(&mesh.vertices, &probes, alpha, eps).map_err(Failure::domain)?,
            };
            mesh.vertices = deform(&mesh, &probes, &weights).map_err(Failure::domain)?;
            emit(&out, &io::to_json(&mesh))
        }
        Command::Grid { rows, cols, rect, out } => {
            let rect = Rect::new(rect[0], rect[1], rect[2], rect[3]);
            let mesh = Mesh::grid(rows, cols, rect).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&out, &io::to_json(&mesh))
        }
        Command::Bench {
            iterations,
            seed,
            runs,
            format,
            out,
        } => {
            let report = run_throughput_with(iterations, runs, seed).map_err(|e| match e {
                BenchError::Disagreement(_) => Failure::domain(e),
                _ => Failure::Usage(e.to_string()),
            })?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => io::to_json_pretty(&report),
            };
            emit(&out, text.trim_end())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
