//! `monodromy`: command-line front end for the punctured-torus bundle
//! pipeline.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad input (parse, domain,
//! overflow, projection), 3 numerical failure (solver, tolerance),
//! 64 usage error. Data goes to stdout or the named files; stderr only
//! carries diagnostics.

mod json;
mod oracle;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monodromy::limitset::{raster_hash, write_csv, Projection, Style};
use monodromy::mapping_class::class_report;
use monodromy::{
    boundary_profile, canonical_rl_form, coverage, ct_polyline, geom::solve_report, length_of_lamination, make_fricke,
    parse_word, trace_of_slope, trichotomy, CurveClass, Error, FrickePoint, MeasuredLamination, Scalar,
};
use serde_json::json;

const EXIT_IO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "monodromy", version, about = "Once-punctured torus bundles: classification, geometry and limit sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nielsen–Thurston class of a word in R and L.
    Classify { word: String },
    /// Canonical positive RL word of a pseudo-Anosov class.
    RlForm { word: String },
    /// Hyperbolic length of a curve at a Fricke point.
    Length {
        /// Traces `x,y` or `x,y,z`; entries may be exact, e.g. `1+sqrt(5)`.
        #[arg(long)]
        fricke: String,
        /// Integer pair `a,b`; a multiple of a primitive class is allowed.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Probe lengths along the orbit of a Fricke point, as CSV
    /// (`n,probe_index,length,ratio_to_probe0`).
    BoundaryFlow {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 15)]
        n: usize,
        /// Probe curves, each `a,b`. Since `(a,b)` and `(-a,-b)` are the same
        /// class, write them without a leading minus.
        #[arg(long, num_args = 1.., required = true)]
        probes: Vec<String>,
        /// Starting Fricke point (default `3,3,3`).
        #[arg(long)]
        start: Option<String>,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometry of the mapping torus.
    Trichotomy { word: String },
    /// Shapes, volume and holonomy traces of a hyperbolic bundle.
    Solve { word: String },
    /// Cannon–Thurston curve approximation as SVG; prints a JSON summary.
    CtRender {
        word: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write `anchor,re,im` rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Coverage grid size.
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long, default_value_t = 800)]
        width: u32,
    },
    /// Runs a brute-force oracle and prints a comparison table.
    Oracle {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(oracle::NAMES))]
        name: String,
        /// Size bound for the enumerated inputs.
        #[arg(long)]
        bound: Option<i64>,
    },
}

enum Failure {
    Lib(Error),
    Mismatch(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn parse_error(message: String) -> Error {
    Error::Parse { offset: 0, message }
}

fn parse_pair(text: &str) -> Result<(i64, i64), Error> {
    match text.split(',').map(|t| t.trim().parse::<i64>()).collect::<Vec<_>>()[..] {
        [Ok(a), Ok(b)] => Ok((a, b)),
        _ => Err(parse_error(format!("expected an integer pair a,b, got {text:?}"))),
    }
}

fn parse_fricke(text: &str) -> Result<FrickePoint, Error> {
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<Scalar>().map_err(|e| parse_error(format!("{t:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    match <[Scalar; 3]>::try_from(entries) {
        Ok([x, y, z]) => FrickePoint::new(x, y, z),
        Err(v) if v.len() == 2 => make_fricke(&v[0], &v[1]),
        Err(_) => Err(parse_error(format!("expected x,y or x,y,z, got {text:?}"))),
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify { word } => json::print(&class_report(&parse_word(&word)?)),
        Command::RlForm { word } => {
            let rl = canonical_rl_form(&parse_word(&word)?)?;
            let letters: String = rl.letters().iter().map(|l| format!("{l:?}")).collect();
            json::print(&json!({
                "input": word,
                "rl_form": rl.to_string(),
                "sign": rl.sign(),
                "letters": letters,
            }));
        }
        Command::Length { fricke, curve } => {
            let g = parse_fricke(&fricke)?;
            let (a, b) = parse_pair(&curve)?;
            let k = num_integer::gcd(a, b);
            let c = CurveClass::new(a / k.max(1), b / k.max(1))?;
            let trace = trace_of_slope(&g, c);
            let length = length_of_lamination(&g, &MeasuredLamination::from_ints(a, b))?;
            json::print(&json!({
                "fricke": g,
                "curve": [a, b],
                "primitive": [c.a(), c.b()],
                "multiplicity": k,
                "trace": trace.to_string(),
                "trace_value": trace.to_f64(),
                "length": length,
            }));
        }
        Command::BoundaryFlow {
            word,
            n,
            probes,
            start,
            out,
        } => {
            let g0 = match start {
                Some(s) => parse_fricke(&s)?,
                None => FrickePoint::symmetric(),
            };
            let probes = probes
                .iter()
                .map(|p| parse_pair(p).map(|(a, b)| MeasuredLamination::from_ints(a, b)))
                .collect::<Result<Vec<_>, _>>()?;
            let profile = boundary_profile(&g0, &parse_word(&word)?, n, &probes)?;
            match out {
                Some(path) => profile.write_csv(create(&path)?)?,
                None => profile.write_csv(io::stdout().lock())?,
            }
        }
        Command::Trichotomy { word } => {
            let phi = parse_word(&word)?;
            let t = trichotomy(&phi)?;
            let mut v = json::to_value(&t);
            v["word"] = json!(phi.to_string());
            json::print(&v);
        }
        Command::Solve { word } => json::print(&solve_report(&canonical_rl_form(&parse_word(&word)?)?)?),
        Command::CtRender {
            word,
            depth,
            out,
            csv,
            grid,
            width,
        } => {
            let report = solve_report(&canonical_rl_form(&parse_word(&word)?)?)?;
            let poly = ct_polyline(&report.rep, depth)?;
            let proj = Projection::default();
            let style = Style {
                width,
                ..Style::default()
            };
            let svg = monodromy::render_svg(&poly, &proj, &style)?;
            let mut f = create(&out)?;
            f.write_all(&svg)?;
            f.flush()?;
            if let Some(path) = &csv {
                write_csv(&poly, create(path)?)?;
            }
            json::print(&json!({
                "rl_word": report.rl_word,
                "depth": depth,
                "points": poly.len(),
                "grid": grid,
                "coverage": coverage(&poly, grid)?,
                "raster_hash": raster_hash(&poly, &proj, 256)?,
                "svg": out,
                "csv": csv,
            }));
        }
        Command::Oracle { name, bound } => {
            let table = oracle::run(&name, bound).expect("clap restricts the names");
            print!("{}", table.render());
            if table.mismatches > 0 {
                return Err(Failure::Mismatch(table.mismatches));
            }
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => EXIT_IO,
        e if e.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("MONODROMY_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: MONODROMY_THREADS ignored: {e}");
            }
        }
        _ => eprintln!("warning: MONODROMY_THREADS must be a positive integer, got {v:?}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    configure_threads();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Mismatch(n)) => {
            eprintln!("error: oracle found {n} mismatches");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
