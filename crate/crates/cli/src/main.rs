use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use triplepoint::arrangement::{Arrangement, ArrangementJson, FieldMode};
use triplepoint::certificate::{verify_certificate, Certificate};
use triplepoint::dataset::{parse_dataset, Dataset};
use triplepoint::pipeline::{
    contradiction_banner, render_hilbert_text, render_scan_text, render_text, run_hilbert,
    run_scan, run_verify, VerifyOptions,
};
use triplepoint::render::{render_svg, RenderOptions, ViewBox};
use triplepoint::Error;

/// Exact checks of the containment of symbolic powers in ordinary powers
/// for ideals of triple points of line arrangements.
#[derive(Parser)]
#[command(name = "triplepoint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Select {
    /// Number of lines of the regular polygon arrangement (implies fp-even).
    #[arg(long)]
    n: Option<usize>,
    /// fp-even, coordinate-points or dual-hesse.
    #[arg(long)]
    dataset: Option<String>,
    /// Coordinate field for fp-even: compact or cyclotomic.
    #[arg(long)]
    field: Option<FieldMode>,
}

impl Select {
    fn resolve(&self) -> Result<Dataset, Error> {
        match (&self.dataset, self.n) {
            (Some(name), n) => parse_dataset(name, n, self.field),
            (None, Some(n)) => parse_dataset("fp-even", Some(n), self.field),
            (None, None) => Err(Error::Parse("give --n or --dataset".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and check the expected verdict.
    Verify {
        #[command(flatten)]
        select: Select,
        /// Symbolic exponent.
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Ordinary exponent.
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Highest degree of the degreewise comparison (default: number of lines).
        #[arg(long)]
        max_degree: Option<u32>,
        /// Write the non-membership certificate here.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a certificate from scratch.
    Certificate {
        #[arg(long, value_name = "PATH")]
        verify: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Draw a real arrangement as SVG.
    Render {
        #[command(flatten)]
        select: Select,
        /// Arrangement JSON to draw instead of a dataset.
        #[arg(long)]
        arrangement: Option<PathBuf>,
        #[arg(long)]
        svg: PathBuf,
        /// Mark points where exactly two of the drawn lines meet.
        #[arg(long)]
        show_ordinary: bool,
        /// Draw only these line indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        lines: Option<Vec<usize>>,
        /// R for [-R, R]^2, or MIN_X,MIN_Y,WIDTH,HEIGHT.
        #[arg(long, allow_hyphen_values = true)]
        viewbox: Option<ViewBox>,
    },
    /// Dimensions of the graded pieces of a fat point ideal.
    Hilbert {
        #[command(flatten)]
        select: Select,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Degree-n containment check for several polygon sizes.
    Scan {
        /// Polygon sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [12usize, 14, 16, 18, 20])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long)]
        field: Option<FieldMode>,
        #[arg(long)]
        json: bool,
    },
    /// Build arrangements and list their marked points.
    Config {
        #[command(subcommand)]
        action: ConfigAction,
    },
}

#[derive(Subcommand)]
enum ConfigAction {
    /// Print the arrangement with its marked points as JSON.
    Build {
        #[command(flatten)]
        select: Select,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the marked points with the lines through them.
    Triples {
        #[command(flatten)]
        select: Select,
        #[arg(long)]
        json: bool,
    },
}

/// Outcome of a command: success, a failed mathematical check, or bad input.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnsupportedSize(..) | Error::NotReal => {
                Failure::Input(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn verify(
    select: &Select,
    m: u32,
    r: u32,
    max_degree: Option<u32>,
    emit_cert: Option<&Path>,
    json: bool,
) -> Result<(), Failure> {
    let dataset = select.resolve()?;
    let (mut report, cert) = run_verify(&dataset, &VerifyOptions { m, r, max_degree })?;
    if let (Some(path), Some(cert)) = (emit_cert, &cert) {
        write_file(path, &cert.to_json_string())?;
        report.certificate_path = Some(path.display().to_string());
    }
    if json {
        print!("{}", report.to_json_string());
    } else {
        print!("{}", render_text(&report));
    }
    if let Some(msg) = &report.contradiction {
        eprintln!("{}", contradiction_banner(msg));
    }
    if emit_cert.is_some() && cert.is_none() {
        eprintln!("no certificate: F was not shown to lie outside the power");
    }
    if report.confirmed {
        Ok(())
    } else {
        let why = report
            .problems
            .first()
            .cloned()
            .or(report.contradiction.clone())
            .unwrap_or_else(|| "expected verdict not confirmed".into());
        Err(Failure::Check(why))
    }
}

fn certificate(path: &Path, json: bool) -> Result<(), Failure> {
    let cert =
        Certificate::from_json_str(&read_file(path)?).map_err(|e| Failure::Input(e.to_string()))?;
    let report = verify_certificate(&cert);
    if json {
        let map: serde_json::Map<String, serde_json::Value> = report
            .checks
            .iter()
            .map(|c| {
                (
                    c.name.to_string(),
                    serde_json::json!({ "passed": c.passed, "detail": c.detail }),
                )
            })
            .collect();
        let out = serde_json::json!({ "passed": report.passed(), "checks": map });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        for c in &report.checks {
            println!(
                "{:<28} {}  {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            );
        }
    }
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failed().map(|c| c.name).collect();
        Err(Failure::Check(format!(
            "failed checks: {}",
            names.join(", ")
        )))
    }
}

fn render(
    select: &Select,
    arrangement: Option<&Path>,
    svg: &Path,
    show_ordinary: bool,
    lines: Option<&[usize]>,
    viewbox: Option<ViewBox>,
) -> Result<(), Failure> {
    let arr = match arrangement {
        Some(path) => {
            let json: ArrangementJson = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Arrangement::from_json(&json)?
        }
        None => select.resolve()?.load()?.arr,
    };
    let drawn = match lines {
        Some(idx) => idx
            .iter()
            .map(|&i| {
                arr.lines()
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Failure::Input(format!("no line {i}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => arr.lines().to_vec(),
    };
    let opts = RenderOptions {
        viewbox,
        show_ordinary,
        ..RenderOptions::default()
    };
    let out = render_svg(&drawn, &opts)?;
    write_file(svg, &out.svg)?;
    println!(
        "{}: {} lines, {} dots",
        svg.display(),
        out.segments,
        out.dots
    );
    if out.hidden_dots > 0 {
        println!("{} marked points lie outside the view", out.hidden_dots);
    }
    Ok(())
}

fn hilbert(select: &Select, m: u32, max_degree: Option<u32>, json: bool) -> Result<(), Failure> {
    let dataset = select.resolve()?;
    let d = match max_degree {
        Some(d) => d,
        None => dataset.load()?.arr.len() as u32,
    };
    let h = run_hilbert(&dataset, m, d)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&h).expect("json"));
    } else {
        print!("{}", render_hilbert_text(&h));
    }
    Ok(())
}

fn scan(ns: &[usize], m: u32, r: u32, field: Option<FieldMode>, json: bool) -> Result<(), Failure> {
    let rows = run_scan(ns, m, r, field);
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
    } else {
        print!("{}", render_scan_text(&rows));
    }
    Ok(())
}

fn config(action: &ConfigAction) -> Result<(), Failure> {
    match action {
        ConfigAction::Build { select, out } => {
            let loaded = select.resolve()?.load()?;
            let text = serde_json::to_string_pretty(&loaded.config_json()).expect("json") + "\n";
            match out {
                Some(path) => write_file(path, &text)?,
                None => print!("{text}"),
            }
        }
        ConfigAction::Triples { select, json } => {
            let loaded = select.resolve()?.load()?;
            if *json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&loaded.marked_points()).expect("json")
                );
            } else {
                println!("{}: {} marked points", loaded.dataset, loaded.points.len());
                for (i, (p, mp)) in loaded.points.iter().zip(loaded.marked_points()).enumerate() {
                    println!("{i:>3}  {p}  lines {:?}", mp.lines);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify {
            select,
            m,
            r,
            max_degree,
            emit_cert,
            json,
        } => verify(select, *m, *r, *max_degree, emit_cert.as_deref(), *json),
        Command::Certificate { verify, json } => certificate(verify, *json),
        Command::Render {
            select,
            arrangement,
            svg,
            show_ordinary,
            lines,
            viewbox,
        } => render(
            select,
            arrangement.as_deref(),
            svg,
            *show_ordinary,
            lines.as_deref(),
            *viewbox,
        ),
        Command::Hilbert {
            select,
            m,
            max_degree,
            json,
        } => hilbert(select, *m, *max_degree, *json),
        Command::Scan {
            n,
            m,
            r,
            field,
            json,
        } => scan(n, *m, *r, *field, *json),
        Command::Config { action } => config(action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
