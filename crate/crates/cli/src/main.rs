mod args;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use plenoptic_core::config::RawConfig;
use plenoptic_core::report::{refocus_report, triangulation_report, DesignReport};
use plenoptic_core::{build_refocus_scene, build_triangulation_scene, render_svg, CameraConfig, Error};

use args::{Args, Format, Plan};

/// Exit status for unusable arguments or input files.
const USAGE: u8 = 2;
/// Exit status for computation errors.
const FAILED: u8 = 1;

/// Structured names for usage failures; core errors use their own names.
const INVALID_ARGUMENT: &str = "InvalidArgument";
const MALFORMED_CONFIG: &str = "MalformedConfig";

enum Failure {
    Usage(&'static str, String),
    Compute(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn load_config(path: &Path) -> Result<RawConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(MALFORMED_CONFIG, format!("{}: {e}", path.display())))?;
    // serde_json messages end with "at line L column C"
    serde_json::from_str(&text).map_err(|e| Failure::Usage(MALFORMED_CONFIG, format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// `scene.json` becomes `scene-triangulation.json`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{suffix}"),
    };
    path.with_file_name(name)
}

fn evaluate(config: &CameraConfig, plan: &Plan) -> Result<DesignReport, Failure> {
    let mut report = DesignReport::new(config);
    if let Some(shifts) = &plan.shifts {
        report.refocus = Some(refocus_report(config, shifts)?);
    }
    if let Some((gap, dx)) = &plan.triangulation {
        report.triangulation = Some(triangulation_report(config, *gap, dx)?);
    }
    Ok(report)
}

fn write_artifacts(args: &Args, config: &CameraConfig, plan: &Plan) -> Result<(), Failure> {
    let refocus = plan.shifts.as_ref().map(|a| build_refocus_scene(config, a)).transpose()?;
    let triangulation =
        plan.triangulation.as_ref().map(|(g, dx)| build_triangulation_scene(config, *g, dx)).transpose()?;
    if let Some(path) = &args.plot {
        let scene = refocus.as_ref().expect("plot implies refocus");
        write(path, &render_svg(scene)?)?;
    }
    if let Some(path) = &args.scene {
        match (&refocus, &triangulation) {
            (Some(r), Some(t)) => {
                write(path, &r.to_json())?;
                write(&sibling(path, "triangulation"), &t.to_json())?;
            }
            (Some(s), None) | (None, Some(s)) => write(path, &s.to_json())?,
            (None, None) => {}
        }
    }
    Ok(())
}

fn run(args: Args) -> Result<bool, Failure> {
    if let Some(addr) = &args.serve {
        return serve(addr.as_deref()).map(|_| true);
    }
    if args.gap == Some(0) {
        return Err(Failure::Usage(Error::ZeroGap.name(), format!("--gap: {}", Error::ZeroGap)));
    }
    let base = match &args.config {
        Some(path) => load_config(path)?,
        None => args::default_raw(),
    };
    let config = args.overlay(base).validate()?;
    let plan = args.plan();
    let report = evaluate(&config, &plan)?;
    write_artifacts(&args, &config, &plan)?;

    let printed = match args.output {
        Format::Text => output::text(&report),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => output::csv(&report).map_err(|e| Failure::Io(e.to_string()))?,
    };
    print!("{printed}");

    let failures = report
        .refocus
        .iter()
        .flatten()
        .filter_map(|r| r.error.as_ref())
        .chain(report.triangulation.iter().flat_map(|t| t.planes.iter().filter_map(|p| p.error.as_ref())));
    let mut ok = true;
    for e in failures {
        eprintln!("error: {}: {}", e.name, e.message);
        ok = false;
    }
    Ok(ok)
}

fn serve(addr: Option<&str>) -> Result<(), Failure> {
    let usage = |msg| Failure::Usage(INVALID_ARGUMENT, msg);
    let addr = plenoptic_server::resolve_addr(addr).map_err(usage)?;
    let origin = plenoptic_server::origin_from_env().map_err(usage)?;
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    runtime.block_on(plenoptic_server::serve(addr, origin)).map_err(|e| Failure::Io(format!("{addr}: {e}")))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprint!("error: {INVALID_ARGUMENT}: {}", text.strip_prefix("error: ").unwrap_or(&text));
            return ExitCode::from(USAGE);
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(FAILED),
        Err(Failure::Usage(name, msg)) => {
            eprintln!("error: {name}: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(FAILED)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(FAILED)
        }
    }
}
