use clap::{Parser, Subcommand};
use folded_maps::config::RunConfig;
use folded_maps::format::parse_complex;
use folded_maps::{cmd_certificate, cmd_compactify, cmd_degree1, cmd_degree_d, Failure, Output};
use folded_core::c2::C;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "folded-maps", version, about = "Construct and certify folded holomorphic maps")]
struct Cli {
    /// TOML file with `resolution` and a `[tolerances]` table.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Angular resolution M, a power of two in [64, 8192].
    #[arg(long = "res", global = true)]
    resolution: Option<usize>,
    /// Write here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The degree-one family at parameters (c, m).
    Degree1 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: C,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        m: C,
    },
    /// Folded map built from a curve file `{"p": [...], "q": [...], "m": [re, im]}`.
    DegreeD { curve: PathBuf },
    /// CSV of chart energies along a radial path in c.
    Compactify {
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
        m: C,
        #[arg(long, default_value_t = 0.99)]
        c_max: f64,
        /// Direction of the path, in radians.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        arg: f64,
    },
    /// Recompute the index certificate from a report or operator export.
    Certificate { bundle: PathBuf },
}

fn read(p: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("FOLDED_MAPS_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("FOLDED_MAPS_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    init_threads()?;
    let (name, input) = match &cli.command {
        Command::Degree1 { .. } => ("degree1", None),
        Command::DegreeD { curve } => ("degree-d", Some(curve.clone())),
        Command::Compactify { .. } => ("compactify", None),
        Command::Certificate { bundle } => ("certificate", Some(bundle.clone())),
    };
    let cfg = RunConfig::resolve(name, cli.resolution, cli.config.as_deref(), cli.out.clone(), input)?;
    let out = match cli.command {
        Command::Degree1 { c, m } => cmd_degree1(&cfg, c, m)?,
        Command::DegreeD { curve } => cmd_degree_d(&cfg, &read(&curve)?)?,
        Command::Compactify { steps, m, c_max, arg } => cmd_compactify(&cfg, steps, m, c_max, arg)?,
        Command::Certificate { bundle } => cmd_certificate(&cfg, &read(&bundle)?)?,
    };
    match &cfg.output {
        Some(p) => std::fs::write(p, &out.text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{}", out.text),
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) if out.pass => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("FAIL");
            ExitCode::from(2)
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
