use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use dglift::cli_format::{emit_report, parse_problem, run_command, Command, CommandOptions, Format};
use dglift::obstruction::Method;
use dglift::Error;

/// Decide naive liftability of semifree DG modules over free DG algebra extensions.
#[derive(Parser)]
#[command(name = "dglift", version)]
struct Cli {
    /// validate | delta | obstruction | check-lift | homology | selftest
    command: String,
    /// Problem file; not needed for `selftest`.
    file: Option<PathBuf>,
    /// Restrict to one module; all modules by default.
    #[arg(long)]
    module: Option<String>,
    /// Bidegree `n,w` for `homology`.
    #[arg(long, value_parser = parse_bidegree)]
    bidegree: Option<(i32, i32)>,
    /// Include the solving family in `check-lift` output.
    #[arg(long)]
    witness: bool,
    #[arg(long, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Algebra expression for `delta`.
    #[arg(long)]
    element: Option<String>,
    /// trivial | rank2-corollary | global-solve
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
}

fn parse_bidegree(s: &str) -> Result<(i32, i32), String> {
    let (n, w) = s.split_once(',').ok_or("expected `n,w`")?;
    let n = n.trim().parse().map_err(|e| format!("{e}"))?;
    let w = w.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((n, w))
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::parse(s).ok_or_else(|| format!("unknown method `{s}`"))
}

fn run(cli: Cli) -> Result<bool, Error> {
    let cmd: Command = cli.command.parse()?;
    let format: Format = cli.format.parse()?;
    let problem = match (&cli.file, cmd.needs_problem()) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_problem(&text)?)
        }
        (None, true) => return Err(Error::Usage(format!("`{}` needs a problem file", cmd.as_str()))),
        (None, false) => None,
    };
    let opts = CommandOptions {
        module: cli.module,
        bidegree: cli.bidegree,
        witness: cli.witness,
        format,
        element: cli.element,
        method: cli.method,
    };
    let doc = run_command(cmd, problem.as_ref(), &opts)?;
    println!("{}", emit_report(&doc, format).trim_end());
    let ok = doc.selftest.iter().flatten().all(|s| s.passed)
        && doc.validation.iter().flat_map(|v| &v.modules).all(|m| m.square_zero);
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DGLIFT_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("dglift: {e}");
            ExitCode::from(if e.is_mathematical() { 1 } else { 2 })
        }
    }
}
