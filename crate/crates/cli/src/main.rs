//! `hecke`: batch front end over `hecke-core`. Every command writes a JSON
//! report; exit code 0 when all checks pass, 1 when a check fails, 2 on bad
//! input.

mod commands;
mod params;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use params::{read_json, InvalidInput, Params};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Seminormal representations of cyclotomic Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true)]
    r: Option<usize>,
    #[arg(long, global = true)]
    p: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Parameters u_1..u_r, comma separated scalar strings.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    u: Option<Vec<String>>,
    /// Parameters x_0..x_{d-1}, comma separated scalar strings.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<String>>,
    /// A constant for q, or `q` (default) for the indeterminate.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Root-of-unity order used to read `z` in scalar strings.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Parameter JSON (inline or a path), e.g. {"r":2,"p":2,"n":2,"x":["1"],"q":"q"}.
    #[arg(long, global = true)]
    spec: Option<String>,
    /// Shape JSON (inline or a path).
    #[arg(long, global = true)]
    shape: Option<String>,
    /// Write the JSON report here; the summary then goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for module construction.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Standard tableaux of a placed skew shape.
    Tableaux,
    /// Seminormal matrices of a placed skew shape.
    Rep,
    /// Check the defining relations (and simplicity) on a shape's module.
    Verify,
    /// All simple modules of H(r,1,n) with their checks.
    Inventory,
    /// Restrict every simple module to the fixed-point subalgebra.
    Decompose,
    /// Central characters and their reconstruction.
    Center,
    /// Dimension of the subalgebra generated by a_0, a_1, a_i.
    FixedDim,
    /// Corner and pairing lemmas on finite-dimensional testbeds.
    SkewringCheck {
        /// Algebra JSON (inline or a path) instead of the built-in testbeds.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// The G2 obstruction certificate.
    G2,
}

fn shape_arg(c: &Common) -> Result<&str> {
    c.shape.as_deref().ok_or_else(|| params::invalid("--shape is required"))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    if let Some(j) = c.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let mut params = Params {
        r: c.r,
        p: c.p,
        n: c.n,
        u: c.u.clone(),
        x: c.x.clone(),
        q: c.q.clone(),
        order: c.order,
    };
    if let Some(s) = &c.spec {
        params = params.merge_spec(&read_json(s)?)?;
    }
    match &cli.command {
        Command::Tableaux => commands::tableaux(shape_arg(c)?, &params),
        Command::Rep => commands::rep(shape_arg(c)?, &params),
        Command::Verify => commands::verify(shape_arg(c)?, &params, c.seed),
        Command::Inventory => commands::inventory(&params),
        Command::Decompose => commands::decompose(&params),
        Command::Center => commands::center(&params),
        Command::FixedDim => commands::fixed_dim(&params),
        Command::SkewringCheck { algebra } => commands::skewring_check(algebra.as_deref(), &params),
        Command::G2 => commands::g2(),
    }
}

/// Prints a line, ignoring a closed pipe on the reading side.
fn say(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit(cli: &Cli, o: &Outcome) -> Result<()> {
    let text = serde_json::to_string_pretty(&o.json)?;
    let status = if o.ok { "ok" } else { "FAILED" };
    match &cli.common.out {
        Some(path) => {
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            say(&format!("{status}: {}", o.summary));
        }
        None => {
            say(&text);
            eprintln!("{status}: {}", o.summary);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| emit(&cli, &o).map(|()| o.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            eprintln!("cause: {:?}", e.root_cause());
            if e.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
