use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use pi1lab::dsl::{self, Diagnostic};
use pi1lab::runner::{self, Options, DEFAULT_NMAX, DEFAULT_SEED};
use pi1lab::{demo, DIGITS_VAR};
use pi1lab_core::geometry::rational::DEFAULT_DIGITS;
use pi1lab_core::geometry::sup_distance;
use pi1lab_core::pi1::classify_y;
use pi1lab_core::spaces::hausdorff_convergence;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pi1lab", version, about = "Exact loop classification and topology probes on the bouquet X and its closure Y")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script.
    Run { script: PathBuf },
    /// Built-in demonstrations.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Classify a loop literal in Y, e.g. `C(4).once`.
    Word { literal: String },
    /// Sup distance between two loop literals in Y.
    Dist { a: String, b: String },
    /// Exact Hausdorff table d_H(C_n, alpha) for n = 2..=K.
    Hausdorff {
        #[arg(long)]
        upto: u32,
    },
    /// Run only the bindings and render statements of a script.
    Render { script: PathBuf },
}

#[derive(Subcommand)]
enum Demo {
    Whitehead {
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the scene to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// Errors that map to exit status 2.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn digits() -> Result<usize> {
    match std::env::var(DIGITS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{DIGITS_VAR} must be a nonnegative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn write_files(files: &[(PathBuf, String)]) -> Result<()> {
    for (path, contents) in files {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn located(path: &Path, d: Diagnostic) -> anyhow::Error {
    anyhow::anyhow!("{}:{}:{}: error: {}", path.display(), d.line, d.col, d.message)
}

fn literal(text: &str) -> Result<pi1lab_core::loops::Loop> {
    let expr = dsl::parse_loop_expr(text).map_err(|d| anyhow::anyhow!("<literal>:{}:{}: error: {}", d.line, d.col, d.message))?;
    runner::eval_standalone(&expr, &runner::default_space()).map_err(anyhow::Error::msg)
}

fn script(path: &Path, render_only: bool) -> Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = dsl::parse(&text).map_err(|d| located(path, d))?;
    let opts = Options {
        digits: digits()?,
        render_only,
        base_dir: PathBuf::new(),
    };
    let out = runner::run(&parsed, &opts).map_err(|e| anyhow::anyhow!("{}:{}", path.display(), e))?;
    print!("{}", out.text);
    write_files(&out.files)?;
    Ok(!out.failed)
}

/// Ok(true) on success, Ok(false) on a FAIL verdict.
fn execute(cli: Cli) -> Result<bool, Usage> {
    match cli.command {
        Command::Run { script: path } => Ok(script(&path, false)?),
        Command::Render { script: path } => Ok(script(&path, true)?),
        Command::Demo {
            which: Demo::Whitehead { nmax, seed, svg },
        } => {
            if nmax < 2 {
                return Err(anyhow::anyhow!("--nmax must be at least 2").into());
            }
            let d = demo::whitehead(nmax, seed, digits()?)?;
            print!("{}", d.report);
            if let Some(p) = svg {
                write_files(&[(p, d.svg)])?;
            }
            Ok(d.passed)
        }
        Command::Word { literal: text } => {
            let l = literal(&text)?;
            println!("word: {}", classify_y(&l)?.word);
            Ok(true)
        }
        Command::Dist { a, b } => {
            let (la, lb) = (literal(&a)?, literal(&b)?);
            let d = sup_distance(la.path(), lb.path());
            println!("sup distance squared: {}", d.squared());
            println!("sup distance: ~{}", d.distance_decimal(digits()?));
            Ok(true)
        }
        Command::Hausdorff { upto } => {
            if upto < 2 {
                return Err(anyhow::anyhow!("--upto must be at least 2").into());
            }
            let r = hausdorff_convergence(&runner::default_space(), upto)?;
            print!("{}", r.render(digits()?));
            Ok(r.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("pi1lab: {e:#}");
            ExitCode::from(2)
        }
    }
}
