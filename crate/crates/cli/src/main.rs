use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use zwb_core::exact::Field;
use zwb_core::zalgebra::builtin;
use zwb_core::zalgebra::GradedPresentation;

mod commands;

#[derive(Parser)]
#[command(name = "zwb", version, about = "Exact checks for presented Z-algebras on finite windows")]
struct Cli {
    /// Override the coefficient field: Q or GF(p).
    #[arg(long, global = true, env = "ZWB_FIELD")]
    field: Option<String>,
    /// Worker threads for library-level parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print the machine-readable report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Algebra file, or `builtin:NAME(ARGS)`.
    file: String,
    /// Window `lo,hi`; defaults to the file's window.
    #[arg(long, value_parser = pair, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in algebra as a file, or write all of them to a directory.
    Generate {
        name: Option<String>,
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        #[arg(long)]
        all: Option<PathBuf>,
    },
    /// Grading, finite generation and the tails axioms.
    CheckAlgebra(Input),
    /// Ampleness and the Z-generating sequence suite.
    Zgen(Input),
    /// Helix recurrence on a thread.
    Helix {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        period: usize,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        thread: (i64, i64),
        /// Twists `a,b` of the family; defaults to two periods above the thread.
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        twists: Option<(i64, i64)>,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
    /// First-order deformation suite for a file with a deformation section.
    Deform {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        thread: (i64, i64),
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        interior: Option<(i64, i64)>,
    },
    /// Hom between representables in the quotient by torsion.
    Qhom {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        /// Replace the source by its quotient by the tail from this level.
        #[arg(long, allow_hyphen_values = true)]
        torsion_above: Option<i64>,
    },
}

fn pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

/// Windows used when a built-in is emitted without one.
pub fn default_window(p: &GradedPresentation) -> (i64, i64) {
    match p.name.as_str() {
        n if n.starts_with("truncated_infinite_polynomial") => (0, 5),
        "nonflat_fixture" => (0, 4),
        _ => (0, 6),
    }
}

pub const CORPUS: &[&str] = &[
    "projective_space(1)",
    "projective_space(2)",
    "quantum_projective_space_eps(1)",
    "quantum_projective_space_eps(2,1,2,3)",
    "truncated_infinite_polynomial(5)",
    "dead_generator(3)",
    "nonflat_fixture",
];

pub struct Loaded {
    pub p: GradedPresentation,
    pub canonical: String,
    pub window: (i64, i64),
}

fn load(input: &Input, field: Option<Field>) -> Result<Loaded> {
    let mut p = match input.file.strip_prefix("builtin:") {
        Some(name) => {
            let mut p = builtin::by_name(name, field.unwrap_or(Field::Rationals))?;
            p.window = Some(default_window(&p));
            p
        }
        None => {
            let text = std::fs::read_to_string(&input.file).with_context(|| format!("reading {}", input.file))?;
            zwb_core::format::parse_with(&text, field)?
        }
    };
    let window = input.window.or(p.window).ok_or_else(|| anyhow!("no window given and the file declares none"))?;
    if window.0 > window.1 {
        return Err(anyhow!("empty window [{}, {}]", window.0, window.1));
    }
    p.window = Some(window);
    Ok(Loaded { canonical: zwb_core::format::print(&p), p, window })
}

fn run(cli: Cli) -> Result<i32> {
    let field = cli.field.as_deref().map(str::parse::<Field>).transpose()?;
    rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global()?;
    let report = match &cli.command {
        Command::Generate { name, window, all } => return commands::generate(name.as_deref(), *window, all.as_ref(), field),
        Command::CheckAlgebra(input) => commands::check_algebra(&load(input, field)?),
        Command::Zgen(input) => commands::zgen(&load(input, field)?),
        Command::Helix { input, period, shift, thread, twists, seed } => {
            commands::helix(&load(input, field)?, *period, *shift, *thread, *twists, *seed)
        }
        Command::Deform { input, thread, interior } => commands::deform(&load(input, field)?, *thread, *interior),
        Command::Qhom { input, from, to, torsion_above } => commands::qhom(&load(input, field)?, *from, *to, *torsion_above),
    }?;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.human());
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
