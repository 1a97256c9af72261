use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use swapl::runtime::{EvalConfig, Interpreter, Value};
use swapl::{desugar, frontend, ssa, transforms};

#[derive(Parser)]
#[command(name = "swapl", version, about = "Run, inspect and differentiate swapl programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the program's main function.
    Run(RunArgs),
    /// Print the parsed program.
    Ast {
        file: PathBuf,
        /// Print the desugared core program instead.
        #[arg(long)]
        core: bool,
    },
    /// Print the validated block-form IR.
    Ir { file: PathBuf },
    /// Evaluate a function and its derivative with respect to one parameter.
    Grad(GradArgs),
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// Always copy aggregates on update instead of reusing unique cells.
    #[arg(long)]
    no_reuse: bool,
    /// Print reuse counters after the program's output.
    #[arg(long)]
    stats: bool,
    /// Print the counters as a JSON object.
    #[arg(long)]
    json: bool,
    /// Log every executed instruction to standard error.
    #[arg(long)]
    trace: bool,
    /// Stop after this many executed instructions.
    #[arg(long, value_name = "N")]
    max_steps: Option<u64>,
}

#[derive(Args)]
struct GradArgs {
    file: PathBuf,
    /// Function to differentiate.
    #[arg(long = "fn", value_name = "NAME")]
    function: String,
    /// Index of the parameter to differentiate with respect to.
    #[arg(long, value_name = "INDEX")]
    wrt: usize,
    /// Comma-separated argument values.
    #[arg(long, value_name = "V1,V2,...", value_delimiter = ',', value_parser = parse_number, allow_hyphen_values = true)]
    at: Vec<Number>,
}

#[derive(Clone, Copy)]
enum Number {
    Int(i64),
    Float(f64),
}

fn parse_number(s: &str) -> Result<Number, String> {
    let s = s.trim();
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Number::Int(n));
    }
    s.parse::<f64>().map(Number::Float).map_err(|_| format!("`{s}` is not a number"))
}

/// A failure reported on standard error with exit code 1.
struct Failure(String);

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn compile(path: &Path) -> Result<ssa::IrProgram, Failure> {
    let source = read(path)?;
    swapl::compile(&source).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Ast { file, core } => ast(&file, core),
        Command::Ir { file } => compile(&file).map(|ir| print!("{}", ssa::print_ir(&ir))),
        Command::Grad(args) => grad(args),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let ir = compile(&args.file)?;
    let config = EvalConfig { reuse_enabled: !args.no_reuse, trace: args.trace, max_steps: args.max_steps };
    let stdout = std::io::stdout();
    let mut interp = Interpreter::new(&ir, config, stdout.lock());
    let outcome = interp.run_main();
    let stats = interp.stats();
    drop(interp);
    outcome.map_err(|e| Failure(format!("{}: {e}", args.file.display())))?;
    if args.json {
        println!("{}", serde_json::to_string(&stats).expect("stats serialize"));
    } else if args.stats {
        println!("{stats}");
    }
    Ok(())
}

fn ast(path: &Path, core: bool) -> Result<(), Failure> {
    let source = read(path)?;
    let located = |e: &dyn std::fmt::Display| Failure(format!("{}: {e}", path.display()));
    let program = frontend::parse_source(&source).map_err(|e| located(&e))?;
    if core {
        let core = desugar::desugar(&program).map_err(|e| located(&e))?;
        print!("{}", frontend::pretty_print(core.program()));
    } else {
        print!("{}", frontend::pretty_print(&program));
    }
    Ok(())
}

fn grad(args: GradArgs) -> Result<(), Failure> {
    let ir = compile(&args.file)?;
    let at = args
        .at
        .iter()
        .map(|n| match n {
            Number::Int(n) => Value::Int(*n),
            Number::Float(x) => Value::Float(*x),
        })
        .collect();
    let (value, deriv) = transforms::gradient(&ir, &args.function, args.wrt, at)
        .map_err(|e| Failure(format!("{}: {e}", args.file.display())))?;
    println!("value={} deriv={}", value.render(), deriv.render());
    Ok(())
}
