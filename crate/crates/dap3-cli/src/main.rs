//! dap3: solve muffin problems and 3M-DAPs exactly from the command line.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 invalid problem, 4 oracle
//! scale exceeded, 5 internal self-check failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dap3::classify::classify;
use dap3::oracle::{brute_force_value, validate_solution, OracleError};
use dap3::problem::{family_members, Dap3, FamilyParams};
use dap3::rat::Rat;
use dap3::recursive::{solve_huddleston, solve_recursive};
use dap3::solution::{Solution, SolutionFile};

const EXIT_USAGE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_SCALE: u8 = 4;
const EXIT_SELF_CHECK: u8 = 5;

#[derive(Parser)]
#[command(name = "dap3", about = "Exact solver for muffin problems and 3M-DAPs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute f(m, s) for a muffin problem.
    Muffin(MuffinArgs),
    /// Solve a 3M-DAP from a JSON problem file.
    Dap(DapArgs),
    /// Scan a 3M-DAP family and emit one CSV row per member.
    Family(FamilyArgs),
    /// Check a solution file against a problem file.
    Verify(VerifyArgs),
    /// Brute-force f(m, s) at desk scale and compare with the solver.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct MuffinArgs {
    m: u64,
    s: u64,
    /// Emit the full fully-constrained solution as JSON.
    #[arg(long)]
    solution: bool,
    /// Add a rounded decimal display column with this many digits.
    #[arg(long, value_name = "N")]
    decimal: Option<u32>,
}

#[derive(Args)]
struct DapArgs {
    /// JSON problem file ({"t":..,"u":..,"v":..,"s_t":..,...,"x_v":"p/q"}).
    file: PathBuf,
    /// Solve with the Huddleston variant instead of the main algorithm.
    #[arg(long)]
    huddleston: bool,
    #[arg(long, value_name = "N")]
    decimal: Option<u32>,
}

#[derive(Args)]
struct FamilyArgs {
    t: u64,
    u: u64,
    v: u64,
    /// lambda = x_u - x_v, as p/q (may be negative).
    #[arg(allow_hyphen_values = true)]
    lambda: String,
    /// gamma = x_t/t, as p/q.
    gamma: String,
    /// Family size s = s_u + s_v.
    #[arg(long)]
    s: u64,
    /// Worker threads for solving members (default: single-threaded).
    #[arg(long, value_name = "K")]
    jobs: Option<usize>,
    #[arg(long, value_name = "N")]
    decimal: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    problem: PathBuf,
    solution: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    m: u64,
    s: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Muffin(args) => cmd_muffin(args),
        Command::Dap(args) => cmd_dap(args),
        Command::Family(args) => cmd_family(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn decimal_suffix(value: &Rat, digits: Option<u32>) -> String {
    match digits {
        Some(d) => format!(" ({})", value.to_decimal(d)),
        None => String::new(),
    }
}

fn cmd_muffin(args: MuffinArgs) -> ExitCode {
    if args.m == 0 || args.s == 0 {
        return usage_error("m and s must be positive integers");
    }
    let answer = dap3::muffin_value(args.m, args.s);
    println!("f = {}{}", answer.f, decimal_suffix(&answer.f, args.decimal));
    if let Some(g) = &answer.g {
        println!("g = {}{}", g, decimal_suffix(g, args.decimal));
    }
    println!("route = {}", serde_json::to_value(answer.route).unwrap().as_str().unwrap());
    if args.solution {
        match &answer.solution {
            Some(sol) => {
                let p = dap3::muffin_to_dap3(dap3::MuffinSpec::new(args.m, args.s)).unwrap();
                if let Err(report) = validate_solution(&p, sol) {
                    eprintln!("internal self-check failed: {report}");
                    return ExitCode::from(EXIT_SELF_CHECK);
                }
                println!("{}", serde_json::to_string_pretty(sol).unwrap());
            }
            None => println!("(no fully-constrained encoding for this instance)"),
        }
    }
    ExitCode::SUCCESS
}

fn solve_and_print(p: &Dap3, huddleston: bool, decimal: Option<u32>) -> ExitCode {
    let solved: Result<Solution, _> = if huddleston {
        solve_huddleston(p)
    } else {
        solve_recursive(p)
    };
    let sol = match solved {
        Ok(sol) => sol,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if let Err(report) = validate_solution(p, &sol) {
        eprintln!("internal self-check failed: {report}");
        return ExitCode::from(EXIT_SELF_CHECK);
    }
    if let Some(d) = decimal {
        println!("value = {} ({})", sol.g, sol.g.to_decimal(d));
    }
    println!("{}", serde_json::to_string_pretty(&sol).unwrap());
    ExitCode::SUCCESS
}

fn cmd_dap(args: DapArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.file) {
        Ok(text) => text,
        Err(err) => return usage_error(format_args!("{}: {err}", args.file.display())),
    };
    let p: Dap3 = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(err) => return usage_error(format_args!("{}: {err}", args.file.display())),
    };
    if let Err(violation) = p.validate() {
        eprintln!("error: {violation}");
        return ExitCode::from(EXIT_INVALID);
    }
    solve_and_print(&p, args.huddleston, args.decimal)
}

fn cmd_family(args: FamilyArgs) -> ExitCode {
    let lambda: Rat = match args.lambda.parse() {
        Ok(r) => r,
        Err(err) => return usage_error(err),
    };
    let gamma: Rat = match args.gamma.parse() {
        Ok(r) => r,
        Err(err) => return usage_error(err),
    };
    let params = FamilyParams::new(args.t, args.u, args.v, lambda, gamma);
    let members = match family_members(&params, args.s) {
        Ok(members) => members,
        Err(violation) => return usage_error(violation),
    };

    let solve_row = |p: &Dap3| -> Result<String, String> {
        let c = classify(p);
        let sol = solve_recursive(p).map_err(|e| e.to_string())?;
        validate_solution(p, &sol).map_err(|e| e.to_string())?;
        let mut row = format!(
            "{},{},{},{},{},{},{}",
            p.x_u,
            p.s_u,
            p.s_v,
            sol.g,
            c.depth_n,
            c.kind.b_value(),
            c.kind.label()
        );
        if let Some(d) = args.decimal {
            row.push(',');
            row.push_str(&sol.g.to_decimal(d));
        }
        Ok(row)
    };

    let rows: Result<Vec<String>, String> = match args.jobs {
        Some(jobs) if jobs > 1 => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| members.par_iter().map(solve_row).collect())
        }
        _ => members.iter().map(solve_row).collect(),
    };
    let rows = match rows {
        Ok(rows) => rows,
        Err(err) => {
            eprintln!("internal self-check failed: {err}");
            return ExitCode::from(EXIT_SELF_CHECK);
        }
    };
    let mut header = "x,s_u,s_v,g,N,b,kind".to_owned();
    if args.decimal.is_some() {
        header.push_str(",g_decimal");
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    use std::io::Write;
    let mut write_all = || -> std::io::Result<()> {
        writeln!(out, "{header}")?;
        for row in &rows {
            writeln!(out, "{row}")?;
        }
        out.flush()
    };
    match write_all() {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (e.g. piping into head) is not an error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let read = |path: &PathBuf| fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()));
    let p: Dap3 = match read(&args.problem).and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string())) {
        Ok(p) => p,
        Err(err) => return usage_error(err),
    };
    let file: SolutionFile = match read(&args.solution).and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string())) {
        Ok(f) => f,
        Err(err) => return usage_error(err),
    };
    let (t, u, v) = file.matrices();
    let declared = file.value;
    let g = t.min_cell().unwrap_or_else(Rat::zero);
    let sol = Solution { t, u, v, g: g.clone(), t_origin: Vec::new(), trace: Vec::new() };
    if declared != g {
        eprintln!("declared value {declared} differs from the minimum element {g}");
        return ExitCode::FAILURE;
    }
    match validate_solution(&p, &sol) {
        Ok(()) => {
            println!("ok");
            ExitCode::SUCCESS
        }
        Err(report) => {
            eprintln!("{report}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_oracle(args: OracleArgs) -> ExitCode {
    match brute_force_value(args.m, args.s) {
        Ok(value) => {
            let solver = dap3::muffin_value(args.m, args.s);
            let verdict = if solver.f == value { "AGREE" } else { "DISAGREE" };
            println!("{value} {verdict}");
            if verdict == "AGREE" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_SELF_CHECK)
            }
        }
        Err(err @ OracleError::ScaleExceeded { .. })
        | Err(err @ OracleError::UnsupportedShape { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_SCALE)
        }
    }
}
