use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hk_cli::{execute, Command, Format, RunFlags};
use hk_core::TermOrder;

/// Exact Groebner, Hilbert series, Betti and Frobenius length computations over F_p.
#[derive(Parser, Debug)]
#[command(name = "hk", version)]
struct Args {
    command: Command,
    /// Problem file, `-` for stdin.
    file: PathBuf,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long = "max-e")]
    max_e: Option<u32>,
    #[arg(long, value_parser = parse_order)]
    order: Option<TermOrder>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long = "degree-budget")]
    degree_budget: Option<u64>,
    /// Report `timing_ms` as null, for byte-stable output.
    #[arg(long = "no-timing")]
    no_timing: bool,
}

fn parse_order(s: &str) -> Result<TermOrder, String> {
    s.parse::<TermOrder>().map_err(|_| format!("unknown order `{s}` (expected grevlex or lex)"))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error [io_error]: {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let flags = RunFlags {
        e: args.e,
        max_e: args.max_e,
        order: args.order,
        degree_budget: args.degree_budget,
        no_timing: args.no_timing,
    };
    let (out, code) = execute(args.command, &text, &flags, args.format);
    println!("{out}");
    ExitCode::from(code as u8)
}
