use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use primult_cli::{parse_order, run_document, Options};

/// Runs one JSON job and prints the result document.
#[derive(Parser)]
#[command(name = "primult", version)]
struct Args {
    /// Job file; reads stdin when absent.
    input: Option<PathBuf>,
    #[arg(long)]
    jet_order: Option<u32>,
    /// grevlex or lex.
    #[arg(long, value_parser = ["grevlex", "lex"])]
    order: Option<String>,
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Also run the slower verification steps.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        jet_order: args.jet_order,
        order: args.order.as_deref().and_then(parse_order),
        degree_bound: args.degree_bound,
        verify: args.verify,
    };
    let (doc, code) = run_document(&text, &opts);
    let out = if args.pretty { serde_json::to_string_pretty(&doc) } else { serde_json::to_string(&doc) };
    println!("{}", out.expect("JSON values serialize"));
    ExitCode::from(code as u8)
}
