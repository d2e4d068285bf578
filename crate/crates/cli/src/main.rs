//! `revdec`: simulate, verify, measure and export the BCD adders.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for bad
//! flags or input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use revdec::classical::{
    carry_skip_add, chain_digits, cla_add, cla_signals, conventional_add, BcdOperands, BcdResult,
    ClaVariant,
};
use revdec::gate::{BitVector, GateLibrary};
use revdec::netlist::{export, ExportFormat};
use revdec::verify::{
    cla_audit, cla_errata, table1_report_with, verify_architecture_with, xor_substitution_audit,
    Architecture,
};

/// Environment variable naming a gate-definition file that overrides built-in tables.
const GATE_DEFS_ENV: &str = "REVDEC_GATE_DEFS";

#[derive(Parser)]
#[command(
    name = "revdec",
    version,
    about = "Reversible and classical BCD adders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Add one digit pair, or a digit sequence with --digits.
    Simulate {
        #[arg(long, value_parser = parse_arch)]
        arch: Architecture,
        #[arg(long, required_unless_present = "digits")]
        a: Option<u8>,
        #[arg(long, required_unless_present = "digits")]
        b: Option<u8>,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        cin: u8,
        /// Comma-separated `a:b` digit pairs, least significant first.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        digits: Option<String>,
        /// Print intermediate signals.
        #[arg(long)]
        trace: bool,
    },
    /// Check an architecture against the integer oracle on all 200 inputs.
    Verify {
        /// An architecture name or `all`.
        #[arg(long)]
        arch: String,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Fail on verbatim look-ahead mismatches too.
        #[arg(long)]
        strict: bool,
    },
    /// Gate, garbage, ancilla and depth of a reversible build.
    Metrics {
        #[arg(long, value_parser = parse_arch, required_unless_present = "table1")]
        arch: Option<Architecture>,
        /// Print the measured counts beside the target counts.
        #[arg(long)]
        table1: bool,
    },
    /// Write a reversible build as JSON or DOT.
    Export {
        #[arg(long, value_parser = parse_arch)]
        arch: Architecture,
        #[arg(long, value_enum)]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the full permutation table of a gate.
    Truthtable {
        #[arg(long)]
        gate: String,
    },
    /// Audit the printed look-ahead equations and the OR-to-XOR substitutions.
    Errata {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

fn parse_arch(s: &str) -> Result<Architecture, String> {
    s.parse().map_err(|e| format!("{e}"))
}

enum Failure {
    Usage(String),
    Verification,
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_library().and_then(|lib| run(cli.command, &lib));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_library() -> Result<GateLibrary, Failure> {
    let mut lib = GateLibrary::builtin();
    if let Some(path) = std::env::var_os(GATE_DEFS_ENV) {
        let text = fs::read_to_string(&path).map_err(|e| {
            usage(format!(
                "{GATE_DEFS_ENV}: {}: {e}",
                Path::new(&path).display()
            ))
        })?;
        lib.apply_definitions(&text)
            .map_err(|e| usage(format!("{GATE_DEFS_ENV}: {e}")))?;
    }
    Ok(lib)
}

fn run(command: Command, lib: &GateLibrary) -> CmdResult {
    match command {
        Command::Simulate {
            arch,
            a,
            b,
            cin,
            digits,
            trace,
        } => simulate(lib, arch, a, b, cin == 1, digits.as_deref(), trace),
        Command::Verify { arch, json, strict } => verify(lib, &arch, json.as_deref(), strict),
        Command::Metrics { arch, table1 } => metrics(lib, arch, table1),
        Command::Export { arch, format, out } => export_build(lib, arch, format, out.as_deref()),
        Command::Truthtable { gate } => truthtable(lib, &gate),
        Command::Errata { json } => errata(json.as_deref()),
    }
}

fn add_digit(lib: &GateLibrary, arch: Architecture) -> impl Fn(&BcdOperands) -> BcdResult {
    let build = arch.build(lib);
    move |op| match arch {
        Architecture::Conventional => conventional_add(op).0,
        Architecture::ClaVerbatim => cla_add(op, ClaVariant::Verbatim),
        Architecture::ClaCorrected => cla_add(op, ClaVariant::Corrected),
        Architecture::CarrySkip => carry_skip_add(op).0,
        Architecture::RevConventional | Architecture::RevCarrySkip => {
            build.as_ref().expect("reversible build").simulate(op)
        }
    }
}

fn parse_digit_pairs(text: &str) -> Result<(Vec<u8>, Vec<u8>), Failure> {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for pair in text.split(',') {
        let (a, b) = pair
            .trim()
            .split_once(':')
            .ok_or_else(|| usage(format!("--digits: expected a:b, got {pair:?}")))?;
        let digit = |s: &str| {
            s.trim()
                .parse::<u8>()
                .map_err(|_| usage(format!("--digits: not a digit: {s:?}")))
        };
        x.push(digit(a)?);
        y.push(digit(b)?);
    }
    Ok((x, y))
}

fn simulate(
    lib: &GateLibrary,
    arch: Architecture,
    a: Option<u8>,
    b: Option<u8>,
    cin: bool,
    digits: Option<&str>,
    trace: bool,
) -> CmdResult {
    let add = add_digit(lib, arch);
    if let Some(text) = digits {
        let (x, y) = parse_digit_pairs(text)?;
        let mut stages = Vec::new();
        let (sum, cout) = chain_digits(&x, &y, cin, |op| {
            let r = add(op);
            stages.push((*op, r));
            r
        })
        .map_err(usage)?;
        if trace {
            for (i, (op, r)) in stages.iter().enumerate() {
                println!("digit {i}: {op} -> {r}");
            }
        }
        let text: String = sum.iter().rev().map(|d| d.to_string()).collect();
        println!("sum={text} cout={}", cout as u8);
        return Ok(());
    }

    let (a, b) = (a.expect("required by clap"), b.expect("required by clap"));
    let op = BcdOperands::new(a, b, cin).map_err(usage)?;
    if trace {
        print_trace(lib, arch, &op);
    }
    println!("{}", add(&op));
    Ok(())
}

fn print_trace(lib: &GateLibrary, arch: Architecture, op: &BcdOperands) {
    match arch {
        Architecture::Conventional => println!("{}", conventional_add(op).1),
        Architecture::ClaVerbatim | Architecture::ClaCorrected => println!("{}", cla_signals(op)),
        Architecture::CarrySkip => println!("{}", carry_skip_add(op).1),
        Architecture::RevConventional | Architecture::RevCarrySkip => {
            let build = arch.build(lib).expect("reversible build");
            let input = BitVector::from_u64(op.pattern() as u64, 9);
            let values = build
                .netlist
                .wire_values(&input)
                .expect("adder netlists take 9 primary inputs");
            for (wire, value) in build.netlist.wires().iter().zip(values) {
                println!("{wire}={}", value as u8);
            }
        }
    }
}

fn write_json(path: &Path, value: &Value) -> CmdResult {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verify(lib: &GateLibrary, arch: &str, json: Option<&Path>, strict: bool) -> CmdResult {
    let archs = if arch.eq_ignore_ascii_case("all") {
        Architecture::ALL.to_vec()
    } else {
        vec![parse_arch(arch).map_err(usage)?]
    };
    let mut failed = false;
    let mut reports = Vec::new();
    for arch in archs {
        let report = verify_architecture_with(arch, lib);
        println!("{report}");
        if !report.passed() {
            if arch.is_errata_only() && !strict {
                println!(
                    "  {} mismatches are errata in the printed equations; see `revdec errata`",
                    report.mismatches.len()
                );
            } else {
                failed = true;
            }
        }
        reports.push(report.to_json());
    }
    if let Some(path) = json {
        write_json(path, &Value::Array(reports))?;
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn metrics(lib: &GateLibrary, arch: Option<Architecture>, table1: bool) -> CmdResult {
    if let Some(arch) = arch {
        let build = arch
            .build(lib)
            .ok_or_else(|| usage(format!("{} has no reversible netlist", arch.cli_name())))?;
        let (m, t) = (build.metrics, build.table1_target);
        println!(
            "gates={} garbage={} (target {}/{})",
            m.gate_count, m.garbage_count, t.gates, t.garbage
        );
        println!(
            "ancilla={} depth={} fidelity={}",
            m.ancilla_count, m.depth, build.figure_fidelity
        );
    }
    if table1 {
        print!("{}", table1_report_with(lib));
    }
    Ok(())
}

fn export_build(
    lib: &GateLibrary,
    arch: Architecture,
    format: Format,
    out: Option<&Path>,
) -> CmdResult {
    let build = arch
        .build(lib)
        .ok_or_else(|| usage(format!("{} has no reversible netlist", arch.cli_name())))?;
    let format = match format {
        Format::Json => ExportFormat::NetlistJson,
        Format::Dot => ExportFormat::Dot,
    };
    let bytes = export(&build.netlist, format);
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", String::from_utf8_lossy(&bytes));
            Ok(())
        }
    }
}

fn truthtable(lib: &GateLibrary, name: &str) -> CmdResult {
    let gate = lib.get(&name.to_ascii_uppercase()).map_err(usage)?;
    let width = gate.width();
    let ins: Vec<String> = (0..width)
        .map(|i| ((b'A' + i as u8) as char).to_string())
        .collect();
    let outs: Vec<String> = (0..width)
        .map(|i| ((b'P' + i as u8) as char).to_string())
        .collect();
    println!("{} | {}", ins.join(" "), outs.join(" "));
    let bits = |p: u32| {
        (0..width)
            .map(|i| (p >> i & 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (input, &output) in gate.table().iter().enumerate() {
        println!("{} | {}", bits(input as u32), bits(output));
    }
    Ok(())
}

fn errata(json: Option<&Path>) -> CmdResult {
    let audit = cla_audit();
    let entries = cla_errata();
    for a in &audit {
        println!(
            "{}: {}/200 failing  {}",
            a.equation,
            a.failures.len(),
            a.equation.text()
        );
    }
    for e in &entries {
        println!("{e}");
    }
    let xor = xor_substitution_audit();
    print!("{xor}");

    if let Some(path) = json {
        let doc = json!({
            "equations": audit.iter().map(|a| json!({
                "equation": a.equation.id(),
                "text": a.equation.text(),
                "failures": a.failures.len(),
            })).collect::<Vec<_>>(),
            "errata": entries.iter().map(|e| json!({
                "equation": e.equation.id(),
                "a": e.first_failing_input.a.value(),
                "b": e.first_failing_input.b.value(),
                "cin": e.first_failing_input.cin as u8,
                "observed": e.observed as u8,
                "expected": e.expected as u8,
            })).collect::<Vec<_>>(),
            "xor_sites": xor.sites.iter().map(|s| json!({
                "site": s.name,
                "terms": s.terms,
                "reachable_cases": s.reachable_cases,
                "reachable_failures": s.reachable_failures.len(),
                "unreachable_cases": s.unreachable_cases,
                "unreachable_failures": s.unreachable_failures.len(),
            })).collect::<Vec<_>>(),
        });
        write_json(path, &doc)?;
    }
    Ok(())
}
