//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use revdec::classical::{
    carry_skip_add, cla_add, conventional_add, decimal_add, oracle, BcdOperands, BcdResult,
    ClaEquation, ClaVariant, DecimalArch,
};
use revdec::gate::{builtin, tsg_full_adder_wiring, BuiltinGate};
use revdec::netlist::{check_injective, export, import, ExportFormat, Injectivity};
use revdec::reversible::{
    build_carry_skip_reversible, build_conventional_reversible, FigureFidelity,
    ReversibleAdderBuild, TABLE1_EXISTING,
};
use revdec::verify::{cla_audit, cla_errata, table1_report, xor_substitution_audit};

const AC1_LIMIT: Duration = Duration::from_millis(1);
const AC2_LIMIT: Duration = Duration::from_secs(1);
const AC3_LIMIT: Duration = Duration::from_secs(1);
const AC7_LIMIT: Duration = Duration::from_secs(5);
const AC7_CASES: usize = 1000;
const AC7_WIDTHS: [usize; 4] = [1, 7, 16, 34];

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{} [{:.3?} / limit {:?}]", out.detail, elapsed, limit);
    out.pass &= elapsed < limit;
    out
}

fn ac1() -> Outcome {
    let mut failures = Vec::new();
    for which in BuiltinGate::ALL {
        let g = builtin(which);
        let mut seen = vec![false; g.table().len()];
        for &o in g.table() {
            if std::mem::replace(&mut seen[o as usize], true) {
                failures.push(format!("{} not bijective", which.name()));
                break;
            }
        }
    }
    let tsg = builtin(BuiltinGate::Tsg);
    let ts3 = builtin(BuiltinGate::Ts3);
    for x in 0..8u32 {
        let (a, b, c) = (x & 1 == 1, x >> 1 & 1 == 1, x >> 2 & 1 == 1);
        let fa = tsg_full_adder_wiring(&tsg, a, b, c);
        let total = a as u8 + b as u8 + c as u8;
        if (fa.sum, fa.cout) != (total & 1 == 1, total >= 2) {
            failures.push(format!("TSG full adder row {x:03b}"));
        }
        if (ts3.eval_pattern(x) >> 2 & 1 == 1) != (a ^ b ^ c) {
            failures.push(format!("TS3 row {x:03b}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "5 gates bijective, TSG full adder 8/8, TS3 xor 8/8".into()
        } else {
            failures.join("; ")
        },
    }
}

fn ac2(conv: &ReversibleAdderBuild, skip: &ReversibleAdderBuild) -> Outcome {
    type Model<'a> = (&'static str, &'a dyn Fn(&BcdOperands) -> BcdResult);
    let models: [Model; 5] = [
        ("conventional", &|op| conventional_add(op).0),
        ("carry_skip", &|op| carry_skip_add(op).0),
        ("cla_corrected", &|op| cla_add(op, ClaVariant::Corrected)),
        ("rev_conventional", &|op| conv.simulate(op)),
        ("rev_carry_skip", &|op| skip.simulate(op)),
    ];
    let mut pass = true;
    let counts: Vec<String> = models
        .iter()
        .map(|(name, f)| {
            let ok = BcdOperands::all().filter(|op| f(op) == oracle(op)).count();
            pass &= ok == 200;
            format!("{name} {ok}/200")
        })
        .collect();
    Outcome {
        pass,
        detail: counts.join(", "),
    }
}

fn ac3(builds: &[&ReversibleAdderBuild]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for b in builds {
        let injective = check_injective(&b.netlist).map(|r| r == Injectivity::Pass) == Ok(true);
        let fan_out_ok = b
            .netlist
            .wires()
            .iter()
            .all(|w| b.netlist.sinks(w).is_some_and(|s| s.len() == 1));
        let patterns = 1u64 << b.netlist.primary_input_count();
        pass &= injective && fan_out_ok && patterns == 512;
        parts.push(format!(
            "{} injective={} over {} patterns, fan-out<=1 {}",
            b.netlist.name(),
            injective,
            patterns,
            fan_out_ok
        ));
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn ac4() -> Outcome {
    let report = table1_report();
    let text = report.to_string();
    let baseline = text.lines().next() == Some("existing[11]: 23/22")
        && report.lines[0].target == TABLE1_EXISTING
        && report.lines[0].measured.is_none();
    let conv = &report.lines[1];
    let conv_m = conv.measured.expect("conventional build measured");
    let conv_ok = conv_m.gate_count < 23
        && match conv.fidelity {
            Some(FigureFidelity::Exact) => conv_m.gate_count <= 11 && conv_m.garbage_count <= 22,
            _ => conv.delta().is_some(),
        };
    let skip = &report.lines[2];
    let skip_ok = skip.delta().is_some() && skip.measured.is_some();
    Outcome {
        pass: baseline && conv_ok && skip_ok,
        detail: text.trim_end().replace('\n', " | "),
    }
}

fn ac5() -> Outcome {
    let errata = cla_errata();
    let count = |eq| errata.iter().filter(|e| e.equation == eq).count();
    let (s0, cout) = (count(ClaEquation::S0), count(ClaEquation::Cout));
    let reproducible = errata.iter().all(|e| e.reproduces());
    let cout_failures = cla_audit()
        .into_iter()
        .find(|a| a.equation == ClaEquation::Cout)
        .map_or(0, |a| a.failures.len());
    let listed: Vec<String> = errata.iter().map(|e| e.to_string()).collect();
    Outcome {
        pass: s0 == 0 && cout == 0 && reproducible,
        detail: format!(
            "S0 entries={s0} (need 0), Cout entries={cout} (need 0, fails on {cout_failures}/200 inputs), reproducible={reproducible}; {}",
            listed.join("; ")
        ),
    }
}

fn ac6() -> Outcome {
    let audit = xor_substitution_audit();
    let used = audit.site("decimal_carry").expect("decimal carry site");
    let naive = audit.site("decimal_carry_naive").expect("naive site");
    let at_14 = naive
        .reachable_failures
        .iter()
        .find(|&&(a, b, cin)| (a + b + cin as u8) % 16 == 14);
    Outcome {
        pass: used.reachable_cases == 200 && used.holds_on_reachable() && at_14.is_some(),
        detail: format!(
            "exclusive terms agree {}/{}; naive counterexample at sum 14: {:?}",
            used.reachable_cases - used.reachable_failures.len(),
            used.reachable_cases,
            at_14
        ),
    }
}

fn ac7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut failures = 0usize;
    let mut cases = 0usize;
    for arch in DecimalArch::ALL {
        for width in AC7_WIDTHS {
            let limit = 10u128.pow(width as u32);
            for _ in 0..AC7_CASES {
                let (x, y, cin) = (rng.gen_range(0..limit), rng.gen_range(0..limit), rng.gen());
                let digits = |mut v: u128| -> Vec<u8> {
                    (0..width)
                        .map(|_| {
                            let d = (v % 10) as u8;
                            v /= 10;
                            d
                        })
                        .collect()
                };
                let (sum, cout) = decimal_add(&digits(x), &digits(y), cin, arch).unwrap();
                let got = sum.iter().rev().fold(0u128, |acc, &d| acc * 10 + d as u128)
                    + cout as u128 * limit;
                cases += 1;
                if got != x + y + cin as u128 {
                    failures += 1;
                }
            }
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!(
            "{} of {} cases match u128 addition",
            cases - failures,
            cases
        ),
    }
}

fn ac8(builds: &[&ReversibleAdderBuild]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for b in builds {
        let ok = import(&export(&b.netlist, ExportFormat::NetlistJson))
            .map(|n| n == b.netlist)
            .unwrap_or(false);
        pass &= ok;
        parts.push(format!("{} round trip {}", b.netlist.name(), ok));
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn main() -> ExitCode {
    let mut results = Vec::new();
    results.push(("AC1", timed(AC1_LIMIT, ac1)));
    let (conv, skip) = (
        build_conventional_reversible(),
        build_carry_skip_reversible(),
    );
    results.push(("AC2", timed(AC2_LIMIT, || ac2(&conv, &skip))));
    results.push(("AC3", timed(AC3_LIMIT, || ac3(&[&conv, &skip]))));
    results.push(("AC4", ac4()));
    results.push(("AC5", ac5()));
    results.push(("AC6", ac6()));
    results.push(("AC7", timed(AC7_LIMIT, ac7)));
    results.push(("AC8", ac8(&[&conv, &skip])));

    let mut all = true;
    for (id, out) in &results {
        all &= out.pass;
        println!(
            "{id} {} {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
