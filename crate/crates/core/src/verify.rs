//! Exhaustive sweeps against the oracle, equation audits and the cost table.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::classical::{
    carry_skip_add, cla_add, cla_signals, conventional_add, detection_terms, naive_detection_terms,
    oracle, BcdOperands, BcdResult, ClaEquation, ClaVariant,
};
use crate::gate::GateLibrary;
use crate::netlist::CostMetrics;
use crate::reversible::{
    build_carry_skip_reversible_with, build_conventional_reversible_with, FigureFidelity,
    ReversibleAdderBuild, Table1Row, TABLE1_CARRY_SKIP, TABLE1_CONVENTIONAL, TABLE1_EXISTING,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Architecture {
    Conventional,
    ClaVerbatim,
    ClaCorrected,
    CarrySkip,
    RevConventional,
    RevCarrySkip,
}

impl Architecture {
    pub const ALL: [Architecture; 6] = [
        Architecture::Conventional,
        Architecture::ClaVerbatim,
        Architecture::ClaCorrected,
        Architecture::CarrySkip,
        Architecture::RevConventional,
        Architecture::RevCarrySkip,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Architecture::Conventional => "CONVENTIONAL",
            Architecture::ClaVerbatim => "CLA_VERBATIM",
            Architecture::ClaCorrected => "CLA_CORRECTED",
            Architecture::CarrySkip => "CARRY_SKIP",
            Architecture::RevConventional => "REV_CONVENTIONAL",
            Architecture::RevCarrySkip => "REV_CARRY_SKIP",
        }
    }

    /// Lower-case name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Architecture::Conventional => "conventional",
            Architecture::ClaVerbatim => "cla_verbatim",
            Architecture::ClaCorrected => "cla_corrected",
            Architecture::CarrySkip => "carry_skip",
            Architecture::RevConventional => "rev_conventional",
            Architecture::RevCarrySkip => "rev_carry_skip",
        }
    }

    pub fn is_reversible(self) -> bool {
        matches!(
            self,
            Architecture::RevConventional | Architecture::RevCarrySkip
        )
    }

    /// Mismatches here document the printed equations and are not defects.
    pub fn is_errata_only(self) -> bool {
        self == Architecture::ClaVerbatim
    }

    /// Builds the netlist for a reversible architecture.
    pub fn build(self, lib: &GateLibrary) -> Option<ReversibleAdderBuild> {
        match self {
            Architecture::RevConventional => Some(build_conventional_reversible_with(lib)),
            Architecture::RevCarrySkip => Some(build_carry_skip_reversible_with(lib)),
            _ => None,
        }
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown architecture '{0}'")]
pub struct UnknownArchitecture(pub String);

impl FromStr for Architecture {
    type Err = UnknownArchitecture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Architecture::ALL
            .into_iter()
            .find(|a| a.cli_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownArchitecture(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub operands: BcdOperands,
    pub expected: BcdResult,
    pub actual: BcdResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub architecture: Architecture,
    pub total_cases: usize,
    pub mismatches: Vec<Mismatch>,
    pub agreement_rate: f64,
    pub metrics: Option<CostMetrics>,
    pub table1_targets: Option<Table1Row>,
    pub figure_fidelity: Option<FigureFidelity>,
}

impl VerificationReport {
    pub fn agreeing(&self) -> usize {
        self.total_cases - self.mismatches.len()
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let result = |r: &BcdResult| json!({ "sum": r.sum, "cout": r.cout as u8 });
        json!({
            "architecture": self.architecture.id(),
            "total": self.total_cases,
            "mismatches": self.mismatches.iter().map(|m| json!({
                "a": m.operands.a.value(),
                "b": m.operands.b.value(),
                "cin": m.operands.cin as u8,
                "expected": result(&m.expected),
                "actual": result(&m.actual),
            })).collect::<Vec<_>>(),
            "agreement": self.agreement_rate,
            "metrics": self.metrics.map(|m| metrics_json(&m)),
            "targets": self.table1_targets.map(|t| json!({ "gates": t.gates, "garbage": t.garbage })),
        })
    }
}

fn metrics_json(m: &CostMetrics) -> Value {
    json!({
        "gates": m.gate_count,
        "garbage": m.garbage_count,
        "ancilla": m.ancilla_count,
        "depth": m.depth,
    })
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} {} (agreement {:.3})",
            self.architecture,
            self.agreeing(),
            self.total_cases,
            if self.passed() { "PASS" } else { "FAIL" },
            self.agreement_rate
        )?;
        if let Some(m) = &self.metrics {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

pub fn verify_architecture(arch: Architecture) -> VerificationReport {
    verify_architecture_with(arch, &GateLibrary::builtin())
}

/// Sweeps all 200 valid inputs; reversible builds use gates from `lib`.
pub fn verify_architecture_with(arch: Architecture, lib: &GateLibrary) -> VerificationReport {
    let build = arch.build(lib);
    let eval = |op: &BcdOperands| match arch {
        Architecture::Conventional => conventional_add(op).0,
        Architecture::ClaVerbatim => cla_add(op, ClaVariant::Verbatim),
        Architecture::ClaCorrected => cla_add(op, ClaVariant::Corrected),
        Architecture::CarrySkip => carry_skip_add(op).0,
        Architecture::RevConventional | Architecture::RevCarrySkip => {
            build.as_ref().expect("reversible build").simulate(op)
        }
    };
    let mut total_cases = 0;
    let mut mismatches = Vec::new();
    for op in BcdOperands::all() {
        total_cases += 1;
        let (expected, actual) = (oracle(&op), eval(&op));
        if expected != actual {
            mismatches.push(Mismatch {
                operands: op,
                expected,
                actual,
            });
        }
    }
    VerificationReport {
        architecture: arch,
        total_cases,
        agreement_rate: (total_cases - mismatches.len()) as f64 / total_cases as f64,
        mismatches,
        metrics: build.as_ref().map(|b| b.metrics),
        table1_targets: build.as_ref().map(|b| b.table1_target),
        figure_fidelity: build.as_ref().map(|b| b.figure_fidelity),
    }
}

/// Every input at which one printed equation disagrees with the oracle bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationAudit {
    pub equation: ClaEquation,
    pub failures: Vec<BcdOperands>,
}

pub fn cla_audit() -> Vec<EquationAudit> {
    ClaEquation::ALL
        .into_iter()
        .map(|equation| EquationAudit {
            equation,
            failures: BcdOperands::all()
                .filter(|op| {
                    equation.eval_verbatim(&cla_signals(op), op.cin) != equation.target(op)
                })
                .collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrataEntry {
    pub equation: ClaEquation,
    pub first_failing_input: BcdOperands,
    pub observed: bool,
    pub expected: bool,
}

impl ErrataEntry {
    /// Re-evaluates the printed equation at the recorded input.
    pub fn reproduces(&self) -> bool {
        let op = &self.first_failing_input;
        self.equation.eval_verbatim(&cla_signals(op), op.cin) == self.observed
            && self.equation.target(op) == self.expected
    }
}

impl fmt::Display for ErrataEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: first failure at {} observed={} expected={}",
            self.equation, self.first_failing_input, self.observed as u8, self.expected as u8
        )
    }
}

/// One entry per printed equation that is wrong somewhere, at its first
/// failing input in `(a, b, cin)` order.
pub fn cla_errata() -> Vec<ErrataEntry> {
    cla_audit()
        .into_iter()
        .filter_map(|audit| {
            let op = *audit.failures.first()?;
            Some(ErrataEntry {
                equation: audit.equation,
                first_failing_input: op,
                observed: audit.equation.eval_verbatim(&cla_signals(&op), op.cin),
                expected: audit.equation.target(&op),
            })
        })
        .collect()
}

/// OR against XOR of a set of product terms, over all 512 operand rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorSite {
    pub name: &'static str,
    pub terms: &'static str,
    pub reachable_cases: usize,
    /// Valid BCD rows where OR and XOR differ, as `(a, b, cin)`.
    pub reachable_failures: Vec<(u8, u8, bool)>,
    pub unreachable_cases: usize,
    /// Rows with an operand above 9 where OR and XOR differ.
    pub unreachable_failures: Vec<(u8, u8, bool)>,
}

impl XorSite {
    pub fn holds_on_reachable(&self) -> bool {
        self.reachable_failures.is_empty()
    }
}

impl fmt::Display for XorSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: reachable {}/{} agree",
            self.name,
            self.terms,
            self.reachable_cases - self.reachable_failures.len(),
            self.reachable_cases
        )?;
        if let Some(&(a, b, cin)) = self.reachable_failures.first() {
            write!(f, ", first counterexample a={a} b={b} cin={}", cin as u8)?;
        }
        write!(
            f,
            "; unreachable {}/{} agree",
            self.unreachable_cases - self.unreachable_failures.len(),
            self.unreachable_cases
        )
    }
}

/// Audits one site. `terms` maps raw 4-bit operands and carry-in to the terms.
pub fn audit_site(
    name: &'static str,
    description: &'static str,
    terms: impl Fn(u8, u8, bool) -> Vec<bool>,
) -> XorSite {
    let mut site = XorSite {
        name,
        terms: description,
        reachable_cases: 0,
        reachable_failures: Vec::new(),
        unreachable_cases: 0,
        unreachable_failures: Vec::new(),
    };
    for row in 0..512u32 {
        let (a, b, cin) = ((row & 0xf) as u8, (row >> 4 & 0xf) as u8, row >> 8 == 1);
        let t = terms(a, b, cin);
        let or = t.iter().any(|&x| x);
        let xor = t.iter().fold(false, |acc, &x| acc ^ x);
        let reachable = a < 10 && b < 10;
        let (cases, failures) = if reachable {
            (&mut site.reachable_cases, &mut site.reachable_failures)
        } else {
            (&mut site.unreachable_cases, &mut site.unreachable_failures)
        };
        *cases += 1;
        if or != xor {
            failures.push((a, b, cin));
        }
    }
    site.reachable_failures.sort();
    site.unreachable_failures.sort();
    site
}

fn first_stage(a: u8, b: u8, cin: bool) -> (bool, u8) {
    let total = a + b + cin as u8;
    (total >= 16, total & 0xf)
}

fn bit(x: u8, j: usize) -> bool {
    x >> j & 1 == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorAudit {
    pub sites: Vec<XorSite>,
}

impl XorAudit {
    pub fn site(&self, name: &str) -> Option<&XorSite> {
        self.sites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for XorAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for site in &self.sites {
            writeln!(f, "{site}")?;
        }
        Ok(())
    }
}

/// The decimal-carry combiner (as built and in its naive form) and the
/// XOR-joined look-ahead signals `m` and `n`.
pub fn xor_substitution_audit() -> XorAudit {
    let cla = |a: u8, b: u8| {
        let (g, p) = (a & b, a | b);
        (
            [bit(g, 1), bit(g, 2), bit(g, 3)],
            [bit(p, 1), bit(p, 2), bit(p, 3)],
        )
    };
    XorAudit {
        sites: vec![
            audit_site("decimal_carry", "K, Z3·Z2, Z3·~Z2·Z1", |a, b, cin| {
                let (k, z) = first_stage(a, b, cin);
                detection_terms(k, z).to_vec()
            }),
            audit_site("decimal_carry_naive", "K, Z3·Z2, Z3·Z1", |a, b, cin| {
                let (k, z) = first_stage(a, b, cin);
                naive_detection_terms(k, z).to_vec()
            }),
            audit_site("cla_m", "g3, p3·p2, p3·p1, g2·p1", |a, b, _| {
                let ([_, g2, g3], [p1, p2, p3]) = cla(a, b);
                vec![g3, p3 & p2, p3 & p1, g2 & p1]
            }),
            audit_site("cla_n", "p3, g2, p2·g1", |a, b, _| {
                let ([g1, g2, _], [_, p2, p3]) = cla(a, b);
                vec![p3, g2, p2 & g1]
            }),
        ],
    }
}

/// One row of the cost comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Line {
    pub label: &'static str,
    pub target: Table1Row,
    /// `None` for the baseline row, whose counts are fixed constants.
    pub measured: Option<CostMetrics>,
    pub fidelity: Option<FigureFidelity>,
}

impl Table1Line {
    /// Measured minus target, gates then garbage.
    pub fn delta(&self) -> Option<(i64, i64)> {
        self.measured.map(|m| {
            (
                m.gate_count as i64 - self.target.gates as i64,
                m.garbage_count as i64 - self.target.garbage as i64,
            )
        })
    }
}

impl fmt::Display for Table1Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.target;
        match (self.measured, self.delta()) {
            (Some(m), Some((dg, dw))) => write!(
                f,
                "{}: gates={} garbage={} (target {}/{}, delta {:+}/{:+}) ancilla={} depth={} {}",
                self.label,
                m.gate_count,
                m.garbage_count,
                t.gates,
                t.garbage,
                dg,
                dw,
                m.ancilla_count,
                m.depth,
                self.fidelity.unwrap_or(FigureFidelity::Reconstructed)
            ),
            _ => write!(f, "{}: {}/{}", self.label, t.gates, t.garbage),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Report {
    pub lines: Vec<Table1Line>,
}

impl Table1Report {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.lines
                .iter()
                .map(|l| {
                    json!({
                        "label": l.label,
                        "target": { "gates": l.target.gates, "garbage": l.target.garbage },
                        "measured": l.measured.map(|m| metrics_json(&m)),
                        "delta": l.delta().map(|(g, w)| json!({ "gates": g, "garbage": w })),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for Table1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

pub fn table1_report() -> Table1Report {
    table1_report_with(&GateLibrary::builtin())
}

pub fn table1_report_with(lib: &GateLibrary) -> Table1Report {
    let measured = |label, target, build: ReversibleAdderBuild| Table1Line {
        label,
        target,
        measured: Some(build.metrics),
        fidelity: Some(build.figure_fidelity),
    };
    Table1Report {
        lines: vec![
            Table1Line {
                label: "existing[11]",
                target: TABLE1_EXISTING,
                measured: None,
                fidelity: None,
            },
            measured(
                "rev_conventional",
                TABLE1_CONVENTIONAL,
                build_conventional_reversible_with(lib),
            ),
            measured(
                "rev_carry_skip",
                TABLE1_CARRY_SKIP,
                build_carry_skip_reversible_with(lib),
            ),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correct_architectures_pass() {
        for arch in Architecture::ALL {
            if arch.is_errata_only() {
                continue;
            }
            let r = verify_architecture(arch);
            assert_eq!((r.total_cases, r.agreeing()), (200, 200), "{arch}");
            assert_eq!(r.agreement_rate, 1.0);
            assert_eq!(r.metrics.is_some(), arch.is_reversible());
        }
    }

    #[test]
    fn verbatim_cla_disagrees_somewhere() {
        let r = verify_architecture(Architecture::ClaVerbatim);
        assert!(!r.passed());
        let rate = (200 - r.mismatches.len()) as f64 / 200.0;
        assert_eq!(r.agreement_rate, rate);
        for m in &r.mismatches {
            assert_eq!(m.actual, cla_add(&m.operands, ClaVariant::Verbatim));
        }
    }

    #[test]
    fn report_json_shape() {
        let v = verify_architecture(Architecture::RevConventional).to_json();
        assert_eq!(v["architecture"], "REV_CONVENTIONAL");
        assert_eq!(v["total"], 200);
        assert_eq!(v["targets"]["gates"], 11);
        assert_eq!(v["targets"]["garbage"], 22);
        assert!(v["metrics"]["depth"].is_u64());
        assert_eq!(
            verify_architecture(Architecture::Conventional).to_json()["metrics"],
            Value::Null
        );
    }

    #[test]
    fn architecture_names_round_trip() {
        for arch in Architecture::ALL {
            assert_eq!(arch.cli_name().parse::<Architecture>().unwrap(), arch);
        }
        assert!("ripple".parse::<Architecture>().is_err());
    }

    #[test]
    fn s0_is_exact_and_entries_reproduce() {
        let audit = cla_audit();
        assert!(audit[0].failures.is_empty());
        let errata = cla_errata();
        assert!(errata.iter().all(|e| e.equation != ClaEquation::S0));
        assert!(errata.iter().all(ErrataEntry::reproduces));
        let s1 = errata
            .iter()
            .find(|e| e.equation == ClaEquation::S1)
            .unwrap();
        assert_eq!(
            s1.first_failing_input,
            BcdOperands::new(0, 2, false).unwrap()
        );
    }

    #[test]
    fn detection_terms_are_exclusive_where_reachable() {
        let audit = xor_substitution_audit();
        let site = audit.site("decimal_carry").unwrap();
        assert_eq!(site.reachable_cases, 200);
        assert!(site.holds_on_reachable());
        // k=1 with z >= 12 needs a sum of 28 or more
        assert!(site.unreachable_failures.contains(&(15, 15, false)));

        let naive = audit.site("decimal_carry_naive").unwrap();
        assert!(naive.reachable_failures.contains(&(7, 7, false)));
        for &(a, b, cin) in &naive.reachable_failures {
            assert!(matches!(a + b + cin as u8, 14 | 15 | 30 | 31));
        }
    }

    #[test]
    fn single_term_site_is_trivial() {
        let site = audit_site("single", "a0", |a, _, _| vec![a & 1 == 1]);
        assert!(site.holds_on_reachable());
        assert!(site.unreachable_failures.is_empty());
        assert_eq!(site.reachable_cases + site.unreachable_cases, 512);
    }

    #[test]
    fn table1_lines() {
        let report = table1_report();
        let text = report.to_string();
        assert!(text.starts_with("existing[11]: 23/22\n"));
        assert!(text.contains("(target 11/22"));
        assert!(text.contains("(target 15/27"));
        let conv = &report.lines[1];
        assert!(conv.measured.unwrap().gate_count < 23);
        assert_eq!(report.to_json()[0]["measured"], Value::Null);
    }
}
