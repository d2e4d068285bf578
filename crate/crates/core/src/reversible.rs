//! Reversible BCD adder netlists built from the gate library.
//!
//! Both adders share the same back end. Given the first-stage carry `k` and
//! binary sum `z`, it forms the correction trigger and adds `0110` when the
//! trigger is set:
//!
//! ```text
//! FREDKIN(z2, z3, 0)  -> z2, u = ~z2·z3, X = z2·z3
//! TOFFOLI(u, z1, 0)   -> u, z1, Y = ~z2·z3·z1
//! TS3(X, Y, k)        -> X, Y, t = k ⊕ X ⊕ Y          decimal carry
//! NEW_GATE(t, z1, 0)  -> t, c2 = t·z1, s1 = t ⊕ z1     bit 1 half adder
//! TSG(t, z2, 0, c2)   -> t, garbage, s2, c3            bit 2 full adder
//! TS3(u, X, c3)       -> u, X, s3 = z3 ⊕ c3            bit 3 (u ⊕ X = z3)
//! ```
//!
//! The three detection terms `k`, `X`, `Y` are pairwise exclusive on every
//! reachable input, so the TS-3 XOR stands in for a 3-input OR. Bit 0 adds
//! nothing and `z0` leaves directly as `s0`. The trigger `t` is never fanned
//! out: it rides the pass-through line of the NEW_GATE and the TSG and leaves
//! as `cout`.
//!
//! Bit 2 keeps a full TSG adder (rather than a reduced gate) because the
//! addend `t` and the carry `c2` both vary; bit 1 has a constant-free half
//! adder and bit 3 only needs the sum, so each takes a single 3-line gate.

use std::collections::BTreeMap;
use std::fmt;

use crate::classical::{BcdOperands, BcdResult};
use crate::gate::{BitVector, BuiltinGate, GateLibrary};
use crate::netlist::{
    metrics, simulate, CircuitInput, CircuitOutput, CostMetrics, GateInstance, InputRole, Netlist,
    NetlistError, OutputRole,
};

/// Target gate and garbage counts for the reversible BCD adders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Row {
    pub gates: usize,
    pub garbage: usize,
}

pub const TABLE1_EXISTING: Table1Row = Table1Row {
    gates: 23,
    garbage: 22,
};
pub const TABLE1_CONVENTIONAL: Table1Row = Table1Row {
    gates: 11,
    garbage: 22,
};
pub const TABLE1_CARRY_SKIP: Table1Row = Table1Row {
    gates: 15,
    garbage: 27,
};

/// Whether a build follows a reference schematic wire for wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFidelity {
    Exact,
    /// Functionally equivalent, structure re-derived from the stated design.
    Reconstructed,
}

impl fmt::Display for FigureFidelity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FigureFidelity::Exact => "EXACT",
            FigureFidelity::Reconstructed => "RECONSTRUCTED",
        })
    }
}

/// Incremental netlist construction with generated wire names.
///
/// Gate outputs are named `<label>.<line>` with lines lettered `P`, `Q`, `R`, `S`.
#[derive(Debug)]
pub struct NetlistBuilder<'a> {
    lib: &'a GateLibrary,
    inputs: Vec<CircuitInput>,
    gates: Vec<GateInstance>,
    roles: BTreeMap<String, Vec<usize>>,
    ancillas: usize,
}

const LINE_NAMES: [&str; 8] = ["P", "Q", "R", "S", "T", "U", "V", "W"];

impl<'a> NetlistBuilder<'a> {
    pub fn new(lib: &'a GateLibrary) -> Self {
        Self {
            lib,
            inputs: Vec::new(),
            gates: Vec::new(),
            roles: BTreeMap::new(),
            ancillas: 0,
        }
    }

    pub fn primary(&mut self, wire: &str) -> String {
        self.inputs.push(CircuitInput {
            wire: wire.to_string(),
            role: InputRole::PrimaryInput,
        });
        wire.to_string()
    }

    pub fn ancilla(&mut self, bit: bool) -> String {
        let wire = format!("anc{}", self.ancillas);
        self.ancillas += 1;
        self.inputs.push(CircuitInput {
            wire: wire.clone(),
            role: InputRole::Ancilla(bit),
        });
        wire
    }

    /// Places `gate` reading `inputs` and returns its output wires.
    pub fn place(
        &mut self,
        gate: BuiltinGate,
        label: &str,
        role: &str,
        inputs: &[String],
    ) -> Vec<String> {
        let index = self.gates.len();
        let outputs: Vec<String> = (0..gate.width())
            .map(|line| format!("{label}.{}", LINE_NAMES[line]))
            .collect();
        self.gates.push(GateInstance::new(
            self.lib.gate(gate),
            inputs.to_vec(),
            outputs.clone(),
        ));
        self.roles.entry(role.to_string()).or_default().push(index);
        outputs
    }

    pub fn roles(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.roles
    }

    /// Validates the netlist. Primary outputs are declared first, then garbage.
    pub fn finish(
        self,
        name: &str,
        primary: &[String],
        garbage: &[String],
    ) -> Result<(Netlist, BTreeMap<String, Vec<usize>>), NetlistError> {
        let outputs = primary
            .iter()
            .map(|w| (w, OutputRole::PrimaryOutput))
            .chain(garbage.iter().map(|w| (w, OutputRole::Garbage)))
            .map(|(w, role)| CircuitOutput {
                wire: w.clone(),
                role,
            })
            .collect();
        let net = Netlist::new(name, self.inputs, outputs, self.gates)?;
        Ok((net, self.roles))
    }
}

/// Wires of the Fredkin skip multiplexer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkipMux {
    /// `p ? cin : c4`.
    pub selected: String,
    /// The line not selected; always garbage.
    pub unselected: String,
    /// Pass-through of `p`.
    pub control: String,
}

/// One Fredkin with `p` as control: line 1 carries `p'·c4 + p·cin`.
pub fn skip_mux_subcircuit(b: &mut NetlistBuilder, p: &str, cin: &str, c4: &str) -> SkipMux {
    let out = b.place(
        BuiltinGate::Fredkin,
        "skip",
        "skip_mux",
        &[p.to_string(), c4.to_string(), cin.to_string()],
    );
    SkipMux {
        control: out[0].clone(),
        selected: out[1].clone(),
        unselected: out[2].clone(),
    }
}

/// Wires of the Fredkin AND4 chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct And4 {
    pub output: String,
    pub garbage: Vec<String>,
}

/// Three Fredkins: `FREDKIN(x, y, 0)` puts `x·y` on line 2.
pub fn and4_subcircuit(b: &mut NetlistBuilder, w: [&str; 4]) -> And4 {
    let mut acc = w[0].to_string();
    let mut garbage = Vec::new();
    for (i, x) in w[1..].iter().enumerate() {
        let zero = b.ancilla(false);
        let out = b.place(
            BuiltinGate::Fredkin,
            &format!("and{i}"),
            "and4",
            &[x.to_string(), acc, zero],
        );
        garbage.extend_from_slice(&out[..2]);
        acc = out[2].clone();
    }
    And4 {
        output: acc,
        garbage,
    }
}

/// TSG full adder `(a, b, 0, cin)`: returns `(sum, cout, [a, a ⊕ b])`.
fn tsg_full_adder(
    b: &mut NetlistBuilder,
    label: &str,
    role: &str,
    x: &str,
    y: &str,
    cin: &str,
) -> (String, String, [String; 2]) {
    let zero = b.ancilla(false);
    let out = b.place(
        BuiltinGate::Tsg,
        label,
        role,
        &[x.to_string(), y.to_string(), zero, cin.to_string()],
    );
    (
        out[2].clone(),
        out[3].clone(),
        [out[0].clone(), out[1].clone()],
    )
}

struct CorrectedDigit {
    sum: [String; 4],
    cout: String,
    garbage: Vec<String>,
}

/// Detection and add-6 correction shared by both adders (see module docs).
fn decimal_correction(b: &mut NetlistBuilder, k: &str, z: &[String; 4]) -> CorrectedDigit {
    let zero = b.ancilla(false);
    let split = b.place(
        BuiltinGate::Fredkin,
        "split",
        "detect_split",
        &[z[2].clone(), z[3].clone(), zero],
    );
    let (z2, u, x) = (&split[0], &split[1], &split[2]);

    let zero = b.ancilla(false);
    let and = b.place(
        BuiltinGate::Toffoli,
        "term",
        "detect_and",
        &[u.clone(), z[1].clone(), zero],
    );
    let (u, z1, y) = (&and[0], &and[1], &and[2]);

    let xor = b.place(
        BuiltinGate::Ts3,
        "xor3",
        "carry_xor3",
        &[x.clone(), y.clone(), k.to_string()],
    );
    let (x, y, t) = (&xor[0], &xor[1], &xor[2]);

    let zero = b.ancilla(false);
    let bit1 = b.place(
        BuiltinGate::NewGate,
        "cor1",
        "correct_bit1",
        &[t.clone(), z1.clone(), zero],
    );
    let (t, c2, s1) = (&bit1[0], &bit1[1], &bit1[2]);

    let zero = b.ancilla(false);
    let bit2 = b.place(
        BuiltinGate::Tsg,
        "cor2",
        "correct_bit2",
        &[t.clone(), z2.clone(), zero, c2.clone()],
    );
    let (t, t_xor_z2, s2, c3) = (&bit2[0], &bit2[1], &bit2[2], &bit2[3]);

    let bit3 = b.place(
        BuiltinGate::Ts3,
        "cor3",
        "correct_bit3",
        &[u.clone(), x.clone(), c3.clone()],
    );

    CorrectedDigit {
        sum: [z[0].clone(), s1.clone(), s2.clone(), bit3[2].clone()],
        cout: t.clone(),
        garbage: vec![
            y.clone(),
            t_xor_z2.clone(),
            bit3[0].clone(),
            bit3[1].clone(),
        ],
    }
}

/// A reversible single-digit BCD adder.
#[derive(Debug, Clone)]
pub struct ReversibleAdderBuild {
    pub netlist: Netlist,
    /// `s0..s3`, `cout` → position among the primary outputs.
    pub primary_output_map: BTreeMap<String, usize>,
    pub metrics: CostMetrics,
    pub figure_fidelity: FigureFidelity,
    /// Role name → gate indices, for auditing the inventory.
    pub roles: BTreeMap<String, Vec<usize>>,
    pub table1_target: Table1Row,
}

impl ReversibleAdderBuild {
    fn new(
        netlist: Netlist,
        roles: BTreeMap<String, Vec<usize>>,
        table1_target: Table1Row,
    ) -> Self {
        let primary_output_map = ["s0", "s1", "s2", "s3", "cout"]
            .iter()
            .enumerate()
            .map(|(i, n)| (n.to_string(), i))
            .collect();
        let metrics = metrics(&netlist);
        Self {
            netlist,
            primary_output_map,
            metrics,
            figure_fidelity: FigureFidelity::Reconstructed,
            roles,
            table1_target,
        }
    }

    /// Primary-input vector for `op`: `a0..a3, b0..b3, cin`.
    pub fn input_vector(op: &BcdOperands) -> BitVector {
        BitVector::from_u64(op.pattern() as u64, 9)
    }

    pub fn simulate(&self, op: &BcdOperands) -> BcdResult {
        let sim = simulate(&self.netlist, &Self::input_vector(op))
            .expect("adder netlists take 9 primary inputs");
        let bit = |name: &str| sim.primary_outputs.get(self.primary_output_map[name]);
        BcdResult {
            sum: (0..4).fold(0u8, |acc, j| acc | (bit(&format!("s{j}")) as u8) << j),
            cout: bit("cout"),
        }
    }

    pub fn gates_in_role(&self, role: &str) -> &[usize] {
        self.roles.get(role).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count_gate(&self, which: BuiltinGate) -> usize {
        self.netlist
            .gates()
            .iter()
            .filter(|g| g.gate.name() == which.name())
            .count()
    }
}

fn operand_inputs(b: &mut NetlistBuilder) -> ([String; 4], [String; 4], String) {
    let a = std::array::from_fn(|j| b.primary(&format!("a{j}")));
    let bb = std::array::from_fn(|j| b.primary(&format!("b{j}")));
    let cin = b.primary("cin");
    (a, bb, cin)
}

fn finish_adder(
    b: NetlistBuilder,
    name: &str,
    digit: CorrectedDigit,
    mut garbage: Vec<String>,
    target: Table1Row,
) -> ReversibleAdderBuild {
    garbage.extend(digit.garbage);
    let mut primary: Vec<String> = digit.sum.to_vec();
    primary.push(digit.cout);
    let (net, roles) = b
        .finish(name, &primary, &garbage)
        .expect("adder netlist satisfies the netlist invariants");
    ReversibleAdderBuild::new(net, roles, target)
}

pub fn build_conventional_reversible() -> ReversibleAdderBuild {
    build_conventional_reversible_with(&GateLibrary::builtin())
}

/// Ripple of four TSG full adders followed by the shared correction stage.
pub fn build_conventional_reversible_with(lib: &GateLibrary) -> ReversibleAdderBuild {
    let mut b = NetlistBuilder::new(lib);
    let (a, bb, cin) = operand_inputs(&mut b);
    let mut garbage = Vec::new();
    let mut carry = cin;
    let mut z: Vec<String> = Vec::new();
    for j in 0..4 {
        let (s, c, g) = tsg_full_adder(
            &mut b,
            &format!("fa{j}"),
            "ripple_fa",
            &a[j],
            &bb[j],
            &carry,
        );
        z.push(s);
        garbage.extend(g);
        carry = c;
    }
    let z: [String; 4] = z.try_into().expect("four sum bits");
    let digit = decimal_correction(&mut b, &carry, &z);
    finish_adder(b, "rev_conventional", digit, garbage, TABLE1_CONVENTIONAL)
}

pub fn build_carry_skip_reversible() -> ReversibleAdderBuild {
    build_carry_skip_reversible_with(&GateLibrary::builtin())
}

/// Four TSG full adders whose `a ⊕ b` garbage lines feed a Fredkin AND4;
/// a Fredkin mux passes `cin` when the block propagates, else `c4`.
/// A TS-3 copies `cin` ahead of the ripple so the skip input never waits on it.
pub fn build_carry_skip_reversible_with(lib: &GateLibrary) -> ReversibleAdderBuild {
    let mut b = NetlistBuilder::new(lib);
    let (a, bb, cin) = operand_inputs(&mut b);
    let mut garbage = Vec::new();

    let zeros = [b.ancilla(false), b.ancilla(false)];
    let copy = b.place(
        BuiltinGate::Ts3,
        "cincopy",
        "cin_copy",
        &[cin, zeros[0].clone(), zeros[1].clone()],
    );
    garbage.push(copy[1].clone());
    let (cin_ripple, cin_skip) = (copy[0].clone(), copy[2].clone());

    let mut carry = cin_ripple;
    let mut z = Vec::new();
    let mut propagate = Vec::new();
    for j in 0..4 {
        let (s, c, [pass, p]) = tsg_full_adder(
            &mut b,
            &format!("fa{j}"),
            "ripple_fa",
            &a[j],
            &bb[j],
            &carry,
        );
        z.push(s);
        garbage.push(pass);
        propagate.push(p);
        carry = c;
    }
    let z: [String; 4] = z.try_into().expect("four sum bits");

    let and4 = and4_subcircuit(
        &mut b,
        [&propagate[0], &propagate[1], &propagate[2], &propagate[3]],
    );
    garbage.extend(and4.garbage);
    let mux = skip_mux_subcircuit(&mut b, &and4.output, &cin_skip, &carry);
    garbage.push(mux.control);
    garbage.push(mux.unselected);

    let digit = decimal_correction(&mut b, &mux.selected, &z);
    finish_adder(b, "rev_carry_skip", digit, garbage, TABLE1_CARRY_SKIP)
}

/// Wires feeding the skip multiplexer's `cin` and `c4` ports.
pub fn skip_ports(build: &ReversibleAdderBuild) -> Option<(String, String)> {
    let &mux = build.gates_in_role("skip_mux").first()?;
    let inst = &build.netlist.gates()[mux];
    Some((inst.inputs[2].clone(), inst.inputs[1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{carry_skip_add, conventional_add, oracle};
    use crate::netlist::{check_injective, Injectivity};

    fn op(a: u8, b: u8, cin: u8) -> BcdOperands {
        BcdOperands::new(a, b, cin == 1).unwrap()
    }

    #[test]
    fn conventional_examples() {
        let build = build_conventional_reversible();
        assert_eq!(
            build.simulate(&op(5, 7, 0)),
            BcdResult { sum: 2, cout: true }
        );
        assert_eq!(
            build.simulate(&op(0, 0, 0)),
            BcdResult {
                sum: 0,
                cout: false
            }
        );
        assert_eq!(build.figure_fidelity, FigureFidelity::Reconstructed);
    }

    #[test]
    fn carry_skip_examples() {
        let build = build_carry_skip_reversible();
        assert_eq!(
            build.simulate(&op(9, 6, 1)),
            BcdResult { sum: 6, cout: true }
        );
        assert_eq!(
            build.simulate(&op(9, 9, 1)),
            BcdResult { sum: 9, cout: true }
        );
    }

    #[test]
    fn both_builds_match_classical_models() {
        let conv = build_conventional_reversible();
        let skip = build_carry_skip_reversible();
        for o in BcdOperands::all() {
            assert_eq!(conv.simulate(&o), conventional_add(&o).0, "{o}");
            assert_eq!(skip.simulate(&o), carry_skip_add(&o).0, "{o}");
            assert_eq!(skip.simulate(&o), oracle(&o), "{o}");
        }
    }

    #[test]
    fn measured_costs() {
        let conv = build_conventional_reversible();
        assert_eq!(
            (
                conv.metrics.gate_count,
                conv.metrics.garbage_count,
                conv.metrics.ancilla_count
            ),
            (10, 12, 8)
        );
        assert!(conv.metrics.gate_count < TABLE1_EXISTING.gates);
        let skip = build_carry_skip_reversible();
        assert_eq!(
            (
                skip.metrics.gate_count,
                skip.metrics.garbage_count,
                skip.metrics.ancilla_count
            ),
            (15, 17, 13)
        );
    }

    #[test]
    fn line_count_is_conserved() {
        for build in [
            build_conventional_reversible(),
            build_carry_skip_reversible(),
        ] {
            let m = build.metrics;
            assert_eq!(9 + m.ancilla_count, 5 + m.garbage_count);
            assert_eq!(build.netlist.primary_output_count(), 5);
        }
    }

    #[test]
    fn carry_skip_inventory() {
        let build = build_carry_skip_reversible();
        assert_eq!(build.gates_in_role("and4").len(), 3);
        assert_eq!(build.gates_in_role("skip_mux").len(), 1);
        for role in ["and4", "skip_mux"] {
            for &g in build.gates_in_role(role) {
                assert_eq!(build.netlist.gates()[g].gate.name(), "FREDKIN");
            }
        }
        assert!(build.count_gate(BuiltinGate::Tsg) >= 4);
        assert!(build.count_gate(BuiltinGate::Ts3) >= 1);
        let &xor = build.gates_in_role("carry_xor3").first().unwrap();
        assert_eq!(build.netlist.gates()[xor].gate.name(), "TS3");
    }

    #[test]
    fn skip_input_bypasses_ripple() {
        let build = build_carry_skip_reversible();
        let (cin_port, c4_port) = skip_ports(&build).unwrap();
        let cone = build.netlist.cone_of_influence(&cin_port).unwrap();
        for g in build.gates_in_role("ripple_fa") {
            assert!(!cone.contains(g));
        }
        let c4_cone = build.netlist.cone_of_influence(&c4_port).unwrap();
        assert!(build
            .gates_in_role("ripple_fa")
            .iter()
            .all(|g| c4_cone.contains(g)));
        assert!(build.netlist.wire_depth(&cin_port) < build.netlist.wire_depth(&c4_port));
    }

    #[test]
    fn builds_are_injective() {
        for build in [
            build_conventional_reversible(),
            build_carry_skip_reversible(),
        ] {
            assert_eq!(check_injective(&build.netlist).unwrap(), Injectivity::Pass);
        }
    }

    fn standalone<F>(inputs: &[&str], build: F) -> Netlist
    where
        F: FnOnce(&mut NetlistBuilder, &[String]) -> (Vec<String>, Vec<String>),
    {
        let lib = GateLibrary::builtin();
        let mut b = NetlistBuilder::new(&lib);
        let wires: Vec<String> = inputs.iter().map(|w| b.primary(w)).collect();
        let (primary, garbage) = build(&mut b, &wires);
        b.finish("fragment", &primary, &garbage).unwrap().0
    }

    #[test]
    fn skip_mux_truth_table() {
        let net = standalone(&["p", "cin", "c4"], |b, w| {
            let mux = skip_mux_subcircuit(b, &w[0], &w[1], &w[2]);
            (vec![mux.selected], vec![mux.control, mux.unselected])
        });
        assert_eq!(net.gates().len(), 1);
        for x in 0..8u64 {
            let (p, cin, c4) = (x & 1 == 1, x >> 1 & 1 == 1, x >> 2 & 1 == 1);
            let sim = simulate(&net, &BitVector::from_u64(x, 3)).unwrap();
            assert_eq!(
                sim.primary_outputs.get(0),
                if p { cin } else { c4 },
                "{x:03b}"
            );
        }
        // (p, cin, c4) = (1, 1, 0) -> 1 and (0, 1, 0) -> 0
        assert!(simulate(&net, &BitVector::from_u64(0b011, 3))
            .unwrap()
            .primary_outputs
            .get(0));
        assert!(!simulate(&net, &BitVector::from_u64(0b010, 3))
            .unwrap()
            .primary_outputs
            .get(0));
    }

    #[test]
    fn and4_truth_table() {
        let net = standalone(&["w0", "w1", "w2", "w3"], |b, w| {
            let and = and4_subcircuit(b, [&w[0], &w[1], &w[2], &w[3]]);
            (vec![and.output], and.garbage)
        });
        assert_eq!(net.gates().len(), 3);
        assert!(net.gates().iter().all(|g| g.gate.name() == "FREDKIN"));
        for x in 0..16u64 {
            let sim = simulate(&net, &BitVector::from_u64(x, 4)).unwrap();
            assert_eq!(sim.primary_outputs.get(0), x == 0b1111, "{x:04b}");
        }
        assert_eq!(check_injective(&net).unwrap(), Injectivity::Pass);
    }
}
