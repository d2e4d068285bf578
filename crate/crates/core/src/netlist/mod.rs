//! Reversible netlists: structure, validation, simulation and cost metrics.
//!
//! A [`Netlist`] is a DAG of [`GateInstance`]s connected by named wires. Every
//! wire has exactly one source (a circuit input or a gate output) and, in a
//! checked netlist, exactly one sink (a gate input or a circuit output). The
//! second rule is the reversible fan-out restriction: copying a signal takes
//! an explicit gate.

mod io;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gate::{BitVector, GateError, GatePermutation};

pub use io::{export, import, ExportFormat};

/// Inputs of a netlist with more primary inputs than this are not enumerated.
pub const MAX_ENUMERATED_INPUTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputRole {
    PrimaryInput,
    /// Constant line fixed to the given bit.
    Ancilla(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputRole {
    PrimaryOutput,
    Garbage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitInput {
    pub wire: String,
    pub role: InputRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitOutput {
    pub wire: String,
    pub role: OutputRole,
}

/// One gate placed in a netlist. Line `i` of the gate reads `inputs[i]` and
/// drives `outputs[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInstance {
    pub gate: Arc<GatePermutation>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl GateInstance {
    pub fn new(gate: Arc<GatePermutation>, inputs: Vec<String>, outputs: Vec<String>) -> Self {
        Self {
            gate,
            inputs,
            outputs,
        }
    }
}

/// Structural problems that make a netlist invalid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Malformed {
    #[error("gate #{index} ({gate}) has {inputs} inputs and {outputs} outputs, expected {width}")]
    GateArity {
        index: usize,
        gate: String,
        width: usize,
        inputs: usize,
        outputs: usize,
    },
    #[error("gate #{index} uses wire {wire:?} more than once")]
    RepeatedWire { index: usize, wire: String },
    #[error("wire {0:?} has more than one driver")]
    MultipleDrivers(String),
    #[error("wire {0:?} is read but never driven")]
    Undriven(String),
    #[error("wire {0:?} fans out to more than one sink")]
    FanOut(String),
    #[error("wire {0:?} is driven but neither consumed nor declared as an output")]
    Dangling(String),
    #[error("gate graph contains a cycle")]
    Cycle,
    #[error("gate {0:?} has no definition")]
    UnknownGate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("malformed netlist: {0}")]
    Malformed(#[from] Malformed),
    #[error("expected {expected} primary input bits, got {actual}")]
    InputWidth { expected: usize, actual: usize },
    #[error("{0} primary inputs exceed the enumeration bound of {MAX_ENUMERATED_INPUTS}")]
    TooManyInputs(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// Gate count, garbage, ancilla and depth of a netlist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CostMetrics {
    pub gate_count: usize,
    pub garbage_count: usize,
    pub ancilla_count: usize,
    /// Gate instances on the longest input-to-output path.
    pub depth: usize,
}

impl fmt::Display for CostMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gates={} garbage={} ancilla={} depth={}",
            self.gate_count, self.garbage_count, self.ancilla_count, self.depth
        )
    }
}

/// Where a wire gets its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Input(usize),
    Gate { index: usize, line: usize },
}

/// Where a wire's value goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sink {
    Gate { index: usize, line: usize },
    Output(usize),
}

/// Wire indices and evaluation order, derived once at construction.
#[derive(Debug, Clone)]
struct Compiled {
    wire_names: Vec<String>,
    wire_ids: HashMap<String, usize>,
    sources: Vec<Source>,
    sinks: Vec<Vec<Sink>>,
    gate_inputs: Vec<Vec<usize>>,
    gate_outputs: Vec<Vec<usize>>,
    input_ids: Vec<usize>,
    output_ids: Vec<usize>,
    order: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Netlist {
    name: String,
    inputs: Vec<CircuitInput>,
    outputs: Vec<CircuitOutput>,
    gates: Vec<GateInstance>,
    compiled: Compiled,
}

impl PartialEq for Netlist {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.inputs == other.inputs
            && self.outputs == other.outputs
            && self.gates == other.gates
    }
}

impl Eq for Netlist {}

impl Netlist {
    /// Builds and fully validates a reversible netlist.
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<CircuitInput>,
        outputs: Vec<CircuitOutput>,
        gates: Vec<GateInstance>,
    ) -> Result<Self, NetlistError> {
        Self::build(name.into(), inputs, outputs, gates, true)
    }

    /// Like [`Netlist::new`] but skips the fan-out and dangling-wire checks.
    ///
    /// The result can still be simulated (every read wire is driven and the
    /// graph is acyclic) but need not be reversible; it exists so that
    /// [`check_injective`] can be exercised on information-losing circuits.
    pub fn new_unchecked(
        name: impl Into<String>,
        inputs: Vec<CircuitInput>,
        outputs: Vec<CircuitOutput>,
        gates: Vec<GateInstance>,
    ) -> Result<Self, NetlistError> {
        Self::build(name.into(), inputs, outputs, gates, false)
    }

    fn build(
        name: String,
        inputs: Vec<CircuitInput>,
        outputs: Vec<CircuitOutput>,
        gates: Vec<GateInstance>,
        strict: bool,
    ) -> Result<Self, NetlistError> {
        let mut wire_names = Vec::new();
        let mut wire_ids: HashMap<String, usize> = HashMap::new();
        let mut sources: Vec<Source> = Vec::new();

        let mut drive = |wire: &str, source: Source| -> Result<usize, Malformed> {
            if wire_ids.contains_key(wire) {
                return Err(Malformed::MultipleDrivers(wire.to_string()));
            }
            let id = wire_names.len();
            wire_names.push(wire.to_string());
            wire_ids.insert(wire.to_string(), id);
            sources.push(source);
            Ok(id)
        };

        let mut input_ids = Vec::with_capacity(inputs.len());
        for (i, input) in inputs.iter().enumerate() {
            input_ids.push(drive(&input.wire, Source::Input(i))?);
        }

        let mut gate_outputs = Vec::with_capacity(gates.len());
        for (index, inst) in gates.iter().enumerate() {
            let width = inst.gate.width();
            if inst.inputs.len() != width || inst.outputs.len() != width {
                return Err(Malformed::GateArity {
                    index,
                    gate: inst.gate.name().to_string(),
                    width,
                    inputs: inst.inputs.len(),
                    outputs: inst.outputs.len(),
                }
                .into());
            }
            let mut seen = HashSet::new();
            for wire in inst.inputs.iter().chain(&inst.outputs) {
                if !seen.insert(wire.as_str()) {
                    return Err(Malformed::RepeatedWire {
                        index,
                        wire: wire.clone(),
                    }
                    .into());
                }
            }
            let ids = inst
                .outputs
                .iter()
                .enumerate()
                .map(|(line, wire)| drive(wire, Source::Gate { index, line }))
                .collect::<Result<Vec<_>, _>>()?;
            gate_outputs.push(ids);
        }

        let lookup = |wire: &str| -> Result<usize, Malformed> {
            wire_ids
                .get(wire)
                .copied()
                .ok_or_else(|| Malformed::Undriven(wire.to_string()))
        };

        let mut sinks: Vec<Vec<Sink>> = vec![Vec::new(); wire_names.len()];
        let mut gate_inputs = Vec::with_capacity(gates.len());
        for (index, inst) in gates.iter().enumerate() {
            let mut ids = Vec::with_capacity(inst.inputs.len());
            for (line, wire) in inst.inputs.iter().enumerate() {
                let id = lookup(wire)?;
                sinks[id].push(Sink::Gate { index, line });
                ids.push(id);
            }
            gate_inputs.push(ids);
        }
        let mut output_ids = Vec::with_capacity(outputs.len());
        for (i, output) in outputs.iter().enumerate() {
            let id = lookup(&output.wire)?;
            sinks[id].push(Sink::Output(i));
            output_ids.push(id);
        }

        if strict {
            for (id, wire_sinks) in sinks.iter().enumerate() {
                match wire_sinks.len() {
                    0 => return Err(Malformed::Dangling(wire_names[id].clone()).into()),
                    1 => {}
                    _ => return Err(Malformed::FanOut(wire_names[id].clone()).into()),
                }
            }
        }

        // Kahn's algorithm; ties resolved by gate index so the order is stable.
        let mut pending: Vec<usize> = vec![0; gates.len()];
        let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); gates.len()];
        for (index, ids) in gate_inputs.iter().enumerate() {
            for &id in ids {
                if let Source::Gate {
                    index: producer, ..
                } = sources[id]
                {
                    pending[index] += 1;
                    dependents[producer].push(index);
                }
            }
        }
        let mut ready: VecDeque<usize> = (0..gates.len()).filter(|&g| pending[g] == 0).collect();
        let mut order = Vec::with_capacity(gates.len());
        while let Some(g) = ready.pop_front() {
            order.push(g);
            for &d in &dependents[g] {
                pending[d] -= 1;
                if pending[d] == 0 {
                    ready.push_back(d);
                }
            }
        }
        if order.len() != gates.len() {
            return Err(Malformed::Cycle.into());
        }

        Ok(Self {
            name,
            inputs,
            outputs,
            gates,
            compiled: Compiled {
                wire_names,
                wire_ids,
                sources,
                sinks,
                gate_inputs,
                gate_outputs,
                input_ids,
                output_ids,
                order,
            },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &[CircuitInput] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[CircuitOutput] {
        &self.outputs
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    /// All wire names, circuit inputs first, then gate outputs in list order.
    pub fn wires(&self) -> &[String] {
        &self.compiled.wire_names
    }

    /// Gate indices in evaluation order.
    pub fn topological_order(&self) -> &[usize] {
        &self.compiled.order
    }

    pub fn primary_input_count(&self) -> usize {
        self.inputs
            .iter()
            .filter(|i| i.role == InputRole::PrimaryInput)
            .count()
    }

    pub fn primary_output_count(&self) -> usize {
        self.outputs
            .iter()
            .filter(|o| o.role == OutputRole::PrimaryOutput)
            .count()
    }

    pub fn source(&self, wire: &str) -> Option<Source> {
        let id = *self.compiled.wire_ids.get(wire)?;
        Some(self.compiled.sources[id])
    }

    pub fn sinks(&self, wire: &str) -> Option<&[Sink]> {
        let id = *self.compiled.wire_ids.get(wire)?;
        Some(&self.compiled.sinks[id])
    }

    /// Gate instances whose outputs can influence `wire`.
    pub fn cone_of_influence(&self, wire: &str) -> Option<BTreeSet<usize>> {
        let start = *self.compiled.wire_ids.get(wire)?;
        let mut cone = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            if let Source::Gate { index, .. } = self.compiled.sources[id] {
                if cone.insert(index) {
                    stack.extend(&self.compiled.gate_inputs[index]);
                }
            }
        }
        Some(cone)
    }

    fn gate_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.gates.len()];
        for &g in &self.compiled.order {
            let deepest_input = self.compiled.gate_inputs[g]
                .iter()
                .map(|&id| match self.compiled.sources[id] {
                    Source::Gate { index, .. } => depth[index],
                    Source::Input(_) => 0,
                })
                .max()
                .unwrap_or(0);
            depth[g] = deepest_input + 1;
        }
        depth
    }

    /// Gates on the longest path from a circuit input to `wire`.
    pub fn wire_depth(&self, wire: &str) -> Option<usize> {
        let id = *self.compiled.wire_ids.get(wire)?;
        Some(match self.compiled.sources[id] {
            Source::Input(_) => 0,
            Source::Gate { index, .. } => self.gate_depths()[index],
        })
    }

    /// Values of every wire for one primary-input assignment, indexed like [`Netlist::wires`].
    pub fn wire_values(&self, primary_inputs: &BitVector) -> Result<Vec<bool>, NetlistError> {
        let expected = self.primary_input_count();
        if primary_inputs.width() != expected {
            return Err(NetlistError::InputWidth {
                expected,
                actual: primary_inputs.width(),
            });
        }
        let c = &self.compiled;
        let mut values = vec![false; c.wire_names.len()];
        let mut next_primary = primary_inputs.bits().iter();
        for (input, &id) in self.inputs.iter().zip(&c.input_ids) {
            values[id] = match input.role {
                InputRole::PrimaryInput => *next_primary.next().expect("width checked"),
                InputRole::Ancilla(bit) => bit,
            };
        }
        for &g in &c.order {
            let pattern = c.gate_inputs[g]
                .iter()
                .enumerate()
                .fold(0u32, |acc, (line, &id)| acc | (values[id] as u32) << line);
            let out = self.gates[g].gate.eval_pattern(pattern);
            for (line, &id) in c.gate_outputs[g].iter().enumerate() {
                values[id] = (out >> line) & 1 == 1;
            }
        }
        Ok(values)
    }
}

/// Result of one simulation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    /// `PRIMARY_OUTPUT` wires in declaration order.
    pub primary_outputs: BitVector,
    /// Every output (primary and garbage) in declaration order.
    pub all_outputs: BitVector,
}

/// Evaluates `net` with ancilla lines at their constants.
pub fn simulate(net: &Netlist, primary_inputs: &BitVector) -> Result<Simulation, NetlistError> {
    let values = net.wire_values(primary_inputs)?;
    let mut primary = Vec::new();
    let mut all = Vec::with_capacity(net.outputs.len());
    for (output, &id) in net.outputs.iter().zip(&net.compiled.output_ids) {
        let v = values[id];
        all.push(v);
        if output.role == OutputRole::PrimaryOutput {
            primary.push(v);
        }
    }
    Ok(Simulation {
        primary_outputs: BitVector::new(primary),
        all_outputs: BitVector::new(all),
    })
}

pub fn metrics(net: &Netlist) -> CostMetrics {
    CostMetrics {
        gate_count: net.gates.len(),
        garbage_count: net
            .outputs
            .iter()
            .filter(|o| o.role == OutputRole::Garbage)
            .count(),
        ancilla_count: net
            .inputs
            .iter()
            .filter(|i| matches!(i.role, InputRole::Ancilla(_)))
            .count(),
        depth: net.gate_depths().into_iter().max().unwrap_or(0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injectivity {
    Pass,
    /// Two distinct primary-input vectors with identical full output vectors.
    Counterexample(BitVector, BitVector),
}

/// Exhaustively checks that distinct primary inputs give distinct full outputs.
pub fn check_injective(net: &Netlist) -> Result<Injectivity, NetlistError> {
    let n = net.primary_input_count();
    if n > MAX_ENUMERATED_INPUTS {
        return Err(NetlistError::TooManyInputs(n));
    }
    let mut seen: HashMap<BitVector, u64> = HashMap::with_capacity(1 << n);
    for pattern in 0..1u64 << n {
        let sim = simulate(net, &BitVector::from_u64(pattern, n))?;
        if let Some(&earlier) = seen.get(&sim.all_outputs) {
            return Ok(Injectivity::Counterexample(
                BitVector::from_u64(earlier, n),
                BitVector::from_u64(pattern, n),
            ));
        }
        seen.insert(sim.all_outputs, pattern);
    }
    Ok(Injectivity::Pass)
}
