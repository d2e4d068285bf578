//! NETLIST_JSON and DOT serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    CircuitInput, CircuitOutput, GateInstance, InputRole, Malformed, Netlist, NetlistError,
    OutputRole, Sink, Source,
};
use crate::gate::make_gate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    NetlistJson,
    Dot,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetlistDoc {
    name: String,
    inputs: Vec<InputDoc>,
    outputs: Vec<OutputDoc>,
    gates: Vec<GateDoc>,
    gate_defs: Vec<GateDefDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    wire: String,
    role: InputRoleDoc,
    #[serde(rename = "const", default, skip_serializing_if = "Option::is_none")]
    constant: Option<u8>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
enum InputRoleDoc {
    #[serde(rename = "PRIMARY_INPUT")]
    PrimaryInput,
    #[serde(rename = "ANCILLA")]
    Ancilla,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputDoc {
    wire: String,
    role: OutputRoleDoc,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
enum OutputRoleDoc {
    #[serde(rename = "PRIMARY_OUTPUT")]
    PrimaryOutput,
    #[serde(rename = "GARBAGE")]
    Garbage,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    gate_name: String,
    #[serde(rename = "in")]
    inputs: Vec<String>,
    #[serde(rename = "out")]
    outputs: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDefDoc {
    name: String,
    width: usize,
    table: Vec<u32>,
}

fn to_doc(net: &Netlist) -> NetlistDoc {
    let mut defs = BTreeMap::new();
    for inst in &net.gates {
        defs.entry(inst.gate.name().to_string())
            .or_insert_with(|| inst.gate.clone());
    }
    NetlistDoc {
        name: net.name.clone(),
        inputs: net
            .inputs
            .iter()
            .map(|i| match i.role {
                InputRole::PrimaryInput => InputDoc {
                    wire: i.wire.clone(),
                    role: InputRoleDoc::PrimaryInput,
                    constant: None,
                },
                InputRole::Ancilla(bit) => InputDoc {
                    wire: i.wire.clone(),
                    role: InputRoleDoc::Ancilla,
                    constant: Some(bit as u8),
                },
            })
            .collect(),
        outputs: net
            .outputs
            .iter()
            .map(|o| OutputDoc {
                wire: o.wire.clone(),
                role: match o.role {
                    OutputRole::PrimaryOutput => OutputRoleDoc::PrimaryOutput,
                    OutputRole::Garbage => OutputRoleDoc::Garbage,
                },
            })
            .collect(),
        gates: net
            .gates
            .iter()
            .map(|g| GateDoc {
                gate_name: g.gate.name().to_string(),
                inputs: g.inputs.clone(),
                outputs: g.outputs.clone(),
            })
            .collect(),
        gate_defs: defs
            .values()
            .map(|g| GateDefDoc {
                name: g.name().to_string(),
                width: g.width(),
                table: g.table().to_vec(),
            })
            .collect(),
    }
}

fn from_doc(doc: NetlistDoc) -> Result<Netlist, NetlistError> {
    let mut defs = BTreeMap::new();
    for def in doc.gate_defs {
        let gate = make_gate(def.name, def.width, def.table)?;
        defs.insert(gate.name().to_string(), Arc::new(gate));
    }
    let inputs = doc
        .inputs
        .into_iter()
        .map(|i| {
            let role = match (i.role, i.constant) {
                (InputRoleDoc::PrimaryInput, None) => InputRole::PrimaryInput,
                (InputRoleDoc::Ancilla, Some(0)) => InputRole::Ancilla(false),
                (InputRoleDoc::Ancilla, Some(1)) => InputRole::Ancilla(true),
                (InputRoleDoc::Ancilla, other) => {
                    return Err(NetlistError::Parse(format!(
                        "ancilla {:?} needs const 0 or 1, got {other:?}",
                        i.wire
                    )))
                }
                (InputRoleDoc::PrimaryInput, Some(_)) => {
                    return Err(NetlistError::Parse(format!(
                        "primary input {:?} cannot carry a constant",
                        i.wire
                    )))
                }
            };
            Ok(CircuitInput { wire: i.wire, role })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let outputs = doc
        .outputs
        .into_iter()
        .map(|o| CircuitOutput {
            wire: o.wire,
            role: match o.role {
                OutputRoleDoc::PrimaryOutput => OutputRole::PrimaryOutput,
                OutputRoleDoc::Garbage => OutputRole::Garbage,
            },
        })
        .collect();
    let gates = doc
        .gates
        .into_iter()
        .map(|g| {
            let gate = defs
                .get(&g.gate_name)
                .cloned()
                .ok_or(Malformed::UnknownGate(g.gate_name))?;
            Ok(GateInstance::new(gate, g.inputs, g.outputs))
        })
        .collect::<Result<Vec<_>, NetlistError>>()?;
    Netlist::new(doc.name, inputs, outputs, gates)
}

/// Renders `net` in the requested format. Output is deterministic.
pub fn export(net: &Netlist, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::NetlistJson => {
            let mut bytes =
                serde_json::to_vec_pretty(&to_doc(net)).expect("netlist document serializes");
            bytes.push(b'\n');
            bytes
        }
        ExportFormat::Dot => to_dot(net).into_bytes(),
    }
}

/// Parses NETLIST_JSON and re-validates every netlist invariant.
pub fn import(bytes: &[u8]) -> Result<Netlist, NetlistError> {
    let doc: NetlistDoc =
        serde_json::from_slice(bytes).map_err(|e| NetlistError::Parse(e.to_string()))?;
    from_doc(doc)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn to_dot(net: &Netlist) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(&net.name));
    out.push_str("  rankdir=LR;\n");
    for (i, input) in net.inputs.iter().enumerate() {
        let (label, style) = match input.role {
            InputRole::PrimaryInput => (
                format!("{}\\nPRIMARY_INPUT", dot_escape(&input.wire)),
                "solid",
            ),
            InputRole::Ancilla(bit) => (
                format!("{} = {}\\nANCILLA", dot_escape(&input.wire), bit as u8),
                "dashed",
            ),
        };
        let _ = writeln!(
            out,
            "  in{i} [shape=box, style={style}, label=\"{label}\"];"
        );
    }
    for (g, inst) in net.gates.iter().enumerate() {
        let _ = writeln!(
            out,
            "  g{g} [shape=record, label=\"{} #{g}\"];",
            dot_escape(inst.gate.name())
        );
    }
    for (o, output) in net.outputs.iter().enumerate() {
        let (role, style) = match output.role {
            OutputRole::PrimaryOutput => ("PRIMARY_OUTPUT", "solid"),
            OutputRole::Garbage => ("GARBAGE", "dotted"),
        };
        let _ = writeln!(
            out,
            "  out{o} [shape=box, style={style}, label=\"{}\\n{role}\"];",
            dot_escape(&output.wire)
        );
    }
    for wire in net.wires() {
        let from = match net.source(wire).expect("wire is driven") {
            Source::Input(i) => format!("in{i}"),
            Source::Gate { index, .. } => format!("g{index}"),
        };
        for sink in net.sinks(wire).expect("wire exists") {
            let to = match sink {
                Sink::Gate { index, .. } => format!("g{index}"),
                Sink::Output(o) => format!("out{o}"),
            };
            let _ = writeln!(out, "  {from} -> {to} [label=\"{}\"];", dot_escape(wire));
        }
    }
    out.push_str("}\n");
    out
}
