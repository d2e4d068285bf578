//! Reversible gates as explicit permutation tables.
//!
//! A `k`-line gate maps each of the `2^k` input patterns to a distinct output
//! pattern. Line `i` of a gate corresponds to bit `i` of a pattern, so line 0
//! is the least significant bit and also the top line when drawn.
//!
//! | gate       | lines (0..k)  | outputs                                              |
//! |------------|---------------|------------------------------------------------------|
//! | `FREDKIN`  | A, B, C       | A, A'B + AC, A'C + AB                                |
//! | `TOFFOLI`  | A, B, C       | A, B, AB ⊕ C                                         |
//! | `NEW_GATE` | A, B, C       | A, AB ⊕ C, A'C' ⊕ B'                                 |
//! | `TSG`      | A, B, C, D    | A, A'C' ⊕ B', (A'C' ⊕ B') ⊕ D, (A'C' ⊕ B')D ⊕ (AB ⊕ C) |
//! | `TS3`      | A, B, C       | A, B, A ⊕ B ⊕ C                                      |
//!
//! The `TSG` and `NEW_GATE` tables are built from the algebraic definitions
//! above and accepted only because they pass the bijectivity check and, for
//! `TSG`, the full-adder property. They can be replaced at runtime through a
//! [`GateLibrary`] override without touching any builder.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Widest gate the library accepts.
pub const MAX_GATE_WIDTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("gate width {0} outside 1..={MAX_GATE_WIDTH}")]
    InvalidWidth(usize),
    #[error("gate {name}: table has {actual} entries, expected {expected}")]
    TableLength {
        name: String,
        expected: usize,
        actual: usize,
    },
    #[error("gate {name}: pattern {pattern} does not fit in {width} lines")]
    PatternOutOfRange {
        name: String,
        pattern: u32,
        width: usize,
    },
    #[error("gate {name} is not reversible: output pattern {pattern} appears more than once")]
    NotBijective { name: String, pattern: u32 },
    #[error("width mismatch: gate has {expected} lines, input has {actual}")]
    WidthMismatch { expected: usize, actual: usize },
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("gate definition line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Fixed-width bit string, index 0 least significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Low `width` bits of `value`.
    pub fn from_u64(value: u64, width: usize) -> Self {
        Self {
            bits: (0..width)
                .map(|i| i < 64 && (value >> i) & 1 == 1)
                .collect(),
        }
    }

    /// `None` when the vector is wider than 64 bits and a high bit is set.
    pub fn to_u64(&self) -> Option<u64> {
        let mut value = 0u64;
        for (i, &bit) in self.bits.iter().enumerate() {
            if bit {
                if i >= 64 {
                    return None;
                }
                value |= 1 << i;
            }
        }
        Some(value)
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for BitVector {
    /// Most significant bit first, like a binary literal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in self.bits.iter().rev() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitVector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// A verified `k × k` reversible gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatePermutation {
    name: String,
    width: usize,
    table: Vec<u32>,
}

/// Validates `table` as a permutation of `[0, 2^width)` and wraps it as a gate.
pub fn make_gate(
    name: impl Into<String>,
    width: usize,
    table: Vec<u32>,
) -> Result<GatePermutation, GateError> {
    let name = name.into();
    if !(1..=MAX_GATE_WIDTH).contains(&width) {
        return Err(GateError::InvalidWidth(width));
    }
    let size = 1usize << width;
    if table.len() != size {
        return Err(GateError::TableLength {
            name,
            expected: size,
            actual: table.len(),
        });
    }
    let mut seen = vec![false; size];
    for &pattern in &table {
        let slot = seen
            .get_mut(pattern as usize)
            .ok_or_else(|| GateError::PatternOutOfRange {
                name: name.clone(),
                pattern,
                width,
            })?;
        if *slot {
            return Err(GateError::NotBijective { name, pattern });
        }
        *slot = true;
    }
    Ok(GatePermutation { name, width, table })
}

impl GatePermutation {
    /// Builds the table by evaluating `f` on every input pattern.
    pub fn from_fn(
        name: impl Into<String>,
        width: usize,
        f: impl Fn(u32) -> u32,
    ) -> Result<Self, GateError> {
        if !(1..=MAX_GATE_WIDTH).contains(&width) {
            return Err(GateError::InvalidWidth(width));
        }
        make_gate(name, width, (0..1u32 << width).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval_pattern(&self, input: u32) -> u32 {
        self.table[input as usize]
    }

    pub fn inverse(&self) -> GatePermutation {
        let mut table = vec![0; self.table.len()];
        for (input, &output) in self.table.iter().enumerate() {
            table[output as usize] = input as u32;
        }
        GatePermutation {
            name: format!("{}_INV", self.name),
            width: self.width,
            table,
        }
    }

    /// One definition line: `name width p0 p1 ... p(2^k-1)`.
    pub fn to_definition_line(&self) -> String {
        let mut line = format!("{} {}", self.name, self.width);
        for p in &self.table {
            line.push(' ');
            line.push_str(&p.to_string());
        }
        line
    }
}

/// Applies `gate` to `input`.
pub fn eval_gate(gate: &GatePermutation, input: &BitVector) -> Result<BitVector, GateError> {
    if input.width() != gate.width {
        return Err(GateError::WidthMismatch {
            expected: gate.width,
            actual: input.width(),
        });
    }
    let pattern = input.to_u64().expect("gate width is at most 8") as u32;
    Ok(BitVector::from_u64(
        gate.eval_pattern(pattern) as u64,
        gate.width,
    ))
}

/// Names of the gates every library provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinGate {
    Fredkin,
    Toffoli,
    NewGate,
    Tsg,
    Ts3,
}

impl BuiltinGate {
    pub const ALL: [BuiltinGate; 5] = [
        BuiltinGate::Fredkin,
        BuiltinGate::Toffoli,
        BuiltinGate::NewGate,
        BuiltinGate::Tsg,
        BuiltinGate::Ts3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGate::Fredkin => "FREDKIN",
            BuiltinGate::Toffoli => "TOFFOLI",
            BuiltinGate::NewGate => "NEW_GATE",
            BuiltinGate::Tsg => "TSG",
            BuiltinGate::Ts3 => "TS3",
        }
    }

    pub fn width(self) -> usize {
        match self {
            BuiltinGate::Tsg => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for BuiltinGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGate {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase();
        let normalized = match upper.as_str() {
            "NG" | "NEWGATE" => "NEW_GATE",
            "TS-3" => "TS3",
            other => other,
        };
        BuiltinGate::ALL
            .into_iter()
            .find(|g| g.name() == normalized)
            .ok_or_else(|| GateError::UnknownGate(s.to_string()))
    }
}

#[inline]
fn line(pattern: u32, i: u32) -> u32 {
    (pattern >> i) & 1
}

#[inline]
fn pack(lines: &[u32]) -> u32 {
    lines
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &bit)| acc | (bit & 1) << i)
}

fn fredkin(x: u32) -> u32 {
    let (a, b, c) = (line(x, 0), line(x, 1), line(x, 2));
    let (b_out, c_out) = if a == 1 { (c, b) } else { (b, c) };
    pack(&[a, b_out, c_out])
}

fn toffoli(x: u32) -> u32 {
    let (a, b, c) = (line(x, 0), line(x, 1), line(x, 2));
    pack(&[a, b, (a & b) ^ c])
}

fn new_gate(x: u32) -> u32 {
    let (a, b, c) = (line(x, 0), line(x, 1), line(x, 2));
    pack(&[a, (a & b) ^ c, ((a ^ 1) & (c ^ 1)) ^ (b ^ 1)])
}

fn tsg(x: u32) -> u32 {
    let (a, b, c, d) = (line(x, 0), line(x, 1), line(x, 2), line(x, 3));
    let q = ((a ^ 1) & (c ^ 1)) ^ (b ^ 1);
    pack(&[a, q, q ^ d, (q & d) ^ ((a & b) ^ c)])
}

fn ts3(x: u32) -> u32 {
    let (a, b, c) = (line(x, 0), line(x, 1), line(x, 2));
    pack(&[a, b, a ^ b ^ c])
}

/// Built-in definition of `which`.
pub fn builtin(which: BuiltinGate) -> GatePermutation {
    let f: fn(u32) -> u32 = match which {
        BuiltinGate::Fredkin => fredkin,
        BuiltinGate::Toffoli => toffoli,
        BuiltinGate::NewGate => new_gate,
        BuiltinGate::Tsg => tsg,
        BuiltinGate::Ts3 => ts3,
    };
    GatePermutation::from_fn(which.name(), which.width(), f)
        .expect("built-in gate tables are bijective")
}

/// Looks up a built-in gate by name (`FREDKIN`, `TOFFOLI`, `NEW_GATE`, `TSG`, `TS3`).
pub fn builtin_by_name(name: &str) -> Result<GatePermutation, GateError> {
    Ok(builtin(name.parse()?))
}

/// Outputs of the single-gate TSG full adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FullAdderOutputs {
    pub sum: bool,
    pub cout: bool,
    pub garbage: [bool; 2],
}

/// One TSG applied as a full adder: `(A, B, C, D) = (a, b, 0, cin)`.
///
/// Outputs `R` and `S` carry the sum and carry; `P` (= a) and `Q` (= a ⊕ b)
/// are the two garbage lines.
pub fn tsg_full_adder_wiring(
    gate: &GatePermutation,
    a: bool,
    b: bool,
    cin: bool,
) -> FullAdderOutputs {
    let input = pack(&[a as u32, b as u32, 0, cin as u32]);
    let out = gate.eval_pattern(input);
    FullAdderOutputs {
        sum: line(out, 2) == 1,
        cout: line(out, 3) == 1,
        garbage: [line(out, 0) == 1, line(out, 1) == 1],
    }
}

/// A named set of gates available to netlist builders.
///
/// Starts from the built-ins; any built-in may be replaced by a re-transcribed
/// table, which then flows into every netlist built from the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateLibrary {
    gates: BTreeMap<String, Arc<GatePermutation>>,
}

impl Default for GateLibrary {
    fn default() -> Self {
        Self::builtin()
    }
}

impl GateLibrary {
    pub fn builtin() -> Self {
        let gates = BuiltinGate::ALL
            .into_iter()
            .map(|g| (g.name().to_string(), Arc::new(builtin(g))))
            .collect();
        Self { gates }
    }

    pub fn get(&self, name: &str) -> Result<Arc<GatePermutation>, GateError> {
        self.gates
            .get(name)
            .cloned()
            .ok_or_else(|| GateError::UnknownGate(name.to_string()))
    }

    pub fn gate(&self, which: BuiltinGate) -> Arc<GatePermutation> {
        self.gates[which.name()].clone()
    }

    /// Replaces a built-in definition. The replacement must keep the width.
    pub fn override_gate(&mut self, gate: GatePermutation) -> Result<(), GateError> {
        let current = self.get(gate.name())?;
        if current.width() != gate.width() {
            return Err(GateError::WidthMismatch {
                expected: current.width(),
                actual: gate.width(),
            });
        }
        self.gates.insert(gate.name().to_string(), Arc::new(gate));
        Ok(())
    }

    /// Applies every definition in `text` (see [`parse_gate_definitions`]).
    pub fn apply_definitions(&mut self, text: &str) -> Result<(), GateError> {
        for gate in parse_gate_definitions(text)? {
            self.override_gate(gate)?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<GatePermutation>> {
        self.gates.values()
    }
}

/// Parses `name width p0 ... p(2^k-1)` lines. Blank lines and `#` comments are skipped.
pub fn parse_gate_definitions(text: &str) -> Result<Vec<GatePermutation>, GateError> {
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |message: String| GateError::Parse {
            line: line_no,
            message,
        };
        let mut fields = content.split_whitespace();
        let name = fields.next().expect("non-empty line has a first field");
        let width: usize = fields
            .next()
            .ok_or_else(|| parse_err("missing width".into()))?
            .parse()
            .map_err(|e| parse_err(format!("bad width: {e}")))?;
        let table = fields
            .map(|f| {
                f.parse::<u32>()
                    .map_err(|e| parse_err(format!("bad pattern {f:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        gates.push(make_gate(name, width, table)?);
    }
    Ok(gates)
}

/// Inverse of [`parse_gate_definitions`].
pub fn dump_gate_definitions<'a>(gates: impl IntoIterator<Item = &'a GatePermutation>) -> String {
    let mut out = String::new();
    for gate in gates {
        out.push_str(&gate.to_definition_line());
        out.push('\n');
    }
    out
}
