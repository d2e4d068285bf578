//! Boolean reference models of the BCD adders and the decimal oracle.
//!
//! These are plain evaluators with unrestricted fan-out. Bit `j` of a digit is
//! `(digit >> j) & 1`; multi-digit sequences are little-endian.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::sop::{minimize, Row, Sop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BcdError {
    #[error("invalid BCD digit {0} (must be 0-9)")]
    InvalidBcd(u8),
    #[error("digit sequences differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
}

/// A decimal digit 0-9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BcdDigit(u8);

impl BcdDigit {
    pub fn new(value: u8) -> Result<Self, BcdError> {
        if value <= 9 {
            Ok(Self(value))
        } else {
            Err(BcdError::InvalidBcd(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn bit(self, j: usize) -> bool {
        bit(self.0, j)
    }
}

impl TryFrom<u8> for BcdDigit {
    type Error = BcdError;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl fmt::Display for BcdDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
fn bit(x: u8, j: usize) -> bool {
    (x >> j) & 1 == 1
}

fn nibble(bits: [bool; 4]) -> u8 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (j, &b)| acc | (b as u8) << j)
}

/// One digit pair plus carry-in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BcdOperands {
    pub a: BcdDigit,
    pub b: BcdDigit,
    pub cin: bool,
}

impl BcdOperands {
    pub fn new(a: u8, b: u8, cin: bool) -> Result<Self, BcdError> {
        Ok(Self {
            a: BcdDigit::new(a)?,
            b: BcdDigit::new(b)?,
            cin,
        })
    }

    /// The 200 valid single-digit cases, ordered by (a, b, cin).
    pub fn all() -> impl Iterator<Item = BcdOperands> {
        (0..10u8).flat_map(|a| {
            (0..10u8).flat_map(move |b| {
                [false, true]
                    .into_iter()
                    .map(move |cin| BcdOperands::new(a, b, cin).expect("digits below 10"))
            })
        })
    }

    /// Packs the operands as `a | b << 4 | cin << 8`, the row index used by
    /// the 512-row truth tables.
    pub fn pattern(&self) -> u32 {
        self.a.0 as u32 | (self.b.0 as u32) << 4 | (self.cin as u32) << 8
    }

    pub fn total(&self) -> u8 {
        self.a.0 + self.b.0 + self.cin as u8
    }
}

impl fmt::Display for BcdOperands {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} cin={}", self.a, self.b, self.cin as u8)
    }
}

/// A sum nibble and carry. `sum` is a raw 4-bit value so that faulty
/// equations producing 10-15 can still be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BcdResult {
    pub sum: u8,
    pub cout: bool,
}

impl BcdResult {
    pub fn decimal_value(&self) -> u32 {
        10 * self.cout as u32 + self.sum as u32
    }
}

impl fmt::Display for BcdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum={} cout={}", self.sum, self.cout as u8)
    }
}

/// Plain integer reference: digit `(a+b+cin) mod 10`, carry `(a+b+cin) >= 10`.
pub fn oracle(op: &BcdOperands) -> BcdResult {
    let total = op.total();
    BcdResult {
        sum: total % 10,
        cout: total >= 10,
    }
}

fn full_add(a: bool, b: bool, c: bool) -> (bool, bool) {
    (a ^ b ^ c, (a & b) | (c & (a ^ b)))
}

/// 4-bit ripple adder; returns the sum nibble and the carry out of each stage.
fn ripple4(a: u8, b: u8, cin: bool) -> (u8, [bool; 4]) {
    let mut carry = cin;
    let mut sum = [false; 4];
    let mut carries = [false; 4];
    for j in 0..4 {
        let (s, c) = full_add(bit(a, j), bit(b, j), carry);
        sum[j] = s;
        carries[j] = c;
        carry = c;
    }
    (nibble(sum), carries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConventionalTrace {
    /// Binary sum from the top adder.
    pub z: u8,
    /// Carry out of the top adder.
    pub k: bool,
    /// Correction trigger, also the decimal carry out.
    pub correct: bool,
}

impl fmt::Display for ConventionalTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "z={:04b} k={} correct={}",
            self.z, self.k as u8, self.correct as u8
        )
    }
}

/// Two 4-bit adders with add-6 correction.
pub fn conventional_add(op: &BcdOperands) -> (BcdResult, ConventionalTrace) {
    let (z, carries) = ripple4(op.a.0, op.b.0, op.cin);
    let k = carries[3];
    let correct = k | (bit(z, 3) & bit(z, 2)) | (bit(z, 3) & bit(z, 1));
    let addend = if correct { 0b0110 } else { 0 };
    // carry out of the bottom adder is dropped
    let (sum, _) = ripple4(z, addend, false);
    (
        BcdResult { sum, cout: correct },
        ConventionalTrace { z, k, correct },
    )
}

/// Look-ahead intermediate signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaSignals {
    pub g: u8,
    pub p: u8,
    pub h: u8,
    pub m: bool,
    pub n: bool,
    /// Carry out of the 1's position.
    pub c1: bool,
}

impl fmt::Display for ClaSignals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={:04b} p={:04b} h={:04b} m={} n={} c1={}",
            self.g, self.p, self.h, self.m as u8, self.n as u8, self.c1 as u8
        )
    }
}

fn signals_from_bits(a: u8, b: u8, cin: bool) -> ClaSignals {
    let g = a & b;
    let p = a | b;
    let h = a ^ b;
    let (g0, g1, g2, g3) = (bit(g, 0), bit(g, 1), bit(g, 2), bit(g, 3));
    let (p0, p1, p2, p3) = (bit(p, 0), bit(p, 1), bit(p, 2), bit(p, 3));
    let m = g3 ^ (p3 & p2) ^ (p3 & p1) ^ (g2 & p1);
    let n = p3 ^ g2 ^ (p2 & g1);
    let c1 = g0 | (p0 & cin);
    ClaSignals { g, p, h, m, n, c1 }
}

pub fn cla_signals(op: &BcdOperands) -> ClaSignals {
    signals_from_bits(op.a.0, op.b.0, op.cin)
}

/// The five printed look-ahead output equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaEquation {
    S0,
    S1,
    S2,
    S3,
    Cout,
}

impl ClaEquation {
    pub const ALL: [ClaEquation; 5] = [
        ClaEquation::S0,
        ClaEquation::S1,
        ClaEquation::S2,
        ClaEquation::S3,
        ClaEquation::Cout,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClaEquation::S0 => "S0_VERBATIM",
            ClaEquation::S1 => "S1_VERBATIM",
            ClaEquation::S2 => "S2_VERBATIM",
            ClaEquation::S3 => "S3_VERBATIM",
            ClaEquation::Cout => "COUT_VERBATIM",
        }
    }

    /// The equation as printed, in the `·` / `+` / `⊕` / `~` notation.
    pub fn text(self) -> &'static str {
        match self {
            ClaEquation::S0 => "S[0] = h[0] ⊕ Cin",
            ClaEquation::S1 => "S[1] = ((h[1] ⊕ m) · C1) + (~(h[1] ⊕ n) · C1)",
            ClaEquation::S2 => {
                "S[2] = (~p[2] · g[1]) ⊕ (~p[3] · h[2] · ~p[1]) ⊕ ((g[3] ⊕ (h[2] · h[1])) · ~C1) \
                 ⊕ (((~p[3] · ~p[2] · p[1]) ⊕ (g[2] · g[1]) ⊕ (p[3] · p[2])) · C1)"
            }
            ClaEquation::S3 => {
                "S[3] = ((~m · n) · ~C1) ⊕ (((g[3] · ~h[3]) ⊕ (~h[3] · h[2] · h[1])) · C1)"
            }
            ClaEquation::Cout => "Cout = m + (n · C1)",
        }
    }

    /// Evaluates the printed equation: `·` AND, `+` OR, `⊕` XOR, `~` NOT.
    pub fn eval_verbatim(self, s: &ClaSignals, cin: bool) -> bool {
        let g = |j| bit(s.g, j);
        let p = |j| bit(s.p, j);
        let h = |j| bit(s.h, j);
        let (m, n, c1) = (s.m, s.n, s.c1);
        match self {
            ClaEquation::S0 => h(0) ^ cin,
            ClaEquation::S1 => ((h(1) ^ m) & c1) | (!(h(1) ^ n) & c1),
            ClaEquation::S2 => {
                (!p(2) & g(1))
                    ^ (!p(3) & h(2) & !p(1))
                    ^ ((g(3) ^ (h(2) & h(1))) & !c1)
                    ^ (((!p(3) & !p(2) & p(1)) ^ (g(2) & g(1)) ^ (p(3) & p(2))) & c1)
            }
            ClaEquation::S3 => ((!m & n) & !c1) ^ (((g(3) & !h(3)) ^ (!h(3) & h(2) & h(1))) & c1),
            ClaEquation::Cout => m | (n & c1),
        }
    }

    /// The oracle's value for this output bit.
    pub fn target(self, op: &BcdOperands) -> bool {
        let r = oracle(op);
        match self {
            ClaEquation::S0 => bit(r.sum, 0),
            ClaEquation::S1 => bit(r.sum, 1),
            ClaEquation::S2 => bit(r.sum, 2),
            ClaEquation::S3 => bit(r.sum, 3),
            ClaEquation::Cout => r.cout,
        }
    }
}

impl fmt::Display for ClaEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaVariant {
    /// The printed equations.
    Verbatim,
    /// Sum-of-products derived from the oracle truth table.
    Corrected,
}

/// Oracle-derived replacement equations, one SOP per output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectedCla {
    pub sum: [Sop; 4],
    pub cout: Sop,
}

impl CorrectedCla {
    pub fn equation(&self, eq: ClaEquation) -> &Sop {
        match eq {
            ClaEquation::S0 => &self.sum[0],
            ClaEquation::S1 => &self.sum[1],
            ClaEquation::S2 => &self.sum[2],
            ClaEquation::S3 => &self.sum[3],
            ClaEquation::Cout => &self.cout,
        }
    }
}

/// Variable names of the 512-row tables, bit `i` of the row index first.
pub const TABLE_VARIABLES: [&str; 9] = ["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "cin"];

/// Minimizes each output over the 512 (a, b, cin) rows, invalid BCD rows as don't-cares.
pub fn derive_corrected_cla() -> CorrectedCla {
    let table = |eq: ClaEquation| -> Vec<Row> {
        (0..512u32)
            .map(|row| {
                let (a, b, cin) = ((row & 0xf) as u8, (row >> 4 & 0xf) as u8, row >> 8 == 1);
                match BcdOperands::new(a, b, cin) {
                    Ok(op) if eq.target(&op) => Row::On,
                    Ok(_) => Row::Off,
                    Err(_) => Row::DontCare,
                }
            })
            .collect()
    };
    let sop = |eq| minimize(&TABLE_VARIABLES, &table(eq));
    CorrectedCla {
        sum: [
            sop(ClaEquation::S0),
            sop(ClaEquation::S1),
            sop(ClaEquation::S2),
            sop(ClaEquation::S3),
        ],
        cout: sop(ClaEquation::Cout),
    }
}

/// Cached result of [`derive_corrected_cla`].
pub fn corrected_cla() -> &'static CorrectedCla {
    static CORRECTED: OnceLock<CorrectedCla> = OnceLock::new();
    CORRECTED.get_or_init(derive_corrected_cla)
}

pub fn cla_add(op: &BcdOperands, variant: ClaVariant) -> BcdResult {
    let eval = |eq: ClaEquation| match variant {
        ClaVariant::Verbatim => eq.eval_verbatim(&cla_signals(op), op.cin),
        ClaVariant::Corrected => corrected_cla().equation(eq).eval(op.pattern()),
    };
    BcdResult {
        sum: nibble([
            eval(ClaEquation::S0),
            eval(ClaEquation::S1),
            eval(ClaEquation::S2),
            eval(ClaEquation::S3),
        ]),
        cout: eval(ClaEquation::Cout),
    }
}

/// Block-level signals of the carry-skip adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkipSignals {
    /// Per-bit propagate, `a ⊕ b`.
    pub p_bits: u8,
    /// Block propagate, AND of `p_bits`.
    pub big_p: bool,
    /// Ripple carry out of the 4-FA block.
    pub c4: bool,
    /// Binary sum of the first block.
    pub z: u8,
    /// First-stage carry: `cin` when `big_p`, else `c4`.
    pub stage1_carry: bool,
    /// Decimal carry out, also the correction trigger.
    pub cout: bool,
}

impl fmt::Display for SkipSignals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={:04b} P={} c4={} z={:04b} k={} cout={}",
            self.p_bits,
            self.big_p as u8,
            self.c4 as u8,
            self.z,
            self.stage1_carry as u8,
            self.cout as u8
        )
    }
}

/// Decimal-carry detection terms `K`, `Z3·Z2`, `Z3·~Z2·Z1`.
///
/// Pairwise exclusive on every reachable (carry, z), so their OR and XOR agree.
pub fn detection_terms(carry: bool, z: u8) -> [bool; 3] {
    [
        carry,
        bit(z, 3) & bit(z, 2),
        bit(z, 3) & !bit(z, 2) & bit(z, 1),
    ]
}

/// The textbook terms `K`, `Z3·Z2`, `Z3·Z1`; the last two overlap at z = 14, 15.
pub fn naive_detection_terms(carry: bool, z: u8) -> [bool; 3] {
    [carry, bit(z, 3) & bit(z, 2), bit(z, 3) & bit(z, 1)]
}

pub fn carry_skip_add(op: &BcdOperands) -> (BcdResult, SkipSignals) {
    let (a, b) = (op.a.0, op.b.0);
    let (z, carries) = ripple4(a, b, op.cin);
    let c4 = carries[3];
    let p_bits = (a ^ b) & 0xf;
    let big_p = p_bits == 0xf;
    let stage1_carry = if big_p { op.cin } else { c4 };
    let cout = detection_terms(stage1_carry, z)
        .into_iter()
        .fold(false, |acc, t| acc ^ t);
    let (sum, _) = ripple4(z, if cout { 0b0110 } else { 0 }, false);
    (
        BcdResult { sum, cout },
        SkipSignals {
            p_bits,
            big_p,
            c4,
            z,
            stage1_carry,
            cout,
        },
    )
}

/// Single-digit architectures usable for multi-digit chaining.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecimalArch {
    Conventional,
    ClaCorrected,
    CarrySkip,
}

impl DecimalArch {
    pub const ALL: [DecimalArch; 3] = [
        DecimalArch::Conventional,
        DecimalArch::ClaCorrected,
        DecimalArch::CarrySkip,
    ];

    pub fn add_digit(self, op: &BcdOperands) -> BcdResult {
        match self {
            DecimalArch::Conventional => conventional_add(op).0,
            DecimalArch::ClaCorrected => cla_add(op, ClaVariant::Corrected),
            DecimalArch::CarrySkip => carry_skip_add(op).0,
        }
    }
}

/// Chains single-digit stages over little-endian digit sequences.
pub fn chain_digits(
    x: &[u8],
    y: &[u8],
    cin: bool,
    mut add_digit: impl FnMut(&BcdOperands) -> BcdResult,
) -> Result<(Vec<u8>, bool), BcdError> {
    if x.len() != y.len() {
        return Err(BcdError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mut carry = cin;
    let mut digits = Vec::with_capacity(x.len());
    for (&a, &b) in x.iter().zip(y) {
        let r = add_digit(&BcdOperands::new(a, b, carry)?);
        digits.push(r.sum);
        carry = r.cout;
    }
    Ok((digits, carry))
}

pub fn decimal_add(
    x: &[u8],
    y: &[u8],
    cin: bool,
    arch: DecimalArch,
) -> Result<(Vec<u8>, bool), BcdError> {
    chain_digits(x, y, cin, |op| arch.add_digit(op))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(a: u8, b: u8, cin: u8) -> BcdOperands {
        BcdOperands::new(a, b, cin == 1).unwrap()
    }

    #[test]
    fn operand_universe() {
        assert_eq!(BcdOperands::all().count(), 200);
        assert_eq!(
            BcdOperands::new(12, 3, false),
            Err(BcdError::InvalidBcd(12))
        );
        assert_eq!(BcdOperands::new(3, 10, true), Err(BcdError::InvalidBcd(10)));
        assert_eq!(op(9, 9, 1).pattern(), 0x199);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            oracle(&op(0, 0, 0)),
            BcdResult {
                sum: 0,
                cout: false
            }
        );
        assert_eq!(oracle(&op(9, 9, 1)), BcdResult { sum: 9, cout: true });
        assert_eq!(oracle(&op(5, 7, 0)), BcdResult { sum: 2, cout: true });
    }

    #[test]
    fn conventional_examples() {
        let (r, t) = conventional_add(&op(5, 7, 0));
        assert_eq!(
            t,
            ConventionalTrace {
                z: 0b1100,
                k: false,
                correct: true
            }
        );
        assert_eq!(r, BcdResult { sum: 2, cout: true });

        let (r, t) = conventional_add(&op(3, 4, 0));
        assert_eq!(
            t,
            ConventionalTrace {
                z: 0b0111,
                k: false,
                correct: false
            }
        );
        assert_eq!(
            r,
            BcdResult {
                sum: 7,
                cout: false
            }
        );

        let (r, t) = conventional_add(&op(9, 9, 1));
        assert_eq!(
            t,
            ConventionalTrace {
                z: 0b0011,
                k: true,
                correct: true
            }
        );
        assert_eq!(r, BcdResult { sum: 9, cout: true });
    }

    #[test]
    fn trace_invariants_hold_everywhere() {
        for o in BcdOperands::all() {
            let (_, t) = conventional_add(&o);
            assert_eq!(16 * t.k as u8 + t.z, o.total());
            assert_eq!(t.correct, o.total() >= 10);
        }
    }

    #[test]
    fn cla_signal_examples() {
        // Hand evaluation: g=1001 p=1001 h=0000.
        let s = cla_signals(&op(9, 9, 1));
        assert_eq!((s.g, s.p, s.h), (0b1001, 0b1001, 0b0000));
        assert_eq!((s.m, s.n, s.c1), (true, true, true));
        // g=0101 p=0111 h=0010; n = p3 ⊕ g2 ⊕ p2·g1 = 0 ⊕ 1 ⊕ 0 = 1.
        let s = cla_signals(&op(5, 7, 0));
        assert_eq!((s.g, s.p, s.h), (0b0101, 0b0111, 0b0010));
        assert_eq!((s.m, s.n, s.c1), (true, true, true));
        let s = cla_signals(&op(0, 0, 0));
        assert_eq!(
            s,
            ClaSignals {
                g: 0,
                p: 0,
                h: 0,
                m: false,
                n: false,
                c1: false
            }
        );
    }

    #[test]
    fn generate_implies_propagate() {
        for o in BcdOperands::all() {
            let s = cla_signals(&o);
            assert_eq!(s.g & !s.p, 0, "{o}");
            assert_eq!(s.h, s.p & !s.g);
        }
    }

    #[test]
    fn cla_verbatim_examples() {
        let s = cla_signals(&op(9, 9, 1));
        assert!(ClaEquation::S0.eval_verbatim(&s, true));
        assert!(ClaEquation::Cout.eval_verbatim(&s, true));
        assert_eq!(
            cla_add(&op(0, 0, 0), ClaVariant::Verbatim),
            BcdResult {
                sum: 0,
                cout: false
            }
        );
    }

    #[test]
    fn printed_s1_vanishes_without_c1() {
        // both product terms of S[1] are gated by C1
        for o in BcdOperands::all() {
            let s = cla_signals(&o);
            if !s.c1 {
                assert!(!ClaEquation::S1.eval_verbatim(&s, o.cin));
            }
        }
    }

    #[test]
    fn cla_corrected_matches_oracle() {
        assert_eq!(
            cla_add(&op(9, 9, 1), ClaVariant::Corrected),
            BcdResult { sum: 9, cout: true }
        );
        for o in BcdOperands::all() {
            assert_eq!(cla_add(&o, ClaVariant::Corrected), oracle(&o), "{o}");
        }
    }

    #[test]
    fn corrected_s0_is_parity() {
        // S0 = a0 ⊕ b0 ⊕ cin needs four 3-literal cubes
        let s0 = &corrected_cla().sum[0];
        assert_eq!(s0.cubes.len(), 4);
        assert_eq!(s0.literal_count(), 12);
    }

    #[test]
    fn carry_skip_examples() {
        let (r, s) = carry_skip_add(&op(9, 6, 1));
        assert_eq!(s.p_bits, 0b1111);
        assert!(s.big_p && s.cout);
        assert_eq!(r, BcdResult { sum: 6, cout: true });

        let (r, s) = carry_skip_add(&op(0, 0, 1));
        assert!(!s.big_p && !s.cout);
        assert_eq!(
            r,
            BcdResult {
                sum: 1,
                cout: false
            }
        );

        let (r, s) = carry_skip_add(&op(9, 0, 1));
        assert!(!s.big_p);
        assert_eq!(s.z, 0b1010);
        assert_eq!(detection_terms(s.stage1_carry, s.z), [false, false, true]);
        assert_eq!(r, BcdResult { sum: 0, cout: true });
    }

    #[test]
    fn skip_carry_equals_cin_under_block_propagate() {
        for o in BcdOperands::all() {
            let (_, s) = carry_skip_add(&o);
            assert_eq!(s.big_p, s.p_bits == 0xf);
            if s.big_p {
                assert_eq!(s.stage1_carry, o.cin);
                // ripple agrees, the skip only shortens the path
                assert_eq!(s.c4, o.cin);
            }
        }
    }

    #[test]
    fn detection_terms_are_exclusive() {
        for o in BcdOperands::all() {
            let (_, s) = carry_skip_add(&o);
            let t = detection_terms(s.stage1_carry, s.z);
            assert!(t.iter().filter(|&&x| x).count() <= 1, "{o}");
        }
        // naive terms overlap at 7 + 7 = 14
        let (_, s) = carry_skip_add(&op(7, 7, 0));
        assert_eq!(s.z, 14);
        assert_eq!(
            naive_detection_terms(s.stage1_carry, s.z),
            [false, true, true]
        );
    }

    #[test]
    fn all_architectures_match_oracle() {
        for o in BcdOperands::all() {
            let expected = oracle(&o);
            assert_eq!(conventional_add(&o).0, expected, "conventional {o}");
            assert_eq!(carry_skip_add(&o).0, expected, "carry-skip {o}");
        }
    }

    #[test]
    fn decimal_add_examples() {
        for arch in DecimalArch::ALL {
            assert_eq!(
                decimal_add(&[9, 9], &[0, 1], false, arch).unwrap(),
                (vec![9, 0], true)
            );
            assert_eq!(
                decimal_add(&[0], &[0], false, arch).unwrap(),
                (vec![0], false)
            );
        }
        assert_eq!(
            decimal_add(&[1, 2], &[3], false, DecimalArch::Conventional),
            Err(BcdError::LengthMismatch { left: 2, right: 1 })
        );
        assert_eq!(
            decimal_add(&[1, 12], &[3, 4], false, DecimalArch::CarrySkip),
            Err(BcdError::InvalidBcd(12))
        );
        assert_eq!(
            decimal_add(&[], &[], true, DecimalArch::CarrySkip).unwrap(),
            (vec![], true)
        );
    }
}
