//! Reversible and classical BCD adders with exhaustive verification.
//!
//! [`gate`] holds the reversible gate permutations, [`netlist`] the circuit
//! model and simulator, [`classical`] the bit-level adder models,
//! [`reversible`] the gate-level adder builds and [`verify`] the sweeps and
//! audits that tie them to the integer oracle.

pub mod classical;
pub mod gate;
pub mod netlist;
pub mod reversible;
pub mod sop;
pub mod verify;

pub use classical::{oracle, BcdDigit, BcdError, BcdOperands, BcdResult, DecimalArch};
pub use gate::{BitVector, BuiltinGate, GateError, GateLibrary, GatePermutation};
pub use netlist::{CostMetrics, Netlist, NetlistError};
pub use reversible::{
    build_carry_skip_reversible, build_conventional_reversible, ReversibleAdderBuild,
};
pub use verify::{verify_architecture, Architecture, VerificationReport};
