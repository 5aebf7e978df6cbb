//! Walsh-Hadamard QROM circuits.
//!
//! [`synthesize`] turns a truncated spectrum into a product of signed
//! constant additions, one per retained coefficient. [`pair_cancel`] fuses
//! coefficient pairs, [`cost`] tallies gates exactly, and [`simulate`] runs the
//! circuit on basis states.

mod circuit;
mod cost;
mod error;
mod gate;
mod rotation;

pub use circuit::{
    gray_rank, merge_pfx, pair_cancel, plan_pair, simulate, synthesize, Ordering, PairPlan,
    QromCircuit,
};
pub use cost::{
    adder_t_count, controlled_adder_t_count, cost, cost_support_split, pfx_cnot_count, CostReport,
};
pub use error::{QromError, Result};
pub use gate::{wrap_signed, Gate};
pub use rotation::{
    multiplexed_rotation_unitary, unitarity_deviation, MultiplexedRotation, DENSE_QUBIT_LIMIT,
};
