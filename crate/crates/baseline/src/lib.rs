//! SELECT-SWAP QROM cost model and the WH-vs-SELECT-SWAP comparison.

mod compare;
pub mod pes;
mod selectswap;

pub use compare::{compare, compare_with, wh_cost, Ratio, RatioRecord};
pub use selectswap::{
    cnot_lower_bound, optimize_lambda, optimize_lambda_pow2, selectswap_cost, SelectSwapModel,
};

#[derive(Debug, thiserror::Error)]
pub enum BaselineError {
    #[error("lambda {lambda} outside 1..=2^{eta}")]
    Lambda { lambda: u64, eta: u32 },
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
    #[error("address widths differ: {0} vs {1}")]
    Shape(u32, u32),
}
