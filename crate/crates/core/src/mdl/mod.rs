//! Minimal description length machinery.
//!
//! Outcomes are integer sequences. Their *description complexity* `C` is the
//! bit cost of the cheapest [`Code`] in a small grammar that decodes to the
//! sequence; their *generation complexity* `C_w` is the number of bits a
//! [`World`] spends on its independent choices to produce them.
//!
//! Absolute `C` values depend on the grammar's overhead constants, so only
//! differences and orderings are meaningful across outcomes.

mod code;
mod search;
mod world;

pub use code::{code_cost, integer_cost, Code, Domain, Literal, TAG_BITS};
pub use search::{shortest_description, MAX_SEARCH_LEN};
pub use world::{generation_complexity, ChoicePoint, World};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MdlError {
    #[error("invalid domain {lo}..{hi}: {reason}")]
    InvalidDomain { lo: i64, hi: i64, reason: &'static str },

    #[error("value {value} is outside the domain {lo}..{hi}")]
    OutOfDomain { value: i64, lo: i64, hi: i64 },

    #[error("sequence of length {len} exceeds the exhaustive-search bound of {max}")]
    Capacity { len: usize, max: usize },

    #[error("cannot describe an empty sequence")]
    EmptySequence,

    #[error("malformed code: {0}")]
    Malformed(String),

    #[error("invalid choice point: {0}")]
    InvalidChoice(String),
}
