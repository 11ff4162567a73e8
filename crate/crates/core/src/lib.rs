//! # luckbits
//!
//! A deterministic engine for complexity-based luck judgements.
//!
//! An outcome is *unexpected* when it is simpler to describe than to
//! generate. The engine measures both sides of that gap in bits, turns the
//! gap into subjective probability and emotional intensity, and scores good
//! or bad luck against the actual outcome, a counterfactual, or a causal
//! explanation.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`mdl`] | description grammar, exact bit costs, shortest-description search, generation complexity |
//! | [`measures`] | unexpectedness, subjective probability, emotion, causal propagation |
//! | [`luck`] | luck intensities, near-miss models, causal luck, Rescher/Teigen baselines |
//! | [`scenarios`] | the nine-story choice dataset and its prediction harness |
//!
//! ```
//! use luckbits_core::mdl::{shortest_description, Domain, World};
//! use luckbits_core::measures::unexpectedness;
//!
//! let draw = [22, 23, 24, 25, 26, 27];
//! let (code, c) = shortest_description(&draw, Domain::new(1, 49).unwrap()).unwrap();
//! let cw = World::uniform_draws(6, 49).unwrap().generation_complexity();
//! assert!(unexpectedness(cw, c) > 10.0);
//! assert_eq!(code.decode().unwrap(), draw);
//! ```

pub mod cost;
pub mod luck;
pub mod mdl;
pub mod measures;
pub mod scenarios;

pub use cost::BitCost;

/// Version string stamped into machine-readable reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
