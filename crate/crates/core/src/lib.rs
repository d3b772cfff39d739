//! Correlation networks of foreign-exchange cross rates.
//!
//! The crate turns a panel of exchange rates quoted against one reference
//! currency into, for any chosen base currency:
//!
//! * normalized log-return matrices ([`timeseries`]),
//! * the equal-time correlation matrix and its eigenvalue spectrum ([`corrnet`]),
//! * the minimal spanning tree under the distance `d = sqrt((1 - C) / 2)` ([`mstgraph`]),
//! * the cumulative node-multiplicity distribution `N(K)` and its inverse power
//!   fit ([`scaling`]),
//!
//! together with the shuffled and fictitious-currency null models and a seeded
//! synthetic market generator ([`nullmodel`]). [`pipeline`] strings the stages
//! together and writes the report files consumed by plotting scripts.

pub mod corrnet;
pub mod error;
pub mod mstgraph;
pub mod nullmodel;
pub mod pipeline;
pub mod scaling;
pub mod timeseries;

pub use error::{Error, Result};
