//! Reads a trained feed-forward network with one ReLU layer as weighted
//! Boolean logic.
//!
//! Inputs are fuzzified attribute degrees expanded into minterm vectors.
//! Every ReLU activation pattern selects a cell in which the network is a
//! linear map over minterms; its weights are scaled, bit-coded and read back
//! as logic expressions, one per bit level.

pub mod analysis;
pub mod cli;
pub mod dataset;
pub mod encoding;
pub mod error;
pub mod logiccode;
pub mod network;
pub mod partition;
pub mod qldt;

pub use error::{Error, Result};
