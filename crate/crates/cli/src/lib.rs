//! Library surface of the experiment runner; the `lvals` binary is a thin
//! argument-parsing shell over these modules, and the acceptance suite
//! drives them directly.

pub mod commands;
pub mod config;
pub mod records;
pub mod runner;
