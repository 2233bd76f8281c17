//! Command-line front end for `uqsim-core`: configuration, text formats,
//! plots and run manifests.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod plot;
