//! Command line front end and steering service for `qaffect`.

pub mod commands;
pub mod server;
