//! Operator station for the spraybot simulator: the `spraybot` command line
//! and the live teleoperation server.

pub mod cli;
pub mod server;

pub use server::{Station, StationConfig};
