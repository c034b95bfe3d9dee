//! Deterministic simulator for a solar-powered, remotely driven sprayer and
//! mower robot.
//!
//! The crate models the robot end to end: the byte-level remote-control
//! program ([`protocol`]), skid-steer kinematics ([`kinematics`]), the
//! four-axis spray boom ([`boom`]), spray and mower coverage on a field grid
//! ([`spray`], [`grid`]), and the battery/solar power budget ([`power`]).
//! [`sim`] composes them in a fixed-timestep loop driven either by a
//! [`script::MissionScript`] or by a [`session::LiveSession`].
//!
//! Run `cargo run --example` to list the runnable examples.

pub mod boom;
pub mod calc;
pub mod config;
pub mod error;
pub mod export;
pub mod geometry;
pub mod grid;
pub mod kinematics;
pub mod power;
pub mod protocol;
pub mod script;
pub mod session;
pub mod sim;
pub mod spray;
pub mod telemetry;
pub mod units;

pub use config::RobotConfig;
pub use geometry::Pose2D;
pub use grid::FieldGrid;
pub use script::MissionScript;
pub use sim::{run_script, MissionReport, SimOptions, Simulator};
