//! Telemetry frames published by the simulator.
//!
//! Frames are serialised as one JSON object per line. The `schema` field
//! carries [`SCHEMA`]; consumers should reject frames with another value.
//! See `docs/telemetry.md` for field descriptions.

use serde::{Deserialize, Serialize};

use crate::protocol::Motion;

pub const SCHEMA: &str = "spraybot.telemetry/1";

/// Ticks between frames at the default 20 Hz tick rate (5 Hz telemetry).
pub const DEFAULT_DIVISOR: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    pub battery_dead: bool,
    pub pump_dry: bool,
    pub boom_clamped: bool,
    /// Control link dropped while the robot was still moving.
    pub runaway: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoomTelemetry {
    pub vertical_ext_m: f64,
    pub horizontal_ext_m: f64,
    pub yaw_deg: f64,
    pub pitch_deg: f64,
    pub cap_turns: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TelemetryFrame {
    pub schema: String,
    pub tick: u64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub v: f64,
    pub omega: f64,
    pub soc_pct: f64,
    pub tank_l: f64,
    pub motion: Motion,
    pub mower_flag: bool,
    pub pump_flag: bool,
    pub mower_pin: bool,
    pub pump_pin: bool,
    pub speed_pwm: u8,
    pub solar_on: bool,
    pub boom: BoomTelemetry,
    pub area_sprayed_m2: f64,
    pub area_mowed_m2: f64,
    pub liquid_l: f64,
    pub flags: Flags,
}

impl TelemetryFrame {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("frame is always serialisable")
    }

    /// Parses and validates one frame.
    pub fn from_json_line(line: &str) -> Result<Self, String> {
        let frame: Self = serde_json::from_str(line).map_err(|e| e.to_string())?;
        frame.validate()?;
        Ok(frame)
    }

    /// Value-level schema checks that the type system cannot express.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema != SCHEMA {
            return Err(format!("unsupported schema `{}`", self.schema));
        }
        let finite = [
            ("t", self.t),
            ("x", self.x),
            ("y", self.y),
            ("heading", self.heading),
            ("v", self.v),
            ("omega", self.omega),
            ("soc_pct", self.soc_pct),
            ("tank_l", self.tank_l),
            ("area_sprayed_m2", self.area_sprayed_m2),
            ("area_mowed_m2", self.area_mowed_m2),
            ("liquid_l", self.liquid_l),
        ];
        if let Some((name, _)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(format!("{name} is not finite"));
        }
        let non_negative = [
            ("t", self.t),
            ("tank_l", self.tank_l),
            ("area_sprayed_m2", self.area_sprayed_m2),
            ("area_mowed_m2", self.area_mowed_m2),
            ("liquid_l", self.liquid_l),
        ];
        if let Some((name, _)) = non_negative.iter().find(|(_, v)| *v < 0.0) {
            return Err(format!("{name} is negative"));
        }
        if !(0.0..=100.0).contains(&self.soc_pct) {
            return Err(format!("soc_pct {} outside 0..=100", self.soc_pct));
        }
        if !(self.heading > -std::f64::consts::PI && self.heading <= std::f64::consts::PI) {
            return Err("heading not normalised".into());
        }
        if self.boom.cap_turns > 7 {
            return Err("cap_turns above 7".into());
        }
        Ok(())
    }
}
