//! Robot configuration.
//!
//! [`RobotConfig`] holds every physical parameter in SI units. The TOML file
//! form ([`ConfigFile`]) names each key with its unit suffix (`_in`, `_m`,
//! `_deg`, `_a`, ...) and is the only place inches enter the program.
//!
//! | key | default | unit |
//! |-----|---------|------|
//! | chassis_length_in / width / height | 22.9 / 14.2 / 9.5 | in |
//! | wheel_diameter_in, wheel_width_in | 15, 4.5 | in |
//! | track_width_m | 0.475 | m |
//! | v_max_m_s | 1.43 | m/s |
//! | blade_sweep_radius_m | 0.31 | m |
//! | nozzle_height_min_in / max | 46.8 / 56.8 | in |
//! | nozzle_reach_min_in / max | 12.5 / 32.6 | in |
//! | pump_flow_l_min | 1.5 | L/min |
//! | battery_capacity_ah | 4.5 | Ah |
//! | panel_current_a | 4.5 | A |
//!
//! See `docs/config.md` for the full key list.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::protocol::ControllerMode;
use crate::units::{in_to_m, m_to_in};

/// Per-device current draw in amperes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CurrentDraws {
    pub drive_motor: f64,
    pub mower: f64,
    pub pump: f64,
    pub controller: f64,
    pub horizontal_actuator: f64,
    pub vertical_actuator: f64,
}

impl Default for CurrentDraws {
    fn default() -> Self {
        Self {
            drive_motor: 0.06,
            mower: 0.06,
            pump: 0.3,
            controller: 0.02,
            horizontal_actuator: 0.3,
            vertical_actuator: 0.5,
        }
    }
}

/// When the boom's linear actuators count as drawing current.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ActuatorDuty {
    /// Only while an axis is travelling toward its set-point.
    #[default]
    Motion,
    /// Whenever the robot is powered (all-components-on budget).
    Continuous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobotConfig {
    pub chassis_length: f64,
    pub chassis_width: f64,
    pub chassis_height: f64,
    pub wheel_diameter: f64,
    pub wheel_width: f64,
    /// Lateral distance between left and right wheel contact lines.
    pub track_width: f64,
    pub v_max: f64,
    pub drive_motor_rpm: f64,
    pub mower_rpm: f64,
    pub blade_sweep_radius: f64,
    pub mower_clearance: f64,
    pub nozzle_height_min: f64,
    pub nozzle_height_max: f64,
    pub nozzle_reach_min: f64,
    pub nozzle_reach_max: f64,
    /// Symmetric limit on boom yaw, radians.
    pub boom_yaw_limit: f64,
    /// Symmetric limit on nozzle pitch, radians.
    pub nozzle_pitch_limit: f64,
    pub pump_flow_l_min: f64,
    pub tank_capacity_l: f64,
    pub battery_capacity_ah: f64,
    pub battery_voltage: f64,
    pub panel_power_w: f64,
    pub panel_voltage: f64,
    pub panel_current_a: f64,
    pub current_draws: CurrentDraws,
    /// Spray cone half-angle, radians.
    pub cone_half_angle: f64,
    /// Height of the plane the spray footprint is cast onto (0 = bare ground).
    pub spray_target_height: f64,
    /// Starting charge; `None` means a full battery.
    pub initial_soc_ah: Option<f64>,
    pub controller_mode: ControllerMode,
    /// Swap which motor pair is the left side (M3,M4 instead of M1,M2).
    pub swap_sides: bool,
    /// Linear actuator travel speed; `None` moves the boom instantly.
    pub actuator_rate: Option<f64>,
    pub actuator_duty: ActuatorDuty,
    pub default_cap_turns: u8,
}

/// atan(5 / 20): half-angle of the measured 10 in cone at 20 in throw.
pub fn measured_cone_half_angle() -> f64 {
    (5.0f64 / 20.0).atan()
}

impl Default for RobotConfig {
    fn default() -> Self {
        Self::prototype()
    }
}

impl RobotConfig {
    pub fn prototype() -> Self {
        Self {
            chassis_length: in_to_m(22.9),
            chassis_width: in_to_m(14.2),
            chassis_height: in_to_m(9.5),
            wheel_diameter: in_to_m(15.0),
            wheel_width: in_to_m(4.5),
            track_width: 0.475,
            v_max: 1.43,
            drive_motor_rpm: 250.0,
            mower_rpm: 1000.0,
            blade_sweep_radius: 0.31,
            mower_clearance: in_to_m(3.0),
            nozzle_height_min: in_to_m(46.8),
            nozzle_height_max: in_to_m(56.8),
            nozzle_reach_min: in_to_m(12.5),
            nozzle_reach_max: in_to_m(32.6),
            boom_yaw_limit: 90f64.to_radians(),
            nozzle_pitch_limit: 40f64.to_radians(),
            pump_flow_l_min: 1.5,
            tank_capacity_l: 1.0,
            battery_capacity_ah: 4.5,
            battery_voltage: 12.0,
            panel_power_w: 100.0,
            panel_voltage: 21.0,
            panel_current_a: 4.5,
            current_draws: CurrentDraws::default(),
            cone_half_angle: measured_cone_half_angle(),
            spray_target_height: 0.0,
            initial_soc_ah: None,
            controller_mode: ControllerMode::Faithful,
            swap_sides: false,
            actuator_rate: None,
            actuator_duty: ActuatorDuty::Motion,
            default_cap_turns: 4,
        }
    }

    /// Motorised boom: 12 mm/s actuators, energised whenever the robot is on.
    pub fn conceptual_design() -> Self {
        Self {
            actuator_rate: Some(0.012),
            actuator_duty: ActuatorDuty::Continuous,
            ..Self::prototype()
        }
    }

    /// 1.3 Ah pack from the battery spec sheet instead of the 4.5 Ah pair.
    pub fn with_spec_sheet_battery(mut self) -> Self {
        self.battery_capacity_ah = 1.3;
        self
    }

    /// Nominal 120° full-cone angle instead of the measured cone.
    pub fn with_nominal_cone(mut self) -> Self {
        self.cone_half_angle = 60f64.to_radians();
        self
    }

    /// Treats the 31 cm blade length as tip-to-tip diameter.
    pub fn with_blade_as_diameter(mut self) -> Self {
        self.blade_sweep_radius = 0.155;
        self
    }

    /// Pump nameplate flow (lower end of 350–700 L/h).
    pub fn with_rated_pump_flow(mut self) -> Self {
        self.pump_flow_l_min = 350.0 / 60.0;
        self
    }

    pub fn vertical_travel(&self) -> f64 {
        self.nozzle_height_max - self.nozzle_height_min
    }

    pub fn horizontal_travel(&self) -> f64 {
        self.nozzle_reach_max - self.nozzle_reach_min
    }

    pub fn initial_soc(&self) -> f64 {
        self.initial_soc_ah.unwrap_or(self.battery_capacity_ah)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("chassis_length", self.chassis_length),
            ("chassis_width", self.chassis_width),
            ("chassis_height", self.chassis_height),
            ("wheel_diameter", self.wheel_diameter),
            ("wheel_width", self.wheel_width),
            ("track_width", self.track_width),
            ("v_max", self.v_max),
            ("blade_sweep_radius", self.blade_sweep_radius),
            ("mower_clearance", self.mower_clearance),
            ("nozzle_height_min", self.nozzle_height_min),
            ("nozzle_reach_min", self.nozzle_reach_min),
            ("tank_capacity", self.tank_capacity_l),
            ("battery_capacity", self.battery_capacity_ah),
            ("battery_voltage", self.battery_voltage),
            ("panel_voltage", self.panel_voltage),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::NotPositive { name, value: v });
            }
        }
        let non_negative = [
            ("drive_motor_rpm", self.drive_motor_rpm),
            ("mower_rpm", self.mower_rpm),
            ("pump_flow", self.pump_flow_l_min),
            ("panel_power", self.panel_power_w),
            ("panel_current", self.panel_current_a),
            ("boom_yaw_limit", self.boom_yaw_limit),
            ("nozzle_pitch_limit", self.nozzle_pitch_limit),
            ("spray_target_height", self.spray_target_height),
            ("current_draw.drive_motor", self.current_draws.drive_motor),
            ("current_draw.mower", self.current_draws.mower),
            ("current_draw.pump", self.current_draws.pump),
            ("current_draw.controller", self.current_draws.controller),
            ("current_draw.horizontal_actuator", self.current_draws.horizontal_actuator),
            ("current_draw.vertical_actuator", self.current_draws.vertical_actuator),
        ];
        for (name, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ConfigError::Negative { name, value: v });
            }
        }
        let ranges = [
            ("nozzle_height", self.nozzle_height_min, self.nozzle_height_max),
            ("nozzle_reach", self.nozzle_reach_min, self.nozzle_reach_max),
        ];
        for (name, min, max) in ranges {
            if min.partial_cmp(&max) != Some(std::cmp::Ordering::Less) {
                return Err(ConfigError::EmptyRange { name, min, max });
            }
        }
        if !(self.cone_half_angle > 0.0 && self.cone_half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(ConfigError::OutOfRange {
                name: "cone_half_angle",
                value: self.cone_half_angle,
            });
        }
        if let Some(rate) = self.actuator_rate {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(ConfigError::NotPositive {
                    name: "actuator_rate",
                    value: rate,
                });
            }
        }
        if let Some(soc) = self.initial_soc_ah {
            if !(0.0..=self.battery_capacity_ah).contains(&soc) {
                return Err(ConfigError::OutOfRange {
                    name: "initial_soc",
                    value: soc,
                });
            }
        }
        if self.default_cap_turns > 7 {
            return Err(ConfigError::OutOfRange {
                name: "default_cap_turns",
                value: self.default_cap_turns as f64,
            });
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = toml::from_str(text)?;
        let cfg = RobotConfig::from(file);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&ConfigFile::from(self.clone())).expect("config is always serialisable")
    }
}

/// On-disk form of [`RobotConfig`]. Missing keys take prototype defaults;
/// unknown keys are an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    pub chassis_length_in: f64,
    pub chassis_width_in: f64,
    pub chassis_height_in: f64,
    pub wheel_diameter_in: f64,
    pub wheel_width_in: f64,
    pub track_width_m: f64,
    pub v_max_m_s: f64,
    pub drive_motor_rpm: f64,
    pub mower_rpm: f64,
    pub blade_sweep_radius_m: f64,
    pub mower_clearance_in: f64,
    pub nozzle_height_min_in: f64,
    pub nozzle_height_max_in: f64,
    pub nozzle_reach_min_in: f64,
    pub nozzle_reach_max_in: f64,
    pub boom_yaw_limit_deg: f64,
    pub nozzle_pitch_limit_deg: f64,
    pub pump_flow_l_min: f64,
    pub tank_capacity_l: f64,
    pub battery_capacity_ah: f64,
    pub battery_voltage_v: f64,
    pub panel_power_w: f64,
    pub panel_voltage_v: f64,
    pub panel_current_a: f64,
    pub cone_half_angle_deg: f64,
    pub spray_target_height_in: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_soc_ah: Option<f64>,
    pub controller_mode: ControllerMode,
    pub swap_sides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actuator_rate_mm_s: Option<f64>,
    pub actuator_duty: ActuatorDuty,
    pub default_cap_turns: u8,
    pub current_draw_a: CurrentDraws,
}

impl Default for ConfigFile {
    fn default() -> Self {
        RobotConfig::prototype().into()
    }
}

/// Shortest decimal rendering of `to(si)` that converts back to exactly `si`,
/// so written files read `3.0` rather than `2.9999999999999996`.
fn tidy(si: f64, to: fn(f64) -> f64, back: fn(f64) -> f64) -> f64 {
    let raw = to(si);
    (1..=17)
        .filter_map(|digits| format!("{raw:.*e}", digits - 1).parse::<f64>().ok())
        .find(|&v| back(v) == si)
        .unwrap_or(raw)
}

fn tidy_in(m: f64) -> f64 {
    tidy(m, m_to_in, in_to_m)
}

fn tidy_deg(rad: f64) -> f64 {
    tidy(rad, f64::to_degrees, f64::to_radians)
}

impl From<RobotConfig> for ConfigFile {
    fn from(c: RobotConfig) -> Self {
        Self {
            chassis_length_in: tidy_in(c.chassis_length),
            chassis_width_in: tidy_in(c.chassis_width),
            chassis_height_in: tidy_in(c.chassis_height),
            wheel_diameter_in: tidy_in(c.wheel_diameter),
            wheel_width_in: tidy_in(c.wheel_width),
            track_width_m: c.track_width,
            v_max_m_s: c.v_max,
            drive_motor_rpm: c.drive_motor_rpm,
            mower_rpm: c.mower_rpm,
            blade_sweep_radius_m: c.blade_sweep_radius,
            mower_clearance_in: tidy_in(c.mower_clearance),
            nozzle_height_min_in: tidy_in(c.nozzle_height_min),
            nozzle_height_max_in: tidy_in(c.nozzle_height_max),
            nozzle_reach_min_in: tidy_in(c.nozzle_reach_min),
            nozzle_reach_max_in: tidy_in(c.nozzle_reach_max),
            boom_yaw_limit_deg: tidy_deg(c.boom_yaw_limit),
            nozzle_pitch_limit_deg: tidy_deg(c.nozzle_pitch_limit),
            pump_flow_l_min: c.pump_flow_l_min,
            tank_capacity_l: c.tank_capacity_l,
            battery_capacity_ah: c.battery_capacity_ah,
            battery_voltage_v: c.battery_voltage,
            panel_power_w: c.panel_power_w,
            panel_voltage_v: c.panel_voltage,
            panel_current_a: c.panel_current_a,
            cone_half_angle_deg: tidy_deg(c.cone_half_angle),
            spray_target_height_in: tidy_in(c.spray_target_height),
            initial_soc_ah: c.initial_soc_ah,
            controller_mode: c.controller_mode,
            swap_sides: c.swap_sides,
            actuator_rate_mm_s: c.actuator_rate.map(|r| r * 1000.0),
            actuator_duty: c.actuator_duty,
            default_cap_turns: c.default_cap_turns,
            current_draw_a: c.current_draws,
        }
    }
}

impl From<ConfigFile> for RobotConfig {
    fn from(f: ConfigFile) -> Self {
        Self {
            chassis_length: in_to_m(f.chassis_length_in),
            chassis_width: in_to_m(f.chassis_width_in),
            chassis_height: in_to_m(f.chassis_height_in),
            wheel_diameter: in_to_m(f.wheel_diameter_in),
            wheel_width: in_to_m(f.wheel_width_in),
            track_width: f.track_width_m,
            v_max: f.v_max_m_s,
            drive_motor_rpm: f.drive_motor_rpm,
            mower_rpm: f.mower_rpm,
            blade_sweep_radius: f.blade_sweep_radius_m,
            mower_clearance: in_to_m(f.mower_clearance_in),
            nozzle_height_min: in_to_m(f.nozzle_height_min_in),
            nozzle_height_max: in_to_m(f.nozzle_height_max_in),
            nozzle_reach_min: in_to_m(f.nozzle_reach_min_in),
            nozzle_reach_max: in_to_m(f.nozzle_reach_max_in),
            boom_yaw_limit: f.boom_yaw_limit_deg.to_radians(),
            nozzle_pitch_limit: f.nozzle_pitch_limit_deg.to_radians(),
            pump_flow_l_min: f.pump_flow_l_min,
            tank_capacity_l: f.tank_capacity_l,
            battery_capacity_ah: f.battery_capacity_ah,
            battery_voltage: f.battery_voltage_v,
            panel_power_w: f.panel_power_w,
            panel_voltage: f.panel_voltage_v,
            panel_current_a: f.panel_current_a,
            current_draws: f.current_draw_a,
            cone_half_angle: f.cone_half_angle_deg.to_radians(),
            spray_target_height: in_to_m(f.spray_target_height_in),
            initial_soc_ah: f.initial_soc_ah,
            controller_mode: f.controller_mode,
            swap_sides: f.swap_sides,
            actuator_rate: f.actuator_rate_mm_s.map(|r| r / 1000.0),
            actuator_duty: f.actuator_duty,
            default_cap_turns: f.default_cap_turns,
        }
    }
}
