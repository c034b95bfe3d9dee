//! Fixed-timestep simulation loop.
//!
//! Each tick runs the same sequence: deliver due events, move the robot,
//! mow, spray, update the battery, advance the clock. Scripted runs and live
//! sessions both go through [`Simulator::tick`].

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boom::{nozzle_pose, BoomActuators, NozzleSide};
use crate::config::{ActuatorDuty, RobotConfig};
use crate::error::SimError;
use crate::geometry::Pose2D;
use crate::grid::FieldGrid;
use crate::kinematics::{body_twist, integrate_pose, DriveState, Twist};
use crate::power::{instantaneous_draw, step_battery, BatteryState, DeviceActivity};
use crate::protocol::{idle_hold, set_speed, step_controller, ControllerState};
use crate::script::{quantize, EventKind, MissionScript};
use crate::spray::{apply_spray, setting_from_turns, spray_footprint, TankState};
use crate::telemetry::{BoomTelemetry, Flags, TelemetryFrame, DEFAULT_DIVISOR, SCHEMA};

pub const DEFAULT_DT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions {
    pub dt: f64,
    /// Emit a telemetry frame every this many ticks.
    pub telemetry_divisor: u32,
    /// Starting pose; defaults to the field centre facing +x.
    pub start: Option<Pose2D>,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            telemetry_divisor: DEFAULT_DIVISOR,
            start: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub tick: u64,
    pub dt: f64,
    pub pose: Pose2D,
    pub twist: Twist,
    pub boom: BoomActuators,
    pub cap_turns: u8,
    pub controller: ControllerState,
    pub drive: DriveState,
    pub battery: BatteryState,
    pub tank: TankState,
    pub grid: FieldGrid,
    pub solar_on: bool,
    pub flags: Flags,
}

impl SimState {
    pub fn t(&self) -> f64 {
        self.tick as f64 * self.dt
    }
}

#[derive(Debug, Clone, Default)]
struct Totals {
    distance: f64,
    liquid_used: f64,
    liquid_deposited: f64,
    liquid_discarded: f64,
    charge_used: f64,
    solar_charge: f64,
    battery_dead_at: Option<f64>,
    battery_full_at: Option<f64>,
    events: u64,
    digest: Sha256,
}

/// Aggregate outcome of a mission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionReport {
    pub duration_s: f64,
    pub ticks: u64,
    pub dt_s: f64,
    pub distance_m: f64,
    pub area_sprayed_m2: f64,
    pub area_mowed_m2: f64,
    pub field_area_m2: f64,
    pub liquid_used_l: f64,
    pub liquid_on_field_l: f64,
    /// Dispensed liquid that landed outside the field or never landed.
    pub liquid_off_field_l: f64,
    /// Charge delivered to the loads.
    pub charge_used_ah: f64,
    /// Charge accepted from the solar panel.
    pub solar_charge_ah: f64,
    pub initial_soc_ah: f64,
    pub final_soc_ah: f64,
    pub battery_dead_at_s: Option<f64>,
    pub battery_full_at_s: Option<f64>,
    pub events: u64,
    /// SHA-256 over every delivered event as `<tick> <event>` lines.
    pub event_digest: String,
}

impl MissionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serialisable")
    }
}

#[derive(Debug, Clone)]
pub struct Simulator {
    cfg: RobotConfig,
    opts: SimOptions,
    state: SimState,
    initial_soc: f64,
    totals: Totals,
}

impl Simulator {
    pub fn new(cfg: RobotConfig, grid: FieldGrid, opts: SimOptions) -> Result<Self, SimError> {
        if !(opts.dt.is_finite() && opts.dt > 0.0) {
            return Err(SimError::BadTimeStep(opts.dt));
        }
        cfg.validate().map_err(|e| SimError::Config(e.to_string()))?;
        let start = opts
            .start
            .unwrap_or_else(|| Pose2D::new(grid.width() / 2.0, grid.height() / 2.0, 0.0));
        let battery = BatteryState::new(cfg.initial_soc(), cfg.battery_capacity_ah);
        let state = SimState {
            tick: 0,
            dt: opts.dt,
            pose: start,
            twist: Twist::default(),
            boom: BoomActuators::default(),
            cap_turns: cfg.default_cap_turns,
            controller: ControllerState::new(cfg.controller_mode),
            drive: DriveState::released(),
            battery,
            tank: TankState::full(cfg.tank_capacity_l),
            grid,
            solar_on: false,
            flags: Flags {
                // a flat pack cannot boot the controller
                battery_dead: battery.soc() <= 0.0,
                ..Flags::default()
            },
        };
        Ok(Self {
            initial_soc: battery.soc(),
            cfg,
            opts,
            state,
            totals: Totals::default(),
        })
    }

    pub fn config(&self) -> &RobotConfig {
        &self.cfg
    }

    pub fn options(&self) -> &SimOptions {
        &self.opts
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    pub fn grid(&self) -> &FieldGrid {
        &self.state.grid
    }

    /// Whether the current state warrants a telemetry frame.
    pub fn frame_due(&self) -> bool {
        let n = self.opts.telemetry_divisor.max(1) as u64;
        self.state.tick.is_multiple_of(n)
    }

    fn deliver(&mut self, kind: &EventKind) {
        let s = &mut self.state;
        match *kind {
            EventKind::Send(b) => {
                if !s.flags.battery_dead {
                    s.controller = step_controller(s.controller, b).0;
                }
            }
            EventKind::Boom(axis, value) => {
                if s.boom.command(axis, axis.to_si(value), &self.cfg) {
                    s.flags.boom_clamped = true;
                }
            }
            EventKind::Nozzle(turns) => s.cap_turns = turns.min(7),
            EventKind::Solar(on) => s.solar_on = on,
            EventKind::Speed(pwm) => {
                // rejected up front in faithful mode; ignore defensively here
                if let Ok(c) = set_speed(s.controller, pwm) {
                    s.controller = c;
                }
            }
            EventKind::End => {}
        }
        self.totals.events += 1;
        self.totals
            .digest
            .update(format!("{} {}\n", s.tick, kind).as_bytes());
    }

    /// Advances one time step, delivering `inputs` first and in order.
    pub fn tick(&mut self, inputs: &[EventKind]) {
        for kind in inputs {
            self.deliver(kind);
        }
        let dt = self.opts.dt;
        let cfg = &self.cfg;
        let s = &mut self.state;
        let alive = !s.flags.battery_dead;

        s.drive = idle_hold(&s.controller);
        let actuators = s.boom.step(dt, cfg.actuator_rate);

        // motion
        s.twist = if alive {
            body_twist(&s.drive, cfg)
        } else {
            Twist::default()
        };
        let from = s.pose;
        s.pose = integrate_pose(from, s.twist, dt);
        self.totals.distance += s.twist.v.abs() * dt;

        // mowing
        if alive && s.controller.mower_pin {
            s.grid
                .paint_mow_swath(from.position(), s.pose.position(), cfg.blade_sweep_radius);
        }

        // spraying
        s.flags.pump_dry = false;
        if alive && s.controller.pump_pin {
            s.flags.pump_dry = s.tank.is_empty();
            let setting = setting_from_turns(s.cap_turns as i64)
                .expect("cap turns validated on entry")
                .with_half_angle(cfg.cone_half_angle)
                .with_flow(cfg.pump_flow_l_min);
            if !setting.is_closed() {
                let per_nozzle = setting.flow_l_min / NozzleSide::BOTH.len() as f64;
                for side in NozzleSide::BOTH {
                    let (nozzle, clamped) = nozzle_pose(&s.pose, &s.boom.position, side, cfg);
                    s.flags.boom_clamped |= clamped;
                    let fp = spray_footprint(&nozzle, &setting, cfg.spray_target_height);
                    let step = apply_spray(&mut s.grid, fp.as_ref(), per_nozzle, dt, &mut s.tank);
                    self.totals.liquid_used += step.dispensed;
                    self.totals.liquid_deposited += step.deposited;
                    self.totals.liquid_discarded += step.discarded;
                }
            }
        }

        // power
        let activity = if alive {
            let continuous = cfg.actuator_duty == ActuatorDuty::Continuous;
            DeviceActivity {
                drive_motors_active: s.drive.active_motors(),
                mower_on: s.controller.mower_pin,
                pump_on: s.controller.pump_pin,
                controller_on: true,
                h_actuators_active: if continuous || actuators.horizontal { 2 } else { 0 },
                v_actuator_active: continuous || actuators.vertical,
            }
        } else {
            DeviceActivity::default()
        };
        let draw = instantaneous_draw(&activity, cfg);
        let solar = if s.solar_on { cfg.panel_current_a } else { 0.0 };
        let was_full = s.battery.is_full();
        let step = step_battery(s.battery, draw, solar, dt);
        s.battery = step.battery;
        self.totals.charge_used += step.delivered;
        self.totals.solar_charge += step.accepted;

        s.tick += 1;
        let now = s.t();
        if step.depleted && !s.flags.battery_dead {
            s.flags.battery_dead = true;
            s.controller = ControllerState::new(cfg.controller_mode);
            s.drive = DriveState::released();
            self.totals.battery_dead_at.get_or_insert(now);
        }
        if !was_full && s.battery.is_full() {
            self.totals.battery_full_at.get_or_insert(now);
        }
    }

    pub fn report(&self) -> MissionReport {
        let s = &self.state;
        MissionReport {
            duration_s: s.t(),
            ticks: s.tick,
            dt_s: s.dt,
            distance_m: self.totals.distance,
            area_sprayed_m2: s.grid.sprayed_area(),
            area_mowed_m2: s.grid.mowed_area(),
            field_area_m2: s.grid.field_area(),
            liquid_used_l: self.totals.liquid_used,
            liquid_on_field_l: self.totals.liquid_deposited,
            liquid_off_field_l: self.totals.liquid_discarded,
            charge_used_ah: self.totals.charge_used,
            solar_charge_ah: self.totals.solar_charge,
            initial_soc_ah: self.initial_soc,
            final_soc_ah: s.battery.soc(),
            battery_dead_at_s: self.totals.battery_dead_at,
            battery_full_at_s: self.totals.battery_full_at,
            events: self.totals.events,
            event_digest: hex::encode(self.totals.digest.clone().finalize()),
        }
    }

    pub fn frame(&self) -> TelemetryFrame {
        let s = &self.state;
        TelemetryFrame {
            schema: SCHEMA.to_string(),
            tick: s.tick,
            t: s.t(),
            x: s.pose.x,
            y: s.pose.y,
            heading: s.pose.heading(),
            v: s.twist.v,
            omega: s.twist.omega,
            soc_pct: s.battery.soc_pct(),
            tank_l: s.tank.level(),
            motion: s.controller.motion,
            mower_flag: s.controller.mower_flag,
            pump_flag: s.controller.pump_flag,
            mower_pin: s.controller.mower_pin,
            pump_pin: s.controller.pump_pin,
            speed_pwm: s.controller.speed_pwm,
            solar_on: s.solar_on,
            boom: BoomTelemetry {
                vertical_ext_m: s.boom.position.vertical_ext,
                horizontal_ext_m: s.boom.position.horizontal_ext,
                yaw_deg: s.boom.position.yaw.to_degrees(),
                pitch_deg: s.boom.position.pitch.to_degrees(),
                cap_turns: s.cap_turns,
            },
            area_sprayed_m2: s.grid.sprayed_area(),
            area_mowed_m2: s.grid.mowed_area(),
            liquid_l: self.totals.liquid_used,
            flags: s.flags,
        }
    }

    /// Runs `script` from the current state to its END, handing every due
    /// telemetry frame to `on_frame`.
    pub fn run(
        &mut self,
        script: &MissionScript,
        mut on_frame: impl FnMut(&TelemetryFrame),
    ) -> Result<MissionReport, SimError> {
        let dt = self.opts.dt;
        script.validate_for(&self.cfg, dt)?;
        let end = script.end_tick(dt);
        let events = script.events();
        let mut next = 0;
        let mut due = Vec::new();
        while self.state.tick < end {
            due.clear();
            while next < events.len()
                && events[next].kind != EventKind::End
                && quantize(events[next].at, dt) <= self.state.tick
            {
                due.push(events[next].kind);
                next += 1;
            }
            self.tick(&due);
            if self.frame_due() {
                on_frame(&self.frame());
            }
        }
        Ok(self.report())
    }
}

/// Validates and runs a whole mission on a fresh simulator.
pub fn run_script(
    script: &MissionScript,
    cfg: &RobotConfig,
    field: FieldGrid,
    opts: SimOptions,
) -> Result<MissionReport, SimError> {
    let mut sim = Simulator::new(cfg.clone(), field, opts)?;
    sim.run(script, |_| {})
}
