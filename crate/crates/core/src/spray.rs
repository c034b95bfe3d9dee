//! Nozzle settings, spray cone footprint, tank accounting and mower area.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::boom::NozzlePose;
use crate::config::measured_cone_half_angle;
use crate::error::SprayError;
use crate::geometry::Point2;
use crate::grid::{DiscPaint, FieldGrid};
use crate::units::in_to_m;

/// Measured throw table: (turns, droplet µm, throw in).
const TURN_TABLE: [(u8, f64, f64); 4] = [
    (1, 100.0, 9.0),
    (3, 150.0, 16.0),
    (5, 200.0, 26.0),
    (7, 1000.0, 35.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NozzleSetting {
    pub cap_turns: u8,
    pub droplet_um: f64,
    /// Throw distance along the spray axis, inches.
    pub range_in: f64,
    /// Cone half-angle, degrees.
    pub half_angle_deg: f64,
    pub flow_l_min: f64,
}

impl NozzleSetting {
    pub fn is_closed(&self) -> bool {
        self.cap_turns == 0
    }

    pub fn with_half_angle(mut self, half_angle: f64) -> Self {
        self.half_angle_deg = half_angle.to_degrees();
        self
    }

    pub fn with_flow(mut self, flow_l_min: f64) -> Self {
        self.flow_l_min = flow_l_min;
        self
    }
}

/// Looks up a cap position. Odd turns are table rows; even turns interpolate
/// linearly between neighbours; zero is fully closed.
pub fn setting_from_turns(turns: i64) -> Result<NozzleSetting, SprayError> {
    if !(0..=7).contains(&turns) {
        return Err(SprayError::TurnsOutOfRange(turns));
    }
    let turns = turns as u8;
    let (droplet_um, range_in) = if turns == 0 {
        (0.0, 0.0)
    } else if let Some(&(_, d, r)) = TURN_TABLE.iter().find(|row| row.0 == turns) {
        (d, r)
    } else {
        let hi = TURN_TABLE.iter().position(|row| row.0 > turns).expect("even turn inside table");
        let (t0, d0, r0) = TURN_TABLE[hi - 1];
        let (t1, d1, r1) = TURN_TABLE[hi];
        let f = (turns - t0) as f64 / (t1 - t0) as f64;
        (d0 + f * (d1 - d0), r0 + f * (r1 - r0))
    };
    Ok(NozzleSetting {
        cap_turns: turns,
        droplet_um,
        range_in,
        half_angle_deg: measured_cone_half_angle().to_degrees(),
        flow_l_min: 1.5,
    })
}

/// Ground disc hit by one nozzle's cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SprayFootprint {
    pub center: Point2,
    pub radius: f64,
}

/// Casts the nozzle axis onto the horizontal plane at `target_height` metres.
/// Returns `None` if the nozzle is closed, the axis points level or upward,
/// or the plane lies beyond the nozzle's throw.
pub fn spray_footprint(
    nozzle: &NozzlePose,
    setting: &NozzleSetting,
    target_height: f64,
) -> Option<SprayFootprint> {
    if setting.is_closed() {
        return None;
    }
    let drop = nozzle.position.z - target_height;
    if drop <= 0.0 || nozzle.axis.z >= 0.0 {
        return None;
    }
    let along = drop / -nozzle.axis.z;
    if along > in_to_m(setting.range_in) {
        return None;
    }
    Some(SprayFootprint {
        center: Point2::new(
            nozzle.position.x + along * nozzle.axis.x,
            nozzle.position.y + along * nozzle.axis.y,
        ),
        radius: along * setting.half_angle_deg.to_radians().tan(),
    })
}

/// Total surface area of a right cone with base radius `r` and slant `slant`.
pub fn cone_tsa(r: f64, slant: f64) -> f64 {
    debug_assert!(r >= 0.0 && slant >= 0.0);
    PI * r * slant + PI * r * r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankState {
    level: f64,
    capacity: f64,
}

impl TankState {
    pub fn full(capacity: f64) -> Self {
        Self {
            level: capacity,
            capacity,
        }
    }

    pub fn with_level(capacity: f64, level: f64) -> Self {
        Self {
            level: level.clamp(0.0, capacity),
            capacity,
        }
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn is_empty(&self) -> bool {
        self.level <= 0.0
    }
}

const TANK_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SprayStep {
    pub dispensed: f64,
    pub deposited: f64,
    /// Liquid that left the nozzle but missed the field (or the ground).
    pub discarded: f64,
    /// Pump ran against an empty tank.
    pub dry: bool,
}

/// Runs the pump for `dt` seconds at `flow_l_min`, painting the dispensed
/// volume uniformly over `footprint`. A missing footprint means the spray
/// never lands and the whole volume is discarded.
pub fn apply_spray(
    grid: &mut FieldGrid,
    footprint: Option<&SprayFootprint>,
    flow_l_min: f64,
    dt: f64,
    tank: &mut TankState,
) -> SprayStep {
    debug_assert!(dt > 0.0);
    let mut dispensed = (flow_l_min * dt / 60.0).min(tank.level);
    // don't strand a rounding residue in the tank
    if dispensed > 0.0 && tank.level - dispensed < TANK_EPS {
        dispensed = tank.level;
    }
    let dry = tank.is_empty();
    tank.level -= dispensed;
    let paint = match footprint {
        Some(fp) if dispensed > 0.0 => grid.paint_disc(fp.center, fp.radius, dispensed),
        _ => DiscPaint {
            lattice_cells: 0,
            painted_cells: 0,
            deposited: 0.0,
            discarded: dispensed,
        },
    };
    SprayStep {
        dispensed,
        deposited: paint.deposited,
        discarded: paint.discarded,
        dry,
    }
}

/// Area swept by a spinning blade of the given sweep radius.
pub fn mower_active_area(blade_sweep_radius: f64) -> f64 {
    PI * blade_sweep_radius * blade_sweep_radius
}
