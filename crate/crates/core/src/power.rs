//! Current-draw budget, battery state of charge, and solar charging.
//!
//! The battery sees one net current per step: panel current minus load. The
//! series diode only stops the battery feeding the panel, so solar current is
//! never negative, and charge stops at capacity.

use serde::{Deserialize, Serialize};

use crate::config::RobotConfig;
use crate::error::PowerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeviceActivity {
    pub drive_motors_active: u8,
    pub mower_on: bool,
    pub pump_on: bool,
    pub controller_on: bool,
    pub h_actuators_active: u8,
    pub v_actuator_active: bool,
}

impl DeviceActivity {
    /// Every device of the prototype running.
    pub fn prototype_max() -> Self {
        Self {
            drive_motors_active: 4,
            mower_on: true,
            pump_on: true,
            controller_on: true,
            h_actuators_active: 0,
            v_actuator_active: false,
        }
    }

    /// Prototype plus both horizontal actuators and the vertical actuator.
    pub fn conceptual_max() -> Self {
        Self {
            h_actuators_active: 2,
            v_actuator_active: true,
            ..Self::prototype_max()
        }
    }
}

/// Sum of the current drawn by every active device, amperes.
pub fn instantaneous_draw(a: &DeviceActivity, cfg: &RobotConfig) -> f64 {
    debug_assert!(a.drive_motors_active <= 4 && a.h_actuators_active <= 2);
    let d = &cfg.current_draws;
    let on = |flag: bool, amps: f64| if flag { amps } else { 0.0 };
    a.drive_motors_active as f64 * d.drive_motor
        + on(a.mower_on, d.mower)
        + on(a.pump_on, d.pump)
        + on(a.controller_on, d.controller)
        + a.h_actuators_active as f64 * d.horizontal_actuator
        + on(a.v_actuator_active, d.vertical_actuator)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryState {
    soc: f64,
    capacity: f64,
}

impl BatteryState {
    pub fn new(soc: f64, capacity: f64) -> Self {
        Self {
            soc: soc.clamp(0.0, capacity),
            capacity,
        }
    }

    pub fn full(capacity: f64) -> Self {
        Self::new(capacity, capacity)
    }

    pub fn soc(&self) -> f64 {
        self.soc
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn soc_pct(&self) -> f64 {
        100.0 * self.soc / self.capacity
    }

    pub fn is_full(&self) -> bool {
        self.soc >= self.capacity
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryStep {
    pub battery: BatteryState,
    /// Charge actually delivered to the loads, Ah.
    pub delivered: f64,
    /// Charge accepted from the panel, Ah.
    pub accepted: f64,
    /// The pack ran flat while the load exceeded the panel.
    pub depleted: bool,
}

/// Integrates the net current over `dt` seconds with clamping to
/// `[0, capacity]`. Negative inputs are treated as zero.
pub fn step_battery(b: BatteryState, draw: f64, solar_current: f64, dt: f64) -> BatteryStep {
    debug_assert!(dt > 0.0);
    let draw = draw.max(0.0);
    let solar = solar_current.max(0.0);
    let load = draw * dt / 3600.0;
    let gain = solar * dt / 3600.0;
    let next = b.soc + (solar - draw) * dt / 3600.0;
    if next <= 0.0 && draw > solar {
        return BatteryStep {
            battery: BatteryState { soc: 0.0, ..b },
            delivered: b.soc + gain,
            accepted: gain,
            depleted: true,
        };
    }
    if next >= b.capacity {
        return BatteryStep {
            battery: BatteryState { soc: b.capacity, ..b },
            delivered: load,
            accepted: b.capacity - b.soc + load,
            depleted: false,
        };
    }
    BatteryStep {
        battery: BatteryState { soc: next.max(0.0), ..b },
        delivered: load,
        accepted: gain,
        depleted: false,
    }
}

/// Hours a full battery of `capacity` Ah lasts at a constant `draw` A.
pub fn backup_hours(capacity: f64, draw: f64) -> Result<f64, PowerError> {
    if draw <= 0.0 {
        return Err(PowerError::UnboundedBackup);
    }
    Ok(capacity / draw)
}

/// Panel output current from rated power and terminal voltage.
pub fn panel_current(power: f64, voltage: f64) -> Result<f64, PowerError> {
    if voltage <= 0.0 {
        return Err(PowerError::NonPositiveVoltage(voltage));
    }
    Ok(power / voltage)
}

/// Hours to charge an empty battery of `capacity` Ah at `current` A.
pub fn charge_hours(capacity: f64, current: f64) -> Result<f64, PowerError> {
    if current <= 0.0 {
        return Err(PowerError::NonPositiveCurrent(current));
    }
    Ok(capacity / current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> RobotConfig {
        RobotConfig::prototype()
    }

    #[test]
    fn draw_examples() {
        let a = instantaneous_draw(&DeviceActivity::prototype_max(), &cfg());
        assert!((a - 0.62).abs() < 1e-12);
        assert_eq!(instantaneous_draw(&DeviceActivity::default(), &cfg()), 0.0);
        let b = instantaneous_draw(&DeviceActivity::conceptual_max(), &cfg());
        assert!((b - 1.72).abs() < 1e-12);
    }

    #[test]
    fn backup_examples() {
        assert!((backup_hours(4.5, 0.62).unwrap() - 7.258).abs() < 5e-4);
        assert!((backup_hours(4.5, 1.72).unwrap() - 2.616).abs() < 5e-4);
        assert_eq!(backup_hours(3.3, 3.3).unwrap(), 1.0);
        assert_eq!(backup_hours(4.5, 0.0), Err(PowerError::UnboundedBackup));
    }

    #[test]
    fn panel_examples() {
        assert!((panel_current(100.0, 21.0).unwrap() - 4.762).abs() < 5e-4);
        assert_eq!(panel_current(0.0, 21.0).unwrap(), 0.0);
        assert_eq!(panel_current(12.0, 12.0).unwrap(), 1.0);
        assert!(panel_current(100.0, 0.0).is_err());
        assert_eq!(charge_hours(4.5, 4.5).unwrap(), 1.0);
    }

    #[test]
    fn discharge_to_empty() {
        let full = BatteryState::full(4.5);
        let s = step_battery(full, 0.62, 0.0, 4.5 / 0.62 * 3600.0);
        assert!(s.battery.soc() < 1e-12);
        let over = step_battery(full, 0.62, 0.0, 7.3 * 3600.0);
        assert_eq!(over.battery.soc(), 0.0);
        assert!(over.depleted);
        assert!((over.delivered - 4.5).abs() < 1e-12);
    }

    #[test]
    fn solar_fills_in_an_hour() {
        let s = step_battery(BatteryState::new(0.0, 4.5), 0.0, 4.5, 3600.0);
        assert!(s.battery.is_full());
        assert!(!s.depleted);
        let more = step_battery(s.battery, 0.0, 4.5, 60.0);
        assert_eq!(more.battery.soc(), 4.5);
        assert_eq!(more.accepted, 0.0);
    }

    #[test]
    fn equilibrium() {
        let b = BatteryState::new(2.0, 4.5);
        let s = step_battery(b, 1.2, 1.2, 100.0);
        assert_eq!(s.battery.soc(), 2.0);
    }

    proptest! {
        #[test]
        fn discharge_matches_integral(draws in proptest::collection::vec(0.0f64..2.0, 1..200), dt in 0.01f64..1.0) {
            let mut b = BatteryState::full(4.5);
            let mut integral = 0.0;
            for d in &draws {
                b = step_battery(b, *d, 0.0, dt).battery;
                integral += d * dt / 3600.0;
            }
            prop_assert!(((4.5 - b.soc()) - integral).abs() < 1e-9);
        }

        #[test]
        fn substeps_match_one_step(draw in 0.0f64..2.0, solar in 0.0f64..5.0, soc in 0.5f64..4.0, n in 1usize..100) {
            let dt = 1.0;
            let mut b = BatteryState::new(soc, 4.5);
            for _ in 0..n {
                b = step_battery(b, draw, solar, dt).battery;
            }
            let one = step_battery(BatteryState::new(soc, 4.5), draw, solar, n as f64 * dt).battery;
            prop_assert!((b.soc() - one.soc()).abs() < 1e-9);
        }

        #[test]
        fn soc_stays_bounded_and_accounts(
            steps in proptest::collection::vec((0.0f64..3.0, 0.0f64..5.0, 0.01f64..600.0), 1..100)
        ) {
            let mut b = BatteryState::new(2.0, 4.5);
            let start = b.soc();
            let (mut out, mut inn) = (0.0, 0.0);
            for (d, s, dt) in steps {
                let st = step_battery(b, d, s, dt);
                b = st.battery;
                out += st.delivered;
                inn += st.accepted;
                prop_assert!(b.soc() >= 0.0 && b.soc() <= b.capacity());
                prop_assert!(st.delivered >= 0.0 && st.accepted >= 0.0);
            }
            prop_assert!((start - out + inn - b.soc()).abs() < 1e-9);
        }
    }
}
