//! Current budget and battery endurance, closed form and simulated.

use spraybot::power::{backup_hours, charge_hours, instantaneous_draw, panel_current, DeviceActivity};
use spraybot::sim::{run_script, SimOptions};
use spraybot::{FieldGrid, MissionScript, RobotConfig};

fn main() {
    let endurance = MissionScript::parse("0 SEND W\n0 SEND U\n0 SEND F\n30000 END\n").unwrap();
    for (name, cfg, load) in [
        ("prototype", RobotConfig::prototype(), DeviceActivity::prototype_max()),
        ("conceptual design", RobotConfig::conceptual_design(), DeviceActivity::conceptual_max()),
    ] {
        let draw = instantaneous_draw(&load, &cfg);
        let closed = backup_hours(cfg.battery_capacity_ah, draw).unwrap();
        let started = std::time::Instant::now();
        let r = run_script(&endurance, &cfg, FieldGrid::new(10.0, 10.0, 0.05).unwrap(), SimOptions::default())
            .unwrap();
        println!(
            "{name}: {draw:.2} A -> {closed:.3} h closed form, {:.3} h simulated ({:.2} s wall)",
            r.battery_dead_at_s.unwrap_or(f64::NAN) / 3600.0,
            started.elapsed().as_secs_f64()
        );
    }

    let cfg = RobotConfig::prototype();
    println!(
        "panel {} W at {} V: {:.2} A by formula, {} A configured",
        cfg.panel_power_w,
        cfg.panel_voltage,
        panel_current(cfg.panel_power_w, cfg.panel_voltage).unwrap(),
        cfg.panel_current_a
    );
    let empty = RobotConfig { initial_soc_ah: Some(0.0), ..cfg.clone() };
    let r = run_script(
        &MissionScript::parse("0 SOLAR on\n4000 END\n").unwrap(),
        &empty,
        FieldGrid::new(10.0, 10.0, 0.05).unwrap(),
        SimOptions::default(),
    )
    .unwrap();
    println!(
        "charge from empty: {:.3} h closed form, full after {:.3} h simulated",
        charge_hours(cfg.battery_capacity_ah, cfg.panel_current_a).unwrap(),
        r.battery_full_at_s.unwrap_or(f64::NAN) / 3600.0
    );
}
