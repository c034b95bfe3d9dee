//! Prints the built-in configuration presets as TOML, or validates a file.
//!
//!     cargo run -p spraybot --example config_presets -- robot.toml

use spraybot::RobotConfig;

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        match RobotConfig::load(&path) {
            Ok(cfg) => println!("{path} is valid:\n{}", cfg.to_toml_string()),
            Err(e) => {
                eprintln!("{path}: {e}");
                std::process::exit(2);
            }
        }
        return;
    }
    let presets = [
        ("prototype", RobotConfig::prototype()),
        ("conceptual design", RobotConfig::conceptual_design()),
        ("spec-sheet battery", RobotConfig::prototype().with_spec_sheet_battery()),
        ("nominal 120° cone", RobotConfig::prototype().with_nominal_cone()),
        ("blade as diameter", RobotConfig::prototype().with_blade_as_diameter()),
        ("rated pump flow", RobotConfig::prototype().with_rated_pump_flow()),
    ];
    for (name, cfg) in presets {
        println!("# {name}\n{}", cfg.to_toml_string());
    }
}
