//! Blade area and a mowed lap, comparing the two blade interpretations.

use spraybot::sim::{run_script, SimOptions};
use spraybot::spray::mower_active_area;
use spraybot::units::sqm_to_sqin;
use spraybot::{FieldGrid, MissionScript, RobotConfig};

const LAP: &str = "\
0   SEND W
0   SEND F
2   SEND L
2.26 SEND F
4   SEND S
4.5 END
";

fn main() {
    let script = MissionScript::parse(LAP).unwrap();
    for (name, cfg) in [
        ("31 cm sweep radius", RobotConfig::prototype()),
        ("31 cm blade diameter", RobotConfig::prototype().with_blade_as_diameter()),
    ] {
        let disc = mower_active_area(cfg.blade_sweep_radius);
        println!("{name}: blade disc {disc:.4} m² ({:.0} in²)", sqm_to_sqin(disc));
        for cell in [0.05, 0.025, 0.01] {
            let r = run_script(&script, &cfg, FieldGrid::new(10.0, 10.0, cell).unwrap(), SimOptions::default())
                .unwrap();
            println!("  lap at {cell} m cells: {:.4} m² mowed over {:.2} m", r.area_mowed_m2, r.distance_m);
        }
    }
}
