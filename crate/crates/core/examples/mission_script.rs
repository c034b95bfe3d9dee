//! Parses a mission script (from a file or a built-in sample), runs it and
//! prints the report and a few telemetry frames.
//!
//!     cargo run -p spraybot --example mission_script -- missions/mow_and_spray.txt

use spraybot::sim::{SimOptions, Simulator};
use spraybot::{FieldGrid, MissionScript, RobotConfig};

const SAMPLE: &str = "\
# spray a strip, spin round, mow back
0    NOZZLE 7
0    BOOM pitch -35
0    SEND U
0    SEND F
2    SEND u      # stops; the pump pin drops on the next byte
2    SEND W
2    SEND L
2.5  SEND F
4.5  SEND S
5    END
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_owned(),
    };
    let script = MissionScript::parse(&text)?;
    let cfg = RobotConfig { spray_target_height: 0.762, ..RobotConfig::prototype() };
    let opts = SimOptions::default();
    script.validate_for(&cfg, opts.dt)?;

    let mut sim = Simulator::new(cfg, FieldGrid::new(10.0, 10.0, 0.05)?, opts)?;
    let mut shown = 0;
    let report = sim.run(&script, |f| {
        if f.tick % 20 == 0 && shown < 8 {
            shown += 1;
            println!(
                "t {:>5.2}  ({:.2}, {:.2}) {:>8}  mower {}  pump {}  soc {:.3}%",
                f.t, f.x, f.y, f.motion.to_string(), f.mower_pin, f.pump_pin, f.soc_pct
            );
        }
    })?;
    println!("{}", report.to_json());
    Ok(())
}
