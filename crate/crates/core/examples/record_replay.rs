//! Drives a live session by hand, then replays its recording as a script and
//! checks that the reports are identical.

use spraybot::session::LiveSession;
use spraybot::sim::{run_script, SimOptions};
use spraybot::{FieldGrid, RobotConfig};

fn main() {
    let cfg = RobotConfig::prototype();
    let field = FieldGrid::new(10.0, 10.0, 0.05).unwrap();
    let mut live = LiveSession::new(cfg.clone(), field.clone(), SimOptions::default()).unwrap();
    live.connect_control().unwrap();

    let plan: &[(u64, &str)] = &[
        (0, "W"),
        (0, "F"),
        (30, "!NOZZLE 6"),
        (30, "U"),
        (45, "L"),
        (50, "!BOOM yaw 30"),
        (50, "F"),
        (90, "S"),
    ];
    for tick in 0..120 {
        for &(_, action) in plan.iter().filter(|(t, _)| *t == tick) {
            match action.strip_prefix('!') {
                Some(directive) => live.directive(directive).unwrap(),
                None => live.push_bytes(action.as_bytes()),
            }
        }
        live.tick();
    }

    let script = live.recorded_script();
    println!("recorded session:\n{}", script.to_text());
    let replay = run_script(&script, &cfg, field, SimOptions::default()).unwrap();
    let same = replay.to_json() == live.report().to_json();
    println!("replay identical: {same}");
    println!("{}", replay.to_json());
    assert!(same);
}
