//! Boom geometry: the reachable annulus, pitch height gain, and where each
//! nozzle sits for a few boom settings.

use spraybot::boom::{annulus_area, nozzle_pose, pitch_height_gain, BoomAxis, BoomState, NozzleSide};
use spraybot::units::{m_to_in, sqin_to_sqm};
use spraybot::{Pose2D, RobotConfig};

fn main() {
    let cfg = RobotConfig::prototype();
    let (r_min, r_max) = (m_to_in(cfg.nozzle_reach_min), m_to_in(cfg.nozzle_reach_max));
    let a = annulus_area(r_min, r_max).unwrap();
    println!("reach {r_min:.1}..{r_max:.1} in -> workspace {a:.1} in² ({:.3} m²)", sqin_to_sqm(a));
    println!("pitch gain (5 in offset, 20 in arm, 60°): {:.2} in", pitch_height_gain(5.0, 20.0, 60.0));

    let robot = Pose2D::new(0.0, 0.0, 0.0);
    let settings: [&[(BoomAxis, f64)]; 4] = [
        &[],
        &[(BoomAxis::Horizontal, 20.1)],
        &[(BoomAxis::Vertical, 10.0), (BoomAxis::Yaw, 45.0)],
        &[(BoomAxis::Pitch, -60.0)],
    ];
    for moves in settings {
        let mut boom = BoomState::default();
        let mut clamped = false;
        for &(axis, v) in moves {
            clamped |= boom.set(axis, axis.to_si(v), &cfg);
        }
        println!("boom {moves:?}{}", if clamped { " (clamped)" } else { "" });
        for side in NozzleSide::BOTH {
            let (n, _) = nozzle_pose(&robot, &boom, side, &cfg);
            println!(
                "  {side:?}: at ({:+.3}, {:+.3}, {:.3}) m, aim ({:+.2}, {:+.2}, {:+.2})",
                n.position.x, n.position.y, n.position.z, n.axis.x, n.axis.y, n.axis.z
            );
        }
    }
}
