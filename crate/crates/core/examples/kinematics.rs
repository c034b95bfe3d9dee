//! Drives a square-ish path with raw drive states and prints the pose trace.

use spraybot::kinematics::{body_twist, integrate_pose, Direction, DriveState, MotorChannelState};
use spraybot::{Pose2D, RobotConfig};

fn main() {
    let cfg = RobotConfig::prototype();
    let forward = DriveState::uniform(Direction::Forward, 255);
    let spin_left = DriveState::pairs(
        MotorChannelState::new(Direction::Backward, 255),
        MotorChannelState::new(Direction::Forward, 255),
    );
    let spin = body_twist(&spin_left, &cfg);
    let quarter_turn = std::f64::consts::FRAC_PI_2 / spin.omega;
    println!("v_max {} m/s, spin rate {:.3} rad/s, quarter turn {:.4} s", cfg.v_max, spin.omega, quarter_turn);

    let mut pose = Pose2D::origin();
    for leg in 0..4 {
        pose = integrate_pose(pose, body_twist(&forward, &cfg), 2.0);
        pose = integrate_pose(pose, spin, quarter_turn);
        println!(
            "after leg {}: x {:+.4} m  y {:+.4} m  heading {:+.2}°",
            leg + 1,
            pose.x,
            pose.y,
            pose.heading().to_degrees()
        );
    }

    // a gentle arc: one side at half duty
    let arc = DriveState::pairs(
        MotorChannelState::new(Direction::Forward, 128),
        MotorChannelState::new(Direction::Forward, 255),
    );
    let t = body_twist(&arc, &cfg);
    println!("half-duty arc: v {:.4} m/s, omega {:.4} rad/s, radius {:.3} m", t.v, t.omega, t.v / t.omega);
}
