//! Skid-steer drive: motor-shield channel states to body twist, and exact
//! unicycle pose integration.

use serde::{Deserialize, Serialize};

use crate::config::RobotConfig;
use crate::geometry::Pose2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    Forward,
    Backward,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotorChannelState {
    pub direction: Direction,
    pub pwm: u8,
}

impl MotorChannelState {
    pub const RELEASED: Self = Self {
        direction: Direction::Release,
        pwm: 0,
    };

    pub fn new(direction: Direction, pwm: u8) -> Self {
        Self { direction, pwm }
    }

    /// Signed fraction of full speed in [-1, 1].
    pub fn duty(&self) -> f64 {
        let mag = self.pwm as f64 / 255.0;
        match self.direction {
            Direction::Forward => mag,
            Direction::Backward => -mag,
            Direction::Release => 0.0,
        }
    }

    pub fn is_driving(&self) -> bool {
        self.direction != Direction::Release && self.pwm > 0
    }
}

/// The four shield channels M1..M4, in terminal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriveState {
    pub channels: [MotorChannelState; 4],
}

impl Default for DriveState {
    fn default() -> Self {
        Self::released()
    }
}

impl DriveState {
    pub fn released() -> Self {
        Self {
            channels: [MotorChannelState::RELEASED; 4],
        }
    }

    /// M1,M2 get `first`; M3,M4 get `second`.
    pub fn pairs(first: MotorChannelState, second: MotorChannelState) -> Self {
        Self {
            channels: [first, first, second, second],
        }
    }

    pub fn uniform(direction: Direction, pwm: u8) -> Self {
        let c = MotorChannelState::new(direction, pwm);
        Self::pairs(c, c)
    }

    pub fn active_motors(&self) -> u8 {
        self.channels.iter().filter(|c| c.is_driving()).count() as u8
    }

    pub fn reversed(&self) -> Self {
        let mut out = *self;
        for c in &mut out.channels {
            c.direction = match c.direction {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
                Direction::Release => Direction::Release,
            };
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Twist {
    /// Forward speed, m/s.
    pub v: f64,
    /// Yaw rate, rad/s, CCW positive.
    pub omega: f64,
}

/// Left side is M1,M2 and right side M3,M4 unless `cfg.swap_sides`.
pub fn body_twist(drive: &DriveState, cfg: &RobotConfig) -> Twist {
    let ch = &drive.channels;
    let pair_a = (ch[0].duty() + ch[1].duty()) / 2.0 * cfg.v_max;
    let pair_b = (ch[2].duty() + ch[3].duty()) / 2.0 * cfg.v_max;
    let (left, right) = if cfg.swap_sides {
        (pair_b, pair_a)
    } else {
        (pair_a, pair_b)
    };
    Twist {
        v: (left + right) / 2.0,
        omega: (right - left) / cfg.track_width,
    }
}

const STRAIGHT_EPS: f64 = 1e-9;

/// Advances `pose` by a constant twist for `dt` seconds along the exact arc.
pub fn integrate_pose(pose: Pose2D, twist: Twist, dt: f64) -> Pose2D {
    debug_assert!(dt > 0.0);
    let th = pose.heading();
    let Twist { v, omega } = twist;
    if omega.abs() < STRAIGHT_EPS {
        return Pose2D::new(pose.x + v * dt * th.cos(), pose.y + v * dt * th.sin(), th);
    }
    let th1 = th + omega * dt;
    let r = v / omega;
    Pose2D::new(
        pose.x + r * (th1.sin() - th.sin()),
        pose.y - r * (th1.cos() - th.cos()),
        th1,
    )
}
