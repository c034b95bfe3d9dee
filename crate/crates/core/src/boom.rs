//! The four-axis spray boom: vertical lift, horizontal slide, boom yaw and
//! nozzle pitch, plus the closed-form workspace formulas.
//!
//! Frame conventions: the robot faces +x of its body frame, +y is left and
//! +z up. The left nozzle arm points at `heading + 90° - yaw`, the right arm
//! at `heading - 90° - yaw` (the T-joint rotates both arms together). Positive
//! pitch tilts the spray axis upward from horizontal, away from the chassis.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::RobotConfig;
use crate::error::GeometryError;
use crate::geometry::{Pose2D, Vec3};
use crate::units::{in_to_m, m_to_in};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoomAxis {
    Vertical,
    Horizontal,
    Yaw,
    Pitch,
}

impl BoomAxis {
    pub const ALL: [BoomAxis; 4] = [Self::Vertical, Self::Horizontal, Self::Yaw, Self::Pitch];

    /// Converts an operator value (inches for slides, degrees for angles) to SI.
    pub fn to_si(self, value: f64) -> f64 {
        match self {
            Self::Vertical | Self::Horizontal => in_to_m(value),
            Self::Yaw | Self::Pitch => value.to_radians(),
        }
    }

    pub fn from_si(self, value: f64) -> f64 {
        match self {
            Self::Vertical | Self::Horizontal => m_to_in(value),
            Self::Yaw | Self::Pitch => value.to_degrees(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Vertical => "vertical",
            Self::Horizontal => "horizontal",
            Self::Yaw => "yaw",
            Self::Pitch => "pitch",
        }
    }
}

impl fmt::Display for BoomAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoomAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown boom axis `{s}` (vertical|horizontal|yaw|pitch)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum NozzleSide {
    Left,
    Right,
}

impl NozzleSide {
    pub const BOTH: [NozzleSide; 2] = [Self::Left, Self::Right];
}

/// Boom set-point in SI units: extensions in metres, angles in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BoomState {
    pub vertical_ext: f64,
    pub horizontal_ext: f64,
    pub yaw: f64,
    pub pitch: f64,
}

impl BoomState {
    pub fn get(&self, axis: BoomAxis) -> f64 {
        match axis {
            BoomAxis::Vertical => self.vertical_ext,
            BoomAxis::Horizontal => self.horizontal_ext,
            BoomAxis::Yaw => self.yaw,
            BoomAxis::Pitch => self.pitch,
        }
    }

    fn slot(&mut self, axis: BoomAxis) -> &mut f64 {
        match axis {
            BoomAxis::Vertical => &mut self.vertical_ext,
            BoomAxis::Horizontal => &mut self.horizontal_ext,
            BoomAxis::Yaw => &mut self.yaw,
            BoomAxis::Pitch => &mut self.pitch,
        }
    }

    pub fn limits(axis: BoomAxis, cfg: &RobotConfig) -> (f64, f64) {
        match axis {
            BoomAxis::Vertical => (0.0, cfg.vertical_travel()),
            BoomAxis::Horizontal => (0.0, cfg.horizontal_travel()),
            BoomAxis::Yaw => (-cfg.boom_yaw_limit, cfg.boom_yaw_limit),
            BoomAxis::Pitch => (-cfg.nozzle_pitch_limit, cfg.nozzle_pitch_limit),
        }
    }

    /// Sets one axis (SI value), clamping into range. Returns true if the
    /// value had to be clamped. Non-finite input clamps to the lower limit.
    pub fn set(&mut self, axis: BoomAxis, value: f64, cfg: &RobotConfig) -> bool {
        let (lo, hi) = Self::limits(axis, cfg);
        let clamped = if value.is_nan() { lo } else { value.clamp(lo, hi) };
        *self.slot(axis) = clamped;
        clamped != value
    }

    /// Returns this state clamped into range and whether anything moved.
    pub fn clamped(&self, cfg: &RobotConfig) -> (BoomState, bool) {
        let mut out = *self;
        let mut any = false;
        for axis in BoomAxis::ALL {
            any |= out.set(axis, self.get(axis), cfg);
        }
        (out, any)
    }
}

/// Which linear actuators moved during a [`BoomActuators::step`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ActuatorMotion {
    pub vertical: bool,
    pub horizontal: bool,
}

/// Boom position plus set-point. With no actuator rate the slides jump to the
/// set-point; otherwise they travel at `rate` m/s. Angles are always
/// positioned by hand and jump immediately.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoomActuators {
    pub position: BoomState,
    pub target: BoomState,
}

impl BoomActuators {
    pub fn command(&mut self, axis: BoomAxis, value: f64, cfg: &RobotConfig) -> bool {
        let clamped = self.target.set(axis, value, cfg);
        if matches!(axis, BoomAxis::Yaw | BoomAxis::Pitch) || cfg.actuator_rate.is_none() {
            *self.position.slot(axis) = self.target.get(axis);
        }
        clamped
    }

    pub fn step(&mut self, dt: f64, rate: Option<f64>) -> ActuatorMotion {
        let Some(rate) = rate else {
            self.position = self.target;
            return ActuatorMotion::default();
        };
        let max_step = rate * dt;
        let mut advance = |axis: BoomAxis| {
            let (pos, tgt) = (self.position.get(axis), self.target.get(axis));
            let delta = tgt - pos;
            if delta == 0.0 {
                return false;
            }
            *self.position.slot(axis) = if delta.abs() <= max_step {
                tgt
            } else {
                pos + max_step.copysign(delta)
            };
            true
        };
        ActuatorMotion {
            vertical: advance(BoomAxis::Vertical),
            horizontal: advance(BoomAxis::Horizontal),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NozzlePose {
    /// Field-frame position in metres; `z` is height above ground.
    pub position: Vec3,
    /// Unit spray direction.
    pub axis: Vec3,
}

/// Field-frame pose of one nozzle. The boom is clamped into range first; the
/// flag reports whether that changed anything.
pub fn nozzle_pose(
    robot: &Pose2D,
    boom: &BoomState,
    side: NozzleSide,
    cfg: &RobotConfig,
) -> (NozzlePose, bool) {
    let (boom, clamped) = boom.clamped(cfg);
    let z = cfg.nozzle_height_min + boom.vertical_ext;
    let r = cfg.nozzle_reach_min + boom.horizontal_ext;
    let arm = match side {
        NozzleSide::Left => robot.heading() + FRAC_PI_2 - boom.yaw,
        NozzleSide::Right => robot.heading() - FRAC_PI_2 - boom.yaw,
    };
    let (s, c) = arm.sin_cos();
    let (ps, pc) = boom.pitch.sin_cos();
    let pose = NozzlePose {
        position: Vec3::new(robot.x + r * c, robot.y + r * s, z),
        axis: Vec3::new(pc * c, pc * s, ps).normalized(),
    };
    (pose, clamped)
}

/// Area swept between two concentric circles, `π(r_max² − r_min²)`.
pub fn annulus_area(r_min: f64, r_max: f64) -> Result<f64, GeometryError> {
    if r_min < 0.0 {
        return Err(GeometryError::NegativeLength(r_min));
    }
    if r_min > r_max {
        return Err(GeometryError::InvertedAnnulus { r_min, r_max });
    }
    Ok(PI * (r_max * r_max - r_min * r_min))
}

/// Height gained by swinging an arm of length √(offset² + arm²) up by
/// `angle_deg` from horizontal.
pub fn pitch_height_gain(offset: f64, arm: f64, angle_deg: f64) -> f64 {
    debug_assert!(offset >= 0.0 && arm >= 0.0);
    offset.hypot(arm) * angle_deg.to_radians().sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> RobotConfig {
        RobotConfig::prototype()
    }

    fn boom_in(v: f64, h: f64, yaw: f64, pitch: f64) -> BoomState {
        BoomState {
            vertical_ext: in_to_m(v),
            horizontal_ext: in_to_m(h),
            yaw: yaw.to_radians(),
            pitch: pitch.to_radians(),
        }
    }

    #[test]
    fn nozzle_height_and_reach_extremes() {
        let (p, clamped) = nozzle_pose(&Pose2D::origin(), &boom_in(0.0, 0.0, 0.0, 0.0), NozzleSide::Left, &cfg());
        assert!(!clamped);
        assert!((p.position.z - 1.18872).abs() < 1e-12);

        let (p, _) = nozzle_pose(&Pose2D::origin(), &boom_in(10.0, 20.1, 0.0, 0.0), NozzleSide::Left, &cfg());
        assert!((m_to_in(p.position.z) - 56.8).abs() < 1e-9);
        let reach = p.position.x.hypot(p.position.y);
        assert!((m_to_in(reach) - 32.6).abs() < 1e-9);
    }

    #[test]
    fn left_nozzle_at_zero_position() {
        // 12.5 in = 0.3175 m straight to the left
        let (p, _) = nozzle_pose(&Pose2D::origin(), &BoomState::default(), NozzleSide::Left, &cfg());
        assert!(p.position.x.abs() < 1e-12);
        assert!((p.position.y - 0.3175).abs() < 1e-12);
        assert!((p.axis.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_is_clamped_and_reported() {
        let mut b = BoomState::default();
        assert!(b.set(BoomAxis::Vertical, in_to_m(15.0), &cfg()));
        assert!((m_to_in(b.vertical_ext) - 10.0).abs() < 1e-9);
        assert!(b.set(BoomAxis::Pitch, f64::NAN, &cfg()));
        assert!(b.pitch.is_finite());
        assert!(!b.set(BoomAxis::Yaw, 0.5, &cfg()));

        let wild = boom_in(-3.0, 99.0, 120.0, -50.0);
        let (p, clamped) = nozzle_pose(&Pose2D::origin(), &wild, NozzleSide::Right, &cfg());
        assert!(clamped);
        assert!(p.position.z >= cfg().nozzle_height_min - 1e-12);
    }

    #[test]
    fn annulus_examples() {
        let a = annulus_area(12.5, 32.6).unwrap();
        assert!((a - 2847.9).abs() < 0.05);
        assert_eq!(annulus_area(3.0, 3.0).unwrap(), 0.0);
        assert_eq!(annulus_area(0.0, 1.0).unwrap(), PI);
        assert!(matches!(annulus_area(2.0, 1.0), Err(GeometryError::InvertedAnnulus { .. })));
        // 2847.9 in^2 is 1.837 m^2
        assert!((crate::units::sqin_to_sqm(a) - 1.837).abs() < 5e-4);
    }

    #[test]
    fn pitch_gain_examples() {
        assert!((pitch_height_gain(5.0, 20.0, 60.0) - 17.85).abs() < 0.01);
        assert_eq!(pitch_height_gain(5.0, 20.0, 0.0), 0.0);
        assert!((pitch_height_gain(0.0, 20.0, 90.0) - 20.0).abs() < 1e-12);
    }

    #[test]
    fn rate_limited_slide() {
        let mut c = cfg();
        c.actuator_rate = Some(0.012);
        let mut act = BoomActuators::default();
        act.command(BoomAxis::Vertical, in_to_m(10.0), &c);
        let mut ticks = 0;
        while act.step(0.05, c.actuator_rate).vertical {
            ticks += 1;
        }
        // 254 mm at 12 mm/s -> 21.17 s -> 424 ticks of 0.05 s
        assert_eq!(ticks, 424);
        assert_eq!(act.position, act.target);
    }

    proptest! {
        #[test]
        fn height_and_reach_are_affine(v in 0.0f64..10.0, h in 0.0f64..20.1, yaw in -90.0f64..90.0) {
            let (p, _) = nozzle_pose(&Pose2D::origin(), &boom_in(v, h, yaw, 0.0), NozzleSide::Left, &cfg());
            prop_assert!((m_to_in(p.position.z) - (46.8 + v)).abs() < 1e-9);
            let reach = p.position.x.hypot(p.position.y);
            prop_assert!((m_to_in(reach) - (12.5 + h)).abs() < 1e-9);
        }

        #[test]
        fn sides_mirror_at_zero_yaw(
            v in 0.0f64..10.0, h in 0.0f64..20.1, pitch in -40.0f64..40.0,
            x in -3.0f64..3.0, y in -3.0f64..3.0, heading in -3.1f64..3.1
        ) {
            let robot = Pose2D::new(x, y, heading);
            let b = boom_in(v, h, 0.0, pitch);
            let (l, _) = nozzle_pose(&robot, &b, NozzleSide::Left, &cfg());
            let (r, _) = nozzle_pose(&robot, &b, NozzleSide::Right, &cfg());
            // reflect right through the robot's longitudinal axis
            let (s, c) = heading.sin_cos();
            let mirror = |px: f64, py: f64| {
                let (dx, dy) = (px - x, py - y);
                let along = dx * c + dy * s;
                let lateral = -dx * s + dy * c;
                (x + along * c + lateral * s, y + along * s - lateral * c)
            };
            let (mx, my) = mirror(r.position.x, r.position.y);
            prop_assert!((mx - l.position.x).abs() < 1e-9 && (my - l.position.y).abs() < 1e-9);
            prop_assert!((l.position.z - r.position.z).abs() < 1e-12);
            prop_assert!((l.axis.z - r.axis.z).abs() < 1e-12);
            prop_assert!((l.axis.norm() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn full_reach_yaw_sweep_is_circular(yaw in -90.0f64..=90.0) {
            let (p, _) = nozzle_pose(&Pose2D::origin(), &boom_in(0.0, 20.1, yaw, 0.0), NozzleSide::Right, &cfg());
            prop_assert!((m_to_in(p.position.x.hypot(p.position.y)) - 32.6).abs() < 1e-9);
        }
    }
}
