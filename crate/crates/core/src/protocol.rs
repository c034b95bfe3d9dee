//! Emulation of the on-board remote-control program.
//!
//! The robot listens on a transparent serial link for single-byte commands.
//! For every byte received it first stops all four motors, then writes the
//! mower and pump output pins from their flags, and only then dispatches on
//! the byte. Flag commands therefore reach the pins one byte late, and every
//! byte (including unknown ones) stops the robot before anything else
//! happens. With no bytes arriving, the outputs hold indefinitely.
//!
//! [`ControllerMode::Faithful`] reproduces that order exactly.
//! [`ControllerMode::Corrected`] updates the flags before writing the pins,
//! honours a configurable PWM level, and turns with the faster outer side
//! rather than spinning in place.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ControllerError;
use crate::kinematics::{Direction, DriveState, MotorChannelState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Command {
    Forward,
    Back,
    Left,
    Right,
    MowerOn,
    MowerOff,
    PumpOn,
    PumpOff,
    Other(u8),
}

impl Command {
    pub fn from_byte(b: u8) -> Self {
        match b {
            b'F' => Self::Forward,
            b'B' => Self::Back,
            b'L' => Self::Left,
            b'R' => Self::Right,
            b'W' => Self::MowerOn,
            b'w' => Self::MowerOff,
            b'U' => Self::PumpOn,
            b'u' => Self::PumpOff,
            other => Self::Other(other),
        }
    }

    pub fn to_byte(self) -> u8 {
        match self {
            Self::Forward => b'F',
            Self::Back => b'B',
            Self::Left => b'L',
            Self::Right => b'R',
            Self::MowerOn => b'W',
            Self::MowerOff => b'w',
            Self::PumpOn => b'U',
            Self::PumpOff => b'u',
            Self::Other(b) => b,
        }
    }
}

/// Byte the station sends for the operator's Stop key. It is not part of the
/// command set and stops the robot through the default path.
pub const STOP_BYTE: u8 = b'S';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Motion {
    #[default]
    Stopped,
    Forward,
    Backward,
    Left,
    Right,
}

impl fmt::Display for Motion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Stopped => "STOPPED",
            Self::Forward => "FORWARD",
            Self::Backward => "BACKWARD",
            Self::Left => "LEFT",
            Self::Right => "RIGHT",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ControllerMode {
    #[default]
    Faithful,
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControllerState {
    pub motion: Motion,
    pub mower_flag: bool,
    pub pump_flag: bool,
    pub mower_pin: bool,
    pub pump_pin: bool,
    pub speed_pwm: u8,
    pub mode: ControllerMode,
    /// Channel outputs as last written; held until the next byte.
    pub drive: DriveState,
}

impl ControllerState {
    pub fn new(mode: ControllerMode) -> Self {
        Self {
            motion: Motion::Stopped,
            mower_flag: false,
            pump_flag: false,
            mower_pin: false,
            pump_pin: false,
            speed_pwm: 255,
            mode,
            drive: DriveState::released(),
        }
    }
}

impl Default for ControllerState {
    fn default() -> Self {
        Self::new(ControllerMode::Faithful)
    }
}

fn channel(direction: Direction, pwm: u8) -> MotorChannelState {
    MotorChannelState::new(direction, pwm)
}

fn motion_outputs(motion: Motion, pwm: u8, mode: ControllerMode) -> DriveState {
    use Direction::{Backward, Forward};
    match (motion, mode) {
        (Motion::Stopped, _) => DriveState::released(),
        (Motion::Forward, _) => DriveState::uniform(Forward, pwm),
        (Motion::Backward, _) => DriveState::uniform(Backward, pwm),
        (Motion::Left, ControllerMode::Faithful) => {
            DriveState::pairs(channel(Backward, pwm), channel(Forward, pwm))
        }
        (Motion::Right, ControllerMode::Faithful) => {
            DriveState::pairs(channel(Forward, pwm), channel(Backward, pwm))
        }
        (Motion::Left, ControllerMode::Corrected) => {
            DriveState::pairs(channel(Forward, pwm / 2), channel(Forward, pwm))
        }
        (Motion::Right, ControllerMode::Corrected) => {
            DriveState::pairs(channel(Forward, pwm), channel(Forward, pwm / 2))
        }
    }
}

fn dispatch(s: &mut ControllerState, cmd: Command) {
    let motion = match cmd {
        Command::Forward => Motion::Forward,
        Command::Back => Motion::Backward,
        Command::Left => Motion::Left,
        Command::Right => Motion::Right,
        Command::MowerOn => {
            s.mower_flag = true;
            return;
        }
        Command::MowerOff => {
            s.mower_flag = false;
            return;
        }
        Command::PumpOn => {
            s.pump_flag = true;
            return;
        }
        Command::PumpOff => {
            s.pump_flag = false;
            return;
        }
        Command::Other(_) => return,
    };
    s.motion = motion;
    s.drive = motion_outputs(motion, s.speed_pwm, s.mode);
}

fn write_pins(s: &mut ControllerState) {
    s.mower_pin = s.mower_flag;
    s.pump_pin = s.pump_flag;
}

/// Processes one received byte.
pub fn step_controller(mut s: ControllerState, byte: u8) -> (ControllerState, DriveState) {
    let cmd = Command::from_byte(byte);
    s.motion = Motion::Stopped;
    s.drive = DriveState::released();
    match s.mode {
        ControllerMode::Faithful => {
            write_pins(&mut s);
            dispatch(&mut s, cmd);
        }
        ControllerMode::Corrected => {
            dispatch(&mut s, cmd);
            write_pins(&mut s);
        }
    }
    (s, s.drive)
}

/// Outputs while no byte is pending: whatever was last written.
pub fn idle_hold(s: &ControllerState) -> DriveState {
    s.drive
}

/// Changes the PWM level used by subsequent motion commands.
pub fn set_speed(mut s: ControllerState, pwm: u8) -> Result<ControllerState, ControllerError> {
    if s.mode == ControllerMode::Faithful {
        return Err(ControllerError::SpeedInFaithfulMode);
    }
    s.speed_pwm = pwm;
    Ok(s)
}
