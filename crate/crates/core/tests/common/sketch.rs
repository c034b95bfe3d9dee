//! Line-by-line transcription of the robot's Arduino program, used as an
//! independent oracle for the controller emulation.
//!
//! Only the observable hardware is modelled: the four `AF_DCMotor` channels
//! (speed and run mode), the two digital output pins, and the globals. The
//! `switch` runs on every `loop()` pass against the last received `command`,
//! exactly as printed; passes with no byte available are "idle" passes.

#![allow(dead_code)]

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Run {
    Forward,
    Backward,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AfDcMotor {
    pub speed: u8,
    pub run: Run,
}

impl AfDcMotor {
    fn set_speed(&mut self, s: u8) {
        self.speed = s;
    }
    fn run(&mut self, r: Run) {
        self.run = r;
    }
}

const HIGH: bool = true;
const LOW: bool = false;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sketch {
    pub mower: bool,
    pub pump: bool,
    pub motor1: AfDcMotor,
    pub motor2: AfDcMotor,
    pub motor3: AfDcMotor,
    pub motor4: AfDcMotor,
    /// `char command;` is a zero-initialised global.
    pub command: u8,
    pub mower_fr: bool,
    pub pump_re: bool,
    serial: std::collections::VecDeque<u8>,
}

impl Default for Sketch {
    fn default() -> Self {
        let m = AfDcMotor { speed: 0, run: Run::Release };
        Self {
            mower: false,
            pump: false,
            motor1: m,
            motor2: m,
            motor3: m,
            motor4: m,
            command: 0,
            mower_fr: LOW,
            pump_re: LOW,
            serial: Default::default(),
        }
    }
}

impl Sketch {
    pub fn receive(&mut self, bytes: &[u8]) {
        self.serial.extend(bytes);
    }

    pub fn available(&self) -> usize {
        self.serial.len()
    }

    fn digital_write(pin: &mut bool, level: bool) {
        *pin = level;
    }

    pub fn loop_once(&mut self) {
        if self.available() > 0 {
            self.command = self.serial.pop_front().unwrap();
            self.stop();
            if self.mower {
                Self::digital_write(&mut self.mower_fr, HIGH);
            }
            if !self.mower {
                Self::digital_write(&mut self.mower_fr, LOW);
            }
            if self.pump {
                Self::digital_write(&mut self.pump_re, HIGH);
            }
            if !self.pump {
                Self::digital_write(&mut self.pump_re, LOW);
            }
        }
        match self.command {
            b'F' => self.forward(),
            b'B' => self.back(),
            b'L' => self.left(),
            b'R' => self.right(),
            b'W' => self.mower = true,
            b'w' => self.mower = false,
            b'U' => self.pump = true,
            b'u' => self.pump = false,
            _ => {}
        }
    }

    fn forward(&mut self) {
        self.motor1.set_speed(255);
        self.motor1.run(Run::Forward);
        self.motor2.set_speed(255);
        self.motor2.run(Run::Forward);
        self.motor3.set_speed(255);
        self.motor3.run(Run::Forward);
        self.motor4.set_speed(255);
        self.motor4.run(Run::Forward);
    }

    fn back(&mut self) {
        self.motor1.set_speed(255);
        self.motor1.run(Run::Backward);
        self.motor2.set_speed(255);
        self.motor2.run(Run::Backward);
        self.motor3.set_speed(255);
        self.motor3.run(Run::Backward);
        self.motor4.set_speed(255);
        self.motor4.run(Run::Backward);
    }

    fn left(&mut self) {
        self.motor1.set_speed(255);
        self.motor1.run(Run::Backward);
        self.motor2.set_speed(255);
        self.motor2.run(Run::Backward);
        self.motor3.set_speed(255);
        self.motor3.run(Run::Forward);
        self.motor4.set_speed(255);
        self.motor4.run(Run::Forward);
    }

    fn right(&mut self) {
        self.motor1.set_speed(255);
        self.motor1.run(Run::Forward);
        self.motor2.set_speed(255);
        self.motor2.run(Run::Forward);
        self.motor3.set_speed(255);
        self.motor3.run(Run::Backward);
        self.motor4.set_speed(255);
        self.motor4.run(Run::Backward);
    }

    fn stop(&mut self) {
        self.motor1.set_speed(0);
        self.motor1.run(Run::Release);
        self.motor2.set_speed(0);
        self.motor2.run(Run::Release);
        self.motor3.set_speed(0);
        self.motor3.run(Run::Release);
        self.motor4.set_speed(0);
        self.motor4.run(Run::Release);
    }

    pub fn motors(&self) -> [AfDcMotor; 4] {
        [self.motor1, self.motor2, self.motor3, self.motor4]
    }

    /// Name of the motion the motor pattern corresponds to.
    pub fn motion_name(&self) -> &'static str {
        use Run::*;
        match self.motors().map(|m| m.run) {
            [Release, Release, Release, Release] => "STOPPED",
            [Forward, Forward, Forward, Forward] => "FORWARD",
            [Backward, Backward, Backward, Backward] => "BACKWARD",
            [Backward, Backward, Forward, Forward] => "LEFT",
            [Forward, Forward, Backward, Backward] => "RIGHT",
            other => panic!("pattern the sketch cannot produce: {other:?}"),
        }
    }
}
