#![allow(dead_code)]

pub mod sketch;

use rand::Rng;
use spraybot::boom::BoomAxis;
use spraybot::kinematics::Direction;
use spraybot::protocol::ControllerState;
use spraybot::script::{quantize, Event, EventKind};
use spraybot::MissionScript;

use sketch::{Run, Sketch};

/// Bytes the operator app can send, plus the stop key.
pub const COMMAND_BYTES: &[u8] = b"FBLRWwUuS";

/// A byte stream weighted toward real commands, with arbitrary bytes mixed in.
pub fn random_stream(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            if rng.random_bool(0.85) {
                COMMAND_BYTES[rng.random_range(0..COMMAND_BYTES.len())]
            } else {
                rng.random()
            }
        })
        .collect()
}

/// Compares every observable output of the emulated controller with the
/// reference program.
pub fn agree(reference: &Sketch, s: &ControllerState) -> Result<(), String> {
    for (k, (m, ch)) in reference.motors().iter().zip(s.drive.channels).enumerate() {
        let dir = match m.run {
            Run::Forward => Direction::Forward,
            Run::Backward => Direction::Backward,
            Run::Release => Direction::Release,
        };
        if dir != ch.direction || m.speed != ch.pwm {
            return Err(format!("motor{} {:?} vs {:?}", k + 1, m, ch));
        }
    }
    let checks = [
        ("mower flag", reference.mower, s.mower_flag),
        ("pump flag", reference.pump, s.pump_flag),
        ("mower pin", reference.mower_fr, s.mower_pin),
        ("pump pin", reference.pump_re, s.pump_pin),
    ];
    for (what, want, got) in checks {
        if want != got {
            return Err(format!("{what}: reference {want}, emulation {got}"));
        }
    }
    if reference.motion_name() != s.motion.to_string() {
        return Err(format!("motion: reference {}, emulation {}", reference.motion_name(), s.motion));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct FuzzShape {
    pub max_events: usize,
    pub max_end_s: f64,
    pub allow_speed: bool,
    pub dt: f64,
}

fn random_kind(rng: &mut impl Rng, allow_speed: bool) -> EventKind {
    match rng.random_range(0..if allow_speed { 10 } else { 9 }) {
        0..=4 => EventKind::Send(random_stream(rng, 1)[0]),
        5 => {
            let axis = BoomAxis::ALL[rng.random_range(0..4)];
            // deliberately reaches past the limits so clamping is exercised
            let v = match axis {
                BoomAxis::Vertical | BoomAxis::Horizontal => rng.random_range(-5.0..30.0),
                _ => rng.random_range(-200.0..200.0),
            };
            EventKind::Boom(axis, v)
        }
        6 => EventKind::Nozzle(rng.random_range(0..=7)),
        7 | 8 => EventKind::Solar(rng.random()),
        _ => EventKind::Speed(rng.random()),
    }
}

pub fn random_script(rng: &mut impl Rng, shape: FuzzShape) -> MissionScript {
    let end = rng.random_range(0.0..shape.max_end_s);
    let n = rng.random_range(0..=shape.max_events);
    let end_tick = quantize(end, shape.dt);
    let mut times: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..=end))
        .filter(|&t| quantize(t, shape.dt) < end_tick)
        .collect();
    times.sort_by(f64::total_cmp);
    let mut events: Vec<Event> = times
        .into_iter()
        .map(|at| Event { at, kind: random_kind(rng, shape.allow_speed), line: 0 })
        .collect();
    events.push(Event { at: end, kind: EventKind::End, line: 0 });
    MissionScript::from_events(events).expect("sorted events with one END")
}
