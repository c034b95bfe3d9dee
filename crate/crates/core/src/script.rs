//! Mission scripts: timed events that drive a simulation.
//!
//! One event per line, `<t_seconds> <KIND> <args>`; `#` starts a comment.
//!
//! ```text
//! # mow a short strip
//! 0    SEND W        # mower flag on (pin follows on the next byte)
//! 0    SEND F
//! 0    BOOM vertical 5.0
//! 0    NOZZLE 4
//! 0    SOLAR on
//! 4.5  SEND S
//! 5    END
//! ```
//!
//! | kind | args | meaning |
//! |------|------|---------|
//! | `SEND` | one character, or `0xNN` | byte delivered to the controller |
//! | `BOOM` | `vertical\|horizontal` inches, `yaw\|pitch` degrees | boom set-point |
//! | `NOZZLE` | cap turns `0..=7` | both nozzle caps |
//! | `SOLAR` | `on\|off` | panel connected |
//! | `SPEED` | pwm `0..=255` | corrected controller mode only |
//! | `END` | | end of mission, exactly once, last |
//!
//! Times are snapped to the simulation tick grid (nearest tick, ties to the
//! earlier one). Events sharing a tick run in file order.

use std::fmt;

use crate::boom::BoomAxis;
use crate::config::RobotConfig;
use crate::error::ScriptError;
use crate::protocol::ControllerMode;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventKind {
    Send(u8),
    /// Axis and operator value (inches or degrees).
    Boom(BoomAxis, f64),
    Nozzle(u8),
    Solar(bool),
    Speed(u8),
    End,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Send(b) if b.is_ascii_graphic() && *b != b'#' && !b.is_ascii_digit() => {
                write!(f, "SEND {}", *b as char)
            }
            Self::Send(b) => write!(f, "SEND 0x{b:02X}"),
            Self::Boom(axis, v) => write!(f, "BOOM {axis} {v:?}"),
            Self::Nozzle(t) => write!(f, "NOZZLE {t}"),
            Self::Solar(on) => write!(f, "SOLAR {}", if *on { "on" } else { "off" }),
            Self::Speed(p) => write!(f, "SPEED {p}"),
            Self::End => f.write_str("END"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub at: f64,
    pub kind: EventKind,
    /// Source line (1-based) for diagnostics; 0 for generated events.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MissionScript {
    events: Vec<Event>,
}

/// Nearest tick index for time `t`, ties resolved toward the earlier tick.
pub fn quantize(t: f64, dt: f64) -> u64 {
    let q = t / dt;
    (q - 0.5).ceil().max(0.0) as u64
}

fn parse_u8(tok: &str, what: &str, max: u8) -> Result<u8, String> {
    match tok.parse::<u16>() {
        Ok(v) if v <= max as u16 => Ok(v as u8),
        _ => Err(format!("{what} must be an integer in 0..={max} (got `{tok}`)")),
    }
}

fn parse_byte(tok: &str) -> Result<u8, String> {
    if let Some(hex) = tok.strip_prefix("0x").or_else(|| tok.strip_prefix("0X")) {
        return u8::from_str_radix(hex, 16).map_err(|_| format!("bad hex byte `{tok}`"));
    }
    let bytes = tok.as_bytes();
    if bytes.len() == 1 {
        Ok(bytes[0])
    } else {
        Err(format!("SEND takes one character or 0xNN (got `{tok}`)"))
    }
}

/// Parses the kind and arguments of an event (everything after the time).
pub fn parse_kind(tokens: &[&str]) -> Result<EventKind, String> {
    let (&kind, args) = tokens.split_first().ok_or("missing event kind")?;
    let expect = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("{kind} takes {n} argument(s), got {}", args.len()))
        }
    };
    match kind.to_ascii_uppercase().as_str() {
        "SEND" => {
            expect(1)?;
            Ok(EventKind::Send(parse_byte(args[0])?))
        }
        "BOOM" => {
            expect(2)?;
            let axis: BoomAxis = args[0].parse()?;
            let v: f64 = args[1]
                .parse()
                .map_err(|_| format!("bad boom value `{}`", args[1]))?;
            if !v.is_finite() {
                return Err(format!("boom value must be finite (got `{}`)", args[1]));
            }
            Ok(EventKind::Boom(axis, v))
        }
        "NOZZLE" => {
            expect(1)?;
            Ok(EventKind::Nozzle(parse_u8(args[0], "nozzle turns", 7)?))
        }
        "SOLAR" => {
            expect(1)?;
            match args[0].to_ascii_lowercase().as_str() {
                "on" => Ok(EventKind::Solar(true)),
                "off" => Ok(EventKind::Solar(false)),
                other => Err(format!("SOLAR takes on|off (got `{other}`)")),
            }
        }
        "SPEED" => {
            expect(1)?;
            Ok(EventKind::Speed(parse_u8(args[0], "speed pwm", 255)?))
        }
        "END" => {
            expect(0)?;
            Ok(EventKind::End)
        }
        other => Err(format!("unknown event kind `{other}`")),
    }
}

impl MissionScript {
    /// Builds a script from events already in time order. The final event
    /// must be END.
    pub fn from_events(events: Vec<Event>) -> Result<Self, ScriptError> {
        let script = Self { events };
        script.check_structure()?;
        Ok(script)
    }

    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let mut events = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let syntax = |message: String| ScriptError::Syntax { line, message };
            let at: f64 = tokens[0]
                .parse()
                .map_err(|_| syntax(format!("bad time `{}`", tokens[0])))?;
            if !(at.is_finite() && at >= 0.0) {
                return Err(syntax(format!("time must be finite and >= 0 (got {at})")));
            }
            let kind = parse_kind(&tokens[1..]).map_err(syntax)?;
            events.push(Event { at, kind, line });
        }
        Self::from_events(events)
    }

    fn check_structure(&self) -> Result<(), ScriptError> {
        let mut end_line: Option<usize> = None;
        let mut prev = 0.0;
        for (i, ev) in self.events.iter().enumerate() {
            let line = if ev.line > 0 { ev.line } else { i + 1 };
            if !(ev.at.is_finite() && ev.at >= 0.0) {
                return Err(ScriptError::Syntax {
                    line,
                    message: format!("time must be finite and >= 0 (got {})", ev.at),
                });
            }
            if ev.at < prev {
                return Err(ScriptError::Unsorted { line, t: ev.at });
            }
            prev = ev.at;
            match (ev.kind, end_line) {
                (EventKind::End, Some(first)) => {
                    return Err(ScriptError::DuplicateEnd { line, first })
                }
                (EventKind::End, None) => end_line = Some(line),
                (_, Some(_)) => return Err(ScriptError::AfterEnd { line }),
                _ => {}
            }
        }
        end_line.map(|_| ()).ok_or(ScriptError::MissingEnd)
    }

    /// Checks that the script can run under `cfg` at time step `dt`.
    pub fn validate_for(&self, cfg: &RobotConfig, dt: f64) -> Result<(), ScriptError> {
        self.check_structure()?;
        let end_tick = self.end_tick(dt);
        for (i, ev) in self.events.iter().enumerate() {
            let line = if ev.line > 0 { ev.line } else { i + 1 };
            match ev.kind {
                EventKind::Speed(_) if cfg.controller_mode == ControllerMode::Faithful => {
                    return Err(ScriptError::SpeedInFaithfulMode { line })
                }
                EventKind::End => {}
                _ if quantize(ev.at, dt) >= end_tick => return Err(ScriptError::AfterEnd { line }),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn end_time(&self) -> f64 {
        self.events.last().map_or(0.0, |e| e.at)
    }

    pub fn end_tick(&self, dt: f64) -> u64 {
        quantize(self.end_time(), dt)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ev in &self.events {
            out.push_str(&format!("{:?} {}\n", ev.at, ev.kind));
        }
        out
    }
}
