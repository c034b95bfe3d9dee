//! Live teleoperation session, independent of any transport.
//!
//! A [`LiveSession`] owns one [`Simulator`] and feeds it the same events a
//! script would: control bytes and operator directives are queued as they
//! arrive and delivered at the start of the next tick. Every delivered event
//! is logged with its tick time, so [`LiveSession::recorded_script`] replays
//! the session exactly through [`crate::run_script`].
//!
//! Directive lines use the script grammar without the leading time:
//! `BOOM <axis> <value>`, `NOZZLE <turns>`, `SOLAR on|off`, `SPEED <pwm>`,
//! plus `RESET`, which discards the session and starts a fresh mission.

use crate::config::RobotConfig;
use crate::error::{ControllerError, SessionError, SimError};
use crate::grid::FieldGrid;
use crate::protocol::{ControllerMode, Motion};
use crate::script::{parse_kind, Event, EventKind, MissionScript};
use crate::sim::{MissionReport, SimOptions, Simulator};
use crate::telemetry::TelemetryFrame;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Directive {
    Event(EventKind),
    Reset,
}

pub fn parse_directive(line: &str) -> Result<Directive, SessionError> {
    let content = line.split('#').next().unwrap_or("").trim();
    let tokens: Vec<&str> = content.split_whitespace().collect();
    if tokens.len() == 1 && tokens[0].eq_ignore_ascii_case("RESET") {
        return Ok(Directive::Reset);
    }
    match parse_kind(&tokens).map_err(SessionError::Directive)? {
        EventKind::Send(_) => Err(SessionError::Directive(
            "bytes go over the control link, not the directive channel".into(),
        )),
        EventKind::End => Err(SessionError::Directive("END is not a live directive".into())),
        kind => Ok(Directive::Event(kind)),
    }
}

#[derive(Debug, Clone)]
pub struct LiveSession {
    cfg: RobotConfig,
    field: FieldGrid,
    opts: SimOptions,
    sim: Simulator,
    pending: Vec<EventKind>,
    log: Vec<Event>,
    control_connected: bool,
    had_control: bool,
}

impl LiveSession {
    pub fn new(cfg: RobotConfig, field: FieldGrid, opts: SimOptions) -> Result<Self, SimError> {
        let sim = Simulator::new(cfg.clone(), field.clone(), opts)?;
        Ok(Self {
            cfg,
            field,
            opts,
            sim,
            pending: Vec::new(),
            log: Vec::new(),
            control_connected: false,
            had_control: false,
        })
    }

    pub fn simulator(&self) -> &Simulator {
        &self.sim
    }

    pub fn connect_control(&mut self) -> Result<(), SessionError> {
        if self.control_connected {
            return Err(SessionError::ControlBusy);
        }
        self.control_connected = true;
        self.had_control = true;
        Ok(())
    }

    pub fn disconnect_control(&mut self) {
        self.control_connected = false;
    }

    pub fn control_connected(&self) -> bool {
        self.control_connected
    }

    /// Queues bytes from the control link, preserving order.
    pub fn push_bytes(&mut self, bytes: &[u8]) {
        self.pending.extend(bytes.iter().map(|&b| EventKind::Send(b)));
    }

    /// Applies one directive line. Errors leave the session unchanged.
    pub fn directive(&mut self, line: &str) -> Result<(), SessionError> {
        match parse_directive(line)? {
            Directive::Reset => {
                self.reset();
                Ok(())
            }
            Directive::Event(EventKind::Speed(_)) if self.cfg.controller_mode == ControllerMode::Faithful => {
                Err(ControllerError::SpeedInFaithfulMode.into())
            }
            Directive::Event(kind) => {
                self.pending.push(kind);
                Ok(())
            }
        }
    }

    pub fn reset(&mut self) {
        self.sim = Simulator::new(self.cfg.clone(), self.field.clone(), self.opts)
            .expect("inputs were validated when the session was created");
        self.pending.clear();
        self.log.clear();
    }

    /// Advances one tick; returns a frame when one is due.
    pub fn tick(&mut self) -> Option<TelemetryFrame> {
        let at = self.sim.state().t();
        let inputs = std::mem::take(&mut self.pending);
        self.log.extend(inputs.iter().map(|&kind| Event { at, kind, line: 0 }));
        self.sim.tick(&inputs);
        self.sim.frame_due().then(|| self.frame())
    }

    pub fn frame(&self) -> TelemetryFrame {
        let mut f = self.sim.frame();
        f.flags.runaway =
            self.had_control && !self.control_connected && f.motion != Motion::Stopped;
        f
    }

    pub fn report(&self) -> MissionReport {
        self.sim.report()
    }

    /// Everything delivered so far, ending at the current time.
    pub fn recorded_script(&self) -> MissionScript {
        let mut events = self.log.clone();
        events.push(Event {
            at: self.sim.state().t(),
            kind: EventKind::End,
            line: 0,
        });
        MissionScript::from_events(events).expect("log is time-ordered with a single END")
    }
}
