//! Live teleoperation server.
//!
//! Three listeners share one simulation actor:
//!
//! - HTTP on the main port:
//!   - `GET /control` websocket: binary or text messages are raw command
//!     bytes, in order. Only one control client at a time; a second one gets
//!     `409 Conflict`.
//!   - `GET /directives` websocket: one directive per line, answered with
//!     `ok` or `error: <reason>`.
//!   - `GET /telemetry` websocket: one JSON telemetry frame per text message.
//!     Slow subscribers skip frames.
//!   - `GET /session/script`, `GET /session/report`: the recorded session as
//!     a mission script, and its report so far. `GET /session` returns both
//!     as `{"script": .., "report": ..}` taken at the same tick.
//! - Raw TCP serial link (main port + 1): a plain byte stream into the
//!   controller, like the robot's Bluetooth serial module.
//! - Raw TCP directive channel (main port + 2): line-oriented, same replies
//!   as the websocket.
//!
//! The actor owns a [`LiveSession`] and ticks it at `dt / pace` wall-clock
//! intervals; every state change goes through the same tick path as a
//! scripted run.

use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Duration;

use anyhow::Context;
use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use futures::{SinkExt, StreamExt};
use spraybot::session::LiveSession;
use spraybot::sim::{MissionReport, SimOptions};
use spraybot::{FieldGrid, RobotConfig};
use tokio::io::{AsyncBufReadExt, AsyncReadExt, AsyncWriteExt, BufReader};
use tokio::net::{TcpListener, TcpStream};
use tokio::sync::{broadcast, mpsc, oneshot};
use tokio::time::MissedTickBehavior;

#[derive(Debug, Clone)]
pub struct StationConfig {
    pub robot: RobotConfig,
    pub field: FieldGrid,
    pub opts: SimOptions,
    /// Simulated seconds per wall-clock second.
    pub pace: f64,
}

enum Input {
    Bytes(Vec<u8>),
    Connect(oneshot::Sender<Result<(), String>>),
    Disconnect,
    Directive(String, oneshot::Sender<Result<(), String>>),
    Script(oneshot::Sender<String>),
    Report(oneshot::Sender<MissionReport>),
    Snapshot(oneshot::Sender<(String, MissionReport)>),
}

#[derive(Clone)]
struct Shared {
    inputs: mpsc::UnboundedSender<Input>,
    frames: broadcast::Sender<String>,
}

impl Shared {
    async fn ask<T>(&self, make: impl FnOnce(oneshot::Sender<T>) -> Input) -> Option<T> {
        let (tx, rx) = oneshot::channel();
        self.inputs.send(make(tx)).ok()?;
        rx.await.ok()
    }

    async fn connect(&self) -> Result<ControlGuard, String> {
        match self.ask(Input::Connect).await {
            Some(Ok(())) => Ok(ControlGuard(self.inputs.clone())),
            Some(Err(e)) => Err(e),
            None => Err("simulation stopped".into()),
        }
    }

    async fn directive(&self, line: String) -> String {
        match self.ask(|tx| Input::Directive(line, tx)).await {
            Some(Ok(())) => "ok".into(),
            Some(Err(e)) => format!("error: {e}"),
            None => "error: simulation stopped".into(),
        }
    }

    fn bytes(&self, b: &[u8]) {
        let _ = self.inputs.send(Input::Bytes(b.to_vec()));
    }
}

/// Releases the control link when the owning connection goes away.
struct ControlGuard(mpsc::UnboundedSender<Input>);

impl Drop for ControlGuard {
    fn drop(&mut self) {
        let _ = self.0.send(Input::Disconnect);
    }
}

async fn actor(
    mut session: LiveSession,
    mut inputs: mpsc::UnboundedReceiver<Input>,
    frames: broadcast::Sender<String>,
    period: Duration,
) {
    let mut clock = tokio::time::interval(period);
    clock.set_missed_tick_behavior(MissedTickBehavior::Delay);
    loop {
        tokio::select! {
            biased;
            input = inputs.recv() => {
                let Some(input) = input else { return };
                match input {
                    Input::Bytes(b) => session.push_bytes(&b),
                    Input::Connect(reply) => {
                        let _ = reply.send(session.connect_control().map_err(|e| e.to_string()));
                    }
                    Input::Disconnect => session.disconnect_control(),
                    Input::Directive(line, reply) => {
                        let _ = reply.send(session.directive(&line).map_err(|e| e.to_string()));
                    }
                    Input::Script(reply) => {
                        let _ = reply.send(session.recorded_script().to_text());
                    }
                    Input::Report(reply) => {
                        let _ = reply.send(session.report());
                    }
                    Input::Snapshot(reply) => {
                        let _ = reply.send((session.recorded_script().to_text(), session.report()));
                    }
                }
            }
            _ = clock.tick() => {
                if let Some(frame) = session.tick() {
                    let _ = frames.send(frame.to_json_line());
                }
            }
        }
    }
}

pub struct Station {
    http: TcpListener,
    control: TcpListener,
    directives: TcpListener,
    shared: Shared,
    actor: Option<(LiveSession, mpsc::UnboundedReceiver<Input>, Duration)>,
}

impl Station {
    /// Binds all three listeners. Port 0 picks free ports.
    pub async fn bind(
        config: StationConfig,
        http: SocketAddr,
        control: SocketAddr,
        directives: SocketAddr,
    ) -> anyhow::Result<Self> {
        anyhow::ensure!(
            config.pace.is_finite() && config.pace > 0.0,
            "pace must be positive"
        );
        let session = LiveSession::new(config.robot, config.field, config.opts)?;
        let period = Duration::from_secs_f64(config.opts.dt / config.pace);
        let (tx, rx) = mpsc::unbounded_channel();
        let (frames, _) = broadcast::channel(64);
        Ok(Self {
            http: TcpListener::bind(http).await.with_context(|| format!("bind {http}"))?,
            control: TcpListener::bind(control)
                .await
                .with_context(|| format!("bind {control}"))?,
            directives: TcpListener::bind(directives)
                .await
                .with_context(|| format!("bind {directives}"))?,
            shared: Shared { inputs: tx, frames },
            actor: Some((session, rx, period)),
        })
    }

    pub fn http_addr(&self) -> SocketAddr {
        self.http.local_addr().expect("bound socket")
    }

    pub fn control_addr(&self) -> SocketAddr {
        self.control.local_addr().expect("bound socket")
    }

    pub fn directive_addr(&self) -> SocketAddr {
        self.directives.local_addr().expect("bound socket")
    }

    pub async fn run(mut self) -> anyhow::Result<()> {
        let (session, rx, period) = self.actor.take().expect("run called once");
        tokio::spawn(actor(session, rx, self.shared.frames.clone(), period));

        let shared = self.shared.clone();
        let control = self.control;
        tokio::spawn(async move {
            while let Ok((stream, peer)) = control.accept().await {
                tracing::info!(%peer, "serial link connection");
                tokio::spawn(raw_control(stream, shared.clone()));
            }
        });
        let shared = self.shared.clone();
        let directives = self.directives;
        tokio::spawn(async move {
            while let Ok((stream, _)) = directives.accept().await {
                tokio::spawn(raw_directives(stream, shared.clone()));
            }
        });

        let app = Router::new()
            .route("/", get(index))
            .route("/control", get(control_ws))
            .route("/directives", get(directives_ws))
            .route("/telemetry", get(telemetry_ws))
            .route("/session/script", get(session_script))
            .route("/session/report", get(session_report))
            .route("/session", get(session_snapshot))
            .with_state(Arc::new(self.shared));
        axum::serve(self.http, app).await?;
        Ok(())
    }
}

type AppState = State<Arc<Shared>>;

async fn index() -> &'static str {
    "spraybot station\n\
     ws  /control         raw command bytes (one client)\n\
     ws  /directives      BOOM|NOZZLE|SOLAR|SPEED|RESET lines\n\
     ws  /telemetry       JSON frames\n\
     GET /session/script  recorded session\n\
     GET /session/report  mission report\n\
     GET /session         both, taken at the same tick\n"
}

async fn control_ws(ws: WebSocketUpgrade, State(shared): AppState) -> Response {
    match shared.connect().await {
        Err(e) => (StatusCode::CONFLICT, e).into_response(),
        Ok(guard) => ws.on_upgrade(move |socket| control_session(socket, shared, guard)),
    }
}

async fn control_session(mut socket: WebSocket, shared: Arc<Shared>, _guard: ControlGuard) {
    while let Some(Ok(msg)) = socket.recv().await {
        match msg {
            Message::Binary(b) => shared.bytes(&b),
            Message::Text(t) => shared.bytes(t.as_bytes()),
            Message::Close(_) => break,
            _ => {}
        }
    }
}

async fn directives_ws(ws: WebSocketUpgrade, State(shared): AppState) -> Response {
    ws.on_upgrade(move |mut socket| async move {
        while let Some(Ok(msg)) = socket.recv().await {
            let text = match msg {
                Message::Text(t) => t.to_string(),
                Message::Close(_) => break,
                _ => continue,
            };
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let reply = shared.directive(line.to_string()).await;
                if socket.send(Message::Text(reply.into())).await.is_err() {
                    return;
                }
            }
        }
    })
}

async fn telemetry_ws(ws: WebSocketUpgrade, State(shared): AppState) -> Response {
    let mut frames = shared.frames.subscribe();
    ws.on_upgrade(move |socket| async move {
        let (mut tx, mut rx) = socket.split();
        loop {
            tokio::select! {
                incoming = rx.next() => match incoming {
                    Some(Ok(Message::Close(_))) | None | Some(Err(_)) => break,
                    _ => {}
                },
                frame = frames.recv() => match frame {
                    Ok(line) => {
                        if tx.send(Message::Text(line.into())).await.is_err() {
                            break;
                        }
                    }
                    Err(broadcast::error::RecvError::Lagged(_)) => continue,
                    Err(broadcast::error::RecvError::Closed) => break,
                },
            }
        }
    })
}

async fn session_script(State(shared): AppState) -> Response {
    match shared.ask(Input::Script).await {
        Some(text) => text.into_response(),
        None => StatusCode::SERVICE_UNAVAILABLE.into_response(),
    }
}

async fn session_report(State(shared): AppState) -> Response {
    match shared.ask(Input::Report).await {
        Some(report) => Json(report).into_response(),
        None => StatusCode::SERVICE_UNAVAILABLE.into_response(),
    }
}

async fn session_snapshot(State(shared): AppState) -> Response {
    match shared.ask(Input::Snapshot).await {
        Some((script, report)) => {
            Json(serde_json::json!({ "script": script, "report": report })).into_response()
        }
        None => StatusCode::SERVICE_UNAVAILABLE.into_response(),
    }
}

async fn raw_control(mut stream: TcpStream, shared: Shared) {
    let _guard = match shared.connect().await {
        Ok(g) => g,
        Err(e) => {
            let _ = stream.write_all(format!("error: {e}\n").as_bytes()).await;
            return;
        }
    };
    let mut buf = [0u8; 256];
    loop {
        match stream.read(&mut buf).await {
            Ok(0) | Err(_) => break,
            Ok(n) => shared.bytes(&buf[..n]),
        }
    }
}

async fn raw_directives(stream: TcpStream, shared: Shared) {
    let (read, mut write) = stream.into_split();
    let mut lines = BufReader::new(read).lines();
    while let Ok(Some(line)) = lines.next_line().await {
        if line.trim().is_empty() {
            continue;
        }
        let reply = shared.directive(line).await;
        if write.write_all(format!("{reply}\n").as_bytes()).await.is_err() {
            break;
        }
    }
}
