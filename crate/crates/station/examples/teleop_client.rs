//! A minimal operator: starts a station in-process (or connects to one given
//! as `HOST:PORT`), drives a short pattern over the control websocket and
//! prints the telemetry it gets back.
//!
//!     cargo run -p spraybot-station --example teleop_client
//!     cargo run -p spraybot-station --example teleop_client -- 127.0.0.1:7878

use std::net::SocketAddr;
use std::time::Duration;

use futures::{SinkExt, StreamExt};
use spraybot::sim::SimOptions;
use spraybot::telemetry::TelemetryFrame;
use spraybot::{FieldGrid, RobotConfig};
use spraybot_station::{Station, StationConfig};
use tokio_tungstenite::connect_async;
use tokio_tungstenite::tungstenite::Message;

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    let http: SocketAddr = match std::env::args().nth(1) {
        Some(addr) => addr.parse()?,
        None => {
            let any: SocketAddr = "127.0.0.1:0".parse()?;
            let station = Station::bind(
                StationConfig {
                    robot: RobotConfig::prototype(),
                    field: FieldGrid::new(10.0, 10.0, 0.05)?,
                    opts: SimOptions::default(),
                    pace: 4.0,
                },
                any,
                any,
                any,
            )
            .await?;
            let addr = station.http_addr();
            tokio::spawn(station.run());
            addr
        }
    };

    let (mut telemetry, _) = connect_async(format!("ws://{http}/telemetry")).await?;
    let (mut control, _) = connect_async(format!("ws://{http}/control")).await?;
    let (mut directives, _) = connect_async(format!("ws://{http}/directives")).await?;

    let printer = tokio::spawn(async move {
        while let Some(Ok(Message::Text(line))) = telemetry.next().await {
            let Ok(f) = TelemetryFrame::from_json_line(line.as_str()) else { continue };
            println!(
                "t {:>5.2}  ({:.2}, {:.2}) {:>8}  mower {}/{}  pump {}/{}  tank {:.3} L",
                f.t,
                f.x,
                f.y,
                f.motion.to_string(),
                f.mower_flag,
                f.mower_pin,
                f.pump_flag,
                f.pump_pin,
                f.tank_l
            );
        }
    });

    directives.send(Message::text("NOZZLE 6")).await?;
    println!("directive reply: {:?}", directives.next().await);
    for (bytes, hold_ms) in [("W", 300), ("F", 600), ("U", 300), ("L", 200), ("F", 600), ("S", 300)] {
        control.send(Message::binary(bytes.as_bytes().to_vec())).await?;
        tokio::time::sleep(Duration::from_millis(hold_ms)).await;
    }
    control.close(None).await?;
    tokio::time::sleep(Duration::from_millis(200)).await;
    printer.abort();
    Ok(())
}
