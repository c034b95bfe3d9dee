use std::net::SocketAddr;
use std::process::ExitCode;

use clap::Parser;
use spraybot_station::cli::{run_calc, run_mission, Cli, CliError, Command, ServeArgs};
use spraybot_station::{Station, StationConfig};

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .init();
    let result = match Cli::parse().command {
        Command::Run(args) => run_mission(&args).map(|r| println!("{}", r.to_json())),
        Command::Calc(args) => run_calc(&args).map(|c| println!("{c}")),
        Command::Serve(args) => serve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn serve(args: ServeArgs) -> Result<(), CliError> {
    let (robot, field, opts) = args.world.load()?;
    let addr = |offset: u16| SocketAddr::new(args.bind, args.port.wrapping_add(offset));
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Output(e.to_string()))?;
    runtime.block_on(async {
        let station = Station::bind(
            StationConfig { robot, field, opts, pace: args.pace },
            addr(0),
            addr(1),
            addr(2),
        )
        .await
        .map_err(|e| CliError::Input(format!("{e:#}")))?;
        eprintln!(
            "http {} | serial link {} | directives {}",
            station.http_addr(),
            station.control_addr(),
            station.directive_addr()
        );
        station.run().await.map_err(|e| CliError::Output(e.to_string()))
    })
}
