//! Feeds a byte stream through the controller and prints what the motor
//! shield and output pins do after each byte.
//!
//!     cargo run -p spraybot --example protocol -- "WUFLSwu"

use spraybot::protocol::{step_controller, ControllerMode, ControllerState};

fn main() {
    let bytes = std::env::args().nth(1).unwrap_or_else(|| "WFUBLRSwu".into());
    for mode in [ControllerMode::Faithful, ControllerMode::Corrected] {
        println!("{mode:?}");
        println!("  byte  motion    mower flag/pin  pump flag/pin  M1..M4");
        let mut s = ControllerState::new(mode);
        for b in bytes.bytes() {
            let (next, drive) = step_controller(s, b);
            s = next;
            let motors: Vec<String> = drive
                .channels
                .iter()
                .map(|c| format!("{:?}/{}", c.direction, c.pwm))
                .collect();
            println!(
                "  {:>4}  {:<9} {:>5}/{:<5}     {:>5}/{:<5}    {}",
                b as char,
                s.motion.to_string(),
                s.mower_flag,
                s.mower_pin,
                s.pump_flag,
                s.pump_pin,
                motors.join(" ")
            );
        }
    }
}
