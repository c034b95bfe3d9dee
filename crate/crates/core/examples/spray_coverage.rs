//! Nozzle table, cone footprint and a sprayed strip written out as a PGM.
//!
//!     cargo run -p spraybot --example spray_coverage -- /tmp/dose.pgm

use spraybot::boom::NozzlePose;
use spraybot::export::write_dose_pgm;
use spraybot::geometry::Vec3;
use spraybot::sim::{run_script, SimOptions, Simulator};
use spraybot::spray::{cone_tsa, setting_from_turns, spray_footprint};
use spraybot::units::{in_to_m, m_to_in};
use spraybot::{FieldGrid, MissionScript, RobotConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RobotConfig::prototype();
    println!("turns  droplet  range");
    for turns in 0..=7 {
        let s = setting_from_turns(turns)?;
        println!("{turns:>5}  {:>5} µm  {:>4} in", s.droplet_um, s.range_in);
    }

    let down = NozzlePose { position: Vec3::new(0.0, 0.0, in_to_m(20.0)), axis: Vec3::new(0.0, 0.0, -1.0) };
    let setting = setting_from_turns(7)?.with_half_angle(cfg.cone_half_angle);
    if let Some(fp) = spray_footprint(&down, &setting, 0.0) {
        println!("straight down from 20 in: footprint radius {:.2} in", m_to_in(fp.radius));
    }
    println!("cone surface area (r 5 in, slant 20.6 in): {:.2} in²", cone_tsa(5.0, 20.6));

    // The boom sits 46.8 in up, so aim at a 30 in crop canopy.
    let cfg = RobotConfig { spray_target_height: in_to_m(30.0), ..cfg };
    let script = MissionScript::parse(
        "0 NOZZLE 7\n0 BOOM pitch -35\n0 SEND U\n0 SEND F\n3 SEND S\n3 SEND u\n4 END\n",
    )?;
    let mut sim = Simulator::new(cfg.clone(), FieldGrid::new(8.0, 8.0, 0.05)?, SimOptions::default())?;
    let report = sim.run(&script, |_| {})?;
    println!(
        "strip: {:.3} m² sprayed, {:.4} L used, {:.4} L on the field",
        report.area_sprayed_m2, report.liquid_used_l, report.liquid_on_field_l
    );
    assert_eq!(report, run_script(&script, &cfg, FieldGrid::new(8.0, 8.0, 0.05)?, SimOptions::default())?);

    if let Some(path) = std::env::args().nth(1) {
        let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
        write_dose_pgm(sim.grid(), &mut out)?;
        println!("dose map written to {path}");
    }
    Ok(())
}
