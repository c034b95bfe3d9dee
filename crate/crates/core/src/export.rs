//! Mission artifacts on disk.
//!
//! A run directory holds:
//!
//! - `report.json`: the [`MissionReport`]
//! - `telemetry.ndjson`: one [`TelemetryFrame`] per line
//! - `dose.pgm`: plain (P2) graymap of spray dose, scaled so the maximum is 255
//! - `mowed.pgm`: plain graymap, 255 where mowed
//! - `cells.csv`: `i,j,x_m,y_m,dose_l,mowed` for every cell
//!
//! Image rows run from the far (+y) edge of the field to the near edge.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::grid::FieldGrid;
use crate::sim::MissionReport;
use crate::telemetry::TelemetryFrame;

fn write_pgm(
    grid: &FieldGrid,
    out: &mut impl Write,
    value: impl Fn(f64, bool) -> u8,
) -> io::Result<()> {
    let (nx, ny) = grid.dims();
    writeln!(out, "P2\n{nx} {ny}\n255")?;
    for j in (0..ny).rev() {
        let row: Vec<String> = (0..nx)
            .map(|i| {
                let c = grid.cell(i, j).expect("index in range");
                value(c.spray_dose, c.mowed).to_string()
            })
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn write_dose_pgm(grid: &FieldGrid, out: &mut impl Write) -> io::Result<()> {
    let max = grid.max_dose();
    write_pgm(grid, out, |dose, _| {
        if max > 0.0 {
            (dose / max * 255.0).round() as u8
        } else {
            0
        }
    })
}

pub fn write_mowed_pgm(grid: &FieldGrid, out: &mut impl Write) -> io::Result<()> {
    write_pgm(grid, out, |_, mowed| if mowed { 255 } else { 0 })
}

pub fn write_cells_csv(grid: &FieldGrid, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "j", "x_m", "y_m", "dose_l", "mowed"])?;
    for (i, j, c) in grid.iter() {
        let p = grid.cell_center(i as i64, j as i64);
        w.write_record([
            i.to_string(),
            j.to_string(),
            format!("{:?}", p.x),
            format!("{:?}", p.y),
            format!("{:?}", c.spray_dose),
            (c.mowed as u8).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the full artifact set into `dir`, creating it if needed.
pub fn write_mission_artifacts(
    dir: &Path,
    report: &MissionReport,
    frames: &[TelemetryFrame],
    grid: &FieldGrid,
) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), report.to_json() + "\n")?;

    let mut tel = BufWriter::new(File::create(dir.join("telemetry.ndjson"))?);
    for f in frames {
        writeln!(tel, "{}", f.to_json_line())?;
    }
    tel.flush()?;

    let mut dose = BufWriter::new(File::create(dir.join("dose.pgm"))?);
    write_dose_pgm(grid, &mut dose)?;
    dose.flush()?;
    let mut mowed = BufWriter::new(File::create(dir.join("mowed.pgm"))?);
    write_mowed_pgm(grid, &mut mowed)?;
    mowed.flush()?;

    write_cells_csv(grid, File::create(dir.join("cells.csv"))?).map_err(io::Error::other)?;
    Ok(())
}
