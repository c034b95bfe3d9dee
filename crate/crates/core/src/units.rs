//! Unit conversion at the configuration boundary.
//!
//! Everything inside the simulator is SI (m, s, A, Ah, L). Inches and square
//! inches only appear where values are read from or printed for people.

/// Metres per inch (exact by definition).
pub const INCH_M: f64 = 0.0254;
/// Square metres per square inch (exact by definition).
pub const SQIN_SQM: f64 = 0.000_645_16;

pub fn in_to_m(inches: f64) -> f64 {
    inches * INCH_M
}

pub fn m_to_in(meters: f64) -> f64 {
    meters / INCH_M
}

pub fn sqin_to_sqm(sq_in: f64) -> f64 {
    sq_in * SQIN_SQM
}

pub fn sqm_to_sqin(sq_m: f64) -> f64 {
    sq_m / SQIN_SQM
}

pub fn deg_to_rad(deg: f64) -> f64 {
    deg.to_radians()
}

pub fn rad_to_deg(rad: f64) -> f64 {
    rad.to_degrees()
}
