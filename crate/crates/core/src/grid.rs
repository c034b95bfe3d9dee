//! Discretised field used as coverage ground truth.
//!
//! The grid covers `[0, width) x [0, height)` in the field frame. Cell `(i, j)`
//! has its centre at `((i + 0.5) * cell, (j + 0.5) * cell)`. Painting works on
//! the unbounded lattice of cell centres and clips to the field afterwards, so
//! a footprint straddling the border loses exactly its outside share.

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::geometry::Point2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// Litres of liquid deposited on this cell.
    pub spray_dose: f64,
    pub mowed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    width: f64,
    height: f64,
    cell_size: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Cell>,
    mowed_count: usize,
    sprayed_count: usize,
    total_dose: f64,
}

/// Result of a single [`FieldGrid::paint_disc`] call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPaint {
    /// Lattice cells inside the disc, including ones outside the field.
    pub lattice_cells: usize,
    /// Cells actually painted (inside the field).
    pub painted_cells: usize,
    pub deposited: f64,
    pub discarded: f64,
}

pub const DEFAULT_CELL_SIZE: f64 = 0.05;

impl FieldGrid {
    pub fn new(width: f64, height: f64, cell_size: f64) -> Result<Self, GridError> {
        if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
            return Err(GridError::EmptyField { width, height });
        }
        if !(cell_size.is_finite() && cell_size > 0.0 && cell_size <= width.min(height)) {
            return Err(GridError::BadCellSize(cell_size));
        }
        let nx = ((width / cell_size).round() as usize).max(1);
        let ny = ((height / cell_size).round() as usize).max(1);
        Ok(Self {
            width,
            height,
            cell_size,
            nx,
            ny,
            cells: vec![Cell::default(); nx * ny],
            mowed_count: 0,
            sprayed_count: 0,
            total_dose: 0.0,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_size * self.cell_size
    }

    pub fn field_area(&self) -> f64 {
        (self.nx as f64 * self.cell_size) * (self.ny as f64 * self.cell_size)
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&Cell> {
        if i < self.nx && j < self.ny {
            Some(&self.cells[j * self.nx + i])
        } else {
            None
        }
    }

    pub fn cell_center(&self, i: i64, j: i64) -> Point2 {
        Point2::new(
            (i as f64 + 0.5) * self.cell_size,
            (j as f64 + 0.5) * self.cell_size,
        )
    }

    /// Row-major iterator over `(i, j, cell)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Cell)> {
        let nx = self.nx;
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (k % nx, k / nx, c))
    }

    pub fn mowed_cells(&self) -> usize {
        self.mowed_count
    }

    pub fn sprayed_cells(&self) -> usize {
        self.sprayed_count
    }

    pub fn mowed_area(&self) -> f64 {
        self.mowed_count as f64 * self.cell_area()
    }

    pub fn sprayed_area(&self) -> f64 {
        self.sprayed_count as f64 * self.cell_area()
    }

    pub fn total_dose(&self) -> f64 {
        self.total_dose
    }

    pub fn max_dose(&self) -> f64 {
        self.cells.iter().map(|c| c.spray_dose).fold(0.0, f64::max)
    }

    pub fn clear(&mut self) {
        self.cells.fill(Cell::default());
        self.mowed_count = 0;
        self.sprayed_count = 0;
        self.total_dose = 0.0;
    }

    fn in_field(&self, i: i64, j: i64) -> Option<usize> {
        if i >= 0 && j >= 0 && (i as usize) < self.nx && (j as usize) < self.ny {
            Some(j as usize * self.nx + i as usize)
        } else {
            None
        }
    }

    /// Lattice index range whose centres may lie within `[lo, hi]`.
    fn lattice_span(&self, lo: f64, hi: f64) -> (i64, i64) {
        let first = (lo / self.cell_size - 0.5).ceil() as i64;
        let last = (hi / self.cell_size - 0.5).floor() as i64;
        (first, last)
    }

    fn clipped_span(&self, lo: f64, hi: f64, n: usize) -> (i64, i64) {
        let (a, b) = self.lattice_span(lo, hi);
        (a.max(0), b.min(n as i64 - 1))
    }

    /// Spreads `dose` litres uniformly over every lattice cell whose centre
    /// lies within `radius` of `center`. Shares falling outside the field are
    /// discarded. A zero radius paints nothing and discards the whole dose.
    pub fn paint_disc(&mut self, center: Point2, radius: f64, dose: f64) -> DiscPaint {
        debug_assert!(radius >= 0.0 && dose >= 0.0);
        let empty = DiscPaint {
            lattice_cells: 0,
            painted_cells: 0,
            deposited: 0.0,
            discarded: dose,
        };
        if radius <= 0.0 || !radius.is_finite() {
            return empty;
        }
        let (i0, i1) = self.lattice_span(center.x - radius, center.x + radius);
        let (j0, j1) = self.lattice_span(center.y - radius, center.y + radius);
        let mut inside = Vec::new();
        let mut lattice_cells = 0usize;
        for j in j0..=j1 {
            for i in i0..=i1 {
                if self.cell_center(i, j).distance(center) <= radius {
                    lattice_cells += 1;
                    if let Some(k) = self.in_field(i, j) {
                        inside.push(k);
                    }
                }
            }
        }
        if lattice_cells == 0 {
            return empty;
        }
        let share = dose / lattice_cells as f64;
        for &k in &inside {
            let cell = &mut self.cells[k];
            if cell.spray_dose == 0.0 && share > 0.0 {
                self.sprayed_count += 1;
            }
            cell.spray_dose += share;
        }
        let deposited = share * inside.len() as f64;
        self.total_dose += deposited;
        DiscPaint {
            lattice_cells,
            painted_cells: inside.len(),
            deposited,
            discarded: dose - deposited,
        }
    }

    /// Marks every in-field cell whose centre lies within `radius` of the
    /// segment `from`–`to` as mowed. Returns the number of cells inside the
    /// capsule (already-mowed cells included).
    pub fn paint_mow_swath(&mut self, from: Point2, to: Point2, radius: f64) -> usize {
        if radius <= 0.0 || !radius.is_finite() {
            return 0;
        }
        let (i0, i1) = self.clipped_span(from.x.min(to.x) - radius, from.x.max(to.x) + radius, self.nx);
        let (j0, j1) = self.clipped_span(from.y.min(to.y) - radius, from.y.max(to.y) + radius, self.ny);
        let mut covered = 0;
        for j in j0..=j1 {
            for i in i0..=i1 {
                if self.cell_center(i, j).distance_to_segment(from, to) <= radius {
                    covered += 1;
                    let k = j as usize * self.nx + i as usize;
                    if !self.cells[k].mowed {
                        self.cells[k].mowed = true;
                        self.mowed_count += 1;
                    }
                }
            }
        }
        covered
    }
}
