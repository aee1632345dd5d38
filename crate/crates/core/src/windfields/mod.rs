//! Wind fields: position → 3D wind vector.

mod analytic;
mod grid;

use serde::{Deserialize, Serialize};

use crate::{Result, Vec3};

pub use analytic::{make_synthetic, AnalyticWindField, ShearAxis};
pub use grid::{load_wind_grid, read_wind_grid, save_wind_grid, write_wind_grid, GriddedWindField};

/// World-frame wind, m/s.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WindVector {
    pub wx: f64,
    pub wy: f64,
    pub wz: f64,
}

impl WindVector {
    pub const fn new(wx: f64, wy: f64, wz: f64) -> Self {
        WindVector { wx, wy, wz }
    }

    pub const fn zero() -> Self {
        WindVector::new(0.0, 0.0, 0.0)
    }

    pub fn as_vec(&self) -> Vec3 {
        Vec3::new(self.wx, self.wy, self.wz)
    }

    pub fn norm(&self) -> f64 {
        self.as_vec().norm()
    }

    pub fn is_finite(&self) -> bool {
        self.wx.is_finite() && self.wy.is_finite() && self.wz.is_finite()
    }
}

impl From<Vec3> for WindVector {
    fn from(v: Vec3) -> Self {
        WindVector::new(v.x, v.y, v.z)
    }
}

/// Temporally constant wind field, either closed-form or gridded.
#[derive(Debug, Clone, PartialEq)]
pub enum WindField {
    Analytic(AnalyticWindField),
    Gridded(GriddedWindField),
}

impl WindField {
    /// Still air everywhere.
    pub fn calm() -> Self {
        WindField::Analytic(AnalyticWindField::Uniform { wind: WindVector::zero() })
    }

    pub fn sample(&self, position: &Vec3) -> WindVector {
        sample_wind(self, position)
    }
}

impl From<AnalyticWindField> for WindField {
    fn from(f: AnalyticWindField) -> Self {
        WindField::Analytic(f)
    }
}

impl From<GriddedWindField> for WindField {
    fn from(f: GriddedWindField) -> Self {
        WindField::Gridded(f)
    }
}

/// Wind at `position`. Gridded fields are trilinearly interpolated and
/// clamped to the grid boundary outside the grid.
pub fn sample_wind(field: &WindField, position: &Vec3) -> WindVector {
    match field {
        WindField::Analytic(f) => f.sample(position),
        WindField::Gridded(g) => g.sample(position),
    }
}

/// Samples any field onto a regular grid.
pub fn rasterize(field: &WindField, counts: [usize; 3], origin: [f64; 3], spacing: [f64; 3]) -> Result<GriddedWindField> {
    let [nx, ny, nz] = counts;
    let n = nx * ny * nz;
    let (mut wx, mut wy, mut wz) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let p = Vec3::new(
                    origin[0] + i as f64 * spacing[0],
                    origin[1] + j as f64 * spacing[1],
                    origin[2] + k as f64 * spacing[2],
                );
                let w = field.sample(&p);
                wx.push(w.wx);
                wy.push(w.wy);
                wz.push(w.wz);
            }
        }
    }
    GriddedWindField::new(counts, origin, spacing, wx, wy, wz)
}
