//! 2.5D elevation maps and terrain clearance checks.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dubins::{sample_offsets, DubinsAirplanePath};
use crate::{Error, Result, Vec3};

/// Gridded terrain heights.
///
/// Node `(row, col)` sits at `x = origin[0] + col·cellsize`,
/// `y = origin[1] + (nrows − 1 − row)·cellsize`: `origin` is the south-west
/// node and row 0 is the northern edge (north-up). The map covers half a cell
/// beyond the outer nodes; heights are bilinear between nodes and constant in
/// that border.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElevationMap {
    ncols: usize,
    nrows: usize,
    origin: [f64; 2],
    cellsize: f64,
    #[serde(default)]
    nodata: Option<f64>,
    values: Vec<f64>,
    /// When set, points outside the map are forbidden instead of clear.
    #[serde(default)]
    strict_bounds: bool,
}

impl ElevationMap {
    pub fn new(ncols: usize, nrows: usize, origin: [f64; 2], cellsize: f64, values: Vec<f64>) -> Result<Self> {
        let map = ElevationMap {
            ncols,
            nrows,
            origin,
            cellsize,
            nodata: None,
            values,
            strict_bounds: false,
        };
        map.validate()?;
        Ok(map)
    }

    /// Flat terrain at `height` covering the given extent.
    pub fn flat(origin: [f64; 2], cellsize: f64, ncols: usize, nrows: usize, height: f64) -> Result<Self> {
        Self::new(ncols, nrows, origin, cellsize, vec![height; ncols * nrows])
    }

    pub fn with_nodata(mut self, nodata: f64) -> Self {
        self.nodata = Some(nodata);
        self
    }

    pub fn with_strict_bounds(mut self, strict: bool) -> Self {
        self.strict_bounds = strict;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.ncols == 0 || self.nrows == 0 {
            return Err(Error::parse("elevation map", "ncols and nrows must be ≥ 1"));
        }
        if !(self.cellsize.is_finite() && self.cellsize > 0.0) {
            return Err(Error::parse("elevation map: cellsize", format!("must be > 0, got {}", self.cellsize)));
        }
        if !(self.origin[0].is_finite() && self.origin[1].is_finite()) {
            return Err(Error::parse("elevation map: origin", "must be finite"));
        }
        let expected = self.ncols * self.nrows;
        if self.values.len() != expected {
            return Err(Error::parse(
                "elevation map: values",
                format!("expected ncols·nrows = {expected} values, found {}", self.values.len()),
            ));
        }
        if let Some(i) = self
            .values
            .iter()
            .position(|&v| !v.is_finite() && Some(v) != self.nodata)
        {
            return Err(Error::parse(format!("elevation map: values[{i}]"), "non-finite value"));
        }
        Ok(())
    }

    fn is_nodata(&self, v: f64) -> bool {
        self.nodata.is_some_and(|nd| v == nd)
    }

    fn node(&self, row_from_south: usize, col: usize) -> f64 {
        let row = self.nrows - 1 - row_from_south;
        self.values[row * self.ncols + col]
    }

    /// Terrain height at `(x, y)`.
    pub fn elevation_at(&self, x: f64, y: f64) -> f64 {
        let fc = (x - self.origin[0]) / self.cellsize;
        let fr = (y - self.origin[1]) / self.cellsize;
        let inside = fc >= -0.5 && fc <= self.ncols as f64 - 0.5 && fr >= -0.5 && fr <= self.nrows as f64 - 0.5;
        if !inside || !(x.is_finite() && y.is_finite()) {
            return if self.strict_bounds { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let (c0, tc) = Self::cell(fc, self.ncols);
        let (r0, tr) = Self::cell(fr, self.nrows);
        let c1 = (c0 + 1).min(self.ncols - 1);
        let r1 = (r0 + 1).min(self.nrows - 1);
        let corners = [self.node(r0, c0), self.node(r0, c1), self.node(r1, c0), self.node(r1, c1)];
        if corners.iter().any(|&v| self.is_nodata(v)) {
            return f64::INFINITY;
        }
        let south = corners[0] * (1.0 - tc) + corners[1] * tc;
        let north = corners[2] * (1.0 - tc) + corners[3] * tc;
        south * (1.0 - tr) + north * tr
    }

    fn cell(f: f64, n: usize) -> (usize, f64) {
        let f = f.clamp(0.0, (n - 1) as f64);
        if n == 1 {
            return (0, 0.0);
        }
        let i = (f.floor() as usize).min(n - 2);
        (i, f - i as f64)
    }

    /// Whether `position` is at least `clearance` above the terrain.
    pub fn is_clear(&self, position: &Vec3, clearance: f64) -> bool {
        position.z >= self.elevation_at(position.x, position.y) + clearance
    }
}

/// Terrain height, see [`ElevationMap::elevation_at`].
pub fn elevation_at(map: &ElevationMap, x: f64, y: f64) -> f64 {
    map.elevation_at(x, y)
}

/// True iff every path sample at spacing `ds` (plus the end point) clears the
/// terrain by at least `clearance`.
pub fn motion_clear(path: &DubinsAirplanePath, map: &ElevationMap, clearance: f64, ds: f64) -> bool {
    assert!(ds > 0.0 && clearance >= 0.0);
    sample_offsets(path.length(), ds).all(|s| map.is_clear(&path.sample_at(s).state.position(), clearance))
}

pub fn load_elevation_map(document: &str) -> Result<ElevationMap> {
    let map: ElevationMap = serde_json::from_str(document)
        .map_err(|e| Error::parse(format!("elevation map line {} column {}", e.line(), e.column()), e.to_string()))?;
    map.validate()?;
    Ok(map)
}

pub fn save_elevation_map(map: &ElevationMap) -> String {
    let mut s = serde_json::to_string(map).expect("map serializes");
    s.push('\n');
    s
}

pub fn read_elevation_map(path: impl AsRef<Path>) -> Result<ElevationMap> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_elevation_map(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
        other => other,
    })
}
