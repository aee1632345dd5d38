use std::path::Path;

use serde::{Deserialize, Serialize};

use super::WindVector;
use crate::{Error, Result, Vec3};

/// Regular 3D grid of wind vectors with trilinear interpolation.
///
/// Values are stored x-fastest: `index = i + nx·(j + ny·k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GriddedWindField {
    nx: usize,
    ny: usize,
    nz: usize,
    origin: [f64; 3],
    spacing: [f64; 3],
    wx: Vec<f64>,
    wy: Vec<f64>,
    wz: Vec<f64>,
}

impl GriddedWindField {
    pub fn new(
        counts: [usize; 3],
        origin: [f64; 3],
        spacing: [f64; 3],
        wx: Vec<f64>,
        wy: Vec<f64>,
        wz: Vec<f64>,
    ) -> Result<Self> {
        let g = GriddedWindField {
            nx: counts[0],
            ny: counts[1],
            nz: counts[2],
            origin,
            spacing,
            wx,
            wy,
            wz,
        };
        g.validate("wind grid")?;
        Ok(g)
    }

    fn validate(&self, loc: &str) -> Result<()> {
        for (name, n) in [("nx", self.nx), ("ny", self.ny), ("nz", self.nz)] {
            if n < 2 {
                return Err(Error::parse(format!("{loc}: {name}"), format!("must be ≥ 2, got {n}")));
            }
        }
        for (axis, (&o, &d)) in ["x", "y", "z"].iter().zip(self.origin.iter().zip(&self.spacing)) {
            if !o.is_finite() {
                return Err(Error::parse(format!("{loc}: origin[{axis}]"), "must be finite"));
            }
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::parse(format!("{loc}: spacing[{axis}]"), format!("must be > 0, got {d}")));
            }
        }
        let expected = self.nx * self.ny * self.nz;
        for (name, values) in [("wx", &self.wx), ("wy", &self.wy), ("wz", &self.wz)] {
            if values.len() != expected {
                return Err(Error::parse(
                    format!("{loc}: {name}"),
                    format!("expected nx·ny·nz = {expected} values, found {}", values.len()),
                ));
            }
            if let Some(i) = values.iter().position(|v| !v.is_finite()) {
                return Err(Error::parse(format!("{loc}: {name}[{i}]"), "non-finite value"));
            }
        }
        Ok(())
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn components(&self) -> [&[f64]; 3] {
        [&self.wx, &self.wy, &self.wz]
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.nx * (j + self.ny * k)
    }

    pub fn node(&self, i: usize, j: usize, k: usize) -> WindVector {
        let idx = self.index(i, j, k);
        WindVector::new(self.wx[idx], self.wy[idx], self.wz[idx])
    }

    /// Cell index and fractional offset along one axis, clamped to the grid.
    fn locate(&self, axis: usize, coord: f64, n: usize) -> (usize, f64) {
        let f = ((coord - self.origin[axis]) / self.spacing[axis]).clamp(0.0, (n - 1) as f64);
        let i = (f.floor() as usize).min(n - 2);
        (i, f - i as f64)
    }

    pub fn sample(&self, p: &Vec3) -> WindVector {
        let (i, tx) = self.locate(0, p.x, self.nx);
        let (j, ty) = self.locate(1, p.y, self.ny);
        let (k, tz) = self.locate(2, p.z, self.nz);
        let mix = |a: f64, b: f64, t: f64| if t == 1.0 { b } else { a + (b - a) * t };
        let lerp = |values: &[f64]| {
            let v = |di, dj, dk| values[self.index(i + di, j + dj, k + dk)];
            let c00 = mix(v(0, 0, 0), v(1, 0, 0), tx);
            let c10 = mix(v(0, 1, 0), v(1, 1, 0), tx);
            let c01 = mix(v(0, 0, 1), v(1, 0, 1), tx);
            let c11 = mix(v(0, 1, 1), v(1, 1, 1), tx);
            mix(mix(c00, c10, ty), mix(c01, c11, ty), tz)
        };
        WindVector::new(lerp(&self.wx), lerp(&self.wy), lerp(&self.wz))
    }
}

/// Parses a wind-grid document.
pub fn load_wind_grid(document: &str) -> Result<GriddedWindField> {
    let grid: GriddedWindField = serde_json::from_str(document)
        .map_err(|e| Error::parse(format!("wind grid line {} column {}", e.line(), e.column()), e.to_string()))?;
    grid.validate("wind grid")?;
    Ok(grid)
}

/// Serializes a wind grid. Reals are written in shortest round-trip form, so
/// loading the document reproduces every value bit-exactly.
pub fn save_wind_grid(grid: &GriddedWindField) -> String {
    let mut s = serde_json::to_string(grid).expect("grid serializes");
    s.push('\n');
    s
}

pub fn read_wind_grid(path: impl AsRef<Path>) -> Result<GriddedWindField> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_wind_grid(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
        other => other,
    })
}

pub fn write_wind_grid(path: impl AsRef<Path>, grid: &GriddedWindField) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, save_wind_grid(grid)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn constant_grid() -> GriddedWindField {
        GriddedWindField::new(
            [2, 2, 2],
            [0.0, 0.0, 0.0],
            [10.0, 10.0, 10.0],
            vec![1.0; 8],
            vec![2.0; 8],
            vec![3.0; 8],
        )
        .unwrap()
    }

    fn ramp_x() -> GriddedWindField {
        // wx = x/10 on a 3×2×2 grid
        let mut wx = Vec::new();
        for _k in 0..2 {
            for _j in 0..2 {
                for i in 0..3 {
                    wx.push(i as f64 * 4.0);
                }
            }
        }
        GriddedWindField::new([3, 2, 2], [0.0, 0.0, 0.0], [40.0, 10.0, 10.0], wx, vec![0.0; 12], vec![0.0; 12]).unwrap()
    }

    #[test]
    fn constant_field_interpolates_constant() {
        let g = constant_grid();
        for p in [Vec3::new(3.0, 4.0, 5.0), Vec3::new(9.9, 0.1, 7.0)] {
            assert_eq!(g.sample(&p), WindVector::new(1.0, 2.0, 3.0));
        }
    }

    #[test]
    fn linear_midpoint_is_mean() {
        let g = ramp_x();
        let w = g.sample(&Vec3::new(20.0, 5.0, 5.0));
        assert!((w.wx - 0.5 * (0.0 + 4.0)).abs() < 1e-15);
        let w = g.sample(&Vec3::new(60.0, 5.0, 5.0));
        assert!((w.wx - 6.0).abs() < 1e-15);
    }

    #[test]
    fn outside_is_clamped() {
        let g = ramp_x();
        assert_eq!(g.sample(&Vec3::new(-50.0, 5.0, 5.0)), g.sample(&Vec3::new(0.0, 5.0, 5.0)));
        assert_eq!(g.sample(&Vec3::new(500.0, 50.0, -9.0)), g.sample(&Vec3::new(80.0, 10.0, 0.0)));
    }

    #[test]
    fn minimal_document() {
        let doc = r#"{"nx":2,"ny":2,"nz":2,"origin":[0,0,0],"spacing":[1,1,1],
            "wx":[0,0,0,0,0,0,0,0],"wy":[1,1,1,1,1,1,1,1],"wz":[0,0,0,0,0,0,0,0]}"#;
        let g = load_wind_grid(doc).unwrap();
        assert_eq!(g.components()[1].len(), 8);
    }

    #[test]
    fn length_mismatch_names_array() {
        let doc = r#"{"nx":2,"ny":2,"nz":2,"origin":[0,0,0],"spacing":[1,1,1],
            "wx":[0,0,0,0,0,0,0,0],"wy":[1,1,1,1,1,1,1],"wz":[0,0,0,0,0,0,0,0]}"#;
        let err = load_wind_grid(doc).unwrap_err().to_string();
        assert!(err.contains("wy"), "{err}");
        assert!(err.contains("expected"), "{err}");
    }

    #[test]
    fn malformed_header_rejected() {
        let err = load_wind_grid(r#"{"nx":2,"ny":2}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let doc = r#"{"nx":2,"ny":2,"nz":2,"origin":[0,0,0],"spacing":[1,0,1],
            "wx":[0,0,0,0,0,0,0,0],"wy":[1,1,1,1,1,1,1,1],"wz":[0,0,0,0,0,0,0,0]}"#;
        assert!(load_wind_grid(doc).unwrap_err().to_string().contains("spacing[y]"));
    }

    #[test]
    fn overflowing_value_rejected() {
        let doc = r#"{"nx":2,"ny":2,"nz":2,"origin":[0,0,0],"spacing":[1,1,1],
            "wx":[0,0,0,0,0,0,0,1e999],"wy":[1,1,1,1,1,1,1,1],"wz":[0,0,0,0,0,0,0,0]}"#;
        assert!(load_wind_grid(doc).is_err());
    }

    proptest! {
        #[test]
        fn save_load_round_trip(values in proptest::collection::vec(-1e3f64..1e3, 180),
                                ox in -1e4f64..1e4, dx in 1e-3f64..1e3) {
            let g = GriddedWindField::new(
                [5, 4, 3],
                [ox, -ox, 0.5 * ox],
                [dx, 2.0 * dx, 0.1 * dx],
                values[..60].to_vec(),
                values[60..120].to_vec(),
                values[120..].to_vec(),
            ).unwrap();
            let back = load_wind_grid(&save_wind_grid(&g)).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn nodes_reproduced_exactly(values in proptest::collection::vec(-50f64..50.0, 24),
                                    i in 0usize..4, j in 0usize..3, k in 0usize..2) {
            let g = GriddedWindField::new(
                [4, 3, 2], [1.0, 2.0, 3.0], [7.0, 5.0, 11.0],
                values.clone(), values.clone(), values,
            ).unwrap();
            let p = Vec3::new(1.0 + 7.0 * i as f64, 2.0 + 5.0 * j as f64, 3.0 + 11.0 * k as f64);
            prop_assert_eq!(g.sample(&p), g.node(i, j, k));
        }

        #[test]
        fn interpolation_is_continuous(values in proptest::collection::vec(-50f64..50.0, 24),
                                       x in 0f64..21.0, y in 0f64..10.0, z in 0f64..11.0) {
            let g = GriddedWindField::new(
                [4, 3, 2], [0.0, 0.0, 0.0], [7.0, 5.0, 11.0],
                values.clone(), values.clone(), values,
            ).unwrap();
            let a = g.sample(&Vec3::new(x, y, z));
            let b = g.sample(&Vec3::new(x + 1e-9, y - 1e-9, z + 1e-9));
            prop_assert!((a.as_vec() - b.as_vec()).norm() < 1e-6);
        }
    }
}
