use serde::{Deserialize, Serialize};

use super::{WindField, WindVector};
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShearAxis {
    X,
    Y,
}

/// Closed-form synthetic wind fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnalyticWindField {
    Uniform { wind: WindVector },
    /// Two horizontal half-spaces split at `axis = boundary`. The wind blows
    /// along the other horizontal axis: `+magnitude` where the coordinate is
    /// below the boundary, `-magnitude` at or above it.
    Shear {
        boundary: f64,
        magnitude: f64,
        axis: ShearAxis,
    },
    /// Vertical wind `strength` inside an infinite vertical cylinder, calm
    /// outside.
    Updraft { center: [f64; 2], radius: f64, strength: f64 },
}

impl AnalyticWindField {
    pub fn sample(&self, p: &Vec3) -> WindVector {
        match *self {
            AnalyticWindField::Uniform { wind } => wind,
            AnalyticWindField::Shear { boundary, magnitude, axis } => {
                let (coord, along_x) = match axis {
                    ShearAxis::X => (p.x, false),
                    ShearAxis::Y => (p.y, true),
                };
                let w = if coord < boundary { magnitude } else { -magnitude };
                if along_x {
                    WindVector::new(w, 0.0, 0.0)
                } else {
                    WindVector::new(0.0, w, 0.0)
                }
            }
            AnalyticWindField::Updraft { center, radius, strength } => {
                let inside = (p.x - center[0]).hypot(p.y - center[1]) <= radius;
                WindVector::new(0.0, 0.0, if inside { strength } else { 0.0 })
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} must be finite")))
            }
        };
        match *self {
            AnalyticWindField::Uniform { wind } => {
                if !wind.is_finite() {
                    return Err(Error::invalid("uniform wind must be finite"));
                }
            }
            AnalyticWindField::Shear { boundary, magnitude, .. } => {
                finite("shear boundary", boundary)?;
                finite("shear magnitude", magnitude)?;
                if magnitude < 0.0 {
                    return Err(Error::invalid(format!("shear magnitude must be ≥ 0, got {magnitude}")));
                }
            }
            AnalyticWindField::Updraft { center, radius, strength } => {
                finite("updraft center x", center[0])?;
                finite("updraft center y", center[1])?;
                finite("updraft strength", strength)?;
                if !(radius.is_finite() && radius > 0.0) {
                    return Err(Error::invalid(format!("updraft radius must be > 0, got {radius}")));
                }
            }
        }
        Ok(())
    }
}

/// Builds a synthetic field after checking its parameters.
pub fn make_synthetic(spec: AnalyticWindField) -> Result<WindField> {
    spec.validate()?;
    Ok(WindField::Analytic(spec))
}
