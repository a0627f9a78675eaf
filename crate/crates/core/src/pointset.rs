//! JSON point-set files: `{"dim": d, "points": [[x0, ..., xd], ...]}`.

use serde::{Deserialize, Serialize};

use crate::centering::PointConfiguration;
use crate::error::{Error, Result};
use crate::models::SpherePoint;

/// Rows farther than this from unit norm are rejected unless renormalization is requested.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointSetFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: PointSetFile =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        file.check_shape()?;
        Ok(file)
    }

    pub fn from_points(dim: usize, points: &[SpherePoint]) -> Self {
        PointSetFile {
            dim,
            points: points
                .iter()
                .map(|p| p.coords().iter().copied().collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("point sets serialize")
    }

    fn check_shape(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::DegenerateInput("dim must be at least 1".into()));
        }
        for (i, row) in self.points.iter().enumerate() {
            if row.len() != self.dim + 1 {
                return Err(Error::DegenerateInput(format!(
                    "row {i} has {} entries, expected dim + 1 = {}",
                    row.len(),
                    self.dim + 1
                )));
            }
            if !row.iter().all(|c| c.is_finite()) {
                return Err(Error::DegenerateInput(format!("row {i} is not finite")));
            }
        }
        Ok(())
    }

    /// Converts rows to sphere points. Rows within [`UNIT_TOL`] of unit norm are
    /// snapped to the sphere; others are rejected unless `renormalize` is set.
    pub fn sphere_points(&self, renormalize: bool) -> Result<Vec<SpherePoint>> {
        self.check_shape()?;
        self.points
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let v = nalgebra::DVector::from_column_slice(row);
                let norm = v.norm();
                if !renormalize && (norm - 1.0).abs() > UNIT_TOL {
                    return Err(Error::DegenerateInput(format!(
                        "row {i} has norm {norm}, not a unit vector (use --renormalize to project)"
                    )));
                }
                SpherePoint::normalized(v)
            })
            .collect()
    }

    pub fn configuration(
        &self,
        renormalize: bool,
        min_separation: f64,
    ) -> Result<PointConfiguration> {
        PointConfiguration::with_separation(self.sphere_points(renormalize)?, min_separation)
    }
}
