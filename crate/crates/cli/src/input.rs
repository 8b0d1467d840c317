use crate::error::CliError;
use polycc::geometry::regular_polygon_vertices;
use polycc::{Configuration, Point};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// On-disk description of a configuration. Without `positions` the bodies
/// are the regular `n`-polygon on the unit circle (vertex masses from
/// `masses`, one extra central body when `center_mass` is positive). With
/// `positions` the file lists every body explicitly: `masses` pairs up with
/// `positions` one-to-one and no central body is appended.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: usize,
    pub masses: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_squared: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<[f64; 2]>>,
}

pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::usage(format!(
            "cannot read configuration file {}: {e}",
            path.display()
        ))
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!(
            "malformed configuration file {}: {e}",
            path.display()
        ))
    })
}

pub fn build(file: &ConfigFile) -> Result<Configuration, CliError> {
    match &file.positions {
        Some(points) => {
            if file.masses.len() != points.len() {
                return Err(CliError::usage(format!(
                    "{} masses for {} explicit positions; the lists must pair up",
                    file.masses.len(),
                    points.len()
                )));
            }
            if file.center_mass.unwrap_or(0.0) != 0.0 {
                return Err(CliError::usage(
                    "explicit positions already list every body; \
                     drop center_mass or include the central body in the lists",
                ));
            }
            let positions: Vec<Point> = points.iter().map(|[x, y]| Point::new(*x, *y)).collect();
            Ok(Configuration::new(positions, file.masses.clone())?)
        }
        None => {
            if file.masses.len() != file.n {
                return Err(CliError::usage(format!(
                    "{} vertex masses for an n = {} polygon",
                    file.masses.len(),
                    file.n
                )));
            }
            let center_mass = file.center_mass.unwrap_or(0.0);
            if center_mass == 0.0 {
                let vertices = regular_polygon_vertices(file.n)?;
                Ok(Configuration::new(vertices, file.masses.clone())?)
            } else {
                Ok(Configuration::polygon_plus_center(
                    file.n,
                    &file.masses,
                    center_mass,
                )?)
            }
        }
    }
}
