//! JSON presentation of a lattice: vertices, shifted edges, optional
//! rotation, half-angles and cited reference values.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{Shift, ToroidalMap};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    #[serde(default)]
    pub shift: Shift,
}

/// Which black endpoint of the Temperleyan half-edge an angle belongs to.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleSide {
    #[default]
    Primal,
    Dual,
}

/// Half-angle `θ = (theta_over_pi)·π` at one end of a primal edge. With
/// `side = dual` it belongs to the face on the right of that dart instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleRecord {
    pub edge: usize,
    pub end: u8,
    pub theta_over_pi: String,
    #[serde(default, skip_serializing_if = "is_primal")]
    pub side: AngleSide,
}

fn is_primal(s: &AngleSide) -> bool {
    *s == AngleSide::Primal
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct References {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vol_hyperbolic: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_exact: Option<f64>,
}

impl References {
    pub fn is_empty(&self) -> bool {
        self.vol_hyperbolic.is_none() && self.z_exact.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub name: String,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    /// Vertex id → darts in counter-clockwise order as `[edge, end]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<[usize; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<AngleRecord>>,
    #[serde(default, skip_serializing_if = "References::is_empty")]
    pub references: References,
}

impl LatticeFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        LatticeFile::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    /// Describes `map`, always with an explicit rotation so that loading the
    /// result reproduces the same darts and cyclic orders.
    pub fn from_map(map: &ToroidalMap) -> Self {
        let vertices = (0..map.vertex_count())
            .map(|id| VertexRecord {
                id,
                pos: map.positions().map(|p| p[id]),
            })
            .collect();
        let edges = map
            .edges()
            .into_iter()
            .map(|(u, v, shift)| EdgeRecord { u, v, shift })
            .collect();
        let rotation = (0..map.vertex_count())
            .map(|v| {
                let darts = map.darts_at(v).iter().map(|&d| [d / 2, d % 2]).collect();
                (v.to_string(), darts)
            })
            .collect();
        LatticeFile {
            name: map.name().unwrap_or("unnamed").to_string(),
            vertices,
            edges,
            rotation: Some(rotation),
            angles: None,
            references: References::default(),
        }
    }

    /// Builds the map. Without an explicit rotation, every vertex needs a
    /// position and darts are ordered by direction.
    pub fn to_map(&self) -> Result<ToroidalMap> {
        let n = self.vertices.len();
        let mut index = vec![usize::MAX; n];
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id >= n || index[v.id] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "vertex ids must be a permutation of 0..{n} (offending id {})",
                    v.id
                )));
            }
            index[v.id] = i;
        }
        let edges: Vec<(usize, usize, Shift)> =
            self.edges.iter().map(|e| (e.u, e.v, e.shift)).collect();
        let positions: Option<Vec<[f64; 2]>> = (0..n)
            .map(|id| self.vertices[index[id]].pos)
            .collect::<Option<Vec<_>>>();
        let map = match &self.rotation {
            Some(rot) => {
                let mut cycles = vec![Vec::new(); n];
                for (key, darts) in rot {
                    let v: usize = key.parse().map_err(|_| {
                        Error::InvalidInput(format!("rotation key `{key}` is not a vertex id"))
                    })?;
                    if v >= n {
                        return Err(Error::InvalidInput(format!(
                            "rotation names unknown vertex {v}"
                        )));
                    }
                    cycles[v] = darts
                        .iter()
                        .map(|&[k, end]| {
                            if end > 1 {
                                Err(Error::InvalidInput(format!("dart end {end} is not 0 or 1")))
                            } else {
                                Ok(2 * k + end)
                            }
                        })
                        .collect::<Result<_>>()?;
                }
                ToroidalMap::from_rotation(n, &edges, &cycles, positions)?
            }
            None => {
                let positions = positions.ok_or_else(|| {
                    Error::InvalidInput(
                        "a lattice without rotation needs positions for every vertex".into(),
                    )
                })?;
                ToroidalMap::from_positions(n, &edges, positions)?
            }
        };
        Ok(map.with_name(self.name.clone()))
    }
}

/// Parses `"p/q"`, an integer, or a decimal.
pub fn parse_ratio(text: &str) -> Result<f64> {
    let bad = || Error::InvalidInput(format!("`{text}` is not a ratio"));
    let t = text.trim();
    let value = match t.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => t.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}
