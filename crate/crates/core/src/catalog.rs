//! Built-in lattice presentations.
//!
//! Most entries are generated from a Euclidean description: a basis, the
//! vertices of one period, and the edge lengths. Positions are stored in
//! lattice coordinates, which preserves the cyclic order of edges.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_file::{LatticeFile, References};
use crate::map::{Shift, ToroidalMap};

/// Printed values of one table row: `ν◇/2π`, `z` and `ν̄/2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub row: usize,
    pub nu_diamond: f64,
    pub z: f64,
    pub nu_bar: f64,
}

/// Whether the tabulated entropy is known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZTag {
    ZExact,
    ZNumeric,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub map: ToroidalMap,
    pub expected: Option<Expected>,
    pub z_tag: ZTag,
    pub references: References,
}

struct Recipe {
    name: &'static str,
    aliases: &'static [&'static str],
    expected: Option<Expected>,
    z_tag: ZTag,
    vol_hyperbolic: Option<f64>,
    build: fn() -> Result<ToroidalMap>,
}

const fn row(row: usize, nu_diamond: f64, z: f64, nu_bar: f64) -> Option<Expected> {
    Some(Expected {
        row,
        nu_diamond,
        z,
        nu_bar,
    })
}

use ZTag::{ZExact, ZNumeric};

const RECIPES: &[Recipe] = &[
    Recipe { name: "triangular", aliases: &["3^6"], expected: row(1, 1.61533, 1.61533, 1.74937), z_tag: ZExact, vol_hyperbolic: None, build: triangular },
    Recipe { name: "square", aliases: &["4^4"], expected: row(2, 1.16624, 1.16624, 1.16624), z_tag: ZExact, vol_hyperbolic: None, build: square },
    Recipe { name: "hexagonal", aliases: &["6^3", "honeycomb"], expected: row(3, 0.80766, 0.80766, 0.87468), z_tag: ZExact, vol_hyperbolic: None, build: hexagonal },
    Recipe { name: "kagome", aliases: &["3-6-3-6"], expected: row(4, 1.12157, 1.13570, 1.16624), z_tag: ZExact, vol_hyperbolic: None, build: kagome },
    Recipe { name: "4-8-8", aliases: &["square-octagon"], expected: row(5, 0.78139, 0.78668, 0.87468), z_tag: ZExact, vol_hyperbolic: None, build: square_octagon },
    Recipe { name: "medial-488", aliases: &[], expected: row(6, 1.10405, 1.12171, 1.16624), z_tag: ZExact, vol_hyperbolic: None, build: medial_488 },
    Recipe { name: "3-12-12", aliases: &[], expected: row(7, 0.70590, 0.72056, 0.87468), z_tag: ZExact, vol_hyperbolic: None, build: tri_dodecagonal },
    Recipe { name: "3-4-6-4", aliases: &[], expected: row(8, 1.14390, 1.14480, 1.16624), z_tag: ZNumeric, vol_hyperbolic: None, build: rhombitrihexagonal },
    Recipe { name: "4-6-12", aliases: &[], expected: row(9, 0.76795, 0.77780, 0.87468), z_tag: ZNumeric, vol_hyperbolic: None, build: truncated_trihexagonal },
    Recipe { name: "cairo", aliases: &["cairo-pentagonal"], expected: row(10, 0.93886, 0.94057, 0.97187), z_tag: ZNumeric, vol_hyperbolic: None, build: cairo },
    Recipe { name: "lattice-11", aliases: &[], expected: row(11, 0.84361, 0.84744, 0.90708), z_tag: ZNumeric, vol_hyperbolic: None, build: lattice_11 },
    Recipe { name: "lattice-12", aliases: &[], expected: row(12, 1.07689, 1.10365, 1.16624), z_tag: ZExact, vol_hyperbolic: None, build: lattice_12 },
    Recipe { name: "lattice-13", aliases: &[], expected: row(13, 1.39079, 1.39928, 1.74937), z_tag: ZExact, vol_hyperbolic: None, build: lattice_13 },
    Recipe { name: "3^2-4-3-4", aliases: &["snub-square"], expected: row(14, 1.40830, 1.41086, 1.45780), z_tag: ZNumeric, vol_hyperbolic: None, build: snub_square },
    Recipe { name: "4^4;3^3-4^2", aliases: &[], expected: row(15, 1.32761, 1.32774, 1.36062), z_tag: ZNumeric, vol_hyperbolic: None, build: square_elongated },
    Recipe { name: "3^6;3^3-4^2", aliases: &[], expected: row(16, 1.47731, 1.47739, 1.55499), z_tag: ZNumeric, vol_hyperbolic: None, build: triangle_elongated },
    Recipe { name: "3^3-4^2", aliases: &["elongated-triangular", "counterexample"], expected: None, z_tag: ZNumeric, vol_hyperbolic: Some(17.55732), build: elongated_triangular },
];

/// Names of the built-in lattices, table rows first.
pub fn list() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}

/// Looks up a built-in lattice by name or alias (case-insensitive).
pub fn get(name: &str) -> Result<CatalogEntry> {
    let key = name.trim().to_ascii_lowercase();
    let recipe = RECIPES
        .iter()
        .find(|r| r.name.eq_ignore_ascii_case(&key) || r.aliases.iter().any(|a| a.eq_ignore_ascii_case(&key)))
        .ok_or_else(|| Error::UnknownLattice(name.to_string()))?;
    let map = (recipe.build)()?.with_name(recipe.name);
    Ok(CatalogEntry {
        name: recipe.name,
        aliases: recipe.aliases,
        map,
        expected: recipe.expected,
        z_tag: recipe.z_tag,
        references: References {
            vol_hyperbolic: recipe.vol_hyperbolic,
            z_exact: None,
        },
    })
}

/// All built-in entries in catalog order.
pub fn all() -> Result<Vec<CatalogEntry>> {
    list().into_iter().map(get).collect()
}

/// Reads a user lattice file. The entry borrows the name `"user"`; the map
/// keeps the name given in the file.
pub fn load(path: impl AsRef<Path>) -> Result<(ToroidalMap, LatticeFile)> {
    let file = LatticeFile::load(path)?;
    let map = file.to_map()?;
    Ok((map, file))
}

/// Resolves a catalog name, falling back to a file path.
pub fn resolve(name_or_path: &str) -> Result<(ToroidalMap, References)> {
    match get(name_or_path) {
        Ok(e) => Ok((e.map, e.references)),
        Err(Error::UnknownLattice(_)) if Path::new(name_or_path).exists() => {
            let (map, file) = load(name_or_path)?;
            Ok((map, file.references))
        }
        Err(e) => Err(e),
    }
}

/// File representation of a built-in entry.
pub fn export(entry: &CatalogEntry) -> LatticeFile {
    let mut file = LatticeFile::from_map(&entry.map);
    file.references = entry.references.clone();
    file
}

/// Periodic point set in the plane with edges at prescribed lengths.
struct Euclidean {
    basis: [[f64; 2]; 2],
    points: Vec<[f64; 2]>,
    lengths: Vec<f64>,
}

impl Euclidean {
    fn build(&self) -> Result<ToroidalMap> {
        let [a, b] = self.basis;
        let det = a[0] * b[1] - a[1] * b[0];
        assert!(det > 0.0, "basis must be positively oriented");
        let to_lattice = |p: [f64; 2]| {
            [
                (p[0] * b[1] - p[1] * b[0]) / det,
                (a[0] * p[1] - a[1] * p[0]) / det,
            ]
        };
        let eps = 1e-7;
        let mut pos: Vec<[f64; 2]> = Vec::new();
        for &p in &self.points {
            let q = to_lattice(p);
            let mut r = [q[0] - (q[0] + eps).floor(), q[1] - (q[1] + eps).floor()];
            for c in &mut r {
                if c.abs() < eps {
                    *c = 0.0;
                }
            }
            let dup = pos.iter().any(|s| {
                let dx = r[0] - s[0];
                let dy = r[1] - s[1];
                (dx - dx.round()).abs() < eps && (dy - dy.round()).abs() < eps
            });
            if !dup {
                pos.push(r);
            }
        }
        let world = |p: [f64; 2]| [p[0] * a[0] + p[1] * b[0], p[0] * a[1] + p[1] * b[1]];
        let mut edges: Vec<(usize, usize, Shift)> = Vec::new();
        for i in 0..pos.len() {
            for j in i..pos.len() {
                for sx in -2..=2i64 {
                    for sy in -2..=2i64 {
                        if i == j && (sx, sy) <= (0, 0) {
                            continue;
                        }
                        let d = world([
                            pos[j][0] + sx as f64 - pos[i][0],
                            pos[j][1] + sy as f64 - pos[i][1],
                        ]);
                        let len = d[0].hypot(d[1]);
                        if self.lengths.iter().any(|&l| (len - l).abs() < 1e-4) {
                            edges.push((i, j, [sx, sy]));
                        }
                    }
                }
            }
        }
        ToroidalMap::from_positions(pos.len(), &edges, pos)
    }
}

fn polar(r: f64, deg: f64) -> [f64; 2] {
    let t = deg.to_radians();
    [r * t.cos(), r * t.sin()]
}

fn hex_basis(s: f64) -> [[f64; 2]; 2] {
    [[s, 0.0], [s / 2.0, s * 3f64.sqrt() / 2.0]]
}

fn ring(r: f64, start_deg: f64, count: usize) -> Vec<[f64; 2]> {
    (0..count)
        .map(|k| polar(r, start_deg + 360.0 * k as f64 / count as f64))
        .collect()
}

fn triangular() -> Result<ToroidalMap> {
    Euclidean { basis: hex_basis(1.0), points: vec![[0.0, 0.0]], lengths: vec![1.0] }.build()
}

fn square() -> Result<ToroidalMap> {
    Euclidean { basis: [[1.0, 0.0], [0.0, 1.0]], points: vec![[0.0, 0.0]], lengths: vec![1.0] }.build()
}

fn hexagonal() -> Result<ToroidalMap> {
    let s3 = 3f64.sqrt();
    Euclidean {
        basis: [[s3, 0.0], [s3 / 2.0, 1.5]],
        points: vec![[0.0, 0.0], [s3 / 2.0, 0.5]],
        lengths: vec![1.0],
    }
    .build()
}

fn kagome() -> Result<ToroidalMap> {
    Euclidean {
        basis: hex_basis(2.0),
        points: vec![[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]],
        lengths: vec![1.0],
    }
    .build()
}

fn square_octagon() -> Result<ToroidalMap> {
    let s = 1.0 + 2f64.sqrt();
    Euclidean {
        basis: [[s, 0.0], [0.0, s]],
        points: ring(1.0 / 2f64.sqrt(), 0.0, 4),
        lengths: vec![1.0],
    }
    .build()
}

/// Midpoints of the square-octagon edges, joined around each face corner.
fn medial_488() -> Result<ToroidalMap> {
    let s = 1.0 + 2f64.sqrt();
    let r = 1.0 / 2f64.sqrt();
    let mut points = ring(0.5, 45.0, 4);
    points.push([s / 2.0, 0.0]);
    points.push([0.0, s / 2.0]);
    let long = ((s - r) / 2.0).hypot(r / 2.0);
    Euclidean { basis: [[s, 0.0], [0.0, s]], points, lengths: vec![r, long] }.build()
}

/// Circumradius of a regular dodecagon with unit sides.
fn dodecagon_radius() -> f64 {
    0.5 / 15f64.to_radians().sin()
}

fn tri_dodecagonal() -> Result<ToroidalMap> {
    Euclidean {
        basis: hex_basis(2.0 + 3f64.sqrt()),
        points: ring(dodecagon_radius(), 15.0, 12),
        lengths: vec![1.0],
    }
    .build()
}

fn rhombitrihexagonal() -> Result<ToroidalMap> {
    Euclidean {
        basis: hex_basis(1.0 + 3f64.sqrt()),
        points: ring(1.0, 30.0, 6),
        lengths: vec![1.0],
    }
    .build()
}

fn truncated_trihexagonal() -> Result<ToroidalMap> {
    Euclidean {
        basis: hex_basis(3.0 + 3f64.sqrt()),
        points: ring(dodecagon_radius(), 15.0, 12),
        lengths: vec![1.0],
    }
    .build()
}

fn snub_square_geometry() -> Euclidean {
    let s = (1.0 + 3f64.sqrt()) / 2f64.sqrt();
    Euclidean {
        basis: [[s, 0.0], [0.0, s]],
        points: ring(1.0 / 2f64.sqrt(), 60.0, 4),
        lengths: vec![1.0],
    }
}

fn snub_square() -> Result<ToroidalMap> {
    snub_square_geometry().build()
}

/// Dual of the snub square tiling, with vertices at face centroids.
fn cairo() -> Result<ToroidalMap> {
    let snub = snub_square_geometry();
    let map = snub.build()?;
    let [a, b] = snub.basis;
    let pos = map.positions().expect("built with positions");
    let mut points = Vec::new();
    for face in map.faces() {
        let mut c = [0.0, 0.0];
        for &d in &face.darts {
            let p = pos[map.vertex_of(d)];
            let o = map.face_offset(d);
            let q = [p[0] + o[0] as f64, p[1] + o[1] as f64];
            c[0] += q[0] * a[0] + q[1] * b[0];
            c[1] += q[0] * a[1] + q[1] * b[1];
        }
        let n = face.darts.len() as f64;
        points.push([c[0] / n, c[1] / n]);
    }
    // Square centre to triangle centroid, and triangle centroid to triangle centroid.
    let short = 1.0 / 3f64.sqrt();
    let long = 0.5 + 0.5 / 3f64.sqrt();
    Euclidean { basis: snub.basis, points, lengths: vec![short, long] }.build()
}

fn elongated_triangular() -> Result<ToroidalMap> {
    Euclidean {
        basis: [[1.0, 0.0], [0.5, 1.0 + 3f64.sqrt() / 2.0]],
        points: vec![[0.0, 0.0], [0.0, 1.0]],
        lengths: vec![1.0],
    }
    .build()
}

fn square_elongated() -> Result<ToroidalMap> {
    Euclidean {
        basis: [[1.0, 0.0], [0.5, 2.0 + 3f64.sqrt() / 2.0]],
        points: vec![[0.0, 0.0], [0.0, 1.0], [0.0, 2.0]],
        lengths: vec![1.0],
    }
    .build()
}

fn triangle_elongated() -> Result<ToroidalMap> {
    Euclidean {
        basis: [[1.0, 0.0], [0.0, 1.0 + 3f64.sqrt()]],
        points: vec![[0.0, 0.0], [0.0, 1.0], [0.5, 1.0 + 3f64.sqrt() / 2.0]],
        lengths: vec![1.0],
    }
    .build()
}

fn lattice_11() -> Result<ToroidalMap> {
    let pos = vec![
        [2.0 / 3.0, 1.0 / 2.0],
        [7.0 / 9.0, 13.0 / 18.0],
        [2.0 / 3.0, 5.0 / 6.0],
        [1.0 / 3.0, 5.0 / 18.0],
        [0.0, 1.0 / 2.0],
        [1.0 / 3.0, 13.0 / 18.0],
        [0.0, 1.0 / 6.0],
        [8.0 / 9.0, 5.0 / 18.0],
        [1.0 / 3.0, 0.0],
    ];
    let edges = [
        (1, 2, [0, 0]),
        (6, 3, [0, 0]),
        (3, 8, [0, 0]),
        (2, 6, [1, 1]),
        (8, 1, [-1, -1]),
        (7, 4, [1, 0]),
        (0, 3, [0, 0]),
        (6, 7, [-1, 0]),
        (5, 2, [0, 0]),
        (4, 5, [0, 0]),
        (1, 0, [0, 0]),
        (7, 8, [0, 0]),
        (0, 4, [1, 0]),
        (5, 8, [0, 1]),
    ];
    ToroidalMap::from_positions(9, &edges, pos)
}

/// Triangular lattice with every third vertex of each row split off: a
/// 3×1 supercell in which two of the three edges between rows are removed.
fn lattice_12() -> Result<ToroidalMap> {
    let pos = vec![[0.0, 0.0], [1.0 / 3.0, 0.0], [2.0 / 3.0, 0.0]];
    let edges = [
        (0, 1, [0, 0]),
        (1, 2, [0, 0]),
        (2, 0, [1, 0]),
        (0, 0, [0, 1]),
        (0, 2, [-1, 1]),
        (1, 0, [0, 1]),
    ];
    ToroidalMap::from_positions(3, &edges, pos)
}

fn lattice_13() -> Result<ToroidalMap> {
    let pos = vec![[0.0, 0.0], [0.5, 0.0]];
    let edges = [
        (0, 1, [0, 0]),
        (0, 1, [-1, 1]),
        (1, 0, [1, 0]),
        (1, 1, [0, 1]),
        (1, 0, [0, 1]),
    ];
    ToroidalMap::from_positions(2, &edges, pos)
}
