//! Combinatorial maps on the torus.
//!
//! Edge `k` owns darts `2k` (tail `u`) and `2k + 1` (tail `v`), so the twin
//! of a dart is `d ^ 1`. Every dart carries a `ℤ²` shift: the lattice cell of
//! its head copy relative to its tail copy in the universal cover.

mod construct;
mod cover;
mod iso;
mod validate;

pub use construct::{dual, medial, parallel_edges, supercell, temperleyan, truncate, Temperleyan};
pub use cover::{cover, MultiGraph};
pub use iso::is_isomorphic;
pub use validate::{validate, validate_parts, Check, Diagnostics};

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Shift = [i64; 2];

#[inline]
pub fn twin(d: usize) -> usize {
    d ^ 1
}

#[inline]
pub(crate) fn add(a: Shift, b: Shift) -> Shift {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub(crate) fn sub(a: Shift, b: Shift) -> Shift {
    [a[0] - b[0], a[1] - b[1]]
}

/// Raw, unchecked map data.
#[derive(Debug, Clone, PartialEq)]
pub struct MapParts {
    pub name: Option<String>,
    pub vertex_count: usize,
    pub vertex_of: Vec<usize>,
    pub rot_next: Vec<usize>,
    pub shift: Vec<Shift>,
    /// Vertex coordinates in lattice-basis units, each in `[0, 1)²`.
    pub positions: Option<Vec<[f64; 2]>>,
}

/// One face boundary, traced with `next(d) = rot_next(twin(d))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<usize>,
    pub total_shift: Shift,
}

impl FaceWalk {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

/// Well-formed toroidal map: `rot_next` is a permutation whose orbits are
/// exactly the vertex classes. Geometric properties (cellularity, shift
/// antisymmetry, connectivity) are reported by [`validate`].
#[derive(Debug, Clone)]
pub struct ToroidalMap {
    parts: MapParts,
    rot_prev: Vec<usize>,
    faces: Vec<FaceWalk>,
    face_of: Vec<usize>,
    /// Tail cell of each dart inside the canonical lift of its face.
    face_offset: Vec<Shift>,
}

impl ToroidalMap {
    pub fn new(parts: MapParts) -> Result<Self> {
        check_structure(&parts)?;
        check_rotation(&parts).map_err(Error::MalformedMap)?;
        let n = parts.rot_next.len();
        let mut rot_prev = vec![0; n];
        for (d, &r) in parts.rot_next.iter().enumerate() {
            rot_prev[r] = d;
        }
        let mut face_of = vec![usize::MAX; n];
        let mut face_offset = vec![[0, 0]; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut cell = [0, 0];
            let mut d = start;
            loop {
                face_of[d] = id;
                face_offset[d] = cell;
                darts.push(d);
                cell = add(cell, parts.shift[d]);
                d = parts.rot_next[twin(d)];
                if d == start {
                    break;
                }
            }
            faces.push(FaceWalk {
                darts,
                total_shift: cell,
            });
        }
        Ok(ToroidalMap {
            parts,
            rot_prev,
            faces,
            face_of,
            face_offset,
        })
    }

    /// Builds a map from an edge list `(u, v, shift)` and an explicit rotation:
    /// `rotation[v]` lists the darts at `v` in counter-clockwise order.
    pub fn from_rotation(
        vertex_count: usize,
        edges: &[(usize, usize, Shift)],
        rotation: &[Vec<usize>],
        positions: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        if rotation.len() != vertex_count {
            return Err(Error::MalformedMap(format!(
                "rotation lists {} vertices, expected {vertex_count}",
                rotation.len()
            )));
        }
        let mut parts = parts_from_edges(vertex_count, edges, positions)?;
        let n = parts.vertex_of.len();
        let mut seen = vec![false; n];
        let mut rot_next = vec![usize::MAX; n];
        for (v, cyc) in rotation.iter().enumerate() {
            for (i, &d) in cyc.iter().enumerate() {
                if d >= n {
                    return Err(Error::MalformedMap(format!("dangling dart {d}")));
                }
                if parts.vertex_of[d] != v {
                    return Err(Error::MalformedMap(format!(
                        "dart {d} listed at vertex {v} but its tail is {}",
                        parts.vertex_of[d]
                    )));
                }
                if seen[d] {
                    return Err(Error::MalformedMap(format!("dart {d} listed twice")));
                }
                seen[d] = true;
                rot_next[d] = cyc[(i + 1) % cyc.len()];
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedMap(format!(
                "dart {d} missing from the rotation"
            )));
        }
        parts.rot_next = rot_next;
        ToroidalMap::new(parts)
    }

    /// Builds a map from an edge list and vertex positions, ordering darts at
    /// each vertex by the angle of their displacement vector.
    pub fn from_positions(
        vertex_count: usize,
        edges: &[(usize, usize, Shift)],
        positions: Vec<[f64; 2]>,
    ) -> Result<Self> {
        if positions.len() != vertex_count {
            return Err(Error::MalformedMap(format!(
                "{} positions for {vertex_count} vertices",
                positions.len()
            )));
        }
        let mut parts = parts_from_edges(vertex_count, edges, Some(positions))?;
        parts.rot_next = rotation_from_positions(&parts)?;
        ToroidalMap::new(parts)
    }

    pub fn parts(&self) -> &MapParts {
        &self.parts
    }

    pub fn into_parts(self) -> MapParts {
        self.parts
    }

    pub fn name(&self) -> Option<&str> {
        self.parts.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.parts.name = Some(name.into());
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.vertex_count
    }

    pub fn dart_count(&self) -> usize {
        self.parts.vertex_of.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.parts.vertex_of[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.parts.vertex_of[twin(d)]
    }

    pub fn rot_next(&self, d: usize) -> usize {
        self.parts.rot_next[d]
    }

    pub fn rot_prev(&self, d: usize) -> usize {
        self.rot_prev[d]
    }

    pub fn shift(&self, d: usize) -> Shift {
        self.parts.shift[d]
    }

    /// Successor of `d` along its face.
    pub fn face_next(&self, d: usize) -> usize {
        self.parts.rot_next[twin(d)]
    }

    /// Predecessor of `d` along its face.
    pub fn face_prev(&self, d: usize) -> usize {
        twin(self.rot_prev[d])
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Tail cell of `d` in the lift of its face anchored at the face's
    /// first dart.
    pub fn face_offset(&self, d: usize) -> Shift {
        self.face_offset[d]
    }

    pub fn positions(&self) -> Option<&[[f64; 2]]> {
        self.parts.positions.as_deref()
    }

    /// `(u, v, shift)` for every edge.
    pub fn edges(&self) -> Vec<(usize, usize, Shift)> {
        (0..self.edge_count())
            .map(|k| (self.vertex_of(2 * k), self.vertex_of(2 * k + 1), self.shift(2 * k)))
            .collect()
    }

    /// Darts at `v` in counter-clockwise order.
    pub fn darts_at(&self, v: usize) -> Vec<usize> {
        let Some(start) = self.parts.vertex_of.iter().position(|&x| x == v) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut d = self.rot_next(start);
        while d != start {
            out.push(d);
            d = self.rot_next(d);
        }
        out
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &v in &self.parts.vertex_of {
            deg[v] += 1;
        }
        deg
    }

    pub fn face_degrees(&self) -> Vec<usize> {
        self.faces.iter().map(FaceWalk::degree).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.vertex_degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub(crate) fn require_regular(&self, k: usize) -> Result<()> {
        for (v, &deg) in self.vertex_degrees().iter().enumerate() {
            if deg != k {
                return Err(Error::NotRegular {
                    expected: k,
                    vertex: v,
                    degree: deg,
                });
            }
        }
        Ok(())
    }

    /// Displacement of dart `d` in lattice units, if positions are known.
    pub fn dart_vector(&self, d: usize) -> Option<[f64; 2]> {
        let pos = self.positions()?;
        Some(displacement(pos, self.vertex_of(d), self.head(d), self.shift(d)))
    }
}

fn displacement(pos: &[[f64; 2]], u: usize, v: usize, s: Shift) -> [f64; 2] {
    [
        pos[v][0] + s[0] as f64 - pos[u][0],
        pos[v][1] + s[1] as f64 - pos[u][1],
    ]
}

fn parts_from_edges(
    vertex_count: usize,
    edges: &[(usize, usize, Shift)],
    positions: Option<Vec<[f64; 2]>>,
) -> Result<MapParts> {
    let mut vertex_of = Vec::with_capacity(2 * edges.len());
    let mut shift = Vec::with_capacity(2 * edges.len());
    for (k, &(u, v, s)) in edges.iter().enumerate() {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::MalformedMap(format!(
                "edge {k} references vertex outside 0..{vertex_count}"
            )));
        }
        vertex_of.push(u);
        vertex_of.push(v);
        shift.push(s);
        shift.push([-s[0], -s[1]]);
    }
    Ok(MapParts {
        name: None,
        vertex_count,
        vertex_of,
        rot_next: Vec::new(),
        shift,
        positions,
    })
}

fn rotation_from_positions(parts: &MapParts) -> Result<Vec<usize>> {
    let pos = parts.positions.as_ref().expect("positions checked by caller");
    let n = parts.vertex_of.len();
    let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); parts.vertex_count];
    for d in 0..n {
        let vec = displacement(pos, parts.vertex_of[d], parts.vertex_of[twin(d)], parts.shift[d]);
        if vec[0] == 0.0 && vec[1] == 0.0 {
            return Err(Error::MalformedMap(format!("dart {d} has zero length")));
        }
        let mut angle = vec[1].atan2(vec[0]);
        if angle < 0.0 {
            angle += 2.0 * PI;
        }
        at[parts.vertex_of[d]].push((angle, d));
    }
    let mut rot_next = vec![usize::MAX; n];
    for (v, list) in at.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        for i in 0..list.len() {
            let (a, d) = list[i];
            let (b, e) = list[(i + 1) % list.len()];
            if list.len() > 1 && (b - a).abs() < 1e-12 {
                return Err(Error::MalformedMap(format!(
                    "darts {d} and {e} at vertex {v} have equal directions"
                )));
            }
            rot_next[d] = e;
        }
    }
    Ok(rot_next)
}

fn check_structure(parts: &MapParts) -> Result<()> {
    let n = parts.vertex_of.len();
    if !n.is_multiple_of(2) {
        return Err(Error::MalformedMap(format!("odd dart count {n}")));
    }
    if parts.rot_next.len() != n || parts.shift.len() != n {
        return Err(Error::MalformedMap(
            "vertex_of, rot_next and shift lengths differ".into(),
        ));
    }
    if let Some(d) = parts.rot_next.iter().position(|&r| r >= n) {
        return Err(Error::MalformedMap(format!(
            "rot_next of dart {d} is dangling"
        )));
    }
    if let Some(d) = parts
        .vertex_of
        .iter()
        .position(|&v| v >= parts.vertex_count)
    {
        return Err(Error::MalformedMap(format!(
            "dart {d} has tail outside 0..{}",
            parts.vertex_count
        )));
    }
    if let Some(pos) = &parts.positions {
        if pos.len() != parts.vertex_count {
            return Err(Error::MalformedMap(format!(
                "{} positions for {} vertices",
                pos.len(),
                parts.vertex_count
            )));
        }
    }
    Ok(())
}

/// `rot_next` must be a permutation whose orbits are the vertex classes.
pub(crate) fn check_rotation(parts: &MapParts) -> std::result::Result<(), String> {
    let n = parts.rot_next.len();
    let mut hit = vec![false; n];
    for &r in &parts.rot_next {
        if hit[r] {
            return Err(format!("rot_next is not a permutation (dart {r} hit twice)"));
        }
        hit[r] = true;
    }
    let mut orbit_of_vertex = vec![usize::MAX; parts.vertex_count];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let v = parts.vertex_of[start];
        if orbit_of_vertex[v] != usize::MAX {
            return Err(format!("vertex {v} carries more than one rotation orbit"));
        }
        orbit_of_vertex[v] = start;
        let mut d = start;
        loop {
            seen[d] = true;
            if parts.vertex_of[d] != v {
                return Err(format!(
                    "rotation orbit of dart {start} leaves vertex {v} at dart {d}"
                ));
            }
            d = parts.rot_next[d];
            if d == start {
                break;
            }
        }
    }
    if let Some(v) = orbit_of_vertex.iter().position(|&o| o == usize::MAX) {
        return Err(format!("vertex {v} is isolated"));
    }
    Ok(())
}

/// Moves raw (unnormalised) vertex coordinates into `[0, 1)²` and adjusts
/// shifts so that every edge keeps its geometric displacement.
pub(crate) fn normalize_positions(parts: &mut MapParts, raw: Vec<[f64; 2]>) {
    let eps = 1e-9;
    let off: Vec<Shift> = raw
        .iter()
        .map(|p| [(p[0] + eps).floor() as i64, (p[1] + eps).floor() as i64])
        .collect();
    for d in 0..parts.shift.len() {
        let t = parts.vertex_of[d];
        let h = parts.vertex_of[twin(d)];
        parts.shift[d] = sub(add(parts.shift[d], off[h]), off[t]);
    }
    parts.positions = Some(
        raw.iter()
            .zip(&off)
            .map(|(p, o)| {
                [
                    (p[0] - o[0] as f64).max(0.0),
                    (p[1] - o[1] as f64).max(0.0),
                ]
            })
            .collect(),
    );
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn square() -> ToroidalMap {
        ToroidalMap::from_positions(1, &[(0, 0, [1, 0]), (0, 0, [0, 1])], vec![[0.0, 0.0]])
            .unwrap()
    }

    /// Triangular lattice in a basis with 60° between the generators.
    pub fn triangular() -> ToroidalMap {
        // Lattice coordinates; angular order is affine invariant, so the
        // skew basis can be replaced by the unit square here.
        ToroidalMap::from_positions(
            1,
            &[(0, 0, [1, 0]), (0, 0, [0, 1]), (0, 0, [-1, 1])],
            vec![[0.0, 0.0]],
        )
        .unwrap()
    }

    pub fn hexagonal() -> ToroidalMap {
        ToroidalMap::from_positions(
            2,
            &[(0, 1, [0, 0]), (1, 0, [1, 0]), (1, 0, [0, 1])],
            vec![[0.0, 0.0], [1.0 / 3.0, 1.0 / 3.0]],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn square_has_one_quad_face() {
        let m = square();
        assert_eq!(m.face_degrees(), vec![4]);
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn triangular_has_two_triangles() {
        let m = triangular();
        assert_eq!(m.face_degrees(), vec![3, 3]);
        assert_eq!(m.faces()[0].total_shift, [0, 0]);
    }

    #[test]
    fn hexagonal_has_one_hexagon() {
        let m = hexagonal();
        assert_eq!(m.face_degrees(), vec![6]);
        assert_eq!(m.faces()[0].total_shift, [0, 0]);
    }

    #[test]
    fn faces_partition_darts() {
        let m = hexagonal();
        let mut all: Vec<usize> = m.faces().iter().flat_map(|f| f.darts.clone()).collect();
        all.sort();
        assert_eq!(all, (0..m.dart_count()).collect::<Vec<_>>());
    }

    #[test]
    fn explicit_rotation_matches_positions() {
        let a = square();
        let b = ToroidalMap::from_rotation(
            1,
            &[(0, 0, [1, 0]), (0, 0, [0, 1])],
            &[vec![0, 2, 1, 3]],
            None,
        )
        .unwrap();
        assert_eq!(a.parts().rot_next, b.parts().rot_next);
    }

    #[test]
    fn equal_directions_rejected() {
        let err = ToroidalMap::from_positions(
            1,
            &[(0, 0, [1, 0]), (0, 0, [1, 0])],
            vec![[0.0, 0.0]],
        );
        assert!(err.is_err());
    }

    #[test]
    fn dangling_dart_rejected() {
        let parts = MapParts {
            name: None,
            vertex_count: 1,
            vertex_of: vec![0, 0],
            rot_next: vec![1, 7],
            shift: vec![[1, 0], [-1, 0]],
            positions: None,
        };
        assert!(ToroidalMap::new(parts).is_err());
    }
}
