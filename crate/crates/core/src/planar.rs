//! Finite plane graphs with straight-line embeddings.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{MultiGraph, ToroidalMap};

/// A connected graph drawn in the plane with straight, non-crossing edges.
/// Dart `2k` runs `u → v` along edge `k`, dart `2k + 1` runs back.
#[derive(Debug, Clone)]
pub struct PlanarGraph {
    vertices: Vec<[f64; 2]>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    outer: usize,
}

#[derive(Serialize, Deserialize)]
struct PlanarFile {
    vertices: Vec<[f64; 2]>,
    edges: Vec<[usize; 2]>,
}

impl PlanarGraph {
    pub fn new(vertices: Vec<[f64; 2]>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let nv = vertices.len();
        if nv == 0 {
            return Err(Error::InvalidInput("planar graph has no vertices".into()));
        }
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= nv || v >= nv {
                return Err(Error::InvalidInput(format!(
                    "edge {k} references a missing vertex"
                )));
            }
            if u == v {
                return Err(Error::NotPlanar(format!(
                    "edge {k} is a loop and cannot be drawn straight"
                )));
            }
        }
        if !MultiGraph::new(nv, edges.clone()).is_connected() {
            return Err(Error::InvalidInput("planar graph is disconnected".into()));
        }
        check_no_crossings(&vertices, &edges)?;

        let nd = 2 * edges.len();
        let tail = |d: usize| if d.is_multiple_of(2) { edges[d / 2].0 } else { edges[d / 2].1 };
        let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); nv];
        for d in 0..nd {
            let (a, b) = (vertices[tail(d)], vertices[tail(d ^ 1)]);
            let mut ang = (b[1] - a[1]).atan2(b[0] - a[0]);
            if ang < 0.0 {
                ang += 2.0 * PI;
            }
            at[tail(d)].push((ang, d));
        }
        let mut rot_next = vec![0; nd];
        for list in &mut at {
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            for i in 0..list.len() {
                rot_next[list[i].1] = list[(i + 1) % list.len()].1;
            }
        }
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = faces.len();
                walk.push(d);
                d = rot_next[d ^ 1];
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        if faces.is_empty() {
            // A lone vertex: the whole plane is the outer face.
            faces.push(Vec::new());
        }
        let chi = nv as i64 - edges.len() as i64 + faces.len() as i64;
        if chi != 2 {
            return Err(Error::NotPlanar(format!("V - E + F = {chi}, expected 2")));
        }
        let area = |walk: &Vec<usize>| -> f64 {
            walk.iter()
                .map(|&d| {
                    let (a, b) = (vertices[tail(d)], vertices[tail(d ^ 1)]);
                    a[0] * b[1] - a[1] * b[0]
                })
                .sum::<f64>()
        };
        // Bounded faces are traced clockwise; the outer boundary is the
        // only walk with positive signed area (zero for a tree).
        let outer = (0..faces.len())
            .max_by(|&i, &j| area(&faces[i]).total_cmp(&area(&faces[j])))
            .expect("at least one face");
        Ok(PlanarGraph {
            vertices,
            edges,
            faces,
            face_of,
            outer,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PlanarFile = serde_json::from_str(text)?;
        PlanarGraph::new(f.vertices, f.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        PlanarGraph::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PlanarFile {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        })
        .expect("plain data serialises")
    }

    /// Grid graph on `rows × cols` vertices.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let id = |r: usize, c: usize| r * cols + c;
        for r in 0..rows {
            for c in 0..cols {
                vertices.push([c as f64, r as f64]);
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        PlanarGraph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn tail(&self, d: usize) -> usize {
        if d.is_multiple_of(2) {
            self.edges[d / 2].0
        } else {
            self.edges[d / 2].1
        }
    }

    /// Degrees of the bounded faces (face walk lengths).
    pub fn bounded_face_degrees(&self) -> Vec<usize> {
        self.faces
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.outer)
            .map(|(_, f)| f.len())
            .collect()
    }

    pub fn outer_face_degree(&self) -> usize {
        self.faces[self.outer].len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Vertices not on the outer face boundary.
    pub fn internal_vertices(&self) -> Vec<usize> {
        if self.edges.is_empty() {
            return Vec::new();
        }
        let mut on_outer = vec![false; self.vertex_count()];
        for &d in &self.faces[self.outer] {
            on_outer[self.tail(d)] = true;
        }
        (0..self.vertex_count()).filter(|&v| !on_outer[v]).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.to_multigraph().degrees()
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph::new(self.vertex_count(), self.edges.clone())
    }

    /// The plane dual including the outer face, as an abstract multigraph.
    pub fn dual_multigraph(&self) -> MultiGraph {
        MultiGraph::new(
            self.faces.len(),
            (0..self.edges.len())
                .map(|k| (self.face_of[2 * k], self.face_of[2 * k + 1]))
                .collect(),
        )
    }
}

fn check_no_crossings(vertices: &[[f64; 2]], edges: &[(usize, usize)]) -> Result<()> {
    // Sweep over x so that only edges with overlapping x-ranges are compared.
    let mut order: Vec<usize> = (0..edges.len()).collect();
    let xmin = |k: usize| vertices[edges[k].0][0].min(vertices[edges[k].1][0]);
    let xmax = |k: usize| vertices[edges[k].0][0].max(vertices[edges[k].1][0]);
    order.sort_by(|&a, &b| xmin(a).total_cmp(&xmin(b)));
    let eps = 1e-12;
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if xmin(b) > xmax(a) + eps {
                break;
            }
            if segments_conflict(vertices, edges[a], edges[b]) {
                return Err(Error::NotPlanar(format!("edges {a} and {b} cross")));
            }
        }
    }
    Ok(())
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) - 1e-12
        && p[0] <= a[0].max(b[0]) + 1e-12
        && p[1] >= a[1].min(b[1]) - 1e-12
        && p[1] <= a[1].max(b[1]) + 1e-12
}

fn segments_conflict(vs: &[[f64; 2]], e: (usize, usize), f: (usize, usize)) -> bool {
    let shared = [e.0, e.1].iter().filter(|x| **x == f.0 || **x == f.1).count();
    let (p1, p2, q1, q2) = (vs[e.0], vs[e.1], vs[f.0], vs[f.1]);
    let tol = 1e-12;
    if shared == 2 {
        return true; // parallel edges overlap when drawn straight
    }
    if shared == 1 {
        // Edges meeting at a vertex conflict only if they overlap.
        let (c, a, b) = if e.0 == f.0 || e.0 == f.1 {
            (p1, p2, if e.0 == f.0 { q2 } else { q1 })
        } else {
            (p2, p1, if e.1 == f.0 { q2 } else { q1 })
        };
        let ua = [a[0] - c[0], a[1] - c[1]];
        let ub = [b[0] - c[0], b[1] - c[1]];
        let cross = ua[0] * ub[1] - ua[1] * ub[0];
        let dot = ua[0] * ub[0] + ua[1] * ub[1];
        return cross.abs() <= tol * (1.0 + dot.abs()) && dot > 0.0;
    }
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol))
        && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
    {
        return true;
    }
    (d1.abs() <= tol && on_segment(q1, q2, p1))
        || (d2.abs() <= tol && on_segment(q1, q2, p2))
        || (d3.abs() <= tol && on_segment(p1, p2, q1))
        || (d4.abs() <= tol && on_segment(p1, p2, q2))
}

/// Finite patch of the lattice: all vertex copies in cells `[0, n)²`, the
/// edges with both ends inside, restricted to the component holding the copy
/// of vertex 0 in cell `(⌊n/2⌋, ⌊n/2⌋)`. Coordinates are in lattice units.
pub fn planar_patch(map: &ToroidalMap, n: usize) -> Result<PlanarGraph> {
    let pos = map
        .positions()
        .ok_or_else(|| Error::InvalidInput("planar_patch needs vertex positions".into()))?;
    if n == 0 {
        return Err(Error::InvalidInput("patch size must be at least 1".into()));
    }
    let nv = map.vertex_count();
    let idx = |v: usize, i: usize, j: usize| v + nv * (i + n * j);
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..n {
            for (u, v, s) in map.edges() {
                let (hi, hj) = (i as i64 + s[0], j as i64 + s[1]);
                if (0..n as i64).contains(&hi) && (0..n as i64).contains(&hj) {
                    edges.push((idx(u, i, j), idx(v, hi as usize, hj as usize)));
                }
            }
        }
    }
    let full = MultiGraph::new(nv * n * n, edges);
    let comp = full.components();
    let keep = comp[idx(0, n / 2, n / 2)];
    let mut relabel = HashMap::new();
    let mut vertices = Vec::new();
    for j in 0..n {
        for i in 0..n {
            for (v, p) in pos.iter().enumerate() {
                let id = idx(v, i, j);
                if comp[id] == keep {
                    relabel.insert(id, vertices.len());
                    vertices.push([p[0] + i as f64, p[1] + j as f64]);
                }
            }
        }
    }
    let edges = full
        .edges
        .iter()
        .filter(|(u, _)| comp[*u] == keep)
        .map(|(u, v)| (relabel[u], relabel[v]))
        .collect();
    PlanarGraph::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::fixtures::{square, triangular};

    #[test]
    fn cycle_four() {
        let g = PlanarGraph::grid(2, 2).unwrap();
        assert_eq!(g.bounded_face_degrees(), vec![4]);
        assert_eq!(g.outer_face_degree(), 4);
        assert!(g.internal_vertices().is_empty());
    }

    #[test]
    fn crossing_rejected() {
        let v = vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        let e = vec![(0, 1), (2, 3), (0, 2)];
        assert!(matches!(PlanarGraph::new(v, e), Err(Error::NotPlanar(_))));
    }

    #[test]
    fn overlapping_edges_rejected() {
        let v = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        let e = vec![(0, 1), (0, 2)];
        assert!(PlanarGraph::new(v, e).is_err());
    }

    #[test]
    fn tree_has_only_outer_face() {
        let v = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]];
        let g = PlanarGraph::new(v, vec![(0, 1), (1, 2)]).unwrap();
        assert!(g.bounded_face_degrees().is_empty());
        assert_eq!(g.outer_face_degree(), 4);
    }

    #[test]
    fn square_patches() {
        let g = planar_patch(&square(), 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        for n in 1..7 {
            let g = planar_patch(&square(), n).unwrap();
            assert_eq!(g.vertex_count(), n * n);
            assert_eq!(g.edge_count(), 2 * n * (n - 1));
        }
    }

    #[test]
    fn triangular_patch() {
        let g = planar_patch(&triangular(), 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 16));
        assert_eq!(g.bounded_face_degrees(), vec![3; 8]);
        assert_eq!(g.internal_vertices().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = PlanarGraph::grid(3, 2).unwrap();
        let h = PlanarGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g.edges(), h.edges());
    }
}
