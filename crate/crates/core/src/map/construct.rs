//! Derived maps: dual, medial, truncation, parallel edges, Temperleyan
//! quadrangulation and supercells.
//!
//! Each construction first places vertices in a convenient lift (face
//! centroids, edge midpoints) with shifts relative to that lift, then calls
//! [`normalize_positions`] to pull positions back into the unit cell.

use super::{add, normalize_positions, sub, twin, MapParts, Shift, ToroidalMap};
use crate::error::{Error, Result};

/// Cell offset of the representative copy of `edge(d)` (the copy whose even
/// dart starts in cell 0) relative to the tail of `d`.
fn edge_rep_offset(map: &ToroidalMap, d: usize) -> Shift {
    if d.is_multiple_of(2) {
        [0, 0]
    } else {
        map.shift(d)
    }
}

fn midpoint(map: &ToroidalMap, pos: &[[f64; 2]], k: usize) -> [f64; 2] {
    let p = pos[map.vertex_of(2 * k)];
    let v = map.dart_vector(2 * k).expect("positions present");
    [p[0] + 0.5 * v[0], p[1] + 0.5 * v[1]]
}

/// Centroid of face `f` in the lift anchored at its first dart.
fn face_centroid(map: &ToroidalMap, pos: &[[f64; 2]], f: usize) -> [f64; 2] {
    let walk = &map.faces()[f].darts;
    let mut c = [0.0, 0.0];
    for &d in walk {
        let p = pos[map.vertex_of(d)];
        let o = map.face_offset(d);
        c[0] += p[0] + o[0] as f64;
        c[1] += p[1] + o[1] as f64;
    }
    let n = walk.len() as f64;
    [c[0] / n, c[1] / n]
}

fn finish(mut parts: MapParts, raw: Option<Vec<[f64; 2]>>) -> Result<ToroidalMap> {
    if let Some(raw) = raw {
        normalize_positions(&mut parts, raw);
    }
    ToroidalMap::new(parts)
}

/// Dual map. Dart ids are preserved: dual dart `d` crosses primal dart `d`
/// from the face on its right to the face on its left.
pub fn dual(map: &ToroidalMap) -> Result<ToroidalMap> {
    let n = map.dart_count();
    let mut vertex_of = Vec::with_capacity(n);
    let mut rot_next = Vec::with_capacity(n);
    let mut shift = Vec::with_capacity(n);
    for d in 0..n {
        vertex_of.push(map.face_of(d));
        rot_next.push(map.face_prev(d));
        let t = twin(d);
        shift.push(sub(add(map.face_offset(d), map.shift(d)), map.face_offset(t)));
    }
    let raw = map.positions().map(|pos| {
        (0..map.face_count())
            .map(|f| face_centroid(map, pos, f))
            .collect()
    });
    let parts = MapParts {
        name: map.name().map(|s| format!("dual({s})")),
        vertex_count: map.face_count(),
        vertex_of,
        rot_next,
        shift,
        positions: None,
    };
    finish(parts, raw)
}

/// Medial map. Vertex `k` sits on primal edge `k`; the face corner between
/// `d` and its face successor becomes medial edge `d`, with dart `2d` at
/// `edge(d)` and dart `2d + 1` at `edge(face_next(d))`.
pub fn medial(map: &ToroidalMap) -> Result<ToroidalMap> {
    let n = map.dart_count();
    let mut vertex_of = vec![0; 2 * n];
    let mut rot_next = vec![0; 2 * n];
    let mut shift = vec![[0, 0]; 2 * n];
    for d in 0..n {
        let nd = map.face_next(d);
        vertex_of[2 * d] = d / 2;
        vertex_of[2 * d + 1] = nd / 2;
        let s = sub(add(map.shift(d), edge_rep_offset(map, nd)), edge_rep_offset(map, d));
        shift[2 * d] = s;
        shift[2 * d + 1] = [-s[0], -s[1]];
    }
    for k in 0..map.edge_count() {
        let (d, t) = (2 * k, 2 * k + 1);
        let cyc = [
            2 * d,
            2 * map.face_prev(t) + 1,
            2 * t,
            2 * map.face_prev(d) + 1,
        ];
        for i in 0..4 {
            rot_next[cyc[i]] = cyc[(i + 1) % 4];
        }
    }
    let raw = map
        .positions()
        .map(|pos| (0..map.edge_count()).map(|k| midpoint(map, pos, k)).collect());
    let parts = MapParts {
        name: map.name().map(|s| format!("medial({s})")),
        vertex_count: map.edge_count(),
        vertex_of,
        rot_next,
        shift,
        positions: None,
    };
    finish(parts, raw)
}

/// Replaces every vertex of a 3-regular map by a triangle. New vertex `d`
/// sits on primal dart `d`; primal edges keep their index, and the triangle
/// edge from vertex `d` to vertex `rot_next(d)` gets index `|E| + d`.
pub fn truncate(map: &ToroidalMap) -> Result<ToroidalMap> {
    map.require_regular(3)?;
    let n = map.dart_count();
    let e = map.edge_count();
    let total = 2 * (e + n);
    let mut vertex_of = vec![0; total];
    let mut rot_next = vec![0; total];
    let mut shift = vec![[0, 0]; total];
    for d in 0..n {
        vertex_of[d] = d;
        shift[d] = map.shift(d);
        let tri = 2 * (e + d);
        vertex_of[tri] = d;
        vertex_of[tri + 1] = map.rot_next(d);
        let back = 2 * (e + map.rot_prev(d)) + 1;
        rot_next[d] = tri;
        rot_next[tri] = back;
        rot_next[back] = d;
    }
    let raw = map.positions().map(|pos| {
        (0..n)
            .map(|d| {
                let p = pos[map.vertex_of(d)];
                let v = map.dart_vector(d).expect("positions present");
                [p[0] + v[0] / 3.0, p[1] + v[1] / 3.0]
            })
            .collect()
    });
    let parts = MapParts {
        name: map.name().map(|s| format!("truncate({s})")),
        vertex_count: n,
        vertex_of,
        rot_next,
        shift,
        positions: None,
    };
    finish(parts, raw)
}

/// Replaces every edge by `s` parallel copies. Copy `j` of edge `k` is edge
/// `k s + j`; copies are ordered counter-clockwise at the even end.
pub fn parallel_edges(map: &ToroidalMap, s: usize) -> Result<ToroidalMap> {
    if s < 2 {
        return Err(Error::InvalidInput(format!(
            "parallel_edges needs s >= 2, got {s}"
        )));
    }
    let n = map.dart_count();
    // Darts of the bundle replacing dart `d`, in ccw order at its tail.
    let bundle = |d: usize| -> Vec<usize> {
        let k = d / 2;
        let end = d % 2;
        let mut b: Vec<usize> = (0..s).map(|j| 2 * (k * s + j) + end).collect();
        if end == 1 {
            b.reverse();
        }
        b
    };
    let mut vertex_of = vec![0; n * s];
    let mut rot_next = vec![0; n * s];
    let mut shift = vec![[0, 0]; n * s];
    for d in 0..n {
        let b = bundle(d);
        let next_first = bundle(map.rot_next(d))[0];
        for (i, &x) in b.iter().enumerate() {
            vertex_of[x] = map.vertex_of(d);
            shift[x] = map.shift(d);
            rot_next[x] = if i + 1 < s { b[i + 1] } else { next_first };
        }
    }
    let parts = MapParts {
        name: map.name().map(|name| format!("{name}x{s}")),
        vertex_count: map.vertex_count(),
        vertex_of,
        rot_next,
        shift,
        positions: map.positions().map(<[_]>::to_vec),
    };
    ToroidalMap::new(parts)
}

/// Toroidal quotient by the sublattice `aℤ × bℤ`, as a map on the torus.
pub fn supercell(map: &ToroidalMap, a: usize, b: usize) -> Result<ToroidalMap> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("supercell factors must be positive".into()));
    }
    let nv = map.vertex_count();
    let nd = map.dart_count();
    let cells = a * b;
    let cell_of = |i: usize, j: usize| i + a * j;
    let dart_id = |d: usize, c: usize| 2 * (d / 2 + map.edge_count() * c) + d % 2;
    let mut vertex_of = vec![0; nd * cells];
    let mut rot_next = vec![0; nd * cells];
    let mut shift = vec![[0, 0]; nd * cells];
    for j in 0..b {
        for i in 0..a {
            for d in (0..nd).step_by(2) {
                // The even dart lives in cell (i, j); the odd one in the head cell.
                let s = map.shift(d);
                let hi = i as i64 + s[0];
                let hj = j as i64 + s[1];
                let (qi, ri) = (hi.div_euclid(a as i64), hi.rem_euclid(a as i64) as usize);
                let (qj, rj) = (hj.div_euclid(b as i64), hj.rem_euclid(b as i64) as usize);
                let c = cell_of(i, j);
                let x = dart_id(d, c);
                vertex_of[x] = map.vertex_of(d) + nv * c;
                vertex_of[x + 1] = map.head(d) + nv * cell_of(ri, rj);
                shift[x] = [qi, qj];
                shift[x + 1] = [-qi, -qj];
            }
        }
    }
    // Cell of each new dart, then rotation inherited from the base map.
    let mut cell_of_dart = vec![0; nd * cells];
    for x in 0..nd * cells {
        cell_of_dart[x] = vertex_of[x] / nv;
    }
    let mut lookup = vec![usize::MAX; nd * cells];
    for x in 0..nd * cells {
        let base = 2 * ((x / 2) % map.edge_count()) + x % 2;
        lookup[base * cells + cell_of_dart[x]] = x;
    }
    for x in 0..nd * cells {
        let base = 2 * ((x / 2) % map.edge_count()) + x % 2;
        rot_next[x] = lookup[map.rot_next(base) * cells + cell_of_dart[x]];
    }
    let positions = map.positions().map(|pos| {
        let mut out = vec![[0.0; 2]; nv * cells];
        for j in 0..b {
            for i in 0..a {
                for v in 0..nv {
                    out[v + nv * cell_of(i, j)] = [
                        (pos[v][0] + i as f64) / a as f64,
                        (pos[v][1] + j as f64) / b as f64,
                    ];
                }
            }
        }
        out
    });
    let parts = MapParts {
        name: map.name().map(|s| format!("{s}[{a}x{b}]")),
        vertex_count: nv * cells,
        vertex_of,
        rot_next,
        shift,
        positions,
    };
    ToroidalMap::new(parts)
}

/// Temperleyan quadrangulation together with the bookkeeping needed for
/// half-angle constraints.
///
/// Vertex ids: primal vertex `v` is `v`, face `f` is `|V| + f`, and the white
/// vertex on primal edge `k` is `|V| + |F| + k`. Edge `d < 2|E|` is the primal
/// half-edge of dart `d`; edge `2|E| + d` is the dual half-edge crossing the
/// face side of dart `d`. Both have their even dart at the black end.
#[derive(Debug, Clone)]
pub struct Temperleyan {
    pub map: ToroidalMap,
    pub primal_vertices: usize,
    pub dual_vertices: usize,
    /// For every quad face: its two black corners, given as the Temperleyan
    /// edges that hold the corner angle at the primal and at the dual vertex.
    pub kites: Vec<[usize; 2]>,
}

impl Temperleyan {
    pub fn is_black(&self, v: usize) -> bool {
        v < self.primal_vertices + self.dual_vertices
    }

    /// Edge index holding the half-angle for primal dart `d`.
    pub fn primal_edge(&self, d: usize) -> usize {
        d
    }

    /// Edge index holding the half-angle at the dual vertex for dart `d`.
    pub fn dual_edge(&self, d: usize) -> usize {
        self.map.edge_count() / 2 + d
    }
}

pub fn temperleyan(map: &ToroidalMap) -> Result<Temperleyan> {
    let nd = map.dart_count();
    let nv = map.vertex_count();
    let nf = map.face_count();
    let white = |d: usize| nv + nf + d / 2;
    let total = 4 * nd;
    let mut vertex_of = vec![0; total];
    let mut rot_next = vec![0; total];
    let mut shift = vec![[0, 0]; total];
    for d in 0..nd {
        let p = 2 * d;
        vertex_of[p] = map.vertex_of(d);
        vertex_of[p + 1] = white(d);
        shift[p] = edge_rep_offset(map, d);
        rot_next[p] = 2 * map.rot_next(d);

        let q = 2 * (nd + d);
        vertex_of[q] = nv + map.face_of(d);
        vertex_of[q + 1] = white(d);
        shift[q] = add(map.face_offset(d), edge_rep_offset(map, d));
        rot_next[q] = 2 * (nd + map.face_prev(d));
    }
    for x in 0..total / 2 {
        let s = shift[2 * x];
        shift[2 * x + 1] = [-s[0], -s[1]];
    }
    for k in 0..map.edge_count() {
        let (d, t) = (2 * k, 2 * k + 1);
        let cyc = [2 * t + 1, 2 * (nd + t) + 1, 2 * d + 1, 2 * (nd + d) + 1];
        for i in 0..4 {
            rot_next[cyc[i]] = cyc[(i + 1) % 4];
        }
    }
    let raw = map.positions().map(|pos| {
        let mut out: Vec<[f64; 2]> = pos.to_vec();
        out.extend((0..nf).map(|f| face_centroid(map, pos, f)));
        out.extend((0..map.edge_count()).map(|k| midpoint(map, pos, k)));
        out
    });
    let parts = MapParts {
        name: map.name().map(|s| format!("temperleyan({s})")),
        vertex_count: nv + nf + map.edge_count(),
        vertex_of,
        rot_next,
        shift,
        positions: None,
    };
    let tmap = finish(parts, raw)?;

    // Each quad face has exactly two black corners; the angle of a corner is
    // carried by the edge of the dart arriving at it along the face walk.
    let black = nv + nf;
    let mut kites = Vec::with_capacity(tmap.face_count());
    for face in tmap.faces() {
        let mut primal = None;
        let mut dual_side = None;
        for &a in &face.darts {
            let corner = tmap.head(a);
            if corner < nv {
                primal = Some(a / 2);
            } else if corner < black {
                dual_side = Some(a / 2);
            }
        }
        match (primal, dual_side) {
            (Some(p), Some(q)) if face.degree() == 4 => kites.push([p, q]),
            _ => {
                return Err(Error::MalformedMap(
                    "Temperleyan face is not a kite; input map is not cellular".into(),
                ))
            }
        }
    }
    Ok(Temperleyan {
        map: tmap,
        primal_vertices: nv,
        dual_vertices: nf,
        kites,
    })
}
