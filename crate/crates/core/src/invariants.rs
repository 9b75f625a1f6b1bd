//! Volume invariants of toroidal and finite plane graphs.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hyperbolic::{bipyramid_volume_of_degree, lobachevsky, v_oct};
use crate::lattice_file::{parse_ratio, AngleRecord, AngleSide};
use crate::map::{temperleyan, Check, Diagnostics, Temperleyan, ToroidalMap};
use crate::planar::PlanarGraph;

/// Constraint tolerance for half-angle sums.
pub const ANGLE_TOL: f64 = 1e-9;

/// `Σ_f vol(B_|f|)` over the faces of the map.
pub fn vol_bipyramid(map: &ToroidalMap) -> f64 {
    map.face_degrees()
        .into_iter()
        .map(bipyramid_volume_of_degree)
        .sum()
}

/// `(vol◇(G) + vol◇(G*)) / |V|`. Faces of the dual are the vertices of `G`.
pub fn nu_bipyramid(map: &ToroidalMap) -> f64 {
    let dual: f64 = map
        .vertex_degrees()
        .into_iter()
        .map(bipyramid_volume_of_degree)
        .sum();
    (vol_bipyramid(map) + dual) / map.vertex_count() as f64
}

/// `|E| v_oct / |V|`.
pub fn nu_bar(map: &ToroidalMap) -> f64 {
    map.edge_count() as f64 * v_oct() / map.vertex_count() as f64
}

/// Sum of bipyramid volumes over the bounded faces.
pub fn vol_bipyramid_planar(g: &PlanarGraph) -> f64 {
    g.bounded_face_degrees()
        .into_iter()
        .map(bipyramid_volume_of_degree)
        .sum()
}

/// Bounded faces of the plane dual are taken to be the vertices of `Γ` off
/// the outer face.
pub fn vol_bipyramid_planar_dual(g: &PlanarGraph) -> f64 {
    let deg = g.degrees();
    g.internal_vertices()
        .into_iter()
        .map(|v| bipyramid_volume_of_degree(deg[v]))
        .sum()
}

pub fn nu_bipyramid_planar(g: &PlanarGraph) -> f64 {
    (vol_bipyramid_planar(g) + vol_bipyramid_planar_dual(g)) / g.vertex_count() as f64
}

/// Half-angles on the edges of the Temperleyan graph, indexed like
/// [`Temperleyan`] edges: primal dart `d` at `d`, dual side at `2|E| + d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfAngleAssignment {
    pub theta: Vec<f64>,
}

impl HalfAngleAssignment {
    /// Collects file records. Every Temperleyan edge must be covered once.
    pub fn from_records(map: &ToroidalMap, records: &[AngleRecord]) -> Result<Self> {
        let nd = map.dart_count();
        let mut theta = vec![f64::NAN; 2 * nd];
        for r in records {
            if r.edge >= map.edge_count() || r.end > 1 {
                return Err(Error::InvalidAngles(format!(
                    "angle refers to missing dart ({}, {})",
                    r.edge, r.end
                )));
            }
            let d = 2 * r.edge + r.end as usize;
            let slot = match r.side {
                AngleSide::Primal => d,
                AngleSide::Dual => nd + d,
            };
            if !theta[slot].is_nan() {
                return Err(Error::InvalidAngles(format!(
                    "angle for ({}, {}) given twice",
                    r.edge, r.end
                )));
            }
            theta[slot] = PI * parse_ratio(&r.theta_over_pi)?;
        }
        if let Some(slot) = theta.iter().position(|t| t.is_nan()) {
            return Err(Error::InvalidAngles(format!(
                "no angle for Temperleyan edge {slot}"
            )));
        }
        Ok(HalfAngleAssignment { theta })
    }

    /// Records describing this assignment, as decimals.
    pub fn to_records(&self) -> Vec<AngleRecord> {
        let nd = self.theta.len() / 2;
        self.theta
            .iter()
            .enumerate()
            .map(|(slot, t)| {
                let (d, side) = if slot < nd {
                    (slot, AngleSide::Primal)
                } else {
                    (slot - nd, AngleSide::Dual)
                };
                AngleRecord {
                    edge: d / 2,
                    end: (d % 2) as u8,
                    theta_over_pi: format!("{}", t / PI),
                    side,
                }
            })
            .collect()
    }
}

fn check_len(t: &Temperleyan, theta: &HalfAngleAssignment) -> Result<()> {
    if theta.theta.len() != t.map.edge_count() {
        return Err(Error::InvalidAngles(format!(
            "{} angles for {} Temperleyan edges",
            theta.theta.len(),
            t.map.edge_count()
        )));
    }
    Ok(())
}

/// Checks range, vertex sums and kite sums. Assignments of the wrong size
/// are an error; constraint violations are reported as failed checks.
pub fn validate_angles(map: &ToroidalMap, theta: &HalfAngleAssignment) -> Result<Diagnostics> {
    let t = temperleyan(map)?;
    check_len(&t, theta)?;
    let mut diag = Diagnostics::default();

    let out = theta
        .theta
        .iter()
        .position(|&x| !(x > 0.0 && x < PI / 2.0));
    diag.checks.push(Check {
        name: "range",
        passed: out.is_none(),
        detail: out.map(|e| format!("edge {e}")).unwrap_or_default(),
    });

    let black = t.primal_vertices + t.dual_vertices;
    let mut sums = vec![0.0; black];
    for (e, &x) in theta.theta.iter().enumerate() {
        sums[t.map.vertex_of(2 * e)] += x;
    }
    let worst_vertex = sums
        .iter()
        .map(|s| (s - PI).abs())
        .fold(0.0, f64::max);
    diag.checks.push(Check {
        name: "vertex_sums",
        passed: worst_vertex <= ANGLE_TOL,
        detail: format!("max |Σθ - π| = {worst_vertex:.3e}"),
    });

    let worst_kite = t
        .kites
        .iter()
        .map(|&[p, q]| (theta.theta[p] + theta.theta[q] - PI / 2.0).abs())
        .fold(0.0, f64::max);
    diag.checks.push(Check {
        name: "kite_sums",
        passed: worst_kite <= ANGLE_TOL,
        detail: format!("max |θ + θ' - π/2| = {worst_kite:.3e}"),
    });
    Ok(diag)
}

fn require_valid(map: &ToroidalMap, theta: &HalfAngleAssignment) -> Result<()> {
    let diag = validate_angles(map, theta)?;
    let result = match diag.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::InvalidAngles(format!("{}: {}", c.name, c.detail))),
    };
    result
}

/// `θ = π / deg` at every black vertex, if that satisfies all constraints.
pub fn regular_angles(map: &ToroidalMap) -> Result<HalfAngleAssignment> {
    let deg = map.vertex_degrees();
    let faces = map.face_degrees();
    let nd = map.dart_count();
    let mut theta = Vec::with_capacity(2 * nd);
    theta.extend((0..nd).map(|d| PI / deg[map.vertex_of(d)] as f64));
    theta.extend((0..nd).map(|d| PI / faces[map.face_of(d)] as f64));
    let a = HalfAngleAssignment { theta };
    let diag = validate_angles(map, &a)?;
    let result = match diag.failures().next() {
        None => Ok(a),
        Some(c) => Err(Error::NotAngleRegular(format!("{}: {}", c.name, c.detail))),
    };
    result
}

/// `Σ_e 2 L(θ_e)` over the Temperleyan edges; divide by `|V|` for the
/// per-vertex value.
pub fn right_angled_volume(map: &ToroidalMap, theta: &HalfAngleAssignment) -> Result<f64> {
    require_valid(map, theta)?;
    Ok(theta.theta.iter().map(|&x| 2.0 * lobachevsky(x)).sum())
}

/// Critical-weight dimer entropy `(2π)⁻¹ Σ_e (2θ_e log(2 sin θ_e) + 2 L(θ_e))`.
/// Only the vertex sums are required here.
pub fn isoradial_entropy(map: &ToroidalMap, theta: &HalfAngleAssignment) -> Result<f64> {
    let diag = validate_angles(map, theta)?;
    for name in ["range", "vertex_sums"] {
        if !diag.passed(name) {
            let c = diag.get(name).expect("check present");
            return Err(Error::InvalidAngles(format!("{}: {}", c.name, c.detail)));
        }
    }
    let total: f64 = theta
        .theta
        .iter()
        .map(|&x| 2.0 * x * (2.0 * x.sin()).ln() + 2.0 * lobachevsky(x))
        .sum();
    Ok(total / (2.0 * PI))
}

/// `Σ_{black v} log(2 sin θ_v)` for assignments that are constant around
/// every black vertex: the log of the weight carried by any dimer cover.
pub fn black_weight_log(map: &ToroidalMap, theta: &HalfAngleAssignment) -> Result<f64> {
    let t = temperleyan(map)?;
    check_len(&t, theta)?;
    let black = t.primal_vertices + t.dual_vertices;
    let mut at: Vec<Option<f64>> = vec![None; black];
    for (e, &x) in theta.theta.iter().enumerate() {
        let v = t.map.vertex_of(2 * e);
        match at[v] {
            None => at[v] = Some(x),
            Some(y) if (x - y).abs() <= ANGLE_TOL => {}
            Some(_) => {
                return Err(Error::InvalidAngles(format!(
                    "angles at black vertex {v} are not all equal"
                )))
            }
        }
    }
    Ok(at.iter().map(|x| (2.0 * x.unwrap().sin()).ln()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::v_tet;
    use crate::map::dual;
    use crate::map::fixtures::{hexagonal, square, triangular};

    #[test]
    fn bipyramid_volumes_of_regular_lattices() {
        assert!((vol_bipyramid(&square()) - v_oct()).abs() < 1e-13);
        assert!((vol_bipyramid(&triangular()) - 4.0 * v_tet()).abs() < 1e-13);
        assert!((vol_bipyramid(&triangular()) - 4.05976).abs() < 1e-5);
        assert!((vol_bipyramid(&hexagonal()) - 6.08965).abs() < 5e-6);
    }

    #[test]
    fn dual_faces_supply_vertex_term() {
        for m in [square(), triangular(), hexagonal()] {
            let via_dual = (vol_bipyramid(&m) + vol_bipyramid(&dual(&m).unwrap()))
                / m.vertex_count() as f64;
            assert!((via_dual - nu_bipyramid(&m)).abs() < 1e-13);
        }
    }

    #[test]
    fn nu_bar_matches_temperleyan() {
        for m in [square(), triangular(), hexagonal()] {
            let t = temperleyan(&m).unwrap();
            let alt = vol_bipyramid(&t.map) / (2 * m.vertex_count()) as f64;
            assert!((alt - nu_bar(&m)).abs() < 1e-12);
        }
    }

    #[test]
    fn regular_angle_values() {
        let sq = regular_angles(&square()).unwrap();
        assert!(sq.theta.iter().all(|&x| (x - PI / 4.0).abs() < 1e-15));
        let tri = regular_angles(&triangular()).unwrap();
        let mut values: Vec<f64> = tri.theta.clone();
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        assert_eq!(values.len(), 2);
        assert!((values[0] - PI / 6.0).abs() < 1e-15);
        assert!((values[1] - PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn kite_violation() {
        let m = square();
        let a = HalfAngleAssignment {
            theta: vec![PI / 3.0; 8],
        };
        let d = validate_angles(&m, &a).unwrap();
        assert!(!d.passed("kite_sums"));
        assert!(right_angled_volume(&m, &a).is_err());
    }

    #[test]
    fn wrong_length_is_error() {
        let a = HalfAngleAssignment { theta: vec![0.5; 3] };
        assert!(validate_angles(&square(), &a).is_err());
    }

    #[test]
    fn right_angled_square() {
        let m = square();
        let v = right_angled_volume(&m, &regular_angles(&m).unwrap()).unwrap();
        assert!((v - 2.0 * v_oct()).abs() < 1e-12);
        assert!((v - 7.32772).abs() < 1e-5);
    }

    #[test]
    fn isoradial_square_closed_form() {
        let m = square();
        let a = regular_angles(&m).unwrap();
        // 8 kite edges, each 2(π/4)log√2 + 2L(π/4), over 2π.
        let expect = (8.0 * (PI / 2.0 * 2f64.sqrt().ln() + v_oct() / 4.0)) / (2.0 * PI);
        let got = isoradial_entropy(&m, &a).unwrap();
        assert!((got - expect).abs() < 1e-13);
        assert!((got - (2f64.ln() + v_oct() / PI)).abs() < 1e-13);
    }

    #[test]
    fn records_round_trip() {
        let m = triangular();
        let a = regular_angles(&m).unwrap();
        let b = HalfAngleAssignment::from_records(&m, &a.to_records()).unwrap();
        for (x, y) in a.theta.iter().zip(&b.theta) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn planar_single_triangle() {
        let g = PlanarGraph::new(
            vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            vec![(0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        assert!((vol_bipyramid_planar(&g) - 2.0 * v_tet()).abs() < 1e-13);
        assert_eq!(vol_bipyramid_planar_dual(&g), 0.0);
    }

    #[test]
    fn planar_cycle_four() {
        let g = PlanarGraph::grid(2, 2).unwrap();
        assert!((vol_bipyramid_planar(&g) - v_oct()).abs() < 1e-13);
    }
}
