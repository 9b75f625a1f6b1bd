use std::collections::HashSet;
use std::fmt;

use super::{check_rotation, cover, twin, MapParts, MultiGraph, ToroidalMap};
use crate::error::Result;

/// Outcome of a single named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Pass/fail report for every structural property of a map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub checks: Vec<Check>,
    pub face_count: Option<usize>,
}

impl Diagnostics {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    /// Everything required of a conjecture input: cellular, loopless and
    /// 2-connected. Simplicity and 3-connectivity are informational.
    pub fn is_valid(&self) -> bool {
        [
            "permutation",
            "antisymmetry",
            "connected",
            "euler",
            "face_shifts",
            "loop_free",
            "two_connected",
        ]
        .iter()
        .all(|n| self.passed(n))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.name)?;
            } else {
                writeln!(f, "{mark} {} ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

pub fn validate(map: &ToroidalMap) -> Diagnostics {
    validate_parts(map.parts()).expect("a constructed map has in-range dart ids")
}

/// Validates raw parts. Dangling ids are a hard error; every other defect is
/// reported as a failed check.
pub fn validate_parts(parts: &MapParts) -> Result<Diagnostics> {
    super::check_structure(parts)?;
    let mut diag = Diagnostics::default();

    let perm = check_rotation(parts);
    diag.push("permutation", perm.is_ok(), perm.err().unwrap_or_default());

    let bad_shift = (0..parts.shift.len()).find(|&d| {
        let (a, b) = (parts.shift[d], parts.shift[twin(d)]);
        a[0] != -b[0] || a[1] != -b[1]
    });
    diag.push(
        "antisymmetry",
        bad_shift.is_none(),
        bad_shift.map(|d| format!("dart {d}")).unwrap_or_default(),
    );

    let ok_connected = quotient_connected(parts);
    diag.push("connected", ok_connected, "");

    let loop_edge = (0..parts.vertex_of.len() / 2).find(|&k| {
        parts.vertex_of[2 * k] == parts.vertex_of[2 * k + 1] && parts.shift[2 * k] == [0, 0]
    });
    diag.push(
        "loop_free",
        loop_edge.is_none(),
        loop_edge.map(|k| format!("edge {k}")).unwrap_or_default(),
    );

    let mut seen = HashSet::new();
    let multi = (0..parts.vertex_of.len() / 2).find(|&k| {
        let (u, v, s) = (parts.vertex_of[2 * k], parts.vertex_of[2 * k + 1], parts.shift[2 * k]);
        let key = if (u, s) <= (v, [-s[0], -s[1]]) {
            (u, v, s)
        } else {
            (v, u, [-s[0], -s[1]])
        };
        !seen.insert(key)
    });
    diag.push(
        "simple",
        multi.is_none() && loop_edge.is_none(),
        multi.map(|k| format!("edge {k} repeats")).unwrap_or_default(),
    );

    if diag.passed("permutation") && bad_shift.is_none() {
        let map = ToroidalMap::new(parts.clone())?;
        diag.face_count = Some(map.face_count());
        let chi = map.euler_characteristic();
        diag.push("euler", chi == 0, format!("V - E + F = {chi}"));
        let bad_face = map.faces().iter().position(|f| f.total_shift != [0, 0]);
        diag.push(
            "face_shifts",
            bad_face.is_none(),
            bad_face.map(|f| format!("face {f}")).unwrap_or_default(),
        );
        if ok_connected {
            // Connectivity of the infinite lattice is probed on a 3x3 cover.
            let g = cover(&map, 3, 3);
            let two = g.is_connected() && g.articulation_points().is_empty();
            diag.push("two_connected", two, "");
            diag.push("three_connected", two && three_connected(&g), "");
        } else {
            diag.push("two_connected", false, "disconnected");
            diag.push("three_connected", false, "disconnected");
        }
    } else {
        for name in ["euler", "face_shifts", "two_connected", "three_connected"] {
            diag.push(name, false, "skipped: malformed rotation or shifts");
        }
    }
    Ok(diag)
}

fn quotient_connected(parts: &MapParts) -> bool {
    let g = MultiGraph {
        vertex_count: parts.vertex_count,
        edges: (0..parts.vertex_of.len() / 2)
            .map(|k| (parts.vertex_of[2 * k], parts.vertex_of[2 * k + 1]))
            .collect(),
    };
    g.is_connected()
}

fn three_connected(g: &MultiGraph) -> bool {
    if g.vertex_count < 4 {
        return false;
    }
    (0..g.vertex_count).all(|x| {
        let h = g.without_vertex(x);
        h.is_connected() && h.articulation_points().is_empty()
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn square_passes() {
        let d = validate(&square());
        assert!(d.is_valid(), "{d}");
        assert!(d.passed("simple") && d.passed("three_connected"), "{d}");
        assert_eq!(d.face_count, Some(1));
    }

    #[test]
    fn hexagonal_passes() {
        let d = validate(&hexagonal());
        assert!(d.is_valid(), "{d}");
        assert_eq!(d.face_count, Some(1));
    }

    #[test]
    fn broken_antisymmetry_is_reported() {
        let mut parts = square().into_parts();
        parts.shift[1] = [1, 0];
        let d = validate_parts(&parts).unwrap();
        assert!(!d.passed("antisymmetry"));
        assert!(!d.is_valid());
    }

    #[test]
    fn non_permutation_is_reported() {
        let mut parts = square().into_parts();
        parts.rot_next = vec![1, 1, 3, 0];
        let d = validate_parts(&parts).unwrap();
        assert!(!d.passed("permutation"));
        assert!(!d.passed("euler"));
    }

    #[test]
    fn dangling_is_hard_error() {
        let mut parts = square().into_parts();
        parts.rot_next[0] = 99;
        assert!(validate_parts(&parts).is_err());
    }

    #[test]
    fn loop_is_reported() {
        let parts = MapParts {
            name: None,
            vertex_count: 1,
            vertex_of: vec![0; 6],
            rot_next: vec![2, 3, 4, 5, 1, 0],
            shift: vec![[1, 0], [-1, 0], [0, 1], [0, -1], [0, 0], [0, 0]],
            positions: None,
        };
        let d = validate_parts(&parts).unwrap();
        assert!(!d.passed("loop_free"));
    }
}
