//! Isomorphism test for toroidal maps.
//!
//! A candidate bijection is seeded by sending dart 0 to some dart of the other
//! map and propagated along `rot_next` and `twin` (or `rot_prev` for a mirror
//! image). A combinatorial match must also respect homology: cycle classes
//! measured against matching spanning trees must agree up to `GL₂(ℤ)`.

use std::collections::VecDeque;

use super::{add, sub, twin, Shift, ToroidalMap};

pub fn is_isomorphic(a: &ToroidalMap, b: &ToroidalMap) -> bool {
    if a.vertex_count() != b.vertex_count()
        || a.dart_count() != b.dart_count()
        || a.face_count() != b.face_count()
    {
        return false;
    }
    let mut da = a.vertex_degrees();
    let mut db = b.vertex_degrees();
    da.sort_unstable();
    db.sort_unstable();
    let mut fa = a.face_degrees();
    let mut fb = b.face_degrees();
    fa.sort_unstable();
    fb.sort_unstable();
    if da != db || fa != fb {
        return false;
    }
    if a.dart_count() == 0 {
        return true;
    }
    (0..b.dart_count()).any(|target| {
        [false, true].iter().any(|&mirror| {
            propagate(a, b, target, mirror).is_some_and(|phi| homology_matches(a, b, &phi))
        })
    })
}

fn propagate(a: &ToroidalMap, b: &ToroidalMap, target: usize, mirror: bool) -> Option<Vec<usize>> {
    let n = a.dart_count();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut queue = VecDeque::new();
    let mut assign = |d: usize, x: usize, phi: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if phi[d] == usize::MAX {
            if used[x] {
                return false;
            }
            phi[d] = x;
            used[x] = true;
            queue.push_back(d);
            true
        } else {
            phi[d] == x
        }
    };
    if !assign(0, target, &mut phi, &mut queue) {
        return None;
    }
    while let Some(d) = queue.pop_front() {
        let x = phi[d];
        let (rd, rx) = if mirror {
            (a.rot_next(d), b.rot_prev(x))
        } else {
            (a.rot_next(d), b.rot_next(x))
        };
        if !assign(rd, rx, &mut phi, &mut queue) || !assign(twin(d), twin(x), &mut phi, &mut queue)
        {
            return None;
        }
    }
    phi.iter().all(|&x| x != usize::MAX).then_some(phi)
}

/// Homology class of the fundamental cycle of every dart relative to a BFS
/// tree of `a`, and the same quantity in `b` using the image tree.
fn homology_matches(a: &ToroidalMap, b: &ToroidalMap, phi: &[usize]) -> bool {
    let nv = a.vertex_count();
    let mut pot_a: Vec<Option<Shift>> = vec![None; nv];
    let mut pot_b: Vec<Option<Shift>> = vec![None; nv];
    let root = a.vertex_of(0);
    pot_a[root] = Some([0, 0]);
    pot_b[b.vertex_of(phi[0])] = Some([0, 0]);
    let mut queue = VecDeque::from([root]);
    let darts_at: Vec<Vec<usize>> = (0..nv).map(|v| a.darts_at(v)).collect();
    while let Some(u) = queue.pop_front() {
        for &d in &darts_at[u] {
            let h = a.head(d);
            if pot_a[h].is_none() {
                pot_a[h] = Some(add(pot_a[u].unwrap(), a.shift(d)));
                let x = phi[d];
                let pu = pot_b[b.vertex_of(x)].expect("image of a visited vertex");
                pot_b[b.head(x)] = Some(add(pu, b.shift(x)));
                queue.push_back(h);
            }
        }
    }
    let cls = |m: &ToroidalMap, pot: &[Option<Shift>], d: usize| -> Shift {
        let t = pot[m.vertex_of(d)].unwrap();
        let h = pot[m.head(d)].unwrap();
        sub(add(t, m.shift(d)), h)
    };
    let pairs: Vec<(Shift, Shift)> = (0..a.dart_count())
        .map(|d| (cls(a, &pot_a, d), cls(b, &pot_b, phi[d])))
        .collect();
    // Pick two independent classes in `a` to solve for the linear map.
    let Some((i, j)) = independent_pair(&pairs) else {
        return false;
    };
    let (p, q) = (pairs[i].0, pairs[j].0);
    let (pb, qb) = (pairs[i].1, pairs[j].1);
    let det = p[0] * q[1] - p[1] * q[0];
    // M [p q] = [pb qb]  =>  M = [pb qb] adj([p q]) / det
    let adj = [[q[1], -q[0]], [-p[1], p[0]]];
    let mut m = [[0i64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let num = pb[r] * adj[0][c] + qb[r] * adj[1][c];
            if num % det != 0 {
                return false;
            }
            m[r][c] = num / det;
        }
    }
    let mdet = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if mdet.abs() != 1 {
        return false;
    }
    pairs.iter().all(|(ha, hb)| {
        m[0][0] * ha[0] + m[0][1] * ha[1] == hb[0] && m[1][0] * ha[0] + m[1][1] * ha[1] == hb[1]
    })
}

fn independent_pair(pairs: &[(Shift, Shift)]) -> Option<(usize, usize)> {
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (p, q) = (pairs[i].0, pairs[j].0);
            if p[0] * q[1] - p[1] * q[0] != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{supercell, ToroidalMap};
    use super::*;

    #[test]
    fn reflexive() {
        for m in [square(), triangular(), hexagonal()] {
            assert!(is_isomorphic(&m, &m));
        }
    }

    #[test]
    fn distinguishes_lattices() {
        assert!(!is_isomorphic(&square(), &triangular()));
    }

    #[test]
    fn basis_change_is_isomorphic() {
        // Square lattice presented with generators (1,0) and (1,1).
        let sheared = ToroidalMap::from_positions(
            1,
            &[(0, 0, [1, 0]), (0, 0, [-1, 1])],
            vec![[0.0, 0.0]],
        )
        .unwrap();
        assert!(is_isomorphic(&sheared, &square()));
    }

    #[test]
    fn homology_separates_covers() {
        // A 2x1 supercell of the square lattice and a 1x2 one are isomorphic,
        // but neither matches the square lattice itself.
        let a = supercell(&square(), 2, 1).unwrap();
        let b = supercell(&square(), 1, 2).unwrap();
        assert!(is_isomorphic(&a, &b));
    }
}
