use super::ToroidalMap;

/// Finite undirected multigraph; loops and repeated edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        MultiGraph {
            vertex_count,
            edges,
        }
    }

    pub fn cycle(n: usize) -> Self {
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        MultiGraph::new(n, edges)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adjacency lists holding `(neighbour, edge index)`; loops appear twice.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Connected-component label of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for s in 0..self.vertex_count {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, _) in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.components().iter().all(|&c| c == 0)
    }

    /// Cut vertices, found by an iterative Hopcroft-Tarjan low-link search.
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, edge used to enter it, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (u, via, ref mut i)) = stack.last_mut() {
                if *i < adj[u].len() {
                    let (v, k) = adj[u][*i];
                    *i += 1;
                    if k == via {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, k, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// The graph with vertex `x` and its edges deleted; later ids shift down.
    pub fn without_vertex(&self, x: usize) -> MultiGraph {
        let relabel = |v: usize| if v > x { v - 1 } else { v };
        MultiGraph::new(
            self.vertex_count - 1,
            self.edges
                .iter()
                .filter(|&&(u, v)| u != x && v != x)
                .map(|&(u, v)| (relabel(u), relabel(v)))
                .collect(),
        )
    }

    pub fn is_cycle(&self) -> bool {
        self.vertex_count >= 1
            && self.edges.len() == self.vertex_count
            && self.degrees().iter().all(|&d| d == 2)
            && self.is_connected()
    }
}

/// Quotient of the lattice by `mℤ × nℤ`: vertex `(v, i, j)` has index
/// `v + |V|(i + m j)`.
pub fn cover(map: &ToroidalMap, m: usize, n: usize) -> MultiGraph {
    assert!(m >= 1 && n >= 1, "cover dimensions must be positive");
    let nv = map.vertex_count();
    let idx = |v: usize, i: i64, j: i64| -> usize {
        let i = i.rem_euclid(m as i64) as usize;
        let j = j.rem_euclid(n as i64) as usize;
        v + nv * (i + m * j)
    };
    let mut edges = Vec::with_capacity(map.edge_count() * m * n);
    for j in 0..n as i64 {
        for i in 0..m as i64 {
            for (u, v, s) in map.edges() {
                edges.push((idx(u, i, j), idx(v, i + s[0], j + s[1])));
            }
        }
    }
    MultiGraph::new(nv * m * n, edges)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn square_cover_counts() {
        let g = cover(&square(), 2, 2);
        assert_eq!(g.vertex_count, 4);
        assert_eq!(g.edge_count(), 8);
        assert!(g.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn square_trivial_cover_is_two_loops() {
        let g = cover(&square(), 1, 1);
        assert_eq!(g.vertex_count, 1);
        assert_eq!(g.edges, vec![(0, 0), (0, 0)]);
    }

    #[test]
    fn hexagonal_cover_counts() {
        let g = cover(&hexagonal(), 3, 3);
        assert_eq!((g.vertex_count, g.edge_count()), (18, 27));
        assert!(g.is_connected());
    }

    #[test]
    fn articulation_in_bowtie() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(g.articulation_points(), vec![2]);
        assert!(MultiGraph::cycle(5).articulation_points().is_empty());
        let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]);
        assert_eq!(path.articulation_points(), vec![1]);
    }

    #[test]
    fn cycle_detection() {
        assert!(MultiGraph::cycle(4).is_cycle());
        assert!(!MultiGraph::complete(4).is_cycle());
    }
}
