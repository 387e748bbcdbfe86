//! Local connectivity by unit vertex-capacity max-flow (Menger).
//!
//! Each vertex `v` is split into `v_in = 2v` and `v_out = 2v + 1` joined by
//! an arc of capacity one; `x` and `y` are uncapacitated. Augmenting paths
//! are found by BFS scanning neighbours in increasing order, so the
//! extracted path systems are reproducible.

use std::collections::VecDeque;

use crate::error::Result;
use crate::paths::{check_pair, PathSystem, XYPath};
use crate::surface_map::{SurfaceMap, Vertex};

/// Sorted, deduplicated neighbour lists without loops.
pub fn simple_adjacency(map: &SurfaceMap) -> Vec<Vec<Vertex>> {
    (0..map.vertex_count())
        .map(|v| {
            let mut ns: Vec<Vertex> = map.neighbors(v).filter(|&w| w != v).collect();
            ns.sort_unstable();
            ns.dedup();
            ns
        })
        .collect()
}

struct Network {
    head: Vec<usize>,
    cap: Vec<i32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, a: usize, b: usize, c: i32) {
        self.out[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.out[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            if a == t {
                break;
            }
            for &k in &self.out[a] {
                let b = self.head[k];
                if self.cap[k] > 0 && !seen[b] {
                    seen[b] = true;
                    via[b] = k;
                    queue.push_back(b);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut b = t;
        while b != s {
            let k = via[b];
            self.cap[k] -= 1;
            self.cap[k ^ 1] += 1;
            b = self.head[k ^ 1];
        }
        true
    }
}

const BIG: i32 = 1 << 20;

/// Max-flow network between `x` and `y`, with the direct edges removed.
fn build(adj: &[Vec<Vertex>], x: Vertex, y: Vertex, removed: &[bool]) -> Network {
    let n = adj.len();
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let c = if v == x || v == y { BIG } else if removed[v] { 0 } else { 1 };
        net.arc(2 * v, 2 * v + 1, c);
    }
    for v in 0..n {
        for &w in &adj[v] {
            if (v == x && w == y) || (v == y && w == x) {
                continue;
            }
            net.arc(2 * v + 1, 2 * w, 1);
        }
    }
    net
}

fn flow_value(adj: &[Vec<Vertex>], x: Vertex, y: Vertex, removed: &[bool], bound: usize) -> (usize, Network) {
    let direct = usize::from(adj[x].binary_search(&y).is_ok());
    let mut net = build(adj, x, y, removed);
    let mut value = direct;
    while value < bound && net.augment(2 * x + 1, 2 * y) {
        value += 1;
    }
    (value, net)
}

/// Maximum number of internally disjoint `(x, y)`-paths, stopping early at `bound`.
pub fn bounded_local_connectivity(map: &SurfaceMap, x: Vertex, y: Vertex, bound: usize) -> Result<usize> {
    check_pair(map, x, y)?;
    let adj = simple_adjacency(map);
    Ok(flow_value(&adj, x, y, &vec![false; adj.len()], bound).0)
}

/// Like [`bounded_local_connectivity`] with some vertices deleted.
pub fn connectivity_avoiding(map: &SurfaceMap, x: Vertex, y: Vertex, removed: &[bool]) -> Result<usize> {
    check_pair(map, x, y)?;
    let adj = simple_adjacency(map);
    Ok(flow_value(&adj, x, y, removed, usize::MAX).0)
}

/// `κ(x, y)` and one maximum system of internally disjoint paths.
pub fn local_connectivity(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<(usize, PathSystem)> {
    check_pair(map, x, y)?;
    let adj = simple_adjacency(map);
    let (value, mut net) = flow_value(&adj, x, y, &vec![false; adj.len()], usize::MAX);
    let mut paths = Vec::with_capacity(value);
    if adj[x].binary_search(&y).is_ok() {
        paths.push(XYPath::new(map, vec![x, y])?);
    }
    // Arc k carries flow iff it is a forward arc (even index) with spent capacity.
    let carries = |net: &Network, k: usize| k % 2 == 0 && net.cap[k] == 0 && net.cap[k ^ 1] > 0;
    while paths.len() < value {
        let mut vertices = vec![x];
        let mut node = 2 * x + 1;
        loop {
            let k = net.out[node]
                .iter()
                .copied()
                .find(|&k| carries(&net, k) && net.head[k] % 2 == 0)
                .expect("flow decomposes into paths");
            net.cap[k ^ 1] -= 1;
            let v = net.head[k] / 2;
            vertices.push(v);
            if v == y {
                break;
            }
            node = 2 * v + 1;
        }
        paths.push(XYPath::new(map, vertices)?);
    }
    Ok((value, PathSystem::new(map, x, y, paths)?))
}

/// Vertex connectivity of the underlying simple graph (`n - 1` for complete graphs).
pub fn vertex_connectivity(map: &SurfaceMap) -> usize {
    let adj = simple_adjacency(map);
    let n = adj.len();
    let none = vec![false; n];
    let mut best = n.saturating_sub(1);
    for x in 0..n {
        for y in x + 1..n {
            if adj[x].binary_search(&y).is_err() {
                best = best.min(flow_value(&adj, x, y, &none, best).0);
            }
        }
    }
    best
}

/// Whether every non-adjacent pair has at least `k` disjoint paths.
pub fn is_k_connected(map: &SurfaceMap, k: usize) -> bool {
    let adj = simple_adjacency(map);
    let n = adj.len();
    if n <= k {
        return false;
    }
    let none = vec![false; n];
    (0..n).all(|x| {
        (x + 1..n).all(|y| adj[x].binary_search(&y).is_ok() || flow_value(&adj, x, y, &none, k).0 >= k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, icosahedron, k7_torus, tetrahedron};

    #[test]
    fn cube_antipodes_have_three_paths() {
        let m = cube();
        let (k, sys) = local_connectivity(&m, 0, 7).unwrap();
        assert_eq!(k, 3);
        assert_eq!(sys.len(), 3);
        sys.validate().unwrap();
    }

    #[test]
    fn adjacent_pair_counts_the_edge() {
        let m = icosahedron();
        let (k, sys) = local_connectivity(&m, 0, 1).unwrap();
        assert_eq!(k, 5);
        assert!(sys.paths.iter().any(|p| p.len() == 1));
    }

    #[test]
    fn connectivities() {
        assert_eq!(vertex_connectivity(&tetrahedron()), 3);
        assert_eq!(vertex_connectivity(&cube()), 3);
        assert_eq!(vertex_connectivity(&icosahedron()), 5);
        assert_eq!(vertex_connectivity(&k7_torus()), 6);
        assert!(is_k_connected(&cube(), 3));
        assert!(!is_k_connected(&cube(), 4));
    }
}
