//! Brute-force reference implementations.
//!
//! These share no pruning with [`crate::search`]: every simple path is
//! generated and then judged by [`crate::paths::is_wv_path`]. They are only
//! meant for small maps and for cross-checking.

use crate::error::{Error, Result};
use crate::paths::{check_pair, is_wv_path, XYPath};
use crate::surface_map::{SurfaceMap, Vertex};

/// Hard limit; the number of simple paths grows exponentially.
pub const ORACLE_MAX_VERTICES: usize = 24;

fn all_simple_paths(map: &SurfaceMap, x: Vertex, y: Vertex) -> Vec<Vec<Vertex>> {
    fn go(map: &SurfaceMap, y: Vertex, stack: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let v = *stack.last().unwrap();
        if v == y {
            out.push(stack.clone());
            return;
        }
        let mut nb: Vec<Vertex> = map.neighbors(v).collect();
        nb.sort_unstable();
        nb.dedup();
        for w in nb {
            if !used[w] {
                used[w] = true;
                stack.push(w);
                go(map, y, stack, used, out);
                stack.pop();
                used[w] = false;
            }
        }
    }
    let mut used = vec![false; map.vertex_count()];
    used[x] = true;
    let mut out = Vec::new();
    go(map, y, &mut vec![x], &mut used, &mut out);
    out
}

fn guard(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<()> {
    check_pair(map, x, y)?;
    let n = map.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::InstanceTooLarge { vertices: n, cutoff: ORACLE_MAX_VERTICES });
    }
    Ok(())
}

/// Every non-revisiting path, sorted by vertex sequence.
pub fn naive_wv_paths(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<Vec<XYPath>> {
    guard(map, x, y)?;
    let mut out: Vec<XYPath> = all_simple_paths(map, x, y)
        .into_iter()
        .map(|vs| XYPath::new(map, vs).expect("simple path"))
        .filter(|p| is_wv_path(map, p))
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

pub fn naive_exists_wv_path(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<bool> {
    Ok(!naive_wv_paths(map, x, y)?.is_empty())
}

/// Largest family of internally disjoint non-revisiting paths, by plain
/// backtracking over the sorted path list.
pub fn naive_max_disjoint(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<usize> {
    let paths = naive_wv_paths(map, x, y)?;
    fn go(paths: &[XYPath], from: usize, used: &mut Vec<bool>, k: usize, best: &mut usize) {
        *best = (*best).max(k);
        for i in from..paths.len() {
            let p = &paths[i];
            if p.internal().iter().any(|&v| used[v]) {
                continue;
            }
            // a direct edge has no internal vertices but can occur once
            if p.internal().is_empty() && used[used.len() - 1] {
                continue;
            }
            let mark = |u: &mut Vec<bool>, b: bool| {
                for &v in p.internal() {
                    u[v] = b;
                }
                if p.internal().is_empty() {
                    let l = u.len() - 1;
                    u[l] = b;
                }
            };
            mark(used, true);
            go(paths, i + 1, used, k + 1, best);
            mark(used, false);
        }
    }
    let mut used = vec![false; map.vertex_count() + 1];
    let mut best = 0;
    go(&paths, 0, &mut used, 0, &mut best);
    Ok(best)
}

/// Smallest vertex set separating `x` from `y`, by trying subsets in order of
/// size; an edge `xy` adds one. Menger's theorem makes this `κ(x, y)`.
pub fn naive_min_separator(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<usize> {
    guard(map, x, y)?;
    let n = map.vertex_count();
    let mut adj = vec![0u32; n];
    let mut direct = false;
    for v in 0..n {
        for w in map.neighbors(v) {
            if (v, w) == (x, y) || (v, w) == (y, x) {
                direct = true;
            } else {
                adj[v] |= 1 << w;
            }
        }
    }
    let others: Vec<Vertex> = (0..n).filter(|&v| v != x && v != y).collect();
    let reaches = |removed: u32| {
        let mut seen = (1u32 << x) | removed;
        let mut frontier = 1u32 << x;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen & (1 << y) != 0
    };
    let mut best = others.len();
    for mask in 0u32..(1 << others.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |m, (_, &v)| m | 1 << v);
        if !reaches(removed) {
            best = size;
        }
    }
    Ok(best + direct as usize)
}

/// Largest family of internally disjoint `(x, y)`-paths, by backtracking over
/// all simple paths (shortest first) until the separator bound is met.
pub fn naive_max_disjoint_paths(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<usize> {
    let bound = naive_min_separator(map, x, y)?;
    let mut paths = all_simple_paths(map, x, y);
    paths.sort_by_key(|p| p.len());
    let masks: Vec<u64> = paths.iter().map(|p| p[1..p.len() - 1].iter().fold(0, |m, &v| m | 1 << v)).collect();
    fn go(masks: &[u64], lens: &[usize], from: usize, used: u64, direct: bool, k: usize, bound: usize, best: &mut usize) {
        *best = (*best).max(k);
        for i in from..masks.len() {
            if *best >= bound {
                return;
            }
            let is_direct = lens[i] == 2;
            if masks[i] & used != 0 || (is_direct && direct) {
                continue;
            }
            go(masks, lens, i + 1, used | masks[i], direct || is_direct, k + 1, bound, best);
        }
    }
    let lens: Vec<usize> = paths.iter().map(Vec::len).collect();
    let mut best = 0;
    go(&masks, &lens, 0, 0, false, 0, bound, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, k6_projective, octahedron};

    #[test]
    fn octahedron_poles() {
        let m = octahedron();
        // four two-edge paths through the equator, each touching two faces
        // only along the path itself
        let ps = naive_wv_paths(&m, 0, 5).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(naive_max_disjoint(&m, 0, 5).unwrap(), 4);
    }

    #[test]
    fn cube_antipodes() {
        let m = cube();
        assert!(naive_exists_wv_path(&m, 0, 7).unwrap());
        assert_eq!(naive_max_disjoint(&m, 0, 7).unwrap(), 3);
    }

    #[test]
    fn agrees_with_search_on_k6() {
        let m = k6_projective();
        let mut fast = crate::search::enumerate_wv_paths(&m, 0, 1).unwrap();
        fast.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        assert_eq!(fast, naive_wv_paths(&m, 0, 1).unwrap());
    }

    #[test]
    fn brute_force_connectivity() {
        let m = cube();
        assert_eq!(naive_min_separator(&m, 0, 7).unwrap(), 3);
        assert_eq!(naive_max_disjoint_paths(&m, 0, 7).unwrap(), 3);
        let m = crate::constructions::icosahedron();
        assert_eq!(naive_max_disjoint_paths(&m, 0, 1).unwrap(), 5);
        let m = crate::constructions::wheel(6);
        // rim neighbours: the hub, the other rim path, and the edge itself
        assert_eq!(naive_max_disjoint_paths(&m, 0, 1).unwrap(), 3);
    }

    #[test]
    fn refuses_large_maps() {
        let m = crate::constructions::torus_grid(5, 5);
        assert!(matches!(naive_wv_paths(&m, 0, 12), Err(Error::InstanceTooLarge { .. })));
    }
}
