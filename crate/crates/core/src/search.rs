//! Exhaustive search for non-revisiting `(x, y)`-paths.
//!
//! The depth-first search keeps, per face, the index of the last path
//! vertex on its boundary. Stepping onto a face is allowed only if the face
//! is untouched, or if the previous vertex was on it and the step runs
//! along its boundary; anything else would start a second component.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::flow::simple_adjacency;
use crate::paths::{check_pair, XYPath};
use crate::surface_map::{FaceId, SurfaceMap, Vertex};

/// Vertex cutoff for the exhaustive oracles, overridable by `WVMAPS_CUTOFF`.
pub fn exhaustive_cutoff() -> usize {
    std::env::var("WVMAPS_CUTOFF")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(40)
}

struct Dfs<'a> {
    map: &'a SurfaceMap,
    adj: Vec<Vec<Vertex>>,
    faces_of: Vec<Vec<FaceId>>,
    y: Vertex,
    last: Vec<Option<usize>>,
    on_path: Vec<bool>,
    stack: Vec<Vertex>,
}

impl<'a> Dfs<'a> {
    fn new(map: &'a SurfaceMap, x: Vertex, y: Vertex) -> Self {
        let faces_of = (0..map.vertex_count())
            .map(|v| {
                let mut fs = map.vertex_faces(v).to_vec();
                fs.sort_unstable();
                fs.dedup();
                fs
            })
            .collect::<Vec<_>>();
        let mut last = vec![None; map.face_count()];
        for &f in &faces_of[x] {
            last[f] = Some(0);
        }
        let mut on_path = vec![false; map.vertex_count()];
        on_path[x] = true;
        Dfs { map, adj: simple_adjacency(map), faces_of, y, last, on_path, stack: vec![x] }
    }

    fn can_step(&self, u: Vertex, w: Vertex) -> bool {
        let t = self.stack.len();
        let e = self.map.edge_between(u, w).unwrap();
        self.faces_of[w].iter().all(|&f| match self.last[f] {
            None => true,
            Some(s) => s + 1 == t && self.map.face(f).contains_edge(e),
        })
    }

    fn run<B>(&mut self, visit: &mut impl FnMut(&[Vertex]) -> ControlFlow<B>) -> ControlFlow<B> {
        let u = *self.stack.last().unwrap();
        for k in 0..self.adj[u].len() {
            let w = self.adj[u][k];
            if self.on_path[w] || !self.can_step(u, w) {
                continue;
            }
            let t = self.stack.len();
            let saved: Vec<(FaceId, Option<usize>)> =
                self.faces_of[w].iter().map(|&f| (f, self.last[f])).collect();
            for &(f, _) in &saved {
                self.last[f] = Some(t);
            }
            self.stack.push(w);
            self.on_path[w] = true;
            let flow = if w == self.y { visit(&self.stack) } else { self.run(visit) };
            self.on_path[w] = false;
            self.stack.pop();
            for (f, old) in saved {
                self.last[f] = old;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with the vertex sequence of every non-revisiting path.
pub fn for_each_wv_path<B>(
    map: &SurfaceMap,
    x: Vertex,
    y: Vertex,
    mut visit: impl FnMut(&[Vertex]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    check_pair(map, x, y)?;
    let mut dfs = Dfs::new(map, x, y);
    Ok(match dfs.run(&mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    })
}

/// Some non-revisiting `(x, y)`-path, or `None` if there is none.
pub fn exists_wv_path(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<Option<XYPath>> {
    let found = for_each_wv_path(map, x, y, |p| ControlFlow::Break(p.to_vec()))?;
    found.map(|vs| XYPath::new(map, vs)).transpose()
}

/// All non-revisiting `(x, y)`-paths in search order.
pub fn enumerate_wv_paths(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<Vec<XYPath>> {
    let mut out = Vec::new();
    for_each_wv_path::<()>(map, x, y, |p| {
        out.push(p.to_vec());
        ControlFlow::Continue(())
    })?;
    out.into_iter().map(|vs| XYPath::new(map, vs)).collect()
}

/// Largest family of internally disjoint non-revisiting paths, with a
/// family attaining it.
pub fn max_disjoint_wv_paths(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<(usize, Vec<XYPath>)> {
    max_disjoint_wv_paths_with_cutoff(map, x, y, exhaustive_cutoff())
}

pub fn max_disjoint_wv_paths_with_cutoff(
    map: &SurfaceMap,
    x: Vertex,
    y: Vertex,
    cutoff: usize,
) -> Result<(usize, Vec<XYPath>)> {
    let n = map.vertex_count();
    if n > cutoff.min(64) {
        return Err(Error::InstanceTooLarge { vertices: n, cutoff: cutoff.min(64) });
    }
    let paths = enumerate_wv_paths(map, x, y)?;
    let upper = crate::flow::bounded_local_connectivity(map, x, y, usize::MAX)?;
    // Paths leave x through distinct neighbours, so group them by that neighbour.
    let mut groups: Vec<(Vertex, Vec<(u64, usize)>)> = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let mask = p.internal().iter().fold(0u64, |m, &v| m | 1 << v);
        let first = p.vertices[1];
        match groups.iter_mut().find(|(v, _)| *v == first) {
            Some((_, g)) => g.push((mask, i)),
            None => groups.push((first, vec![(mask, i)])),
        }
    }
    for (_, g) in groups.iter_mut() {
        g.sort_by_key(|&(m, i)| (m.count_ones(), i));
    }
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    pack(&groups, 0, 0, &mut current, &mut best, upper);
    let family = best.iter().map(|&i| paths[i].clone()).collect();
    Ok((best.len(), family))
}

fn pack(
    groups: &[(Vertex, Vec<(u64, usize)>)],
    g: usize,
    used: u64,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
    upper: usize,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if g == groups.len() || best.len() >= upper || current.len() + groups.len() - g <= best.len() {
        return;
    }
    for &(mask, i) in &groups[g].1 {
        if mask & used == 0 {
            current.push(i);
            pack(groups, g + 1, used | mask, current, best, upper);
            current.pop();
            if best.len() >= upper {
                return;
            }
        }
    }
    pack(groups, g + 1, used, current, best, upper);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cube;
    use crate::paths::total_revisit_number;

    #[test]
    fn cofacial_pair_has_two_arcs() {
        let m = cube();
        // 0 and 3 are opposite corners of the square 0-1-3-2
        let all = enumerate_wv_paths(&m, 0, 3).unwrap();
        let vs: Vec<Vec<Vertex>> = all.iter().map(|p| p.vertices.clone()).collect();
        assert!(vs.contains(&vec![0, 1, 3]) && vs.contains(&vec![0, 2, 3]));
        for p in &all {
            assert_eq!(total_revisit_number(&m, p), 0);
        }
    }

    #[test]
    fn cube_antipodes() {
        let m = cube();
        assert!(exists_wv_path(&m, 0, 7).unwrap().is_some());
        let (k, fam) = max_disjoint_wv_paths(&m, 0, 7).unwrap();
        assert_eq!(k, 3);
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn cutoff_is_enforced() {
        let m = cube();
        assert_eq!(
            max_disjoint_wv_paths_with_cutoff(&m, 0, 7, 5),
            Err(Error::InstanceTooLarge { vertices: 8, cutoff: 5 })
        );
    }
}
