//! Rerouting paths around contractible revisits.
//!
//! Let `S_a` and `S_b` be two components of `F ∩ P_i`, with `v_1, v_2` the
//! first and last vertices of `S_a` along the path and `u_1, u_2` those of
//! `S_b`. The dual curve is realised as the sub-path `v_2 … u_1` plus a chord
//! through `F`, and it bounds a disk `D`. If `x` and `y` lie outside `D`, the
//! sub-path `v_2 … u_1` is replaced by the arc of `∂F` inside `D`; otherwise
//! `v_1 … u_2` is replaced by the arc of `∂F` outside `D`. Either way `S_a`
//! and `S_b` merge and the total revisit number drops.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::cut::cut_along_cycle;
use crate::error::{Error, Result};
use crate::homotopy::{chord_cycle, HomotopyClass};
use crate::paths::{face_path_components, touched_faces, Component, PathSystem, XYPath};
use crate::surface_map::{FaceId, SurfaceMap, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RerouteCase {
    EndpointsOutsideDisk,
    EndpointsInsideDisk,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RerouteStep {
    pub path_index: usize,
    pub face: FaceId,
    /// The revisit actually resolved (innermost inside the requested one).
    pub pair: (Component, Component),
    pub case: RerouteCase,
    pub old_r: usize,
    pub new_r: usize,
}

/// A contractible revisit with its disk and the two boundary arcs of `F`
/// between the chord ends.
struct Revisit {
    pair: (Component, Component),
    case: RerouteCase,
    /// Original vertices of the disk side.
    disk: BTreeSet<Vertex>,
    /// Arc of `∂F` from `u_1` to `v_2` inside the disk, ends included.
    inner: Vec<Vertex>,
    /// The other arc from `u_1` to `v_2`.
    outer: Vec<Vertex>,
}

/// The two arcs of a face boundary between positions `i` and `j`, both
/// oriented from `i` to `j`.
fn arcs(walk: &[Vertex], i: usize, j: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let k = walk.len();
    let forward: Vec<Vertex> = (0..=((j + k - i) % k)).map(|s| walk[(i + s) % k]).collect();
    let backward: Vec<Vertex> = (0..=((i + k - j) % k)).map(|s| walk[(i + k - s) % k]).collect();
    (forward, backward)
}

/// Analyses a revisit; `None` when it is not contractible.
fn analyse(sys: &PathSystem, map: &SurfaceMap, i: usize, face: FaceId, a: Component, b: Component) -> Result<Option<Revisit>> {
    let path = &sys.paths[i];
    let (a, b) = if a.start < b.start { (a, b) } else { (b, a) };
    let (s, t) = (a.end, b.start);
    let (aug, chord, cycle) = chord_cycle(map, path, face, s, t)?;
    let cut = cut_along_cycle(&aug, &cycle)?;
    if !cut.separating || cut.disk_sides().is_empty() {
        return Ok(None);
    }
    // Which side holds the other paths (and hence x and y).
    let others = sys.internal_vertices_except(i);
    let probe = others.iter().next().copied();
    let side_of_others = probe.map(|v| {
        (0..cut.components.len())
            .find(|&c| cut.components[c].original_vertices().contains(&v))
            .unwrap()
    });
    let disks = cut.disk_sides();
    let (disk_side, case) = match side_of_others {
        Some(o) => match disks.iter().copied().find(|&d| d != o) {
            Some(d) => (d, RerouteCase::EndpointsOutsideDisk),
            None => (o, RerouteCase::EndpointsInsideDisk),
        },
        None => (disks[0], RerouteCase::EndpointsOutsideDisk),
    };
    // The two faces next to the chord each hold one arc of the old face.
    let walk = &map.face(face).vertices;
    let (u, v) = (path.vertices[s], path.vertices[t]);
    let (pu, pv) = (walk.iter().position(|&w| w == u).unwrap(), walk.iter().position(|&w| w == v).unwrap());
    let (fwd, bwd) = arcs(walk, pu, pv);
    let fwd_edges: Vec<_> = fwd.windows(2).map(|w| map.edge_between(w[0], w[1]).unwrap()).collect();
    let cycle_edges: BTreeSet<_> = cycle.edges().into_iter().filter(|&e| e != chord).collect();
    let side = &cut.components[disk_side];
    let fwd_inside = match fwd_edges.iter().find(|e| !cycle_edges.contains(e)) {
        Some(&e) => side.contains_original_edge(e),
        None => {
            let e = bwd
                .windows(2)
                .map(|w| map.edge_between(w[0], w[1]).unwrap())
                .find(|e| !cycle_edges.contains(e))
                .ok_or_else(|| Error::RerouteFailed("face lies on the dual curve".into()))?;
            !side.contains_original_edge(e)
        }
    };
    let (inner, outer) = if fwd_inside { (fwd, bwd) } else { (bwd, fwd) };
    Ok(Some(Revisit { pair: (a, b), case, disk: side.original_vertices(), inner, outer }))
}

/// Candidate replacements for the path, best first; non-simple ones are
/// dropped.
fn rerouted(map: &SurfaceMap, face: FaceId, path: &XYPath, r: &Revisit) -> Vec<Vec<Vertex>> {
    let (a, b) = r.pair;
    let p = &path.vertices;
    let splice = |head: usize, arc: &[Vertex], tail: usize| {
        let mut out = p[..head].to_vec();
        out.extend_from_slice(arc);
        out.extend_from_slice(&p[tail..]);
        simple(out)
    };
    let mut out = Vec::new();
    match r.case {
        RerouteCase::EndpointsOutsideDisk => out.push(splice(a.end, &r.inner, b.start + 1)),
        RerouteCase::EndpointsInsideDisk => {
            // v_1 … u_2 replaced by the arc of F between them that misses
            // both components
            let (v1, u2) = (p[a.start], p[b.end]);
            let walk = &map.face(face).vertices;
            let (i, j) = (walk.iter().position(|&w| w == v1).unwrap(), walk.iter().position(|&w| w == u2).unwrap());
            let (fwd, bwd) = arcs(walk, i, j);
            let on_path: BTreeSet<Vertex> = a.vertices(path).iter().chain(b.vertices(path)).copied().collect();
            for arc in [fwd, bwd] {
                if arc[1..arc.len() - 1].iter().all(|w| !on_path.contains(w)) {
                    out.push(splice(a.start, &arc, b.end + 1));
                }
            }
            out.push(splice(a.end, &r.outer, b.start + 1));
        }
    }
    out.into_iter().flatten().collect()
}

fn simple(vs: Vec<Vertex>) -> Option<Vec<Vertex>> {
    let set: BTreeSet<Vertex> = vs.iter().copied().collect();
    (set.len() == vs.len()).then_some(vs)
}

/// Per-face component counts of a path.
fn face_counts(map: &SurfaceMap, path: &XYPath) -> Vec<(FaceId, usize)> {
    touched_faces(map, path)
        .into_iter()
        .map(|f| (f, face_path_components(map, path, f).len()))
        .collect()
}

/// Checks every guarantee of a single reroute.
fn accept(map: &SurfaceMap, sys: &PathSystem, i: usize, face: FaceId, new: &XYPath) -> bool {
    let old = &sys.paths[i];
    if new.x() != sys.x || new.y() != sys.y {
        return false;
    }
    let others = sys.internal_vertices_except(i);
    if new.internal().iter().any(|v| others.contains(v)) {
        return false;
    }
    let (before, after) = (face_counts(map, old), face_counts(map, new));
    let r = |c: &[(FaceId, usize)]| c.iter().map(|(_, k)| k - 1).sum::<usize>();
    if r(&after) >= r(&before) {
        return false;
    }
    after.iter().all(|&(f, k)| {
        f == face || k <= before.iter().find(|(g, _)| *g == f).map_or(1, |&(_, k0)| k0)
    })
}

fn check_system(map: &SurfaceMap, sys: &PathSystem) -> Result<()> {
    if sys.paths.len() < 3 {
        return Err(Error::SystemTooSmall(sys.paths.len()));
    }
    if map.cofacial(sys.x, sys.y) {
        return Err(Error::CofacialEndpoints);
    }
    sys.validate()
}

/// Resolves one contractible revisit `pair` of face `face` by path `i`.
///
/// The map is assumed polyhedral; callers check that once.
pub fn reroute_contractible(
    map: &SurfaceMap,
    sys: &PathSystem,
    i: usize,
    face: FaceId,
    pair: (Component, Component),
) -> Result<(PathSystem, RerouteStep)> {
    check_system(map, sys)?;
    let path = &sys.paths[i];
    let comps = face_path_components(map, path, face);
    if pair.0 == pair.1 {
        return Err(Error::ComponentsNotDistinct);
    }
    if !comps.contains(&pair.0) || !comps.contains(&pair.1) {
        return Err(Error::RevisitNotContractible);
    }
    let outer = analyse(sys, map, i, face, pair.0, pair.1)?.ok_or(Error::RevisitNotContractible)?;
    // Innermost: contractible revisits of the same face whose disk lies in
    // this one, smallest first.
    let mut candidates: Vec<Revisit> = Vec::new();
    for x in 0..comps.len() {
        for y in x + 1..comps.len() {
            if (comps[x], comps[y]) == outer.pair {
                continue;
            }
            if let Some(r) = analyse(sys, map, i, face, comps[x], comps[y])? {
                if r.disk.is_subset(&outer.disk) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort_by_key(|r| (r.disk.len(), r.pair));
    candidates.push(outer);
    let old_r = crate::paths::total_revisit_number(map, path);
    for r in candidates {
        let Some(new) = rerouted(map, face, path, &r)
            .into_iter()
            .filter_map(|vs| XYPath::new(map, vs).ok())
            .find(|new| accept(map, sys, i, face, new))
        else {
            continue;
        };
        let new_r = crate::paths::total_revisit_number(map, &new);
        let mut next = sys.clone();
        next.paths[i] = new;
        let step = RerouteStep { path_index: i, face, pair: r.pair, case: r.case, old_r, new_r };
        return Ok((next, step));
    }
    Err(Error::RerouteFailed(format!("no valid reroute for path {i} at face {face}")))
}

/// A contractible revisit: path index, face and the two components.
pub type RevisitSite = (usize, FaceId, Component, Component);

/// All contractible revisits of the system, in path, face, pair order.
pub fn contractible_revisits(map: &SurfaceMap, sys: &PathSystem) -> Result<Vec<RevisitSite>> {
    let mut out = Vec::new();
    for (i, p) in sys.paths.iter().enumerate() {
        for f in touched_faces(map, p) {
            let comps = face_path_components(map, p, f);
            for a in 0..comps.len() {
                for b in a + 1..comps.len() {
                    if analyse(sys, map, i, f, comps[a], comps[b])?.is_some() {
                        out.push((i, f, comps[a], comps[b]));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn first_contractible(map: &SurfaceMap, sys: &PathSystem) -> Result<Option<RevisitSite>> {
    for (i, p) in sys.paths.iter().enumerate() {
        for f in touched_faces(map, p) {
            let comps = face_path_components(map, p, f);
            for a in 0..comps.len() {
                for b in a + 1..comps.len() {
                    if analyse(sys, map, i, f, comps[a], comps[b])?.is_some() {
                        return Ok(Some((i, f, comps[a], comps[b])));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimized {
    pub system: PathSystem,
    pub steps: Vec<RerouteStep>,
    pub initial_r: usize,
    pub final_r: usize,
}

/// Reroutes until no contractible revisit is left. With `rng`, the revisit
/// to resolve is drawn at random each step.
pub fn minimize_revisits_with<R: Rng>(map: &SurfaceMap, sys: &PathSystem, mut rng: Option<&mut R>) -> Result<Minimized> {
    check_system(map, sys)?;
    let initial_r = sys.total_revisit(map);
    let mut cur = sys.clone();
    let mut steps = Vec::new();
    loop {
        let site = match rng.as_deref_mut() {
            Some(rng) => contractible_revisits(map, &cur)?.choose(rng).copied(),
            None => first_contractible(map, &cur)?,
        };
        let Some((i, f, a, b)) = site else { break };
        let (next, step) = reroute_contractible(map, &cur, i, f, (a, b))?;
        if steps.len() > initial_r {
            return Err(Error::RerouteFailed("revisit number failed to decrease".into()));
        }
        steps.push(step);
        cur = next;
    }
    let final_r = cur.total_revisit(map);
    Ok(Minimized { system: cur, steps, initial_r, final_r })
}

pub fn minimize_revisits(map: &SurfaceMap, sys: &PathSystem) -> Result<Minimized> {
    minimize_revisits_with::<rand_chacha::ChaCha8Rng>(map, sys, None)
}

/// Non-revisiting paths recovered from one homotopy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPaths {
    pub paths: Vec<XYPath>,
    pub class_size: usize,
    /// Every minimised path stayed inside the class's bounding disk.
    pub contained_in_disk: bool,
}

/// Minimises the revisits of a homotopy class of at least three paths and
/// returns the paths left without revisits.
pub fn wv_paths_in_class(map: &SurfaceMap, sys: &PathSystem, class: &HomotopyClass) -> Result<ClassPaths> {
    let k = class.members.len();
    if k < 3 {
        return Err(Error::ClassTooSmall(k));
    }
    let sub = PathSystem {
        x: sys.x,
        y: sys.y,
        paths: class.members.iter().map(|&m| sys.paths[m].clone()).collect(),
    };
    let done = minimize_revisits(map, &sub)?;
    let contained_in_disk = done
        .system
        .paths
        .iter()
        .all(|p| p.vertices.iter().all(|v| class.disk_vertices.contains(v)));
    let paths = done
        .system
        .paths
        .into_iter()
        .filter(|p| crate::paths::total_revisit_number(map, p) == 0)
        .collect();
    Ok(ClassPaths { paths, class_size: k, contained_in_disk })
}

/// A random detour: a simple path from `a` to `b` avoiding `blocked`, found
/// by a randomised depth-first search.
fn random_walk<R: Rng>(map: &SurfaceMap, a: Vertex, b: Vertex, blocked: &BTreeSet<Vertex>, rng: &mut R) -> Option<Vec<Vertex>> {
    let mut seen = vec![false; map.vertex_count()];
    for &v in blocked {
        seen[v] = true;
    }
    seen[a] = true;
    let mut stack = vec![a];
    let mut next: Vec<Vec<Vertex>> = vec![Vec::new(); map.vertex_count()];
    let mut nb: Vec<Vertex> = map.neighbors(a).collect();
    nb.shuffle(rng);
    next[a] = nb;
    while let Some(&v) = stack.last() {
        if v == b {
            return Some(stack);
        }
        match next[v].pop() {
            Some(w) if !seen[w] => {
                seen[w] = true;
                let mut nb: Vec<Vertex> = map.neighbors(w).collect();
                nb.shuffle(rng);
                next[w] = nb;
                stack.push(w);
            }
            Some(_) => {}
            None => {
                stack.pop();
            }
        }
    }
    None
}

/// Starts from a maximum path system and replaces random stretches of its
/// paths by random detours, which typically creates revisits.
pub fn random_path_system<R: Rng>(map: &SurfaceMap, x: Vertex, y: Vertex, detours: usize, rng: &mut R) -> Result<PathSystem> {
    let (_, mut sys) = crate::flow::local_connectivity(map, x, y)?;
    for _ in 0..detours {
        let i = rng.gen_range(0..sys.paths.len());
        let len = sys.paths[i].vertices.len();
        if len < 2 {
            continue;
        }
        let s = rng.gen_range(0..len - 1);
        let t = rng.gen_range(s + 1..len);
        let p = &sys.paths[i].vertices;
        let mut blocked = sys.internal_vertices_except(i);
        blocked.extend(p[..s].iter().copied());
        blocked.extend(p[t + 1..].iter().copied());
        blocked.insert(if p[s] == x { y } else { x });
        if s == 0 && t == len - 1 {
            blocked.remove(&y);
        }
        let Some(mid) = random_walk(map, p[s], p[t], &blocked, rng) else { continue };
        let mut vs = p[..s].to_vec();
        vs.extend(mid);
        vs.extend_from_slice(&p[t + 1..]);
        if vs.len() == 2 && sys.paths.iter().enumerate().any(|(j, q)| j != i && q.len() == 1) {
            continue;
        }
        sys.paths[i] = XYPath::new(map, vs)?;
    }
    sys.validate()?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, icosahedron};
    use crate::paths::total_revisit_number;

    fn detour_system() -> (SurfaceMap, PathSystem) {
        let m = cube();
        // 0 -> 7 three ways; the first detours across the bottom face 0-1-3-2
        let paths = vec![
            XYPath::new(&m, vec![0, 1, 5, 7]).unwrap(),
            XYPath::new(&m, vec![0, 2, 3, 7]).unwrap(),
            XYPath::new(&m, vec![0, 4, 6, 7]).unwrap(),
        ];
        (m.clone(), PathSystem::new(&m, 0, 7, paths).unwrap())
    }

    #[test]
    fn clean_system_has_nothing_to_fix() {
        let (m, sys) = detour_system();
        assert_eq!(sys.total_revisit(&m), 0);
        assert!(contractible_revisits(&m, &sys).unwrap().is_empty());
    }

    #[test]
    fn cube_detour_is_removed() {
        let m = cube();
        let paths = vec![
            XYPath::new(&m, vec![0, 1, 5, 4, 6, 7]).unwrap(),
            XYPath::new(&m, vec![0, 2, 3, 7]).unwrap(),
        ];
        let sys = PathSystem::new(&m, 0, 7, paths).unwrap();
        assert!(matches!(minimize_revisits(&m, &sys), Err(Error::SystemTooSmall(2))));
        let m = icosahedron();
        let (_, sys) = crate::flow::local_connectivity(&m, 0, 11).unwrap();
        let done = minimize_revisits(&m, &sys).unwrap();
        assert_eq!(done.final_r, 0);
        for p in &done.system.paths {
            assert_eq!(total_revisit_number(&m, p), 0);
        }
    }

    #[test]
    fn reroute_drops_revisit_by_one() {
        let m = icosahedron();
        // poles 0 and 11; the first path wanders between rings
        let paths = vec![
            XYPath::new(&m, vec![0, 1, 6, 2, 7, 11]).unwrap(),
            XYPath::new(&m, vec![0, 3, 8, 11]).unwrap(),
            XYPath::new(&m, vec![0, 4, 9, 11]).unwrap(),
        ];
        let sys = PathSystem::new(&m, 0, 11, paths).unwrap();
        let before = sys.total_revisit(&m);
        let sites = contractible_revisits(&m, &sys).unwrap();
        assert!(before > 0 && !sites.is_empty());
        let (i, f, a, b) = sites[0];
        let (next, step) = reroute_contractible(&m, &sys, i, f, (a, b)).unwrap();
        next.validate().unwrap();
        assert!(step.new_r < step.old_r);
        assert!(next.total_revisit(&m) < before);
    }

    #[test]
    fn random_systems_on_spheres_reach_zero() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut rerouted = 0;
        for m in [icosahedron(), crate::constructions::prism(6), crate::constructions::antiprism(5)] {
            let n = m.vertex_count();
            for _ in 0..20 {
                let (x, y) = loop {
                    let x = rng.gen_range(0..n);
                    let y = rng.gen_range(0..n);
                    if x != y && !m.cofacial(x, y) {
                        break (x, y);
                    }
                };
                let sys = random_path_system(&m, x, y, 6, &mut rng).unwrap();
                if sys.len() < 3 {
                    continue;
                }
                let done = minimize_revisits_with(&m, &sys, Some(&mut rng)).unwrap();
                rerouted += done.steps.len();
                assert_eq!(done.final_r, 0, "{sys:?}");
                assert_eq!(done.system.len(), sys.len());
                done.system.validate().unwrap();
                for w in done.steps.windows(2) {
                    assert!(w[1].old_r <= w[0].old_r);
                }
            }
        }
        assert!(rerouted > 10, "only {rerouted} reroutes");
    }

    #[test]
    fn nothing_to_reroute_without_revisits() {
        let (m, sys) = detour_system();
        let c = Component { start: 0, end: 0 };
        let d = Component { start: 2, end: 2 };
        assert!(reroute_contractible(&m, &sys, 0, 0, (c, d)).is_err());
    }
}
