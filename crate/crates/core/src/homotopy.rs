//! Dual curves of revisits and homotopy of `(x, y)`-paths.
//!
//! The dual curve of a revisit `{S_i, S_j}` to a face `F` runs through `F`
//! and along a thin neighbourhood of the path. Since that neighbourhood is a
//! disk containing the path, the curve is homotopic to the sub-path between
//! a vertex of `S_i` and a vertex of `S_j`, closed by a chord drawn through
//! `F`. The chord is inserted as a real edge so a single cycle-cutting
//! routine decides contractibility for everything here.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cut::{cut_along_cycle, is_contractible, CutResult, DartCycle};
use crate::error::{Error, Result};
use crate::paths::{face_path_components, Component, PathSystem, RevisitPair, RevisitRecord, XYPath};
use crate::surface_map::{EdgeId, FaceId, SurfaceMap, Vertex};

/// Which end of a component stands in for it when drawing the chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Representative {
    /// The end met first when walking the face boundary.
    #[default]
    FirstInWalk,
    /// The end met last when walking the face boundary.
    LastInWalk,
}

#[derive(Clone, Debug)]
pub struct DualCurve {
    pub face: FaceId,
    pub path_index: usize,
    pub pair: (Component, Component),
    /// Chord ends, in path order.
    pub ends: (Vertex, Vertex),
    /// The input map with the chord added.
    pub map: SurfaceMap,
    pub chord: EdgeId,
    pub cycle: DartCycle,
    pub contractible: bool,
}

fn representative(map: &SurfaceMap, path: &XYPath, face: FaceId, c: Component, rep: Representative) -> usize {
    let last = path.vertices.len() - 1;
    if c.start == 0 {
        return 0;
    }
    if c.end == last {
        return last;
    }
    if c.start == c.end {
        return c.start;
    }
    let f = map.face(face);
    let pos = |t: usize| f.position(path.vertices[t]).unwrap();
    let first = if pos(c.start) <= pos(c.end) { c.start } else { c.end };
    match rep {
        Representative::FirstInWalk => first,
        Representative::LastInWalk => c.start + c.end - first,
    }
}

/// The sub-path from position `s` to `t` closed by a chord through `face`.
pub(crate) fn chord_cycle(
    map: &SurfaceMap,
    path: &XYPath,
    face: FaceId,
    s: usize,
    t: usize,
) -> Result<(SurfaceMap, EdgeId, DartCycle)> {
    let (s, t) = (s.min(t), s.max(t));
    let (u, v) = (path.vertices[s], path.vertices[t]);
    let (aug, chord) = map.insert_chord_between(face, u, v)?;
    let (vs, mut es) = path.slice(s, t);
    es.push(chord);
    // The chord runs v -> u to close the walk; from_walk checks the ends.
    let cycle = DartCycle::from_walk(&aug, &vs, &es)?;
    Ok((aug, chord, cycle))
}

pub fn dual_curve(
    map: &SurfaceMap,
    path: &XYPath,
    path_index: usize,
    face: FaceId,
    si: Component,
    sj: Component,
) -> Result<DualCurve> {
    dual_curve_with(map, path, path_index, face, si, sj, Representative::default())
}

pub fn dual_curve_with(
    map: &SurfaceMap,
    path: &XYPath,
    path_index: usize,
    face: FaceId,
    si: Component,
    sj: Component,
    rep: Representative,
) -> Result<DualCurve> {
    if si == sj || si.end >= sj.start && sj.end >= si.start {
        return Err(Error::ComponentsNotDistinct);
    }
    let (si, sj) = if si.start < sj.start { (si, sj) } else { (sj, si) };
    let s = representative(map, path, face, si, rep);
    let t = representative(map, path, face, sj, rep);
    let (aug, chord, cycle) = chord_cycle(map, path, face, s, t)?;
    let contractible = is_contractible(&aug, &cycle)?;
    Ok(DualCurve {
        face,
        path_index,
        pair: (si, sj),
        ends: (path.vertices[s], path.vertices[t]),
        map: aug,
        chord,
        cycle,
        contractible,
    })
}

/// All revisit pairs of one face by one path, with contractibility.
pub fn revisit_record(map: &SurfaceMap, path: &XYPath, path_index: usize, face: FaceId) -> Result<RevisitRecord> {
    let components = face_path_components(map, path, face);
    let mut pairs = Vec::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let d = dual_curve(map, path, path_index, face, components[i], components[j])?;
            pairs.push(RevisitPair { i, j, contractible: d.contractible });
        }
    }
    Ok(RevisitRecord { face, path_index, components, pairs })
}

/// Every revisited face of a path.
pub fn revisit_records(map: &SurfaceMap, path: &XYPath, path_index: usize) -> Result<Vec<RevisitRecord>> {
    crate::paths::touched_faces(map, path)
        .into_iter()
        .filter(|&f| face_path_components(map, path, f).len() >= 2)
        .map(|f| revisit_record(map, path, path_index, f))
        .collect()
}

/// `4 - 2χ`, the bound on components, face touching and homotopy classes.
pub fn genus_bound(euler_char: i64) -> i64 {
    4 - 2 * euler_char
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBound {
    pub components: usize,
    pub bound: i64,
    pub holds: bool,
}

/// Component count of `F ∩ P` when every revisit is non-contractible,
/// against `max(1, 4 - 2χ)`: the counting argument needs two components,
/// and one is always possible.
pub fn count_noncontractible_components(map: &SurfaceMap, path: &XYPath, face: FaceId) -> Result<ComponentBound> {
    let record = revisit_record(map, path, 0, face)?;
    if let Some(p) = record.pairs.iter().find(|p| p.contractible) {
        return Err(Error::PreconditionViolated(format!(
            "revisit ({}, {}) to face {face} is contractible",
            p.i, p.j
        )));
    }
    let bound = genus_bound(map.euler_char()).max(1);
    let k = record.components.len();
    Ok(ComponentBound { components: k, bound, holds: k as i64 <= bound })
}

/// The closed walk `P` followed by `Q` reversed.
fn union_cycle(map: &SurfaceMap, p: &XYPath, q: &XYPath) -> Result<DartCycle> {
    let mut vs = p.vertices.clone();
    vs.pop();
    vs.extend(q.vertices.iter().rev().take(q.vertices.len() - 1));
    let mut es = p.edges.clone();
    es.extend(q.edges.iter().rev());
    DartCycle::from_walk(map, &vs, &es)
}

fn check_disjoint(p: &XYPath, q: &XYPath) -> Result<()> {
    let a: BTreeSet<Vertex> = p.internal().iter().copied().collect();
    if q.internal().iter().any(|v| a.contains(v)) || (p.len() == 1 && q.len() == 1) {
        return Err(Error::PathsNotDisjoint(0, 1));
    }
    Ok(())
}

/// Cut of the surface along `P ∪ Q`.
pub fn cut_along_paths(map: &SurfaceMap, p: &XYPath, q: &XYPath) -> Result<CutResult> {
    check_disjoint(p, q)?;
    cut_along_cycle(map, &union_cycle(map, p, q)?)
}

/// `P ∪ Q` bounds a disk.
pub fn paths_homotopic(map: &SurfaceMap, p: &XYPath, q: &XYPath) -> Result<bool> {
    if p == q {
        return Ok(true);
    }
    check_disjoint(p, q)?;
    is_contractible(map, &union_cycle(map, p, q)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyClass {
    /// Path indices, ascending.
    pub members: Vec<usize>,
    /// Two members whose union bounds a disk containing the whole class.
    pub boundary: Option<(usize, usize)>,
    /// Original vertices of that disk, boundary included.
    pub disk_vertices: BTreeSet<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyClassification {
    pub classes: Vec<HomotopyClass>,
    pub bound: i64,
    /// One class on the sphere, at most `4 - 2χ` elsewhere.
    pub within_bound: bool,
}

impl HomotopyClassification {
    pub fn class_of(&self, path: usize) -> usize {
        self.classes.iter().position(|c| c.members.contains(&path)).unwrap()
    }

    pub fn largest(&self) -> Option<&HomotopyClass> {
        self.classes.iter().max_by_key(|c| (c.members.len(), std::cmp::Reverse(c.members[0])))
    }
}

/// Smallest disk side of `P_a ∪ P_b` containing every other member.
fn bounding_disk(map: &SurfaceMap, sys: &PathSystem, a: usize, b: usize, members: &[usize]) -> Result<Option<BTreeSet<Vertex>>> {
    let cut = cut_along_paths(map, &sys.paths[a], &sys.paths[b])?;
    let mut best: Option<BTreeSet<Vertex>> = None;
    for side in cut.disk_sides() {
        let verts = cut.components[side].original_vertices();
        let holds_all = members
            .iter()
            .filter(|&&m| m != a && m != b)
            .all(|&m| sys.paths[m].internal().iter().all(|v| verts.contains(v)));
        if holds_all && best.as_ref().is_none_or(|b| verts.len() < b.len()) {
            best = Some(verts);
        }
    }
    Ok(best)
}

/// Partition of a path system into homotopy classes, each with a bounding pair.
pub fn classify_homotopy(map: &SurfaceMap, sys: &PathSystem) -> Result<HomotopyClassification> {
    sys.validate()?;
    let k = sys.paths.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let related: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| paths_homotopic(map, &sys.paths[i], &sys.paths[j]))
        .collect::<Result<_>>()?;
    let mut rel = vec![vec![false; k]; k];
    for (&(i, j), &r) in pairs.iter().zip(&related) {
        rel[i][j] = r;
        rel[j][i] = r;
    }
    // Connected components of the relation.
    let mut class_of = vec![usize::MAX; k];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if class_of[s] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![s];
        class_of[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            for v in 0..k {
                if rel[u][v] && class_of[v] == usize::MAX {
                    class_of[v] = id;
                    members.push(v);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    for members in &classes {
        for (ai, &a) in members.iter().enumerate() {
            for &b in &members[ai + 1..] {
                if !rel[a][b] {
                    let mid = members.iter().copied().find(|&m| rel[a][m] && rel[m][b]).unwrap_or(a);
                    return Err(Error::NonTransitiveHomotopy(a, mid, b));
                }
            }
        }
    }
    let mut out = Vec::with_capacity(classes.len());
    for members in classes {
        let mut best: Option<((usize, usize), BTreeSet<Vertex>)> = None;
        if members.len() >= 2 {
            for (ai, &a) in members.iter().enumerate() {
                for &b in &members[ai + 1..] {
                    if let Some(verts) = bounding_disk(map, sys, a, b, &members)? {
                        if best.as_ref().is_none_or(|(_, v)| verts.len() < v.len()) {
                            best = Some(((a, b), verts));
                        }
                    }
                }
            }
            if best.is_none() {
                return Err(Error::NoBoundingPair(members));
            }
        }
        let (boundary, disk_vertices) = match best {
            Some((pair, v)) => (Some(pair), v),
            None => (None, BTreeSet::new()),
        };
        out.push(HomotopyClass { members, boundary, disk_vertices });
    }
    let chi = map.euler_char();
    let bound = genus_bound(chi);
    let within_bound = if chi == 2 { out.len() == 1 } else { out.len() as i64 <= bound };
    Ok(HomotopyClassification { classes: out, bound, within_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, gamma_orientable, octahedron, torus_grid};
    use crate::flow::local_connectivity;

    #[test]
    fn sphere_revisits_are_contractible() {
        let m = cube();
        let p = XYPath::new(&m, vec![0, 1, 5, 7, 3]).unwrap();
        let records = revisit_records(&m, &p, 0).unwrap();
        assert!(!records.is_empty());
        assert!(records.iter().all(|r| r.pairs.iter().all(|p| p.contractible)));
    }

    #[test]
    fn representative_choice_does_not_change_flags() {
        let m = cube();
        let p = XYPath::new(&m, vec![0, 1, 5, 4, 6, 2, 3]).unwrap();
        for f in 0..m.face_count() {
            let comps = face_path_components(&m, &p, f);
            for i in 0..comps.len() {
                for j in i + 1..comps.len() {
                    let a = dual_curve_with(&m, &p, 0, f, comps[i], comps[j], Representative::FirstInWalk).unwrap();
                    let b = dual_curve_with(&m, &p, 0, f, comps[i], comps[j], Representative::LastInWalk).unwrap();
                    assert_eq!(a.contractible, b.contractible);
                }
            }
        }
    }

    #[test]
    fn same_component_is_rejected() {
        let m = cube();
        let p = XYPath::new(&m, vec![0, 1, 3]).unwrap();
        let c = Component { start: 0, end: 2 };
        assert!(matches!(dual_curve(&m, &p, 0, 0, c, c), Err(Error::ComponentsNotDistinct)));
    }

    #[test]
    fn sphere_system_is_one_class() {
        let m = octahedron();
        let (_, sys) = local_connectivity(&m, 0, 5).unwrap();
        let c = classify_homotopy(&m, &sys).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert!(c.within_bound);
        let class = &c.classes[0];
        assert_eq!(class.members.len(), 4);
        assert!(class.boundary.is_some());
    }

    #[test]
    fn torus_paths_around_different_sides() {
        // on the 4x4 torus grid, the two ways around a row are not homotopic
        let m = torus_grid(4, 4);
        let p = XYPath::new(&m, vec![0, 1, 2]).unwrap();
        let q = XYPath::new(&m, vec![0, 3, 2]).unwrap();
        assert!(!paths_homotopic(&m, &p, &q).unwrap());
        let r = XYPath::new(&m, vec![0, 4, 5, 6, 2]).unwrap();
        assert!(paths_homotopic(&m, &p, &r).unwrap());
    }

    #[test]
    fn gamma_system_classes_respect_the_bound() {
        let (m, s) = gamma_orientable(2).unwrap();
        let (_, sys) = local_connectivity(&m, s.x(), s.y()).unwrap();
        let c = classify_homotopy(&m, &sys).unwrap();
        assert!(c.within_bound);
        assert!(c.classes.len() as i64 <= 8);
    }
}
