//! Polyhedrality: simple graph, simple faces that meet properly, and
//! 3-connectivity. Also face-touching numbers and the connectivity ceiling
//! for surfaces of non-positive Euler characteristic.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{is_k_connected, vertex_connectivity};
use crate::surface_map::{EdgeId, FaceId, SurfaceMap, Vertex};

/// One connected piece of the intersection of two face boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedPiece {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

/// Two faces whose boundaries meet in more than a single vertex or edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperIntersectionWitness {
    pub face_a: FaceId,
    pub face_b: FaceId,
    pub components: Vec<SharedPiece>,
}

/// Components of `∂F_a ∩ ∂F_b`, each a connected subgraph of shared
/// vertices and shared edges.
pub fn boundary_intersection(map: &SurfaceMap, a: FaceId, b: FaceId) -> Vec<SharedPiece> {
    let (fa, fb) = (map.face(a), map.face(b));
    let verts: Vec<Vertex> = fa.boundary_vertices.intersection(&fb.boundary_vertices).copied().collect();
    let edges: Vec<EdgeId> = fa.boundary_edges.intersection(&fb.boundary_edges).copied().collect();
    // union-find over the shared vertices
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let idx = |v: Vertex| verts.binary_search(&v).unwrap();
    for &e in &edges {
        let [u, v] = map.edge(e).ends;
        let (ru, rv) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
        parent[ru] = rv;
    }
    let mut pieces: Vec<(usize, SharedPiece)> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        let r = find(&mut parent, i);
        match pieces.iter_mut().find(|(root, _)| *root == r) {
            Some((_, p)) => p.vertices.push(v),
            None => pieces.push((r, SharedPiece { vertices: vec![v], edges: Vec::new() })),
        }
    }
    for &e in &edges {
        let r = find(&mut parent, idx(map.edge(e).ends[0]));
        pieces.iter_mut().find(|(root, _)| *root == r).unwrap().1.edges.push(e);
    }
    pieces.into_iter().map(|(_, p)| p).collect()
}

fn proper(pieces: &[SharedPiece]) -> bool {
    match pieces {
        [] => true,
        [p] => p.edges.len() <= 1 && p.vertices.len() == p.edges.len() + 1,
        _ => false,
    }
}

/// Pairs of distinct faces sharing at least one vertex, ascending.
fn meeting_pairs(map: &SurfaceMap) -> BTreeSet<(FaceId, FaceId)> {
    let mut pairs = BTreeSet::new();
    for v in 0..map.vertex_count() {
        let fs = map.vertex_faces(v);
        for (i, &a) in fs.iter().enumerate() {
            for &b in &fs[i + 1..] {
                if a != b {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    pairs
}

/// All face pairs that do not meet properly.
pub fn improper_face_pairs(map: &SurfaceMap) -> Vec<ProperIntersectionWitness> {
    meeting_pairs(map)
        .into_iter()
        .filter_map(|(a, b)| {
            let components = boundary_intersection(map, a, b);
            (!proper(&components)).then_some(ProperIntersectionWitness { face_a: a, face_b: b, components })
        })
        .collect()
}

/// `Ok(())` when any two faces meet in nothing, one vertex or one edge;
/// otherwise the first offending pair.
pub fn faces_meet_properly(map: &SurfaceMap) -> std::result::Result<(), ProperIntersectionWitness> {
    match improper_face_pairs(map).into_iter().next() {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Largest number of intersection components over face pairs, with a pair
/// attaining it.
pub fn face_touching_number(map: &SurfaceMap) -> (usize, Option<(FaceId, FaceId)>) {
    let mut best = (0, None);
    for (a, b) in meeting_pairs(map) {
        let c = boundary_intersection(map, a, b).len();
        if c > best.0 {
            best = (c, Some((a, b)));
        }
    }
    best
}

pub fn is_three_connected(map: &SurfaceMap) -> Result<bool> {
    if !map.is_simple_graph() {
        return Err(Error::NotSimpleGraph);
    }
    let n = map.vertex_count();
    if n <= 4 {
        return Ok(n == 4 && map.edge_count() == 6);
    }
    Ok(is_k_connected(map, 3))
}

/// The first clause of the polyhedrality definition that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NotPolyhedral {
    NotSimpleGraph,
    NonSimpleFace(FaceId),
    ShortFace(FaceId),
    ImproperIntersection(ProperIntersectionWitness),
    NotThreeConnected,
}

impl fmt::Display for NotPolyhedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotPolyhedral::NotSimpleGraph => write!(f, "graph has loops or multiple edges"),
            NotPolyhedral::NonSimpleFace(id) => write!(f, "face {id} repeats a vertex"),
            NotPolyhedral::ShortFace(id) => write!(f, "face {id} has fewer than three sides"),
            NotPolyhedral::ImproperIntersection(w) => {
                write!(f, "faces {} and {} meet improperly (", w.face_a, w.face_b)?;
                for (i, p) in w.components.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "vertices {:?}", p.vertices)?;
                    if !p.edges.is_empty() {
                        write!(f, " edges {:?}", p.edges)?;
                    }
                }
                write!(f, ")")
            }
            NotPolyhedral::NotThreeConnected => write!(f, "graph is not 3-connected"),
        }
    }
}

pub fn is_polyhedral(map: &SurfaceMap) -> std::result::Result<(), NotPolyhedral> {
    if !map.is_simple_graph() {
        return Err(NotPolyhedral::NotSimpleGraph);
    }
    for (i, f) in map.faces().iter().enumerate() {
        if !f.simple {
            return Err(NotPolyhedral::NonSimpleFace(i));
        }
        if f.len() < 3 {
            return Err(NotPolyhedral::ShortFace(i));
        }
    }
    faces_meet_properly(map).map_err(NotPolyhedral::ImproperIntersection)?;
    if !is_three_connected(map).unwrap_or(false) {
        return Err(NotPolyhedral::NotThreeConnected);
    }
    Ok(())
}

/// Largest integer connectivity allowed by `(5 + sqrt(49 - 24χ)) / 2`.
pub fn cook_bound(euler_char: i64) -> usize {
    let disc = 49 - 24 * euler_char;
    let mut k = 2usize;
    while (2 * (k as i64 + 1) - 5).pow(2) <= disc {
        k += 1;
    }
    k
}

/// Vertex connectivity against the ceiling for `χ <= 0`.
pub fn cook_bound_ok(map: &SurfaceMap) -> Result<bool> {
    let chi = map.euler_char();
    if chi > 0 {
        return Err(Error::SurfaceNotApplicable(chi));
    }
    Ok(vertex_connectivity(map) <= cook_bound(chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, icosahedron, k6_projective, k7_torus, tetrahedron, torus_grid};

    #[test]
    fn classic_maps_are_polyhedral() {
        for m in [tetrahedron(), cube(), icosahedron(), k6_projective(), k7_torus(), torus_grid(4, 4)] {
            assert_eq!(is_polyhedral(&m), Ok(()));
        }
    }

    #[test]
    fn intermediate_map_has_quads_sharing_opposite_corners() {
        let stages = crate::constructions::gamma_orientable_stages(2).unwrap();
        let (h2, lab) = (&stages.h2, &stages.spec.labels);
        let bad = improper_face_pairs(h2);
        assert!(matches!(is_polyhedral(h2), Err(NotPolyhedral::ImproperIntersection(_))));
        let mut shared: Vec<Vec<Vertex>> = bad
            .iter()
            .map(|w| {
                assert!(w.components.iter().all(|p| p.edges.is_empty() && p.vertices.len() == 1));
                w.components.iter().map(|p| p.vertices[0]).collect()
            })
            .collect();
        shared.sort();
        // quads pair up sharing i and g + i, or i' and (g + i)'
        let want: Vec<Vec<Vertex>> = vec![
            vec![lab["1"], lab["3"]],
            vec![lab["2"], lab["4"]],
            vec![lab["1'"], lab["3'"]],
            vec![lab["2'"], lab["4'"]],
        ];
        assert_eq!(shared, want);
        assert_eq!(is_polyhedral(&stages.gamma), Ok(()));
    }

    #[test]
    fn adjacent_faces_touch_once() {
        assert_eq!(face_touching_number(&cube()).0, 1);
    }

    #[test]
    fn ceiling_values() {
        assert_eq!(cook_bound(0), 6);
        assert_eq!(cook_bound(-2), 7);
        assert_eq!(cook_bound(-1), 6);
        assert!(cook_bound_ok(&k7_torus()).unwrap());
        assert_eq!(cook_bound_ok(&cube()), Err(Error::SurfaceNotApplicable(2)));
    }

    #[test]
    fn contracted_tetrahedron_is_not_simple() {
        let (m, _) = tetrahedron().contract_edge(0).unwrap();
        assert_eq!(is_polyhedral(&m), Err(NotPolyhedral::NotSimpleGraph));
        assert_eq!(is_three_connected(&m), Err(Error::NotSimpleGraph));
    }
}
