//! `(x, y)`-paths, internally disjoint path systems and revisit accounting.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface_map::{EdgeId, FaceId, SurfaceMap, Vertex};

/// A simple path given by its vertices and the edges joining them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct XYPath {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl XYPath {
    /// Path through `vertices`, using the lowest edge between consecutive ones.
    pub fn new(map: &SurfaceMap, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= map.vertex_count()) {
            return Err(Error::NoSuchVertex(v));
        }
        let distinct: BTreeSet<Vertex> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidPath(format!("repeated vertex in {vertices:?}")));
        }
        let edges = vertices
            .windows(2)
            .map(|w| {
                map.edge_between(w[0], w[1])
                    .ok_or_else(|| Error::InvalidPath(format!("{} and {} are not adjacent", w[0], w[1])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(XYPath { vertices, edges })
    }

    pub fn x(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn y(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn internal(&self) -> &[Vertex] {
        let k = self.vertices.len();
        if k <= 2 {
            &[]
        } else {
            &self.vertices[1..k - 1]
        }
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Sub-path between two positions, in path order.
    pub fn slice(&self, from: usize, to: usize) -> (Vec<Vertex>, Vec<EdgeId>) {
        (self.vertices[from..=to].to_vec(), self.edges[from..to].to_vec())
    }
}

/// A maximal run of consecutive path vertices on a face boundary, joined by
/// path edges that also lie on the boundary. Positions are inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Component {
    pub start: usize,
    pub end: usize,
}

impl Component {
    pub fn vertices<'a>(&self, path: &'a XYPath) -> &'a [Vertex] {
        &path.vertices[self.start..=self.end]
    }

    pub fn contains_position(&self, t: usize) -> bool {
        self.start <= t && t <= self.end
    }
}

/// Connected components of `F ∩ P`, in path order.
pub fn face_path_components(map: &SurfaceMap, path: &XYPath, face: FaceId) -> Vec<Component> {
    let f = map.face(face);
    let mut out: Vec<Component> = Vec::new();
    let mut open = false;
    for (t, &v) in path.vertices.iter().enumerate() {
        if !f.contains_vertex(v) {
            open = false;
            continue;
        }
        if open && f.contains_edge(path.edges[t - 1]) {
            out.last_mut().unwrap().end = t;
        } else {
            out.push(Component { start: t, end: t });
        }
        open = true;
    }
    out
}

/// Faces touched by the path, ascending.
pub fn touched_faces(map: &SurfaceMap, path: &XYPath) -> BTreeSet<FaceId> {
    path.vertices
        .iter()
        .flat_map(|&v| map.vertex_faces(v).iter().copied())
        .collect()
}

/// `r_P`: sum over faces of the component count minus one.
pub fn total_revisit_number(map: &SurfaceMap, path: &XYPath) -> usize {
    touched_faces(map, path)
        .into_iter()
        .map(|f| face_path_components(map, path, f).len() - 1)
        .sum()
}

pub fn is_wv_path(map: &SurfaceMap, path: &XYPath) -> bool {
    total_revisit_number(map, path) == 0
}

pub fn cofacial(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<bool> {
    check_pair(map, x, y)?;
    Ok(map.cofacial(x, y))
}

pub(crate) fn check_pair(map: &SurfaceMap, x: Vertex, y: Vertex) -> Result<()> {
    for v in [x, y] {
        if v >= map.vertex_count() {
            return Err(Error::NoSuchVertex(v));
        }
    }
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(())
}

/// Whether a revisit pair's dual curve is contractible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RevisitPair {
    pub i: usize,
    pub j: usize,
    pub contractible: bool,
}

/// One face revisited by one path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RevisitRecord {
    pub face: FaceId,
    pub path_index: usize,
    pub components: Vec<Component>,
    pub pairs: Vec<RevisitPair>,
}

/// Internally disjoint `(x, y)`-paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathSystem {
    pub x: Vertex,
    pub y: Vertex,
    pub paths: Vec<XYPath>,
}

impl PathSystem {
    pub fn new(map: &SurfaceMap, x: Vertex, y: Vertex, paths: Vec<XYPath>) -> Result<Self> {
        check_pair(map, x, y)?;
        let sys = PathSystem { x, y, paths };
        sys.validate()?;
        Ok(sys)
    }

    /// Endpoints match and paths share nothing but `x` and `y`.
    pub fn validate(&self) -> Result<()> {
        for (i, p) in self.paths.iter().enumerate() {
            if p.x() != self.x || p.y() != self.y {
                return Err(Error::InvalidPath(format!("path {i} does not join {} and {}", self.x, self.y)));
            }
        }
        let mut owner = std::collections::BTreeMap::new();
        for (i, p) in self.paths.iter().enumerate() {
            for &v in p.internal() {
                if let Some(j) = owner.insert(v, i) {
                    return Err(Error::PathsNotDisjoint(j, i));
                }
            }
        }
        let direct: Vec<usize> = (0..self.paths.len()).filter(|&i| self.paths[i].len() == 1).collect();
        if direct.len() > 1 {
            return Err(Error::PathsNotDisjoint(direct[0], direct[1]));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `r_𝒫`: the sum of the paths' total revisit numbers.
    pub fn total_revisit(&self, map: &SurfaceMap) -> usize {
        self.paths.iter().map(|p| total_revisit_number(map, p)).sum()
    }

    /// Internal vertices of all paths except `skip`.
    pub fn internal_vertices_except(&self, skip: usize) -> BTreeSet<Vertex> {
        self.paths
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .flat_map(|(_, p)| p.internal().iter().copied())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cube;

    #[test]
    fn components_split_on_non_boundary_edges() {
        let m = cube();
        // bottom face z = 0 is 0-1-3-2; the path 0-1-5-7-3 leaves it and comes back.
        let p = XYPath::new(&m, vec![0, 1, 5, 7, 3]).unwrap();
        let bottom = m
            .faces()
            .iter()
            .position(|f| f.boundary_vertices == [0, 1, 2, 3].into())
            .unwrap();
        let comps = face_path_components(&m, &p, bottom);
        assert_eq!(comps, vec![Component { start: 0, end: 1 }, Component { start: 4, end: 4 }]);
        assert!(total_revisit_number(&m, &p) >= 1);
    }

    #[test]
    fn single_edge_and_face_arc_do_not_revisit() {
        let m = cube();
        assert_eq!(total_revisit_number(&m, &XYPath::new(&m, vec![0, 1]).unwrap()), 0);
        assert_eq!(total_revisit_number(&m, &XYPath::new(&m, vec![0, 1, 3]).unwrap()), 0);
    }

    #[test]
    fn endpoint_alone_is_a_component() {
        let m = cube();
        let p = XYPath::new(&m, vec![0, 4, 6]).unwrap();
        let right = m
            .faces()
            .iter()
            .position(|f| f.boundary_vertices == [0, 1, 2, 3].into())
            .unwrap();
        assert_eq!(face_path_components(&m, &p, right), vec![Component { start: 0, end: 0 }]);
    }

    #[test]
    fn disjointness_is_enforced() {
        let m = cube();
        let a = XYPath::new(&m, vec![0, 1, 3, 7]).unwrap();
        let b = XYPath::new(&m, vec![0, 2, 3, 7]).unwrap();
        assert_eq!(PathSystem::new(&m, 0, 7, vec![a, b]), Err(Error::PathsNotDisjoint(0, 1)));
        assert_eq!(cofacial(&m, 0, 0), Err(Error::SameVertex(0)));
        assert!(!cofacial(&m, 0, 7).unwrap());
        assert!(cofacial(&m, 0, 3).unwrap());
    }
}
