//! Cutting a map along a simple cycle and deciding contractibility.
//!
//! Cutting duplicates the cycle. The bordered pieces are stored as closed
//! maps in which every boundary circle is capped by one extra face, so the
//! bordered Euler characteristic of a piece is its capped value minus its
//! number of boundary circles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::surface_map::{edge_of, twin, Dart, Edge, EdgeId, Sign, SurfaceMap, Vertex};

/// A closed dart walk `d_0 .. d_{k-1}` with `head(d_i) = origin(d_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartCycle(pub Vec<Dart>);

impl DartCycle {
    /// Cycle through `vertices` in order, closing back to the first one,
    /// using the lowest edge between consecutive vertices.
    pub fn from_vertices(map: &SurfaceMap, vertices: &[Vertex]) -> Result<Self> {
        let k = vertices.len();
        let mut darts = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            let e = map
                .edge_between(a, b)
                .ok_or_else(|| Error::NotSimpleCycle(format!("{a} and {b} are not adjacent")))?;
            darts.push(map.dart_from(e, a));
        }
        let cycle = DartCycle(darts);
        cycle.validate(map)?;
        Ok(cycle)
    }

    /// Cycle along explicit edges: `edges[i]` joins `vertices[i]` to the next vertex.
    pub fn from_walk(map: &SurfaceMap, vertices: &[Vertex], edges: &[EdgeId]) -> Result<Self> {
        if vertices.len() != edges.len() {
            return Err(Error::NotSimpleCycle("vertex and edge counts differ".into()));
        }
        let darts = vertices
            .iter()
            .zip(edges)
            .map(|(&v, &e)| {
                if e >= map.edge_count() || !map.edge(e).ends.contains(&v) {
                    Err(Error::NotSimpleCycle(format!("edge {e} does not leave {v}")))
                } else {
                    Ok(map.dart_from(e, v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let cycle = DartCycle(darts);
        cycle.validate(map)?;
        Ok(cycle)
    }

    pub fn vertices(&self, map: &SurfaceMap) -> Vec<Vertex> {
        self.0.iter().map(|&d| map.origin(d)).collect()
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.0.iter().map(|&d| edge_of(d)).collect()
    }

    pub fn validate(&self, map: &SurfaceMap) -> Result<()> {
        let k = self.0.len();
        if k == 0 {
            return Err(Error::NotSimpleCycle("empty cycle".into()));
        }
        if self.0.iter().any(|&d| d >= map.dart_count()) {
            return Err(Error::NotSimpleCycle("dart out of range".into()));
        }
        for i in 0..k {
            if map.head(self.0[i]) != map.origin(self.0[(i + 1) % k]) {
                return Err(Error::NotSimpleCycle(format!("darts {i} and {} do not chain", (i + 1) % k)));
            }
        }
        let vs: BTreeSet<Vertex> = self.vertices(map).into_iter().collect();
        let es: BTreeSet<EdgeId> = self.edges().into_iter().collect();
        if vs.len() != k || es.len() != k {
            return Err(Error::NotSimpleCycle("repeated vertex or edge".into()));
        }
        Ok(())
    }
}

/// One piece of a cut surface.
#[derive(Clone, Debug)]
pub struct CutComponent {
    /// The piece with its boundary circles capped.
    pub map: SurfaceMap,
    /// Original vertex of each vertex of `map`.
    pub vertex_origin: Vec<Vertex>,
    /// Original edge of each edge of `map`; both copies of a cycle edge map
    /// to the same original.
    pub edge_origin: Vec<EdgeId>,
    pub boundary_circles: usize,
    pub euler_char: i64,
}

impl CutComponent {
    pub fn is_disk(&self) -> bool {
        self.euler_char == 1 && self.boundary_circles == 1
    }

    pub fn original_vertices(&self) -> BTreeSet<Vertex> {
        self.vertex_origin.iter().copied().collect()
    }

    pub fn contains_original_edge(&self, e: EdgeId) -> bool {
        self.edge_origin.contains(&e)
    }
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub components: Vec<CutComponent>,
    pub separating: bool,
    /// The cycle preserves local orientation (false for one-sided curves).
    pub two_sided: bool,
}

impl CutResult {
    pub fn total_euler_char(&self) -> i64 {
        self.components.iter().map(|c| c.euler_char).sum()
    }

    /// Indices of the pieces that are disks.
    pub fn disk_sides(&self) -> Vec<usize> {
        if !self.separating {
            return vec![];
        }
        (0..self.components.len()).filter(|&i| self.components[i].is_disk()).collect()
    }
}

pub fn cut_along_cycle(map: &SurfaceMap, cycle: &DartCycle) -> Result<CutResult> {
    cycle.validate(map)?;
    let k = cycle.0.len();
    let cyc = &cycle.0;
    let verts = cycle.vertices(map);

    // Switch so that every cycle edge but the closing one is positive.
    let mut m = map.clone();
    let mut flag = Sign::Plus;
    for i in 1..k {
        flag = flag * map.edge(edge_of(cyc[i - 1])).sign;
        if !flag.is_plus() {
            m = m.switch_vertex(verts[i]);
        }
    }
    let closing = m.edge(edge_of(cyc[k - 1])).sign;
    let two_sided = closing.is_plus();

    let n = m.vertex_count();
    let e0 = m.edge_count();
    let b_copy = |i: usize| n + i;
    let mut on_cycle = vec![None; n];
    for (i, &v) in verts.iter().enumerate() {
        on_cycle[v] = Some(i);
    }

    // Side of every dart at a cycle vertex: false = A (the original vertex), true = B.
    let mut dart_side = vec![false; m.dart_count()];
    let mut rot_a: Vec<Vec<Dart>> = vec![Vec::new(); k];
    let mut rot_b: Vec<Vec<Dart>> = vec![Vec::new(); k];
    for i in 0..k {
        let v = verts[i];
        let out = cyc[i];
        let inc = twin(cyc[(i + k - 1) % k]);
        let r = m.rotation(v);
        let start = r.iter().position(|&d| d == out).unwrap();
        let mut side_b = false;
        let mut a_arc = Vec::new();
        let mut b_arc = Vec::new();
        for s in 1..r.len() {
            let d = r[(start + s) % r.len()];
            if d == inc {
                side_b = true;
                continue;
            }
            dart_side[d] = side_b;
            if side_b {
                b_arc.push(d);
            } else {
                a_arc.push(d);
            }
        }
        rot_a[i] = a_arc;
        rot_b[i] = b_arc;
    }

    let mut edges: Vec<Edge> = Vec::with_capacity(e0 + k);
    for (e, ed) in m.edges().iter().enumerate() {
        let end = |j: usize| {
            let v = ed.ends[j];
            match on_cycle[v] {
                Some(i) if dart_side[2 * e + j] => b_copy(i),
                _ => v,
            }
        };
        edges.push(Edge::new(end(0), end(1), ed.sign));
    }
    // The original cycle edge i stays on side A except where the closing edge
    // of a one-sided cycle swaps sides.
    let mut copy_edge = vec![0; k];
    for i in 0..k {
        let d = cyc[i];
        let e = edge_of(d);
        let j = (i + 1) % k;
        let swap = !two_sided && i == k - 1;
        let (a_from, a_to) = (verts[i], if swap { b_copy(j) } else { verts[j] });
        let (b_from, b_to) = (b_copy(i), if swap { verts[j] } else { b_copy(j) });
        let sign = if swap { Sign::Minus } else { Sign::Plus };
        let mut a_ends = [0; 2];
        a_ends[d & 1] = a_from;
        a_ends[(d & 1) ^ 1] = a_to;
        edges[e] = Edge::new(a_ends[0], a_ends[1], sign);
        let mut b_ends = [0; 2];
        b_ends[d & 1] = b_from;
        b_ends[(d & 1) ^ 1] = b_to;
        copy_edge[i] = edges.len();
        edges.push(Edge::new(b_ends[0], b_ends[1], sign));
    }
    let copy_dart = |d: Dart, i: usize| 2 * copy_edge[i] + (d & 1);
    let copy_twin = |d: Dart, i: usize| 2 * copy_edge[i] + ((d & 1) ^ 1);

    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); n + k];
    for v in 0..n {
        if on_cycle[v].is_none() {
            rotation[v] = m.rotation(v).to_vec();
        }
    }
    for i in 0..k {
        let v = verts[i];
        let p = (i + k - 1) % k;
        let out = cyc[i];
        let inc = twin(cyc[p]);
        let mut ra = vec![out];
        ra.extend(&rot_a[i]);
        // One-sided: the closing edge reaches v_0 on the opposite side.
        let swap_in = !two_sided && i == 0;
        let in_a = if swap_in { copy_twin(cyc[p], p) } else { inc };
        let in_b = if swap_in { inc } else { copy_twin(cyc[p], p) };
        ra.push(in_a);
        let mut rb = vec![in_b];
        rb.extend(&rot_b[i]);
        rb.push(copy_dart(out, i));
        rotation[v] = ra;
        rotation[b_copy(i)] = rb;
    }

    // Split into connected pieces.
    let total = n + k;
    let mut comp = vec![usize::MAX; total];
    let mut pieces: Vec<Vec<Vertex>> = Vec::new();
    for s in 0..total {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = pieces.len();
        let mut stack = vec![s];
        comp[s] = c;
        let mut members = vec![];
        while let Some(v) = stack.pop() {
            members.push(v);
            for &d in &rotation[v] {
                let ed = &edges[edge_of(d)];
                let w = ed.ends[(d & 1) ^ 1];
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        pieces.push(members);
    }

    let origin = |v: Vertex| if v < n { v } else { verts[v - n] };
    let edge_origin_of = |e: EdgeId| if e < e0 { e } else { edge_of(cyc[copy_edge.iter().position(|&c| c == e).unwrap()]) };
    let mut components = Vec::with_capacity(pieces.len());
    for (c, members) in pieces.iter().enumerate() {
        let mut new_id = vec![usize::MAX; total];
        for (i, &v) in members.iter().enumerate() {
            new_id[v] = i;
        }
        let piece_edges: Vec<EdgeId> = (0..edges.len()).filter(|&e| comp[edges[e].ends[0]] == c).collect();
        let mut new_edge = vec![usize::MAX; edges.len()];
        for (i, &e) in piece_edges.iter().enumerate() {
            new_edge[e] = i;
        }
        let p_edges = piece_edges
            .iter()
            .map(|&e| Edge::new(new_id[edges[e].ends[0]], new_id[edges[e].ends[1]], edges[e].sign))
            .collect();
        let p_rot = members
            .iter()
            .map(|&v| rotation[v].iter().map(|&d| 2 * new_edge[edge_of(d)] + (d & 1)).collect())
            .collect();
        let pmap = SurfaceMap::build(members.len(), p_edges, p_rot)?;
        let circles = if two_sided {
            usize::from(comp[verts[0]] == c) + usize::from(comp[b_copy(0)] == c)
        } else {
            usize::from(comp[verts[0]] == c)
        };
        components.push(CutComponent {
            euler_char: pmap.euler_char() - circles as i64,
            map: pmap,
            vertex_origin: members.iter().map(|&v| origin(v)).collect(),
            edge_origin: piece_edges.iter().map(|&e| edge_origin_of(e)).collect(),
            boundary_circles: circles,
        });
    }
    let separating = components.len() == 2;
    Ok(CutResult { components, separating, two_sided })
}

/// A simple cycle is contractible iff cutting along it separates the
/// surface and one side is a disk.
pub fn is_contractible(map: &SurfaceMap, cycle: &DartCycle) -> Result<bool> {
    let cut = cut_along_cycle(map, cycle)?;
    Ok(!cut.disk_sides().is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k6_projective, octahedron, torus_grid};

    #[test]
    fn octahedron_equator_separates_into_disks() {
        let m = octahedron();
        // vertices 0 and 5 are the poles
        let c = DartCycle::from_vertices(&m, &[1, 2, 3, 4]).unwrap();
        let cut = cut_along_cycle(&m, &c).unwrap();
        assert!(cut.separating && cut.two_sided);
        assert_eq!(cut.components.len(), 2);
        assert!(cut.components.iter().all(|c| c.euler_char == 1 && c.boundary_circles == 1));
        assert_eq!(cut.total_euler_char(), 2);
        assert!(is_contractible(&m, &c).unwrap());
    }

    #[test]
    fn torus_meridian_does_not_separate() {
        let m = torus_grid(3, 3);
        // row 0 of the grid: vertices 0, 1, 2
        let c = DartCycle::from_vertices(&m, &[0, 1, 2]).unwrap();
        let cut = cut_along_cycle(&m, &c).unwrap();
        assert!(!cut.separating);
        assert_eq!(cut.components.len(), 1);
        assert_eq!(cut.components[0].euler_char, 0);
        assert_eq!(cut.components[0].boundary_circles, 2);
        assert!(!is_contractible(&m, &c).unwrap());
    }

    #[test]
    fn face_boundaries_are_contractible() {
        for m in [octahedron(), torus_grid(3, 3), k6_projective()] {
            for f in m.faces() {
                let c = DartCycle(f.darts.clone());
                assert!(is_contractible(&m, &c).unwrap());
            }
        }
    }

    #[test]
    fn one_sided_cycle_on_the_projective_plane() {
        let m = k6_projective();
        // 1-2-3 is a triangle but not a face
        let c = DartCycle::from_vertices(&m, &[1, 2, 3]).unwrap();
        let cut = cut_along_cycle(&m, &c).unwrap();
        assert!(!cut.two_sided);
        assert_eq!(cut.components.len(), 1);
        assert_eq!(cut.components[0].boundary_circles, 1);
        assert_eq!(cut.total_euler_char(), 1);
        assert_eq!(cut.components[0].map.face_count(), m.face_count() + 1);
        assert!(!is_contractible(&m, &c).unwrap());
    }

    #[test]
    fn repeated_vertex_is_not_simple() {
        let m = octahedron();
        assert!(matches!(
            DartCycle::from_vertices(&m, &[1, 2, 1, 2]),
            Err(Error::NotSimpleCycle(_))
        ));
    }
}
