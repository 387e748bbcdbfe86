//! Combinatorial maps with signed rotations.
//!
//! Edge `e` owns darts `2e` (at `ends[0]`) and `2e + 1` (at `ends[1]`).
//! Each vertex carries the cyclic sequence of its darts; together with the
//! edge signs this is an embedding scheme for orientable and non-orientable
//! surfaces alike.
//!
//! Face tracing convention: a walk carries an orientation flag. Leaving a
//! vertex along dart `d` with flag `f`, the walk arrives at `twin(d)`, the
//! flag becomes `f * sign(edge(d))`, and the next dart is the successor of
//! `twin(d)` in the rotation when the flag is `+` and its predecessor when
//! the flag is `-`. A face is one orbit of this step on (dart, flag) states;
//! its reverse orbit describes the same face and is not listed again.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type Dart = usize;
pub type FaceId = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub ends: [Vertex; 2],
    pub sign: Sign,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex, sign: Sign) -> Self {
        Edge { ends: [u, v], sign }
    }

    pub fn plus(u: Vertex, v: Vertex) -> Self {
        Edge::new(u, v, Sign::Plus)
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn other(&self, v: Vertex) -> Vertex {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// A closed dart walk bounding one face.
///
/// `flags[i]` is the orientation flag with which `darts[i]` is left, so the
/// corner at `vertices[i]` sits between `twin(darts[i - 1])` and `darts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
    pub flags: Vec<Sign>,
    pub vertices: Vec<Vertex>,
    pub boundary_vertices: BTreeSet<Vertex>,
    pub boundary_edges: BTreeSet<EdgeId>,
    pub simple: bool,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.boundary_vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.boundary_edges.contains(&e)
    }

    /// Position of `v` on the walk, if it occurs.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceMap {
    vertex_count: usize,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
    rot_next: Vec<Dart>,
    rot_prev: Vec<Dart>,
    faces: Vec<FaceWalk>,
    vertex_faces: Vec<Vec<FaceId>>,
    edge_faces: Vec<Vec<FaceId>>,
    euler_char: i64,
    orientable: bool,
}

impl PartialEq for SurfaceMap {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.rotation == other.rotation
    }
}

impl Eq for SurfaceMap {}

/// Old-to-new index maps produced by a surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    pub vertex_map: Vec<Vertex>,
    pub edge_map: Vec<Option<EdgeId>>,
}

impl SurfaceMap {
    /// Validates the rotation system and traces faces.
    pub fn build(vertex_count: usize, edges: Vec<Edge>, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::MalformedRotation("map has no vertices".into()));
        }
        if rotation.len() != vertex_count {
            return Err(Error::MalformedRotation(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                vertex_count
            )));
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.ends.iter().any(|&v| v >= vertex_count) {
                return Err(Error::BadEndpoint { edge: e, vertex_count });
            }
        }
        let dart_count = 2 * edges.len();
        let mut seen = vec![false; dart_count];
        let mut rot_next = vec![0; dart_count];
        let mut rot_prev = vec![0; dart_count];
        for (v, darts) in rotation.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                if d >= dart_count {
                    return Err(Error::MalformedRotation(format!("dart {d} does not exist")));
                }
                if seen[d] {
                    return Err(Error::MalformedRotation(format!("dart {d} listed twice")));
                }
                seen[d] = true;
                if edges[edge_of(d)].ends[d & 1] != v {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} listed at vertex {v} but originates at {}",
                        edges[edge_of(d)].ends[d & 1]
                    )));
                }
                let n = darts[(i + 1) % darts.len()];
                rot_next[d] = n;
                rot_prev[n] = d;
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedRotation(format!("dart {d} missing from rotation")));
        }

        let mut map = SurfaceMap {
            vertex_count,
            edges,
            rotation,
            rot_next,
            rot_prev,
            faces: Vec::new(),
            vertex_faces: Vec::new(),
            edge_faces: Vec::new(),
            euler_char: 0,
            orientable: true,
        };
        if !map.is_connected() {
            return Err(Error::Disconnected);
        }
        map.trace_faces();
        map.orientable = map.switching_signs().is_some();
        map.euler_char =
            map.vertex_count as i64 - map.edges.len() as i64 + map.faces.len() as i64;
        Ok(map)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn step(&self, d: Dart, flag: Sign) -> (Dart, Sign) {
        let t = twin(d);
        let f = flag * self.edges[edge_of(d)].sign;
        let n = if f.is_plus() { self.rot_next[t] } else { self.rot_prev[t] };
        (n, f)
    }

    fn trace_faces(&mut self) {
        let dart_count = 2 * self.edges.len();
        let state = |d: Dart, f: Sign| 2 * d + usize::from(!f.is_plus());
        let mut visited = vec![false; 2 * dart_count];
        let mut faces = Vec::new();
        if dart_count == 0 {
            faces.push(FaceWalk {
                darts: vec![],
                flags: vec![],
                vertices: vec![],
                boundary_vertices: BTreeSet::from([0]),
                boundary_edges: BTreeSet::new(),
                simple: true,
            });
        }
        for d0 in 0..dart_count {
            for f0 in [Sign::Plus, Sign::Minus] {
                if visited[state(d0, f0)] {
                    continue;
                }
                let mut darts = Vec::new();
                let mut flags = Vec::new();
                let (mut d, mut f) = (d0, f0);
                loop {
                    visited[state(d, f)] = true;
                    darts.push(d);
                    flags.push(f);
                    let (n, nf) = self.step(d, f);
                    d = n;
                    f = nf;
                    if d == d0 && f == f0 {
                        break;
                    }
                }
                // Mark the reverse orbit so the same face is not listed twice.
                for (&d, &f) in darts.iter().zip(&flags) {
                    let rf = f.flip() * self.edges[edge_of(d)].sign;
                    visited[state(twin(d), rf)] = true;
                }
                let vertices: Vec<Vertex> = darts.iter().map(|&d| self.origin(d)).collect();
                let boundary_vertices: BTreeSet<Vertex> = vertices.iter().copied().collect();
                let boundary_edges = darts.iter().map(|&d| edge_of(d)).collect();
                let simple = boundary_vertices.len() == vertices.len();
                faces.push(FaceWalk {
                    darts,
                    flags,
                    vertices,
                    boundary_vertices,
                    boundary_edges,
                    simple,
                });
            }
        }
        let mut vertex_faces = vec![Vec::new(); self.vertex_count];
        let mut edge_faces = vec![Vec::new(); self.edges.len()];
        for (fid, face) in faces.iter().enumerate() {
            for &v in &face.boundary_vertices {
                vertex_faces[v].push(fid);
            }
            for &d in &face.darts {
                edge_faces[edge_of(d)].push(fid);
            }
        }
        self.faces = faces;
        self.vertex_faces = vertex_faces;
        self.edge_faces = edge_faces;
    }

    /// Per-vertex switch values making every edge positive, if they exist.
    fn switching_signs(&self) -> Option<Vec<Sign>> {
        let mut switch: Vec<Option<Sign>> = vec![None; self.vertex_count];
        switch[0] = Some(Sign::Plus);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let sv = switch[v].unwrap();
            for &d in &self.rotation[v] {
                let e = &self.edges[edge_of(d)];
                let w = self.head(d);
                let want = sv * e.sign;
                match switch[w] {
                    None => {
                        switch[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(sw) if sw != want => return None,
                    Some(_) => {}
                }
            }
        }
        Some(switch.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        self.rot_next[d]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        self.rot_prev[d]
    }

    pub fn origin(&self, d: Dart) -> Vertex {
        self.edges[edge_of(d)].ends[d & 1]
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.origin(twin(d))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &FaceWalk {
        &self.faces[f]
    }

    /// Faces whose boundary contains `v`, ascending.
    pub fn vertex_faces(&self, v: Vertex) -> &[FaceId] {
        &self.vertex_faces[v]
    }

    /// The two face sides of edge `e` (equal if both sides lie on one face).
    pub fn edge_faces(&self, e: EdgeId) -> &[FaceId] {
        &self.edge_faces[e]
    }

    pub fn euler_char(&self) -> i64 {
        self.euler_char
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    /// Neighbours of `v` in rotation order (with multiplicity).
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rotation[v].iter().map(move |&d| self.head(d))
    }

    /// Lowest-numbered edge joining `u` and `v`.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.rotation[u]
            .iter()
            .filter(|&&d| self.head(d) == v)
            .map(|&d| edge_of(d))
            .min()
    }

    /// Dart of edge `e` that leaves `v`.
    pub fn dart_from(&self, e: EdgeId, v: Vertex) -> Dart {
        if self.edges[e].ends[0] == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    pub fn is_simple_graph(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let key = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
            !e.is_loop() && seen.insert(key)
        })
    }

    /// Some face boundary contains both vertices.
    pub fn cofacial(&self, x: Vertex, y: Vertex) -> bool {
        self.vertex_faces[x]
            .iter()
            .any(|f| self.faces[*f].contains_vertex(y))
    }

    /// Reverses the local orientation at `v`.
    pub fn switch_vertex(&self, v: Vertex) -> SurfaceMap {
        let mut switch = vec![Sign::Plus; self.vertex_count];
        switch[v] = Sign::Minus;
        self.apply_switching(&switch)
    }

    fn apply_switching(&self, switch: &[Sign]) -> SurfaceMap {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.ends[0], e.ends[1], e.sign * switch[e.ends[0]] * switch[e.ends[1]]))
            .collect();
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, r)| {
                if switch[v].is_plus() || r.is_empty() {
                    r.clone()
                } else {
                    let mut rev = vec![r[0]];
                    rev.extend(r[1..].iter().rev());
                    rev
                }
            })
            .collect();
        SurfaceMap::build(self.vertex_count, edges, rotation).expect("switching preserves validity")
    }

    /// Switch-equivalent map in which the edges of a spanning tree are
    /// positive. The tree is grown from the edges accepted by `prefer` first,
    /// then the rest, each group in edge order.
    pub fn normalize_signs(&self, prefer: impl Fn(EdgeId) -> bool) -> SurfaceMap {
        let mut order: Vec<EdgeId> = (0..self.edges.len()).filter(|&e| prefer(e)).collect();
        order.extend((0..self.edges.len()).filter(|&e| !prefer(e)));
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let mut tree: Vec<Vec<(Vertex, Sign)>> = vec![Vec::new(); self.vertex_count];
        for e in order {
            let [u, v] = self.edges[e].ends;
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                tree[u].push((v, self.edges[e].sign));
                tree[v].push((u, self.edges[e].sign));
            }
        }
        let mut switch = vec![None; self.vertex_count];
        switch[0] = Some(Sign::Plus);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            let sv = switch[v].unwrap();
            for &(w, s) in &tree[v] {
                if switch[w].is_none() {
                    switch[w] = Some(sv * s);
                    stack.push(w);
                }
            }
        }
        let switch: Vec<Sign> = switch.into_iter().map(|s| s.unwrap()).collect();
        self.apply_switching(&switch)
    }

    /// Splits face `face` by a new edge between the corners at walk
    /// positions `u_pos` and `v_pos`. The new edge gets the last edge id and
    /// the sign that keeps both corners on the same side; on an all-positive
    /// map that sign is `+`.
    pub fn insert_chord(&self, face: FaceId, u_pos: usize, v_pos: usize) -> Result<(SurfaceMap, EdgeId)> {
        let walk = self.faces.get(face).ok_or(Error::NoSuchFace(face))?;
        let len = walk.len();
        for pos in [u_pos, v_pos] {
            if pos >= len {
                return Err(Error::VertexNotOnFace { face, vertex: usize::MAX });
            }
        }
        let (u, v) = (walk.vertices[u_pos], walk.vertices[v_pos]);
        if u == v {
            return Err(Error::VertexNotOnFace { face, vertex: v });
        }
        let anchor = |pos: usize| {
            let arriving = twin(walk.darts[(pos + len - 1) % len]);
            if walk.flags[pos].is_plus() {
                arriving
            } else {
                walk.darts[pos]
            }
        };
        let (au, av) = (anchor(u_pos), anchor(v_pos));
        let e = self.edges.len();
        let mut edges = self.edges.clone();
        edges.push(Edge::new(u, v, walk.flags[u_pos] * walk.flags[v_pos]));
        let mut rotation = self.rotation.clone();
        for (w, a, d) in [(u, au, 2 * e), (v, av, 2 * e + 1)] {
            let i = rotation[w].iter().position(|&x| x == a).expect("anchor lies at its vertex");
            rotation[w].insert(i + 1, d);
        }
        Ok((SurfaceMap::build(self.vertex_count, edges, rotation)?, e))
    }

    /// Inserts a chord in `face` between vertices `u` and `v`.
    pub fn insert_chord_between(&self, face: FaceId, u: Vertex, v: Vertex) -> Result<(SurfaceMap, EdgeId)> {
        let walk = self.faces.get(face).ok_or(Error::NoSuchFace(face))?;
        if u == v {
            return Err(Error::VertexNotOnFace { face, vertex: v });
        }
        let up = walk.position(u).ok_or(Error::VertexNotOnFace { face, vertex: u })?;
        let vp = walk.position(v).ok_or(Error::VertexNotOnFace { face, vertex: v })?;
        self.insert_chord(face, up, vp)
    }

    /// Removes edge `e`; later edge ids shift down by one.
    pub fn delete_edge(&self, e: EdgeId) -> Result<SurfaceMap> {
        if e >= self.edges.len() {
            return Err(Error::NoSuchEdge(e));
        }
        let mut edges = self.edges.clone();
        edges.remove(e);
        let remap = |d: Dart| if edge_of(d) > e { d - 2 } else { d };
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().filter(|&&d| edge_of(d) != e).map(|&d| remap(d)).collect())
            .collect();
        SurfaceMap::build(self.vertex_count, edges, rotation)
    }

    /// Contracts non-loop edge `e`. The merged vertex keeps the smaller id.
    pub fn contract_edge(&self, e: EdgeId) -> Result<(SurfaceMap, Relabel)> {
        let edge = *self.edges.get(e).ok_or(Error::NoSuchEdge(e))?;
        if edge.is_loop() {
            return Err(Error::LoopContraction(e));
        }
        let base = if edge.sign.is_plus() {
            self.clone()
        } else {
            self.switch_vertex(edge.ends[1])
        };
        let [u, v] = edge.ends;
        let after = |w: Vertex, d: Dart| -> Vec<Dart> {
            let r = &base.rotation[w];
            let i = r.iter().position(|&x| x == d).unwrap();
            (1..r.len()).map(|k| r[(i + k) % r.len()]).collect()
        };
        let mut merged = after(u, 2 * e);
        merged.extend(after(v, 2 * e + 1));

        let (keep, gone) = (u.min(v), u.max(v));
        let vertex_map: Vec<Vertex> = (0..self.vertex_count)
            .map(|w| {
                let w = if w == gone { keep } else { w };
                if w > gone {
                    w - 1
                } else {
                    w
                }
            })
            .collect();
        let edge_map: Vec<Option<EdgeId>> = (0..self.edges.len())
            .map(|f| match f.cmp(&e) {
                std::cmp::Ordering::Less => Some(f),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(f - 1),
            })
            .collect();
        let remap = |d: Dart| if edge_of(d) > e { d - 2 } else { d };
        let edges = base
            .edges
            .iter()
            .enumerate()
            .filter(|(f, _)| *f != e)
            .map(|(_, ed)| Edge::new(vertex_map[ed.ends[0]], vertex_map[ed.ends[1]], ed.sign))
            .collect();
        let mut rotation = vec![Vec::new(); self.vertex_count - 1];
        for w in 0..self.vertex_count {
            if w == u || w == v {
                continue;
            }
            rotation[vertex_map[w]] = base.rotation[w].iter().map(|&d| remap(d)).collect();
        }
        rotation[vertex_map[keep]] = merged.into_iter().map(remap).collect();
        let map = SurfaceMap::build(self.vertex_count - 1, edges, rotation)?;
        Ok((map, Relabel { vertex_map, edge_map }))
    }

    /// Builds a map from consistently oriented face cycles of a simple graph.
    /// Every directed edge must occur in exactly one face.
    pub fn from_oriented_faces(vertex_count: usize, faces: &[Vec<Vertex>]) -> Result<SurfaceMap> {
        let (edges, index) = collect_edges(faces)?;
        let dart = |a: Vertex, b: Vertex| -> Dart {
            let e = index[&(a.min(b), a.max(b))];
            if edges[e].ends[0] == a {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let mut next: BTreeMap<Dart, Dart> = BTreeMap::new();
        let mut used = BTreeSet::new();
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (a, b, c) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                if !used.insert(dart(a, b)) {
                    return Err(Error::BadFaceList(format!("directed edge {a}->{b} used twice")));
                }
                // Arriving at b from a, the face leaves along b->c.
                next.insert(dart(b, a), dart(b, c));
            }
        }
        if used.len() != 2 * edges.len() {
            return Err(Error::BadFaceList("some directed edge lies on no face".into()));
        }
        let mut rotation = vec![Vec::new(); vertex_count];
        let mut by_vertex: Vec<Vec<Dart>> = vec![Vec::new(); vertex_count];
        for d in 0..2 * edges.len() {
            by_vertex[edges[edge_of(d)].ends[d & 1]].push(d);
        }
        for v in 0..vertex_count {
            let Some(&start) = by_vertex[v].first() else { continue };
            let mut d = start;
            loop {
                rotation[v].push(d);
                d = next[&d];
                if d == start {
                    break;
                }
            }
            if rotation[v].len() != by_vertex[v].len() {
                return Err(Error::BadFaceList(format!("faces around vertex {v} do not form a disk")));
            }
        }
        SurfaceMap::build(vertex_count, edges, rotation)
    }

    /// Builds a signed embedding scheme from unoriented simple face cycles of
    /// a simple graph, each edge lying on exactly two distinct faces. The
    /// traced faces are checked against the input.
    pub fn from_faces(vertex_count: usize, faces: &[Vec<Vertex>]) -> Result<SurfaceMap> {
        let (edges, index) = collect_edges(faces)?;
        let eid = |a: Vertex, b: Vertex| index[&(a.min(b), a.max(b))];
        // corners[v]: (face, edge, edge) for each corner of a face at v
        let mut corners: Vec<Vec<(usize, EdgeId, EdgeId)>> = vec![Vec::new(); vertex_count];
        let mut uses = vec![0usize; edges.len()];
        for (fi, face) in faces.iter().enumerate() {
            let k = face.len();
            if face.iter().collect::<BTreeSet<_>>().len() != k || k < 3 {
                return Err(Error::BadFaceList(format!("face {fi} is not a simple cycle")));
            }
            for i in 0..k {
                let (p, v, q) = (face[(i + k - 1) % k], face[i], face[(i + 1) % k]);
                corners[v].push((fi, eid(v, p), eid(v, q)));
                uses[eid(v, q)] += 1;
            }
        }
        if let Some(e) = uses.iter().position(|&u| u != 2) {
            return Err(Error::BadFaceList(format!("edge {e} lies on {} faces", uses[e])));
        }
        let dart_at = |e: EdgeId, v: Vertex| if edges[e].ends[0] == v { 2 * e } else { 2 * e + 1 };
        let mut rotation = vec![Vec::new(); vertex_count];
        // face in the corner following each dart in rotation order
        let mut after: BTreeMap<Dart, usize> = BTreeMap::new();
        for v in 0..vertex_count {
            let cs = &corners[v];
            if cs.is_empty() {
                continue;
            }
            let start = cs.iter().map(|c| c.1.min(c.2)).min().unwrap();
            let mut cur = start;
            let mut used = vec![false; cs.len()];
            // Walk the link; among the two corners at the start edge take the
            // one whose far edge is smaller.
            loop {
                rotation[v].push(dart_at(cur, v));
                let pick = cs
                    .iter()
                    .enumerate()
                    .filter(|(i, c)| !used[*i] && (c.1 == cur || c.2 == cur))
                    .min_by_key(|(_, c)| if c.1 == cur { c.2 } else { c.1 });
                let Some((i, c)) = pick else { break };
                used[i] = true;
                after.insert(dart_at(cur, v), c.0);
                cur = if c.1 == cur { c.2 } else { c.1 };
                if cur == start {
                    break;
                }
            }
            if used.iter().any(|u| !u) || rotation[v].len() != cs.len() {
                return Err(Error::BadFaceList(format!("faces around vertex {v} do not form a disk")));
            }
        }
        let edges: Vec<Edge> = edges
            .iter()
            .enumerate()
            .map(|(e, ed)| {
                let sign = if after[&(2 * e)] != after[&(2 * e + 1)] { Sign::Plus } else { Sign::Minus };
                Edge::new(ed.ends[0], ed.ends[1], sign)
            })
            .collect();
        let map = SurfaceMap::build(vertex_count, edges, rotation)?;
        let want: BTreeSet<Vec<Vertex>> = faces.iter().map(|f| cyclic_key(f)).collect();
        let got: BTreeSet<Vec<Vertex>> = map.faces.iter().map(|f| cyclic_key(&f.vertices)).collect();
        if want != got || map.face_count() != faces.len() {
            return Err(Error::BadFaceList("traced faces differ from the given faces".into()));
        }
        Ok(map)
    }

    /// Isomorphism-invariant code, up to relabelling, switching and mirror
    /// image. Two connected maps are isomorphic iff their codes agree.
    pub fn canonical_form(&self) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for d0 in 0..self.dart_count() {
            for o0 in [Sign::Plus, Sign::Minus] {
                let code = self.code_from(d0, o0);
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_else(|| vec![self.vertex_count])
    }

    fn code_from(&self, d0: Dart, o0: Sign) -> Vec<usize> {
        let n = self.vertex_count;
        let mut label = vec![usize::MAX; n];
        let mut seq: Vec<Vec<Dart>> = vec![Vec::new(); n];
        let mut orient = vec![Sign::Plus; n];
        let mut order = Vec::with_capacity(n);
        let ordered = |start: Dart, o: Sign| -> Vec<Dart> {
            let mut out = vec![start];
            let mut d = start;
            loop {
                d = if o.is_plus() { self.rot_next[d] } else { self.rot_prev[d] };
                if d == start {
                    break;
                }
                out.push(d);
            }
            out
        };
        let v0 = self.origin(d0);
        label[v0] = 0;
        orient[v0] = o0;
        seq[v0] = ordered(d0, o0);
        order.push(v0);
        let mut qi = 0;
        while qi < order.len() {
            let v = order[qi];
            qi += 1;
            for i in 0..seq[v].len() {
                let d = seq[v][i];
                let w = self.head(d);
                if label[w] == usize::MAX {
                    label[w] = order.len();
                    orient[w] = orient[v] * self.edges[edge_of(d)].sign;
                    seq[w] = ordered(twin(d), orient[w]);
                    order.push(w);
                }
            }
        }
        let mut code = vec![n, self.edges.len()];
        for &v in &order {
            code.push(seq[v].len());
            for &d in &seq[v] {
                let w = self.head(d);
                let rel = orient[v] * self.edges[edge_of(d)].sign * orient[w];
                let pos = seq[w].iter().position(|&x| x == twin(d)).unwrap();
                code.extend([label[w], usize::from(!rel.is_plus()), pos]);
            }
        }
        code
    }
}

fn collect_edges(faces: &[Vec<Vertex>]) -> Result<(Vec<Edge>, BTreeMap<(Vertex, Vertex), EdgeId>)> {
    let mut edges = Vec::new();
    let mut index = BTreeMap::new();
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let (a, b) = (face[i], face[(i + 1) % k]);
            if a == b {
                return Err(Error::BadFaceList(format!("loop at {a}")));
            }
            index.entry((a.min(b), a.max(b))).or_insert_with(|| {
                edges.push(Edge::plus(a.min(b), a.max(b)));
                edges.len() - 1
            });
        }
    }
    Ok((edges, index))
}

/// Rotation- and reflection-normalised vertex sequence of a cyclic walk.
pub fn cyclic_key(cycle: &[Vertex]) -> Vec<Vertex> {
    let k = cycle.len();
    let mut best: Option<Vec<Vertex>> = None;
    for s in 0..k {
        for dir in [1isize, -1] {
            let cand: Vec<Vertex> = (0..k as isize)
                .map(|i| cycle[((s as isize + dir * i).rem_euclid(k as isize)) as usize])
                .collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, k6_projective, octahedron, tetrahedron};

    #[test]
    fn tetrahedron_is_a_sphere() {
        let m = tetrahedron();
        assert_eq!(m.face_count(), 4);
        assert_eq!(m.euler_char(), 2);
        assert!(m.orientable());
    }

    #[test]
    fn cube_faces_are_simple_squares() {
        let m = cube();
        assert_eq!(m.face_count(), 6);
        assert_eq!(m.euler_char(), 2);
        assert!(m.faces().iter().all(|f| f.simple && f.len() == 4));
    }

    #[test]
    fn k6_on_the_projective_plane() {
        let m = k6_projective();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (6, 15, 10));
        assert_eq!(m.euler_char(), 1);
        assert!(!m.orientable());
        assert!(m.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn malformed_rotations_are_rejected() {
        let edges = vec![Edge::plus(0, 1)];
        assert!(matches!(
            SurfaceMap::build(2, edges.clone(), vec![vec![0], vec![]]),
            Err(Error::MalformedRotation(_))
        ));
        assert!(matches!(
            SurfaceMap::build(2, edges.clone(), vec![vec![0, 0], vec![1]]),
            Err(Error::MalformedRotation(_))
        ));
        assert!(matches!(
            SurfaceMap::build(2, edges, vec![vec![1], vec![0]]),
            Err(Error::MalformedRotation(_))
        ));
        assert!(matches!(
            SurfaceMap::build(2, vec![Edge::plus(0, 2)], vec![vec![0], vec![1]]),
            Err(Error::BadEndpoint { edge: 0, .. })
        ));
    }

    #[test]
    fn loops_and_multi_edges_are_accepted() {
        // one vertex with a positive loop: two faces on the sphere
        let m = SurfaceMap::build(1, vec![Edge::plus(0, 0)], vec![vec![0, 1]]).unwrap();
        assert_eq!(m.euler_char(), 2);
        // one vertex with a negative loop: the projective plane
        let m = SurfaceMap::build(1, vec![Edge::new(0, 0, Sign::Minus)], vec![vec![0, 1]]).unwrap();
        assert_eq!(m.euler_char(), 1);
        assert!(!m.orientable());
        // a digon
        let m = SurfaceMap::build(2, vec![Edge::plus(0, 1), Edge::plus(0, 1)], vec![vec![0, 2], vec![1, 3]])
            .unwrap();
        assert_eq!(m.face_count(), 2);
    }

    #[test]
    fn chord_across_cube_square() {
        let m = cube();
        let f = &m.faces()[0];
        let (a, c) = (f.vertices[0], f.vertices[2]);
        let (m2, e) = m.insert_chord_between(0, a, c).unwrap();
        assert_eq!((m2.edge_count(), m2.face_count(), m2.euler_char()), (13, 7, 2));
        assert_eq!(m2.edge(e).sign, Sign::Plus);
        assert_eq!(m2.delete_edge(e).unwrap(), m);
        assert_eq!(m2.delete_edge(e).unwrap().canonical_form(), m.canonical_form());
    }

    #[test]
    fn chord_with_equal_ends_is_rejected() {
        let m = cube();
        let v = m.faces()[0].vertices[0];
        assert!(matches!(m.insert_chord_between(0, v, v), Err(Error::VertexNotOnFace { .. })));
        let off = (0..8).find(|w| !m.faces()[0].contains_vertex(*w)).unwrap();
        assert!(matches!(m.insert_chord_between(0, v, off), Err(Error::VertexNotOnFace { .. })));
    }

    #[test]
    fn chords_in_nonorientable_faces_split_them() {
        let m = k6_projective();
        for f in 0..m.face_count() {
            // triangles: chords parallel to an edge give digons
            let (m2, _) = m.insert_chord(f, 0, 1).unwrap();
            assert_eq!(m2.face_count(), m.face_count() + 1);
            assert_eq!(m2.euler_char(), 1);
        }
    }

    #[test]
    fn contracting_a_tetrahedron_edge() {
        let m = tetrahedron();
        let (c, relabel) = m.contract_edge(0).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count(), c.euler_char()), (3, 5, 2));
        assert!(!c.is_simple_graph());
        assert_eq!(relabel.edge_map[0], None);
    }

    #[test]
    fn contracting_a_negative_edge_keeps_euler_char() {
        let m = k6_projective();
        for e in 0..m.edge_count() {
            let (c, _) = m.contract_edge(e).unwrap();
            assert_eq!(c.euler_char(), 1, "edge {e}");
            assert!(!c.orientable());
        }
    }

    #[test]
    fn loop_contraction_is_rejected() {
        let m = SurfaceMap::build(1, vec![Edge::plus(0, 0)], vec![vec![0, 1]]).unwrap();
        assert_eq!(m.contract_edge(0).unwrap_err(), Error::LoopContraction(0));
    }

    #[test]
    fn switching_preserves_faces_and_orientability() {
        let m = k6_projective();
        for v in 0..6 {
            let s = m.switch_vertex(v);
            assert_eq!(s.face_count(), m.face_count());
            assert_eq!(s.canonical_form(), m.canonical_form());
        }
        let o = octahedron().switch_vertex(2).switch_vertex(4);
        assert!(o.orientable());
        assert!(o.edges().iter().any(|e| !e.sign.is_plus()));
        assert!(o.normalize_signs(|_| true).edges().iter().all(|e| e.sign.is_plus()));
    }

    #[test]
    fn canonical_form_separates_non_isomorphic_maps() {
        assert_ne!(cube().canonical_form(), octahedron().canonical_form());
        assert_ne!(tetrahedron().canonical_form(), k6_projective().delete_edge(0).unwrap().canonical_form());
    }
}
