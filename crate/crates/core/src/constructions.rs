//! Fixture generators: Platonic solids and friends, small maps on the
//! projective plane and the torus, and the counterexample maps `Γ` whose
//! vertices `x` and `y` have local connectivity `2 - χ` but no
//! non-revisiting path between them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface_map::{FaceId, SurfaceMap, Vertex};

fn sphere(vertex_count: usize, faces: &[Vec<Vertex>]) -> SurfaceMap {
    SurfaceMap::from_faces(vertex_count, faces)
        .expect("fixture faces are valid")
        .normalize_signs(|_| true)
}

pub fn tetrahedron() -> SurfaceMap {
    sphere(4, &[vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]])
}

/// Vertex `v` has coordinates given by its bits (x = bit 0, y = bit 1, z = bit 2).
pub fn cube() -> SurfaceMap {
    sphere(
        8,
        &[
            vec![0, 2, 6, 4],
            vec![1, 5, 7, 3],
            vec![0, 4, 5, 1],
            vec![2, 3, 7, 6],
            vec![0, 1, 3, 2],
            vec![4, 6, 7, 5],
        ],
    )
}

/// Poles 0 and 5, equator 1-2-3-4.
pub fn octahedron() -> SurfaceMap {
    let mut faces = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        faces.push(vec![0, a, b]);
        faces.push(vec![5, b, a]);
    }
    sphere(6, &faces)
}

/// Poles 0 and 11, upper ring 1..=5, lower ring 6..=10.
pub fn icosahedron() -> SurfaceMap {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, u(i), u(i + 1)]);
        faces.push(vec![11, l(i + 1), l(i)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![l(i), l(i + 1), u(i + 1)]);
    }
    sphere(12, &faces)
}

/// Rim `0..n`, hub `n`.
pub fn wheel(n: usize) -> SurfaceMap {
    let mut faces: Vec<Vec<Vertex>> = (0..n).map(|i| vec![n, i, (i + 1) % n]).collect();
    faces.push((0..n).rev().collect());
    sphere(n + 1, &faces)
}

/// Top cycle `0..n`, bottom cycle `n..2n`.
pub fn prism(n: usize) -> SurfaceMap {
    let mut faces: Vec<Vec<Vertex>> = (0..n)
        .map(|i| vec![i, n + i, n + (i + 1) % n, (i + 1) % n])
        .collect();
    faces.push((0..n).collect());
    faces.push((n..2 * n).rev().collect());
    sphere(2 * n, &faces)
}

pub fn antiprism(n: usize) -> SurfaceMap {
    let mut faces = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, n + i, j]);
        faces.push(vec![n + i, n + j, j]);
    }
    faces.push((0..n).collect());
    faces.push((n..2 * n).rev().collect());
    sphere(2 * n, &faces)
}

/// K6 as the hemi-icosahedron.
pub fn k6_projective() -> SurfaceMap {
    let faces = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SurfaceMap::from_faces(6, &faces.map(|f| f.to_vec())).expect("hemi-icosahedron")
}

/// The Petersen graph as the hemi-dodecahedron.
pub fn petersen_projective() -> SurfaceMap {
    let mut faces = vec![vec![0, 1, 2, 3, 4]];
    for i in 0..5 {
        faces.push(vec![i, (i + 1) % 5, 5 + (i + 1) % 5, 5 + (i + 3) % 5, 5 + i]);
    }
    SurfaceMap::from_faces(10, &faces).expect("hemi-dodecahedron")
}

/// Antipodal quotient of the surface of the `k x k x k` cube lattice.
pub fn projective_cube_grid(k: usize) -> Result<SurfaceMap> {
    type P = [usize; 3];
    let on_surface = |p: P| p.iter().any(|&c| c == 0 || c == k);
    let anti = |p: P| [k - p[0], k - p[1], k - p[2]];
    let mut class: BTreeMap<P, usize> = BTreeMap::new();
    let mut next = 0;
    for x in 0..=k {
        for y in 0..=k {
            for z in 0..=k {
                let p = [x, y, z];
                if !on_surface(p) || class.contains_key(&p) {
                    continue;
                }
                class.insert(p, next);
                class.insert(anti(p), next);
                next += 1;
            }
        }
    }
    let mut faces = BTreeSet::new();
    for axis in 0..3 {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        for level in [0, k] {
            for i in 0..k {
                for j in 0..k {
                    let corner = |di: usize, dj: usize| {
                        let mut p = [0; 3];
                        p[axis] = level;
                        p[a] = i + di;
                        p[b] = j + dj;
                        class[&p]
                    };
                    let face = vec![corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
                    faces.insert(crate::surface_map::cyclic_key(&face));
                }
            }
        }
    }
    let faces: Vec<Vec<Vertex>> = faces.into_iter().collect();
    SurfaceMap::from_faces(next, &faces)
}

/// K7 triangulating the torus.
pub fn k7_torus() -> SurfaceMap {
    let mut faces = Vec::new();
    for i in 0..7 {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 3) % 7, (i + 2) % 7]);
    }
    sphere_like(7, &faces)
}

/// `rows x cols` quadrangulation of the torus; vertex `(i, j)` is `i * cols + j`.
pub fn torus_grid(rows: usize, cols: usize) -> SurfaceMap {
    let id = |i: usize, j: usize| (i % rows) * cols + j % cols;
    let mut faces = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            faces.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)]);
        }
    }
    sphere_like(rows * cols, &faces)
}

fn sphere_like(vertex_count: usize, faces: &[Vec<Vertex>]) -> SurfaceMap {
    let m = SurfaceMap::from_faces(vertex_count, faces).expect("fixture faces are valid");
    if m.orientable() {
        m.normalize_signs(|_| true)
    } else {
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    Orientable,
    NonorientableEven,
    NonorientableOdd,
}

/// Parameters and vertex names of a generated counterexample map.
#[derive(Clone, Debug, Serialize)]
pub struct GammaSpec {
    pub kind: GammaKind,
    pub genus: usize,
    /// Number of neighbours of `x` (and of `y`).
    pub n: usize,
    /// Vertex names (`x`, `y`, `1..n`, `1'..n'`, and `a..e` for the
    /// odd-genus gadget) to vertex ids.
    pub labels: BTreeMap<String, Vertex>,
}

impl GammaSpec {
    pub fn x(&self) -> Vertex {
        self.labels["x"]
    }

    pub fn y(&self) -> Vertex {
        self.labels["y"]
    }

    pub fn vertex(&self, name: &str) -> Vertex {
        self.labels[name]
    }
}

/// Stages of a construction, kept for tests and reporting.
#[derive(Clone, Debug)]
pub struct GammaStages {
    pub h1: SurfaceMap,
    pub h2: SurfaceMap,
    pub gamma: SurfaceMap,
    pub spec: GammaSpec,
}

/// Vertex ids shared by `H_2` and `Γ`: x = 0, y = 1, i = 1 + i, i' = 1 + n + i.
struct Layout {
    n: usize,
    shift: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Copy {
    A,
    B,
    C,
    D,
}

impl Layout {
    fn unprimed(&self, i: usize) -> Vertex {
        2 + (i + self.n - 1) % self.n
    }

    fn primed(&self, i: usize) -> Vertex {
        2 + self.n + (i + self.n - 1) % self.n
    }

    fn is_primed(&self, v: Vertex) -> bool {
        v >= 2 + self.n
    }

    /// Index `1..=n` of a merged vertex.
    fn index(&self, v: Vertex) -> usize {
        (v - 2) % self.n + 1
    }

    fn h1_vertex(&self, v: Vertex, c: Copy) -> Vertex {
        if v < 2 {
            return v;
        }
        let i = self.index(v) - 1;
        2 + i + self.n
            * match c {
                Copy::A => 0,
                Copy::B => 1,
                Copy::C => 2,
                Copy::D => 3,
            }
    }

    /// Which copy of `v` the `H_2` edge `v-w` uses in `H_1`.
    fn copy_for(&self, v: Vertex, w: Vertex) -> Copy {
        let primed = self.is_primed(v);
        if v < 2 || w == 0 {
            return Copy::A;
        }
        if w == 1 {
            return Copy::D;
        }
        let (j, jp) = if primed { (w, v) } else { (v, w) };
        let (ji, jpi) = (self.index(j), self.index(jp));
        let n = self.n;
        // C_x: j ~ j' and j' ~ j + 1
        let on_cx = jpi == ji || ji == jpi % n + 1;
        if on_cx {
            if primed {
                Copy::B
            } else {
                Copy::A
            }
        } else if primed {
            Copy::D
        } else {
            Copy::C
        }
    }

    fn labels(&self) -> BTreeMap<String, Vertex> {
        let mut labels = BTreeMap::new();
        labels.insert("x".to_string(), 0);
        labels.insert("y".to_string(), 1);
        for i in 1..=self.n {
            labels.insert(format!("{i}"), self.unprimed(i));
            labels.insert(format!("{i}'"), self.primed(i));
        }
        labels
    }

    fn x_and_y_faces(&self) -> Vec<Vec<Vertex>> {
        let mut faces = Vec::new();
        for i in 1..=self.n {
            faces.push(vec![0, self.unprimed(i), self.primed(i), self.unprimed(i + 1)]);
            faces.push(vec![1, self.primed(i), self.unprimed(self.shift + i + 1), self.primed(i + 1)]);
        }
        faces
    }

    /// Inserts the vertical edges `ii` and `i'i'` into an `H_2` face.
    fn expand(&self, face: &[Vertex]) -> Vec<Vertex> {
        let k = face.len();
        let mut out = Vec::new();
        for t in 0..k {
            let (p, v, q) = (face[(t + k - 1) % k], face[t], face[(t + 1) % k]);
            let (cin, cout) = (self.copy_for(v, p), self.copy_for(v, q));
            out.push(self.h1_vertex(v, cin));
            if cin != cout {
                out.push(self.h1_vertex(v, cout));
            }
        }
        out
    }

    /// Builds `H_1` from the `H_2` face list and contracts the vertical edges.
    fn h1_and_h2(&self, h2_faces: &[Vec<Vertex>], orientable: bool) -> Result<(SurfaceMap, SurfaceMap)> {
        let n = self.n;
        let h1_faces: Vec<Vec<Vertex>> = h2_faces.iter().map(|f| self.expand(f)).collect();
        let raw = SurfaceMap::from_faces(4 * n + 2, &h1_faces)?;
        let is_primed_vertical = |e: usize| {
            let [a, b] = raw.edge(e).ends;
            let (lo, hi) = (a.min(b), a.max(b));
            lo >= 2 + n && lo < 2 + 2 * n && hi == lo + 2 * n
        };
        let h1 = if orientable {
            raw.normalize_signs(|_| true)
        } else {
            raw.normalize_signs(|e| !is_primed_vertical(e))
        };
        let mut h2 = h1.clone();
        // Contract from the highest removed id down so lower ids stay put.
        for c in [Copy::D, Copy::C] {
            for i in (1..=n).rev() {
                let keep = if c == Copy::D { Copy::B } else { Copy::A };
                let v = 2 + (i - 1);
                let (u, w) = (self.h1_vertex(v, keep), self.h1_vertex(v, c));
                let e = h2.edge_between(u, w).expect("vertical edge");
                h2 = h2.contract_edge(e)?.0;
            }
        }
        Ok((h1, h2))
    }
}

fn find_face(map: &SurfaceMap, vertices: &[Vertex]) -> Option<usize> {
    let want: BTreeSet<Vertex> = vertices.iter().copied().collect();
    map.faces().iter().position(|f| f.boundary_vertices == want)
}

fn add_diagonals(map: &SurfaceMap, quads: &[(Vec<Vertex>, (Vertex, Vertex))]) -> Result<SurfaceMap> {
    let mut m = map.clone();
    for (quad, (a, b)) in quads {
        let f = find_face(&m, quad).ok_or_else(|| Error::BadFaceList(format!("no face {quad:?}")))?;
        m = m.insert_chord_between(f, *a, *b)?.0;
    }
    Ok(m)
}

/// Orientable construction of genus `g >= 2` with all stages.
pub fn gamma_orientable_stages(g: usize) -> Result<GammaStages> {
    if g < 2 {
        return Err(Error::BadGenus(g, "orientable genus must be at least 2"));
    }
    let n = 2 * g;
    let lay = Layout { n, shift: g };
    let (u, p) = (|i| lay.unprimed(i), |i| lay.primed(i));
    let mut faces = lay.x_and_y_faces();
    let mut quads = Vec::new();
    for i in 1..=g {
        let a = vec![u(i), p(i), u(g + i), p(g + i)];
        let b = vec![p(i + n - 1), u(i), p(g + i - 1), u(g + i)];
        quads.push((a.clone(), (u(i), u(g + i))));
        quads.push((b.clone(), (p(i + n - 1), p(g + i - 1))));
        faces.push(a);
        faces.push(b);
    }
    let (h1, h2) = lay.h1_and_h2(&faces, true)?;
    let gamma = add_diagonals(&h2, &quads)?;
    let spec = GammaSpec { kind: GammaKind::Orientable, genus: g, n, labels: lay.labels() };
    Ok(GammaStages { h1, h2, gamma, spec })
}

pub fn gamma_orientable(g: usize) -> Result<(SurfaceMap, GammaSpec)> {
    gamma_orientable_stages(g).map(|s| (s.gamma, s.spec))
}

/// Non-orientable construction of even genus `genus >= 4` with all stages.
pub fn gamma_nonorientable_even_stages(genus: usize) -> Result<GammaStages> {
    if genus < 4 || genus % 2 == 1 {
        return Err(Error::BadGenus(genus, "even non-orientable genus must be at least 4"));
    }
    let n = genus;
    let k = genus / 2;
    let lay = Layout { n, shift: k };
    let (u, p) = (|i| lay.unprimed(i), |i| lay.primed(i));
    let mut faces = lay.x_and_y_faces();
    let mut quads = Vec::new();
    for i in 1..=n {
        let q = vec![u(i), p(i), u(k + 1 + i), p(k + i)];
        let diagonal = even_diagonal(&lay, i);
        quads.push((q.clone(), diagonal));
        faces.push(q);
    }
    let (h1, h2) = lay.h1_and_h2(&faces, false)?;
    let gamma = add_diagonals(&h2, &quads)?;
    let spec = GammaSpec { kind: GammaKind::NonorientableEven, genus, n, labels: lay.labels() };
    Ok(GammaStages { h1, h2, gamma, spec })
}

/// Quads `Q_j` and `Q_{j+k}` share the opposite vertices `j'` and `(j+k)'`;
/// the first gets the unprimed diagonal and the second the primed one.
fn even_diagonal(lay: &Layout, i: usize) -> (Vertex, Vertex) {
    let k = lay.shift;
    if i <= k {
        (lay.unprimed(i), lay.unprimed(k + 1 + i))
    } else {
        (lay.primed(i), lay.primed(i - k))
    }
}

pub fn gamma_nonorientable_even(genus: usize) -> Result<(SurfaceMap, GammaSpec)> {
    gamma_nonorientable_even_stages(genus).map(|s| (s.gamma, s.spec))
}

/// What goes into the chosen triangle `abc` to add a crosscap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrosscapGadget {
    /// Two new vertices `d`, `e` with edges `de, ad, ae, be, cd` and `ce`,
    /// `bd` through the crosscap. Never polyhedral: `a`, `b`, `c` have nine
    /// corners inside the triangle, but a new face can hold two of them only
    /// along a boundary edge, so five faces hold at most eight.
    TwoVertex,
    /// `K_6` on the projective plane with one triangle removed: a Möbius band
    /// bounded by `abc` with new vertices `d`, `e`, `f`.
    MobiusK6,
}

/// Base map for the odd-genus construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OddBase {
    /// The even non-orientable construction of genus `ḡ - 1`.
    NonorientableEven,
    /// The orientable construction of genus `(ḡ - 1) / 2`; `T_g # P = N_{2g+1}`.
    Orientable,
}

impl OddBase {
    /// The even base where it is polyhedral (`ḡ ≥ 7`), else the orientable one.
    pub fn default_for(genus: usize) -> OddBase {
        if genus >= 7 {
            OddBase::NonorientableEven
        } else {
            OddBase::Orientable
        }
    }
}

fn gadget_faces(gadget: CrosscapGadget) -> (usize, Vec<Vec<usize>>) {
    // local ids: a = 0, b = 1, c = 2, then the new vertices
    let faces: &[&[usize]] = match gadget {
        CrosscapGadget::TwoVertex => &[&[0, 1, 4], &[0, 4, 3], &[0, 3, 2], &[1, 2, 4, 3], &[2, 3, 1, 4]],
        CrosscapGadget::MobiusK6 => &[
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 1],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 1],
            &[4, 5, 2],
            &[5, 1, 3],
        ],
    };
    let new = match gadget {
        CrosscapGadget::TwoVertex => 2,
        CrosscapGadget::MobiusK6 => 3,
    };
    (new, faces.iter().map(|f| f.to_vec()).collect())
}

/// Replaces triangular face `face` (read as `abc`) by a crosscap gadget.
/// Returns the new map and the ids of `a, b, c` and the new vertices.
pub fn add_crosscap(map: &SurfaceMap, face: FaceId, gadget: CrosscapGadget) -> Result<(SurfaceMap, Vec<Vertex>)> {
    if face >= map.face_count() {
        return Err(Error::NoSuchFace(face));
    }
    let abc = &map.face(face).vertices;
    if abc.len() != 3 {
        return Err(Error::BadFaceList(format!("face {face} is not a triangle")));
    }
    let n = map.vertex_count();
    let (new, local) = gadget_faces(gadget);
    let ids: Vec<Vertex> = abc.iter().copied().chain(n..n + new).collect();
    let mut faces: Vec<Vec<Vertex>> = (0..map.face_count())
        .filter(|&f| f != face)
        .map(|f| map.face(f).vertices.clone())
        .collect();
    faces.extend(local.iter().map(|f| f.iter().map(|&v| ids[v]).collect()));
    Ok((SurfaceMap::from_faces(n + new, &faces)?, ids))
}

/// Odd non-orientable genus `ḡ ≥ 5`: the Möbius gadget in the first
/// triangle of the base that avoids `x` and `y`.
pub fn gamma_nonorientable_odd(genus: usize) -> Result<(SurfaceMap, GammaSpec)> {
    gamma_nonorientable_odd_with(genus, OddBase::default_for(genus), CrosscapGadget::MobiusK6)
}

pub fn gamma_nonorientable_odd_with(
    genus: usize,
    base: OddBase,
    gadget: CrosscapGadget,
) -> Result<(SurfaceMap, GammaSpec)> {
    if genus < 5 || genus % 2 == 0 {
        return Err(Error::BadGenus(genus, "odd non-orientable genus must be at least 5"));
    }
    let (map, spec) = match base {
        OddBase::NonorientableEven => gamma_nonorientable_even(genus - 1)?,
        OddBase::Orientable => gamma_orientable((genus - 1) / 2)?,
    };
    let (x, y) = (spec.x(), spec.y());
    let face = (0..map.face_count())
        .find(|&f| {
            let w = &map.face(f).vertices;
            w.len() == 3 && !w.contains(&x) && !w.contains(&y)
        })
        .ok_or_else(|| Error::BadFaceList("no triangle avoiding x and y".into()))?;
    let (gamma, ids) = add_crosscap(&map, face, gadget)?;
    let mut labels = spec.labels;
    for (name, v) in ["a", "b", "c", "d", "e", "f"].iter().zip(&ids) {
        labels.insert(name.to_string(), *v);
    }
    Ok((gamma, GammaSpec { kind: GammaKind::NonorientableOdd, genus, n: spec.n, labels }))
}

/// A named corpus entry. `pair` is the distinguished `(x, y)` of the
/// counterexample maps.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub map: SurfaceMap,
    pub expect_polyhedral: bool,
    pub pair: Option<(Vertex, Vertex)>,
}

impl Fixture {
    fn plain(name: impl Into<String>, map: SurfaceMap) -> Fixture {
        Fixture { name: name.into(), map, expect_polyhedral: true, pair: None }
    }

    fn gamma(name: &str, (map, spec): (SurfaceMap, GammaSpec)) -> Fixture {
        Fixture { name: name.into(), map, expect_polyhedral: true, pair: Some((spec.x(), spec.y())) }
    }

    pub fn is_sphere(&self) -> bool {
        self.map.euler_char() == 2
    }

    pub fn is_projective(&self) -> bool {
        self.map.euler_char() == 1 && !self.map.orientable()
    }
}

/// The deterministic test corpus, in a fixed order.
pub fn fixture_corpus() -> Vec<Fixture> {
    let mut out = vec![
        Fixture::plain("tetrahedron", tetrahedron()),
        Fixture::plain("cube", cube()),
        Fixture::plain("octahedron", octahedron()),
        Fixture::plain("icosahedron", icosahedron()),
    ];
    for n in 4..=8 {
        out.push(Fixture::plain(format!("wheel_{n}"), wheel(n)));
    }
    for n in 3..=8 {
        out.push(Fixture::plain(format!("prism_{n}"), prism(n)));
    }
    for n in 4..=8 {
        out.push(Fixture::plain(format!("antiprism_{n}"), antiprism(n)));
    }
    out.push(Fixture::plain("k6_projective", k6_projective()));
    out.push(Fixture::plain("petersen_projective", petersen_projective()));
    out.push(Fixture::plain("projective_cube_grid_2", projective_cube_grid(2).expect("k = 2")));
    out.push(Fixture::plain("k7_torus", k7_torus()));
    out.push(Fixture::plain("torus_grid_4x4", torus_grid(4, 4)));
    out.push(Fixture::gamma("gamma_o_2", gamma_orientable(2).expect("g = 2")));
    out.push(Fixture::gamma("gamma_o_3", gamma_orientable(3).expect("g = 3")));
    // the even construction is not polyhedral for genus 4 (see its test)
    let mut n4 = Fixture::gamma("gamma_n_4", gamma_nonorientable_even(4).expect("genus 4"));
    n4.expect_polyhedral = false;
    out.push(n4);
    out.push(Fixture::gamma("gamma_n_5", gamma_nonorientable_odd(5).expect("genus 5")));
    out.push(Fixture::gamma("gamma_n_6", gamma_nonorientable_even(6).expect("genus 6")));
    let h2 = gamma_orientable_stages(2).expect("g = 2");
    out.push(Fixture {
        name: "h2_g2".into(),
        map: h2.h2,
        expect_polyhedral: false,
        pair: Some((h2.spec.x(), h2.spec.y())),
    });
    out
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixture_corpus().into_iter().find(|f| f.name == name)
}

pub fn fixture_names() -> Vec<String> {
    fixture_corpus().into_iter().map(|f| f.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_and_torus_fixtures() {
        for (m, chi) in [
            (tetrahedron(), 2),
            (cube(), 2),
            (octahedron(), 2),
            (icosahedron(), 2),
            (wheel(5), 2),
            (prism(6), 2),
            (antiprism(5), 2),
            (k6_projective(), 1),
            (petersen_projective(), 1),
            (k7_torus(), 0),
            (torus_grid(4, 4), 0),
        ] {
            assert_eq!(m.euler_char(), chi);
            assert_eq!(m.orientable(), chi % 2 == 0 && chi != 1);
        }
        assert_eq!(icosahedron().face_count(), 20);
        assert_eq!(k7_torus().edge_count(), 21);
    }

    #[test]
    fn gamma_counts() {
        for g in [2, 3] {
            let s = gamma_orientable_stages(g).unwrap();
            assert_eq!(s.h1.vertex_count(), 8 * g + 2);
            assert_eq!(s.h1.euler_char(), 2 - 2 * g as i64);
            assert!(s.h1.orientable());
            assert_eq!(s.h2.vertex_count(), 4 * g + 2);
            assert_eq!(s.gamma.edge_count(), 14 * g);
            assert_eq!(s.gamma.euler_char(), 2 - 2 * g as i64);
        }
        for genus in [4, 6] {
            let s = gamma_nonorientable_even_stages(genus).unwrap();
            assert_eq!(s.gamma.vertex_count(), 2 * genus + 2);
            assert_eq!(s.gamma.euler_char(), 2 - genus as i64);
            assert!(!s.gamma.orientable());
        }
    }
}

#[cfg(test)]
mod certification {
    use super::*;
    use crate::flow::local_connectivity;
    use crate::polyhedral::is_polyhedral;
    use crate::search::exists_wv_path;

    #[test]
    fn orientable_maps_block_non_revisiting_paths() {
        for g in [2, 3] {
            let (m, s) = gamma_orientable(g).unwrap();
            assert_eq!(is_polyhedral(&m), Ok(()), "g = {g}");
            assert_eq!(local_connectivity(&m, s.x(), s.y()).unwrap().0, 2 * g);
            assert!(!m.cofacial(s.x(), s.y()));
            assert_eq!(exists_wv_path(&m, s.x(), s.y()).unwrap(), None, "g = {g}");
        }
    }

    #[test]
    fn even_nonorientable_maps_block_non_revisiting_paths() {
        for genus in [6, 8] {
            let (m, s) = gamma_nonorientable_even(genus).unwrap();
            assert_eq!(is_polyhedral(&m), Ok(()), "genus {genus}");
            assert_eq!(local_connectivity(&m, s.x(), s.y()).unwrap().0, genus);
            assert_eq!(exists_wv_path(&m, s.x(), s.y()).unwrap(), None, "genus {genus}");
        }
    }

    #[test]
    fn genus_four_even_map_is_not_polyhedral() {
        // k + 1 + i = i - 1 (mod 4), so each quad has i and i - 1 opposite,
        // and so does an x-face
        let (m, s) = gamma_nonorientable_even(4).unwrap();
        assert_eq!(m.euler_char(), -2);
        assert!(!m.orientable());
        assert!(is_polyhedral(&m).is_err());
        assert_eq!(local_connectivity(&m, s.x(), s.y()).unwrap().0, 4);
    }

    #[test]
    fn odd_nonorientable_maps_block_non_revisiting_paths() {
        for (genus, base) in [(5, OddBase::Orientable), (7, OddBase::NonorientableEven), (7, OddBase::Orientable)] {
            let (m, s) = gamma_nonorientable_odd_with(genus, base, CrosscapGadget::MobiusK6).unwrap();
            assert_eq!(m.euler_char(), 2 - genus as i64);
            assert!(!m.orientable());
            assert_eq!(is_polyhedral(&m), Ok(()), "genus {genus}");
            assert!(!m.cofacial(s.x(), s.y()));
            assert_eq!(exists_wv_path(&m, s.x(), s.y()).unwrap(), None, "genus {genus}");
        }
    }

    #[test]
    fn two_vertex_gadget_adds_a_crosscap_but_breaks_polyhedrality() {
        let (m, _) = gamma_nonorientable_odd_with(5, OddBase::Orientable, CrosscapGadget::TwoVertex).unwrap();
        assert_eq!(m.euler_char(), -3);
        assert!(!m.orientable());
        assert!(matches!(is_polyhedral(&m), Err(crate::polyhedral::NotPolyhedral::ImproperIntersection(_))));
    }

    #[test]
    fn corpus_polyhedrality_matches_tags() {
        let corpus = fixture_corpus();
        assert!(corpus.len() >= 18);
        for f in &corpus {
            assert_eq!(is_polyhedral(&f.map).is_ok(), f.expect_polyhedral, "{}", f.name);
        }
        assert!(!fixture("h2_g2").unwrap().expect_polyhedral);
        let spheres: Vec<_> = corpus.iter().filter(|f| f.is_sphere()).collect();
        assert_eq!(spheres.len(), 20);
    }
}
