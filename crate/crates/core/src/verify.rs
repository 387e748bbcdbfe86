//! Per-pair analysis and the criterion suite run by `wvmaps verify`.
//!
//! Every bound check carries a tag naming the result it tests:
//!
//! | tag    | statement                                                         |
//! |--------|-------------------------------------------------------------------|
//! | L2.1   | no contractible revisit at `F` ⇒ `F ∩ P` has ≤ `max(1, 4 - 2χ)` components |
//! | C2.2   | two faces touch a path in ≤ `max(1, 4 - 2χ)` pieces                |
//! | T2.1   | sphere: at least `κ` disjoint non-revisiting paths                 |
//! | L3.1   | ≤ `4 - 2χ` homotopy classes, one on the sphere                     |
//! | L3.2   | a class of `k ≥ 3` paths yields ≥ `k - 2` non-revisiting paths     |
//! | T1.2   | three homotopic disjoint paths ⇒ a non-revisiting path exists      |
//! | T1.3   | at least `κ + 4χ - 8` disjoint non-revisiting paths                |
//! | T4.1   | projective plane: at least `κ - 2` of them                         |
//! | COOK   | vertex connectivity ≤ `(5 + √(49 - 24χ)) / 2` for `χ ≤ 0`          |

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    gamma_nonorientable_even, gamma_nonorientable_odd, gamma_orientable, Fixture, GammaSpec,
};
use crate::cut::{cut_along_cycle, is_contractible, DartCycle};
use crate::error::{Error, Result};
use crate::flow::{local_connectivity, vertex_connectivity};
use crate::homotopy::{classify_homotopy, count_noncontractible_components, cut_along_paths, genus_bound};
use crate::nonrevisit::{contractible_revisits, minimize_revisits, random_path_system, reroute_contractible, wv_paths_in_class};
use crate::oracle::{naive_exists_wv_path, naive_max_disjoint_paths};
use crate::paths::{face_path_components, is_wv_path, total_revisit_number, touched_faces, PathSystem, XYPath};
use crate::polyhedral::{cook_bound, face_touching_number, is_polyhedral};
use crate::search::{exhaustive_cutoff, exists_wv_path, max_disjoint_wv_paths_with_cutoff};
use crate::surface_map::{SurfaceMap, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub tag: &'static str,
    pub instance: String,
    pub lhs: i64,
    pub relation: &'static str,
    pub rhs: i64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(tag: &'static str, instance: impl Into<String>, lhs: i64, relation: &'static str, rhs: i64) -> Self {
        let holds = match relation {
            "<=" => lhs <= rhs,
            ">=" => lhs >= rhs,
            _ => lhs == rhs,
        };
        BoundCheck { tag, instance: instance.into(), lhs, relation, rhs, holds }
    }
}

impl std::fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.holds { "ok" } else { "VIOLATED" };
        write!(f, "[{}] {}: {} {} {} {}", self.tag, self.instance, self.lhs, self.relation, self.rhs, verdict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_char: i64,
    pub orientable: bool,
    pub polyhedral: bool,
    /// Why the map is not polyhedral.
    pub defect: Option<String>,
}

pub fn summarize(map: &SurfaceMap) -> MapSummary {
    let verdict = is_polyhedral(map);
    MapSummary {
        vertices: map.vertex_count(),
        edges: map.edge_count(),
        faces: map.face_count(),
        euler_char: map.euler_char(),
        orientable: map.orientable(),
        polyhedral: verdict.is_ok(),
        defect: verdict.err().map(|e| e.to_string()),
    }
}

/// Checks that depend on the map alone: C2.2 and COOK.
pub fn map_checks(map: &SurfaceMap, name: &str) -> Vec<BoundCheck> {
    let chi = map.euler_char();
    let mut out = Vec::new();
    let (touch, pair) = face_touching_number(map);
    let at = pair.map_or(String::new(), |(a, b)| format!(" faces {a},{b}"));
    out.push(BoundCheck::new("C2.2", format!("{name}{at}"), touch as i64, "<=", genus_bound(chi).max(1)));
    if chi <= 0 {
        out.push(BoundCheck::new("COOK", name, vertex_connectivity(map) as i64, "<=", cook_bound(chi) as i64));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizeSummary {
    pub initial_r: usize,
    pub final_r: usize,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassOutcome {
    pub size: usize,
    pub wv_paths: usize,
    pub contained_in_disk: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub x: Vertex,
    pub y: Vertex,
    pub cofacial: bool,
    pub kappa: usize,
    /// For cofacial pairs: the one or two boundary paths, all non-revisiting.
    pub cofacial_paths: Vec<Vec<Vertex>>,
    pub class_sizes: Vec<usize>,
    pub classes: Vec<ClassOutcome>,
    pub minimize: Option<MinimizeSummary>,
    /// Exhaustive results, present only when requested and under the cutoff.
    pub wv_exists: Option<bool>,
    pub wv_max_disjoint: Option<usize>,
    pub checks: Vec<BoundCheck>,
    pub violations: Vec<String>,
}

impl PairReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty() && self.checks.iter().all(|c| c.holds)
    }
}

/// The boundary paths between two cofacial vertices.
fn cofacial_paths(map: &SurfaceMap, x: Vertex, y: Vertex) -> Vec<Vec<Vertex>> {
    if map.edge_between(x, y).is_some() {
        return vec![vec![x, y]];
    }
    let mut out = Vec::new();
    for f in map.faces() {
        let w = &f.vertices;
        let (Some(i), Some(j)) = (w.iter().position(|&v| v == x), w.iter().position(|&v| v == y)) else { continue };
        let k = w.len();
        out.push((0..=(j + k - i) % k).map(|s| w[(i + s) % k]).collect());
        out.push((0..=(i + k - j) % k).map(|s| w[(i + k - s) % k]).collect());
        break;
    }
    out
}

/// L2.1 for every (path, face) with at least two components and no
/// contractible revisit.
fn lemma_2_1_checks(map: &SurfaceMap, sys: &PathSystem, label: &str, out: &mut Vec<BoundCheck>) -> Result<()> {
    for (i, p) in sys.paths.iter().enumerate() {
        for f in touched_faces(map, p) {
            match count_noncontractible_components(map, p, f) {
                Ok(b) if b.components >= 2 => out.push(BoundCheck::new("L2.1", format!("{label} path {i} face {f}"), b.components as i64, "<=", b.bound)),
                Ok(_) | Err(Error::PreconditionViolated(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

/// Full analysis of one pair of a polyhedral map.
pub fn analyze_pair(map: &SurfaceMap, x: Vertex, y: Vertex, exhaustive: bool, cutoff: usize) -> Result<PairReport> {
    if let Err(e) = is_polyhedral(map) {
        return Err(Error::NotPolyhedral(e.to_string()));
    }
    let (kappa, sys) = local_connectivity(map, x, y)?;
    let cofacial = map.cofacial(x, y);
    let mut rep = PairReport {
        x,
        y,
        cofacial,
        kappa,
        cofacial_paths: Vec::new(),
        class_sizes: Vec::new(),
        classes: Vec::new(),
        minimize: None,
        wv_exists: None,
        wv_max_disjoint: None,
        checks: Vec::new(),
        violations: Vec::new(),
    };
    let label = format!("({x},{y})");
    if cofacial {
        rep.cofacial_paths = cofacial_paths(map, x, y);
        for p in &rep.cofacial_paths {
            let path = XYPath::new(map, p.clone())?;
            if !is_wv_path(map, &path) {
                rep.violations.push(format!("{label}: boundary path {p:?} revisits a face"));
            }
        }
        return Ok(rep);
    }
    let chi = map.euler_char();
    lemma_2_1_checks(map, &sys, &format!("{label} flow"), &mut rep.checks)?;
    let cls = classify_homotopy(map, &sys)?;
    rep.class_sizes = cls.classes.iter().map(|c| c.members.len()).collect();
    let count = cls.classes.len() as i64;
    rep.checks.push(if chi == 2 {
        BoundCheck::new("L3.1", label.clone(), count, "==", 1)
    } else {
        BoundCheck::new("L3.1", label.clone(), count, "<=", genus_bound(chi))
    });
    for c in cls.classes.iter().filter(|c| c.members.len() >= 3) {
        let got = wv_paths_in_class(map, &sys, c)?;
        let k = c.members.len();
        rep.checks.push(BoundCheck::new("L3.2", format!("{label} class {:?}", c.members), got.paths.len() as i64, ">=", k as i64 - 2));
        rep.checks.push(BoundCheck::new("T1.2", format!("{label} class {:?}", c.members), got.paths.len() as i64, ">=", 1));
        for p in &got.paths {
            if !is_wv_path(map, p) {
                rep.violations.push(format!("{label}: class path {:?} revisits a face", p.vertices));
            }
        }
        rep.classes.push(ClassOutcome { size: k, wv_paths: got.paths.len(), contained_in_disk: got.contained_in_disk });
    }
    if sys.len() >= 3 {
        match minimize_revisits(map, &sys) {
            Ok(m) => {
                lemma_2_1_checks(map, &m.system, &format!("{label} minimized"), &mut rep.checks)?;
                rep.minimize = Some(MinimizeSummary { initial_r: m.initial_r, final_r: m.final_r, steps: m.steps.len() });
            }
            Err(e) => rep.violations.push(format!("{label}: rerouting failed: {e}")),
        }
    }
    if exhaustive && map.vertex_count() <= cutoff.min(64) {
        let (best, family) = max_disjoint_wv_paths_with_cutoff(map, x, y, cutoff)?;
        rep.wv_exists = Some(best > 0);
        rep.wv_max_disjoint = Some(best);
        if family.iter().any(|p| !is_wv_path(map, p)) {
            rep.violations.push(format!("{label}: search returned a revisiting path"));
        }
        let (k, best) = (kappa as i64, best as i64);
        rep.checks.push(BoundCheck::new("T1.3", label.clone(), best, ">=", k + 4 * chi - 8));
        if chi == 2 {
            rep.checks.push(BoundCheck::new("T2.1", label.clone(), best, ">=", k));
        }
        if chi == 1 && !map.orientable() {
            rep.checks.push(BoundCheck::new("T4.1", label.clone(), best, ">=", k - 2));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub map: MapSummary,
    pub map_checks: Vec<BoundCheck>,
    pub pairs: Vec<PairReport>,
}

impl AnalysisReport {
    pub fn passes(&self) -> bool {
        self.map_checks.iter().all(|c| c.holds) && self.pairs.iter().all(PairReport::passes)
    }
}

pub fn analyze(map: &SurfaceMap, x: Vertex, y: Vertex, exhaustive: bool) -> Result<AnalysisReport> {
    let pair = analyze_pair(map, x, y, exhaustive, exhaustive_cutoff())?;
    Ok(AnalysisReport { map: summarize(map), map_checks: map_checks(map, "map"), pairs: vec![pair] })
}

// ---------------------------------------------------------------------------
// Criterion suite

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    /// Checks evaluated, by tag.
    pub instances: BTreeMap<String, usize>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(id: usize, title: &'static str) -> Self {
        CriterionReport { id, title, pass: true, instances: BTreeMap::new(), failures: Vec::new(), notes: Vec::new() }
    }

    fn record(&mut self, check: &BoundCheck) {
        *self.instances.entry(check.tag.to_string()).or_default() += 1;
        if !check.holds {
            self.fail(check.to_string());
        }
    }

    fn expect(&mut self, tag: &str, ok: bool, what: impl FnOnce() -> String) {
        *self.instances.entry(tag.to_string()).or_default() += 1;
        if !ok {
            self.fail(format!("[{tag}] {}", what()));
        }
    }

    fn fail(&mut self, msg: String) {
        self.pass = false;
        self.failures.push(msg);
    }

    pub fn line(&self) -> String {
        let n: usize = self.instances.values().sum();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!("{verdict} criterion {}: {} ({n} checks)", self.id, self.title);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure: {f}"));
            if self.failures.len() > 1 {
                s.push_str(&format!(" (+{} more)", self.failures.len() - 1));
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub criteria: Vec<CriterionReport>,
}

fn polyhedral_fixtures<'a>(corpus: &'a [Fixture], rep: &mut CriterionReport) -> Vec<&'a Fixture> {
    let mut out = Vec::new();
    for f in corpus.iter().filter(|f| f.expect_polyhedral) {
        match is_polyhedral(&f.map) {
            Ok(()) => out.push(f),
            Err(e) => rep.fail(format!("[POLY] {}: tagged polyhedral but {e}", f.name)),
        }
    }
    out
}

fn non_cofacial_pairs(map: &SurfaceMap) -> Vec<(Vertex, Vertex)> {
    let n = map.vertex_count();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !map.cofacial(x, y))
        .collect()
}

/// Runs `task` over every non-cofacial pair of every fixture in parallel,
/// returning results in corpus order.
fn per_pair<T: Send>(
    fixtures: &[&Fixture],
    task: impl Fn(&Fixture, Vertex, Vertex) -> T + Sync,
) -> Vec<T> {
    let jobs: Vec<(&Fixture, Vertex, Vertex)> = fixtures
        .iter()
        .flat_map(|f| non_cofacial_pairs(&f.map).into_iter().map(move |(x, y)| (*f, x, y)))
        .collect();
    jobs.into_par_iter().map(|(f, x, y)| task(f, x, y)).collect()
}

pub fn criterion_sphere(corpus: &[Fixture]) -> CriterionReport {
    let mut rep = CriterionReport::new(1, "sphere: at least kappa disjoint W_v-paths");
    let spheres: Vec<&Fixture> = polyhedral_fixtures(corpus, &mut rep).into_iter().filter(|f| f.is_sphere()).collect();
    let results = per_pair(&spheres, |f, x, y| -> Result<BoundCheck> {
        let (k, _) = local_connectivity(&f.map, x, y)?;
        let (best, _) = max_disjoint_wv_paths_with_cutoff(&f.map, x, y, 64)?;
        Ok(BoundCheck::new("T2.1", format!("{} ({x},{y})", f.name), best as i64, ">=", k as i64))
    });
    for r in results {
        match r {
            Ok(c) => rep.record(&c),
            Err(e) => rep.fail(format!("[T2.1] {e}")),
        }
    }
    rep.notes.push(format!("{} sphere fixtures", spheres.len()));
    rep
}

/// Properties every counterexample map must have; `kappa` is asserted when
/// given.
fn certify(rep: &mut CriterionReport, name: &str, map: &SurfaceMap, spec: &GammaSpec, chi: i64, orientable: bool, kappa: Option<usize>) -> Result<()> {
    let (x, y) = (spec.x(), spec.y());
    rep.expect("GAMMA", map.euler_char() == chi, || format!("{name}: chi = {}, expected {chi}", map.euler_char()));
    rep.expect("GAMMA", map.orientable() == orientable, || format!("{name}: orientable = {}", map.orientable()));
    let poly = is_polyhedral(map);
    rep.expect("GAMMA", poly.is_ok(), || format!("{name}: not polyhedral: {}", poly.clone().unwrap_err()));
    rep.expect("GAMMA", !map.cofacial(x, y), || format!("{name}: x and y are cofacial"));
    let (k, _) = local_connectivity(map, x, y)?;
    match kappa {
        Some(want) => rep.expect("GAMMA", k == want, || format!("{name}: kappa = {k}, expected {want}")),
        None => rep.notes.push(format!("{name}: kappa(x,y) = {k}")),
    }
    let path = exists_wv_path(map, x, y)?;
    rep.expect("GAMMA", path.is_none(), || format!("{name}: W_v-path {:?}", path.unwrap().vertices));
    Ok(())
}

pub fn criterion_gamma_orientable() -> CriterionReport {
    let mut rep = CriterionReport::new(2, "orientable counterexamples g = 2, 3");
    for g in [2, 3] {
        let name = format!("gamma_o_{g}");
        let r = gamma_orientable(g).and_then(|(m, s)| {
            rep.expect("GAMMA", m.vertex_count() == 4 * g + 2, || format!("{name}: {} vertices", m.vertex_count()));
            certify(&mut rep, &name, &m, &s, 2 - 2 * g as i64, true, Some(2 * g))
        });
        if let Err(e) = r {
            rep.fail(format!("[GAMMA] {name}: {e}"));
        }
    }
    rep
}

pub fn criterion_gamma_nonorientable() -> CriterionReport {
    let mut rep = CriterionReport::new(3, "non-orientable counterexamples 4, 5, 6");
    for genus in [4usize, 5, 6] {
        let name = format!("gamma_n_{genus}");
        let built = if genus % 2 == 0 { gamma_nonorientable_even(genus) } else { gamma_nonorientable_odd(genus) };
        let kappa = (genus % 2 == 0).then_some(genus);
        let r = built.and_then(|(m, s)| certify(&mut rep, &name, &m, &s, 2 - genus as i64, false, kappa));
        if let Err(e) = r {
            rep.fail(format!("[GAMMA] {name}: {e}"));
        }
    }
    rep
}

pub fn criterion_bounds(corpus: &[Fixture]) -> CriterionReport {
    let mut rep = CriterionReport::new(4, "bound suite on polyhedral fixtures");
    let fixtures = polyhedral_fixtures(corpus, &mut rep);
    for f in &fixtures {
        for c in map_checks(&f.map, &f.name) {
            rep.record(&c);
        }
    }
    let results = per_pair(&fixtures, |f, x, y| analyze_pair(&f.map, x, y, true, 64).map(|r| (f.name.clone(), r)));
    for r in results {
        match r {
            Ok((name, pr)) => {
                for mut c in pr.checks {
                    if c.tag == "L3.2" || c.tag == "T1.2" {
                        continue; // criterion 6
                    }
                    c.instance = format!("{name} {}", c.instance);
                    rep.record(&c);
                }
                for v in pr.violations {
                    rep.fail(format!("{name} {v}"));
                }
            }
            Err(e) => rep.fail(format!("[L3.1] {e}")),
        }
    }
    rep
}

/// Independent check of one reroute; returns the first broken guarantee.
fn audit_reroute(map: &SurfaceMap, old: &PathSystem, new: &PathSystem, i: usize, face: usize) -> Option<String> {
    if new.len() != old.len() {
        return Some(format!("path count {} -> {}", old.len(), new.len()));
    }
    if new.x != old.x || new.y != old.y {
        return Some("endpoints changed".into());
    }
    for (j, p) in new.paths.iter().enumerate() {
        if p.x() != old.x || p.y() != old.y {
            return Some(format!("path {j} has wrong ends"));
        }
        if XYPath::new(map, p.vertices.clone()).is_err() {
            return Some(format!("path {j} is not a simple path"));
        }
        if j != i && p != &old.paths[j] {
            return Some(format!("path {j} changed"));
        }
    }
    if let Err(e) = new.validate() {
        return Some(format!("not disjoint: {e}"));
    }
    let (r0, r1) = (old.total_revisit(map), new.total_revisit(map));
    if r1 >= r0 {
        return Some(format!("r went {r0} -> {r1}"));
    }
    let (p0, p1) = (&old.paths[i], &new.paths[i]);
    for f in touched_faces(map, p1) {
        if f == face {
            continue;
        }
        let (c0, c1) = (face_path_components(map, p0, f).len(), face_path_components(map, p1, f).len());
        if c1 > c0.max(1) {
            return Some(format!("face {f} went from {c0} to {c1} components"));
        }
    }
    None
}

pub fn criterion_rerouting(corpus: &[Fixture], trials: usize, seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(5, "rerouting contractible revisits");
    let fixtures = polyhedral_fixtures(corpus, &mut rep);
    let usable: Vec<(&Fixture, Vec<(Vertex, Vertex)>)> = fixtures
        .iter()
        .map(|f| (*f, non_cofacial_pairs(&f.map)))
        .filter(|(_, p)| !p.is_empty())
        .collect();
    // Trials are split into independent seeded streams so the outcome does
    // not depend on the thread count.
    let streams = 16;
    let per = trials.div_ceil(streams);
    let outcomes: Vec<(usize, Vec<String>)> = (0..streams as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (s.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
            let (mut done, mut bad) = (0, Vec::new());
            let mut attempts = 0;
            while done < per && attempts < per * 50 {
                attempts += 1;
                let (f, pairs) = &usable[rng.gen_range(0..usable.len())];
                let &(x, y) = pairs.choose(&mut rng).unwrap();
                let detours = rng.gen_range(1..8);
                let Ok(sys) = random_path_system(&f.map, x, y, detours, &mut rng) else { continue };
                if sys.len() < 3 {
                    continue;
                }
                let sites = match contractible_revisits(&f.map, &sys) {
                    Ok(s) => s,
                    Err(e) => {
                        bad.push(format!("{} ({x},{y}): {e}", f.name));
                        continue;
                    }
                };
                let Some(&(i, face, a, b)) = sites.choose(&mut rng) else { continue };
                done += 1;
                match reroute_contractible(&f.map, &sys, i, face, (a, b)) {
                    Ok((next, _)) => {
                        if let Some(why) = audit_reroute(&f.map, &sys, &next, i, face) {
                            bad.push(format!("{} ({x},{y}) path {i} face {face}: {why}", f.name));
                        }
                    }
                    Err(e) => bad.push(format!("{} ({x},{y}) path {i} face {face}: {e}", f.name)),
                }
            }
            (done, bad)
        })
        .collect();
    let mut total = 0;
    for (done, bad) in outcomes {
        total += done;
        *rep.instances.entry("L2.2".into()).or_default() += done;
        for b in bad {
            rep.fail(format!("[L2.2] {b}"));
        }
    }
    if total < trials {
        rep.fail(format!("[L2.2] only {total} of {trials} trials found a contractible revisit"));
    }
    rep.notes.push(format!("{total} reroutes audited"));
    rep
}

pub fn criterion_homotopic_triples(corpus: &[Fixture]) -> CriterionReport {
    let mut rep = CriterionReport::new(6, "three homotopic paths give W_v-paths");
    let fixtures = polyhedral_fixtures(corpus, &mut rep);
    let results = per_pair(&fixtures, |f, x, y| -> Result<Vec<(BoundCheck, BoundCheck)>> {
        let (_, sys) = local_connectivity(&f.map, x, y)?;
        let cls = classify_homotopy(&f.map, &sys)?;
        let mut out = Vec::new();
        for c in cls.classes.iter().filter(|c| c.members.len() >= 3) {
            let got = wv_paths_in_class(&f.map, &sys, c)?;
            let clean = got.paths.iter().filter(|p| total_revisit_number(&f.map, p) == 0).count();
            let at = format!("{} ({x},{y}) class {:?}", f.name, c.members);
            out.push((
                BoundCheck::new("L3.2", at.clone(), clean as i64, ">=", c.members.len() as i64 - 2),
                BoundCheck::new("T1.2", at, exists_wv_path(&f.map, x, y)?.is_some() as i64, "==", 1),
            ));
        }
        Ok(out)
    });
    for r in results {
        match r {
            Ok(v) => {
                for (a, b) in v {
                    rep.record(&a);
                    rep.record(&b);
                }
            }
            Err(e) => rep.fail(format!("[L3.2] {e}")),
        }
    }
    rep
}

pub fn criterion_oracles(corpus: &[Fixture]) -> CriterionReport {
    let mut rep = CriterionReport::new(7, "oracle cross-validation");
    let small: Vec<&Fixture> = corpus.iter().filter(|f| f.map.vertex_count() <= 12).collect();
    let jobs: Vec<(&Fixture, Vertex, Vertex)> = small
        .iter()
        .flat_map(|f| {
            let n = f.map.vertex_count();
            (0..n).flat_map(move |x| (x + 1..n).map(move |y| (*f, x, y)))
        })
        .collect();
    let results: Vec<Result<Vec<(String, bool, String)>>> = jobs
        .into_par_iter()
        .map(|(f, x, y)| {
            let m = &f.map;
            let at = format!("{} ({x},{y})", f.name);
            let mut out = Vec::new();
            let fast = exists_wv_path(m, x, y)?.is_some();
            let slow = naive_exists_wv_path(m, x, y)?;
            out.push(("WV".into(), fast == slow, format!("{at}: pruned {fast}, naive {slow}")));
            let (k, sys) = local_connectivity(m, x, y)?;
            let brute = naive_max_disjoint_paths(m, x, y)?;
            out.push(("KAPPA".into(), k == brute, format!("{at}: flow {k}, brute force {brute}")));
            for a in 0..sys.len() {
                for b in a + 1..sys.len() {
                    let cut = cut_along_paths(m, &sys.paths[a], &sys.paths[b])?;
                    let total = cut.total_euler_char();
                    out.push(("CHI".into(), total == m.euler_char(), format!("{at} paths {a},{b}: pieces sum to {total}")));
                }
            }
            Ok(out)
        })
        .collect();
    for r in results {
        match r {
            Ok(v) => {
                for (tag, ok, msg) in v {
                    rep.expect(&tag, ok, || msg);
                }
            }
            Err(e) => rep.fail(format!("[WV] {e}")),
        }
    }
    // every face boundary is a contractible cycle whose cut conserves chi
    for f in &small {
        for face in f.map.faces() {
            let Ok(c) = DartCycle::from_vertices(&f.map, &face.vertices) else { continue };
            let r = cut_along_cycle(&f.map, &c).and_then(|cut| Ok((cut.total_euler_char(), is_contractible(&f.map, &c)?)));
            match r {
                Ok((total, contractible)) => {
                    rep.expect("CHI", total == f.map.euler_char(), || format!("{}: face cut sums to {total}", f.name));
                    rep.expect("CHI", contractible, || format!("{}: face boundary not contractible", f.name));
                }
                Err(e) => rep.fail(format!("[CHI] {}: {e}", f.name)),
            }
        }
    }
    rep.notes.push(format!("{} fixtures with at most 12 vertices", small.len()));
    rep
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub jobs: Option<usize>,
    pub reroute_trials: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { jobs: None, reroute_trials: 1000, seed: 0x5eed }
    }
}

/// Runs the criteria over `corpus`: all seven, or those listed in `only`.
pub fn run_suite(corpus: &[Fixture], opts: &SuiteOptions, only: Option<&[usize]>) -> SuiteReport {
    let want = |id: usize| only.map_or(true, |ids| ids.contains(&id));
    let run = || {
        let mut criteria = Vec::new();
        for id in (1..=7).filter(|&id| want(id)) {
            criteria.push(match id {
                1 => criterion_sphere(corpus),
                2 => criterion_gamma_orientable(),
                3 => criterion_gamma_nonorientable(),
                4 => criterion_bounds(corpus),
                5 => criterion_rerouting(corpus, opts.reroute_trials, opts.seed),
                6 => criterion_homotopic_triples(corpus),
                _ => criterion_oracles(corpus),
            });
        }
        SuiteReport { pass: criteria.iter().all(|c| c.pass), criteria }
    };
    match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, fixture};

    #[test]
    fn cube_antipodes_report() {
        let r = analyze(&cube(), 0, 7, true).unwrap();
        assert!(r.passes(), "{r:?}");
        let p = &r.pairs[0];
        assert_eq!(p.kappa, 3);
        assert!(p.wv_max_disjoint.unwrap() >= 3);
        assert_eq!(p.class_sizes, vec![3]);
    }

    #[test]
    fn cofacial_pairs_short_circuit() {
        let m = cube();
        let r = analyze(&m, 0, 3, false).unwrap();
        assert!(r.pairs[0].cofacial);
        assert_eq!(r.pairs[0].cofacial_paths.len(), 2);
        let r = analyze(&m, 0, 1, false).unwrap();
        assert_eq!(r.pairs[0].cofacial_paths, vec![vec![0, 1]]);
    }

    #[test]
    fn analysis_refuses_non_polyhedral_maps() {
        let f = fixture("h2_g2").unwrap();
        assert!(matches!(analyze(&f.map, 0, 1, false), Err(Error::NotPolyhedral(_))));
    }

    #[test]
    fn mislabelled_fixture_is_reported() {
        let mut f = fixture("h2_g2").unwrap();
        f.expect_polyhedral = true;
        let rep = criterion_homotopic_triples(&[f]);
        assert!(!rep.pass);
        assert!(rep.failures[0].contains("h2_g2") && rep.failures[0].contains("[POLY]"));
    }
}
