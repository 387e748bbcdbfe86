use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wvmaps::constructions::{fixture_corpus, Fixture};
use wvmaps::cut::is_contractible;
use wvmaps::homotopy::{cut_along_paths, paths_homotopic};
use wvmaps::nonrevisit::{minimize_revisits_with, random_path_system};
use wvmaps::oracle::{naive_exists_wv_path, naive_max_disjoint_paths, naive_wv_paths};
use wvmaps::search::{enumerate_wv_paths, exists_wv_path};
use wvmaps::smap::{parse_smap, write_smap};
use wvmaps::SurfaceMap;

fn corpus() -> Vec<Fixture> {
    fixture_corpus()
}

fn pick(seed: usize, small: bool) -> SurfaceMap {
    let all: Vec<Fixture> = corpus()
        .into_iter()
        .filter(|f| f.expect_polyhedral && (!small || f.map.vertex_count() <= 12))
        .collect();
    all[seed % all.len()].map.clone()
}

#[test]
fn smap_round_trip_on_corpus() {
    for f in corpus() {
        let text = write_smap(&f.map);
        let back = parse_smap(&text).unwrap();
        assert_eq!(write_smap(&back), text, "{}", f.name);
        assert_eq!(back.euler_char(), f.map.euler_char());
        assert_eq!(back.canonical_form(), f.map.canonical_form(), "{}", f.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chords_keep_euler_char(seed in 0usize..1000, a in 0usize..100, b in 0usize..100) {
        let m = pick(seed, false);
        let f = seed % m.face_count();
        let len = m.face(f).vertices.len();
        prop_assume!(len >= 4);
        let (i, j) = (a % len, b % len);
        prop_assume!(i != j && (i + 1) % len != j && (j + 1) % len != i);
        let (m2, e) = m.insert_chord(f, i, j).unwrap();
        prop_assert_eq!(m2.euler_char(), m.euler_char());
        prop_assert_eq!(m2.face_count(), m.face_count() + 1);
        prop_assert_eq!(m2.orientable(), m.orientable());
        let back = m2.delete_edge(e).unwrap();
        prop_assert_eq!(back.canonical_form(), m.canonical_form());
    }

    #[test]
    fn contraction_keeps_euler_char(seed in 0usize..1000, e in 0usize..1000) {
        let m = pick(seed, false);
        let e = e % m.edge_count();
        let (m2, _) = m.contract_edge(e).unwrap();
        prop_assert_eq!(m2.vertex_count(), m.vertex_count() - 1);
        prop_assert_eq!(m2.euler_char(), m.euler_char());
        prop_assert_eq!(m2.orientable(), m.orientable());
    }

    #[test]
    fn pruned_search_matches_naive(seed in 0usize..1000, x in 0usize..12, y in 0usize..12) {
        let m = pick(seed, true);
        let n = m.vertex_count();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y);
        let mut fast = enumerate_wv_paths(&m, x, y).unwrap();
        fast.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        prop_assert_eq!(&fast, &naive_wv_paths(&m, x, y).unwrap());
        prop_assert_eq!(exists_wv_path(&m, x, y).unwrap().is_some(), naive_exists_wv_path(&m, x, y).unwrap());
        let (k, sys) = wvmaps::flow::local_connectivity(&m, x, y).unwrap();
        prop_assert_eq!(k, naive_max_disjoint_paths(&m, x, y).unwrap());
        prop_assert_eq!(sys.len(), k);
    }

    #[test]
    fn path_pair_cuts_conserve_euler_char(seed in 0usize..1000, x in 0usize..40, y in 0usize..40, s in any::<u64>()) {
        let m = pick(seed, false);
        let n = m.vertex_count();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let sys = random_path_system(&m, x, y, 4, &mut rng).unwrap();
        for a in 0..sys.len() {
            for b in a + 1..sys.len() {
                let (p, q) = (&sys.paths[a], &sys.paths[b]);
                let cut = cut_along_paths(&m, p, q).unwrap();
                prop_assert_eq!(cut.total_euler_char(), m.euler_char());
                let disk = cut.disk_sides().len() > 0;
                prop_assert_eq!(paths_homotopic(&m, p, q).unwrap(), disk);
                if m.euler_char() == 2 {
                    prop_assert!(disk);
                }
            }
        }
    }

    #[test]
    fn face_boundaries_are_contractible(seed in 0usize..1000) {
        let m = pick(seed, false);
        for f in m.faces() {
            let c = wvmaps::cut::DartCycle(f.darts.clone());
            prop_assert!(is_contractible(&m, &c).unwrap());
        }
    }

    #[test]
    fn minimizing_never_increases_revisits(seed in 0usize..1000, x in 0usize..40, y in 0usize..40, s in any::<u64>()) {
        let m = pick(seed, false);
        let n = m.vertex_count();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y && !m.cofacial(x, y));
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let sys = random_path_system(&m, x, y, 6, &mut rng).unwrap();
        prop_assume!(sys.len() >= 3);
        let done = minimize_revisits_with(&m, &sys, Some(&mut rng)).unwrap();
        prop_assert!(done.final_r <= done.initial_r);
        prop_assert_eq!(done.system.len(), sys.len());
        done.system.validate().unwrap();
        // every step drops r; on the sphere nothing is left
        for w in done.steps.iter() {
            prop_assert!(w.new_r < w.old_r);
        }
        if m.euler_char() == 2 {
            prop_assert_eq!(done.final_r, 0);
        }
    }
}
