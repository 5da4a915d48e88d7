use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_richardson::classify::{classify_toric, sample_intervals, sample_toric_intervals};
use toric_richardson::families::{hypercube_constituent, hypercube_perms, is_dyadic};
use toric_richardson::geometry::hull;
use toric_richardson::io::{polytope_from_json, polytope_to_json};
use toric_richardson::moment::{moment_polytope, same_combinatorial_type};
use toric_richardson::mrgraph::{
    all_flag_minors, build_graph, default_reduced_word, flag_minor, flag_minor_poly,
    last_descent_reduced_word, symbolic_matrix,
};
use toric_richardson::perm::{bruhat_leq, covers_above, interval, interval_poset, r_polynomial};
use toric_richardson::plabic::{hypercube_graph, positroid_from_graph};
use toric_richardson::positroid::{constituent, grassmann_necklace, verify_matroid};
use toric_richardson::{Permutation, Subset};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::from_one_line(&w).unwrap())
}

/// One seeded comparable pair of `S_n`.
fn pair(n: usize, seed: u64) -> (Permutation, Permutation) {
    sample_intervals(n, 1, seed).pop().unwrap()
}

fn toric_pair(n: usize, seed: u64) -> (Permutation, Permutation) {
    sample_toric_intervals(n, 1, 1, seed).pop().unwrap()
}

fn inversions(p: &Permutation) -> usize {
    let w = p.one_line();
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] > w[j])
        .count()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn length_is_inversion_count(p in permutation(7)) {
        prop_assert_eq!(p.length(), inversions(&p));
        prop_assert_eq!(p.inverse().length(), p.length());
        prop_assert_eq!(Permutation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn covers_raise_length_by_one(p in permutation(6)) {
        for c in covers_above(&p, None) {
            prop_assert_eq!(c.upper.length(), c.lower.length() + 1);
            prop_assert!(bruhat_leq(&c.lower, &c.upper).unwrap());
            prop_assert_eq!(c.upper.clone(), c.lower.swap_positions(c.i - 1, c.j - 1));
        }
    }

    #[test]
    fn interval_matches_exhaustive_filter(n in 2usize..=5, seed in any::<u64>()) {
        let (v, w) = pair(n, seed);
        let iv = interval(&v, &w).unwrap();
        let brute = Permutation::all(n)
            .into_iter()
            .filter(|u| bruhat_leq(&v, u).unwrap() && bruhat_leq(u, &w).unwrap())
            .count();
        prop_assert_eq!(iv.len(), brute);
        for (r, rank) in iv.ranks().iter().enumerate() {
            prop_assert!(rank.iter().all(|u| u.length() == v.length() + r));
        }
    }

    #[test]
    fn r_polynomial_shape(n in 2usize..=5, seed in any::<u64>()) {
        let (v, w) = pair(n, seed);
        let d = w.length() - v.length();
        let r = r_polynomial(&v, &w).unwrap();
        prop_assert_eq!(r.degree(), Some(d));
        prop_assert!(r.is_monic());
        if d > 0 {
            prop_assert_eq!(r.eval(1), 0);
            let c = r.coeff(d - 1);
            prop_assert!((-(d as i64)..=0).contains(&c));
        }
    }

    #[test]
    fn interval_poset_counts_subintervals(n in 2usize..=4, seed in any::<u64>()) {
        let (v, w) = pair(n, seed);
        let iv = interval(&v, &w).unwrap();
        let pairs = (0..iv.len()).flat_map(|a| (0..iv.len()).map(move |b| (a, b))).filter(|&(a, b)| iv.leq(a, b)).count();
        let ip = interval_poset(&iv);
        prop_assert_eq!(ip.len(), pairs + 1);
        prop_assert_eq!(ip.poset.top(), ip.members.iter().position(|m| *m == Some((0, iv.len() - 1))));
    }

    #[test]
    fn toric_predicates_agree(n in 2usize..=5, seed in any::<u64>()) {
        let (v, w) = pair(n, seed);
        let t = classify_toric(&v, &w).unwrap();
        prop_assert!(t.by_two_crown == t.is_toric && t.by_lattice == t.is_toric);
        prop_assert!(t.by_interval_poset_lattice == t.is_toric && t.by_r_poly == t.is_toric);
    }

    #[test]
    fn toricity_passes_to_subintervals(n in 3usize..=5, seed in any::<u64>()) {
        let (v, w) = toric_pair(n, seed);
        let iv = interval(&v, &w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let a = rand::Rng::gen_range(&mut rng, 0..iv.len());
            let b = rand::Rng::gen_range(&mut rng, 0..iv.len());
            if iv.leq(a, b) {
                prop_assert!(classify_toric(iv.element(a), iv.element(b)).unwrap().is_toric);
            }
        }
    }

    #[test]
    fn constituents_are_matroids_with_bases_in_necklace(n in 2usize..=5, seed in any::<u64>()) {
        let (v, w) = pair(n, seed);
        let iv = interval(&v, &w).unwrap();
        for k in 1..n {
            let c = constituent(&iv, k);
            prop_assert!(verify_matroid(&c));
            prop_assert!(grassmann_necklace(&c).entries.iter().all(|e| c.contains(*e)));
            prop_assert_eq!(&c.dual().dual().bases, &c.bases);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn lgv_agrees_with_symbolic_minors(n in 2usize..=4, seed in any::<u64>()) {
        let (v, w) = pair(n, seed);
        let word = default_reduced_word(&w);
        let graph = build_graph(&v, &word).unwrap();
        let symbolic = all_flag_minors(&symbolic_matrix(&graph));
        let iv = interval(&v, &w).unwrap();
        for (rows, poly) in &symbolic {
            prop_assert_eq!(&flag_minor_poly(&graph, *rows), poly);
            let terms = flag_minor(&graph, *rows);
            let mut exps: Vec<_> = terms.iter().map(|m| m.exponents.clone()).collect();
            exps.sort();
            exps.dedup();
            prop_assert_eq!(exps.len(), terms.len());
            let k = rows.len();
            if (1..n).contains(&k) {
                prop_assert_eq!(!poly.is_zero(), constituent(&iv, k).contains(*rows));
            }
        }
    }

    #[test]
    fn toric_minors_are_squarefree_monic(n in 3usize..=5, seed in any::<u64>()) {
        let (v, w) = toric_pair(n, seed);
        let graph = build_graph(&v, &default_reduced_word(&w)).unwrap();
        let iv = interval(&v, &w).unwrap();
        for k in 1..n {
            for rows in constituent(&iv, k).bases {
                let terms = flag_minor(&graph, rows);
                prop_assert_eq!(terms.len(), 1);
                prop_assert!(terms[0].is_squarefree_monic());
            }
        }
    }

    #[test]
    fn combinatorial_type_ignores_the_word(n in 3usize..=4, seed in any::<u64>()) {
        let (v, w) = toric_pair(n, seed);
        let a = moment_polytope(&v, &w, &default_reduced_word(&w)).unwrap();
        let b = moment_polytope(&v, &w, &last_descent_reduced_word(&w)).unwrap();
        prop_assert!(same_combinatorial_type(&a, &b).unwrap());
    }

    #[test]
    fn hull_is_idempotent(points in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..12)) {
        let p = hull(&points);
        for x in &points {
            for f in p.facets() {
                prop_assert!(f.value(x) <= f.offset);
            }
            for e in p.equations() {
                prop_assert_eq!(e.value(x), e.offset);
            }
        }
        let again = hull(p.vertices());
        prop_assert_eq!(again.vertices(), p.vertices());
        prop_assert_eq!(again.facets(), p.facets());
        let back = polytope_from_json(&polytope_to_json(&p).unwrap()).unwrap();
        prop_assert_eq!(back.vertices(), p.vertices());
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn dyadic_criterion_matches_membership(seed in any::<u64>()) {
        let fam = hypercube_perms(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Permutation::random(8, &mut rng);
        let member = bruhat_leq(&fam.v, &u).unwrap() && bruhat_leq(&u, &fam.w).unwrap();
        prop_assert_eq!(is_dyadic(&u, 3), member);
    }

    #[test]
    fn hypercube_complement_law(n in 1usize..=3, k in 1usize..8) {
        let size = 1 << n;
        prop_assume!(k < size);
        let c = hypercube_constituent(n, k).unwrap();
        let dual = hypercube_constituent(n, size - k).unwrap();
        let complemented: std::collections::BTreeSet<Subset> = dual.bases.iter().map(|b| b.complement(size)).collect();
        prop_assert_eq!(&c.bases, &complemented);
        let swapped = positroid_from_graph(&hypercube_graph(n, k).unwrap().color_swapped()).unwrap();
        prop_assert_eq!(swapped, dual.bases);
    }
}
