use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posray::injection::{self, FailureKind};
use posray::lediagram::{parse_diagram, Vertex};
use posray::paths::has_vertex_disjoint_family;
use posray::rayleigh::{self, all_pair_deltas, rayleigh_delta_eval, rayleigh_delta_poly};
use posray::{is_basis, LabelSet, LeDiagram, Positroid, WeightVector};

fn diagram() -> impl Strategy<Value = LeDiagram> {
    (1usize..=8)
        .prop_flat_map(|n| (Just(n), 0..=n, 0.0f64..=1.0, any::<u64>()))
        .prop_map(|(n, r, density, seed)| LeDiagram::random(n, r, density, seed).unwrap())
}

fn positive_weights(n: usize, seed: u64) -> WeightVector {
    WeightVector::sample_grid(&mut ChaCha8Rng::seed_from_u64(seed), n, true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagrams_round_trip_through_json(d in diagram()) {
        prop_assert!(d.validate().is_empty());
        prop_assert_eq!(d.le_closure(), d.clone());
        let back = parse_diagram(&d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn graph_shape(d in diagram()) {
        let g = d.build_graph();
        prop_assert!(g.is_acyclic());
        prop_assert_eq!(g.topological_order().map(|o| o.len()), Some(g.vertex_count()));
        let mut sources = LabelSet::EMPTY;
        for v in 0..g.vertex_count() {
            match g.vertex(v) {
                Vertex::Boundary(label) if d.boundary_basis().contains(label) => {
                    prop_assert!(g.in_edges(v).is_empty());
                    prop_assert!(g.out_edges(v).len() <= 1);
                    sources.insert(label);
                }
                Vertex::Boundary(_) => prop_assert!(g.out_edges(v).is_empty()),
                Vertex::Dot(..) => prop_assert!(!g.out_edges(v).is_empty()),
            }
        }
        prop_assert_eq!(sources, d.boundary_basis());
    }

    #[test]
    fn flow_agrees_with_backtracking(d in diagram()) {
        let g = d.build_graph();
        for set in LabelSet::subsets_of_size(d.n(), d.r()) {
            prop_assert_eq!(is_basis(&g, set).unwrap(), has_vertex_disjoint_family(&g, set), "{}", set);
        }
    }

    #[test]
    fn enumerated_positroids_are_matroids(d in diagram()) {
        let p = Positroid::enumerate(&d.build_graph());
        prop_assert!(p.contains(d.boundary_basis()));
        prop_assert!(p.exchange_check());
    }

    #[test]
    fn minors_match_filtering(d in diagram(), a in 1usize..=8, b in 1usize..=8) {
        let p = Positroid::enumerate(&d.build_graph());
        let n = d.n();
        let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
        for (contract, delete) in [
            (LabelSet::EMPTY, LabelSet::EMPTY),
            (LabelSet::singleton(a), LabelSet::EMPTY),
            (LabelSet::EMPTY, LabelSet::singleton(a)),
            (LabelSet::singleton(a), LabelSet::singleton(b)),
            (LabelSet::from_labels([a, b]), LabelSet::EMPTY),
        ] {
            if !contract.is_disjoint(delete) {
                continue;
            }
            let minor = p.minor(contract, delete).unwrap();
            let containing: BTreeSet<LabelSet> = p.bases().iter().copied().filter(|s| contract.is_subset(*s)).collect();
            let avoiding: BTreeSet<LabelSet> = p.bases().iter().copied().filter(|s| s.is_disjoint(delete)).collect();
            let expected: Vec<LabelSet> = containing.intersection(&avoiding).copied().collect();
            prop_assert_eq!(&minor, &expected);
            let ones = p.enumerator_eval(&WeightVector::ones(n), contract, delete).unwrap();
            prop_assert_eq!(ones, posray::weights::int(minor.len() as i64));
        }
    }

    #[test]
    fn delta_routes_agree(d in diagram(), seed in any::<u64>()) {
        let p = Positroid::enumerate(&d.build_graph());
        let n = d.n();
        prop_assume!(n >= 2);
        let w = positive_weights(n, seed);
        let table = all_pair_deltas(&p, &w).unwrap();
        for e in 1..=n {
            for f in 1..=n {
                if e == f {
                    continue;
                }
                let direct = rayleigh_delta_eval(&p, e, f, &w, true).unwrap();
                prop_assert_eq!(&table[e - 1][f - 1], &direct);
                prop_assert_eq!(&rayleigh_delta_poly(&p, e, f).unwrap().eval(&w), &direct);
                prop_assert_eq!(&rayleigh_delta_eval(&p, f, e, &w, true).unwrap(), &direct);
                prop_assert!(!direct.is_negative());
            }
        }
    }

    #[test]
    fn injection_checks_other_than_basis_collisions(d in diagram()) {
        let g = d.build_graph();
        let p = Positroid::enumerate(&g);
        for report in injection::verify_all_pairs(&g, &p, false).unwrap() {
            prop_assert!(report.failures.iter().all(|x| x.kind == FailureKind::NotInjective), "{:?}", report.failures);
            prop_assert_eq!(report.distinct_configurations, report.domain);
            prop_assert!(report.domain <= report.codomain);
            prop_assert!(report.max_moves <= report.step_guard);
        }
    }
}

/// Number of nonempty minors, by brute force over all `3^n` assignments.
fn nonempty_minors(p: &Positroid) -> u64 {
    let n = p.n();
    let mut count = 0;
    for code in 0..3u32.pow(n as u32) {
        let (mut contract, mut delete, mut c) = (LabelSet::EMPTY, LabelSet::EMPTY, code);
        for label in 1..=n {
            match c % 3 {
                0 => contract.insert(label),
                1 => delete.insert(label),
                _ => {}
            }
            c /= 3;
        }
        if !p.minor(contract, delete).unwrap().is_empty() {
            count += 1;
        }
    }
    count
}

#[test]
fn balanced_on_random_positroids() {
    for seed in 0..50u64 {
        let n = 2 + (seed as usize % 7);
        let d = LeDiagram::random(n, 1 + seed as usize % (n - 1), 0.5, seed).unwrap();
        let p = Positroid::enumerate(&d.build_graph());
        let report = rayleigh::balanced_check(&p).unwrap();
        assert!(report.holds(), "seed {seed}: {:?}", report.violations);
        assert_eq!(report.minors_checked, nonempty_minors(&p), "seed {seed}");
    }
}

#[test]
fn random_diagram_extremes() {
    for seed in 0..20 {
        let full = LeDiagram::random(8, 4, 1.0, seed).unwrap();
        assert_eq!(full.dots().len(), full.cells().len());
        let empty = LeDiagram::random(8, 4, 0.0, seed).unwrap();
        assert!(empty.dots().is_empty());
        assert_eq!(Positroid::enumerate(&empty.build_graph()).len(), 1);
    }
}

#[test]
fn sampled_reports_are_consistent() {
    let d = LeDiagram::random(7, 3, 0.6, 11).unwrap();
    let p = Positroid::enumerate(&d.build_graph());
    for report in rayleigh::sample_rayleigh(&p, 40, 5, false).unwrap() {
        let min = report.min_delta.clone().unwrap();
        assert!(report.violations.iter().all(|v| v.delta.is_negative() && v.delta >= min));
        assert!(report.holds());
    }
}
