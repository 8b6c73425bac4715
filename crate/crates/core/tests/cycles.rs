mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use velo_core::cycles::{is_simple_cycle, rooted_cycle_count};
use velo_core::graph::strongly_connected_components;
use velo_core::{decompose_path, enumerate_cycles, path_displacement, DisplacementGraph, Error, PathRef};

/// Every edge subset that forms one simple cycle, written from its smallest
/// edge id.
fn brute_force_cycles(g: &DisplacementGraph) -> BTreeSet<Vec<usize>> {
    let m = g.edge_count();
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let chosen: Vec<usize> = (0..m).filter(|e| mask & (1 << e) != 0).collect();
        let mut outdeg = vec![0; g.vertex_count()];
        let mut indeg = vec![0; g.vertex_count()];
        for &e in &chosen {
            outdeg[g.edge(e).source] += 1;
            indeg[g.edge(e).target] += 1;
        }
        if outdeg.iter().zip(&indeg).any(|(&o, &i)| o != i || o > 1) {
            continue;
        }
        let mut walk = vec![chosen[0]];
        let start = g.edge(chosen[0]).source;
        let mut v = g.edge(chosen[0]).target;
        while v != start {
            let next = *chosen.iter().find(|&&e| g.edge(e).source == v).unwrap();
            walk.push(next);
            v = g.edge(next).target;
        }
        if walk.len() == chosen.len() {
            found.insert(walk);
        }
    }
    found
}

#[test]
fn johnson_matches_subset_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let g = common::random_graph(&mut rng, 5, 10, 2, 2);
        let cycles = enumerate_cycles(&g, 1_000_000).unwrap();
        let got: BTreeSet<Vec<usize>> = cycles.iter().map(|c| c.edges.clone()).collect();
        assert_eq!(got.len(), cycles.len(), "duplicates in {cycles:?}");
        assert_eq!(got, brute_force_cycles(&g), "graph:\n{}", velo_core::serialize_dgf(&g));
        for c in &cycles {
            assert!(is_simple_cycle(&g, &c.edges));
            assert_eq!(c.edges[0], *c.edges.iter().min().unwrap());
        }
        assert_eq!(
            rooted_cycle_count(&cycles),
            cycles.iter().map(|c| c.len()).sum::<usize>()
        );
    }
}

#[test]
fn enumeration_is_sorted_and_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let g = common::random_graph(&mut rng, 4, 8, 1, 1);
        let a = enumerate_cycles(&g, 1_000_000).unwrap();
        let b = enumerate_cycles(&g, 1_000_000).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].edges < w[1].edges));
    }
}

#[test]
fn budget_names_component() {
    let g = common::honeycomb();
    match enumerate_cycles(&g, 4) {
        Err(Error::BudgetExceeded { limit, context, .. }) => {
            assert_eq!(limit, 4);
            assert!(context.contains("{A, B}"), "{context}");
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn decomposition_bounds_on_random_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for seed in 0..100 {
        let g = common::random_strongly_connected(&mut rng, 5, 6, 2, 2);
        assert_eq!(strongly_connected_components(&g).len(), 1);
        let p = velo_core::dynamics::random_walk(&g, 0, 150, seed).unwrap();
        let dec = decompose_path(&g, &p).unwrap();
        let cycle_len: usize = dec.cycles.iter().map(|c| c.len()).sum();
        assert_eq!(cycle_len + dec.remainder.len(), p.len());
        assert!(dec.remainder.len() < g.vertex_count());
        let mut total = path_displacement(&g, &dec.remainder).unwrap();
        for c in &dec.cycles {
            assert!(is_simple_cycle(&g, &c.edges));
            for (t, x) in total.iter_mut().zip(c.displacement(&g)) {
                *t += x;
            }
        }
        assert_eq!(total, path_displacement(&g, &p).unwrap());
        let rem = path_displacement(&g, &dec.remainder).unwrap();
        let bound = g.max_displacement_norm() * g.vertex_count() as i64;
        assert!(rem.iter().all(|x| x.abs() < bound));
    }
}

#[test]
fn invalid_paths_are_rejected() {
    let g = common::honeycomb();
    assert!(decompose_path(&g, &PathRef::new(vec![0, 1])).is_err());
    assert!(decompose_path(&g, &PathRef::new(vec![42])).is_err());
    assert!(decompose_path(&g, &PathRef::default()).unwrap().cycles.is_empty());
}
