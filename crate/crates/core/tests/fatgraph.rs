use loopdiag::catalog;
use loopdiag::fatgraph::{boundary_cycles, functor_k, FatGraph};
use loopdiag::{identity_of, Error, Signature};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn l_n_has_one_cycle() {
    for n in 1..=6 {
        let white = vec![(0..n).collect::<Vec<_>>()];
        let labels: Vec<(usize, usize)> = (0..n).map(|h| (h, h + 1)).collect();
        let g = FatGraph::from_vertices(Signature::new(0, n, 1, 0), &white, &[], &[], &labels).unwrap();
        assert_eq!(boundary_cycles(&g).len(), 1);
        assert_eq!(g.degree().unwrap(), n - 1);
        assert_eq!(functor_k(&g).unwrap(), catalog::l(n));
    }
}

#[test]
fn k_of_identity() {
    let g = FatGraph::from_vertices(Signature::new(1, 0, 1, 0), &[vec![0]], &[], &[], &[(0, 1)]).unwrap();
    assert_eq!(functor_k(&g).unwrap(), identity_of(1, 0));
}

#[test]
fn k_of_coproduct_representative() {
    // Black vertex (leaf, to white 1, to white 2).
    let g = FatGraph::from_vertices(Signature::new(1, 0, 2, 0), &[vec![0], vec![1]], &[vec![2, 3, 4]], &[(3, 0), (4, 1)], &[(2, 1)])
        .unwrap();
    let k = functor_k(&g).unwrap();
    assert_eq!(k, catalog::delta());
    assert_eq!(k.canonical_key(), catalog::delta().canonical_key());
}

#[test]
fn two_leaves_in_one_cycle_are_rejected() {
    // The pr shape: both loop leaves on one black vertex share a boundary cycle.
    let g = FatGraph::from_vertices(Signature::new(2, 0, 1, 0), &[vec![0]], &[vec![1, 2, 3]], &[(3, 0)], &[(1, 1), (2, 2)]).unwrap();
    assert_eq!(functor_k(&g), Err(Error::LeafNotSoleInCycle(1)));
}

#[test]
fn double_edge_gives_genus() {
    // u = (to white, a, b), v = (leaf, b', a'): the double edge u-v carries a cycle.
    let g = FatGraph::from_vertices(
        Signature::new(0, 1, 1, 0),
        &[vec![0]],
        &[vec![1, 2, 3], vec![4, 5, 6]],
        &[(0, 1), (2, 6), (3, 5)],
        &[(4, 1)],
    )
    .unwrap();
    let k = functor_k(&g).unwrap();
    assert_eq!(k.diagram.blocks.len(), 1);
    assert_eq!(k.diagram.blocks[0].genus, 1);
}

/// Random trivalent fat graph with labeled black leaves and some labeled white leaves.
fn random_fat_graph(seed: u64) -> Option<FatGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_white = rng.gen_range(1..=2);
    let n_black = rng.gen_range(0..=3);
    let mut next = 0;
    let mut white = Vec::new();
    for _ in 0..n_white {
        let k = rng.gen_range(1..=3);
        white.push((next..next + k).collect::<Vec<_>>());
        next += k;
    }
    let mut black = Vec::new();
    for _ in 0..n_black {
        black.push(vec![next, next + 1, next + 2]);
        next += 3;
    }
    let mut hs: Vec<usize> = (0..next).collect();
    hs.shuffle(&mut rng);
    let n_edges = rng.gen_range(0..=next / 2);
    let edges: Vec<(usize, usize)> = (0..n_edges).map(|e| (hs[2 * e], hs[2 * e + 1])).collect();
    let leaves = &hs[2 * n_edges..];
    let is_black = |h: usize| h >= white.iter().map(|v| v.len()).sum::<usize>();
    let mut labeled: Vec<usize> = leaves.iter().copied().filter(|&h| is_black(h) || rng.gen_bool(0.5)).collect();
    labeled.shuffle(&mut rng);
    let n_loops = rng.gen_range(0..=labeled.len());
    let labels: Vec<(usize, usize)> = labeled.iter().enumerate().map(|(i, &h)| (h, i + 1)).collect();
    FatGraph::from_vertices(Signature::new(n_loops, 0, n_white, labeled.len() - n_loops), &white, &black, &edges, &labels).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn k_preserves_degree_and_counts_loops(seed in any::<u64>()) {
        if let Some(g) = random_fat_graph(seed) {
            match functor_k(&g) {
                Ok(x) => {
                    prop_assert_eq!(x.degree(), g.degree().unwrap());
                    let labeled_cycles = boundary_cycles(&g)
                        .iter()
                        .filter(|c| c.iter().any(|h| g.leaf_labels.get(h).is_some_and(|&l| l <= g.sig.n_loops)))
                        .count();
                    prop_assert_eq!(x.loops.len(), labeled_cycles);
                    prop_assert!(x.classify().positively_oriented);
                }
                Err(e) => prop_assert!(matches!(e, Error::LeafNotSoleInCycle(_))),
            }
        }
    }

    #[test]
    fn every_half_edge_in_one_cycle(seed in any::<u64>()) {
        if let Some(g) = random_fat_graph(seed) {
            let mut all: Vec<usize> = boundary_cycles(&g).concat();
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.n_half_edges()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn random_graphs_reach_k() {
    let ok = (0..300).filter_map(random_fat_graph).filter(|g| functor_k(g).is_ok_and(|x| !x.loops.is_empty())).count();
    assert!(ok > 30, "only {ok} random graphs with loops");
}
