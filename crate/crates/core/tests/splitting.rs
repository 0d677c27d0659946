use std::collections::{BTreeMap, BTreeSet, HashMap};

use loopdiag::catalog::{sh, sh_irr};
use loopdiag::compose::{compose_tilde, s_bar, singular_vertices};
use loopdiag::enumerate::{enumerate_generators, EnumConfig, SparseMatrix};
use loopdiag::snf::rank_mod_prime;
use loopdiag::random::{random_composable_pair, random_diagram, random_signature, RandomConfig};
use loopdiag::split::{
    chain_to_irreducible, factor_irreducible, nonconstant_part, p_cst, project_constant, project_constant_diagram, to_irreducible, IrrDiagram,
    NonConstChain,
};
use loopdiag::{compose, differential, Chain, LoopedDiagram, Seg, Signature};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rank of the images of `gens` under `f`.
fn rank_of_images(gens: &[LoopedDiagram], f: impl Fn(&LoopedDiagram) -> Chain) -> usize {
    rank_of_chains(&gens.iter().map(f).collect::<Vec<_>>())
}

fn rank_of_chains(chains: &[Chain]) -> usize {
    let mut index: HashMap<LoopedDiagram, usize> = HashMap::new();
    let cols = chains
        .iter()
        .map(|x| {
            x.iter()
                .map(|(d, k)| {
                    let n = index.len();
                    (*index.entry(d.clone()).or_insert(n), i64::try_from(k).unwrap())
                })
                .collect()
        })
        .collect();
    rank_mod_prime(&SparseMatrix { rows: index.len(), cols })
}

fn any_predicate(_: &LoopedDiagram) -> bool {
    true
}

fn slice(sig: Signature, max_degree: usize, positive_only: bool) -> Vec<Vec<LoopedDiagram>> {
    let cfg = EnumConfig { max_degree, max_word_len: 3, genus_slack: false, positive_only, ..EnumConfig::default() };
    enumerate_generators(sig, &cfg, &any_predicate).unwrap()
}

#[test]
fn p_cst_is_identity_on_partly_constant_generators() {
    for (sig, max_degree) in [(Signature::new(1, 0, 1, 0), 3), (Signature::new(2, 0, 1, 0), 2)] {
        let mut seen = 0;
        for gens in slice(sig, max_degree, false) {
            for d in gens.iter().filter(|d| d.is_partly_constant()) {
                let c = Chain::from_diagram(d.clone());
                assert_eq!(p_cst(&c), c, "{d}");
                assert!(nonconstant_part(&c).is_zero());
                seen += 1;
            }
        }
        assert!(seen > 0);
    }
}

#[test]
fn constant_and_nonconstant_dimensions_add_up() {
    let sig = Signature::new(1, 0, 1, 0);
    for (k, gens) in slice(sig, 4, false).iter().enumerate() {
        let cst = rank_of_images(gens, |d| p_cst(&Chain::from_diagram(d.clone())));
        let rest = rank_of_images(gens, |d| nonconstant_part(&Chain::from_diagram(d.clone())).expand());
        let n_cst = gens.iter().filter(|d| d.is_partly_constant()).count();
        assert_eq!(cst, n_cst, "degree {k}");
        assert_eq!(cst + rest, gens.len(), "degree {k}");
    }
}

// Positive slices only: with negative segments two irreducible factors can be
// mutually inverse, and then `<a, a^-1> = -<a> - <a^-1>` mixes types.
#[test]
fn type_components_add_up() {
    for (sig, max_degree) in [(Signature::new(1, 0, 1, 0), 4), (Signature::new(2, 0, 1, 0), 2)] {
        for (k, gens) in slice(sig, max_degree, true).iter().enumerate() {
            let parts: Vec<BTreeMap<Vec<usize>, Chain>> =
                gens.iter().map(|d| to_irreducible(d).by_type().into_iter().map(|(t, c)| (t, c.expand())).collect()).collect();
            let types: BTreeSet<&Vec<usize>> = parts.iter().flat_map(|p| p.keys()).collect();
            let total: usize = types
                .iter()
                .map(|&t| {
                    let images: Vec<Chain> = parts.iter().map(|p| p.get(t).cloned().unwrap_or_default()).collect();
                    rank_of_chains(&images)
                })
                .sum();
            assert_eq!(total, gens.len(), "{sig} degree {k}");
        }
    }
}

#[test]
fn inverse_factors_mix_types() {
    let d = slice(Signature::new(1, 0, 1, 0), 1, false)[1]
        .iter()
        .find(|d| d.loops[0].word == [Seg::neg(1, 1), Seg::neg(1, 2), Seg::pos(1, 1)])
        .cloned()
        .unwrap();
    let a = vec![Seg::neg(1, 1)];
    let a_inv = vec![Seg::pos(1, 1)];
    let pair = IrrDiagram { diagram: d.diagram.clone(), factors: vec![vec![a.clone(), a_inv.clone()]] };
    let single = |f: Vec<Seg>| IrrDiagram { diagram: d.diagram.clone(), factors: vec![vec![f]] }.expand();
    assert_eq!(pair.expand(), single(a).plus(&single(a_inv)).neg());
}

#[test]
fn differential_never_lowers_type() {
    for (sig, max_degree) in [(Signature::new(1, 0, 1, 0), 3), (Signature::new(2, 0, 1, 0), 2)] {
        for gens in slice(sig, max_degree, true) {
            for d in &gens {
                for x in to_irreducible(d).terms.keys() {
                    let t = x.type_of();
                    for face in chain_to_irreducible(&differential(&x.expand())).terms.keys() {
                        let u = face.type_of();
                        assert!(u.iter().zip(&t).all(|(a, b)| a >= b), "{d}: {t:?} -> {u:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn composition_through_s_bar() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let cfg = RandomConfig::default();
    let (mut tested, mut with_singular) = (0, 0);
    while tested < 200 {
        let (y, x) = random_composable_pair(&mut rng, &cfg, 3);
        if y.is_partly_constant() || x.is_partly_constant() {
            continue;
        }
        let (ny, nx) = (nonconstant_part(&y.clone().into()), nonconstant_part(&x.clone().into()));
        let lhs = compose(&ny.expand(), &nx.expand()).unwrap();
        let rhs = compose_tilde(&ny, &s_bar(&nx)).unwrap().expand();
        assert_eq!(lhs, rhs, "y = {y}\nx = {x}");
        if !singular_vertices(&x).is_empty() {
            with_singular += 1;
        }
        tested += 1;
    }
    assert!(with_singular > 20, "only {with_singular} pairs with singular vertices");
}

#[test]
fn sh2_expansion_signs() {
    // Subsets {1,2}, {1}, {2}, {} carry +, -, -, +; the two singletons give the same diagram.
    let x = sh(2);
    let by_len: HashMap<usize, i64> = x.iter().map(|(d, k)| (d.loops[0].word.len(), i64::try_from(k).unwrap())).collect();
    assert_eq!(by_len, HashMap::from([(2, 1), (1, -2), (0, 1)]));
    assert_eq!(sh_irr(2).type_of(), vec![2]);
    assert_eq!(chain_to_irreducible(&x).by_type().into_keys().collect::<Vec<_>>(), vec![vec![2]]);
}

#[test]
fn factoring_examples() {
    let lambda2 = loopdiag::catalog::lambda(2);
    let d = lambda2.diagrams().find(|d| !d.is_partly_constant()).unwrap();
    let f = factor_irreducible(d, 1);
    assert_eq!(f, vec![vec![Seg::pos(1, 1)], vec![Seg::pos(1, 1)]]);
    let cst = project_constant_diagram(&loopdiag::identity_of(1, 0), &[1]);
    assert!(factor_irreducible(&cst, 1).is_empty());
    let b = loopdiag::catalog::b();
    assert_eq!(factor_irreducible(&b, 1), vec![b.loops[0].word.clone()]);
}

#[test]
fn single_factor_brackets_are_nonconstant_parts() {
    let b = loopdiag::catalog::b();
    let x = IrrDiagram { diagram: b.diagram.clone(), factors: vec![vec![b.loops[0].word.clone()]] };
    assert_eq!(x.expand(), nonconstant_part(&b.clone().into()).expand());
}

fn random_looped(seed: u64) -> LoopedDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig = random_signature(&mut rng, 2, 1, (1, 2), 1);
    random_diagram(&mut rng, sig, &RandomConfig::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn projections_compose(seed in any::<u64>(), s in 0u8..4, t in 0u8..4) {
        let d = random_looped(seed);
        let n = d.sig().n_loops;
        let set = |m: u8| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect::<Vec<_>>();
        let (s, t) = (set(s), set(t));
        let mut st = s.clone();
        st.extend(t.iter().copied());
        let c = Chain::from_diagram(d);
        prop_assert_eq!(project_constant(&project_constant(&c, &s), &t), project_constant(&c, &st));
        prop_assert_eq!(project_constant(&c, &[]), c);
    }

    #[test]
    fn projections_are_chain_maps(seed in any::<u64>(), t in 0u8..4) {
        let d = random_looped(seed);
        let t: Vec<usize> = (1..=d.sig().n_loops).filter(|i| t >> (i - 1) & 1 == 1).collect();
        let c = Chain::from_diagram(d);
        prop_assert_eq!(differential(&project_constant(&c, &t)), project_constant(&differential(&c), &t));
        prop_assert_eq!(differential(&p_cst(&c)), p_cst(&differential(&c)));
    }

    #[test]
    fn splitting_recombines(seed in any::<u64>()) {
        let c = Chain::from_diagram(random_looped(seed));
        let rest = nonconstant_part(&c).expand();
        prop_assert_eq!(rest.plus(&p_cst(&c)), c.clone());
        prop_assert!(p_cst(&rest).is_zero());
    }

    #[test]
    fn irreducible_round_trip(seed in any::<u64>()) {
        let c = Chain::from_diagram(random_looped(seed));
        let irr = chain_to_irreducible(&c);
        prop_assert_eq!(irr.expand(), c);
        for (t, part) in irr.by_type() {
            prop_assert!(part.terms.keys().all(|d| d.type_of() == t));
        }
    }

    #[test]
    fn bracket_form_ignores_partly_constant_reps(seed in any::<u64>()) {
        let d = random_looped(seed);
        let c = NonConstChain::from_reps(Chain::from_diagram(d.clone()));
        prop_assert_eq!(c.is_zero(), d.is_partly_constant());
    }
}
