//! Deterministic fixtures for the benchmarks.

use loopdiag::catalog;
use loopdiag::enumerate::EnumConfig;
use loopdiag::frobenius::{make_truncated_polynomial, FrobeniusAlgebra};
use loopdiag::hochschild::{HochschildElement, Profile};
use loopdiag::random::{random_composable_pair, random_diagram, random_signature, RandomConfig};
use loopdiag::tensor::{q, TensorElement};
use loopdiag::{Chain, LoopedDiagram, Signature};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_diagrams(n: usize, seed: u64) -> Vec<LoopedDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = RandomConfig { max_valence: 5, max_genus: 2, max_word_len: 8, ..RandomConfig::default() };
    (0..n)
        .map(|_| {
            let sig = random_signature(&mut rng, 3, 1, (1, 3), 1);
            random_diagram(&mut rng, sig, &cfg)
        })
        .collect()
}

pub fn composable_pairs(n: usize, seed: u64) -> Vec<(Chain, Chain)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = RandomConfig::default();
    (0..n)
        .map(|_| {
            let (y, x) = random_composable_pair(&mut rng, &cfg, 3);
            (y.into(), x.into())
        })
        .collect()
}

/// `sh^3` on `x ⊗ x ⊗ x^2 ⊗ x` in ℚ[x]/(x^3).
pub fn shuffle_eval() -> (FrobeniusAlgebra, Chain, HochschildElement) {
    let a = make_truncated_polynomial(3);
    let mut t = TensorElement::zero(4);
    t.add_term(vec![1, 1, 2, 1], q(1));
    let h = HochschildElement::new(Profile::new(vec![3], 0), t).expect("arity matches");
    (a, catalog::sh(3), h)
}

/// The 1-loop, 1-output cacti slice up to degree 3.
pub fn cacti_slice() -> (Signature, EnumConfig) {
    let cfg = EnumConfig {
        max_degree: 3,
        max_word_len: 3,
        positive_only: true,
        genus_slack: false,
        disjoint_loops: true,
        ..EnumConfig::default()
    };
    (Signature::new(1, 0, 1, 0), cfg)
}
