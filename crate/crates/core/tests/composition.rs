use loopdiag::chain::differential;
use loopdiag::random::{random_composable_pair, random_composable_triple, RandomConfig};
use loopdiag::{compose, identity_of, Chain};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn chain_map_identity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = RandomConfig::default();
    let mut nonzero = 0;
    for _ in 0..500 {
        let (y, x) = random_composable_pair(&mut rng, &cfg, 3);
        let (cy, cx) = (Chain::from_diagram(y.clone()), Chain::from_diagram(x.clone()));
        let yx = compose(&cy, &cx).unwrap();
        if !yx.is_zero() {
            nonzero += 1;
        }
        let lhs = differential(&yx);
        let sign = if x.degree() % 2 == 0 { 1 } else { -1 };
        let rhs = compose(&differential(&cy), &cx).unwrap().scaled(&BigInt::from(sign)).plus(&compose(&cy, &differential(&cx)).unwrap());
        assert_eq!(lhs, rhs, "y = {y}\nx = {x}\nd(yx) = {lhs}\nrhs = {rhs}");
    }
    assert!(nonzero > 100, "only {nonzero} nonzero composites");
}

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = RandomConfig { max_valence: 3, ..RandomConfig::default() };
    for _ in 0..200 {
        let (z, y, x) = random_composable_triple(&mut rng, &cfg, 2);
        let (cz, cy, cx) = (Chain::from(z.clone()), Chain::from(y.clone()), Chain::from(x.clone()));
        let left = compose(&compose(&cz, &cy).unwrap(), &cx).unwrap();
        let right = compose(&cz, &compose(&cy, &cx).unwrap()).unwrap();
        assert_eq!(left, right, "z = {z}\ny = {y}\nx = {x}");
    }
}

#[test]
fn identities_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = RandomConfig::default();
    for _ in 0..200 {
        let (_, x) = random_composable_pair(&mut rng, &cfg, 3);
        let s = x.sig();
        let cx = Chain::from(x.clone());
        assert_eq!(compose(&Chain::from(identity_of(s.n_white, s.m_out)), &cx).unwrap(), cx, "left {x}");
        assert_eq!(compose(&cx, &Chain::from(identity_of(s.n_loops, s.m_in))).unwrap(), cx, "right {x}");
    }
}
