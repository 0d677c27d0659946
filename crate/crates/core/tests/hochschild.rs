use loopdiag::catalog::{self, b, d_element, delta, id, mu, pr};
use loopdiag::frobenius::{make_truncated_polynomial, make_z2_group_algebra, FrobeniusAlgebra};
use loopdiag::hochschild::oracle::{connes_b_oracle, loday_lambda_oracle, sh_oracle, shuffle_oracle};
use loopdiag::hochschild::{
    check_chain_map, d_hh, hochschild_boundary_sum, normalized_basis, HochschildElement, HochschildSum, JEvaluator, Profile,
};
use loopdiag::{compose, Chain};

fn each_basis(a: &FrobeniusAlgebra, p: &Profile, mut f: impl FnMut(HochschildElement)) {
    for idx in normalized_basis(a, p).unwrap() {
        f(HochschildElement::basis(p.clone(), idx));
    }
}

#[test]
fn j_of_identity_is_identity() {
    let a = make_truncated_polynomial(3);
    let ev = JEvaluator::new();
    for j in 0..=6 {
        each_basis(&a, &Profile::new(vec![j], 0), |h| {
            assert_eq!(ev.apply(&a, &Chain::from(id()), &h).unwrap(), HochschildSum::from_element(&h));
        });
    }
}

#[test]
fn j_of_pr_is_shuffle_product() {
    let a = make_truncated_polynomial(3);
    let ev = JEvaluator::new();
    for p in Profile::all_up_to(2, 0, 5) {
        each_basis(&a, &p, |h| {
            assert_eq!(ev.apply(&a, &Chain::from(pr()), &h).unwrap(), shuffle_oracle(&a, &h).unwrap(), "{p}");
        });
    }
}

#[test]
fn j_of_b_is_connes_operator() {
    let a = make_truncated_polynomial(3);
    let ev = JEvaluator::new();
    for j in 0..=4 {
        each_basis(&a, &Profile::new(vec![j], 0), |h| {
            let got = ev.apply(&a, &Chain::from(b()), &h).unwrap();
            let want = connes_b_oracle(&a, &h).unwrap();
            assert_eq!(got, want, "degree {j} input {:?}\ngot {got}\nwant {want}", h.value);
        });
    }
}

#[test]
fn j_of_sh_and_lambda() {
    let a = make_truncated_polynomial(3);
    let ev = JEvaluator::new();
    for n in 1..=3 {
        for j in 1..=4 {
            each_basis(&a, &Profile::new(vec![j], 0), |h| {
                assert_eq!(ev.apply(&a, &catalog::sh(n), &h).unwrap(), sh_oracle(&a, n, &h).unwrap(), "sh^{n} deg {j}");
                assert_eq!(
                    ev.apply(&a, &catalog::lambda(n), &h).unwrap(),
                    loday_lambda_oracle(&a, n, &h).unwrap(),
                    "lambda^{n} deg {j}"
                );
            });
        }
    }
}

#[test]
fn b_squared_vanishes() {
    let a = make_truncated_polynomial(3);
    for p in Profile::all_up_to(1, 0, 4).into_iter().chain(Profile::all_up_to(2, 1, 3)) {
        each_basis(&a, &p, |h| {
            let s = HochschildSum::from_element(&h);
            assert!(hochschild_boundary_sum(&a, &hochschild_boundary_sum(&a, &s).unwrap()).unwrap().is_zero());
        });
    }
}

#[test]
fn catalog_operations_are_chain_maps() {
    let ev = JEvaluator::new();
    for a in [make_truncated_polynomial(2), make_z2_group_algebra()] {
        for (name, x) in [("mu", mu()), ("D", d_element()), ("B", Chain::from(b())), ("Delta", Chain::from(delta())), ("pr", Chain::from(pr()))] {
            let rep = check_chain_map(&ev, &x, &a, 3).unwrap();
            assert!(rep.passed(), "{name} over {}: {:?}", a.name, rep.failures);
        }
    }
}

#[test]
fn null_homotopy_of_mu_delta() {
    let ev = JEvaluator::new();
    let dd = d_element();
    for a in [make_truncated_polynomial(2), make_z2_group_algebra()] {
        for p in Profile::all_up_to(1, 0, 4) {
            each_basis(&a, &p, |h| {
                let s = HochschildSum::from_element(&h);
                let lhs = d_hh(&a, &ev.apply(&a, &dd, &h).unwrap()).unwrap().minus(&ev.apply_sum(&a, &dd, &d_hh(&a, &s).unwrap()).unwrap());
                let rhs = ev.apply_sum(&a, &mu(), &ev.apply(&a, &Chain::from(delta()), &h).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{p}");
                let comp = compose(&mu(), &Chain::from(delta())).unwrap();
                assert_eq!(ev.apply(&a, &comp, &h).unwrap(), rhs);
            });
        }
    }
}

mod randomized {
    use super::*;
    use loopdiag::random::{random_diagram_of_degree_at_most, RandomConfig};
    use loopdiag::Signature;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_diagrams_give_chain_maps() {
        let a = make_truncated_polynomial(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = RandomConfig { max_valence: 3, max_word_len: 4, ..RandomConfig::default() };
        for _ in 0..40 {
            let sig = Signature::new(rng.gen_range(0..=2), rng.gen_range(0..=1), rng.gen_range(1..=2), rng.gen_range(0..=1));
            let x = random_diagram_of_degree_at_most(&mut rng, sig, &cfg, 2);
            let ev = JEvaluator::new();
            let rep = check_chain_map(&ev, &Chain::from(x.clone()), &a, 2).unwrap();
            assert!(rep.passed(), "{x}: {:?}", rep.failures);
        }
    }

    #[test]
    fn functoriality_up_to_koszul_sign() {
        let a = make_truncated_polynomial(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = RandomConfig { max_valence: 3, max_word_len: 4, ..RandomConfig::default() };
        let ev = JEvaluator::new();
        for _ in 0..40 {
            let n1 = rng.gen_range(1..=2);
            let n2 = rng.gen_range(1..=2);
            let x = random_diagram_of_degree_at_most(&mut rng, Signature::new(n1, 0, n2, 0), &cfg, 2);
            let y = random_diagram_of_degree_at_most(&mut rng, Signature::new(n2, 0, 1, 0), &cfg, 2);
            let (cx, cy) = (Chain::from(x.clone()), Chain::from(y.clone()));
            let yx = compose(&cy, &cx).unwrap();
            let sign = if x.degree() * y.degree() % 2 == 0 { 1 } else { -1 };
            for p in Profile::all_up_to(n1, 0, 2) {
                each_basis(&a, &p, |h| {
                    let lhs = ev.apply(&a, &yx, &h).unwrap();
                    let rhs = ev.apply_sum(&a, &cy, &ev.apply(&a, &cx, &h).unwrap()).unwrap();
                    assert_eq!(lhs, rhs.scaled(&BigRational::from_integer(sign.into())), "y = {y}\nx = {x}\n{p}");
                });
            }
        }
    }
}
