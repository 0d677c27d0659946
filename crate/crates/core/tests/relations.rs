use loopdiag::catalog::{self, d_element, delta, mu, pr};
use loopdiag::chain::{d_squared_is_zero, differential};
use loopdiag::{compose, disjoint_union, Chain};

#[test]
fn mu_delta_is_boundary() {
    let lhs = compose(&mu(), &Chain::from_diagram(delta())).unwrap();
    let rhs = differential(&d_element());
    println!("mu o Delta =\n{lhs}\n d(D) =\n{rhs}");
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.len(), 4);
}

#[test]
fn mu_is_cycle() {
    assert!(differential(&mu()).is_zero());
}

#[test]
fn pr_on_corollas_has_three_terms() {
    let x = disjoint_union(&catalog::l(2), &catalog::l(3));
    let c = compose(&Chain::from_diagram(pr()), &Chain::from_diagram(x)).unwrap();
    println!("{c}");
    assert_eq!(c.len(), 3);
}

#[test]
fn d_squared_on_catalog() {
    for d in [pr(), delta(), catalog::b(), catalog::mu_diagram()] {
        assert!(d_squared_is_zero(&d));
    }
    assert!(differential(&differential(&d_element())).is_zero());
}
