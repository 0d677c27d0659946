use loopdiag::catalog::*;
use loopdiag::{compose, differential, Chain, Error, Signature};

fn params(name: &str) -> Vec<Vec<usize>> {
    match name {
        "sh" | "B_n" => (0..=3).map(|n| vec![n]).collect(),
        "lambda" | "l" | "m" | "m_bar" => (1..=3).map(|n| vec![n]).collect(),
        _ => vec![vec![]],
    }
}

#[test]
fn every_entry_validates_and_is_positive() {
    for name in CATALOG_NAMES {
        for p in params(name) {
            let e = catalog_get(name, &p).unwrap();
            let c = e.value.chain();
            assert!(!c.is_zero(), "{name} {p:?}");
            for d in c.diagrams() {
                d.validate().unwrap();
                let f = d.classify();
                assert!(f.nondegenerate && f.positive_boundary && f.positively_oriented, "{name} {p:?}: {d}");
            }
        }
    }
}

#[test]
fn named_signatures() {
    let sig = |name: &str, p: &[usize]| catalog_get(name, p).unwrap().value.chain().sig().unwrap();
    assert_eq!(sig("id", &[]), Signature::new(1, 0, 1, 0));
    assert_eq!(sig("pr", &[]), Signature::new(2, 0, 1, 0));
    assert_eq!(sig("Delta", &[]), Signature::new(1, 0, 2, 0));
    assert_eq!(sig("mu", &[]), Signature::new(2, 0, 1, 0));
    assert_eq!(sig("D", &[]), Signature::new(1, 0, 1, 0));
    assert_eq!(sig("l", &[4]), Signature::new(0, 4, 1, 0));
    assert_eq!(sig("m_bar", &[2]), Signature::new(0, 2, 0, 1));
    assert_eq!(catalog_get("D", &[]).unwrap().value.chain().degree(), Some(2));
}

#[test]
fn lambda_one_is_sh_one() {
    assert_eq!(lambda(1), sh(1));
    assert_eq!(lambda(0), sh(0));
}

#[test]
fn b_after_sh0_is_b() {
    // Same graph as B, with the loop leaf turned into a plain input by sh^0.
    let b0 = catalog_get("B_n", &[0]).unwrap().value.chain();
    let d = b0.diagrams().next().unwrap();
    assert_eq!(b0.len(), 1);
    assert_eq!(d.sig(), Signature::new(0, 1, 1, 0));
    assert_eq!(d.diagram.blocks, b().diagram.blocks);
    for n in 1..=3 {
        assert_eq!(b_n(n).unwrap(), b_irr(n).expand(), "n = {n}");
    }
}

#[test]
fn d_bounds_mu_delta() {
    assert_eq!(differential(&d_element()), compose(&mu(), &Chain::from(delta())).unwrap());
}

#[test]
fn unknown_and_missing_parameters() {
    assert!(matches!(catalog_get("nope", &[]), Err(Error::UnknownName(_))));
    assert!(matches!(catalog_get("sh", &[]), Err(Error::InvalidData(_))));
}

#[test]
fn entries_are_deterministic() {
    for name in CATALOG_NAMES {
        for p in params(name) {
            assert_eq!(catalog_get(name, &p).unwrap().value.chain(), catalog_get(name, &p).unwrap().value.chain());
        }
    }
}
