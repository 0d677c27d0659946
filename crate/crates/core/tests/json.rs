use loopdiag::catalog::{catalog_get, CATALOG_NAMES};
use loopdiag::frobenius::{make_broken_polynomial, make_truncated_polynomial, make_z2_group_algebra};
use loopdiag::hochschild::{HochschildSum, Profile};
use loopdiag::json::*;
use loopdiag::random::{random_diagram, random_signature, RandomConfig};
use loopdiag::tensor::{TensorElement, Q};
use loopdiag::{Chain, Error};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params_for(name: &str) -> Vec<Vec<usize>> {
    match name {
        "sh" | "lambda" | "B_n" => (0..=3).map(|n| vec![n]).filter(|p| name != "lambda" || p[0] > 0).collect(),
        "l" => (1..=4).map(|n| vec![n]).collect(),
        "m" | "m_bar" => (1..=3).map(|n| vec![n]).collect(),
        _ => vec![vec![]],
    }
}

#[test]
fn catalog_round_trips() {
    let mut n = 0;
    for name in CATALOG_NAMES {
        for p in params_for(name) {
            let e = catalog_get(name, &p).unwrap();
            let c = e.value.chain();
            let sig = c.sig().unwrap();
            let text = to_pretty(&chain_to_json(sig, &c));
            let (sig2, back) = parse_chain(&text).unwrap();
            assert_eq!((sig2, &back), (sig, &c), "{name} {p:?}");
            for d in c.diagrams() {
                let t = to_pretty(&diagram_to_json(d));
                let back = parse_diagram(&t).unwrap();
                assert_eq!(back.canonical_key(), d.canonical_key());
                assert_eq!(to_pretty(&diagram_to_json(&back)), t);
            }
            n += 1;
        }
    }
    assert!(n >= 20);
}

#[test]
fn random_diagrams_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = RandomConfig::default();
    for _ in 0..300 {
        let sig = random_signature(&mut rng, 2, 1, (0, 2), 1);
        let d = random_diagram(&mut rng, sig, &cfg);
        assert_eq!(parse_diagram(&to_pretty(&diagram_to_json(&d))).unwrap(), d);
    }
}

#[test]
fn missing_vertex_is_rejected() {
    let text = r#"{"signature":{"n_loops":1,"m_in":0,"n_white":1,"m_out":0},"valences":[1],
        "blocks":[{"points":[["slot",1,1],["leaf",1]],"genus":0}],
        "loops":[{"base":1,"word":[[2,1,1]]}]}"#;
    match parse_diagram(text) {
        Err(Error::Parse { location, .. }) => assert_eq!(location, "/loops/0/word/0"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn syntax_errors_have_a_location() {
    match parse_diagram("{\"signature\": [1,") {
        Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 1")),
        other => panic!("unexpected {other:?}"),
    }
    match parse_diagram(r#"{"signature":{"n_loops":1,"m_in":0,"n_white":1}}"#) {
        Err(Error::Parse { location, message }) => {
            assert_eq!(location, "/signature");
            assert!(message.contains("m_out"));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn big_coefficients_are_exact() {
    let d = catalog_get("B", &[]).unwrap().value.chain();
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    let c = d.scaled(&big).plus(&Chain::zero());
    let sig = c.sig().unwrap();
    let (_, back) = parse_chain(&to_pretty(&chain_to_json(sig, &c))).unwrap();
    assert_eq!(back, c);
    let t = TensorElement::basis(vec![0, 1]).scaled(&Q::new(big.clone(), BigInt::from(7)));
    assert_eq!(parse_tensor(&to_pretty(&tensor_to_json(&t))).unwrap(), t);
}

#[test]
fn algebras_round_trip() {
    for a in [make_truncated_polynomial(2), make_truncated_polynomial(3), make_z2_group_algebra(), make_broken_polynomial(3)] {
        let back = parse_algebra(&to_pretty(&algebra_to_json(&a))).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn hochschild_chains_round_trip() {
    let mut s = HochschildSum::default();
    let p = Profile::new(vec![2], 0);
    s.add(&p, &TensorElement::basis(vec![1, 0, 2]), &Q::new(BigInt::from(3), BigInt::from(2)));
    s.add(&Profile::new(vec![0, 1], 1), &TensorElement::basis(vec![0, 1, 1, 2]), &Q::from_integer(BigInt::from(-1)));
    let v = hochschild_to_json(&s);
    assert_eq!(hochschild_from_json(&v, "").unwrap(), s);
}

#[test]
fn profiles_parse() {
    assert_eq!(parse_profile("2,1/0").unwrap(), Profile::new(vec![2, 1], 0));
    assert_eq!(parse_profile("/1").unwrap(), Profile::new(vec![], 1));
    assert!(parse_profile("2,x/0").is_err());
}
