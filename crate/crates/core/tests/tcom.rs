use loopdiag::catalog::{build_tcom, sh};
use loopdiag::{differential, Point, Signature};

#[test]
fn worked_example() {
    // Loops 1, 2 and plain input 4 go to the vertex; plain input 3 goes to the output leaf.
    let fam = build_tcom((1, 1), &[1, 1, 2, 1], &[1, 2], &[1, 0, 0, 1]).unwrap();
    let x = fam.expand();
    assert!(!x.is_zero());
    assert_eq!(x.sig(), Some(Signature::new(2, 2, 1, 1)));
    assert!(differential(&x).is_zero());
    assert_eq!(fam.entries.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 2]]);
    // Frozen: the two orders of the B-leaves L1 and L4 after the sh-leaf L2.
    assert_eq!(fam.entries[&vec![1, 2]].terms.len(), 2);
    assert_eq!(x.len(), 12);
    for d in x.diagrams() {
        assert_eq!(d.diagram.valences, vec![3]);
        assert!(d.diagram.blocks.iter().any(|b| b.points == [Point::Slot(1, 1), Point::Leaf(2)]));
        assert!(d.classify().positively_oriented);
        assert!(d.classify().positive_boundary);
    }
}

#[test]
fn single_loop_gives_sh() {
    for n in 1..=4 {
        let fam = build_tcom((1, 0), &[1], &[n], &[0]).unwrap();
        assert_eq!(fam.expand(), sh(n), "n = {n}");
    }
}

#[test]
fn plain_input_gives_sh0() {
    let fam = build_tcom((1, 0), &[1], &[], &[0]).unwrap();
    assert_eq!(fam.expand(), sh(0));
}

#[test]
fn all_small_outputs_are_cycles() {
    let mut built = 0;
    for (n1, m1) in [(1usize, 0usize), (2, 0), (1, 1), (0, 2), (2, 1)] {
        for (n2, m2) in [(1usize, 0usize), (1, 1), (2, 0)] {
            let inputs = n1 + m1;
            let targets = n2 + m2;
            for code in 0..targets.pow(inputs as u32) {
                let f: Vec<usize> = (0..inputs).map(|i| code / targets.pow(i as u32) % targets + 1).collect();
                for s_code in 0..(1usize << inputs) {
                    let s: Vec<u8> = (0..inputs).map(|i| ((s_code >> i) & 1) as u8).collect();
                    for t_code in 0..3usize.pow(n1 as u32) {
                        let t: Vec<usize> = (0..n1).map(|i| t_code / 3usize.pow(i as u32) % 3).collect();
                        if (0..n1).any(|i| f[i] > n2 && t[i] != 0) {
                            continue;
                        }
                        let fam = build_tcom((n2, m2), &f, &t, &s).unwrap();
                        let x = fam.expand();
                        assert!(differential(&x).is_zero(), "f={f:?} t={t:?} s={s:?}");
                        if !x.is_zero() {
                            assert_eq!(fam.entries.keys().cloned().collect::<Vec<_>>(), vec![t.clone()], "f={f:?} s={s:?}");
                        }
                        built += 1;
                    }
                }
            }
        }
    }
    assert!(built > 500);
}

#[test]
fn bad_type_is_rejected() {
    assert!(build_tcom((1, 1), &[2], &[1], &[0]).is_err());
    assert!(build_tcom((1, 0), &[3], &[0], &[0]).is_err());
}
