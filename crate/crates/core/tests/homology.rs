use std::time::Instant;

use loopdiag::enumerate::{enumerate_slice, EnumConfig};
use loopdiag::homology::homology;
use loopdiag::{LoopedDiagram, Signature};

fn cacti(d: &LoopedDiagram) -> bool {
    !d.is_partly_constant() && d.is_cacti().unwrap_or(false)
}

fn killed(d: &LoopedDiagram) -> bool {
    d.is_partly_constant()
}

#[test]
fn cacti_one_input() {
    let cfg = EnumConfig { max_degree: 3, max_genus: 0, max_word_len: 5, positive_only: true, genus_slack: false, disjoint_loops: true, ..EnumConfig::default() };
    let s = enumerate_slice(Signature::new(1, 0, 1, 0), &cfg, &cacti, &killed).unwrap();
    println!("dims {:?}", s.dims());
    let h = homology(&s).unwrap();
    print!("{h}");
    assert_eq!(h.betti(), vec![1, 1, 0, 0]);
}

#[test]
fn cacti_two_inputs() {
    let t = Instant::now();
    let cfg = EnumConfig { max_degree: 4, max_genus: 0, max_word_len: 6, positive_only: true, genus_slack: false, disjoint_loops: true, ..EnumConfig::default() };
    let s = enumerate_slice(Signature::new(2, 0, 1, 0), &cfg, &cacti, &killed).unwrap();
    println!("dims {:?} in {:?}", s.dims(), t.elapsed());
    let h = homology(&s).unwrap();
    print!("{h}");
    assert_eq!(h.betti(), vec![0, 1, 3, 3, 1]);
    assert!(h.torsion_free());
}
