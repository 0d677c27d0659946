//! Random valid looped diagrams for the randomized suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};

#[derive(Clone, Copy, Debug)]
pub struct RandomConfig {
    pub max_valence: usize,
    pub max_genus: usize,
    pub max_word_len: usize,
    /// Probability of joining an existing block when placing a point.
    pub join: f64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { max_valence: 4, max_genus: 1, max_word_len: 6, join: 0.5 }
    }
}

/// A random nondegenerate looped diagram of the given signature.
pub fn random_diagram<R: Rng>(rng: &mut R, sig: Signature, cfg: &RandomConfig) -> LoopedDiagram {
    random_diagram_with(rng, sig, cfg, |_| true)
}

/// Like [`random_diagram`] with the total degree capped.
pub fn random_diagram_of_degree_at_most<R: Rng>(
    rng: &mut R,
    sig: Signature,
    cfg: &RandomConfig,
    max_degree: usize,
) -> LoopedDiagram {
    random_diagram_with(rng, sig, cfg, |d| d.degree() <= max_degree)
}

fn random_diagram_with<R: Rng>(
    rng: &mut R,
    sig: Signature,
    cfg: &RandomConfig,
    accept: impl Fn(&CommDiagram) -> bool,
) -> LoopedDiagram {
    loop {
        let d = random_comm_diagram(rng, sig, cfg);
        if !d.is_nondegenerate() || !accept(&d) {
            continue;
        }
        let loops = (1..=sig.n_loops).map(|l| Loop::new(l, random_word(rng, &d, l, cfg.max_word_len))).collect();
        let x = LoopedDiagram { diagram: d, loops };
        debug_assert!(x.validate().is_ok());
        return x;
    }
}

pub fn random_comm_diagram<R: Rng>(rng: &mut R, sig: Signature, cfg: &RandomConfig) -> CommDiagram {
    let valences: Vec<usize> = (0..sig.n_white).map(|_| rng.gen_range(1..=cfg.max_valence)).collect();
    let mut points: Vec<Point> = Vec::new();
    for (v, &k) in valences.iter().enumerate() {
        points.extend((1..=k).map(|q| Point::Slot(v + 1, q)));
    }
    points.extend((1..=sig.n_leaves()).map(Point::Leaf));
    points.shuffle(rng);
    let mut groups: Vec<Vec<Point>> = Vec::new();
    for p in points {
        if !groups.is_empty() && rng.gen_bool(cfg.join) {
            let g = rng.gen_range(0..groups.len());
            groups[g].push(p);
        } else {
            groups.push(vec![p]);
        }
    }
    let blocks = groups
        .into_iter()
        .map(|g| {
            let genus = if cfg.max_genus > 0 && rng.gen_bool(0.25) { rng.gen_range(1..=cfg.max_genus) } else { 0 };
            Block::new(g, genus)
        })
        .collect();
    CommDiagram::new(sig, valences, blocks)
}

/// A random reduced closed walk at the block of `base`, possibly empty.
pub fn random_word<R: Rng>(rng: &mut R, d: &CommDiagram, base: usize, max_len: usize) -> Vec<Seg> {
    let lk = d.lookup();
    let home = lk.leaf(base);
    let steps = |block: usize| -> Vec<Seg> {
        let mut out = Vec::new();
        for v in 1..=d.sig.n_white {
            let k = d.valence(v);
            for t in 1..=k {
                for s in [Seg::pos(v, t), Seg::neg(v, t)] {
                    if lk.slot(v, s.start_slot(k)) == block {
                        out.push(s);
                    }
                }
            }
        }
        out
    };
    let target = rng.gen_range(0..=max_len);
    for _ in 0..20 {
        let mut word: Vec<Seg> = Vec::new();
        let mut at = home;
        let mut best: Option<usize> = None;
        for _ in 0..max_len {
            let choices: Vec<Seg> =
                steps(at).into_iter().filter(|s| word.last().is_none_or(|p| *s != p.inverse())).collect();
            let Some(&s) = choices.choose(rng) else { break };
            word.push(s);
            at = lk.slot(s.vertex, s.end_slot(d.valence(s.vertex)));
            if at == home {
                best = Some(word.len());
                if word.len() >= target {
                    break;
                }
            }
        }
        if let Some(n) = best {
            word.truncate(n);
            return word;
        }
        if target == 0 {
            break;
        }
    }
    Vec::new()
}

/// Random signature with the given bounds, at least one white vertex when `n_white_min ≥ 1`.
pub fn random_signature<R: Rng>(rng: &mut R, max_loops: usize, max_in: usize, n_white: (usize, usize), max_out: usize) -> Signature {
    Signature::new(
        rng.gen_range(0..=max_loops),
        rng.gen_range(0..=max_in),
        rng.gen_range(n_white.0..=n_white.1),
        rng.gen_range(0..=max_out),
    )
}

/// A composable pair `(y, x)` with `x: a -> b` and `y: b -> c`, each of degree at most `max_degree`.
pub fn random_composable_pair<R: Rng>(rng: &mut R, cfg: &RandomConfig, max_degree: usize) -> (LoopedDiagram, LoopedDiagram) {
    let a = random_signature(rng, 2, 1, (0, 0), 0);
    let b = random_signature(rng, 0, 0, (1, 2), 1);
    let c = random_signature(rng, 0, 0, (1, 2), 1);
    let x = random_diagram_of_degree_at_most(rng, Signature::new(a.n_loops, a.m_in, b.n_white, b.m_out), cfg, max_degree);
    let y = random_diagram_of_degree_at_most(rng, Signature::new(b.n_white, b.m_out, c.n_white, c.m_out), cfg, max_degree);
    (y, x)
}

/// A composable triple `(z, y, x)`.
pub fn random_composable_triple<R: Rng>(
    rng: &mut R,
    cfg: &RandomConfig,
    max_degree: usize,
) -> (LoopedDiagram, LoopedDiagram, LoopedDiagram) {
    let a = random_signature(rng, 2, 1, (0, 0), 0);
    let b = random_signature(rng, 0, 0, (1, 2), 1);
    let c = random_signature(rng, 0, 0, (1, 2), 1);
    let e = random_signature(rng, 0, 0, (1, 2), 1);
    let x = random_diagram_of_degree_at_most(rng, Signature::new(a.n_loops, a.m_in, b.n_white, b.m_out), cfg, max_degree);
    let y = random_diagram_of_degree_at_most(rng, Signature::new(b.n_white, b.m_out, c.n_white, c.m_out), cfg, max_degree);
    let z = random_diagram_of_degree_at_most(rng, Signature::new(c.n_white, c.m_out, e.n_white, e.m_out), cfg, max_degree);
    (z, y, x)
}
