//! Exhaustive enumeration of nondegenerate generators and finite subcomplexes.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::chain::diagram_differential;
use crate::diagram::{Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};
use crate::error::{Error, Result};

pub const DEFAULT_GUARD: usize = 200_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    pub max_degree: usize,
    /// Total genus allowed at the top degree; one more is allowed per degree below,
    /// since a face raises the total genus by at most one.
    pub max_genus: usize,
    pub max_word_len: usize,
    pub positive_only: bool,
    /// When false, `max_genus` is used in every degree.
    pub genus_slack: bool,
    /// Loops use each segment at most once and no two loops share a segment.
    pub disjoint_loops: bool,
    /// Bound on the summed word lengths of all loops.
    pub max_total_word_len: Option<usize>,
    pub guard: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_degree: 3,
            max_genus: 0,
            max_word_len: 4,
            positive_only: false,
            genus_slack: true,
            disjoint_loops: false,
            max_total_word_len: None,
            guard: DEFAULT_GUARD,
        }
    }
}

impl EnumConfig {
    fn genus_bound(&self, degree: usize) -> usize {
        if self.genus_slack {
            self.max_genus + self.max_degree.saturating_sub(degree)
        } else {
            self.max_genus
        }
    }
}

pub type Predicate<'a> = &'a (dyn Fn(&LoopedDiagram) -> bool + Sync);

/// Valence vectors with `n` entries `≥ 1` and `Σ (k_i - 1) = degree`.
pub fn valence_vectors(n: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left {
            cur.push(e + 1);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    rec(n, degree, &mut Vec::new(), &mut out);
    out
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut cur = vec![0];
    rec(n, &mut cur, 0, &mut out);
    out
}

/// Genus vectors over `blocks` blocks with total at most `bound`.
fn genus_vectors(blocks: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for g in 0..=left {
            cur.push(g);
            rec(n, left - g, cur, out);
            cur.pop();
        }
    }
    rec(blocks, bound, &mut Vec::new(), &mut out);
    out
}

/// All reduced closed walks at the block of leaf `base` of length at most `max_len`.
pub fn closed_words(d: &CommDiagram, base: usize, max_len: usize, positive_only: bool) -> Vec<Vec<Seg>> {
    let lk = d.lookup();
    let home = lk.leaf(base);
    let mut steps: Vec<Vec<Seg>> = vec![Vec::new(); d.blocks.len()];
    for v in 1..=d.sig.n_white {
        let k = d.valence(v);
        for t in 1..=k {
            let mut cand = vec![Seg::pos(v, t)];
            if !positive_only {
                cand.push(Seg::neg(v, t));
            }
            for s in cand {
                steps[lk.slot(v, s.start_slot(k))].push(s);
            }
        }
    }
    let mut out = vec![Vec::new()];
    let mut word = Vec::new();
    fn rec(
        d: &CommDiagram,
        lk: &crate::diagram::Lookup,
        steps: &[Vec<Seg>],
        at: usize,
        home: usize,
        max_len: usize,
        word: &mut Vec<Seg>,
        out: &mut Vec<Vec<Seg>>,
    ) {
        if word.len() == max_len {
            return;
        }
        for &s in &steps[at] {
            if word.last().is_some_and(|p| *p == s.inverse()) {
                continue;
            }
            word.push(s);
            let next = lk.slot(s.vertex, s.end_slot(d.valence(s.vertex)));
            if next == home {
                out.push(word.clone());
            }
            rec(d, lk, steps, next, home, max_len, word, out);
            word.pop();
        }
    }
    rec(d, &lk, &steps, home, home, max_len, &mut word, &mut out);
    out
}

/// Visits every choice of one word per loop whose segment masks are pairwise
/// disjoint and whose lengths sum to at most `budget`.
fn choose_words(
    words: &[Vec<Vec<Seg>>],
    masks: &[Vec<u128>],
    used: u128,
    budget: usize,
    choice: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    let i = choice.len();
    if i == words.len() {
        f(choice);
        return;
    }
    for (c, &m) in masks[i].iter().enumerate() {
        if m & used == 0 && words[i][c].len() <= budget {
            choice.push(c);
            choose_words(words, masks, used | m, budget - words[i][c].len(), choice, f);
            choice.pop();
        }
    }
}

/// Nondegenerate generators of one degree passing `predicate`, sorted.
pub fn generators_of_degree(sig: Signature, degree: usize, cfg: &EnumConfig, predicate: Predicate) -> Result<Vec<LoopedDiagram>> {
    let genus_bound = cfg.genus_bound(degree);
    let mut all = Vec::new();
    for valences in valence_vectors(sig.n_white, degree) {
        let mut points: Vec<Point> = Vec::new();
        for (v, &k) in valences.iter().enumerate() {
            points.extend((1..=k).map(|q| Point::Slot(v + 1, q)));
        }
        points.extend((1..=sig.n_leaves()).map(Point::Leaf));
        let parts = set_partitions(points.len());
        let found: Vec<LoopedDiagram> = parts
            .par_iter()
            .flat_map_iter(|rgs| {
                let nb = rgs.iter().max().map_or(0, |m| m + 1);
                let mut groups: Vec<Vec<Point>> = vec![Vec::new(); nb];
                for (p, &b) in points.iter().zip(rgs) {
                    groups[b].push(*p);
                }
                let mut local = Vec::new();
                for genus in genus_vectors(nb, genus_bound) {
                    let blocks: Vec<Block> = groups.iter().zip(&genus).map(|(g, &x)| Block::new(g.clone(), x)).collect();
                    let d = CommDiagram::new(sig, valences.clone(), blocks);
                    if !d.is_nondegenerate() {
                        continue;
                    }
                    let mut words: Vec<Vec<Vec<Seg>>> =
                        (1..=sig.n_loops).map(|l| closed_words(&d, l, cfg.max_word_len, cfg.positive_only)).collect();
                    let offsets: Vec<usize> = valences
                        .iter()
                        .scan(0, |acc, &k| {
                            let o = *acc;
                            *acc += k;
                            Some(o)
                        })
                        .collect();
                    let mask = |w: &[Seg]| -> Option<u128> {
                        let mut m = 0u128;
                        for s in w {
                            let bit = 1u128 << (offsets[s.vertex - 1] + s.index - 1);
                            if m & bit != 0 {
                                return None;
                            }
                            m |= bit;
                        }
                        Some(m)
                    };
                    let masks: Vec<Vec<u128>> = if cfg.disjoint_loops {
                        for w in &mut words {
                            w.retain(|x| mask(x).is_some());
                        }
                        words.iter().map(|ws| ws.iter().map(|x| mask(x).unwrap_or(0)).collect()).collect()
                    } else {
                        words.iter().map(|ws| vec![0; ws.len()]).collect()
                    };
                    let mut choice = Vec::with_capacity(words.len());
                    choose_words(&words, &masks, 0, cfg.max_total_word_len.unwrap_or(usize::MAX), &mut choice, &mut |choice| {
                        let loops = choice.iter().enumerate().map(|(i, &c)| Loop::new(i + 1, words[i][c].clone())).collect();
                        let x = LoopedDiagram { diagram: d.clone(), loops };
                        if predicate(&x) {
                            local.push(x);
                        }
                    });
                }
                local
            })
            .collect();
        all.extend(found);
        if all.len() > cfg.guard {
            return Err(Error::ExplosionGuard { degree, count: all.len(), bound: cfg.guard });
        }
    }
    all.sort();
    all.dedup();
    Ok(all)
}

/// Sparse integer matrix stored by columns: `cols[j]` lists `(row, value)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    /// `self * other`, both by columns.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, v) in c {
                    for &(r, w) in &self.cols[k] {
                        *acc.entry(r).or_default() += v * w;
                    }
                }
                let mut col: Vec<(usize, i64)> = acc.into_iter().filter(|(_, v)| *v != 0).collect();
                col.sort();
                col
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

/// A finite complex: generators per degree and the boundary matrices
/// `boundaries[k]: C_k -> C_{k-1}` (`boundaries[0]` is empty).
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub sig: Signature,
    /// Degrees with exact homology; generators are kept one degree higher.
    pub max_degree: usize,
    pub generators: Vec<Vec<LoopedDiagram>>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ComplexSlice {
    pub fn dims(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.len()).collect()
    }
}

/// Enumerates the slice of `predicate` and builds its boundary matrices.
///
/// Faces outside the slice are dropped when `killed` holds for them (they vanish
/// in the quotient the slice models); any other escaping face is an error.
pub fn enumerate_slice(
    sig: Signature,
    cfg: &EnumConfig,
    predicate: Predicate,
    killed: Predicate,
) -> Result<ComplexSlice> {
    let top = cfg.max_degree + 1;
    let mut generators = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut inner = *cfg;
        inner.max_degree = top;
        generators.push(generators_of_degree(sig, k, &inner, predicate)?);
    }
    let index: Vec<HashMap<&LoopedDiagram, usize>> =
        generators.iter().map(|g| g.iter().enumerate().map(|(i, d)| (d, i)).collect()).collect();
    let mut boundaries = vec![SparseMatrix::default()];
    for k in 1..=top {
        let cols: Result<Vec<Vec<(usize, i64)>>> = generators[k]
            .par_iter()
            .map(|d| {
                let mut col = Vec::new();
                for (face, c) in diagram_differential(d).iter() {
                    match index[k - 1].get(face) {
                        Some(&r) => col.push((r, i64::try_from(c).expect("small coefficient"))),
                        None if killed(face) => {}
                        None => {
                            return Err(Error::InconsistentComplex(format!("face {face} of {d} leaves the slice")));
                        }
                    }
                }
                col.sort();
                Ok(col)
            })
            .collect();
        boundaries.push(SparseMatrix { rows: generators[k - 1].len(), cols: cols? });
    }
    for k in 2..=top {
        if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
            return Err(Error::InconsistentComplex(format!("d∘d ≠ 0 from degree {k}")));
        }
    }
    Ok(ComplexSlice { sig, max_degree: cfg.max_degree, generators, boundaries })
}

/// Convenience wrapper: only the generators, degrees `0..=max_degree`.
pub fn enumerate_generators(sig: Signature, cfg: &EnumConfig, predicate: Predicate) -> Result<Vec<Vec<LoopedDiagram>>> {
    (0..=cfg.max_degree).map(|k| generators_of_degree(sig, k, cfg, predicate)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn valence_vectors_have_requested_degree() {
        for v in valence_vectors(3, 4) {
            assert_eq!(v.iter().map(|k| k - 1).sum::<usize>(), 4);
        }
        assert_eq!(valence_vectors(2, 2).len(), 3);
    }

    #[test]
    fn generators_are_valid_and_of_their_degree() {
        let cfg = EnumConfig { max_degree: 2, max_word_len: 3, ..EnumConfig::default() };
        let gens = enumerate_generators(Signature::new(1, 0, 1, 0), &cfg, &|_| true).unwrap();
        for (k, g) in gens.iter().enumerate() {
            assert!(!g.is_empty());
            for d in g {
                assert_eq!(d.degree(), k);
                assert!(d.validate().is_ok());
                assert!(d.diagram.is_nondegenerate());
            }
        }
    }

    #[test]
    fn guard_trips() {
        let cfg = EnumConfig { max_degree: 2, guard: 3, ..EnumConfig::default() };
        let r = generators_of_degree(Signature::new(1, 0, 1, 0), 2, &cfg, &|_| true);
        assert!(matches!(r, Err(Error::ExplosionGuard { .. })));
    }
}
