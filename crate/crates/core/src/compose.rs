//! Composition of looped diagrams, identities, and the non-constant variants.
//!
//! `compose(y, x)` is `y ∘ x` for `x: n1/m1 -> n2/m2` and `y: n2/m2 -> n3/m3`.
//! The white vertices of `x` are removed; vertex `i` of `x` is glued along the
//! loop of `y` based at leaf `i`, its start slot fusing with that leaf's block
//! and its other slots subdividing the segments the loop traverses.

use num_bigint::BigInt;

use crate::chain::Chain;
use crate::diagram::{disjoint_union, Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};
use crate::error::{Error, Result};
use crate::split::{is_loop_covering, NonConstChain};
use crate::unionfind::UnionFind;

/// A half-edge of the composite, named by where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfEdge {
    /// Slot `(vertex, position)` of the source diagram `x`.
    Source(usize, usize),
    /// Slot `(vertex, position)` of the target diagram `y`.
    Target(usize, usize),
}

/// The outcome of one insertion choice: final cyclic slot order at every
/// white vertex of `y`, start slot first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionPlan {
    pub slots: Vec<Vec<HalfEdge>>,
}

/// Parity of moving the non-start source half-edges from their reference
/// position (before all target half-edges, in vertex/slot order) to their
/// final places. Start slots are never passed at a cost.
///
/// `compose_terms` multiplies this by `-1` for every source half-edge placed on
/// a negatively traversed segment, since such a half-edge lands with reversed
/// orientation. Without that factor the chain-map identity fails.
pub fn composition_sign(plan: &InsertionPlan) -> i8 {
    let seq: Vec<HalfEdge> = plan.slots.iter().flat_map(|v| v.iter().skip(1).copied()).collect();
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

type Letter = (usize, bool);

#[derive(Clone)]
struct Work {
    /// Slot ids in cyclic order for each target vertex.
    vertices: Vec<Vec<usize>>,
    origin: Vec<HalfEdge>,
    /// Current words for the target loops, in slot-id letters.
    target_loops: Vec<Vec<Letter>>,
    /// `images[i][p-1]`: the path segment `p` of source vertex `i+1` maps to.
    images: Vec<Vec<Vec<Letter>>>,
    /// Source half-edges placed on negatively traversed segments.
    reversed: usize,
}

impl Work {
    fn refine(&mut self, inserted: &[(usize, Vec<usize>)], skip_loop: usize) {
        let refine_word = |w: &[Letter]| -> Vec<Letter> {
            let mut out = Vec::with_capacity(w.len());
            for &(s, pos) in w {
                match inserted.iter().find(|(id, _)| *id == s) {
                    None => out.push((s, pos)),
                    Some((_, m)) => {
                        if pos {
                            out.push((s, true));
                            out.extend(m.iter().map(|&h| (h, true)));
                        } else {
                            out.extend(m.iter().rev().map(|&h| (h, false)));
                            out.push((s, false));
                        }
                    }
                }
            }
            out
        };
        for (j, w) in self.target_loops.iter_mut().enumerate() {
            if j > skip_loop {
                *w = refine_word(w);
            }
        }
        for img in self.images.iter_mut() {
            for w in img.iter_mut() {
                *w = refine_word(w);
            }
        }
        for (s, m) in inserted {
            let v = self.vertices.iter().position(|l| l.contains(s)).expect("slot on a vertex");
            let at = self.vertices[v].iter().position(|x| x == s).expect("slot present");
            let tail = self.vertices[v].split_off(at + 1);
            self.vertices[v].extend(m.iter().copied());
            self.vertices[v].extend(tail);
        }
    }
}

fn check_composable(y: Signature, x: Signature) -> Result<()> {
    if y.n_loops != x.n_white || y.m_in != x.m_out {
        return Err(Error::SignatureMismatch(format!("cannot compose {y} after {x}")));
    }
    Ok(())
}

/// All summands of `y ∘ x` for two diagrams, with their insertion plans and signs.
pub fn compose_terms(y: &LoopedDiagram, x: &LoopedDiagram) -> Result<Vec<(InsertionPlan, i8, LoopedDiagram)>> {
    let (sx, sy) = (x.sig(), y.sig());
    check_composable(sy, sx)?;
    let n2 = sx.n_white;
    for i in 1..=n2 {
        if y.loops[i - 1].is_constant() && x.diagram.valence(i) >= 2 {
            return Ok(Vec::new());
        }
    }
    // Slot ids: target slots first, then source slots (i, p >= 2) as they get inserted.
    let mut origin = Vec::new();
    let mut target_id = Vec::new();
    let mut vertices = Vec::new();
    for (w, &k) in y.diagram.valences.iter().enumerate() {
        let mut ids = Vec::new();
        let mut row = Vec::new();
        for q in 1..=k {
            ids.push(origin.len());
            row.push(origin.len());
            origin.push(HalfEdge::Target(w + 1, q));
        }
        vertices.push(ids);
        target_id.push(row);
    }
    let mut source_id = Vec::new();
    for (i, &k) in x.diagram.valences.iter().enumerate() {
        let mut row = vec![usize::MAX];
        for p in 2..=k {
            row.push(origin.len());
            origin.push(HalfEdge::Source(i + 1, p));
        }
        source_id.push(row);
    }
    let target_loops = y
        .loops
        .iter()
        .map(|l| l.word.iter().map(|s| (target_id[s.vertex - 1][s.index - 1], s.positive)).collect())
        .collect();
    let work = Work { vertices, origin, target_loops, images: Vec::new(), reversed: 0 };
    let mut finals = Vec::new();
    glue_vertex(x, &source_id, work, 1, &mut finals);
    let mut out = Vec::with_capacity(finals.len());
    let assembler = Assembler::new(y, x);
    for work in finals {
        let plan = InsertionPlan {
            slots: work.vertices.iter().map(|ids| ids.iter().map(|&id| work.origin[id]).collect()).collect(),
        };
        let sign = if work.reversed % 2 == 0 { composition_sign(&plan) } else { -composition_sign(&plan) };
        let d = assembler.assemble(&work, &plan);
        out.push((plan, sign, d));
    }
    Ok(out)
}

/// Nondecreasing sequences of length `len` over `0..r`.
fn monotone_sequences(len: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, r: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in from..r {
            cur.push(a);
            rec(len, r, a, cur, out);
            cur.pop();
        }
    }
    rec(len, r, 0, &mut cur, &mut out);
    out
}

/// All interleavings of the given sequences preserving each one's order.
pub(crate) fn shuffles<T: Clone>(seqs: &[Vec<T>]) -> Vec<Vec<T>> {
    let total: usize = seqs.iter().map(|s| s.len()).sum();
    let mut out = Vec::new();
    let mut idx = vec![0usize; seqs.len()];
    let mut cur = Vec::with_capacity(total);
    fn rec<T: Clone>(seqs: &[Vec<T>], idx: &mut [usize], cur: &mut Vec<T>, total: usize, out: &mut Vec<Vec<T>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for s in 0..seqs.len() {
            if idx[s] < seqs[s].len() {
                cur.push(seqs[s][idx[s]].clone());
                idx[s] += 1;
                rec(seqs, idx, cur, total, out);
                idx[s] -= 1;
                cur.pop();
            }
        }
    }
    rec(seqs, &mut idx, &mut cur, total, &mut out);
    out
}

fn glue_vertex(x: &LoopedDiagram, source_id: &[Vec<usize>], work: Work, i: usize, finals: &mut Vec<Work>) {
    if i > x.sig().n_white {
        finals.push(work);
        return;
    }
    let k = x.diagram.valence(i);
    let w = work.target_loops[i - 1].clone();
    if k == 1 {
        let mut next = work;
        next.images.push(vec![w]);
        glue_vertex(x, source_id, next, i + 1, finals);
        return;
    }
    let r = w.len();
    debug_assert!(r > 0, "zero rule checked upfront");
    for assign in monotone_sequences(k - 1, r) {
        // Source positions p = 2..=k grouped by the occurrence they go into.
        let mut at_occurrence: Vec<Vec<usize>> = vec![Vec::new(); r];
        for (n, &a) in assign.iter().enumerate() {
            at_occurrence[a].push(n + 2);
        }
        // Per traversed segment, the sequences to be interleaved in intrinsic order.
        let mut segs: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        for (a, &(s, pos)) in w.iter().enumerate() {
            if at_occurrence[a].is_empty() {
                continue;
            }
            let mut seq = at_occurrence[a].clone();
            if !pos {
                seq.reverse();
            }
            match segs.iter_mut().find(|(id, _)| *id == s) {
                Some((_, list)) => list.push(seq),
                None => segs.push((s, vec![seq])),
            }
        }
        let options: Vec<Vec<Vec<usize>>> = segs.iter().map(|(_, seqs)| shuffles(seqs)).collect();
        let mut choice = vec![0usize; segs.len()];
        loop {
            let inserted: Vec<(usize, Vec<usize>)> = segs
                .iter()
                .zip(&choice)
                .enumerate()
                .map(|(n, ((s, _), &c))| (*s, options[n][c].iter().map(|&p| source_id[i - 1][p - 1]).collect()))
                .collect();
            let mut next = work.clone();
            next.reversed += w.iter().zip(&at_occurrence).filter(|((_, pos), _)| !pos).map(|(_, m)| m.len()).sum::<usize>();
            // Refined copy of loop i with the cut positions of each source slot.
            let mut refined: Vec<Letter> = Vec::new();
            let mut cut = vec![0usize; k + 1];
            for (a, &(s, pos)) in w.iter().enumerate() {
                let mine: Vec<usize> = at_occurrence[a].iter().map(|&p| source_id[i - 1][p - 1]).collect();
                let merged = inserted.iter().find(|(id, _)| *id == s).map(|(_, m)| m.clone()).unwrap_or_default();
                let position_of = |h: usize| source_pos(&next.origin, h);
                if pos {
                    refined.push((s, true));
                    for &h in &merged {
                        if mine.contains(&h) {
                            cut[position_of(h)] = refined.len();
                        }
                        refined.push((h, true));
                    }
                } else {
                    for &h in merged.iter().rev() {
                        refined.push((h, false));
                        if mine.contains(&h) {
                            cut[position_of(h)] = refined.len();
                        }
                    }
                    refined.push((s, false));
                }
            }
            next.refine(&inserted, i - 1);
            let mut img = Vec::with_capacity(k);
            let mut from = 0;
            for p in 2..=k {
                img.push(refined[from..cut[p]].to_vec());
                from = cut[p];
            }
            img.push(refined[from..].to_vec());
            next.images.push(img);
            glue_vertex(x, source_id, next, i + 1, finals);
            // Advance the mixed-radix choice counter.
            let mut n = 0;
            while n < choice.len() {
                choice[n] += 1;
                if choice[n] < options[n].len() {
                    break;
                }
                choice[n] = 0;
                n += 1;
            }
            if n == choice.len() {
                break;
            }
        }
    }
}

fn source_pos(origin: &[HalfEdge], h: usize) -> usize {
    match origin[h] {
        HalfEdge::Source(_, p) => p,
        HalfEdge::Target(..) => unreachable!("cut at a target slot"),
    }
}

/// Plan-independent part of the composite: fused arc components and leaf relabeling.
struct Assembler<'a> {
    x: &'a LoopedDiagram,
    y: &'a LoopedDiagram,
    sig: Signature,
    /// Union-find root per block node (source blocks first, then target blocks).
    root: Vec<usize>,
    /// Extra genus per root from self-gluings.
    extra: Vec<usize>,
    /// Leaf points that survive, with their root and new label.
    leaves: Vec<(usize, usize)>,
    x_slot_node: Vec<Vec<usize>>,
    y_slot_node: Vec<Vec<usize>>,
}

impl<'a> Assembler<'a> {
    fn new(y: &'a LoopedDiagram, x: &'a LoopedDiagram) -> Self {
        let (sx, sy) = (x.sig(), y.sig());
        let bx = x.diagram.blocks.len();
        let nodes = bx + y.diagram.blocks.len();
        let (lx, ly) = (x.diagram.lookup(), y.diagram.lookup());
        let mut uf = UnionFind::new(nodes);
        let mut cycles = Vec::new();
        for i in 1..=sx.n_white {
            let (a, b) = (lx.slot(i, 1), bx + ly.leaf(i));
            if !uf.union(a, b) {
                cycles.push(a);
            }
        }
        for j in 1..=sx.m_out {
            let (a, b) = (lx.leaf(sx.n_loops + sx.m_in + j), bx + ly.leaf(sy.n_loops + j));
            if !uf.union(a, b) {
                cycles.push(a);
            }
        }
        let root: Vec<usize> = (0..nodes).map(|n| uf.find(n)).collect();
        let mut extra = vec![0; nodes];
        for c in cycles {
            extra[root[c]] += 1;
        }
        let mut leaves = Vec::new();
        for l in 1..=sx.n_loops + sx.m_in {
            leaves.push((root[lx.leaf(l)], l));
        }
        for j in 1..=sy.m_out {
            let l = sy.n_loops + sy.m_in + j;
            leaves.push((root[bx + ly.leaf(l)], sx.n_loops + sx.m_in + j));
        }
        let x_slot_node = x
            .diagram
            .valences
            .iter()
            .enumerate()
            .map(|(i, &k)| (1..=k).map(|p| root[lx.slot(i + 1, p)]).collect())
            .collect();
        let y_slot_node = y
            .diagram
            .valences
            .iter()
            .enumerate()
            .map(|(w, &k)| (1..=k).map(|q| root[bx + ly.slot(w + 1, q)]).collect())
            .collect();
        let sig = Signature::new(sx.n_loops, sx.m_in, sy.n_white, sy.m_out);
        Assembler { x, y, sig, root, extra, leaves, x_slot_node, y_slot_node }
    }

    fn assemble(&self, work: &Work, plan: &InsertionPlan) -> LoopedDiagram {
        let nodes = self.root.len();
        let mut points: Vec<Vec<Point>> = vec![Vec::new(); nodes];
        let mut genus = self.extra.clone();
        for (n, b) in self.x.diagram.blocks.iter().chain(self.y.diagram.blocks.iter()).enumerate() {
            genus[self.root[n]] += b.genus;
        }
        for &(r, l) in &self.leaves {
            points[r].push(Point::Leaf(l));
        }
        let mut place = vec![(0usize, 0usize); work.origin.len()];
        for (w, slots) in plan.slots.iter().enumerate() {
            for (q, h) in slots.iter().enumerate() {
                let node = match *h {
                    HalfEdge::Source(i, p) => self.x_slot_node[i - 1][p - 1],
                    HalfEdge::Target(v, p) => self.y_slot_node[v - 1][p - 1],
                };
                points[node].push(Point::Slot(w + 1, q + 1));
                place[work.vertices[w][q]] = (w + 1, q + 1);
            }
        }
        let mut blocks = Vec::new();
        for n in 0..nodes {
            if self.root[n] == n {
                blocks.push(Block::new(std::mem::take(&mut points[n]), genus[n]));
            }
        }
        let loops = self
            .x
            .loops
            .iter()
            .map(|l| {
                let mut word = Vec::new();
                for s in &l.word {
                    let img = &work.images[s.vertex - 1][s.index - 1];
                    if s.positive {
                        word.extend(img.iter().map(|&(h, pos)| (h, pos)));
                    } else {
                        word.extend(img.iter().rev().map(|&(h, pos)| (h, !pos)));
                    }
                }
                let segs = word.into_iter().map(|(h, pos)| {
                    let (v, q) = place[h];
                    Seg { vertex: v, index: q, positive: pos }
                });
                Loop::new(l.base, crate::diagram::free_reduce(segs))
            })
            .collect();
        let valences = plan.slots.iter().map(|s| s.len()).collect();
        let d = LoopedDiagram::from_parts(CommDiagram::new(self.sig, valences, blocks), loops);
        debug_assert!(d.validate().is_ok(), "composite invalid: {d}");
        d
    }
}

/// Degenerate summands vanish in the reduced complex and are dropped.
pub fn compose_diagrams(y: &LoopedDiagram, x: &LoopedDiagram) -> Result<Chain> {
    let mut out = Chain::zero();
    for (_, sign, d) in compose_terms(y, x)? {
        if d.diagram.is_nondegenerate() {
            out.add_i(d, sign as i64);
        }
    }
    Ok(out)
}

/// `y ∘ x`, bilinear.
pub fn compose(y: &Chain, x: &Chain) -> Result<Chain> {
    let mut out = Chain::zero();
    for (dy, ky) in y.iter() {
        for (dx, kx) in x.iter() {
            let prod: BigInt = ky * kx;
            out.add_chain(&compose_diagrams(dy, dx)?, &prod);
        }
    }
    Ok(out)
}

/// The identity of `n/m`: `n` copies of the one-slot loop and `m` leaf-to-leaf edges.
pub fn identity_of(n: usize, m: usize) -> LoopedDiagram {
    let one = LoopedDiagram::from_parts(
        CommDiagram::new(Signature::new(1, 0, 1, 0), vec![1], vec![Block::new(vec![Point::Slot(1, 1), Point::Leaf(1)], 0)]),
        vec![Loop::new(1, vec![Seg::pos(1, 1)])],
    );
    let edge = LoopedDiagram::from_parts(
        CommDiagram::new(Signature::new(0, 1, 0, 1), vec![], vec![Block::new(vec![Point::Leaf(1), Point::Leaf(2)], 0)]),
        vec![],
    );
    let mut acc = LoopedDiagram::from_parts(CommDiagram::new(Signature::default(), vec![], vec![]), vec![]);
    for _ in 0..n {
        acc = disjoint_union(&acc, &one);
    }
    for _ in 0..m {
        acc = disjoint_union(&acc, &edge);
    }
    acc
}

/// Removes the segments of the singular vertices in `t` from every loop.
pub fn remove_singular(d: &LoopedDiagram, t: &[usize]) -> LoopedDiagram {
    let loops = d
        .loops
        .iter()
        .map(|l| {
            let w = l.word.iter().copied().filter(|s| !t.contains(&s.vertex));
            Loop::new(l.base, crate::diagram::free_reduce(w))
        })
        .collect();
    LoopedDiagram { diagram: d.diagram.clone(), loops }
}

/// Singular vertices: white vertices of valence one.
pub fn singular_vertices(d: &LoopedDiagram) -> Vec<usize> {
    (1..=d.sig().n_white).filter(|&v| d.diagram.valence(v) == 1).collect()
}

/// Signed sum of the segment removals over the non-loop-covering sets of singular vertices.
pub fn s_bar(x: &NonConstChain) -> NonConstChain {
    let mut out = Chain::zero();
    for (d, k) in x.reps.iter() {
        let sing = singular_vertices(d);
        for mask in 0u64..(1u64 << sing.len()) {
            let t: Vec<usize> = sing.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect();
            if is_loop_covering(d, &t) {
                continue;
            }
            let sign: BigInt = if t.len().is_multiple_of(2) { k.clone() } else { -k.clone() };
            out.add_term(remove_singular(d, &t), sign);
        }
    }
    NonConstChain { reps: out }
}

/// Composition of bracket representatives with the partly constant terms discarded.
pub fn compose_tilde(y: &NonConstChain, x: &NonConstChain) -> Result<NonConstChain> {
    let c = compose(&y.reps, &x.reps)?;
    Ok(NonConstChain::from_reps(c))
}
