//! Commutative Sullivan diagrams in partition form, loops and looped diagrams.
//!
//! Indices are 1-based throughout: white vertices `1..=n_white`, slot positions
//! `1..=k` with position 1 the start half-edge, leaves `1..=n_leaves`.

use std::fmt;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// Shape of a morphism `n_loops/m_in -> n_white/m_out`.
///
/// Leaves `1..=n_loops` carry loops, the next `m_in` are plain inputs and the
/// last `m_out` are outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Signature {
    pub n_loops: usize,
    pub m_in: usize,
    pub n_white: usize,
    pub m_out: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafKind {
    Loop,
    Input,
    Output,
}

impl Signature {
    pub const fn new(n_loops: usize, m_in: usize, n_white: usize, m_out: usize) -> Self {
        Signature { n_loops, m_in, n_white, m_out }
    }

    pub fn n_leaves(&self) -> usize {
        self.n_loops + self.m_in + self.m_out
    }

    pub fn leaf_kind(&self, label: usize) -> Option<LeafKind> {
        if label == 0 || label > self.n_leaves() {
            None
        } else if label <= self.n_loops {
            Some(LeafKind::Loop)
        } else if label <= self.n_loops + self.m_in {
            Some(LeafKind::Input)
        } else {
            Some(LeafKind::Output)
        }
    }

    pub fn first_output(&self) -> usize {
        self.n_loops + self.m_in + 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} -> {}/{}", self.n_loops, self.m_in, self.n_white, self.m_out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// `Slot(vertex, position)`.
    Slot(usize, usize),
    Leaf(usize),
}

/// An arc component: its attachment points and first Betti number.
///
/// A block with no points is a closed component; these only arise from
/// compositions that cap an output against a plain input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub points: Vec<Point>,
    pub genus: usize,
}

impl Block {
    pub fn new(mut points: Vec<Point>, genus: usize) -> Self {
        points.sort();
        Block { points, genus }
    }

    pub fn is_unit_slot(&self) -> Option<(usize, usize)> {
        match self.points.as_slice() {
            [Point::Slot(v, p)] if self.genus == 0 => Some((*v, *p)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommDiagram {
    pub sig: Signature,
    pub valences: Vec<usize>,
    pub blocks: Vec<Block>,
}

/// Point-to-block lookup for a diagram whose blocks form a partition.
#[derive(Clone, Debug)]
pub(crate) struct Lookup {
    slot: Vec<Vec<usize>>,
    leaf: Vec<usize>,
}

impl Lookup {
    pub(crate) fn slot(&self, v: usize, p: usize) -> usize {
        self.slot[v - 1][p - 1]
    }

    pub(crate) fn leaf(&self, l: usize) -> usize {
        self.leaf[l - 1]
    }
}

impl CommDiagram {
    /// Normalizes block order. Does not validate.
    pub fn new(sig: Signature, valences: Vec<usize>, blocks: Vec<Block>) -> Self {
        let mut blocks: Vec<Block> = blocks.into_iter().map(|b| Block::new(b.points, b.genus)).collect();
        blocks.sort();
        CommDiagram { sig, valences, blocks }
    }

    pub fn degree(&self) -> usize {
        self.valences.iter().map(|k| k - 1).sum()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.valences[v - 1]
    }

    pub fn validate(&self) -> Result<()> {
        let sig = &self.sig;
        if self.valences.len() != sig.n_white {
            return Err(Error::BadPartition(format!(
                "{} valences for {} white vertices",
                self.valences.len(),
                sig.n_white
            )));
        }
        if let Some(v) = self.valences.iter().position(|&k| k == 0) {
            return Err(Error::BadPartition(format!("vertex {} has valence 0", v + 1)));
        }
        let mut slot_seen: Vec<Vec<bool>> = self.valences.iter().map(|&k| vec![false; k]).collect();
        let mut leaf_seen = vec![false; sig.n_leaves()];
        for b in &self.blocks {
            for &p in &b.points {
                match p {
                    Point::Slot(v, q) => {
                        if v == 0 || v > sig.n_white || q == 0 || q > self.valences[v - 1] {
                            return Err(Error::BadPartition(format!("slot ({v},{q}) does not exist")));
                        }
                        if std::mem::replace(&mut slot_seen[v - 1][q - 1], true) {
                            return Err(Error::BadPartition(format!("slot ({v},{q}) appears twice")));
                        }
                    }
                    Point::Leaf(l) => {
                        if l == 0 || l > sig.n_leaves() {
                            return Err(Error::BadLabels(format!("leaf {l} out of range")));
                        }
                        if std::mem::replace(&mut leaf_seen[l - 1], true) {
                            return Err(Error::BadLabels(format!("leaf {l} appears twice")));
                        }
                    }
                }
            }
        }
        for (v, row) in slot_seen.iter().enumerate() {
            if let Some(q) = row.iter().position(|s| !s) {
                return Err(Error::BadPartition(format!("slot ({},{}) is in no block", v + 1, q + 1)));
            }
        }
        if let Some(l) = leaf_seen.iter().position(|s| !s) {
            return Err(Error::BadLabels(format!("leaf {} is in no block", l + 1)));
        }
        Ok(())
    }

    pub(crate) fn lookup(&self) -> Lookup {
        let mut slot: Vec<Vec<usize>> = self.valences.iter().map(|&k| vec![usize::MAX; k]).collect();
        let mut leaf = vec![usize::MAX; self.sig.n_leaves()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in &b.points {
                match p {
                    Point::Slot(v, q) => slot[v - 1][q - 1] = i,
                    Point::Leaf(l) => leaf[l - 1] = i,
                }
            }
        }
        Lookup { slot, leaf }
    }

    pub fn block_of(&self, p: Point) -> Option<usize> {
        self.blocks.iter().position(|b| b.points.contains(&p))
    }

    /// Components of the bipartite block / white-vertex incidence graph.
    pub fn connected_components(&self) -> Vec<Component> {
        let nb = self.blocks.len();
        let mut uf = UnionFind::new(nb + self.sig.n_white);
        for (i, b) in self.blocks.iter().enumerate() {
            for p in &b.points {
                if let Point::Slot(v, _) = p {
                    uf.union(i, nb + v - 1);
                }
            }
        }
        let mut comps: Vec<Component> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; nb + self.sig.n_white];
        for node in 0..nb + self.sig.n_white {
            let r = uf.find(node);
            let c = match root_of[r] {
                Some(c) => c,
                None => {
                    comps.push(Component::default());
                    root_of[r] = Some(comps.len() - 1);
                    comps.len() - 1
                }
            };
            if node < nb {
                comps[c].blocks.push(node);
            } else {
                comps[c].vertices.push(node - nb + 1);
            }
        }
        comps
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.blocks.iter().all(|b| !matches!(b.is_unit_slot(), Some((_, p)) if p != 1))
    }

    pub fn is_positive_boundary(&self) -> bool {
        let first_out = self.sig.first_output();
        self.connected_components().iter().all(|c| {
            !c.vertices.is_empty()
                || c.blocks.iter().any(|&b| {
                    self.blocks[b].points.iter().any(|p| matches!(p, Point::Leaf(l) if *l >= first_out))
                })
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Component {
    /// White vertices (1-based).
    pub vertices: Vec<usize>,
    /// Indices into `CommDiagram::blocks`.
    pub blocks: Vec<usize>,
}

/// Boundary segment `index` of `vertex`, running from slot `index` to the
/// cyclically next slot; `positive == false` reverses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seg {
    pub vertex: usize,
    pub index: usize,
    pub positive: bool,
}

impl Seg {
    pub const fn pos(vertex: usize, index: usize) -> Self {
        Seg { vertex, index, positive: true }
    }

    pub const fn neg(vertex: usize, index: usize) -> Self {
        Seg { vertex, index, positive: false }
    }

    pub fn inverse(self) -> Self {
        Seg { positive: !self.positive, ..self }
    }

    /// Slot position where the oriented segment starts, for a vertex of valence `k`.
    pub fn start_slot(self, k: usize) -> usize {
        if self.positive {
            self.index
        } else {
            self.index % k + 1
        }
    }

    pub fn end_slot(self, k: usize) -> usize {
        if self.positive {
            self.index % k + 1
        } else {
            self.index
        }
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(word: impl IntoIterator<Item = Seg>) -> Vec<Seg> {
    let mut out: Vec<Seg> = Vec::new();
    for s in word {
        if out.last() == Some(&s.inverse()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

pub fn invert_word(word: &[Seg]) -> Vec<Seg> {
    word.iter().rev().map(|s| s.inverse()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop {
    pub base: usize,
    pub word: Vec<Seg>,
}

impl Loop {
    pub fn new(base: usize, word: Vec<Seg>) -> Self {
        Loop { base, word }
    }

    pub fn constant(base: usize) -> Self {
        Loop { base, word: Vec::new() }
    }

    pub fn is_constant(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopedDiagram {
    pub diagram: CommDiagram,
    pub loops: Vec<Loop>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub positive_boundary: bool,
    pub positively_oriented: bool,
    pub nondegenerate: bool,
    pub partly_constant: bool,
}

impl LoopedDiagram {
    /// Builds and validates.
    pub fn new(diagram: CommDiagram, loops: Vec<Loop>) -> Result<Self> {
        let d = Self::from_parts(diagram, loops);
        d.validate()?;
        Ok(d)
    }

    /// Builds from one word per loop leaf, loop `i` based at leaf `i`.
    pub fn from_words(diagram: CommDiagram, words: Vec<Vec<Seg>>) -> Result<Self> {
        let loops = words.into_iter().enumerate().map(|(i, w)| Loop::new(i + 1, w)).collect();
        Self::new(diagram, loops)
    }

    /// Normalizes without validating. Internal operations use this on inputs
    /// that are valid by construction.
    pub(crate) fn from_parts(diagram: CommDiagram, loops: Vec<Loop>) -> Self {
        let diagram = CommDiagram::new(diagram.sig, diagram.valences, diagram.blocks);
        LoopedDiagram { diagram, loops }
    }

    pub fn sig(&self) -> Signature {
        self.diagram.sig
    }

    pub fn degree(&self) -> usize {
        self.diagram.degree()
    }

    pub fn validate(&self) -> Result<()> {
        let d = &self.diagram;
        d.validate()?;
        if self.loops.len() != d.sig.n_loops {
            return Err(Error::BadLabels(format!(
                "{} loops for {} loop leaves",
                self.loops.len(),
                d.sig.n_loops
            )));
        }
        let lk = d.lookup();
        for (i, lp) in self.loops.iter().enumerate() {
            if lp.base != i + 1 {
                return Err(Error::BadLabels(format!("loop {} is based at leaf {}", i + 1, lp.base)));
            }
            for (w, s) in lp.word.iter().enumerate() {
                if s.vertex == 0 || s.vertex > d.sig.n_white || s.index == 0 || s.index > d.valence(s.vertex) {
                    return Err(Error::BadSegment { loop_index: i + 1, position: w + 1 });
                }
            }
            let base = lk.leaf(lp.base);
            let start = |s: &Seg| lk.slot(s.vertex, s.start_slot(d.valence(s.vertex)));
            let end = |s: &Seg| lk.slot(s.vertex, s.end_slot(d.valence(s.vertex)));
            let bad = |condition| Err(Error::BadLoop { loop_index: i + 1, condition });
            if let (Some(first), Some(last)) = (lp.word.first(), lp.word.last()) {
                if start(first) != base {
                    return bad(1);
                }
                if end(last) != base {
                    return bad(2);
                }
            }
            for pair in lp.word.windows(2) {
                if end(&pair[0]) != start(&pair[1]) {
                    return bad(3);
                }
            }
            if lp.word.windows(2).any(|p| p[1] == p[0].inverse()) {
                return bad(4);
            }
        }
        Ok(())
    }

    pub fn classify(&self) -> Flags {
        Flags {
            positive_boundary: self.diagram.is_positive_boundary(),
            positively_oriented: self.loops.iter().all(|l| l.word.iter().all(|s| s.positive)),
            nondegenerate: self.diagram.is_nondegenerate(),
            partly_constant: self.is_partly_constant(),
        }
    }

    pub fn is_partly_constant(&self) -> bool {
        self.loops.iter().any(|l| l.is_constant())
    }

    pub fn connected_components(&self) -> Vec<Component> {
        self.diagram.connected_components()
    }

    /// Identifies slots `t` and `t+1` (cyclically) of vertex `v`.
    pub fn contract_segment(&self, v: usize, t: usize) -> Result<LoopedDiagram> {
        let d = &self.diagram;
        if v == 0 || v > d.sig.n_white {
            return Err(Error::InvalidVertex(v));
        }
        let k = d.valence(v);
        if t == 0 || t > k {
            return Err(Error::InvalidSegment { vertex: v, segment: t });
        }
        if k < 2 {
            return Err(Error::ValenceTooLow(v));
        }
        let remap = |p: usize| -> usize {
            if t < k {
                if p <= t {
                    p
                } else {
                    p - 1
                }
            } else if p == k {
                1
            } else {
                p
            }
        };
        let a = Point::Slot(v, t);
        let b = Point::Slot(v, t % k + 1);
        let mut fused = Block { points: Vec::new(), genus: 0 };
        let mut pieces = 0;
        let mut blocks = Vec::with_capacity(d.blocks.len());
        for blk in &d.blocks {
            let has_a = blk.points.contains(&a);
            let has_b = blk.points.contains(&b);
            if has_a || has_b {
                pieces += 1;
                fused.genus += blk.genus;
                fused.points.extend(blk.points.iter().filter(|&&p| p != a && p != b).copied());
            } else {
                blocks.push(blk.clone());
            }
        }
        if pieces == 1 {
            fused.genus += 1;
        }
        fused.points.push(Point::Slot(v, t));
        blocks.push(fused);
        let blocks = blocks
            .into_iter()
            .map(|blk| {
                let pts = blk
                    .points
                    .into_iter()
                    .map(|p| match p {
                        Point::Slot(w, q) if w == v => Point::Slot(w, remap(q)),
                        other => other,
                    })
                    .collect();
                Block::new(pts, blk.genus)
            })
            .collect();
        let mut valences = d.valences.clone();
        valences[v - 1] -= 1;
        let loops = self
            .loops
            .iter()
            .map(|l| {
                let word = l.word.iter().filter_map(|s| {
                    if s.vertex != v {
                        Some(*s)
                    } else if s.index == t {
                        None
                    } else if t < k && s.index > t {
                        Some(Seg { index: s.index - 1, ..*s })
                    } else {
                        Some(*s)
                    }
                });
                Loop::new(l.base, free_reduce(word))
            })
            .collect();
        let out = LoopedDiagram::from_parts(CommDiagram::new(d.sig, valences, blocks), loops);
        debug_assert!(out.validate().is_ok(), "contract_segment broke validity");
        Ok(out)
    }

    /// Inserts a unit slot after position `j` of vertex `v` (`j = 0` makes it the new start).
    pub fn add_unit_leaf(&self, v: usize, j: usize) -> Result<LoopedDiagram> {
        let d = &self.diagram;
        if v == 0 || v > d.sig.n_white {
            return Err(Error::InvalidVertex(v));
        }
        let k = d.valence(v);
        if j > k {
            return Err(Error::InvalidPosition { vertex: v, position: j });
        }
        let mut blocks: Vec<Block> = d
            .blocks
            .iter()
            .map(|blk| {
                let pts = blk
                    .points
                    .iter()
                    .map(|&p| match p {
                        Point::Slot(w, q) if w == v && q > j => Point::Slot(w, q + 1),
                        other => other,
                    })
                    .collect();
                Block::new(pts, blk.genus)
            })
            .collect();
        blocks.push(Block::new(vec![Point::Slot(v, j + 1)], 0));
        let mut valences = d.valences.clone();
        valences[v - 1] += 1;
        // The segment that gets split; for j = 0 it is the closing segment k.
        let split = if j == 0 { k } else { j };
        let loops = self
            .loops
            .iter()
            .map(|l| {
                let mut word = Vec::with_capacity(l.word.len() + 2);
                for &s in &l.word {
                    if s.vertex != v {
                        word.push(s);
                    } else if s.index == split {
                        let (first, second) = if j == 0 { (k + 1, 1) } else { (j, j + 1) };
                        if s.positive {
                            word.push(Seg::pos(v, first));
                            word.push(Seg::pos(v, second));
                        } else {
                            word.push(Seg::neg(v, second));
                            word.push(Seg::neg(v, first));
                        }
                    } else if s.index > j {
                        word.push(Seg { index: s.index + 1, ..s });
                    } else {
                        word.push(s);
                    }
                }
                Loop::new(l.base, word)
            })
            .collect();
        let out = LoopedDiagram::from_parts(CommDiagram::new(d.sig, valences, blocks), loops);
        debug_assert!(out.validate().is_ok(), "add_unit_leaf broke validity");
        Ok(out)
    }

    /// Deterministic byte encoding of the normalized structure.
    pub fn canonical_key(&self) -> Vec<u8> {
        fn put(out: &mut Vec<u8>, x: usize) {
            out.extend_from_slice(&(x as u32).to_le_bytes());
        }
        let d = &self.diagram;
        let mut out = Vec::new();
        for x in [d.sig.n_loops, d.sig.m_in, d.sig.n_white, d.sig.m_out] {
            put(&mut out, x);
        }
        put(&mut out, d.valences.len());
        for &k in &d.valences {
            put(&mut out, k);
        }
        put(&mut out, d.blocks.len());
        for b in &d.blocks {
            put(&mut out, b.genus);
            put(&mut out, b.points.len());
            for p in &b.points {
                match *p {
                    Point::Slot(v, q) => {
                        out.push(0);
                        put(&mut out, v);
                        put(&mut out, q);
                    }
                    Point::Leaf(l) => {
                        out.push(1);
                        put(&mut out, l);
                    }
                }
            }
        }
        for l in &self.loops {
            put(&mut out, l.word.len());
            for s in &l.word {
                put(&mut out, s.vertex);
                put(&mut out, s.index);
                out.push(s.positive as u8);
            }
        }
        out
    }

    /// Cacti predicate; needs a signature without plain inputs or outputs.
    pub fn is_cacti(&self) -> Result<bool> {
        let d = &self.diagram;
        if d.sig.m_in != 0 || d.sig.m_out != 0 {
            return Err(Error::BadSignature);
        }
        let comps = d.connected_components();
        if comps.iter().any(|c| c.vertices.len() != 1) {
            return Ok(false);
        }
        // Non-crossing slots per vertex, cut open before slot 1.
        for v in 1..=d.sig.n_white {
            let mut label = vec![0usize; d.valence(v)];
            for (i, b) in d.blocks.iter().enumerate() {
                for p in &b.points {
                    if let Point::Slot(w, q) = *p {
                        if w == v {
                            label[q - 1] = i;
                        }
                    }
                }
            }
            if !is_noncrossing(&label) {
                return Ok(false);
            }
        }
        let lk = d.lookup();
        let mut covered: Vec<Vec<bool>> = d.valences.iter().map(|&k| vec![false; k]).collect();
        for lp in &self.loops {
            let base = lk.leaf(lp.base);
            for (w, s) in lp.word.iter().enumerate() {
                if !s.positive || std::mem::replace(&mut covered[s.vertex - 1][s.index - 1], true) {
                    return Ok(false);
                }
                let end = lk.slot(s.vertex, s.end_slot(d.valence(s.vertex)));
                if w + 1 < lp.word.len() && end == base {
                    return Ok(false);
                }
            }
        }
        if covered.iter().flatten().any(|c| !c) {
            return Ok(false);
        }
        // Tree-likeness: between two consecutive slots of one arc component the
        // segments form whole loops.
        let mut owner: Vec<Vec<usize>> = d.valences.iter().map(|&k| vec![0; k]).collect();
        for (i, lp) in self.loops.iter().enumerate() {
            for s in &lp.word {
                owner[s.vertex - 1][s.index - 1] = i;
            }
        }
        for b in &d.blocks {
            for v in 1..=d.sig.n_white {
                let slots: Vec<usize> =
                    b.points.iter().filter_map(|p| if let Point::Slot(w, q) = *p { (w == v).then_some(q) } else { None }).collect();
                for pair in slots.windows(2) {
                    let range = &owner[v - 1][pair[0] - 1..pair[1] - 1];
                    let whole = range.iter().all(|&i| {
                        let lp = &self.loops[i];
                        lp.word.iter().all(|s| s.vertex == v && (pair[0]..pair[1]).contains(&s.index))
                    });
                    if !whole {
                        return Ok(false);
                    }
                }
            }
        }
        for (i, b) in d.blocks.iter().enumerate() {
            let constants = self.loops.iter().filter(|l| l.is_constant() && lk.leaf(l.base) == i).count();
            if constants != b.genus {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relabels leaves and vertices; both maps are 1-based and total.
    pub(crate) fn relabeled(
        &self,
        sig: Signature,
        leaf_map: &dyn Fn(usize) -> usize,
        vertex_map: &dyn Fn(usize) -> usize,
    ) -> (CommDiagram, Vec<Loop>) {
        let d = &self.diagram;
        let mut valences = vec![0; sig.n_white];
        for (v, &k) in d.valences.iter().enumerate() {
            valences[vertex_map(v + 1) - 1] = k;
        }
        let blocks = d
            .blocks
            .iter()
            .map(|b| {
                let pts = b
                    .points
                    .iter()
                    .map(|p| match *p {
                        Point::Slot(v, q) => Point::Slot(vertex_map(v), q),
                        Point::Leaf(l) => Point::Leaf(leaf_map(l)),
                    })
                    .collect();
                Block::new(pts, b.genus)
            })
            .collect();
        let loops = self
            .loops
            .iter()
            .map(|l| {
                Loop::new(
                    leaf_map(l.base),
                    l.word.iter().map(|s| Seg { vertex: vertex_map(s.vertex), ..*s }).collect(),
                )
            })
            .collect();
        (CommDiagram { sig, valences, blocks }, loops)
    }

    /// Same underlying diagram with the given loop words.
    pub fn with_words(&self, words: Vec<Vec<Seg>>) -> LoopedDiagram {
        let loops = words.into_iter().enumerate().map(|(i, w)| Loop::new(i + 1, w)).collect();
        LoopedDiagram { diagram: self.diagram.clone(), loops }
    }

    pub fn words(&self) -> Vec<Vec<Seg>> {
        self.loops.iter().map(|l| l.word.clone()).collect()
    }
}

/// `labels[q]` is the block of slot `q+1`; true when no two blocks interleave.
fn is_noncrossing(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[b] == labels[a] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                for e in c + 1..n {
                    if labels[e] == labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Places `b` after `a`: vertices of `b` follow those of `a`, leaves are
/// regrouped as (loop leaves, plain inputs, outputs) with `a`'s first in each group.
pub fn disjoint_union(a: &LoopedDiagram, b: &LoopedDiagram) -> LoopedDiagram {
    let (sa, sb) = (a.sig(), b.sig());
    let sig = Signature::new(sa.n_loops + sb.n_loops, sa.m_in + sb.m_in, sa.n_white + sb.n_white, sa.m_out + sb.m_out);
    let map_a = |l: usize| -> usize {
        match sa.leaf_kind(l) {
            Some(LeafKind::Loop) => l,
            Some(LeafKind::Input) => l + sb.n_loops,
            _ => l + sb.n_loops + sb.m_in,
        }
    };
    let map_b = |l: usize| -> usize {
        match sb.leaf_kind(l) {
            Some(LeafKind::Loop) => l + sa.n_loops,
            Some(LeafKind::Input) => l + sa.n_loops + sa.m_in,
            _ => l + sa.n_loops + sa.m_in + sa.m_out,
        }
    };
    let shift = sa.n_white;
    let (da, la) = a.relabeled(sig, &map_a, &|v| v);
    let (db, lb) = b.relabeled(sig, &map_b, &|v| v + shift);
    let mut valences = da.valences.clone();
    for (v, k) in db.valences.iter().enumerate() {
        if v >= shift {
            valences[v] = *k;
        }
    }
    let mut blocks = da.blocks;
    blocks.extend(db.blocks);
    let mut loops = la;
    loops.extend(lb);
    loops.sort_by_key(|l| l.base);
    LoopedDiagram::from_parts(CommDiagram::new(sig, valences, blocks), loops)
}

impl fmt::Display for LoopedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; k={:?};", self.diagram.sig, self.diagram.valences)?;
        for b in &self.diagram.blocks {
            write!(f, " {{")?;
            for (i, p) in b.points.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                match p {
                    Point::Slot(v, q) => write!(f, "s{v}.{q}")?,
                    Point::Leaf(l) => write!(f, "L{l}")?,
                }
            }
            write!(f, "}}")?;
            if b.genus > 0 {
                write!(f, "g{}", b.genus)?;
            }
        }
        for l in &self.loops {
            write!(f, " γ{}=(", l.base)?;
            for (i, s) in l.word.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}{}.{}", if s.positive { "" } else { "-" }, s.vertex, s.index)?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}
