//! Fat graphs with white and black vertices, their boundary cycles, and the
//! functor `K` to looped diagrams.
//!
//! Half-edges are `0..n`. `sigma` gives the cyclic successor at a vertex and
//! `iota` pairs the two halves of an edge; its fixed points are leaves.
//! Boundary cycles are the orbits of `iota ∘ sigma`: from `h`, turn to `sigma(h)`
//! at the same vertex and cross its edge. Passing a white corner `(h, sigma(h))`
//! traverses that white segment positively.

use std::collections::BTreeMap;

use crate::diagram::{Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatGraph {
    pub sig: Signature,
    pub sigma: Vec<usize>,
    pub iota: Vec<usize>,
    /// Start half-edge of each white vertex, in vertex order.
    pub white_starts: Vec<usize>,
    /// Labels of leaves, keyed by half-edge.
    pub leaf_labels: BTreeMap<usize, usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Owner {
    White { vertex: usize, slot: usize },
    Black(usize),
}

impl FatGraph {
    /// Builds a fat graph from vertices listed as cyclic half-edge sequences.
    /// White vertices start at their start half-edge.
    pub fn from_vertices(
        sig: Signature,
        white: &[Vec<usize>],
        black: &[Vec<usize>],
        edges: &[(usize, usize)],
        labels: &[(usize, usize)],
    ) -> Result<Self> {
        let n = white.iter().chain(black).map(|v| v.len()).sum();
        let mut sigma = vec![usize::MAX; n];
        for v in white.iter().chain(black) {
            for (i, &h) in v.iter().enumerate() {
                if h >= n || sigma[h] != usize::MAX {
                    return Err(Error::NotSullivan(format!("half-edge {h} listed twice or out of range")));
                }
                sigma[h] = v[(i + 1) % v.len()];
            }
        }
        let mut iota: Vec<usize> = (0..n).collect();
        for &(a, b) in edges {
            if a >= n || b >= n || a == b || iota[a] != a || iota[b] != b {
                return Err(Error::NotSullivan(format!("bad edge ({a}, {b})")));
            }
            iota[a] = b;
            iota[b] = a;
        }
        let g = FatGraph {
            sig,
            sigma,
            iota,
            white_starts: white.iter().map(|v| v.first().copied().unwrap_or(usize::MAX)).collect(),
            leaf_labels: labels.iter().copied().collect(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn n_half_edges(&self) -> usize {
        self.sigma.len()
    }

    fn owners(&self) -> Result<Vec<Owner>> {
        let n = self.n_half_edges();
        let mut owner: Vec<Option<Owner>> = vec![None; n];
        for (v, &s) in self.white_starts.iter().enumerate() {
            if s >= n {
                return Err(Error::NotSullivan(format!("white vertex {} has no start half-edge", v + 1)));
            }
            let (mut h, mut slot) = (s, 1);
            loop {
                if owner[h].is_some() {
                    return Err(Error::NotSullivan(format!("white vertices {} overlap", v + 1)));
                }
                owner[h] = Some(Owner::White { vertex: v + 1, slot });
                h = self.sigma[h];
                slot += 1;
                if h == s {
                    break;
                }
            }
        }
        let mut nb = 0;
        for s in 0..n {
            if owner[s].is_some() {
                continue;
            }
            let mut h = s;
            let mut size = 0;
            loop {
                owner[h] = Some(Owner::Black(nb));
                size += 1;
                h = self.sigma[h];
                if h == s {
                    break;
                }
            }
            if size != 3 {
                return Err(Error::NotSullivan(format!("black vertex at half-edge {s} has valence {size}")));
            }
            nb += 1;
        }
        Ok(owner.into_iter().map(|o| o.expect("every half-edge has a vertex")).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_half_edges();
        if self.iota.len() != n {
            return Err(Error::NotSullivan("sigma and iota sizes differ".into()));
        }
        let mut seen = vec![false; n];
        for &h in &self.sigma {
            if h >= n || std::mem::replace(&mut seen[h], true) {
                return Err(Error::NotSullivan("sigma is not a permutation".into()));
            }
        }
        if (0..n).any(|h| self.iota[h] >= n || self.iota[self.iota[h]] != h) {
            return Err(Error::NotSullivan("iota is not an involution".into()));
        }
        if self.white_starts.len() != self.sig.n_white {
            return Err(Error::SignatureMismatch(format!(
                "{} white vertices for signature with {}",
                self.white_starts.len(),
                self.sig.n_white
            )));
        }
        let owner = self.owners()?;
        let mut labels: Vec<usize> = Vec::new();
        for (&h, &l) in &self.leaf_labels {
            if h >= n || self.iota[h] != h {
                return Err(Error::BadLabels(format!("label {l} is not on a leaf")));
            }
            labels.push(l);
        }
        labels.sort_unstable();
        if labels != (1..=self.sig.n_leaves()).collect::<Vec<_>>() {
            return Err(Error::BadLabels(format!("labels {labels:?} are not 1..={}", self.sig.n_leaves())));
        }
        for h in 0..n {
            if self.iota[h] == h && matches!(owner[h], Owner::Black(_)) && !self.leaf_labels.contains_key(&h) {
                return Err(Error::NotSullivan(format!("unlabeled leaf {h} at a black vertex")));
            }
        }
        Ok(())
    }

    /// Sum of `valence - 1` over white vertices.
    pub fn degree(&self) -> Result<usize> {
        let owner = self.owners()?;
        Ok(owner.iter().filter(|o| matches!(o, Owner::White { .. })).count() - self.sig.n_white)
    }

    fn face_step(&self, h: usize) -> usize {
        self.iota[self.sigma[h]]
    }

    fn cycle_from(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut h = self.face_step(start);
        while h != start {
            out.push(h);
            h = self.face_step(h);
        }
        out
    }
}

/// Orbits of `iota ∘ sigma`, each starting at its minimal half-edge, sorted.
pub fn boundary_cycles(g: &FatGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n_half_edges()];
    let mut out = Vec::new();
    for s in 0..g.n_half_edges() {
        if seen[s] {
            continue;
        }
        let c = g.cycle_from(s);
        for &h in &c {
            seen[h] = true;
        }
        out.push(c);
    }
    out
}

/// Forgets the black cyclic orders and follows the boundary cycle of each loop leaf.
pub fn functor_k(g: &FatGraph) -> Result<LoopedDiagram> {
    g.validate()?;
    let owner = g.owners()?;
    let n = g.n_half_edges();
    let n_black = owner.iter().filter_map(|o| if let Owner::Black(b) = o { Some(b + 1) } else { None }).max().unwrap_or(0);
    // Nodes: black vertices, then one per white half-edge.
    let node = |h: usize| match owner[h] {
        Owner::Black(b) => b,
        Owner::White { .. } => n_black + h,
    };
    let mut uf = UnionFind::new(n_black + n);
    let mut cycles_at = vec![0usize; n_black + n];
    let mut extra = Vec::new();
    for h in 0..n {
        let k = g.iota[h];
        if h < k && !uf.union(node(h), node(k)) {
            extra.push(node(h));
        }
    }
    for x in extra {
        let r = uf.find(x);
        cycles_at[r] += 1;
    }
    let mut blocks: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
    for r in 0..n_black {
        let root = uf.find(r);
        blocks.entry(root).or_default();
    }
    for h in 0..n {
        let root = uf.find(node(h));
        if let Owner::White { vertex, slot } = owner[h] {
            blocks.entry(root).or_default().push(Point::Slot(vertex, slot));
        }
        if let Some(&l) = g.leaf_labels.get(&h) {
            blocks.entry(root).or_default().push(Point::Leaf(l));
        }
    }
    let blocks: Vec<Block> = blocks.into_iter().map(|(root, pts)| Block::new(pts, cycles_at[root])).collect();
    let mut valences = vec![0; g.sig.n_white];
    for o in &owner {
        if let Owner::White { vertex, .. } = *o {
            valences[vertex - 1] += 1;
        }
    }
    let by_label: BTreeMap<usize, usize> = g.leaf_labels.iter().map(|(&h, &l)| (l, h)).collect();
    let mut loops = Vec::with_capacity(g.sig.n_loops);
    for i in 1..=g.sig.n_loops {
        let cycle = g.cycle_from(by_label[&i]);
        if cycle.iter().any(|h| g.leaf_labels.get(h).is_some_and(|&l| l != i)) {
            return Err(Error::LeafNotSoleInCycle(i));
        }
        let word = cycle
            .iter()
            .filter_map(|&h| if let Owner::White { vertex, slot } = owner[h] { Some(Seg::pos(vertex, slot)) } else { None })
            .collect();
        loops.push(Loop::new(i, word));
    }
    LoopedDiagram::new(CommDiagram::new(g.sig, valences, blocks), loops)
}
