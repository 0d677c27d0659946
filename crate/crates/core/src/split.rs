//! Constant / non-constant splitting, irreducible factorization and types.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::Chain;
use crate::compose::compose;
use crate::diagram::{free_reduce, CommDiagram, Loop, LoopedDiagram, Seg};
use crate::error::{Error, Result};

/// Replaces the loops with indices in `t` (1-based) by constant loops.
pub fn project_constant_diagram(d: &LoopedDiagram, t: &[usize]) -> LoopedDiagram {
    let loops = d
        .loops
        .iter()
        .enumerate()
        .map(|(i, l)| if t.contains(&(i + 1)) { Loop::constant(l.base) } else { l.clone() })
        .collect();
    LoopedDiagram { diagram: d.diagram.clone(), loops }
}

pub fn project_constant(x: &Chain, t: &[usize]) -> Chain {
    x.map_linear(|d| Chain::from_diagram(project_constant_diagram(d, t)))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |mask| (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
}

/// Inclusion-exclusion projection onto the partly constant subcomplex.
pub fn p_cst(x: &Chain) -> Chain {
    x.map_linear(|d| {
        let mut out = Chain::zero();
        for t in subsets(d.sig().n_loops).filter(|t| !t.is_empty()) {
            let sign = if t.len() % 2 == 1 { 1 } else { -1 };
            out.add_i(project_constant_diagram(d, &t), sign);
        }
        out
    })
}

/// A chain written in bracket form: each stored diagram `d` stands for `d - p_cst(d)`.
/// Representatives are never partly constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonConstChain {
    pub reps: Chain,
}

impl NonConstChain {
    /// Drops partly constant terms, which vanish in bracket form.
    pub fn from_reps(c: Chain) -> Self {
        let reps = Chain::from_terms(c.iter().filter(|(d, _)| !d.is_partly_constant()).map(|(d, k)| (d.clone(), k.clone())));
        NonConstChain { reps }
    }

    /// The plain chain this represents.
    pub fn expand(&self) -> Chain {
        self.reps.minus(&p_cst(&self.reps))
    }

    pub fn is_zero(&self) -> bool {
        self.reps.is_zero()
    }
}

/// `x - p_cst(x)` in bracket form.
pub fn nonconstant_part(x: &Chain) -> NonConstChain {
    NonConstChain::from_reps(x.clone())
}

/// True when removing the segments of `t` makes some loop constant.
pub fn is_loop_covering(d: &LoopedDiagram, t: &[usize]) -> bool {
    d.loops.iter().any(|l| free_reduce(l.word.iter().copied().filter(|s| !t.contains(&s.vertex))).is_empty())
}

/// Splits a loop word at every return to the base block.
pub fn factor_irreducible(d: &LoopedDiagram, loop_index: usize) -> Vec<Vec<Seg>> {
    let lp = &d.loops[loop_index - 1];
    factor_word(&d.diagram, lp.base, &lp.word)
}

pub(crate) fn factor_word(d: &CommDiagram, base: usize, word: &[Seg]) -> Vec<Vec<Seg>> {
    let lk = d.lookup();
    let b = lk.leaf(base);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for &s in word {
        cur.push(s);
        if lk.slot(s.vertex, s.end_slot(d.valence(s.vertex))) == b {
            out.push(std::mem::take(&mut cur));
        }
    }
    debug_assert!(cur.is_empty(), "loop did not end at its base");
    out
}

/// A diagram whose loops are products of listed irreducible factors, standing
/// for the bracket `⟨γ^1, …, γ^t⟩` on each loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrDiagram {
    pub diagram: CommDiagram,
    pub factors: Vec<Vec<Vec<Seg>>>,
}

impl IrrDiagram {
    pub fn type_of(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.len()).collect()
    }

    pub fn expand(&self) -> Chain {
        expand_brackets(&self.diagram, &self.factors)
    }
}

pub fn type_of(x: &IrrDiagram) -> Vec<usize> {
    x.type_of()
}

/// `Σ_U (−1)^{Σ(t_j − |U_j|)} (Γ, γ_1^{*U_1}, …)`, the empty product being the constant loop.
pub fn expand_brackets(diagram: &CommDiagram, factors: &[Vec<Vec<Seg>>]) -> Chain {
    let mut out = Chain::zero();
    let n = factors.len();
    let mut choice: Vec<u64> = vec![0; n];
    loop {
        let mut sign_odd = false;
        let mut loops = Vec::with_capacity(n);
        for (j, fs) in factors.iter().enumerate() {
            let mut word = Vec::new();
            let mut used = 0;
            for (f, seg) in fs.iter().enumerate() {
                if choice[j] >> f & 1 == 1 {
                    word.extend(seg.iter().copied());
                    used += 1;
                }
            }
            if (fs.len() - used) % 2 == 1 {
                sign_odd = !sign_odd;
            }
            loops.push(Loop::new(j + 1, free_reduce(word)));
        }
        let d = LoopedDiagram::from_parts(diagram.clone(), loops);
        out.add_i(d, if sign_odd { -1 } else { 1 });
        let mut j = 0;
        while j < n {
            choice[j] += 1;
            if choice[j] < (1u64 << factors[j].len()) {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    out
}

/// Integer combination of bracket diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IrrChain {
    pub terms: BTreeMap<IrrDiagram, BigInt>,
}

impl IrrChain {
    pub fn add_term(&mut self, d: IrrDiagram, k: BigInt) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(d.clone()).or_default();
        *e += k;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn single(d: IrrDiagram) -> Self {
        let mut c = IrrChain::default();
        c.add_term(d, BigInt::one());
        c
    }

    pub fn expand(&self) -> Chain {
        let mut out = Chain::zero();
        for (d, k) in &self.terms {
            out.add_chain(&d.expand(), k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Splits by type.
    pub fn by_type(&self) -> BTreeMap<Vec<usize>, IrrChain> {
        let mut out: BTreeMap<Vec<usize>, IrrChain> = BTreeMap::new();
        for (d, k) in &self.terms {
            out.entry(d.type_of()).or_default().add_term(d.clone(), k.clone());
        }
        out
    }
}

/// Rewrites a plain diagram in the bracket basis: `(Γ, γ) = Σ_U ⟨γ^U⟩`.
pub fn to_irreducible(d: &LoopedDiagram) -> IrrChain {
    let all: Vec<Vec<Vec<Seg>>> = (1..=d.sig().n_loops).map(|j| factor_irreducible(d, j)).collect();
    let mut out = IrrChain::default();
    let n = all.len();
    let mut choice: Vec<u64> = vec![0; n];
    loop {
        let factors: Vec<Vec<Vec<Seg>>> = all
            .iter()
            .enumerate()
            .map(|(j, fs)| fs.iter().enumerate().filter(|(f, _)| choice[j] >> f & 1 == 1).map(|(_, w)| w.clone()).collect())
            .collect();
        out.add_term(IrrDiagram { diagram: d.diagram.clone(), factors }, BigInt::one());
        let mut j = 0;
        while j < n {
            choice[j] += 1;
            if choice[j] < (1u64 << all[j].len()) {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    out
}

pub fn chain_to_irreducible(c: &Chain) -> IrrChain {
    let mut out = IrrChain::default();
    for (d, k) in c.iter() {
        for (e, m) in to_irreducible(d).terms {
            out.add_term(e, m * k);
        }
    }
    out
}

pub const DEFAULT_TYPE_BOUND: usize = 6;

/// A type-graded family truncated at `bound` per component.
///
/// `truncated` is set whenever entries above the bound were dropped or an
/// input was itself truncated, so an unmarked family is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedFamily {
    pub n_loops: usize,
    pub bound: usize,
    pub truncated: bool,
    pub entries: BTreeMap<Vec<usize>, IrrChain>,
}

impl TypedFamily {
    pub fn new(n_loops: usize, bound: usize) -> Self {
        TypedFamily { n_loops, bound, truncated: false, entries: BTreeMap::new() }
    }

    pub fn from_irr(c: &IrrChain, n_loops: usize, bound: usize) -> Self {
        let mut fam = TypedFamily::new(n_loops, bound);
        fam.absorb(c);
        fam
    }

    pub fn from_chain(c: &Chain, n_loops: usize, bound: usize) -> Self {
        Self::from_irr(&chain_to_irreducible(c), n_loops, bound)
    }

    fn absorb(&mut self, c: &IrrChain) {
        for (t, part) in c.by_type() {
            if t.iter().any(|&x| x > self.bound) {
                self.truncated = true;
                continue;
            }
            let e = self.entries.entry(t.clone()).or_default();
            for (d, k) in part.terms {
                e.add_term(d, k);
            }
            if e.is_zero() {
                self.entries.remove(&t);
            }
        }
    }

    /// Finitely supported and exact.
    pub fn is_finite(&self) -> bool {
        !self.truncated
    }

    pub fn to_irr(&self) -> IrrChain {
        let mut out = IrrChain::default();
        for c in self.entries.values() {
            for (d, k) in &c.terms {
                out.add_term(d.clone(), k.clone());
            }
        }
        out
    }

    pub fn expand(&self) -> Chain {
        self.to_irr().expand()
    }
}

fn family_source_loops(f: &TypedFamily) -> Option<usize> {
    f.entries.values().flat_map(|c| c.terms.keys()).next().map(|d| d.diagram.sig.n_loops)
}

/// `b ∘ a` on typed families.
///
/// Composable when `a` has no loop inputs or `b` is exact; the result is
/// regraded by type and cut at the smaller bound.
pub fn truncated_compose(b: &TypedFamily, a: &TypedFamily) -> Result<TypedFamily> {
    let n1 = family_source_loops(a).unwrap_or(a.n_loops);
    if n1 != 0 && b.truncated {
        return Err(Error::NotComposable(
            "the outer family is truncated and the inner one has loop inputs".into(),
        ));
    }
    let bound = a.bound.min(b.bound);
    let mut out = TypedFamily::new(a.n_loops, bound);
    out.truncated = a.truncated || b.truncated;
    let mut acc = Chain::zero();
    for ca in a.entries.values() {
        let ea = ca.expand();
        for cb in b.entries.values() {
            acc = acc.plus(&compose(&cb.expand(), &ea)?);
        }
    }
    out.absorb(&chain_to_irreducible(&acc));
    Ok(out)
}
