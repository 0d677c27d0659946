//! Named diagrams and the commutative operation builder.


use crate::chain::Chain;
use crate::compose::{compose, identity_of};
use crate::diagram::{disjoint_union, Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};
use crate::error::{Error, Result};
use crate::split::{nonconstant_part, IrrChain, IrrDiagram, TypedFamily, DEFAULT_TYPE_BOUND};

fn ld(sig: Signature, valences: Vec<usize>, blocks: Vec<(Vec<Point>, usize)>, words: Vec<Vec<Seg>>) -> LoopedDiagram {
    let blocks = blocks.into_iter().map(|(p, g)| Block::new(p, g)).collect();
    let loops = words.into_iter().enumerate().map(|(i, w)| Loop::new(i + 1, w)).collect();
    let d = LoopedDiagram::from_parts(CommDiagram::new(sig, valences, blocks), loops);
    debug_assert!(d.validate().is_ok(), "catalog diagram invalid: {d}");
    d
}

use Point::{Leaf as L, Slot as S};

/// `id_{1/0}`.
pub fn id() -> LoopedDiagram {
    identity_of(1, 0)
}

/// One vertex, one slot, both loops going once around it.
pub fn pr() -> LoopedDiagram {
    ld(Signature::new(2, 0, 1, 0), vec![1], vec![(vec![S(1, 1), L(1), L(2)], 0)], vec![vec![Seg::pos(1, 1)], vec![Seg::pos(1, 1)]])
}

/// Two singular vertices joined to the loop leaf; the loop visits both.
pub fn delta() -> LoopedDiagram {
    ld(
        Signature::new(1, 0, 2, 0),
        vec![1, 1],
        vec![(vec![S(1, 1), S(2, 1), L(1)], 0)],
        vec![vec![Seg::pos(1, 1), Seg::pos(2, 1)]],
    )
}

/// Unit on the start slot, the leaf on slot 2, loop once around.
pub fn b() -> LoopedDiagram {
    ld(
        Signature::new(1, 0, 1, 0),
        vec![2],
        vec![(vec![S(1, 1)], 0), (vec![S(1, 2), L(1)], 0)],
        vec![vec![Seg::pos(1, 2), Seg::pos(1, 1)]],
    )
}

/// The plain diagram underlying the product.
pub fn mu_diagram() -> LoopedDiagram {
    ld(
        Signature::new(2, 0, 1, 0),
        vec![2],
        vec![(vec![S(1, 1), S(1, 2), L(1), L(2)], 0)],
        vec![vec![Seg::pos(1, 1)], vec![Seg::pos(1, 2)]],
    )
}

/// The product, as the bracket `⟨μ⟩`, which is a cycle.
pub fn mu() -> Chain {
    nonconstant_part(&Chain::from_diagram(mu_diagram())).expand()
}

/// The two diagrams spanning the null-homotopy.
pub fn d_parts() -> (LoopedDiagram, LoopedDiagram) {
    let once_around = ld(
        Signature::new(1, 0, 1, 0),
        vec![3],
        vec![(vec![S(1, 1), S(1, 2), S(1, 3), L(1)], 0)],
        vec![vec![Seg::pos(1, 1), Seg::pos(1, 2), Seg::pos(1, 3)]],
    );
    let handle = ld(
        Signature::new(1, 0, 1, 0),
        vec![3],
        vec![(vec![S(1, 1)], 0), (vec![S(1, 2), S(1, 3), L(1)], 1)],
        vec![vec![Seg::pos(1, 2)]],
    );
    (once_around, handle)
}

/// `D` with `d(D) = μ ∘ Δ`.
pub fn d_element() -> Chain {
    let (a, h) = d_parts();
    let c = Chain::from_diagram(h).minus(&Chain::from_diagram(a));
    nonconstant_part(&c).expand()
}

/// `l_n`: one vertex of valence `n`, slot `t` alone with plain input `t`.
pub fn l(n: usize) -> LoopedDiagram {
    let blocks = (1..=n).map(|t| (vec![S(1, t), L(t)], 0)).collect();
    ld(Signature::new(0, n, 1, 0), vec![n], blocks, vec![])
}

fn sigma_vertex() -> CommDiagram {
    CommDiagram::new(Signature::new(1, 0, 1, 0), vec![1], vec![Block::new(vec![S(1, 1), L(1)], 0)])
}

/// `sh^0`: the algebra included in degree zero.
pub fn sh0() -> LoopedDiagram {
    ld(Signature::new(0, 1, 1, 0), vec![1], vec![(vec![S(1, 1), L(1)], 0)], vec![])
}

/// `sh^n` for `n ≥ 1` as a bracket diagram of type `n`.
pub fn sh_irr(n: usize) -> IrrDiagram {
    IrrDiagram { diagram: sigma_vertex(), factors: vec![vec![vec![Seg::pos(1, 1)]; n]] }
}

/// `sh^n` as a plain chain (`sh^0` for `n = 0`).
pub fn sh(n: usize) -> Chain {
    if n == 0 {
        Chain::from_diagram(sh0())
    } else {
        sh_irr(n).expand()
    }
}

/// `λ^n`: the loop going `n` times around, non-constant part (`λ^0 = sh^0`).
pub fn lambda(n: usize) -> Chain {
    if n == 0 {
        return sh(0);
    }
    let d = LoopedDiagram::from_parts(sigma_vertex(), vec![Loop::new(1, vec![Seg::pos(1, 1); n])]);
    nonconstant_part(&Chain::from_diagram(d)).expand()
}

/// `B^n = B ∘ sh^n`.
pub fn b_n(n: usize) -> Result<Chain> {
    compose(&Chain::from_diagram(b()), &sh(n))
}

/// `B^n` for `n ≥ 1` as a bracket diagram.
pub fn b_irr(n: usize) -> IrrDiagram {
    let base = b();
    IrrDiagram { diagram: base.diagram.clone(), factors: vec![vec![base.loops[0].word.clone(); n]] }
}

/// `m_{r_1..r_n}`: a tree joining `n` loop leaves to the start slot, each loop once around.
pub fn m(n: usize) -> LoopedDiagram {
    let mut pts = vec![S(1, 1)];
    pts.extend((1..=n).map(L));
    ld(Signature::new(n, 0, 1, 0), vec![1], vec![(pts, 0)], vec![vec![Seg::pos(1, 1)]; n])
}

/// `m̄_{r_1..r_n}`: a tree from `n` plain inputs to one output.
pub fn m_bar(n: usize) -> LoopedDiagram {
    ld(Signature::new(0, n, 0, 1), vec![], vec![((1..=n + 1).map(L).collect(), 0)], vec![])
}

/// Identity from a loop input to an output leaf, with a constant loop.
fn id_loop_to_output() -> LoopedDiagram {
    ld(Signature::new(1, 0, 0, 1), vec![], vec![(vec![L(1), L(2)], 0)], vec![vec![]])
}

#[derive(Clone, Debug)]
pub enum CatalogValue {
    Diagram(LoopedDiagram),
    Chain(Chain),
    Irr(IrrDiagram),
}

impl CatalogValue {
    pub fn chain(&self) -> Chain {
        match self {
            CatalogValue::Diagram(d) => Chain::from_diagram(d.clone()),
            CatalogValue::Chain(c) => c.clone(),
            CatalogValue::Irr(d) => d.expand(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<usize>,
    pub value: CatalogValue,
    pub note: &'static str,
}

pub const CATALOG_NAMES: &[&str] = &["id", "pr", "Delta", "B", "mu", "D", "sh", "lambda", "B_n", "l", "m", "m_bar"];

pub fn catalog_get(name: &str, params: &[usize]) -> Result<CatalogEntry> {
    let p0 = || params.first().copied().ok_or_else(|| Error::InvalidData(format!("{name} needs a parameter")));
    let (value, note) = match name {
        "id" => (CatalogValue::Diagram(id()), "identity on one Hochschild factor"),
        "pr" => (CatalogValue::Diagram(pr()), "shuffle product"),
        "Delta" => (CatalogValue::Diagram(delta()), "coproduct"),
        "B" => (CatalogValue::Diagram(b()), "Connes boundary"),
        "mu" => (CatalogValue::Chain(mu()), "product of degree one, bracket form"),
        "D" => (CatalogValue::Chain(d_element()), "null-homotopy with d(D) = mu o Delta"),
        "sh" => {
            let n = p0()?;
            if n == 0 {
                (CatalogValue::Diagram(sh0()), "inclusion of the algebra")
            } else {
                (CatalogValue::Irr(sh_irr(n)), "shuffle operation of type n")
            }
        }
        "lambda" => (CatalogValue::Chain(lambda(p0()?)), "loop n times around, non-constant part"),
        "B_n" => {
            let n = p0()?;
            if n == 0 {
                (CatalogValue::Chain(b_n(0)?), "B after sh^0")
            } else {
                (CatalogValue::Irr(b_irr(n)), "B after sh^n")
            }
        }
        "l" => (CatalogValue::Diagram(l(p0()?)), "corolla with n plain inputs"),
        "m" => (CatalogValue::Diagram(m(p0()?)), "tree of loop leaves on the start slot"),
        "m_bar" => (CatalogValue::Diagram(m_bar(p0()?)), "tree of plain inputs to one output"),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(CatalogEntry { name: name.to_string(), params: params.to_vec(), value, note })
}

/// Relabels the plain leaves of a union of building blocks so that the
/// building block of input `i` gets leaf `i`. Blocks are already in input order.
fn union_all(parts: &[LoopedDiagram]) -> LoopedDiagram {
    let mut acc = LoopedDiagram::from_parts(CommDiagram::new(Signature::default(), vec![], vec![]), vec![]);
    for p in parts {
        acc = disjoint_union(&acc, p);
    }
    acc
}

/// Builds `x = x2 ∘ x1` from `f: {1..n1+m1} -> {1..n2+m2}` (1-based values),
/// the type `t` of the loop inputs and `s` (indexed like `f`, read only where `f(i) ≤ n2`).
pub fn build_tcom(n_outputs: (usize, usize), f: &[usize], t: &[usize], s: &[u8]) -> Result<TypedFamily> {
    let (n2, m2) = n_outputs;
    let n1 = t.len();
    if f.len() < n1 || s.len() != f.len() {
        return Err(Error::InvalidData("f, t and s lengths disagree".into()));
    }
    let m1 = f.len() - n1;
    for (i, &fi) in f.iter().enumerate() {
        if fi == 0 || fi > n2 + m2 {
            return Err(Error::InvalidData(format!("f({}) = {fi} out of range", i + 1)));
        }
        if i < n1 && fi > n2 && t[i] != 0 {
            return Err(Error::InvalidData(format!("t_{} must vanish when f maps it to an output", i + 1)));
        }
        if s[i] > 1 {
            return Err(Error::InvalidData("s takes values 0 and 1".into()));
        }
    }
    // x1 factors: loop inputs first, then plain inputs; each is a bracket family.
    let mut parts: Vec<IrrChain> = Vec::new();
    for i in 0..n1 + m1 {
        let to_vertex = f[i] <= n2;
        let part = if i < n1 {
            if !to_vertex {
                IrrChain::single(IrrDiagram { diagram: id_loop_to_output().diagram, factors: vec![vec![]] })
            } else if t[i] == 0 {
                // Type zero: the bracket with no factors, i.e. a constant loop.
                let diagram = if s[i] == 0 { sigma_vertex() } else { b().diagram };
                IrrChain::single(IrrDiagram { diagram, factors: vec![vec![]] })
            } else if s[i] == 0 {
                IrrChain::single(sh_irr(t[i]))
            } else {
                IrrChain::single(b_irr(t[i]))
            }
        } else if !to_vertex {
            IrrChain::single(IrrDiagram { diagram: identity_of(0, 1).diagram, factors: vec![] })
        } else if s[i] == 0 {
            IrrChain::single(IrrDiagram { diagram: sh0().diagram, factors: vec![] })
        } else {
            let c = b_n(0)?;
            let d = c.diagrams().next().expect("B^0 is nonzero").clone();
            IrrChain::single(IrrDiagram { diagram: d.diagram, factors: vec![] })
        };
        parts.push(part);
    }
    // Disjoint union of single bracket diagrams, factor lists concatenated in loop order.
    let mut diagram = LoopedDiagram::from_parts(CommDiagram::new(Signature::default(), vec![], vec![]), vec![]);
    let mut factors = Vec::new();
    for part in &parts {
        let (d, _) = part.terms.iter().next().expect("single term");
        let plain = LoopedDiagram { diagram: d.diagram.clone(), loops: (1..=d.factors.len()).map(Loop::constant).collect() };
        let offset = diagram.diagram.sig.n_white;
        diagram = disjoint_union(&diagram, &plain);
        factors.extend(d.factors.iter().map(|f| {
            f.iter().map(|w| w.iter().map(|s| Seg { vertex: s.vertex + offset, ..*s }).collect()).collect()
        }));
    }
    // The outer union places loop inputs of every part before plain inputs of every
    // part, which is exactly the required labeling because loop parts come first.
    let x1 = IrrDiagram { diagram: diagram.diagram, factors };
    // x2: trees collecting the c vertices and the remaining leaves by their target.
    let vertex_inputs: Vec<usize> = (0..n1 + m1).filter(|&i| f[i] <= n2).collect();
    let leaf_inputs: Vec<usize> = (0..n1 + m1).filter(|&i| f[i] > n2).collect();
    let c = vertex_inputs.len();
    let mut x2_parts = Vec::new();
    let mut loop_order = Vec::new();
    let mut leaf_order = Vec::new();
    for j in 1..=n2 {
        let members: Vec<usize> = vertex_inputs.iter().enumerate().filter(|(_, &i)| f[i] == j).map(|(r, _)| r + 1).collect();
        loop_order.extend(members.iter().copied());
        x2_parts.push(m(members.len()));
    }
    for j in 1..=m2 {
        let members: Vec<usize> =
            leaf_inputs.iter().enumerate().filter(|(_, &i)| f[i] == n2 + j).map(|(r, _)| r + 1).collect();
        leaf_order.extend(members.iter().copied());
        x2_parts.push(m_bar(members.len()));
    }
    let union = union_all(&x2_parts);
    // Rename the union's loop leaves to the vertex order of x1 and its plain inputs
    // to the leaf order of x1.
    let sig2 = Signature::new(c, leaf_inputs.len(), n2, m2);
    let leaf_map = |l: usize| -> usize {
        if l <= c {
            loop_order[l - 1]
        } else if l <= c + leaf_inputs.len() {
            c + leaf_order[l - c - 1]
        } else {
            l
        }
    };
    let (d2, loops2) = union.relabeled(sig2, &leaf_map, &|v| v);
    let mut loops2 = loops2;
    loops2.sort_by_key(|l| l.base);
    let x2 = LoopedDiagram::from_parts(d2, loops2);
    x2.validate()?;
    let composite = compose(&Chain::from_diagram(x2), &x1.expand())?;
    let fam = TypedFamily::from_chain(&composite, n1, DEFAULT_TYPE_BOUND);
    Ok(fam)
}

