//! Normalized Hochschild chains, evaluation of loop-free diagrams, the functor J
//! and independent combinatorial oracles.
//!
//! A chain of profile `(j_1, …, j_n; m)` is a tensor whose factors are grouped as
//! `a_1^0 … a_1^{j_1} | … | a_n^0 … a_n^{j_n} | b_1 … b_m`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::chain::{differential, Chain};
use crate::compose::{compose, identity_of};
use crate::diagram::{disjoint_union, CommDiagram, LoopedDiagram, Point, Signature};
use crate::error::{Error, Result};
use crate::frobenius::{evaluate_block, FrobeniusAlgebra};
use crate::split::TypedFamily;
use crate::tensor::{q, TensorElement, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub degrees: Vec<usize>,
    pub m: usize,
}

impl Profile {
    pub fn new(degrees: Vec<usize>, m: usize) -> Self {
        Profile { degrees, m }
    }

    pub fn arity(&self) -> usize {
        self.degrees.iter().map(|j| j + 1).sum::<usize>() + self.m
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Start offset of each Hochschild group.
    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.degrees.len());
        let mut at = 0;
        for j in &self.degrees {
            off.push(at);
            at += j + 1;
        }
        off
    }

    /// All profiles with `n` groups, `m` algebra factors and total degree at most `max`.
    pub fn all_up_to(n: usize, m: usize, max: usize) -> Vec<Profile> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(n: usize, left: usize, cur: &mut Vec<usize>, m: usize, out: &mut Vec<Profile>) {
            if cur.len() == n {
                out.push(Profile::new(cur.clone(), m));
                return;
            }
            for j in 0..=left {
                cur.push(j);
                rec(n, left - j, cur, m, out);
                cur.pop();
            }
        }
        rec(n, max, &mut cur, m, &mut out);
        out
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(|j| j.to_string()).collect();
        write!(f, "({}; {})", d.join(","), self.m)
    }
}

/// A homogeneous chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildElement {
    pub profile: Profile,
    pub value: TensorElement,
}

impl HochschildElement {
    pub fn new(profile: Profile, value: TensorElement) -> Result<Self> {
        if value.arity != profile.arity() {
            return Err(Error::ProfileMismatch(format!(
                "tensor of arity {} for profile {profile}",
                value.arity
            )));
        }
        Ok(HochschildElement { profile, value })
    }

    pub fn basis(profile: Profile, idx: Vec<usize>) -> Self {
        HochschildElement { profile, value: TensorElement::basis(idx) }
    }
}

/// A sum of chains of possibly different profiles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HochschildSum {
    pub parts: BTreeMap<Profile, TensorElement>,
}

impl HochschildSum {
    pub fn add(&mut self, profile: &Profile, t: &TensorElement, k: &Q) {
        if t.is_zero() || k.is_zero() {
            return;
        }
        let e = self.parts.entry(profile.clone()).or_insert_with(|| TensorElement::zero(profile.arity()));
        e.add_scaled(t, k);
        if e.is_zero() {
            self.parts.remove(profile);
        }
    }

    pub fn add_sum(&mut self, other: &HochschildSum, k: &Q) {
        for (p, t) in &other.parts {
            self.add(p, t, k);
        }
    }

    pub fn from_element(h: &HochschildElement) -> Self {
        let mut s = HochschildSum::default();
        s.add(&h.profile, &h.value, &Q::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn minus(&self, other: &HochschildSum) -> HochschildSum {
        let mut s = self.clone();
        s.add_sum(other, &-Q::one());
        s
    }

    pub fn scaled(&self, k: &Q) -> HochschildSum {
        let mut s = HochschildSum::default();
        s.add_sum(self, k);
        s
    }

    pub fn elements(&self) -> impl Iterator<Item = HochschildElement> + '_ {
        self.parts.iter().map(|(p, t)| HochschildElement { profile: p.clone(), value: t.clone() })
    }
}

impl std::fmt::Display for HochschildSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (p, t) in &self.parts {
            writeln!(f, "{p}: {t}")?;
        }
        Ok(())
    }
}

/// True when the tuple has the unit in a non-zeroth slot of some group.
fn is_degenerate(profile: &Profile, unit: usize, idx: &[usize]) -> bool {
    profile.offsets().iter().zip(&profile.degrees).any(|(&o, &j)| idx[o + 1..=o + j].contains(&unit))
}

/// Drops degenerate tuples. Requires the unit to be a basis vector.
pub fn normalize(a: &FrobeniusAlgebra, profile: &Profile, t: &TensorElement) -> Result<TensorElement> {
    let u = a.unit_index()?;
    let mut out = TensorElement::zero(t.arity);
    for (idx, c) in &t.terms {
        if !is_degenerate(profile, u, idx) {
            out.add_term(idx.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Basis of the normalized chains of the given profile.
pub fn normalized_basis(a: &FrobeniusAlgebra, profile: &Profile) -> Result<Vec<Vec<usize>>> {
    let u = a.unit_index()?;
    let n = profile.arity();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    let total = a.dim.checked_pow(n as u32).expect("profile too large");
    for mut code in 0..total {
        for slot in idx.iter_mut() {
            *slot = code % a.dim;
            code /= a.dim;
        }
        if !is_degenerate(profile, u, &idx) {
            out.push(idx.clone());
        }
    }
    Ok(out)
}

fn mul_basis(a: &FrobeniusAlgebra, i: usize, j: usize) -> &[(usize, Q)] {
    &a.mult[i][j]
}

/// The Hochschild boundary `b`, acting on each group with the Koszul sign
/// `(-1)^{j_1 + … + j_{g-1}}`.
pub fn hochschild_boundary(a: &FrobeniusAlgebra, h: &HochschildElement) -> Result<HochschildSum> {
    let p = &h.profile;
    let mut out = HochschildSum::default();
    let offsets = p.offsets();
    let mut before = 0usize;
    for (g, &j) in p.degrees.iter().enumerate() {
        if j == 0 {
            continue;
        }
        let mut np = p.clone();
        np.degrees[g] -= 1;
        let o = offsets[g];
        let mut t = TensorElement::zero(np.arity());
        for (idx, c) in &h.value.terms {
            for i in 0..=j {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let (x, y) = if i < j { (idx[o + i], idx[o + i + 1]) } else { (idx[o + j], idx[o]) };
                for (k, m) in mul_basis(a, x, y) {
                    let mut new = Vec::with_capacity(idx.len() - 1);
                    if i < j {
                        new.extend_from_slice(&idx[..o + i]);
                        new.push(*k);
                        new.extend_from_slice(&idx[o + i + 2..]);
                    } else {
                        new.extend_from_slice(&idx[..o]);
                        new.push(*k);
                        new.extend_from_slice(&idx[o + 1..o + j]);
                        new.extend_from_slice(&idx[o + j + 1..]);
                    }
                    t.add_term(new, c * m * q(sign));
                }
            }
        }
        let t = normalize(a, &np, &t)?;
        let k = if before.is_multiple_of(2) { Q::one() } else { -Q::one() };
        out.add(&np, &t, &k);
        before += j;
    }
    Ok(out)
}

pub fn hochschild_boundary_sum(a: &FrobeniusAlgebra, s: &HochschildSum) -> Result<HochschildSum> {
    let mut out = HochschildSum::default();
    for h in s.elements() {
        out.add_sum(&hochschild_boundary(a, &h)?, &Q::one());
    }
    Ok(out)
}

/// `d_HH = -b`, the sign under which J commutes with differentials.
pub fn d_hh(a: &FrobeniusAlgebra, s: &HochschildSum) -> Result<HochschildSum> {
    Ok(hochschild_boundary_sum(a, s)?.scaled(&-Q::one()))
}

/// Output profile of a loop-free diagram: one group per white vertex, then the outputs.
pub fn output_profile(d: &CommDiagram) -> Profile {
    Profile::new(d.valences.iter().map(|k| k - 1).collect(), d.sig.m_out)
}

/// Evaluates a loop-free diagram on one basis tuple of its plain inputs.
fn evaluate_on_basis(a: &FrobeniusAlgebra, d: &CommDiagram, idx: &[usize]) -> Result<TensorElement> {
    let sig = d.sig;
    let offsets: Vec<usize> = d.valences.iter().scan(0, |acc, k| {
        let o = *acc;
        *acc += k;
        Some(o)
    }).collect();
    let slots_total: usize = d.valences.iter().sum();
    let first_out = sig.first_output();
    let n_out = slots_total + sig.m_out;
    let counit_allowed = a.counit.is_some();
    let mut partial: Vec<(Vec<usize>, Q)> = vec![(vec![usize::MAX; n_out], Q::one())];
    for b in &d.blocks {
        let mut inputs = Vec::new();
        let mut outs = Vec::new();
        for &p in &b.points {
            match p {
                Point::Slot(v, s) => outs.push(offsets[v - 1] + s - 1),
                Point::Leaf(l) if l >= first_out => outs.push(slots_total + l - first_out),
                Point::Leaf(l) => {
                    let i = *idx.get(l - 1).ok_or(Error::UnassignedLeaf(l))?;
                    inputs.push(a.basis_vec(i));
                }
            }
        }
        let t = evaluate_block(a, &inputs, outs.len(), b.genus, counit_allowed)?;
        let mut next = Vec::with_capacity(partial.len() * t.len().max(1));
        for (arr, c) in &partial {
            for (bidx, k) in &t.terms {
                let mut arr = arr.clone();
                for (r, &pos) in outs.iter().enumerate() {
                    arr[pos] = bidx[r];
                }
                next.push((arr, c * k));
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }
    let mut out = TensorElement::zero(n_out);
    for (arr, c) in partial {
        out.add_term(arr, c);
    }
    Ok(out)
}

/// Evaluates a loop-free diagram on a tensor assigning one factor per plain input.
/// The result groups slots of each white vertex (slot 1 first), then output leaves.
pub fn evaluate_diagram(a: &FrobeniusAlgebra, d: &CommDiagram, inputs: &TensorElement) -> Result<HochschildElement> {
    let sig = d.sig;
    if sig.n_loops != 0 {
        return Err(Error::ProfileMismatch("evaluate_diagram needs a loop-free diagram".into()));
    }
    if inputs.arity < sig.m_in {
        return Err(Error::UnassignedLeaf(inputs.arity + 1));
    }
    if inputs.arity > sig.m_in {
        return Err(Error::ArityMismatch { expected: sig.m_in, found: inputs.arity });
    }
    let profile = output_profile(d);
    let mut out = TensorElement::zero(profile.arity());
    for (idx, c) in &inputs.terms {
        out.add_scaled(&evaluate_on_basis(a, d, idx)?, c);
    }
    let value = normalize(a, &profile, &out)?;
    Ok(HochschildElement { profile, value })
}

/// `l_{j_1+1} ⊔ … ⊔ l_{j_n+1} ⊔ id_{0/m}`.
pub fn corolla_input(profile: &Profile) -> LoopedDiagram {
    let mut acc = identity_of(0, 0);
    for &j in &profile.degrees {
        acc = disjoint_union(&acc, &crate::catalog::l(j + 1));
    }
    disjoint_union(&acc, &identity_of(0, profile.m))
}

/// Memoizes `x ∘ (l_{j+1} ⊔ … ⊔ id)` per diagram and profile.
#[derive(Default)]
pub struct JEvaluator {
    memo: RwLock<HashMap<(Vec<u8>, Profile), Arc<Chain>>>,
}

impl JEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    fn glued(&self, d: &LoopedDiagram, profile: &Profile) -> Result<Arc<Chain>> {
        let key = (d.canonical_key(), profile.clone());
        if let Some(c) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(c.clone());
        }
        let c = Arc::new(compose(&Chain::from_diagram(d.clone()), &Chain::from_diagram(corolla_input(profile)))?);
        self.memo.write().expect("memo lock").entry(key).or_insert(c.clone());
        Ok(c)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn check_profile(sig: Signature, profile: &Profile) -> Result<()> {
        if profile.degrees.len() != sig.n_loops || profile.m != sig.m_in {
            return Err(Error::ProfileMismatch(format!("profile {profile} for source {}/{}", sig.n_loops, sig.m_in)));
        }
        Ok(())
    }

    /// `J(x)(h) = (-1)^{|x||h|} · eval(x ∘ (l_{j_1+1} ⊔ … ⊔ id_{m}))(h)`.
    pub fn apply(&self, a: &FrobeniusAlgebra, x: &Chain, h: &HochschildElement) -> Result<HochschildSum> {
        let mut out = HochschildSum::default();
        let input = normalize(a, &h.profile, &h.value)?;
        if input.is_zero() {
            return Ok(out);
        }
        for (d, k) in x.iter() {
            Self::check_profile(d.sig(), &h.profile)?;
            let sign = if (d.degree() * h.profile.total_degree()).is_multiple_of(2) { 1 } else { -1 };
            let glued = self.glued(d, &h.profile)?;
            for (g, c) in glued.iter() {
                let e = evaluate_diagram(a, &g.diagram, &input)?;
                out.add(&e.profile, &e.value, &(Q::from_integer(k * c) * q(sign)));
            }
        }
        Ok(out)
    }

    pub fn apply_sum(&self, a: &FrobeniusAlgebra, x: &Chain, s: &HochschildSum) -> Result<HochschildSum> {
        let mut out = HochschildSum::default();
        for h in s.elements() {
            out.add_sum(&self.apply(a, x, &h)?, &Q::one());
        }
        Ok(out)
    }

    /// Families act through the types `t` with `t_i ≤ j_i`; higher types vanish.
    pub fn apply_family(&self, a: &FrobeniusAlgebra, f: &TypedFamily, h: &HochschildElement) -> Result<HochschildSum> {
        if f.truncated && h.profile.degrees.iter().any(|&j| j > f.bound) {
            return Err(Error::Truncated(format!("type bound {} below profile {}", f.bound, h.profile)));
        }
        let mut c = Chain::zero();
        for (t, part) in &f.entries {
            if t.iter().zip(&h.profile.degrees).all(|(ti, j)| ti <= j) {
                c = c.plus(&part.expand());
            }
        }
        self.apply(a, &c, h)
    }
}

/// Applies `J(x)` with a fresh memo table.
pub fn apply_j(x: &Chain, a: &FrobeniusAlgebra, h: &HochschildElement) -> Result<HochschildSum> {
    JEvaluator::new().apply(a, x, h)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainMapReport {
    pub profiles_checked: usize,
    pub tuples_checked: usize,
    pub failures: Vec<String>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d_HH J(x) - (-1)^{|x|} J(x) d_HH = J(dx)` on the normalized basis of
/// every input profile of total degree at most `max_degree`.
pub fn check_chain_map(ev: &JEvaluator, x: &Chain, a: &FrobeniusAlgebra, max_degree: usize) -> Result<ChainMapReport> {
    let mut rep = ChainMapReport::default();
    let Some(sig) = x.sig() else { return Ok(rep) };
    let dx = differential(x);
    let deg = x.degree().unwrap_or(0);
    let sign = if deg.is_multiple_of(2) { Q::one() } else { -Q::one() };
    for profile in Profile::all_up_to(sig.n_loops, sig.m_in, max_degree) {
        rep.profiles_checked += 1;
        for idx in normalized_basis(a, &profile)? {
            rep.tuples_checked += 1;
            let h = HochschildElement::basis(profile.clone(), idx.clone());
            let jx = ev.apply(a, x, &h)?;
            let left = d_hh(a, &jx)?;
            let dh = d_hh(a, &HochschildSum::from_element(&h))?;
            let mut lhs = left.minus(&ev.apply_sum(a, x, &dh)?.scaled(&sign));
            lhs.add_sum(&ev.apply(a, &dx, &h)?, &-Q::one());
            if !lhs.is_zero() {
                rep.failures.push(format!("profile {profile}, tuple {idx:?}: defect {lhs}"));
                if rep.failures.len() >= 5 {
                    return Ok(rep);
                }
            }
        }
    }
    Ok(rep)
}

/// Independent combinatorial implementations of the classical operations.
pub mod oracle {
    use super::*;

    /// Sign of the permutation that sorts `seq`.
    pub(crate) fn parity(seq: &[usize]) -> i64 {
        let mut inv = 0;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All interleavings of consecutive blocks of `1..=n` with the given sizes.
    pub(crate) fn block_shuffles(sizes: &[usize]) -> Vec<Vec<usize>> {
        let mut start = 1;
        let blocks: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            })
            .collect();
        crate::compose::shuffles(&blocks)
    }

    fn compositions(n: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if parts == 0 {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for p in min..=left {
                cur.push(p);
                rec(left - p, parts - 1, min, cur, out);
                cur.pop();
            }
        }
        rec(n, parts, min, &mut Vec::new(), &mut out);
        out
    }

    fn single_profile(h: &HochschildElement) -> Result<usize> {
        match (h.profile.degrees.as_slice(), h.profile.m) {
            ([j], 0) => Ok(*j),
            _ => Err(Error::ProfileMismatch(format!("expected one Hochschild factor, got {}", h.profile))),
        }
    }

    /// Sum over compositions of `j` into `n` parts of size at least `min` of the
    /// signed block shuffles of `a_1 … a_j`, fixing `a_0`.
    fn shuffle_sum(a: &FrobeniusAlgebra, n: usize, min: usize, h: &HochschildElement) -> Result<HochschildSum> {
        let j = single_profile(h)?;
        let mut t = TensorElement::zero(j + 1);
        for sizes in compositions(j, n, min) {
            for sh in block_shuffles(&sizes) {
                let s = parity(&sh);
                for (idx, c) in &h.value.terms {
                    let mut new = vec![idx[0]];
                    new.extend(sh.iter().map(|&p| idx[p]));
                    t.add_term(new, c * q(s));
                }
            }
        }
        let p = Profile::new(vec![j], 0);
        let t = normalize(a, &p, &t)?;
        let mut out = HochschildSum::default();
        out.add(&p, &t, &Q::one());
        Ok(out)
    }

    /// `sh^n`: shuffles of `n` nonempty blocks.
    pub fn sh_oracle(a: &FrobeniusAlgebra, n: usize, h: &HochschildElement) -> Result<HochschildSum> {
        shuffle_sum(a, n, 1, h)
    }

    /// `λ^n`: shuffles of `n` possibly empty blocks.
    pub fn loday_lambda_oracle(a: &FrobeniusAlgebra, n: usize, h: &HochschildElement) -> Result<HochschildSum> {
        shuffle_sum(a, n, 0, h)
    }

    /// The shuffle product `(a_0 ⊗ a) · (b_0 ⊗ b) = Σ ± a_0 b_0 ⊗ sh(a, b)` on profile `(p, q; 0)`.
    pub fn shuffle_oracle(a: &FrobeniusAlgebra, h: &HochschildElement) -> Result<HochschildSum> {
        let (p, r) = match (h.profile.degrees.as_slice(), h.profile.m) {
            ([p, r], 0) => (*p, *r),
            _ => return Err(Error::ProfileMismatch(format!("expected two Hochschild factors, got {}", h.profile))),
        };
        let out_p = Profile::new(vec![p + r], 0);
        let mut t = TensorElement::zero(p + r + 1);
        let shuffles = block_shuffles(&[p, r]);
        for (idx, c) in &h.value.terms {
            for (k, m) in &a.mult[idx[0]][idx[p + 1]] {
                for sh in &shuffles {
                    let s = parity(sh);
                    let mut new = vec![*k];
                    new.extend(sh.iter().map(|&x| if x <= p { idx[x] } else { idx[x + 1] }));
                    t.add_term(new, c * m * q(s));
                }
            }
        }
        let t = normalize(a, &out_p, &t)?;
        let mut out = HochschildSum::default();
        out.add(&out_p, &t, &Q::one());
        Ok(out)
    }

    /// Connes' operator on normalized chains:
    /// `B(a_0, …, a_n) = Σ_i (-1)^{n i} (1, a_i, …, a_n, a_0, …, a_{i-1})`.
    pub fn connes_b_oracle(a: &FrobeniusAlgebra, h: &HochschildElement) -> Result<HochschildSum> {
        let n = single_profile(h)?;
        let u = a.unit_index()?;
        let out_p = Profile::new(vec![n + 1], 0);
        let mut t = TensorElement::zero(n + 2);
        for (idx, c) in &h.value.terms {
            for i in 0..=n {
                let s = if (n * i) % 2 == 0 { 1 } else { -1 };
                let mut new = vec![u];
                new.extend_from_slice(&idx[i..]);
                new.extend_from_slice(&idx[..i]);
                t.add_term(new, c * q(s));
            }
        }
        let t = normalize(a, &out_p, &t)?;
        let mut out = HochschildSum::default();
        out.add(&out_p, &t, &Q::one());
        Ok(out)
    }
}
