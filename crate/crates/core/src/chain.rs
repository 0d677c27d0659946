//! Integer chains of looped diagrams and the differential.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::{LoopedDiagram, Signature};

/// A finite integer combination of looped diagrams. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    terms: BTreeMap<LoopedDiagram, BigInt>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn from_diagram(d: LoopedDiagram) -> Self {
        let mut c = Chain::zero();
        c.add_term(d, BigInt::one());
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LoopedDiagram, BigInt)>) -> Self {
        let mut c = Chain::zero();
        for (d, k) in terms {
            c.add_term(d, k);
        }
        c
    }

    pub fn add_term(&mut self, d: LoopedDiagram, k: BigInt) {
        if k.is_zero() {
            return;
        }
        debug_assert!(self.sig().is_none_or(|s| s == d.sig()), "mixed signatures in one chain");
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(k);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_i(&mut self, d: LoopedDiagram, k: i64) {
        self.add_term(d, BigInt::from(k));
    }

    pub fn add_chain(&mut self, other: &Chain, k: &BigInt) {
        for (d, c) in &other.terms {
            self.add_term(d.clone(), c * k);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LoopedDiagram, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, d: &LoopedDiagram) -> BigInt {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn sig(&self) -> Option<Signature> {
        self.terms.keys().next().map(|d| d.sig())
    }

    /// Degree of the first term, if any. Chains built by this crate are homogeneous.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|d| d.degree())
    }

    pub fn scaled(&self, k: &BigInt) -> Chain {
        Chain::from_terms(self.terms.iter().map(|(d, c)| (d.clone(), c * k)))
    }

    pub fn neg(&self) -> Chain {
        self.scaled(&BigInt::from(-1))
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_chain(other, &BigInt::one());
        c
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_chain(other, &BigInt::from(-1));
        c
    }

    /// Extends `f` linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&LoopedDiagram) -> Chain) -> Chain {
        let mut out = Chain::zero();
        for (d, k) in &self.terms {
            out.add_chain(&f(d), k);
        }
        out
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &LoopedDiagram> {
        self.terms.keys()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl From<LoopedDiagram> for Chain {
    fn from(d: LoopedDiagram) -> Self {
        Chain::from_diagram(d)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{k:+} {d}")?;
        }
        Ok(())
    }
}

/// Faces of a single diagram with their signs, including degenerate ones.
pub fn signed_faces(d: &LoopedDiagram) -> Vec<(i64, LoopedDiagram)> {
    let mut out = Vec::new();
    let mut offset = 0usize;
    for v in 1..=d.sig().n_white {
        let k = d.diagram.valence(v);
        if k >= 2 {
            for t in 1..=k {
                let sign = if (t + offset).is_multiple_of(2) { 1 } else { -1 };
                let face = d.contract_segment(v, t).expect("segment in range");
                out.push((sign, face));
            }
        }
        offset += k - 1;
    }
    out
}

pub fn diagram_differential(d: &LoopedDiagram) -> Chain {
    let mut out = Chain::zero();
    for (sign, face) in signed_faces(d) {
        if face.diagram.is_nondegenerate() {
            out.add_i(face, sign);
        }
    }
    out
}

pub fn differential(c: &Chain) -> Chain {
    c.map_linear(diagram_differential)
}

pub fn d_squared_is_zero(d: &LoopedDiagram) -> bool {
    differential(&diagram_differential(d)).is_zero()
}
