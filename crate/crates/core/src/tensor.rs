//! Exact rational tensors: finite combinations of basis-index tuples.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// An element of `A^{⊗ arity}` in the basis of index tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    pub arity: usize,
    pub terms: BTreeMap<Vec<usize>, Q>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    /// The scalar `c` as a tensor of arity zero.
    pub fn scalar(c: Q) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Vec::new(), c);
        t
    }

    pub fn basis(idx: Vec<usize>) -> Self {
        let mut t = Self::zero(idx.len());
        t.add_term(idx, Q::one());
        t
    }

    /// A vector of arity one.
    pub fn from_vector(v: &[Q]) -> Self {
        let mut t = Self::zero(1);
        for (i, c) in v.iter().enumerate() {
            t.add_term(vec![i], c.clone());
        }
        t
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Q) {
        debug_assert_eq!(idx.len(), self.arity);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, k: &Q) {
        debug_assert_eq!(self.arity, other.arity);
        for (idx, c) in &other.terms {
            self.add_term(idx.clone(), c * k);
        }
    }

    pub fn plus(&self, other: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_scaled(other, &Q::one());
        t
    }

    pub fn minus(&self, other: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_scaled(other, &-Q::one());
        t
    }

    pub fn scaled(&self, k: &Q) -> TensorElement {
        let mut t = Self::zero(self.arity);
        t.add_scaled(self, k);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut t = Self::zero(self.arity + other.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.clone();
                idx.extend(b);
                t.add_term(idx, x * y);
            }
        }
        t
    }

    /// Component `i` of an arity-one tensor.
    pub fn component(&self, i: usize) -> Q {
        self.terms.get(&vec![i]).cloned().unwrap_or_else(Q::zero)
    }

    /// Applies a linear map on factor `pos`, given on basis vectors.
    pub fn map_factor(&self, pos: usize, f: impl Fn(usize) -> Vec<(Vec<usize>, Q)>, out_width: usize) -> TensorElement {
        let mut t = Self::zero(self.arity - 1 + out_width);
        for (idx, c) in &self.terms {
            for (img, k) in f(idx[pos]) {
                let mut new = idx[..pos].to_vec();
                new.extend(img);
                new.extend_from_slice(&idx[pos + 1..]);
                t.add_term(new, c * k);
            }
        }
        t
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[")?;
            for (j, x) in idx.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_product_multiplies_coefficients() {
        let a = TensorElement::basis(vec![0]).scaled(&q(2));
        let b = TensorElement::basis(vec![1, 1]).scaled(&q(3));
        let t = a.tensor(&b);
        assert_eq!(t.arity, 3);
        assert_eq!(t.terms.get(&vec![0, 1, 1]), Some(&q(6)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = TensorElement::basis(vec![2]);
        assert!(a.minus(&a).is_zero());
    }
}
