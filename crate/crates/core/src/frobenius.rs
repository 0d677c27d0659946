//! Finite-dimensional commutative Frobenius algebras given by structure constants.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tensor::{q, TensorElement, Q};

/// `mult[i][j]` lists `(k, c)` with `e_i e_j = Σ c e_k`; `comult[i]` lists
/// `(j, k, c)` with `Δ(e_i) = Σ c e_j ⊗ e_k`. A missing counit makes the algebra open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    pub name: String,
    pub dim: usize,
    pub mult: Vec<Vec<Vec<(usize, Q)>>>,
    pub unit: Vec<Q>,
    pub comult: Vec<Vec<(usize, usize, Q)>>,
    pub counit: Option<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: Vec<&'static str>,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.checked {
            match self.failures.iter().find(|x| x.axiom == *a) {
                None => writeln!(f, "{a}: ok")?,
                Some(x) => writeln!(f, "{a}: FAIL ({})", x.detail)?,
            }
        }
        Ok(())
    }
}

impl FrobeniusAlgebra {
    /// Builds from dense constants `m[i][j][k]` and `d[i][j][k]`.
    pub fn from_dense(name: &str, m: &[Vec<Vec<Q>>], unit: Vec<Q>, d: &[Vec<Vec<Q>>], counit: Option<Vec<Q>>) -> Self {
        let dim = unit.len();
        let mult = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).filter(|&k| !m[i][j][k].is_zero()).map(|k| (k, m[i][j][k].clone())).collect())
                    .collect()
            })
            .collect();
        let comult = (0..dim)
            .map(|i| {
                let mut out = Vec::new();
                for j in 0..dim {
                    for k in 0..dim {
                        if !d[i][j][k].is_zero() {
                            out.push((j, k, d[i][j][k].clone()));
                        }
                    }
                }
                out
            })
            .collect();
        FrobeniusAlgebra { name: name.to_string(), dim, mult, unit, comult, counit }
    }

    /// The index of the unit if it is a basis vector.
    pub fn unit_index(&self) -> Result<usize> {
        let nz: Vec<usize> = (0..self.dim).filter(|&i| !self.unit[i].is_zero()).collect();
        match nz.as_slice() {
            [u] if self.unit[*u].is_one() => Ok(*u),
            _ => Err(Error::UnitNotBasis),
        }
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (k, c) in &self.mult[i][j] {
                    out[*k] += x * y * c;
                }
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    /// `Δ(a)` as a tensor of arity two.
    pub fn comul(&self, a: &[Q]) -> TensorElement {
        let mut t = TensorElement::zero(2);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comult[i] {
                t.add_term(vec![*j, *k], x * c);
            }
        }
        t
    }

    pub fn counit_of(&self, a: &[Q]) -> Result<Q> {
        let e = self.counit.as_ref().ok_or(Error::CounitRequired)?;
        Ok(a.iter().zip(e).map(|(x, y)| x * y).sum())
    }

    /// The handle operator `m ∘ Δ`.
    pub fn handle(&self, a: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (idx, c) in &self.comul(a).terms {
            for (k, m) in &self.mult[idx[0]][idx[1]] {
                out[*k] += c * m;
            }
        }
        out
    }

    /// `Δ^{(s)}(a)`, the iterated coproduct into `s ≥ 1` factors.
    pub fn iterated_comul(&self, a: &[Q], s: usize) -> TensorElement {
        assert!(s >= 1);
        let mut t = TensorElement::from_vector(a);
        for _ in 1..s {
            let last = t.arity - 1;
            t = t.map_factor(last, |i| self.comult[i].iter().map(|(j, k, c)| (vec![*j, *k], c.clone())).collect(), 2);
        }
        t
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let mut rep = AxiomReport::default();
        let e = |i| self.basis_vec(i);
        let check = |rep: &mut AxiomReport, name: &'static str, bad: Option<String>| {
            if !rep.checked.contains(&name) {
                rep.checked.push(name);
            }
            if let Some(detail) = bad {
                if !rep.failures.iter().any(|f| f.axiom == name) {
                    rep.failures.push(AxiomFailure { axiom: name, detail });
                }
            }
        };
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&e(i), &e(j));
                check(&mut rep, "commutativity", (ij != self.mul(&e(j), &e(i))).then(|| format!("e{i} e{j} != e{j} e{i}")));
                for k in 0..n {
                    let l = self.mul(&ij, &e(k));
                    let r = self.mul(&e(i), &self.mul(&e(j), &e(k)));
                    check(&mut rep, "associativity", (l != r).then(|| format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})")));
                }
            }
            check(&mut rep, "unit", (self.mul(&self.unit, &e(i)) != e(i)).then(|| format!("1 e{i} != e{i}")));
        }
        for i in 0..n {
            let d = self.comul(&e(i));
            let swapped = {
                let mut t = TensorElement::zero(2);
                for (idx, c) in &d.terms {
                    t.add_term(vec![idx[1], idx[0]], c.clone());
                }
                t
            };
            check(&mut rep, "cocommutativity", (swapped != d).then(|| format!("Δ(e{i}) is not symmetric")));
            let comul_basis = |j: usize| self.comult[j].iter().map(|(a, b, c)| (vec![*a, *b], c.clone())).collect::<Vec<_>>();
            let left = d.map_factor(0, comul_basis, 2);
            let right = d.map_factor(1, comul_basis, 2);
            check(&mut rep, "coassociativity", (left != right).then(|| format!("(Δ⊗id)Δ(e{i}) != (id⊗Δ)Δ(e{i})")));
            if let Some(eps) = &self.counit {
                let l = d.map_factor(0, |j| vec![(vec![], eps[j].clone())], 0);
                let r = d.map_factor(1, |j| vec![(vec![], eps[j].clone())], 0);
                let id = TensorElement::from_vector(&e(i));
                check(&mut rep, "counit", (l != id || r != id).then(|| format!("(ε⊗id)Δ(e{i}) != e{i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.comul(&self.mul(&e(i), &e(j)));
                // (m⊗id)(e_i ⊗ Δ(e_j)) and (id⊗m)(Δ(e_i) ⊗ e_j).
                let mut r1 = TensorElement::zero(2);
                for (a, b, c) in &self.comult[j] {
                    for (k, m) in &self.mult[i][*a] {
                        r1.add_term(vec![*k, *b], c * m);
                    }
                }
                let mut r2 = TensorElement::zero(2);
                for (a, b, c) in &self.comult[i] {
                    for (k, m) in &self.mult[*b][j] {
                        r2.add_term(vec![*a, *k], c * m);
                    }
                }
                check(
                    &mut rep,
                    "frobenius",
                    (lhs != r1 || lhs != r2).then(|| format!("Δ(e{i} e{j}) != (m⊗id)(e{i}⊗Δ(e{j}))")),
                );
            }
        }
        rep
    }
}

/// `ℚ[x]/(x^n)` with `ε(x^{n-1}) = 1` and the induced coproduct
/// `Δ(x^k) = Σ_a x^{a+k} ⊗ x^{n-1-a}`.
pub fn make_truncated_polynomial(n: usize) -> FrobeniusAlgebra {
    assert!(n >= 2, "need n >= 2");
    let zero = || vec![vec![vec![Q::zero(); n]; n]; n];
    let mut m = zero();
    let mut d = zero();
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                m[i][j][i + j] = Q::one();
            }
        }
        for a in 0..n - i {
            d[i][a + i][n - 1 - a] = Q::one();
        }
    }
    let mut eps = vec![Q::zero(); n];
    eps[n - 1] = Q::one();
    let mut unit = vec![Q::zero(); n];
    unit[0] = Q::one();
    FrobeniusAlgebra::from_dense(&format!("Q[x]/(x^{n})"), &m, unit, &d, Some(eps))
}

/// `ℚ[ℤ/2]` with basis `(e, g)`, `ε(e) = 1`, `ε(g) = 0`.
pub fn make_z2_group_algebra() -> FrobeniusAlgebra {
    let zero = || vec![vec![vec![Q::zero(); 2]; 2]; 2];
    let mut m = zero();
    for i in 0..2 {
        for j in 0..2 {
            m[i][j][(i + j) % 2] = Q::one();
        }
    }
    let mut d = zero();
    for i in 0..2 {
        for a in 0..2 {
            d[i][(i + a) % 2][a] = Q::one();
        }
    }
    FrobeniusAlgebra::from_dense("Q[Z/2]", &m, vec![q(1), q(0)], &d, Some(vec![q(1), q(0)]))
}

/// `ℚ[x]/(x^n)`, `n ≥ 3`, with the constant of `x · x^{n-1}` changed from 0 to 1
/// on one side only, for negative tests.
pub fn make_broken_polynomial(n: usize) -> FrobeniusAlgebra {
    assert!(n >= 3, "need n >= 3");
    let mut a = make_truncated_polynomial(n);
    a.name = format!("Q[x]/(x^{n}) with x·x^{} perturbed", n - 1);
    a.mult[1][n - 1] = vec![(n - 1, q(1))];
    a
}

/// Evaluates one arc component: multiply the inputs, apply `g` handles, then
/// split into `s` outputs (or take the counit when `s = 0`).
pub fn evaluate_block(
    a: &FrobeniusAlgebra,
    inputs: &[Vec<Q>],
    n_outputs: usize,
    genus: usize,
    counit_allowed: bool,
) -> Result<TensorElement> {
    let mut p = a.unit.clone();
    for x in inputs {
        p = a.mul(&p, x);
    }
    for _ in 0..genus {
        p = a.handle(&p);
    }
    if n_outputs == 0 {
        if !counit_allowed {
            return Err(Error::CounitRequired);
        }
        return Ok(TensorElement::scalar(a.counit_of(&p)?));
    }
    Ok(a.iterated_comul(&p, n_outputs))
}

/// One structure map applied at a factor position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorOp {
    /// Multiplies factors `at` and `at + 1`.
    Mult(usize),
    Comult(usize),
    Counit(usize),
    /// Inserts the unit before position `at`.
    Unit(usize),
    Identity,
}

pub fn tensor_apply(a: &FrobeniusAlgebra, ops: &[TensorOp], t: &TensorElement) -> Result<TensorElement> {
    let mut cur = t.clone();
    for &op in ops {
        let need = match op {
            TensorOp::Mult(at) => at + 2,
            TensorOp::Comult(at) | TensorOp::Counit(at) => at + 1,
            TensorOp::Unit(at) => at,
            TensorOp::Identity => 0,
        };
        if need > cur.arity {
            return Err(Error::ArityMismatch { expected: need, found: cur.arity });
        }
        cur = match op {
            TensorOp::Identity => cur,
            TensorOp::Mult(at) => {
                let mut out = TensorElement::zero(cur.arity - 1);
                for (idx, c) in &cur.terms {
                    for (k, m) in &a.mult[idx[at]][idx[at + 1]] {
                        let mut new = idx[..at].to_vec();
                        new.push(*k);
                        new.extend_from_slice(&idx[at + 2..]);
                        out.add_term(new, c * m);
                    }
                }
                out
            }
            TensorOp::Comult(at) => {
                cur.map_factor(at, |i| a.comult[i].iter().map(|(j, k, c)| (vec![*j, *k], c.clone())).collect(), 2)
            }
            TensorOp::Counit(at) => {
                let eps = a.counit.as_ref().ok_or(Error::CounitRequired)?;
                cur.map_factor(at, |i| vec![(vec![], eps[i].clone())], 0)
            }
            TensorOp::Unit(at) => {
                let mut out = TensorElement::zero(cur.arity + 1);
                for (idx, c) in &cur.terms {
                    for (u, k) in a.unit.iter().enumerate() {
                        let mut new = idx[..at].to_vec();
                        new.push(u);
                        new.extend_from_slice(&idx[at..]);
                        out.add_term(new, c * k);
                    }
                }
                out
            }
        };
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_coproduct() {
        let a = make_truncated_polynomial(2);
        assert_eq!(a.comul(&a.basis_vec(1)), TensorElement::basis(vec![1, 1]));
        let mut want = TensorElement::basis(vec![0, 1]);
        want.add_term(vec![1, 0], q(1));
        assert_eq!(a.comul(&a.unit), want);
    }

    #[test]
    fn builtin_algebras_pass() {
        for n in 2..=4 {
            let rep = make_truncated_polynomial(n).check_axioms();
            assert!(rep.passed(), "{rep}");
        }
        assert!(make_z2_group_algebra().check_axioms().passed());
    }

    #[test]
    fn perturbed_algebra_fails_associativity() {
        let rep = make_broken_polynomial(3).check_axioms();
        assert!(rep.failures.iter().any(|f| f.axiom == "associativity"), "{rep}");
    }

    #[test]
    fn counit_of_unit_vanishes() {
        let a = make_truncated_polynomial(3);
        assert!(a.counit_of(&a.unit).unwrap().is_zero());
    }

    #[test]
    fn handle_of_one_over_dual_numbers() {
        let a = make_truncated_polynomial(2);
        let h = evaluate_block(&a, std::slice::from_ref(&a.unit), 1, 1, true).unwrap();
        assert_eq!(h, TensorElement::basis(vec![1]).scaled(&q(2)));
        let split = evaluate_block(&a, &[], 2, 0, true).unwrap();
        assert_eq!(split, a.comul(&a.unit));
    }

    #[test]
    fn frobenius_relation_via_ops() {
        let a = make_truncated_polynomial(3);
        for i in 0..3 {
            for j in 0..3 {
                let t = TensorElement::basis(vec![i, j]);
                let l = tensor_apply(&a, &[TensorOp::Mult(0), TensorOp::Comult(0)], &t).unwrap();
                let r = tensor_apply(&a, &[TensorOp::Comult(0), TensorOp::Mult(1)], &t).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let a = make_truncated_polynomial(2);
        let t = TensorElement::basis(vec![0]);
        assert!(matches!(tensor_apply(&a, &[TensorOp::Mult(0)], &t), Err(Error::ArityMismatch { .. })));
    }
}
