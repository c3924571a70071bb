use num_traits::{One, Zero};

use super::coeff::{cq, Cq, Q};
use super::expr::{SymExpr, VarId};
use crate::error::Result;

/// Primitive action in an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Mul(VarId),
    Diff(VarId),
}

/// Sum of scaled words; within a word the rightmost action acts first.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiffOp {
    words: Vec<(Cq, Vec<Action>)>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp { words: Vec::new() }
    }

    pub fn scalar(c: Cq) -> Self {
        let mut d = DiffOp::zero();
        d.push(c, Vec::new());
        d
    }

    pub fn identity() -> Self {
        DiffOp::scalar(cq(Q::one()))
    }

    pub fn word(c: Cq, actions: Vec<Action>) -> Self {
        let mut d = DiffOp::zero();
        d.push(c, actions);
        d
    }

    pub fn mul(v: VarId) -> Self {
        DiffOp::word(cq(Q::one()), vec![Action::Mul(v)])
    }

    pub fn diff(v: VarId) -> Self {
        DiffOp::word(cq(Q::one()), vec![Action::Diff(v)])
    }

    /// φ ∂ style word: multiply after differentiating.
    pub fn mul_diff(c: Cq, m: VarId, d: VarId) -> Self {
        DiffOp::word(c, vec![Action::Mul(m), Action::Diff(d)])
    }

    pub fn words(&self) -> &[(Cq, Vec<Action>)] {
        &self.words
    }

    pub fn push(&mut self, c: Cq, actions: Vec<Action>) {
        if !c.is_zero() {
            self.words.push((c, actions));
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        out.words.extend(other.words.iter().cloned());
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&-cq(Q::one())))
    }

    pub fn scale(&self, c: &Cq) -> DiffOp {
        let mut out = DiffOp::zero();
        for (w, a) in &self.words {
            out.push(w * c, a.clone());
        }
        out
    }

    /// self ∘ other: other acts first.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (ca, wa) in &self.words {
            for (cb, wb) in &other.words {
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                out.push(ca * cb, w);
            }
        }
        out
    }
}

/// Applies an operator to an expression.
pub fn apply_diffop(op: &DiffOp, f: &SymExpr) -> Result<SymExpr> {
    let mut acc = SymExpr::zero().with_cap(f.cap()).with_weight(f.weighted());
    for (c, word) in &op.words {
        let mut g = f.clone();
        for a in word.iter().rev() {
            if g.is_zero() {
                break;
            }
            g = match *a {
                Action::Mul(v) => g.mul_var(v)?,
                Action::Diff(v) => g.derivative(v),
            };
        }
        if !g.is_zero() {
            acc = acc.add(&g.scale(c))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::coeff::cq_int;
    use crate::symcore::expr::{Monomial, Param, Symbol};

    fn v(kind_plain: bool, k: u8) -> VarId {
        if kind_plain {
            VarId::phi(2, k)
        } else {
            VarId::phibar(2, k)
        }
    }

    fn mono(pairs: &[(VarId, u32)]) -> SymExpr {
        let ps: Vec<(Symbol, u32)> = pairs.iter().map(|(v, e)| (Symbol::Var(*v), *e)).collect();
        SymExpr::monomial(Monomial::from_pairs(&ps), cq_int(1, 1))
    }

    #[test]
    fn derivative_of_square() {
        let f = mono(&[(v(true, 1), 2), (v(false, 2), 1)]);
        let r = apply_diffop(&DiffOp::diff(v(true, 1)), &f).unwrap();
        assert_eq!(r, mono(&[(v(true, 1), 1), (v(false, 2), 1)]).scale(&cq_int(2, 1)));
    }

    #[test]
    fn euler_operator() {
        let x = v(true, 1);
        let xb = v(false, 1);
        let euler = DiffOp::mul_diff(cq_int(1, 1), x, x).add(&DiffOp::mul_diff(cq_int(1, 1), xb, xb));
        for a in 0..4 {
            for b in 0..4 {
                let f = mono(&[(x, a), (xb, b)]);
                assert_eq!(apply_diffop(&euler, &f).unwrap(), f.scale(&cq_int((a + b) as i64, 1)));
            }
        }
    }

    #[test]
    fn weighted_constant() {
        let w = SymExpr::one().with_weight(true);
        let r = apply_diffop(&DiffOp::diff(v(true, 1)), &w).unwrap();
        let expect = SymExpr::monomial(
            Monomial::from_pairs(&[(Symbol::Var(v(false, 1)), 1), (Symbol::Param(Param::Omega2), 1)]),
            cq_int(-1, 1),
        )
        .with_weight(true);
        assert_eq!(r, expect);
    }

    #[test]
    fn composition_order() {
        // ∂ ∘ φ applied to 1 gives 1; φ ∘ ∂ gives 0
        let x = v(true, 1);
        let a = DiffOp::diff(x).compose(&DiffOp::mul(x));
        let b = DiffOp::mul(x).compose(&DiffOp::diff(x));
        assert_eq!(apply_diffop(&a, &SymExpr::one()).unwrap(), SymExpr::one());
        assert!(apply_diffop(&b, &SymExpr::one()).unwrap().is_zero());
    }
}
