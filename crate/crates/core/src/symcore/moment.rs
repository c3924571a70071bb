use num_traits::{One, Zero};

use super::coeff::{cq, Cq, Q};
use super::expr::{Kind, Monomial, SymExpr, Symbol, VarId};
use crate::error::{Error, Result};
use crate::specfun::factorial;

/// Gaussian integral over the additional variables with the per-component
/// measure (i/π) dφ∧dφ̄, so that ∫ φ^a φ̄^b e^{-|φ|²} = δ_ab a!.
pub fn gaussian_moment(p: &SymExpr) -> Result<Cq> {
    if p.weighted() {
        return Err(Error::InvalidInput("moment input must not carry the weight flag".into()));
    }
    let mut acc = Cq::zero();
    for (m, c) in p.terms() {
        acc = acc + c * cq(monomial_moment(m)?);
    }
    Ok(acc)
}

fn monomial_moment(m: &Monomial) -> Result<Q> {
    for (s, _) in m.factors() {
        match s {
            Symbol::Var(v) if v.is_additional() => {}
            other => return Err(Error::InvalidInput(format!("{other} is not an additional variable"))),
        }
    }
    let mut value = Q::one();
    for k in 1..=2 {
        let a = m.exponent(Symbol::Var(VarId::additional(Kind::Plain, k)));
        let b = m.exponent(Symbol::Var(VarId::additional(Kind::Conj, k)));
        if a != b {
            return Ok(Q::zero());
        }
        value *= Q::from_integer(factorial(a as u64));
    }
    Ok(value)
}

/// f^{(i)}_m = φ_1^m φ_2^{2i-m} / √(m!(2i-m)!), stored as the bare monomial
/// and its squared normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSkeleton {
    pub two_i: u32,
    pub m: u32,
    pub poly: SymExpr,
    pub norm_sq: Q,
}

pub fn canonical_skeleton(two_i: u32, m: u32) -> Result<CanonicalSkeleton> {
    if m > two_i {
        return Err(Error::InvalidInput(format!("projection index {m} > 2i = {two_i}")));
    }
    let mono = Monomial::from_pairs(&[
        (Symbol::Var(VarId::additional(Kind::Plain, 1)), m),
        (Symbol::Var(VarId::additional(Kind::Plain, 2)), two_i - m),
    ]);
    let norm_sq = Q::new(1.into(), factorial(m as u64) * factorial((two_i - m) as u64));
    Ok(CanonicalSkeleton { two_i, m, poly: SymExpr::monomial(mono, cq(Q::one())), norm_sq })
}
