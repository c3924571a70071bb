use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::coeff::{cq, Cq, Q};
use crate::error::{Error, Result};

/// Default cap on the field degree of any expression.
pub const DEFAULT_DEGREE_CAP: u32 = 24;

/// Plain variable φ or its conjugate φ̄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Plain,
    Conj,
}

/// Canonical coordinate φ_{αk} or φ̄_{αk}, with α, k ∈ {1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub kind: Kind,
    pub alpha: u8,
    pub k: u8,
}

impl VarId {
    pub fn new(kind: Kind, alpha: u8, k: u8) -> Self {
        assert!((1..=2).contains(&alpha) && (1..=2).contains(&k), "index out of range");
        VarId { kind, alpha, k }
    }

    pub fn phi(alpha: u8, k: u8) -> Self {
        VarId::new(Kind::Plain, alpha, k)
    }

    pub fn phibar(alpha: u8, k: u8) -> Self {
        VarId::new(Kind::Conj, alpha, k)
    }

    /// Additional variable φ_k = φ_{2k} (or its conjugate).
    pub fn additional(kind: Kind, k: u8) -> Self {
        VarId::new(kind, 2, k)
    }

    pub fn conj(self) -> Self {
        let kind = match self.kind {
            Kind::Plain => Kind::Conj,
            Kind::Conj => Kind::Plain,
        };
        VarId { kind, ..self }
    }

    pub fn is_additional(self) -> bool {
        self.alpha == 2
    }

    /// All eight variables of the h16 plane.
    pub fn all() -> Vec<VarId> {
        let mut v = Vec::with_capacity(8);
        for kind in [Kind::Plain, Kind::Conj] {
            for alpha in 1..=2 {
                for k in 1..=2 {
                    v.push(VarId::new(kind, alpha, k));
                }
            }
        }
        v
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Plain => write!(f, "φ{}{}", self.alpha, self.k),
            Kind::Conj => write!(f, "φ̄{}{}", self.alpha, self.k),
        }
    }
}

/// Symbolic parameters entering coefficients polynomially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Omega2,
    ZbarZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Var(VarId),
    Param(Param),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Var(v) => v.fmt(f),
            Symbol::Param(Param::Omega2) => write!(f, "ω²"),
            Symbol::Param(Param::ZbarZ) => write!(f, "z̄z"),
        }
    }
}

/// Product of symbols with positive exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn symbol(s: Symbol, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(s, e);
        }
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(Symbol, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(s, e) in pairs {
            m = m.mul(&Monomial::symbol(s, e));
        }
        m
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.get(&s).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.0.iter().map(|(s, e)| (*s, *e))
    }

    /// Total degree in field variables.
    pub fn field_degree(&self) -> u32 {
        self.0.iter().filter(|(s, _)| matches!(s, Symbol::Var(_))).map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            *m.entry(*s).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// ∂/∂v of the monomial: (exponent, reduced monomial).
    pub fn derivative(&self, v: VarId) -> Option<(u32, Monomial)> {
        let s = Symbol::Var(v);
        let e = self.exponent(s);
        if e == 0 {
            return None;
        }
        let mut m = self.0.clone();
        if e == 1 {
            m.remove(&s);
        } else {
            m.insert(s, e - 1);
        }
        Some((e, Monomial(m)))
    }

    pub fn conj(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(s, e)| match s {
                    Symbol::Var(v) => (Symbol::Var(v.conj()), *e),
                    p => (*p, *e),
                })
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") }).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Polynomial with Gaussian-rational coefficients, optionally multiplied by
/// the weight w = exp(-ω² Σ_k φ̄_{2k} φ_{2k}).
#[derive(Debug, Clone)]
pub struct SymExpr {
    terms: BTreeMap<Monomial, Cq>,
    weighted: bool,
    cap: u32,
}

impl PartialEq for SymExpr {
    fn eq(&self, other: &Self) -> bool {
        self.weighted == other.weighted && self.terms == other.terms
    }
}

impl Eq for SymExpr {}

/// Ring operation selector for [`poly_arith`].
#[derive(Debug, Clone)]
pub enum ArithOp {
    Add,
    Mul,
    /// Multiply the first operand by a scalar; the second is ignored.
    Scale(Cq),
}

/// Dispatches a ring operation.
pub fn poly_arith(a: &SymExpr, b: &SymExpr, op: ArithOp) -> Result<SymExpr> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Scale(c) => Ok(a.scale(&c)),
    }
}

fn fmt_cq(c: &Cq) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.re.is_zero() {
        format!("{}i", c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

impl SymExpr {
    pub fn zero() -> Self {
        SymExpr { terms: BTreeMap::new(), weighted: false, cap: DEFAULT_DEGREE_CAP }
    }

    pub fn constant(c: Cq) -> Self {
        SymExpr::from_terms(vec![(Monomial::one(), c)])
    }

    pub fn one() -> Self {
        SymExpr::constant(cq(Q::one()))
    }

    pub fn var(v: VarId) -> Self {
        SymExpr::monomial(Monomial::symbol(Symbol::Var(v), 1), cq(Q::one()))
    }

    pub fn param(p: Param) -> Self {
        SymExpr::monomial(Monomial::symbol(Symbol::Param(p), 1), cq(Q::one()))
    }

    pub fn monomial(m: Monomial, c: Cq) -> Self {
        SymExpr::from_terms(vec![(m, c)])
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms(terms: Vec<(Monomial, Cq)>) -> Self {
        let mut e = SymExpr::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Same expression with a different degree cap.
    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    /// Same polynomial with the weight flag set or cleared.
    pub fn with_weight(mut self, weighted: bool) -> Self {
        self.weighted = weighted;
        self
    }

    pub fn weighted(&self) -> bool {
        self.weighted
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cq> {
        &self.terms
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

    /// Largest field degree over all terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::field_degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Cq {
        self.terms.get(m).cloned().unwrap_or_else(Cq::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Cq) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_weights(&self, other: &SymExpr) -> Result<()> {
        if self.weighted != other.weighted && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidInput("cannot add weighted and unweighted expressions".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymExpr) -> Result<SymExpr> {
        self.check_weights(other)?;
        let mut out = self.clone();
        out.weighted = self.weighted || other.weighted;
        out.cap = self.cap.max(other.cap);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymExpr) -> Result<SymExpr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymExpr {
        self.scale(&-cq(Q::one()))
    }

    pub fn scale(&self, c: &Cq) -> SymExpr {
        let mut out = SymExpr { terms: BTreeMap::new(), weighted: self.weighted, cap: self.cap };
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &SymExpr) -> Result<SymExpr> {
        if self.weighted && other.weighted {
            return Err(Error::InvalidInput("at most one factor may carry the weight".into()));
        }
        let cap = self.cap.max(other.cap);
        let degree = self.degree() + other.degree();
        if degree > cap && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeCapExceeded { degree, cap });
        }
        let mut out = SymExpr { terms: BTreeMap::new(), weighted: self.weighted || other.weighted, cap };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<SymExpr> {
        let mut out = SymExpr::one().with_cap(self.cap).with_weight(false);
        for _ in 0..e {
            out = out.mul(&self.clone().with_weight(false))?;
        }
        Ok(out.with_weight(self.weighted && e > 0))
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, v: VarId) -> Result<SymExpr> {
        let degree = self.degree() + 1;
        if degree > self.cap && !self.is_zero() {
            return Err(Error::DegreeCapExceeded { degree, cap: self.cap });
        }
        let f = Monomial::symbol(Symbol::Var(v), 1);
        let mut out = SymExpr { terms: BTreeMap::new(), weighted: self.weighted, cap: self.cap };
        for (m, c) in &self.terms {
            out.terms.insert(m.mul(&f), c.clone());
        }
        Ok(out)
    }

    /// ∂/∂v, including the weight's chain rule when the flag is set.
    pub fn derivative(&self, v: VarId) -> SymExpr {
        let mut out = SymExpr { terms: BTreeMap::new(), weighted: self.weighted, cap: self.cap };
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.derivative(v) {
                out.add_term(rest, c * cq(Q::from_integer(e.into())));
            }
        }
        if self.weighted && v.is_additional() {
            // ∂_v s is the conjugate partner of v
            let partner = Monomial::from_pairs(&[(Symbol::Var(v.conj()), 1), (Symbol::Param(Param::Omega2), 1)]);
            for (m, c) in &self.terms {
                out.add_term(m.mul(&partner), -c.clone());
            }
        }
        out
    }

    /// Complex conjugate: swaps φ and φ̄ and conjugates coefficients.
    pub fn conj(&self) -> SymExpr {
        let mut out = SymExpr { terms: BTreeMap::new(), weighted: self.weighted, cap: self.cap };
        for (m, c) in &self.terms {
            out.add_term(m.conj(), Complex::new(c.re.clone(), -c.im.clone()));
        }
        out
    }

    /// Field variables appearing in the expression.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| {
                m.factors().filter_map(|(s, _)| if let Symbol::Var(v) = s { Some(v) } else { None }).collect::<Vec<_>>()
            })
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn has_params(&self) -> bool {
        self.terms.keys().any(|m| m.factors().any(|(s, _)| matches!(s, Symbol::Param(_))))
    }

    /// One string per term, for residual reports.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|(m, c)| format!("{}·{}", fmt_cq(c), m)).collect()
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", self.term_strings().join(" + "))?;
        }
        if self.weighted {
            write!(f, " [·w]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::coeff::cq_int;

    fn p(k: u8) -> SymExpr {
        SymExpr::var(VarId::phi(2, k))
    }

    #[test]
    fn mul_and_add() {
        let a = SymExpr::var(VarId::phi(2, 1));
        let b = SymExpr::var(VarId::phibar(2, 1));
        let ab = poly_arith(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(ab.len(), 1);
        assert_eq!(ab.degree(), 2);
        assert_eq!(poly_arith(&ab, &SymExpr::zero(), ArithOp::Add).unwrap(), ab);
    }

    #[test]
    fn binomial_square() {
        let s = p(1).add(&p(2)).unwrap();
        let sq = s.pow(2).unwrap();
        let expect = SymExpr::from_terms(vec![
            (Monomial::symbol(Symbol::Var(VarId::phi(2, 1)), 2), cq_int(1, 1)),
            (
                Monomial::from_pairs(&[(Symbol::Var(VarId::phi(2, 1)), 1), (Symbol::Var(VarId::phi(2, 2)), 1)]),
                cq_int(2, 1),
            ),
            (Monomial::symbol(Symbol::Var(VarId::phi(2, 2)), 2), cq_int(1, 1)),
        ]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn cancellation_drops_terms() {
        let e = p(1).sub(&p(1)).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn degree_cap() {
        let x = p(1).with_cap(3);
        assert!(matches!(x.pow(4), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn weighted_rules() {
        let w = SymExpr::one().with_weight(true);
        assert!(w.mul(&w).is_err());
        assert!(w.add(&SymExpr::one()).is_err());
        let d = w.derivative(VarId::phi(2, 1));
        let expect = SymExpr::monomial(
            Monomial::from_pairs(&[(Symbol::Var(VarId::phibar(2, 1)), 1), (Symbol::Param(Param::Omega2), 1)]),
            cq_int(-1, 1),
        )
        .with_weight(true);
        assert_eq!(d, expect);
        // weight does not depend on the spinor components
        assert!(w.derivative(VarId::phi(1, 1)).is_zero());
    }

    #[test]
    fn conj_swaps_kinds() {
        let e = SymExpr::var(VarId::phi(2, 1)).scale(&crate::symcore::coeff::cq_i());
        let c = e.conj();
        assert_eq!(c.variables(), vec![VarId::phibar(2, 1)]);
        assert_eq!(
            c.coefficient(&Monomial::symbol(Symbol::Var(VarId::phibar(2, 1)), 1)),
            -crate::symcore::coeff::cq_i()
        );
    }
}
