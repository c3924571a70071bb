use std::time::Instant;

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::operators::{build_operator, model_variables, pauli, OperatorName};
use crate::error::{Error, Result};
use crate::spectrum::{f0_sigma, Model, QuantumNumbers};
use crate::symcore::{
    apply_diffop, canonical_skeleton, cq, cq_int, Cq, Kind, Monomial, Param, SymExpr, Symbol, VarId, Q,
};
use crate::verify::VerificationReport;

/// Members of the baryon octet, written in the additional variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctetMember {
    /// φ_k.
    Nucleon { k: u8 },
    /// φ̄φ.
    Lambda,
    /// φ̄ τ_a φ.
    Sigma { a: u8 },
    /// (φ̄φ)² φ̄_m.
    Xi { m: u8 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    Canonical {
        two_i: u32,
        m: u32,
    },
    Octet(OctetMember),
    /// Any homogeneous polynomial; h16 needs the isospin to fix F⁰.
    Explicit {
        expr: SymExpr,
        two_i: Option<u32>,
    },
}

/// A skeleton polynomial O^Σ with its model.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonSpec {
    pub model: Model,
    pub construction: Construction,
}

fn add_var(k: u8, kind: Kind) -> SymExpr {
    SymExpr::var(VarId::additional(kind, k))
}

/// s = Σ_k φ̄_k φ_k over the additional variables of a model.
pub fn additional_norm(model: Model) -> SymExpr {
    let ks: &[u8] = if model == Model::H8 { &[1] } else { &[1, 2] };
    let mut s = SymExpr::zero();
    for &k in ks {
        s = s.add(&add_var(k, Kind::Conj).mul(&add_var(k, Kind::Plain)).unwrap()).unwrap();
    }
    s
}

impl SkeletonSpec {
    pub fn canonical(two_i: u32, m: u32) -> Self {
        SkeletonSpec { model: Model::H16, construction: Construction::Canonical { two_i, m } }
    }

    pub fn octet(member: OctetMember) -> Self {
        SkeletonSpec { model: Model::H16, construction: Construction::Octet(member) }
    }

    pub fn explicit(model: Model, expr: SymExpr, two_i: Option<u32>) -> Self {
        SkeletonSpec { model, construction: Construction::Explicit { expr, two_i } }
    }

    pub fn expr(&self) -> Result<SymExpr> {
        match &self.construction {
            Construction::Canonical { two_i, m } => Ok(canonical_skeleton(*two_i, *m)?.poly),
            Construction::Explicit { expr, .. } => Ok(expr.clone()),
            Construction::Octet(member) => {
                let s = additional_norm(Model::H16);
                match *member {
                    OctetMember::Nucleon { k } => Ok(add_var(k, Kind::Plain)),
                    OctetMember::Lambda => Ok(s),
                    OctetMember::Sigma { a } => {
                        if !(1..=3).contains(&a) {
                            return Err(Error::InvalidInput(format!("isospin component {a} outside 1..=3")));
                        }
                        let t = pauli(a);
                        let mut out = SymExpr::zero();
                        for j in 0..2u8 {
                            for k in 0..2u8 {
                                let term = add_var(j + 1, Kind::Conj).mul(&add_var(k + 1, Kind::Plain))?;
                                out = out.add(&term.scale(&t[j as usize][k as usize]))?;
                            }
                        }
                        Ok(out)
                    }
                    OctetMember::Xi { m } => s.pow(2)?.mul(&add_var(m, Kind::Conj)),
                }
            }
        }
    }

    fn two_i(&self) -> Option<u32> {
        match &self.construction {
            Construction::Canonical { two_i, .. } => Some(*two_i),
            Construction::Explicit { two_i, .. } => *two_i,
            Construction::Octet(m) => Some(match m {
                OctetMember::Nucleon { .. } | OctetMember::Xi { .. } => 1,
                OctetMember::Lambda => 0,
                OctetMember::Sigma { .. } => 2,
            }),
        }
    }

    /// (N, Y) of a homogeneous skeleton.
    pub fn degrees(&self) -> Result<(i32, i32)> {
        let e = self.expr()?;
        let mut found: Option<(i32, i32)> = None;
        for m in e.terms().keys() {
            let (mut plain, mut conj) = (0i32, 0i32);
            for (s, p) in m.factors() {
                match s {
                    Symbol::Var(v) if v.kind == Kind::Plain => plain += p as i32,
                    Symbol::Var(_) => conj += p as i32,
                    Symbol::Param(_) => return Err(Error::InvalidInput("skeleton must not contain parameters".into())),
                }
            }
            let d = (plain + conj, plain - conj);
            match found {
                None => found = Some(d),
                Some(f) if f != d => return Err(Error::InvalidInput("skeleton is not homogeneous in N and Y".into())),
                _ => {}
            }
        }
        found.ok_or_else(|| Error::InvalidInput("zero skeleton".into()))
    }

    /// Eigenvalue F⁰ predicted from the skeleton's quantum numbers.
    pub fn f0(&self) -> Result<i64> {
        let (n, y) = self.degrees()?;
        let two_i = match self.model {
            Model::H8 => 0,
            Model::H16 => {
                self.two_i().ok_or_else(|| Error::InvalidInput("h16 skeleton needs its isospin".into()))? as i32
            }
        };
        Ok(f0_sigma(self.model, &QuantumNumbers::new(1, n, y, two_i)))
    }

    fn check_domain(&self, e: &SymExpr) -> Result<()> {
        let allowed = model_variables(self.model);
        for v in e.variables() {
            let ok = match self.model {
                Model::H16 => v.is_additional(),
                Model::H8 => allowed.contains(&v),
            };
            if !ok {
                return Err(Error::DomainError(format!("{v} lies outside the {} skeleton domain", self.model)));
            }
        }
        Ok(())
    }
}

/// Verifies M̂²(O w) = [F⁰ + 4ω²(N + c1)s - 4ω⁴s²] O w exactly in ω².
pub fn weighted_eigenvalue_check(skeleton: &SkeletonSpec, model: Model) -> Result<VerificationReport> {
    if skeleton.model != model {
        return Err(Error::InvalidModel(format!("skeleton built for {}, checked in {model}", skeleton.model)));
    }
    let start = Instant::now();
    let o = skeleton.expr()?;
    skeleton.check_domain(&o)?;
    let (n, _) = skeleton.degrees()?;
    let f0 = skeleton.f0()?;
    let (op, c1) = match model {
        Model::H8 => (build_operator(OperatorName::M2DirectH8, model)?, 5),
        Model::H16 => (build_operator(OperatorName::M2DirectH16, model)?, 6),
    };
    let lhs = apply_diffop(&op, &o.clone().with_weight(true))?;
    let s = additional_norm(model);
    let w2 = SymExpr::param(Param::Omega2);
    let factor = SymExpr::constant(cq_int(f0, 1))
        .add(&w2.mul(&s)?.scale(&cq_int(4 * (n as i64 + c1), 1)))?
        .sub(&w2.pow(2)?.mul(&s.pow(2)?)?.scale(&cq_int(4, 1)))?;
    let rhs = factor.mul(&o)?.with_weight(true);
    let residual = lhs.sub(&rhs)?;
    Ok(VerificationReport::new(
        format!("weighted_eigenvalue[{model}, F0={f0}]"),
        residual.term_strings(),
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

fn additional_vars() -> Vec<VarId> {
    let mut v = Vec::new();
    for kind in [Kind::Plain, Kind::Conj] {
        for k in 1..=2 {
            v.push(VarId::additional(kind, k));
        }
    }
    v
}

/// All monomials of total degree ≤ max_degree in the four additional variables.
pub fn f0_monomials(max_degree: u32) -> Vec<SymExpr> {
    let vars = additional_vars();
    let mut out = Vec::new();
    let mut exps = [0u32; 4];
    fn rec(i: usize, left: u32, exps: &mut [u32; 4], vars: &[VarId], out: &mut Vec<SymExpr>) {
        if i == 4 {
            let pairs: Vec<(Symbol, u32)> = vars.iter().zip(exps.iter()).map(|(v, e)| (Symbol::Var(*v), *e)).collect();
            out.push(SymExpr::monomial(Monomial::from_pairs(&pairs), cq(Q::one())));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, vars, out);
        }
        exps[i] = 0;
    }
    rec(0, max_degree, &mut exps, &vars, &mut out);
    out
}

fn compare_m2(f: &SymExpr, direct: &crate::symcore::DiffOp, closed: &crate::symcore::DiffOp) -> Vec<String> {
    let a = apply_diffop(direct, f);
    let b = apply_diffop(closed, f);
    match (a, b) {
        (Ok(a), Ok(b)) => match a.sub(&b) {
            Ok(d) if d.is_zero() => Vec::new(),
            Ok(d) => d.term_strings().into_iter().map(|t| format!("on {f}: {t}")).collect(),
            Err(e) => vec![e.to_string()],
        },
        (Err(e), _) | (_, Err(e)) => vec![e.to_string()],
    }
}

fn mass_operators() -> Result<(crate::symcore::DiffOp, crate::symcore::DiffOp)> {
    Ok((build_operator(OperatorName::M2DirectH16, Model::H16)?, build_operator(OperatorName::M2Closed, Model::H16)?))
}

/// Random polynomials with small Gaussian-rational coefficients; direct and
/// closed M̂² must agree on each.
pub fn verify_m2_closed_form(n_samples: usize, max_degree: u32) -> VerificationReport {
    verify_m2_closed_form_seeded(n_samples, max_degree, 0x6d32)
}

pub fn verify_m2_closed_form_seeded(n_samples: usize, max_degree: u32, seed: u64) -> VerificationReport {
    let id = format!("m2_closed_form[{n_samples} samples, degree <= {max_degree}]");
    if max_degree > 8 || n_samples == 0 {
        return VerificationReport::failed(id, "need 1 <= n_samples and max_degree <= 8");
    }
    let (direct, closed) = match mass_operators() {
        Ok(ops) => ops,
        Err(e) => return VerificationReport::failed(id, e.to_string()),
    };
    let basis = f0_monomials(max_degree);
    let mut rng = StdRng::seed_from_u64(seed);
    VerificationReport::timed(id, || {
        let mut residuals = Vec::new();
        for _ in 0..n_samples {
            let mut f = SymExpr::zero();
            for _ in 0..rng.gen_range(1..=6) {
                let m = &basis[rng.gen_range(0..basis.len())];
                let c = Cq::new(
                    Q::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into()),
                    Q::from_integer(rng.gen_range(-3..=3).into()),
                );
                f = f.add(&m.scale(&c)).expect("unweighted sum");
            }
            if f.is_zero() {
                f = SymExpr::one();
            }
            residuals.extend(compare_m2(&f, &direct, &closed));
        }
        residuals
    })
}

/// Exhaustive agreement of direct and closed M̂² on every 𝓕₀ monomial.
pub fn verify_m2_exhaustive(max_degree: u32) -> VerificationReport {
    let id = format!("m2_exhaustive[degree <= {max_degree}]");
    let (direct, closed) = match mass_operators() {
        Ok(ops) => ops,
        Err(e) => return VerificationReport::failed(id, e.to_string()),
    };
    VerificationReport::timed(id, || {
        f0_monomials(max_degree).iter().flat_map(|f| compare_m2(f, &direct, &closed)).collect()
    })
}

/// Every canonical skeleton f^(i)_m, 2i ≤ max_two_i, is an eigenfunction of
/// both M̂² forms with eigenvalue -(N+5)² - 7 + 4i(i+1), N = 2i.
pub fn canonical_eigenvalue_check(max_two_i: u32) -> VerificationReport {
    let id = format!("canonical_eigenvalues[2i <= {max_two_i}]");
    let (direct, closed) = match mass_operators() {
        Ok(ops) => ops,
        Err(e) => return VerificationReport::failed(id, e.to_string()),
    };
    VerificationReport::timed(id, || {
        let mut residuals = Vec::new();
        for two_i in 0..=max_two_i {
            let qn = QuantumNumbers::new(1, two_i as i32, 0, two_i as i32);
            let f0 = cq_int(f0_sigma(Model::H16, &qn), 1);
            for m in 0..=two_i {
                let f = canonical_skeleton(two_i, m).expect("m <= 2i").poly;
                let expect = f.scale(&f0);
                for (label, op) in [("direct", &direct), ("closed", &closed)] {
                    match apply_diffop(op, &f).and_then(|g| g.sub(&expect)) {
                        Ok(d) if d.is_zero() => {}
                        Ok(d) => residuals.push(format!("{label} on f({two_i}/2, {m}): {d}")),
                        Err(e) => residuals.push(e.to_string()),
                    }
                }
            }
        }
        residuals
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octet_eigenvalues() {
        let cases = [
            (OctetMember::Nucleon { k: 2 }, -40),
            (OctetMember::Lambda, -56),
            (OctetMember::Sigma { a: 2 }, -48),
            (OctetMember::Xi { m: 1 }, -104),
        ];
        for (member, f0) in cases {
            let sk = SkeletonSpec::octet(member);
            assert_eq!(sk.f0().unwrap(), f0);
            let r = weighted_eigenvalue_check(&sk, Model::H16).unwrap();
            assert!(r.passed, "{member:?}: {:?}", r.residual_terms);
        }
    }

    #[test]
    fn canonical_weighted() {
        let one = SkeletonSpec::canonical(0, 0);
        assert_eq!(one.f0().unwrap(), -32);
        assert!(weighted_eigenvalue_check(&one, Model::H16).unwrap().passed);
        let half = SkeletonSpec::canonical(1, 0);
        assert_eq!(half.f0().unwrap(), -40);
        assert!(weighted_eigenvalue_check(&half, Model::H16).unwrap().passed);
    }

    #[test]
    fn h8_mixed_skeleton() {
        let e = SymExpr::var(VarId::phi(1, 1)).mul(&SymExpr::var(VarId::phibar(2, 1))).unwrap();
        let sk = SkeletonSpec::explicit(Model::H8, e, None);
        assert_eq!(sk.f0().unwrap(), -36);
        assert!(weighted_eigenvalue_check(&sk, Model::H8).unwrap().passed);
    }

    #[test]
    fn wrong_eigenvalue_is_reported() {
        // claims i = 0 on an isospin-1/2 skeleton
        let sk = SkeletonSpec::explicit(Model::H16, SymExpr::var(VarId::phi(2, 1)), Some(0));
        let r = weighted_eigenvalue_check(&sk, Model::H16).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn domain_error_for_spinor_variables() {
        let sk = SkeletonSpec::explicit(Model::H16, SymExpr::var(VarId::phi(1, 1)), Some(1));
        assert!(matches!(weighted_eigenvalue_check(&sk, Model::H16), Err(Error::DomainError(_))));
    }

    #[test]
    fn closed_form_samples() {
        let one = compare_m2(&SymExpr::one(), &mass_operators().unwrap().0, &mass_operators().unwrap().1);
        assert!(one.is_empty());
        assert!(verify_m2_closed_form(20, 6).passed);
        assert!(!verify_m2_closed_form(1, 9).passed);
    }

    #[test]
    fn monomial_count() {
        assert_eq!(f0_monomials(6).len(), 210);
    }

    #[test]
    fn canonical_eigenvalues() {
        let r = canonical_eigenvalue_check(6);
        assert!(r.passed, "{:?}", r.residual_terms);
    }

    #[test]
    fn exhaustive_degree_six() {
        let r = verify_m2_exhaustive(6);
        assert!(r.passed, "{:?}", r.residual_terms);
    }
}
