use num_traits::Zero;

use crate::error::{Error, Result};
use crate::spectrum::Model;
use crate::symcore::{cq_i, cq_int, Action, Cq, DiffOp, Kind, VarId};

/// Operators buildable on the symbolic kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorName {
    /// Isotonic number φ∂ + φ̄∂̄.
    N,
    /// Hypercharge φ∂ - φ̄∂̄.
    Y,
    /// Isospin component a ∈ {1, 2, 3}.
    I(u8),
    /// Second isospin-like generator, φ(τ_aᵀ/2)∂ + φ̄(τ_a/2)∂̄.
    K(u8),
    M2DirectH8,
    M2DirectH16,
    M2Closed,
}

/// Pauli matrix τ_a, a ∈ {1, 2, 3}.
pub fn pauli(a: u8) -> [[Cq; 2]; 2] {
    let z = || cq_int(0, 1);
    let one = || cq_int(1, 1);
    match a {
        1 => [[z(), one()], [one(), z()]],
        2 => [[z(), -cq_i()], [cq_i(), z()]],
        3 => [[one(), z()], [z(), -one()]],
        _ => panic!("Pauli index {a} outside 1..=3"),
    }
}

/// Field variables of a model: k = 1 only for h8, all eight for h16.
pub fn model_variables(model: Model) -> Vec<VarId> {
    VarId::all().into_iter().filter(|v| model == Model::H16 || v.k == 1).collect()
}

fn euler(model: Model, sign_conj: i64) -> DiffOp {
    let mut op = DiffOp::zero();
    for v in model_variables(model) {
        let c = if v.kind == Kind::Plain { 1 } else { sign_conj };
        op = op.add(&DiffOp::mul_diff(cq_int(c, 1), v, v));
    }
    op
}

// Σ_α [φ_{αj} (s·τᵀ/2)_{jk} ∂_{αk} + φ̄_{αj} (τ/2)_{jk} ∂̄_{αk}]
fn isospin_like(a: u8, plain_sign: i64) -> DiffOp {
    let t = pauli(a);
    let half = cq_int(1, 2);
    let mut op = DiffOp::zero();
    for alpha in 1..=2u8 {
        for j in 0..2usize {
            for k in 0..2usize {
                let cp = &t[k][j] * &half * cq_int(plain_sign, 1);
                if !cp.is_zero() {
                    op.push(
                        cp,
                        vec![Action::Mul(VarId::phi(alpha, j as u8 + 1)), Action::Diff(VarId::phi(alpha, k as u8 + 1))],
                    );
                }
                let cc = &t[j][k] * &half;
                if !cc.is_zero() {
                    op.push(
                        cc,
                        vec![
                            Action::Mul(VarId::phibar(alpha, j as u8 + 1)),
                            Action::Diff(VarId::phibar(alpha, k as u8 + 1)),
                        ],
                    );
                }
            }
        }
    }
    op
}

fn require(model: Model, wanted: Model, what: &str) -> Result<()> {
    if model != wanted {
        return Err(Error::InvalidModel(format!("{what} requires {wanted}, got {model}")));
    }
    Ok(())
}

/// Builds the named operator for a model.
pub fn build_operator(name: OperatorName, model: Model) -> Result<DiffOp> {
    match name {
        OperatorName::N => Ok(euler(model, 1)),
        OperatorName::Y => Ok(euler(model, -1)),
        OperatorName::I(a) | OperatorName::K(a) => {
            require(model, Model::H16, "isospin")?;
            if !(1..=3).contains(&a) {
                return Err(Error::InvalidInput(format!("isospin component {a} outside 1..=3")));
            }
            Ok(isospin_like(a, if matches!(name, OperatorName::I(_)) { -1 } else { 1 }))
        }
        OperatorName::M2DirectH8 => {
            require(model, Model::H8, "the h8 mass operator")?;
            let mut op = DiffOp::zero();
            for alpha in 1..=2u8 {
                for beta in 1..=2u8 {
                    op.push(
                        cq_int(-4, 1),
                        vec![
                            Action::Diff(VarId::phi(beta, 1)),
                            Action::Diff(VarId::phibar(alpha, 1)),
                            Action::Mul(VarId::phibar(alpha, 1)),
                            Action::Mul(VarId::phi(beta, 1)),
                        ],
                    );
                }
            }
            Ok(op)
        }
        OperatorName::M2DirectH16 => {
            require(model, Model::H16, "the h16 mass operator")?;
            let mut op = DiffOp::zero();
            for alpha in 1..=2u8 {
                for beta in 1..=2u8 {
                    for k in 1..=2u8 {
                        for m in 1..=2u8 {
                            op.push(
                                cq_int(-4, 1),
                                vec![
                                    Action::Diff(VarId::phi(alpha, k)),
                                    Action::Diff(VarId::phibar(beta, k)),
                                    Action::Mul(VarId::phibar(beta, m)),
                                    Action::Mul(VarId::phi(alpha, m)),
                                ],
                            );
                        }
                    }
                }
            }
            Ok(op)
        }
        OperatorName::M2Closed => {
            require(model, Model::H16, "the closed mass operator")?;
            let n = euler(model, 1);
            let mut op = DiffOp::scalar(cq_int(-32, 1));
            op = op.sub(&n.compose(&n)).sub(&n.scale(&cq_int(10, 1)));
            for a in 1..=3 {
                let i = isospin_like(a, -1);
                op = op.add(&i.compose(&i).scale(&cq_int(4, 1)));
            }
            Ok(op)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{apply_diffop, Monomial, SymExpr, Symbol};

    fn mono(pairs: &[(VarId, u32)]) -> SymExpr {
        let ps: Vec<(Symbol, u32)> = pairs.iter().map(|(v, e)| (Symbol::Var(*v), *e)).collect();
        SymExpr::monomial(Monomial::from_pairs(&ps), cq_int(1, 1))
    }

    #[test]
    fn degree_and_charge() {
        let f = mono(&[(VarId::phi(2, 1), 2), (VarId::phibar(2, 2), 1)]);
        let n = build_operator(OperatorName::N, Model::H16).unwrap();
        let y = build_operator(OperatorName::Y, Model::H16).unwrap();
        assert_eq!(apply_diffop(&n, &f).unwrap(), f.scale(&cq_int(3, 1)));
        assert_eq!(apply_diffop(&y, &f).unwrap(), f);
    }

    #[test]
    fn closed_form_on_phi2() {
        let f = SymExpr::var(VarId::phi(2, 2));
        let m = build_operator(OperatorName::M2Closed, Model::H16).unwrap();
        assert_eq!(apply_diffop(&m, &f).unwrap(), f.scale(&cq_int(-40, 1)));
    }

    #[test]
    fn direct_operators_on_constants() {
        let h16 = build_operator(OperatorName::M2DirectH16, Model::H16).unwrap();
        let h8 = build_operator(OperatorName::M2DirectH8, Model::H8).unwrap();
        assert_eq!(apply_diffop(&h16, &SymExpr::one()).unwrap(), SymExpr::constant(cq_int(-32, 1)));
        assert_eq!(apply_diffop(&h8, &SymExpr::one()).unwrap(), SymExpr::constant(cq_int(-16, 1)));
    }

    #[test]
    fn isospin_algebra() {
        // [i1, i2] = i·i3 on a generic quadratic
        let i: Vec<DiffOp> = (1..=3).map(|a| build_operator(OperatorName::I(a), Model::H16).unwrap()).collect();
        let f = mono(&[(VarId::phi(2, 1), 1), (VarId::phibar(2, 2), 1)]).add(&mono(&[(VarId::phi(2, 2), 2)])).unwrap();
        let comm = i[0].compose(&i[1]).sub(&i[1].compose(&i[0]));
        let lhs = apply_diffop(&comm, &f).unwrap();
        let rhs = apply_diffop(&i[2], &f).unwrap().scale(&cq_i());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn model_errors() {
        assert!(matches!(build_operator(OperatorName::I(1), Model::H8), Err(Error::InvalidModel(_))));
        assert!(matches!(build_operator(OperatorName::M2Closed, Model::H8), Err(Error::InvalidModel(_))));
        assert!(matches!(build_operator(OperatorName::M2DirectH16, Model::H8), Err(Error::InvalidModel(_))));
    }
}
