//! Physical operators on the symbolic kernel and exact checks of their
//! algebra: eigenvalues, the closed form of the mass operator, matrix
//! completeness, the sp(n, ℂ) basis and the value of Λ.

mod checks;
mod completeness;
mod identities;
mod lambda;
mod operators;
mod sp;

pub use checks::{
    additional_norm, canonical_eigenvalue_check, f0_monomials, verify_m2_closed_form, verify_m2_closed_form_seeded,
    verify_m2_exhaustive, weighted_eigenvalue_check, Construction, OctetMember, SkeletonSpec,
};
pub use completeness::{completeness_lhs, completeness_rhs, sigma_tau_completeness, CompletenessRelation};
pub use identities::{distribution_identities, poisson_total, skeleton_norm_sum};
pub use lambda::{
    alpha_from_lambda2, lambda_from_dimension, lambda_from_dimension_numeric, LambdaDerivation, NumericLambda,
};
pub use operators::{build_operator, model_variables, pauli, OperatorName};
pub use sp::{
    build_sp_basis, completeness_entry, e_matrix, full_basis, gram_schmidt, symmetric_class, verify_sp_closure,
    verify_sp_completeness, verify_sp_structure, BasisElement, SpBasis, SparseQ,
};

use crate::spectrum::Model;
use crate::symcore::{SymExpr, VarId};
use crate::verify::VerificationReport;

fn lambda_report(n: usize) -> VerificationReport {
    VerificationReport::timed(format!("lambda_from_dimension[n={n}]"), || match lambda_from_dimension(n) {
        Ok(d) if d.lambda2 == (n * (2 * n + 1)) as u64 => vec![],
        Ok(d) => vec![format!("Λ² = {}, expected {}", d.lambda2, n * (2 * n + 1))],
        Err(e) => vec![e.to_string()],
    })
}

fn lambda_numeric_report(n: usize) -> VerificationReport {
    VerificationReport::timed(format!("lambda_numeric[n={n}]"), || match lambda_from_dimension_numeric(n) {
        Ok(r) if (r.lambda2 - (n * (2 * n + 1)) as f64).abs() < 1e-9 && r.max_residual < 1e-9 => vec![],
        Ok(r) => vec![format!("Λ² = {}, residual {:e}", r.lambda2, r.max_residual)],
        Err(e) => vec![e.to_string()],
    })
}

fn skeleton_report(label: &str, sk: &SkeletonSpec, model: Model) -> VerificationReport {
    weighted_eigenvalue_check(sk, model)
        .unwrap_or_else(|e| VerificationReport::failed(format!("weighted_eigenvalue[{label}]"), e.to_string()))
}

/// The octet skeletons, one per isospin component.
pub fn octet_skeletons() -> Vec<(String, SkeletonSpec)> {
    let mut out = Vec::new();
    for k in 1..=2 {
        out.push((format!("N{k}"), SkeletonSpec::octet(OctetMember::Nucleon { k })));
    }
    out.push(("Lambda".into(), SkeletonSpec::octet(OctetMember::Lambda)));
    for a in 1..=3 {
        out.push((format!("Sigma{a}"), SkeletonSpec::octet(OctetMember::Sigma { a })));
    }
    for m in 1..=2 {
        out.push((format!("Xi{m}"), SkeletonSpec::octet(OctetMember::Xi { m })));
    }
    out
}

/// Every exact operator-algebra check.
pub fn verify_algebra() -> Vec<VerificationReport> {
    let mut out = vec![verify_m2_exhaustive(6), verify_m2_closed_form(20, 8), canonical_eigenvalue_check(6)];
    for (label, sk) in octet_skeletons() {
        out.push(skeleton_report(&label, &sk, Model::H16));
    }
    let h8 = SymExpr::var(VarId::phi(1, 1)).mul(&SymExpr::var(VarId::phibar(2, 1))).expect("degree 2");
    out.push(skeleton_report("h8 mixed", &SkeletonSpec::explicit(Model::H8, h8, None), Model::H8));
    out.push(sigma_tau_completeness());
    for n in 1..=3 {
        match build_sp_basis(n) {
            Ok(b) => {
                out.push(verify_sp_structure(&b));
                out.push(verify_sp_completeness(&b));
                out.push(verify_sp_closure(&b));
            }
            Err(e) => out.push(VerificationReport::failed(format!("sp_basis[n={n}]"), e.to_string())),
        }
        out.push(lambda_report(n));
    }
    out.push(lambda_report(8));
    out.push(lambda_numeric_report(8));
    out.push(distribution_identities());
    out
}
