use super::checks::additional_norm;
use crate::specfun::factorial;
use crate::spectrum::Model;
use crate::symcore::{canonical_skeleton, cq, SymExpr, Q};
use crate::verify::VerificationReport;

/// e^{-x} Σ_{j<terms} x^j / j!, the truncated Poisson total.
pub fn poisson_total(x: f64, terms: usize) -> f64 {
    let mut term = 1.0;
    let mut acc = 0.0;
    for j in 0..terms {
        acc += term;
        term *= x / (j + 1) as f64;
    }
    acc * (-x).exp()
}

/// Σ_m |f^(i)_m|² as a normalized polynomial.
pub fn skeleton_norm_sum(two_i: u32) -> SymExpr {
    let mut acc = SymExpr::zero();
    for m in 0..=two_i {
        let sk = canonical_skeleton(two_i, m).expect("m <= 2i");
        let sq = sk.poly.mul(&sk.poly.conj()).expect("degree within cap");
        acc = acc.add(&sq.scale(&cq(sk.norm_sq))).expect("unweighted");
    }
    acc
}

/// (a) Σ_m |f^(i)_m|² = (φ̄φ)^{2i}/(2i)! for 2i ≤ 8; (b) the Poisson weights
/// in 2i sum to one on x ∈ {0.1, 1, 5} within 1e-12.
pub fn distribution_identities() -> VerificationReport {
    VerificationReport::timed("distribution_identities", || {
        let mut residuals = Vec::new();
        let s = additional_norm(Model::H16);
        for two_i in 0..=8u32 {
            let want = s.pow(two_i).expect("degree within cap").scale(&cq(Q::new(1.into(), factorial(two_i as u64))));
            let got = skeleton_norm_sum(two_i);
            if got != want {
                residuals.push(format!("2i = {two_i}: {}", got.sub(&want).expect("unweighted")));
            }
        }
        for x in [0.1, 1.0, 5.0] {
            let err = (poisson_total(x, 60) - 1.0).abs();
            if err >= 1e-12 {
                residuals.push(format!("Poisson total at x = {x} off by {err:e}"));
            }
        }
        residuals
    })
}
