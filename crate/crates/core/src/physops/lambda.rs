use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::sp::{build_sp_basis, e_matrix, symmetric_class, BasisElement};
use crate::error::{Error, Result};
use crate::symcore::{normal_order, Scalar, WeylExpr, WeylWord, Q};

/// Outcome of the exact Λ chain for a given n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaDerivation {
    pub n: usize,
    /// σ in Σ_sp (φ Eγ_k φ)² = σ Λ².
    pub sp_scalar: String,
    /// Same sum over the full (2n)² basis.
    pub full_scalar: String,
    /// Contribution of γ₀ alone.
    pub gamma0_scalar: String,
    /// Root of the eikonal relation Σ Γ_k² + (Λ/4)² = 0.
    pub lambda2: u64,
}

// Σ_k w_k (Eβ_k)_{ab}(Eβ_k)_{cd} as words φ_a φ_b φ_c φ_d
fn quartic_words(elements: &[BasisElement], n: usize) -> Vec<(Q, WeylWord)> {
    let e = e_matrix(n);
    let mut tensor: BTreeMap<[u16; 4], Q> = BTreeMap::new();
    for el in elements {
        let m = e.mul(&el.beta);
        for ((a, b), x) in m.entries() {
            for ((c, d), y) in m.entries() {
                *tensor.entry([*a as u16, *b as u16, *c as u16, *d as u16]).or_insert_with(Q::zero) +=
                    &el.weight * x * y;
            }
        }
    }
    tensor.into_iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (v, k.to_vec())).collect()
}

fn scalar_lambda2<S: Scalar>(expr: &WeylExpr<S>, what: &str) -> Result<S> {
    let residual: Vec<String> = expr
        .terms()
        .iter()
        .filter(|((w, p), _)| !w.is_empty() || *p != 2)
        .map(|((w, p), c)| format!("{what}: {c:?}·Λ^{p}·{w:?}"))
        .collect();
    if !residual.is_empty() {
        return Err(Error::CancellationFailure(residual));
    }
    Ok(expr.scalar_coefficient(2))
}

fn sum_of_squares(elements: &[BasisElement], n: usize, what: &str) -> Result<Q> {
    let expr = normal_order(n, quartic_words(elements, n))?;
    scalar_lambda2(&expr, what)
}

/// Runs the exact chain: the sp sum of squares collapses to -(c/2)Λ²n(2n+1),
/// the full basis gives -cΛ²n², γ₀ gives Λ²cn/2, and the eikonal relation
/// fixes Λ² = n(2n+1).
pub fn lambda_from_dimension(n: usize) -> Result<LambdaDerivation> {
    let basis = build_sp_basis(n)?;
    let sym = symmetric_class(&basis)?;
    let sp = sum_of_squares(&basis.elements, n, "sp sum")?;
    let rest = sum_of_squares(&sym, n, "symmetric class")?;
    let gamma0 = sum_of_squares(&sym[..1], n, "gamma0")?;
    let full = &sp + &rest;

    let c = &basis.c;
    let nq = Q::from_integer((n as i64).into());
    let dim_sp = Q::from_integer(((n * (2 * n + 1)) as i64).into());
    let half = Q::new(1.into(), 2.into());
    let checks = [
        ("sp sum", &sp, -(c * &half) * &dim_sp),
        ("full sum", &full, -(c * &nq * &nq)),
        ("gamma0", &gamma0, c * &nq * &half),
    ];
    let mismatched: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| *got != want)
        .map(|(w, got, want)| format!("{w}: {got} != {want}"))
        .collect();
    if !mismatched.is_empty() {
        return Err(Error::CancellationFailure(mismatched));
    }
    // Γ_k = Q_k / 2Λ gives Σ Γ² = σ/4, so σ/4 + Λ²/16 = 0
    let lambda2 = -(&sp * Q::from_integer(4.into()));
    let lambda2 = lambda2
        .to_integer()
        .to_u64()
        .filter(|_| lambda2.is_integer())
        .ok_or_else(|| Error::CancellationFailure(vec![format!("non-integer Λ² = {lambda2}")]))?;
    Ok(LambdaDerivation {
        n,
        sp_scalar: sp.to_string(),
        full_scalar: full.to_string(),
        gamma0_scalar: gamma0.to_string(),
        lambda2,
    })
}

/// Floating-point run of the sp part of the chain on the normalized matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericLambda {
    pub n: usize,
    pub sp_scalar: f64,
    pub lambda2: f64,
    /// Largest surviving non-scalar coefficient.
    pub max_residual: f64,
}

pub fn lambda_from_dimension_numeric(n: usize) -> Result<NumericLambda> {
    let basis = build_sp_basis(n)?;
    let e = e_matrix(n).to_dense_f64();
    let dim = 2 * n;
    let mut tensor: BTreeMap<[u16; 4], Complex<f64>> = BTreeMap::new();
    for g in basis.matrices() {
        let mut m: Vec<(usize, usize, Complex<f64>)> = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                let v: Complex<f64> = (0..dim).map(|k| g[k][b] * e[a][k]).sum();
                if v.norm() > 0.0 {
                    m.push((a, b, v));
                }
            }
        }
        for (a, b, x) in &m {
            for (c, d, y) in &m {
                *tensor.entry([*a as u16, *b as u16, *c as u16, *d as u16]).or_insert_with(Complex::zero) += x * y;
            }
        }
    }
    let words: Vec<(Complex<f64>, WeylWord)> = tensor.into_iter().map(|(k, v)| (v, k.to_vec())).collect();
    let expr = normal_order(n, words)?;
    let max_residual =
        expr.terms().iter().filter(|((w, p), _)| !w.is_empty() || *p != 2).map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let sp_scalar = expr.scalar_coefficient(2);
    if max_residual > 1e-9 || sp_scalar.im.abs() > 1e-9 {
        return Err(Error::CancellationFailure(vec![format!("numeric residual {max_residual:e}")]));
    }
    Ok(NumericLambda { n, sp_scalar: sp_scalar.re, lambda2: -4.0 * sp_scalar.re, max_residual })
}

/// Fine-structure value 1/Λ² for the dimension-136 algebra.
pub fn alpha_from_lambda2(lambda2: u64) -> f64 {
    1.0 / lambda2 as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chains() {
        assert_eq!(lambda_from_dimension(1).unwrap().lambda2, 3);
        assert_eq!(lambda_from_dimension(2).unwrap().lambda2, 10);
        let d = lambda_from_dimension(3).unwrap();
        assert_eq!(d.lambda2, 21);
        assert_eq!(d.sp_scalar, "-21/4");
        assert_eq!(d.full_scalar, "-9/2");
        assert_eq!(d.gamma0_scalar, "3/4");
    }

    #[test]
    fn numeric_matches_exact() {
        let r = lambda_from_dimension_numeric(3).unwrap();
        assert!((r.lambda2 - 21.0).abs() < 1e-10);
    }

    #[test]
    fn dimension_136() {
        assert_eq!(lambda_from_dimension(8).unwrap().lambda2, 136);
        let r = lambda_from_dimension_numeric(8).unwrap();
        assert!((r.lambda2 - 136.0).abs() < 1e-9);
        assert!((alpha_from_lambda2(136) - 1.0 / 136.0).abs() < 1e-18);
    }
}
