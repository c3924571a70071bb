//! Free parameters of the model: μ² from the minimum principle, z̄z from the
//! probability sum rule, the temperatures, ε and the isotopic rotation V.

use num_complex::Complex;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, rat, EvalPolicy};
use crate::spectrum::{bisect, mass_squared, Model, QuantumNumbers};
use crate::symcore::Q;

type C64 = Complex<f64>;

/// Calibrated parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu2: f64,
    #[serde(rename = "T_f")]
    pub t_f: f64,
    #[serde(rename = "T_fdot")]
    pub t_fdot: f64,
    pub zbar_z: f64,
    pub eps_modulus: f64,
    pub chi: f64,
    pub lambda2: u32,
    pub scale_gev2: f64,
    #[serde(rename = "inv_Z")]
    pub inv_z: f64,
}

impl ModelParams {
    /// Builds the set from μ² and z̄z; the temperatures follow from
    /// T_ḟ = z̄z/3 and μ² = 3 T_f T_ḟ.
    pub fn from_mu2_zbarz(mu2: f64, zbar_z: f64, lambda2: u32, chi: f64) -> Result<Self> {
        let eps = epsilon_modulus(lambda2)?;
        let p = ModelParams {
            mu2,
            t_f: mu2 / zbar_z,
            t_fdot: zbar_z / 3.0,
            zbar_z,
            eps_modulus: eps.value,
            chi,
            lambda2,
            scale_gev2: 1.0,
            inv_z: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Full calibration: minimum principle for μ², then the nucleon sum rule.
    pub fn calibrated(lambda2: u32, chi: f64) -> Result<Self> {
        let mu2 = mu2_minimum();
        let m_n = nucleon_mass(mu2)?;
        ModelParams::from_mu2_zbarz(mu2, zbarz_from_sum_rule(m_n, mu2)?, lambda2, chi)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mu2", self.mu2),
            ("T_f", self.t_f),
            ("T_fdot", self.t_fdot),
            ("zbar_z", self.zbar_z),
            ("eps_modulus", self.eps_modulus),
            ("scale_gev2", self.scale_gev2),
            ("inv_Z", self.inv_z),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::ConstraintViolation(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if self.lambda2 < 2 {
            return Err(Error::ConstraintViolation(format!("lambda2 must be >= 2, got {}", self.lambda2)));
        }
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        if rel(3.0 * self.t_f * self.t_fdot, self.mu2) > 1e-12 {
            return Err(Error::ConstraintViolation("mu2 != 3 T_f T_fdot".into()));
        }
        if rel(self.t_fdot, self.zbar_z / 3.0) > 1e-12 {
            return Err(Error::ConstraintViolation("T_fdot != zbar_z / 3".into()));
        }
        Ok(())
    }
}

/// Nucleon mass in GeV from the h16 baryon branch.
pub fn nucleon_mass(mu2: f64) -> Result<f64> {
    mass_squared(Model::H16, &QuantumNumbers::new(1, 1, 1, 1), mu2, 1.0)?.physical_mass(1)
}

/// Squared gap between the branches at the synthetic point (N = -1, i = -1/2),
/// in units of (2μ²)²: g(u) = -4u²(u² - 10u + 1).
pub fn branch_gap(u: f64) -> f64 {
    -4.0 * u * u * (u * u - 10.0 * u + 1.0)
}

/// dg/du = -8u(2u² - 15u + 1).
pub fn branch_gap_derivative(u: f64) -> f64 {
    -8.0 * u * (2.0 * u * u - 15.0 * u + 1.0)
}

/// Smaller root of 2u² - 15u + 1 = 0, the minimizer of the branch gap.
pub fn mu2_minimum() -> f64 {
    (15.0 - 217f64.sqrt()) / 4.0
}

/// The same root written as (15/4)(1 - √(1 - 8/225)).
pub fn mu2_minimum_alt() -> f64 {
    3.75 * (1.0 - (1.0 - 8.0 / 225.0f64).sqrt())
}

/// Numerical minimization of the branch gap starting from [lo, hi] ⊂ (0, 0.5);
/// the bracket is widened inside the interval until g' changes sign.
pub fn minimize_branch_gap(lo: f64, hi: f64) -> Result<f64> {
    if !(0.0 < lo && lo < hi && hi < 0.5) {
        return Err(Error::InvalidInput(format!("bracket [{lo}, {hi}] must lie inside (0, 0.5)")));
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        if branch_gap_derivative(lo) < 0.0 {
            break;
        }
        lo *= 0.5;
    }
    for _ in 0..200 {
        if branch_gap_derivative(hi) > 0.0 {
            break;
        }
        hi = 0.5 * (hi + 0.5);
    }
    bisect(branch_gap_derivative, lo, hi)
}

/// z̄z = [(2/M_N)⁴ J₂(M_N)² exp(-M_N²/2μ²)]⁻¹, the nucleon-dominated sum rule.
pub fn zbarz_from_sum_rule(m_n: f64, mu2: f64) -> Result<f64> {
    if !(m_n > 0.0) || !(mu2 > 0.0) {
        return Err(Error::InvalidInput(format!("need M_N > 0 and mu2 > 0, got {m_n}, {mu2}")));
    }
    let j2 = bessel_j(2, m_n, &EvalPolicy::default())?;
    Ok(1.0 / ((2.0 / m_n).powi(4) * j2 * j2 * (-m_n * m_n / (2.0 * mu2)).exp()))
}

/// η = 3 T_ḟ / T_f.
pub fn eta_parameter(params: &ModelParams) -> f64 {
    3.0 * params.t_fdot / params.t_f
}

/// √r with the radicand r kept exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSqrt {
    pub radicand: Q,
    pub value: f64,
}

fn check_lambda2(lambda2: u32) -> Result<()> {
    if lambda2 <= 1 {
        return Err(Error::InvalidInput(format!("lambda2 must be >= 2, got {lambda2}")));
    }
    Ok(())
}

/// |ε| = √((Λ²+1)/(Λ²-1)).
pub fn epsilon_modulus(lambda2: u32) -> Result<ExactSqrt> {
    let radicand = proton_neutron_ratio(lambda2)?;
    let value = radicand.to_f64().unwrap_or(f64::NAN).sqrt();
    Ok(ExactSqrt { radicand, value })
}

/// W_p / W_n = |ε|² = (Λ²+1)/(Λ²-1).
pub fn proton_neutron_ratio(lambda2: u32) -> Result<Q> {
    check_lambda2(lambda2)?;
    let l = lambda2 as i64;
    Ok(rat(l + 1, l - 1))
}

/// Isotopic rotation V = √((Λ²-1)/2)·[[1, ε], [-ε̄, -1]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoRotation {
    pub v: [[C64; 2]; 2],
    pub eps: C64,
    pub lambda2: u32,
}

fn mat_mul(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn dagger(a: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn det(a: &[[C64; 2]; 2]) -> C64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn build_v(lambda2: u32, chi: f64) -> Result<IsoRotation> {
    let eps_mod = epsilon_modulus(lambda2)?.value;
    let eps = C64::from_polar(eps_mod, chi);
    let l = lambda2 as f64;
    let a = ((l - 1.0) / 2.0).sqrt();
    let b = ((l + 1.0) / 2.0).sqrt();
    let v = [[C64::new(a, 0.0), C64::from_polar(b, chi)], [-C64::from_polar(b, -chi), C64::new(-a, 0.0)]];
    let rot = IsoRotation { v, eps, lambda2 };
    let d = rot.det_residual();
    if d > 1e-12 {
        return Err(Error::ConstraintViolation(format!("|det V - 1| = {d:e}")));
    }
    let err = rot.square_residual();
    if err > 1e-12 * l {
        return Err(Error::ConstraintViolation(format!("V² differs from -I by {err:e}")));
    }
    Ok(rot)
}

impl IsoRotation {
    /// |det V - 1|.
    pub fn det_residual(&self) -> f64 {
        (det(&self.v) - C64::new(1.0, 0.0)).norm()
    }

    /// Entrywise L1 distance of V² from -I.
    pub fn square_residual(&self) -> f64 {
        let sq = mat_mul(&self.v, &self.v);
        (sq[0][0] + 1.0).norm() + sq[0][1].norm() + sq[1][0].norm() + (sq[1][1] + 1.0).norm()
    }
}

/// Components of V†V over (τ₁, τ₂, τ₃, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoVector {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a0: f64,
}

impl IsoVector {
    /// A₀² - |A⃗|².
    pub fn minkowski_norm(&self) -> f64 {
        self.a0 * self.a0 - self.a1 * self.a1 - self.a2 * self.a2 - self.a3 * self.a3
    }

    /// Σ A_m τ⁺_m.
    pub fn reconstruct(&self) -> [[C64; 2]; 2] {
        [
            [C64::new(self.a0 + self.a3, 0.0), C64::new(self.a1, -self.a2)],
            [C64::new(self.a1, self.a2), C64::new(self.a0 - self.a3, 0.0)],
        ]
    }
}

pub fn isovector_a(rot: &IsoRotation) -> Result<IsoVector> {
    let m = mat_mul(&dagger(&rot.v), &rot.v);
    let i = C64::new(0.0, 1.0);
    let a0 = (m[0][0] + m[1][1]) * 0.5;
    let a3 = (m[0][0] - m[1][1]) * 0.5;
    let a1 = (m[0][1] + m[1][0]) * 0.5;
    let a2 = (m[1][0] - m[0][1]) * 0.5 * (-i);
    let scale = rot.lambda2 as f64;
    let imag = a0.im.abs() + a1.im.abs() + a2.im.abs() + a3.im.abs();
    let out = IsoVector { a1: a1.re, a2: a2.re, a3: a3.re, a0: a0.re };
    let back = out.reconstruct();
    let mut resid = imag;
    for r in 0..2 {
        for c in 0..2 {
            resid += (back[r][c] - m[r][c]).norm();
        }
    }
    if resid > 1e-12 * scale {
        return Err(Error::DecompositionResidual(resid));
    }
    Ok(out)
}

/// Exact invariants of V†V built from the rational squared moduli
/// p = (Λ²-1)/2 and q = (Λ²+1)/2 of the entries of V.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoVectorExact {
    pub a0: Q,
    pub a3: Q,
    /// A₁² + A₂², independent of χ.
    pub perp_sq: Q,
}

impl IsoVectorExact {
    pub fn minkowski_norm(&self) -> Q {
        &self.a0 * &self.a0 - &self.a3 * &self.a3 - &self.perp_sq
    }
}

pub fn isovector_exact(lambda2: u32) -> Result<IsoVectorExact> {
    check_lambda2(lambda2)?;
    let l = lambda2 as i64;
    let p = rat(l - 1, 2);
    let q = rat(l + 1, 2);
    // diagonal of V†V: |v00|² + |v10|² and |v01|² + |v11|²; the two
    // off-diagonal products a·b e^{iχ} add in phase, so |(V†V)₀₁|² = 4pq
    let d0 = &p + &q;
    let d1 = &q + &p;
    let half = rat(1, 2);
    Ok(IsoVectorExact { a0: (&d0 + &d1) * &half, a3: (&d0 - &d1) * &half, perp_sq: rat(4, 1) * &p * &q })
}

/// L_{n0} = ½ Tr(τ_n (V†V)⁻¹) for τ₀ = 1, τ₃ and τ± = τ₁ ± iτ₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LColumn {
    pub l00: C64,
    pub l30: C64,
    pub l_plus: C64,
    pub l_minus: C64,
}

pub fn l_column(rot: &IsoRotation) -> Result<LColumn> {
    let m = mat_mul(&dagger(&rot.v), &rot.v);
    // det(V†V) = |det V|², without the cancellation of the 2×2 formula
    let d = C64::new(det(&rot.v).norm_sqr(), 0.0);
    if d.norm() < 1e-300 {
        return Err(Error::SingularMatrix);
    }
    let inv = [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]];
    Ok(LColumn {
        l00: (inv[0][0] + inv[1][1]) * 0.5,
        l30: (inv[0][0] - inv[1][1]) * 0.5,
        l_plus: inv[1][0],
        l_minus: inv[0][1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn minimum_principle() {
        let u = mu2_minimum();
        assert!((u - 0.067271).abs() < 1e-6);
        assert!((mu2_minimum_alt() - u).abs() < 1e-14);
        assert!(branch_gap_derivative(0.05) < 0.0);
        assert!(branch_gap_derivative(0.08) > 0.0);
        assert!(branch_gap(u) < branch_gap(u - 1e-3) && branch_gap(u) < branch_gap(u + 1e-3));
    }

    #[test]
    fn minimization_is_a_fixed_point() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let a: f64 = rng.gen_range(1e-4..0.499);
            let b: f64 = rng.gen_range(a + 1e-4..0.4999);
            assert!((minimize_branch_gap(a, b).unwrap() - mu2_minimum()).abs() < 1e-10);
        }
    }

    #[test]
    fn sum_rule_and_temperatures() {
        let z = zbarz_from_sum_rule(1.14, 0.067).unwrap();
        assert!((z - 8.1e4).abs() / 8.1e4 < 0.1);
        assert!((0.27e5..=0.29e5).contains(&(z / 3.0)));
        let p = ModelParams::from_mu2_zbarz(0.067, z, 136, 0.0).unwrap();
        assert!((p.t_f - 0.78e-6).abs() / 0.78e-6 < 0.15);
        assert!((eta_parameter(&p) - z * z / 0.067).abs() / eta_parameter(&p) < 1e-12);
        assert!((eta_parameter(&p) / 1e11) < 1.3 && (eta_parameter(&p) / 1e11) > 1.0 / 1.3);
    }

    #[test]
    fn toy_eta() {
        let p = ModelParams {
            mu2: 3.0,
            t_f: 1.0,
            t_fdot: 1.0,
            zbar_z: 3.0,
            eps_modulus: 1.0,
            chi: 0.0,
            lambda2: 2,
            scale_gev2: 1.0,
            inv_z: 1.0,
        };
        assert!(p.validate().is_ok());
        assert_eq!(eta_parameter(&p), 3.0);
    }

    #[test]
    fn epsilon() {
        let e = epsilon_modulus(136).unwrap();
        assert_eq!(e.radicand, rat(137, 135));
        assert!((e.value - 1.0073801).abs() < 1e-7);
        assert!((epsilon_modulus(2).unwrap().value - 3f64.sqrt()).abs() < 1e-15);
        assert!(epsilon_modulus(1).is_err());
        assert_eq!(proton_neutron_ratio(2).unwrap(), rat(3, 1));
    }

    #[test]
    fn rotation() {
        let r = build_v(136, 0.0).unwrap();
        let s = 0.5f64.sqrt();
        assert!((r.v[0][0].re - s * 135f64.sqrt()).abs() < 1e-12);
        assert!((r.v[0][1].re - s * 137f64.sqrt()).abs() < 1e-12);
        assert!((r.v[1][0].re + s * 137f64.sqrt()).abs() < 1e-12);
        assert!((r.v[1][1].re + s * 135f64.sqrt()).abs() < 1e-12);
        for chi in [0.3, 1.0, 2.5] {
            assert!(build_v(136, chi).is_ok());
            assert!(build_v(5, chi).is_ok());
        }
    }

    #[test]
    fn isovector() {
        let big = (136f64 * 136.0 - 1.0).sqrt();
        let a = isovector_a(&build_v(136, 0.0).unwrap()).unwrap();
        assert!((a.a0 - 136.0).abs() < 1e-10 && (a.a1 - big).abs() < 1e-9 && a.a2.abs() < 1e-9 && a.a3.abs() < 1e-10);
        assert!((a.minkowski_norm() - 1.0).abs() < 1e-8);
        let a = isovector_a(&build_v(136, std::f64::consts::FRAC_PI_2).unwrap()).unwrap();
        assert!(a.a1.abs() < 1e-9);
        assert!((a.a2.abs() - big).abs() < 1e-9);
    }

    #[test]
    fn exact_isovector() {
        let a = isovector_exact(136).unwrap();
        assert_eq!(a.a0, rat(136, 1));
        assert_eq!(a.a3, rat(0, 1));
        assert_eq!(a.minkowski_norm(), rat(1, 1));
        let f = isovector_a(&build_v(136, 0.7).unwrap()).unwrap();
        assert!((f.a1 * f.a1 + f.a2 * f.a2 - 18495.0).abs() < 1e-9);
    }

    #[test]
    fn l_values() {
        let l = l_column(&build_v(136, 0.4).unwrap()).unwrap();
        assert!((l.l00.re - 136.0).abs() < 1e-10);
        assert!(l.l30.norm() < 1e-12);
        let big = (136f64 * 136.0 - 1.0).sqrt();
        assert!((l.l_plus.norm() - big).abs() < 1e-9);
        assert!((l.l_plus + C64::from_polar(big, -0.4)).norm() < 1e-9);
    }

    #[test]
    fn calibrated_set() {
        let p = ModelParams::calibrated(136, 0.0).unwrap();
        assert!((p.mu2 - 0.0672700).abs() < 1e-7);
        assert!(p.validate().is_ok());
        let json = serde_json::to_value(p).unwrap();
        for key in ["mu2", "T_f", "T_fdot", "zbar_z", "eps_modulus", "chi", "lambda2", "scale_gev2", "inv_Z"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
