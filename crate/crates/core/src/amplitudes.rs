//! Momentum-space amplitude factors: the invariant integral, the moment
//! lemma, the Laguerre–Jacobi limit, N_Σ, the isotopic factor and the
//! creation probabilities.

use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::calibrate::ModelParams;
use crate::error::{Error, Result};
use crate::specfun::{
    bessel_j, binomial_exact, factorial, hyp2f1_terminating_exact, jacobi_p_exact, pow_rat, EvalPolicy,
};
use crate::spectrum::{mass_squared, Family, FamilyName, Model, QuantumNumbers};
use crate::symcore::Q;
use crate::verify::VerificationReport;

type C64 = Complex<f64>;

/// I(X) = 2 J₁(X)/X, with I(0) = 1.
pub fn invariant_i(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidInput(format!("X must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    Ok(2.0 * bessel_j(1, x, &EvalPolicy::default())? / x)
}

/// Σ_{m,n<terms} (-a/2)^m/m! · (-b/2)^n/(n!(m+n+1)!), equal to I(√(2(a+b))).
pub fn invariant_i_double_series(a: f64, b: f64, terms: usize) -> f64 {
    let mut acc = 0.0;
    let mut fm = 1.0;
    for m in 0..terms {
        if m > 0 {
            fm *= -a / 2.0 / m as f64;
        }
        let mut fnn = 1.0;
        let mut denom = (1..=m + 1).fold(1.0, |p, k| p * k as f64);
        for n in 0..terms {
            if n > 0 {
                fnn *= -b / 2.0 / n as f64;
                denom *= (m + n + 1) as f64;
            }
            acc += fm * fnn / denom;
        }
    }
    acc
}

/// A(s) = 1/(s + 1).
pub fn moment_coefficient(s: u32) -> Result<Q> {
    if s > 60 {
        return Err(Error::InvalidInput(format!("s must be <= 60, got {s}")));
    }
    Ok(Q::new(1.into(), (s as i64 + 1).into()))
}

/// Monte-Carlo mean and standard error of (Π₀/π₀)^s with Π₀ uniform on [0, π₀].
pub fn moment_monte_carlo<R: Rng>(s: u32, samples: usize, rng: &mut R) -> (f64, f64) {
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..samples {
        let v = rng.gen::<f64>().powi(s as i32);
        sum += v;
        sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    (mean, ((sq / n - mean * mean).max(0.0) / n).sqrt())
}

/// Both sides of an exact identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub lhs: Q,
    pub rhs: Q,
    pub equal: bool,
}

impl IdentityReport {
    fn new(lhs: Q, rhs: Q) -> Self {
        let equal = lhs == rhs;
        IdentityReport { lhs, rhs, equal }
    }
}

/// Σ_l (-1)^l C(m, l)/(l + n + 1) = m! n!/(m + n + 1)!.
pub fn alternating_binomial_identity(m: u32, n: u32) -> Result<IdentityReport> {
    if m > 30 || n > 30 {
        return Err(Error::InvalidInput("m, n must be <= 30".into()));
    }
    let mut lhs = Q::zero();
    for l in 0..=m {
        let term = binomial_exact(m as i64, l as u64) / Q::from_integer((l as i64 + n as i64 + 1).into());
        lhs = if l % 2 == 0 { lhs + term } else { lhs - term };
    }
    let rhs = Q::new(factorial(m as u64) * factorial(n as u64), factorial(m as u64 + n as u64 + 1));
    Ok(IdentityReport::new(lhs, rhs))
}

fn half(two_x: i32) -> Q {
    Q::new(two_x.into(), 2.into())
}

fn fact_of_half_sum(two_a: i32, two_b: i32) -> Result<Q> {
    let s = two_a + two_b;
    if s < 0 || s % 2 != 0 {
        return Err(Error::InvalidWeights(format!(
            "({}) + ({}) is not a nonnegative integer",
            half(two_a),
            half(two_b)
        )));
    }
    Ok(Q::from_integer(factorial((s / 2) as u64)))
}

/// The v₁, v₂ → ∞ limit: ₂F₁ form versus Jacobi form. Spins are passed doubled.
pub fn laguerre_jacobi_limit_identity(two_i: i32, two_i0: i32, two_i3: i32, v1: &Q, v2: &Q) -> Result<IdentityReport> {
    let sum = v1 + v2;
    if sum.is_zero() || v2.is_zero() {
        return Err(Error::InvalidInput("need v1 + v2 != 0 and v2 != 0".into()));
    }
    if two_i0 > two_i || two_i3.abs() > two_i || (two_i - two_i0) % 2 != 0 || (two_i - two_i3) % 2 != 0 {
        return Err(Error::InvalidWeights(format!(
            "inconsistent weights i = {}, i0 = {}, i3 = {}",
            half(two_i),
            half(two_i0),
            half(two_i3)
        )));
    }
    let n = ((two_i - two_i0) / 2) as u32;
    let alpha = (two_i0 - two_i3) / 2;
    let beta = (two_i0 + two_i3) / 2;
    if n as i32 + alpha < 0 || n as i32 + beta < 0 {
        return Err(Error::InvalidWeights(format!("Jacobi parameters ({alpha}, {beta}) undefined at degree {n}")));
    }
    let c = (two_i0 + two_i3) / 2 + 1;
    let hyp = hyp2f1_terminating_exact(-(n as i64), -((two_i - two_i3) / 2) as i64, c as i64, &(-(v1 / v2)))?;
    let lhs = pow_rat(&-v2.clone(), n)
        / (Q::from_integer(factorial(n as u64))
            * fact_of_half_sum(two_i, -two_i3)?
            * fact_of_half_sum(two_i0, two_i3)?)
        * hyp;
    let x = (v1 - v2) / &sum;
    let jac = jacobi_p_exact(n, alpha as i64, beta as i64, &x)?;
    let rhs = pow_rat(&sum, n) / (fact_of_half_sum(two_i, -two_i3)? * fact_of_half_sum(two_i, two_i3)?) * jac;
    Ok(IdentityReport::new(lhs, rhs))
}

/// Which form of N_Σ to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NFactorForm {
    /// (M/2)^{2i1-2F-3} J_{2i+1}(M) e^{-M²/4μ²}.
    General,
    /// The printed octet forms, which differ from the general rule for Ξ.
    Printed,
}

/// N_Σ from the general rule.
pub fn n_factor(qn: &QuantumNumbers, mass_gev: f64, mu2: f64) -> Result<f64> {
    if !(mass_gev > 0.0) || !(mu2 > 0.0) {
        return Err(Error::InvalidInput(format!("need M > 0 and mu2 > 0, got {mass_gev}, {mu2}")));
    }
    if qn.two_i < 0 || qn.two_i > qn.two_i1() - 2 {
        return Err(Error::InvalidWeights(format!("i = {} exceeds i1 - 1", qn.i())));
    }
    let exponent = qn.n - 1 - 2 * qn.f;
    let order = (qn.two_i + 1) as u32;
    let j = bessel_j(order, mass_gev, &EvalPolicy::default())?;
    Ok((mass_gev / 2.0).powi(exponent) * j * (-mass_gev * mass_gev / (4.0 * mu2)).exp())
}

/// (exponent of M/2, Bessel order, sign) of the printed octet forms.
pub fn printed_n_factor_form(name: FamilyName) -> Option<(i32, u32, f64)> {
    match name {
        FamilyName::N => Some((-2, 2, 1.0)),
        FamilyName::Lambda => Some((-1, 1, 1.0)),
        FamilyName::Sigma => Some((-1, 3, -1.0)),
        FamilyName::Xi => Some((0, 2, 1.0)),
        _ => None,
    }
}

/// N_Σ for a family's ground member in the requested form.
pub fn family_n_factor(name: FamilyName, mass_gev: f64, mu2: f64, form: NFactorForm) -> Result<f64> {
    let qn = name.family().qn(0);
    match (form, printed_n_factor_form(name)) {
        (NFactorForm::Printed, Some((e, order, sign))) => {
            let j = bessel_j(order, mass_gev, &EvalPolicy::default())?;
            Ok(sign * (mass_gev / 2.0).powi(e) * j * (-mass_gev * mass_gev / (4.0 * mu2)).exp())
        }
        _ => n_factor(&qn, mass_gev, mu2),
    }
}

struct Weights {
    n: u32,
    alpha: i64,
    beta: i64,
    omega_sq: Q,
    denom_power: i32,
}

fn weights(qn: &QuantumNumbers) -> Result<Weights> {
    let (ti, ti0, ti3) = (qn.two_i, qn.two_i0(), qn.two_i3);
    if ti < 0 || ti0 > ti || ti3.abs() > ti || (ti - ti0) % 2 != 0 || (ti - ti3) % 2 != 0 {
        return Err(Error::InvalidWeights(format!("i = {}, i0 = {}, i3 = {}", half(ti), half(ti0), half(ti3))));
    }
    let n = ((ti - ti0) / 2) as u32;
    let alpha = ((ti0 - ti3) / 2) as i64;
    let beta = ((ti0 + ti3) / 2) as i64;
    if n as i64 + alpha < 0 || n as i64 + beta < 0 {
        return Err(Error::InvalidWeights(format!("Jacobi parameters ({alpha}, {beta}) at degree {n}")));
    }
    let omega_sq = fact_of_half_sum(ti, ti0)? * fact_of_half_sum(ti, -ti0)?
        / (fact_of_half_sum(ti, ti3)? * fact_of_half_sum(ti, -ti3)?);
    // total power of z̄z below the polynomial: i + i1 - F - 1
    let two_p = ti + qn.two_i1() - 2 * qn.f - 2;
    if two_p % 2 != 0 {
        return Err(Error::InvalidWeights("half-integer power of z̄z".into()));
    }
    Ok(Weights { n, alpha, beta, omega_sq, denom_power: two_p / 2 })
}

fn cpow(z: C64, e: i64) -> C64 {
    if e >= 0 {
        z.powi(e as i32)
    } else {
        C64::new(1.0, 0.0) / z.powi((-e) as i32)
    }
}

/// O^(i)_Σ(z): ω z1^{i0+i3} z2^{i0-i3} P^{(i0-i3, i0+i3)}_{i-i0}(z̄τ₃z/z̄z)/(z̄z)^{i1+i0-F-1},
/// evaluated as the finite sum over the Jacobi expansion so that only z̄z
/// appears in denominators.
pub fn iso_factor(qn: &QuantumNumbers, z1: C64, z2: C64) -> Result<C64> {
    if z1.norm() == 0.0 && z2.norm() == 0.0 {
        return Err(Error::InvalidInput("(z1, z2) must not vanish".into()));
    }
    let w = weights(qn)?;
    let zz = z1.norm_sqr() + z2.norm_sqr();
    let n = w.n as i64;
    let mut acc = C64::new(0.0, 0.0);
    for m in 0..=n {
        let c = binomial_exact(n + w.alpha, m as u64) * binomial_exact(n + w.beta, (n - m) as u64);
        if c.is_zero() {
            continue;
        }
        let sign = if (n - m) % 2 == 0 { 1.0 } else { -1.0 };
        let coef = c.to_f64().unwrap_or(f64::NAN) * sign;
        let term = cpow(z1.conj(), m) * cpow(z1, m + w.beta) * cpow(z2.conj(), n - m) * cpow(z2, n - m + w.alpha);
        acc += term * coef;
    }
    let omega = w.omega_sq.to_f64().unwrap_or(f64::NAN).sqrt();
    Ok(acc * omega / zz.powi(w.denom_power))
}

/// |O^(i)_Σ|² exactly from rational |z1|², |z2|².
pub fn iso_modulus_sq_exact(qn: &QuantumNumbers, abs_z1_sq: &Q, abs_z2_sq: &Q) -> Result<Q> {
    let w = weights(qn)?;
    let zz = abs_z1_sq + abs_z2_sq;
    if zz.is_zero() {
        return Err(Error::InvalidInput("(z1, z2) must not vanish".into()));
    }
    let n = w.n as i64;
    // the summand's modulus factorizes as |z1|^{2m+β}|z2|^{2(n-m)+α}; all terms share the phase of z1^β z2^α
    let mut poly = Q::zero();
    for m in 0..=n {
        let c = binomial_exact(n + w.alpha, m as u64) * binomial_exact(n + w.beta, (n - m) as u64);
        if c.is_zero() {
            continue;
        }
        let sign = if (n - m) % 2 == 0 { Q::one() } else { -Q::one() };
        poly += c * sign * pow_rat(abs_z1_sq, m as u32) * pow_rat(abs_z2_sq, (n - m) as u32);
    }
    let mut out = poly.clone() * poly * &w.omega_sq;
    out *= pow_int(abs_z1_sq, w.beta) * pow_int(abs_z2_sq, w.alpha);
    Ok(out / pow_rat(&zz, 2 * w.denom_power.max(0) as u32) * pow_rat(&zz, 2 * (-w.denom_power).max(0) as u32))
}

fn pow_int(x: &Q, e: i64) -> Q {
    if e >= 0 {
        pow_rat(x, e as u32)
    } else {
        Q::one() / pow_rat(x, (-e) as u32)
    }
}

/// Jacobi argument z̄τ₃z / z̄z.
pub fn jacobi_argument(z1: C64, z2: C64) -> f64 {
    (z1.norm_sqr() - z2.norm_sqr()) / (z1.norm_sqr() + z2.norm_sqr())
}

/// Calibrated isospinor z = z₂(ε, 1) with z̄z fixed.
pub fn calibrated_spinor(params: &ModelParams) -> (C64, C64) {
    let e2 = params.eps_modulus * params.eps_modulus;
    let z2 = (params.zbar_z / (e2 + 1.0)).sqrt();
    (C64::from_polar(params.eps_modulus * z2, params.chi), C64::new(z2, 0.0))
}

/// One charge state of a multiplet.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeFactors {
    pub family: FamilyName,
    /// Electric charge i3 + Y/2.
    pub charge_state: i32,
    #[serde(skip)]
    pub two_i3: i32,
    pub n_factor: f64,
    #[serde(skip)]
    pub iso_factor: C64,
    pub iso_modulus: f64,
    /// Spinor structure ν_α(π) = π̄a; not evaluated.
    #[serde(skip)]
    pub lorentz_tag: &'static str,
    #[serde(rename = "W_raw")]
    pub probability: f64,
    #[serde(rename = "W_normalized")]
    pub normalized: f64,
}

/// Probabilities of all charge states with their raw total.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityTable {
    pub entries: Vec<AmplitudeFactors>,
    pub raw_sum: f64,
    /// raw_sum - 1.
    pub deviation: f64,
}

impl ProbabilityTable {
    /// Σ W over a family's charge states.
    pub fn family_total(&self, name: FamilyName) -> f64 {
        self.entries.iter().filter(|e| e.family == name).map(|e| e.probability).sum()
    }

    pub fn get(&self, name: FamilyName, charge: i32) -> Option<&AmplitudeFactors> {
        self.entries.iter().find(|e| e.family == name && e.charge_state == charge)
    }
}

/// W_Σ = |O^(i)_Σ N_Σ|² for the ground member of each family and every i3.
pub fn creation_probabilities(
    families: &[Family],
    params: &ModelParams,
    form: NFactorForm,
) -> Result<ProbabilityTable> {
    let (z1, z2) = calibrated_spinor(params);
    let mut entries = Vec::new();
    for fam in families {
        let base = fam.qn(0);
        let m = mass_squared(Model::H16, &base, params.mu2, params.scale_gev2)?.physical_mass(fam.f)?;
        let nf = family_n_factor(fam.name, m, params.mu2, form)?;
        for two_i3 in (-fam.two_i..=fam.two_i).step_by(2) {
            let qn = base.with_i3(two_i3);
            let iso = iso_factor(&qn, z1, z2)?;
            let p = iso.norm_sqr() * nf * nf;
            entries.push(AmplitudeFactors {
                family: fam.name,
                charge_state: (two_i3 + fam.y) / 2,
                two_i3,
                n_factor: nf,
                iso_factor: iso,
                iso_modulus: iso.norm(),
                lorentz_tag: "nu_alpha(pi) = pibar a",
                probability: p,
                normalized: 0.0,
            });
        }
    }
    let raw_sum: f64 = entries.iter().map(|e| e.probability).sum();
    for e in entries.iter_mut() {
        e.normalized = e.probability / raw_sum;
    }
    Ok(ProbabilityTable { entries, raw_sum, deviation: raw_sum - 1.0 })
}

/// The four octet families.
pub fn octet() -> Vec<Family> {
    [FamilyName::N, FamilyName::Lambda, FamilyName::Sigma, FamilyName::Xi].iter().map(|n| n.family()).collect()
}

/// Alternating binomial identity for every m, n ≤ 20.
pub fn check_alternating_binomial() -> VerificationReport {
    VerificationReport::timed("identities.alternating_binomial", || {
        let mut bad = Vec::new();
        for m in 0..=20 {
            for n in 0..=20 {
                match alternating_binomial_identity(m, n) {
                    Ok(r) if r.equal => {}
                    Ok(r) => bad.push(format!("m={m} n={n}: {} != {}", r.lhs, r.rhs)),
                    Err(e) => bad.push(format!("m={m} n={n}: {e}")),
                }
            }
        }
        bad
    })
}

/// Limit identity over i ≤ 3, every admissible (i0, i3) and v1, v2 ∈ {1, 2, 3, 5}.
pub fn check_laguerre_jacobi_limit() -> VerificationReport {
    VerificationReport::timed("identities.laguerre_jacobi_limit", || {
        let vs: Vec<Q> = [1, 2, 3, 5].iter().map(|&v| Q::from_integer(v.into())).collect();
        let mut bad = Vec::new();
        let mut cases = 0;
        for two_i in 0..=6 {
            for two_i0 in (-two_i..=two_i).step_by(2) {
                for two_i3 in (-two_i..=two_i).step_by(2) {
                    // (i0 + i3)! and the Pochhammer denominators need i0 + i3 >= 0
                    if two_i0 + two_i3 < 0 {
                        continue;
                    }
                    for v1 in &vs {
                        for v2 in &vs {
                            cases += 1;
                            match laguerre_jacobi_limit_identity(two_i, two_i0, two_i3, v1, v2) {
                                Ok(r) if r.equal => {}
                                Ok(r) => bad.push(format!(
                                    "2i={two_i} 2i0={two_i0} 2i3={two_i3} v=({v1},{v2}): {} != {}",
                                    r.lhs, r.rhs
                                )),
                                Err(e) => bad.push(format!("2i={two_i} 2i0={two_i0} 2i3={two_i3}: {e}")),
                            }
                        }
                    }
                }
            }
        }
        if cases == 0 {
            bad.push("empty grid".into());
        }
        bad
    })
}

/// Moment lemma A(s) = 1/(s+1) against a seeded Monte-Carlo mean, within 3σ.
pub fn check_moment_lemma() -> VerificationReport {
    VerificationReport::timed("identities.moment_lemma", || {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut bad = Vec::new();
        for s in 0..=8 {
            let exact = moment_coefficient(s).ok().and_then(|q| q.to_f64()).unwrap_or(f64::NAN);
            let (mean, se) = moment_monte_carlo(s, 200_000, &mut rng);
            if (mean - exact).abs() > 3.0 * se + 1e-15 {
                bad.push(format!("s={s}: MC {mean} ± {se} vs {exact}"));
            }
        }
        bad
    })
}

/// invariant_i against the truncated double series at 50 points of [0, 5].
pub fn check_invariant_series() -> VerificationReport {
    VerificationReport::timed("identities.invariant_double_series", || {
        let mut bad = Vec::new();
        for k in 0..50 {
            let x = 5.0 * k as f64 / 49.0;
            let a = x * x / 4.0;
            let series = invariant_i_double_series(a, a, 40);
            match invariant_i(x) {
                Ok(v) if (v - series).abs() <= 1e-10 => {}
                Ok(v) => bad.push(format!("X={x}: {v} vs {series}")),
                Err(e) => bad.push(format!("X={x}: {e}")),
            }
        }
        bad
    })
}

/// Every amplitude identity check.
pub fn verify_identities() -> Vec<VerificationReport> {
    vec![check_alternating_binomial(), check_laguerre_jacobi_limit(), check_moment_lemma(), check_invariant_series()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rat;
    use rand::SeedableRng;

    #[test]
    fn invariant_examples() {
        assert_eq!(invariant_i(0.0).unwrap(), 1.0);
        assert!((invariant_i(1.0).unwrap() - 0.880101).abs() < 1e-6);
        // X = 1 from a = b = 1/4
        assert!((invariant_i_double_series(0.25, 0.25, 20) - invariant_i(1.0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn moments() {
        assert_eq!(moment_coefficient(0).unwrap(), rat(1, 1));
        assert_eq!(moment_coefficient(3).unwrap(), rat(1, 4));
        assert!(moment_coefficient(61).is_err());
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for s in [0u32, 1, 3, 7] {
            let (mean, se) = moment_monte_carlo(s, 200_000, &mut rng);
            assert!((mean - 1.0 / (s as f64 + 1.0)).abs() <= 3.0 * se + 1e-15, "s = {s}");
        }
    }

    #[test]
    fn binomial_identity_examples() {
        assert!(alternating_binomial_identity(0, 0).unwrap().equal);
        let r = alternating_binomial_identity(2, 1).unwrap();
        assert_eq!(r.lhs, rat(1, 12));
        assert!(r.equal);
        assert!(alternating_binomial_identity(5, 3).unwrap().equal);
    }

    #[test]
    fn identity_suite_passes() {
        for r in verify_identities() {
            assert!(r.passed, "{}: {:?}", r.check_id, r.residual_terms);
        }
    }

    #[test]
    fn limit_identity_examples() {
        let r = laguerre_jacobi_limit_identity(2, 0, 0, &rat(1, 1), &rat(1, 1)).unwrap();
        assert!(r.equal, "{} vs {}", r.lhs, r.rhs);
        assert!(laguerre_jacobi_limit_identity(3, 1, 1, &rat(2, 1), &rat(3, 1)).unwrap().equal);
        let deg0 = laguerre_jacobi_limit_identity(2, 2, 0, &rat(7, 3), &rat(-1, 2)).unwrap();
        assert!(deg0.equal);
        assert_eq!(deg0.rhs, rat(1, 1));
    }

    #[test]
    fn nucleon_n_factor() {
        let qn = QuantumNumbers::new(1, 1, 1, 1);
        let v = n_factor(&qn, 1.14, 0.067).unwrap();
        assert!((v - 3.51e-3).abs() / 3.51e-3 < 0.01);
        for name in [FamilyName::N, FamilyName::Lambda, FamilyName::Sigma] {
            let g = family_n_factor(name, 1.2, 0.067, NFactorForm::General).unwrap();
            let p = family_n_factor(name, 1.2, 0.067, NFactorForm::Printed).unwrap();
            assert!((g.abs() - p.abs()).abs() < 1e-15 * g.abs().max(1e-300));
        }
        let g = family_n_factor(FamilyName::Xi, 1.39, 0.067, NFactorForm::General).unwrap();
        let p = family_n_factor(FamilyName::Xi, 1.39, 0.067, NFactorForm::Printed).unwrap();
        assert!((g / p - (1.39f64 / 2.0).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn nucleon_doublet_ratio() {
        let z1 = C64::new(1.3, 0.4);
        let z2 = C64::new(-0.2, 0.9);
        let p = iso_factor(&QuantumNumbers::new(1, 1, 1, 1).with_i3(1), z1, z2).unwrap();
        let n = iso_factor(&QuantumNumbers::new(1, 1, 1, 1).with_i3(-1), z1, z2).unwrap();
        assert!((p - z1).norm() < 1e-14 && (n - z2).norm() < 1e-14);
    }

    #[test]
    fn lambda_isofactor() {
        let z1 = C64::new(1.3, 0.4);
        let z2 = C64::new(-0.2, 0.9);
        let l = iso_factor(&QuantumNumbers::new(1, 2, 0, 0), z1, z2).unwrap();
        assert!((l - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn exact_modulus_matches_float() {
        let (a, b) = (rat(3, 2), rat(5, 7));
        let z1 = C64::from_polar(1.5f64.sqrt(), 0.7);
        let z2 = C64::from_polar((5.0f64 / 7.0).sqrt(), -1.1);
        for (n, y, ti) in [(1, 1, 1), (2, 0, 2), (5, -1, 1), (3, 1, 3), (2, 0, 0)] {
            for ti3 in (-ti..=ti).step_by(2) {
                let qn = QuantumNumbers::new(1, n, y, ti).with_i3(ti3);
                let exact = iso_modulus_sq_exact(&qn, &a, &b).unwrap().to_f64().unwrap();
                let float = iso_factor(&qn, z1, z2).unwrap().norm_sqr();
                assert!((exact - float).abs() <= 1e-12 * exact.abs().max(1e-300), "{qn:?}: {exact} {float}");
            }
        }
    }

    #[test]
    fn calibrated_probabilities() {
        let params = ModelParams::calibrated(136, 0.0).unwrap();
        let (z1, z2) = calibrated_spinor(&params);
        assert!((jacobi_argument(z1, z2) - 1.0 / 136.0).abs() < 1e-14);
        let t = creation_probabilities(&octet(), &params, NFactorForm::General).unwrap();
        let (wp, wn) = (t.get(FamilyName::N, 1).unwrap().probability, t.get(FamilyName::N, 0).unwrap().probability);
        assert!(wp > wn);
        assert!((wp / wn - 137.0 / 135.0).abs() < 1e-12);
        assert!(t.deviation.abs() < 0.3);
        let (n, s, x) =
            (t.family_total(FamilyName::N), t.family_total(FamilyName::Sigma), t.family_total(FamilyName::Xi));
        assert!(n / s > 10.0 && s / x > 10.0);
    }
}
