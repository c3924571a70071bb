//! Special functions: Bessel J of integer order, Jacobi, Laguerre,
//! terminating Gauss series and exact binomials.
//!
//! Polynomial families come in pairs: a floating evaluator and an exact
//! rational one (`*_exact`) used by the identity checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::verify::VerificationReport;

/// Largest Bessel order accepted by [`bessel_j`].
pub const MAX_BESSEL_ORDER: u32 = 200;

/// Tolerance and term budget for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPolicy {
    pub target_abs_tol: f64,
    pub max_terms: usize,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        EvalPolicy { target_abs_tol: 1e-13, max_terms: 400 }
    }
}

impl EvalPolicy {
    pub fn new(target_abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(target_abs_tol > 0.0) || max_terms == 0 {
            return Err(Error::InvalidInput(format!(
                "policy needs tol > 0 and max_terms >= 1, got {target_abs_tol}, {max_terms}"
            )));
        }
        Ok(EvalPolicy { target_abs_tol, max_terms })
    }
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial n(n-1)...(n-k+1)/k!.
pub fn binomial_exact(n: i64, k: u64) -> BigRational {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j as i64);
    }
    BigRational::new(num, factorial(k))
}

fn binomial_checked(n: i64, k: i64) -> Result<BigRational> {
    if n < 0 || k < 0 {
        return Err(Error::InvalidInput(format!("binomial C({n}, {k}) has a negative argument")));
    }
    Ok(binomial_exact(n, k as u64))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Neumaier compensated sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// J_order(x) by the alternating power series.
pub fn bessel_j(order: u32, x: f64, policy: &EvalPolicy) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidInput(format!("bessel_j needs finite x >= 0, got {x}")));
    }
    if order > MAX_BESSEL_ORDER {
        return Err(Error::InvalidInput(format!("bessel order {order} > {MAX_BESSEL_ORDER}")));
    }
    if x == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    if x <= 8.0 {
        bessel_j_float(order, x, policy)
    } else {
        bessel_j_fixed(order, x, policy)
    }
}

fn bessel_j_float(order: u32, x: f64, policy: &EvalPolicy) -> Result<f64> {
    let h = 0.5 * x;
    let mut t = 1.0;
    for j in 1..=order {
        t *= h / j as f64;
    }
    let h2 = h * h;
    let mut acc = CompensatedSum::default();
    for k in 0..policy.max_terms {
        acc.add(t);
        let next = -t * h2 / ((k + 1) as f64 * (k + 1 + order as usize) as f64);
        if next.abs() < policy.target_abs_tol && (k as f64) >= h {
            return Ok(acc.value());
        }
        t = next;
    }
    Err(Error::NonConvergent { terms: policy.max_terms })
}

// Fixed-point big-integer summation for arguments where the f64 series
// loses digits to cancellation.
fn bessel_j_fixed(order: u32, x: f64, policy: &EvalPolicy) -> Result<f64> {
    let bits = 96 + (x * std::f64::consts::LOG2_E).ceil() as usize;
    let one = BigInt::one() << bits;
    let xr = BigRational::from_float(x).ok_or_else(|| Error::InvalidInput("x".into()))?;
    let half = &xr / BigRational::from_integer(BigInt::from(2));
    let to_fixed = |r: &BigRational| (r * BigRational::from_integer(one.clone())).floor().to_integer();
    let h = to_fixed(&half);
    let h2 = to_fixed(&(&half * &half));
    let mut t = one.clone();
    for j in 1..=order {
        t = ((t * &h) >> bits) / BigInt::from(j);
    }
    let tol = to_fixed(&BigRational::from_float(policy.target_abs_tol).unwrap_or_else(BigRational::zero));
    let mut sum = BigInt::zero();
    for k in 0..policy.max_terms {
        sum += &t;
        let den = BigInt::from((k as u64 + 1) * (k as u64 + 1 + order as u64));
        let next = -((&t * &h2) >> bits) / den;
        if next.abs() < tol && (k as f64) >= 0.5 * x {
            return Ok(ratio_to_f64(&BigRational::new(sum, one)));
        }
        t = next;
    }
    Err(Error::NonConvergent { terms: policy.max_terms })
}

fn jacobi_check(n: u32, alpha: i64, beta: i64) -> Result<()> {
    let n = n as i64;
    if n + alpha < 0 || n + beta < 0 {
        return Err(Error::InvalidInput(format!("jacobi P_{n}^({alpha},{beta}) needs n+alpha >= 0 and n+beta >= 0")));
    }
    Ok(())
}

/// P_n^(alpha,beta)(x) by the finite binomial sum.
pub fn jacobi_p(n: u32, alpha: i64, beta: i64, x: f64) -> Result<f64> {
    jacobi_check(n, alpha, beta)?;
    let ni = n as i64;
    let mut acc = CompensatedSum::default();
    for m in 0..=ni {
        let c = ratio_to_f64(&(binomial_checked(ni + alpha, m)? * binomial_checked(ni + beta, ni - m)?));
        acc.add(c * (x - 1.0).powi((ni - m) as i32) * (x + 1.0).powi(m as i32));
    }
    Ok(acc.value() * 0.5f64.powi(n as i32))
}

/// Exact P_n^(alpha,beta)(x) for rational x.
pub fn jacobi_p_exact(n: u32, alpha: i64, beta: i64, x: &BigRational) -> Result<BigRational> {
    jacobi_check(n, alpha, beta)?;
    let ni = n as i64;
    let one = BigRational::one();
    let xm = x - &one;
    let xp = x + &one;
    let mut acc = BigRational::zero();
    for m in 0..=ni {
        let c = binomial_checked(ni + alpha, m)? * binomial_checked(ni + beta, ni - m)?;
        acc += c * pow_rat(&xm, (ni - m) as u32) * pow_rat(&xp, m as u32);
    }
    Ok(acc / BigRational::from_integer(BigInt::one() << n as usize))
}

/// Integer power of a rational.
pub fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Generalized Laguerre L_n^alpha(x).
pub fn laguerre_l(n: u32, alpha: u32, x: f64) -> f64 {
    let mut acc = CompensatedSum::default();
    let mut xk_over_kfact = 1.0;
    for k in 0..=n {
        if k > 0 {
            xk_over_kfact *= x / k as f64;
        }
        let c = ratio_to_f64(&binomial_exact((n + alpha) as i64, (n - k) as u64));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(sign * c * xk_over_kfact);
    }
    acc.value()
}

/// Exact Laguerre L_n^alpha(x).
pub fn laguerre_l_exact(n: u32, alpha: u32, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..=n {
        let term = binomial_exact((n + alpha) as i64, (n - k) as u64) * pow_rat(x, k)
            / BigRational::from_integer(factorial(k as u64));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn pochhammer(a: i64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(a + j as i64))
}

/// Terminating Gauss series 2F1(a, b; c; x), a <= 0.
pub fn hyp2f1_terminating_exact(a: i64, b: i64, c: i64, x: &BigRational) -> Result<BigRational> {
    if a > 0 {
        return Err(Error::InvalidInput(format!("2F1 needs a <= 0 to terminate, got {a}")));
    }
    let terms = (-a) as u64;
    let mut acc = BigRational::zero();
    for k in 0..=terms {
        let den = pochhammer(c, k) * factorial(k);
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("2F1 denominator (c)_{k} vanishes for c = {c}")));
        }
        acc += BigRational::new(pochhammer(a, k) * pochhammer(b, k), den) * pow_rat(x, k as u32);
    }
    Ok(acc)
}

/// Floating terminating 2F1.
pub fn hyp2f1_terminating(a: i64, b: i64, c: i64, x: f64) -> Result<f64> {
    if a > 0 {
        return Err(Error::InvalidInput(format!("2F1 needs a <= 0 to terminate, got {a}")));
    }
    let mut acc = CompensatedSum::default();
    for k in 0..=((-a) as u64) {
        let den = pochhammer(c, k) * factorial(k);
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("2F1 denominator (c)_{k} vanishes for c = {c}")));
        }
        let coef = ratio_to_f64(&BigRational::new(pochhammer(a, k) * pochhammer(b, k), den));
        acc.add(coef * x.powi(k as i32));
    }
    Ok(acc.value())
}

/// Left side of the Bessel multiplication theorem,
/// sum_m (-1)^m/m! (t(z+t/2)/z)^m J_{m+1}(z), m = 0..=terms.
pub fn bessel_multiplication_lhs(z: f64, t: f64, terms: usize, policy: &EvalPolicy) -> Result<f64> {
    if !(z > 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!("need z > 0 and finite t, got z={z}, t={t}")));
    }
    if terms > policy.max_terms {
        return Err(Error::InvalidInput(format!("terms {terms} > max_terms {}", policy.max_terms)));
    }
    let u = t * (z + 0.5 * t) / z;
    let mut acc = CompensatedSum::default();
    let mut coef = 1.0;
    let mut last = 0.0;
    for m in 0..=terms {
        if m > 0 {
            coef *= -u / m as f64;
        }
        let order = (m + 1) as u32;
        let j = if order > MAX_BESSEL_ORDER { 0.0 } else { bessel_j(order, z, policy)? };
        last = coef * j;
        acc.add(last);
    }
    if last.abs() > policy.target_abs_tol {
        return Err(Error::NonConvergent { terms });
    }
    Ok(acc.value())
}

/// Exact gcd-free rational from a pair of integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// Σ_{k<terms} (-1)^k y^k / (k! (k+shift)!) with y = (p/2q)², summed over the
// common denominator (2q)^(2K-2) (K-1)! (K-1+shift)! so only one gcd is taken.
fn alternating_series(p: &BigInt, q: &BigInt, shift: u32, terms: u32) -> BigRational {
    if terms == 0 {
        return BigRational::zero();
    }
    let k_top = terms - 1;
    let two_q_sq = (q * 2u32) * (q * 2u32);
    let p_sq = p * p;
    let mut weight = BigInt::one();
    let mut sum = BigInt::zero();
    for k in (0..=k_top).rev() {
        let t = &weight * p_sq.pow(k);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        weight *= &two_q_sq * BigInt::from(k as u64 * (k + shift) as u64);
    }
    let den = two_q_sq.pow(k_top) * factorial(k_top as u64) * factorial((k_top + shift) as u64);
    BigRational::new(sum, den)
}

/// Partial sum of the Bessel series in exact rationals, k = 0..terms.
pub fn bessel_series_exact(order: u32, x: &BigRational, terms: u32) -> BigRational {
    let half = x / BigRational::from_integer(2.into());
    pow_rat(&half, order) * alternating_series(x.numer(), x.denom(), order, terms)
}

// ((1/X) d/dX)^m [X^-ν J_ν(X)] by term-wise differentiation:
// Σ_{k≥m} (-1)^k 2^m / ((k-m)! (k+ν)! 2^(2k+ν)) X^(2k-2m), reindexed by j = k - m
fn reduced_derivative_exact(order: u32, m: u32, x: &BigRational, terms: u32) -> BigRational {
    let s = alternating_series(x.numer(), x.denom(), m + order, terms)
        / BigRational::from_integer(BigInt::one() << (m + order) as usize);
    if m % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Floating Bessel values against the exact series on x ≤ 50.
pub fn check_bessel_series() -> VerificationReport {
    VerificationReport::timed("specfun.bessel_series_oracle", || {
        let p = EvalPolicy::default();
        let mut bad = Vec::new();
        for order in [0u32, 1, 2, 3, 5, 7, 12] {
            for xn in [0i64, 250, 1140, 2350, 5000, 8000, 12000, 20000, 30000, 50000] {
                let oracle = ratio_to_f64(&bessel_series_exact(order, &rat(xn, 1000), 160));
                match bessel_j(order, xn as f64 / 1000.0, &p) {
                    Ok(v) if (v - oracle).abs() <= p.target_abs_tol => {}
                    Ok(v) => bad.push(format!("J_{order}({}) = {v}, oracle {oracle}", xn as f64 / 1000.0)),
                    Err(e) => bad.push(format!("J_{order}({}): {e}", xn as f64 / 1000.0)),
                }
            }
        }
        bad
    })
}

/// ((1/X)d/dX)^m [X^-ν J_ν] = (-1)^m X^-(ν+m) J_(ν+m) for ν ≤ 10, x ∈ [0, 20].
pub fn check_bessel_derivative_identity() -> VerificationReport {
    VerificationReport::timed("specfun.bessel_derivative_identity", || {
        let p = EvalPolicy::default();
        let mut bad = Vec::new();
        for order in 0..=10u32 {
            for m in 1..=3u32 {
                for (xn, xd) in [(1i64, 2i64), (1, 1), (2, 1), (7, 2), (5, 1), (8, 1), (12, 1), (20, 1)] {
                    let x = rat(xn, xd);
                    let xf = xn as f64 / xd as f64;
                    // multiply through by X^(ν+m) so both sides are O(1)
                    let lhs = ratio_to_f64(&(reduced_derivative_exact(order, m, &x, 120) * pow_rat(&x, order + m)));
                    let rhs = match bessel_j(order + m, xf, &p) {
                        Ok(j) => {
                            if m % 2 == 0 {
                                j
                            } else {
                                -j
                            }
                        }
                        Err(e) => {
                            bad.push(format!("J_{}({xf}): {e}", order + m));
                            continue;
                        }
                    };
                    if (lhs - rhs).abs() > 1e-10 * rhs.abs() + p.target_abs_tol {
                        bad.push(format!("nu={order} m={m} x={xf}: {lhs} vs {rhs}"));
                    }
                }
            }
        }
        bad
    })
}

/// Exact Jacobi endpoint values for n ≤ 8 and |α|, |β| ≤ 4.
pub fn check_jacobi_endpoints() -> VerificationReport {
    VerificationReport::timed("specfun.jacobi_endpoints", || {
        let one = BigRational::one();
        let mut bad = Vec::new();
        for n in 0..=8u32 {
            for a in -4..=4i64 {
                for b in -4..=4i64 {
                    if n as i64 + a.min(b) < 0 {
                        continue;
                    }
                    let sign = if n % 2 == 0 { one.clone() } else { -one.clone() };
                    let at1 = jacobi_p_exact(n, a, b, &one);
                    let atm1 = jacobi_p_exact(n, a, b, &-one.clone());
                    if at1.as_ref().ok() != Some(&binomial_exact(n as i64 + a, n as u64)) {
                        bad.push(format!("P_{n}^({a},{b})(1) = {at1:?}"));
                    }
                    if atm1.as_ref().ok() != Some(&(sign * binomial_exact(n as i64 + b, n as u64))) {
                        bad.push(format!("P_{n}^({a},{b})(-1) = {atm1:?}"));
                    }
                }
            }
        }
        bad
    })
}

/// 2^-n C(n+α, n) (x-1)^n 2F1(-n, -n-β; α+1; (x+1)/(x-1)) against the finite
/// Jacobi sum, exactly. With this argument the series reproduces P_n^(β,α).
pub fn check_hyp2f1_jacobi() -> VerificationReport {
    VerificationReport::timed("specfun.hyp2f1_jacobi", || {
        let one = BigRational::one();
        let mut bad = Vec::new();
        for n in 0..=6u32 {
            let ni = n as i64;
            let two_n = BigRational::from_integer(BigInt::one() << n as usize);
            for a in 0..=4i64 {
                for b in 0..=4i64 {
                    for (p, q) in [(1i64, 3i64), (-2, 5), (7, 2), (0, 1), (-3, 1)] {
                        let x = rat(p, q);
                        let g = match hyp2f1_terminating_exact(-ni, -ni - b, a + 1, &((&x + &one) / (&x - &one))) {
                            Ok(g) => g,
                            Err(e) => {
                                bad.push(format!("2F1 n={n} a={a} b={b}: {e}"));
                                continue;
                            }
                        };
                        let form = binomial_exact(ni + a, n as u64) * pow_rat(&(&x - &one), n) * g / &two_n;
                        if jacobi_p_exact(n, b, a, &x).ok() != Some(form.clone()) {
                            bad.push(format!("n={n} a={a} b={b} x={x}: {form}"));
                        }
                    }
                }
            }
        }
        bad
    })
}

/// Multiplication theorem, left side to 40 terms against z/(z+t)·J₁(z+t)
/// for z ∈ [0.5, 5], |t| ≤ 1.
pub fn check_bessel_multiplication() -> VerificationReport {
    VerificationReport::timed("specfun.bessel_multiplication", || {
        let p = EvalPolicy::default();
        let mut bad = Vec::new();
        for zi in 1..=10 {
            let z = zi as f64 * 0.5;
            for ti in -4..=4 {
                let t = ti as f64 * 0.25;
                let s = z + t;
                // J₁ is odd; at s = 0 the right side tends to z/2
                let rhs = if s == 0.0 {
                    z / 2.0
                } else {
                    match bessel_j(1, s.abs(), &p) {
                        Ok(j) => z / s * j * s.signum(),
                        Err(e) => {
                            bad.push(format!("J_1({s}): {e}"));
                            continue;
                        }
                    }
                };
                match bessel_multiplication_lhs(z, t, 40, &p) {
                    Ok(lhs) if (lhs - rhs).abs() <= 1e-9 => {}
                    Ok(lhs) => bad.push(format!("z={z} t={t}: {lhs} vs {rhs}")),
                    Err(e) => bad.push(format!("z={z} t={t}: {e}")),
                }
            }
        }
        bad
    })
}

/// Every specfun check.
pub fn verify_specfun() -> Vec<VerificationReport> {
    vec![
        check_bessel_series(),
        check_bessel_derivative_identity(),
        check_jacobi_endpoints(),
        check_hyp2f1_jacobi(),
        check_bessel_multiplication(),
    ]
}
