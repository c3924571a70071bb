//! Mass spectrum: eigenvalues F⁰, the two Bopp branches, the statistical
//! dispersion law, virton masses and the eight hadron families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Heisenberg-algebra model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    H8,
    H16,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::H8 => "h8",
            Model::H16 => "h16",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h8" => Ok(Model::H8),
            "h16" => Ok(Model::H16),
            other => Err(Error::InvalidInput(format!("unknown model {other:?}"))),
        }
    }
}

/// Multiplet label. Half-integers are stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    #[serde(rename = "F")]
    pub f: i32,
    #[serde(rename = "N")]
    pub n: i32,
    #[serde(rename = "Y")]
    pub y: i32,
    pub two_i: i32,
    pub two_i3: i32,
    pub two_s: Option<i32>,
    pub synthetic: bool,
}

impl QuantumNumbers {
    /// Multiplet with i3 = i.
    pub fn new(f: i32, n: i32, y: i32, two_i: i32) -> Self {
        QuantumNumbers { f, n, y, two_i, two_i3: two_i, two_s: None, synthetic: false }
    }

    pub fn with_i3(mut self, two_i3: i32) -> Self {
        self.two_i3 = two_i3;
        self
    }

    pub fn with_spin(mut self, two_s: i32) -> Self {
        self.two_s = Some(two_s);
        self
    }

    /// Marks a calibration-only point such as (N = -1, i = -1/2).
    pub fn synthetic(mut self) -> Self {
        self.synthetic = true;
        self
    }

    pub fn i(&self) -> f64 {
        self.two_i as f64 / 2.0
    }

    pub fn i3(&self) -> f64 {
        self.two_i3 as f64 / 2.0
    }

    /// 2 i0 = Y.
    pub fn two_i0(&self) -> i32 {
        self.y
    }

    /// 2 i1 = N + 2.
    pub fn two_i1(&self) -> i32 {
        self.n + 2
    }

    pub fn strangeness(&self) -> i32 {
        self.y - self.f
    }

    /// 4 i (i + 1), an integer.
    pub fn casimir4(&self) -> i64 {
        (self.two_i as i64) * (self.two_i as i64 + 2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.f != 0 && self.f != 1 {
            return Err(Error::InvalidInput(format!("F must be 0 or 1, got {}", self.f)));
        }
        if self.n < -1 {
            return Err(Error::InvalidInput(format!("N must be >= -1, got {}", self.n)));
        }
        if self.two_i < -1 {
            return Err(Error::InvalidInput(format!("i must be >= -1/2, got {}", self.i())));
        }
        if self.two_i3.abs() > self.two_i.abs() || (self.two_i - self.two_i3) % 2 != 0 {
            return Err(Error::InvalidInput(format!("bad projection i3 = {} for i = {}", self.i3(), self.i())));
        }
        let calibration_only = self.n < 0 || self.two_i < 0;
        let physical = !calibration_only && self.two_i0() <= self.two_i && self.two_i <= self.two_i1() - 2;
        if !physical && !self.synthetic {
            return Err(Error::InvalidInput(format!(
                "weights need i0 <= i <= i1 - 1 (i0 = {}, i = {}, i1 = {}); mark the point synthetic to override",
                self.two_i0() as f64 / 2.0,
                self.i(),
                self.two_i1() as f64 / 2.0
            )));
        }
        Ok(())
    }
}

/// Eigenvalue F⁰ of the mass-squared operator on the skeleton.
pub fn f0_sigma(model: Model, qn: &QuantumNumbers) -> i64 {
    let n = qn.n as i64;
    match model {
        Model::H8 => -((n + 4) * (n + 4) - (qn.y as i64) * (qn.y as i64)),
        Model::H16 => -((n + 5) * (n + 5) + 7 - qn.casimir4()),
    }
}

/// (c1, G) of the branch discriminant μ⁴ - 2μ²(N + c1) + G.
fn branch_constants(model: Model, qn: &QuantumNumbers) -> (f64, f64) {
    let n = qn.n as f64;
    match model {
        Model::H8 => (5.0, (qn.y as f64).powi(2) + 2.0 * n + 9.0),
        Model::H16 => (6.0, qn.casimir4() as f64 + 2.0 * n + 4.0),
    }
}

/// Both roots of the Bopp-factorized quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassSolution {
    pub m2_baryon: f64,
    pub m2_meson: f64,
    pub discriminant: f64,
    pub model: Model,
}

impl MassSolution {
    /// Branch selected by the fermion charge: baryon for F = 1, meson for F = 0.
    pub fn physical_m2(&self, f: i32) -> f64 {
        if f == 1 {
            self.m2_baryon
        } else {
            self.m2_meson
        }
    }

    pub fn physical_mass(&self, f: i32) -> Result<f64> {
        let m2 = self.physical_m2(f);
        if m2 < 0.0 {
            return Err(Error::NoPhysicalRoot);
        }
        Ok(m2.sqrt())
    }
}

fn check_mu2(mu2: f64) -> Result<()> {
    if !(mu2 > 0.0) || !mu2.is_finite() {
        return Err(Error::InvalidInput(format!("mu2 must be finite and > 0, got {mu2}")));
    }
    Ok(())
}

/// M²_{B,M} = 2μ²·scale·{(N + c1) - μ² ± √(μ⁴ - 2μ²(N + c1) + G)}.
pub fn mass_squared(model: Model, qn: &QuantumNumbers, mu2: f64, scale_gev2: f64) -> Result<MassSolution> {
    check_mu2(mu2)?;
    if !(scale_gev2 > 0.0) {
        return Err(Error::InvalidInput(format!("scale must be > 0, got {scale_gev2}")));
    }
    qn.validate()?;
    let (c1, g) = branch_constants(model, qn);
    let nc = qn.n as f64 + c1;
    let disc = mu2 * mu2 - 2.0 * mu2 * nc + g;
    if disc < 0.0 {
        return Err(Error::ComplexBranch { discriminant: disc });
    }
    let r = disc.sqrt();
    let pre = 2.0 * mu2 * scale_gev2;
    Ok(MassSolution { m2_baryon: pre * (nc - mu2 + r), m2_meson: pre * (nc - mu2 - r), discriminant: disc, model })
}

/// Second-space virton mass squared Λ²[(N+5)² + 7 - 4i(i+1)]; the X-space
/// value is its negative.
pub fn virton_mass_squared(qn: &QuantumNumbers, lambda2: u32) -> Result<f64> {
    if qn.f != 1 {
        return Err(Error::InvalidInput("virton masses are defined for fermions only".into()));
    }
    Ok(lambda2 as f64 * -(f0_sigma(Model::H16, qn) as f64))
}

/// M_Λ M_ω / (M_Σ M_ρ), equal to √(7/6) for every μ².
pub fn product_ratio_invariant(mu2: f64) -> Result<f64> {
    let m = |f: i32, two_i: i32| -> Result<f64> {
        let qn = QuantumNumbers::new(f, 2, 0, two_i);
        mass_squared(Model::H16, &qn, mu2, 1.0)?.physical_mass(f)
    };
    Ok(m(1, 0)? * m(0, 0)? / (m(1, 2)? * m(0, 2)?))
}

/// Occupation handling in the dispersion law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfMode {
    /// Self-consistent occupation 1/(exp(X/4μ²) - (-1)^F).
    Full,
    /// Boltzmann limit n_f = 0.
    Zero,
}

/// The statistical dispersion law D(X) = 0 in X = M².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionLaw {
    pub qn: QuantumNumbers,
    pub mu2: f64,
    pub model: Model,
    pub nf: NfMode,
    /// True for h16, where the law is extrapolated from h8.
    pub extrapolated: bool,
}

/// Roots of the dispersion law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionRoots {
    pub lower: f64,
    pub upper: f64,
    /// Root selected by F: the greater one for fermions.
    pub physical: f64,
    pub extrapolated: bool,
}

/// Rearrangement of D used to define the index sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rearrangement {
    QuadraticForm,
    CurveVsLine,
}

impl DispersionLaw {
    pub fn new(qn: QuantumNumbers, mu2: f64, model: Model, nf: NfMode) -> Result<Self> {
        check_mu2(mu2)?;
        qn.validate()?;
        Ok(DispersionLaw { qn, mu2, model, nf, extrapolated: model == Model::H16 })
    }

    fn s(&self) -> f64 {
        if self.qn.f % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Occupation n_f(X).
    pub fn occupation(&self, x: f64) -> f64 {
        match self.nf {
            NfMode::Zero => 0.0,
            NfMode::Full => 1.0 / ((x / (4.0 * self.mu2)).exp() - self.s()),
        }
    }

    fn shift(&self) -> f64 {
        self.qn.n as f64
            + match self.model {
                Model::H8 => 5.0,
                Model::H16 => 6.0,
            }
    }

    fn constant(&self) -> f64 {
        -4.0 * self.mu2 * self.mu2 * f0_sigma(self.model, &self.qn) as f64
    }

    // (A, B, C) with D = A X² + B X + C at fixed occupation n
    fn coefficients(&self, n: f64) -> (f64, f64, f64) {
        let s = self.s();
        let a = (1.0 + s * n) * (1.0 + 2.0 * s * n);
        let b = 4.0 * self.mu2 * (self.mu2 - self.shift() * (1.0 + s * n));
        (a, b, self.constant())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (a, b, c) = self.coefficients(self.occupation(x));
        a * x * x + b * x + c
    }

    /// dD/dX including the X dependence of n_f.
    pub fn derivative(&self, x: f64) -> f64 {
        let n = self.occupation(x);
        let s = self.s();
        let (a, b, _) = self.coefficients(n);
        let mut d = 2.0 * a * x + b;
        if self.nf == NfMode::Full {
            let dn = -n * (1.0 + s * n) / (4.0 * self.mu2);
            let da = 3.0 * s + 4.0 * n;
            let db = -4.0 * self.mu2 * self.shift() * s;
            d += (da * x * x + db * x) * dn;
        }
        d
    }

    fn magnitude(&self, x: f64) -> f64 {
        let (a, b, c) = self.coefficients(self.occupation(x));
        (a * x * x).abs() + (b * x).abs() + c.abs()
    }

    /// Boltzmann-limit closed form, the bracket seed.
    pub fn closed_form(&self) -> Result<MassSolution> {
        mass_squared(self.model, &self.qn, self.mu2, 1.0)
    }

    pub fn roots(&self) -> Result<DispersionRoots> {
        let seed = self.closed_form()?;
        let (xb, xm) = (seed.m2_baryon, seed.m2_meson);
        if xb <= 0.0 {
            return Err(Error::NoPhysicalRoot);
        }
        let vertex = 0.5 * (xb + xm);
        let upper = bisect(|x| self.eval(x), (0.5 * xb).max(vertex), 2.0 * xb)?;
        let lower = if xm > 0.0 { bisect(|x| self.eval(x), 0.5 * xm, (2.0 * xm).min(vertex))? } else { xm };
        if upper <= 0.0 && lower <= 0.0 {
            return Err(Error::NoPhysicalRoot);
        }
        let physical = if self.qn.f == 1 { upper } else { lower };
        Ok(DispersionRoots { lower, upper, physical, extrapolated: self.extrapolated })
    }
}

/// Both roots of the full dispersion law.
pub fn exact_dispersion_roots(qn: &QuantumNumbers, mu2: f64, model: Model) -> Result<DispersionRoots> {
    DispersionLaw::new(*qn, mu2, model, NfMode::Full)?.roots()
}

/// Dispersion-curve index sgn D' at a root, under the chosen rearrangement.
pub fn dispersion_index(law: &DispersionLaw, root: f64, rearrangement: Rearrangement) -> Result<i8> {
    let scale = law.magnitude(root).max(f64::MIN_POSITIVE);
    if law.eval(root).abs() > 1e-9 * scale {
        return Err(Error::InvalidInput(format!("{root} is not a root: D = {}", law.eval(root))));
    }
    let d = law.derivative(root);
    if d.abs() < 1e-12 {
        return Err(Error::DegenerateRoot(d.abs()));
    }
    let sign = if d > 0.0 { 1 } else { -1 };
    Ok(match rearrangement {
        Rearrangement::QuadraticForm => sign,
        Rearrangement::CurveVsLine => -sign,
    })
}

/// Bisection to machine precision on a sign-changing bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }
    let neg_at_lo = f_lo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The eight hadron families of the mass table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyName {
    N,
    Lambda,
    Sigma,
    Delta,
    Xi,
    Epsilon,
    Rho,
    KStar,
}

impl FamilyName {
    pub const ALL: [FamilyName; 8] = [
        FamilyName::N,
        FamilyName::Lambda,
        FamilyName::Sigma,
        FamilyName::Delta,
        FamilyName::Xi,
        FamilyName::Epsilon,
        FamilyName::Rho,
        FamilyName::KStar,
    ];

    /// ASCII label used in data files.
    pub fn label(self) -> &'static str {
        match self {
            FamilyName::N => "N",
            FamilyName::Lambda => "Lambda",
            FamilyName::Sigma => "Sigma",
            FamilyName::Delta => "Delta",
            FamilyName::Xi => "Xi",
            FamilyName::Epsilon => "epsilon",
            FamilyName::Rho => "rho",
            FamilyName::KStar => "Kstar",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FamilyName::N => "N",
            FamilyName::Lambda => "Λ",
            FamilyName::Sigma => "Σ",
            FamilyName::Delta => "Δ",
            FamilyName::Xi => "Ξ",
            FamilyName::Epsilon => "ε",
            FamilyName::Rho => "ρ",
            FamilyName::KStar => "K*",
        }
    }

    /// Accepts the ASCII label or the symbol.
    pub fn parse(s: &str) -> Option<FamilyName> {
        let t = s.trim();
        FamilyName::ALL.iter().copied().find(|f| f.label().eq_ignore_ascii_case(t) || f.symbol() == t).or(match t {
            "eps" => Some(FamilyName::Epsilon),
            "K*" | "Kst" => Some(FamilyName::KStar),
            _ => None,
        })
    }

    pub fn family(self) -> Family {
        let (f, two_i, y, n_offset) = match self {
            FamilyName::N => (1, 1, 1, 1),
            FamilyName::Lambda => (1, 0, 0, 2),
            FamilyName::Sigma => (1, 2, 0, 2),
            FamilyName::Delta => (1, 3, 1, 3),
            FamilyName::Xi => (1, 1, -1, 5),
            FamilyName::Epsilon => (0, 0, 0, 0),
            FamilyName::Rho => (0, 2, 0, 2),
            FamilyName::KStar => (0, 1, 1, 3),
        };
        Family { name: self, f, two_i, y, n_offset }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A family: fixed (F, i, Y) with N(n) = 2n + n_offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub name: FamilyName,
    #[serde(rename = "F")]
    pub f: i32,
    pub two_i: i32,
    #[serde(rename = "Y")]
    pub y: i32,
    pub n_offset: i32,
}

impl Family {
    pub fn all() -> Vec<Family> {
        FamilyName::ALL.iter().map(|n| n.family()).collect()
    }

    pub fn big_n(&self, n: u32) -> i32 {
        2 * n as i32 + self.n_offset
    }

    pub fn qn(&self, n: u32) -> QuantumNumbers {
        QuantumNumbers::new(self.f, self.big_n(n), self.y, self.two_i)
    }

    /// h16 mass in GeV with khc = 1 GeV.
    pub fn mass(&self, n: u32, mu2: f64) -> Result<f64> {
        mass_squared(Model::H16, &self.qn(n), mu2, 1.0)?.physical_mass(self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f0_examples() {
        assert_eq!(f0_sigma(Model::H8, &QuantumNumbers::new(0, 0, 0, 0)), -16);
        assert_eq!(f0_sigma(Model::H16, &QuantumNumbers::new(1, 1, 1, 1)), -40);
        assert_eq!(f0_sigma(Model::H8, &QuantumNumbers::new(0, 4, 4, 0)), -48);
    }

    #[test]
    fn mass_examples() {
        let nucleon = QuantumNumbers::new(1, 1, 1, 1);
        let m = mass_squared(Model::H16, &nucleon, 0.067, 1.0).unwrap();
        assert!((m.physical_mass(1).unwrap() - 1.144).abs() < 1e-3);
        let eps = QuantumNumbers::new(0, 0, 0, 0);
        let m = mass_squared(Model::H16, &eps, 0.065, 1.0).unwrap();
        assert!((m.physical_mass(0).unwrap() - 0.734).abs() < 2e-3);
        let xi = QuantumNumbers::new(1, 5, -1, 1);
        let m = mass_squared(Model::H16, &xi, 0.065, 1.0).unwrap();
        assert!((m.physical_mass(1).unwrap() - 1.391).abs() < 2e-3);
    }

    #[test]
    fn complex_branch() {
        let qn = QuantumNumbers::new(1, 1, 1, 1);
        assert!(matches!(mass_squared(Model::H16, &qn, 5.0, 1.0), Err(Error::ComplexBranch { .. })));
    }

    #[test]
    fn virton_examples() {
        let qn = QuantumNumbers::new(1, 1, 1, 1);
        assert_eq!(virton_mass_squared(&qn, 136).unwrap(), 5440.0);
        let syn = QuantumNumbers::new(1, -1, -1, -1).with_i3(-1).synthetic();
        assert_eq!(virton_mass_squared(&syn, 136).unwrap(), 3264.0);
        assert_eq!(virton_mass_squared(&qn, 1).unwrap(), -(f0_sigma(Model::H16, &qn) as f64));
        assert!(virton_mass_squared(&QuantumNumbers::new(0, 0, 0, 0), 136).is_err());
    }

    #[test]
    fn ratio_invariant() {
        let r = (7.0f64 / 6.0).sqrt();
        for mu2 in [0.065, 0.3, 0.067] {
            assert!((product_ratio_invariant(mu2).unwrap() - r).abs() < 1e-10);
        }
    }

    #[test]
    fn synthetic_point_requires_flag() {
        let qn = QuantumNumbers::new(1, -1, -1, -1).with_i3(-1);
        assert!(qn.validate().is_err());
        assert!(qn.synthetic().validate().is_ok());
    }

    #[test]
    fn boltzmann_reduction_matches_closed_form() {
        let qn = QuantumNumbers::new(1, 1, 1, 1);
        let law = DispersionLaw::new(qn, 0.067, Model::H8, NfMode::Zero).unwrap();
        let r = law.roots().unwrap();
        let mu2: f64 = 0.067;
        let closed = 2.0 * mu2 * (6.0 - mu2 + (mu2 * mu2 - 12.0 * mu2 + 12.0).sqrt());
        assert!((r.upper - closed).abs() / closed < 1e-12);
    }

    #[test]
    fn full_occupation_roots() {
        let qn = QuantumNumbers::new(1, 1, 1, 1);
        let fermion = exact_dispersion_roots(&qn, 0.067, Model::H8).unwrap();
        let closed = mass_squared(Model::H8, &qn, 0.067, 1.0).unwrap().m2_baryon;
        assert!((fermion.physical - closed).abs() / closed < 0.05);
        let boson = exact_dispersion_roots(&QuantumNumbers { f: 0, ..qn }, 0.067, Model::H8).unwrap();
        assert!(fermion.physical > boson.physical);
        assert!(!fermion.extrapolated);
    }

    #[test]
    fn index_signs() {
        let qn = QuantumNumbers::new(1, 1, 1, 1);
        for nf in [NfMode::Zero, NfMode::Full] {
            let law = DispersionLaw::new(qn, 0.067, Model::H8, nf).unwrap();
            let r = law.roots().unwrap();
            assert_eq!(dispersion_index(&law, r.upper, Rearrangement::QuadraticForm).unwrap(), 1);
            assert_eq!(dispersion_index(&law, r.lower, Rearrangement::QuadraticForm).unwrap(), -1);
            assert_eq!(dispersion_index(&law, r.upper, Rearrangement::CurveVsLine).unwrap(), -1);
        }
    }

    #[test]
    fn double_root_is_degenerate() {
        let qn = QuantumNumbers::new(0, 0, 0, 0);
        let law = DispersionLaw::new(qn, 1.0, Model::H8, NfMode::Zero).unwrap();
        assert_eq!(law.closed_form().unwrap().discriminant, 0.0);
        assert!(matches!(dispersion_index(&law, 8.0, Rearrangement::QuadraticForm), Err(Error::DegenerateRoot(_))));
    }

    #[test]
    fn families_table() {
        let fams = Family::all();
        assert_eq!(fams.len(), 8);
        let delta = FamilyName::Delta.family();
        assert!((delta.mass(0, 0.065).unwrap() - 1.340).abs() < 2e-3);
        assert_eq!(FamilyName::parse("Ξ"), Some(FamilyName::Xi));
        assert_eq!(FamilyName::parse("kstar"), Some(FamilyName::KStar));
        assert_eq!(FamilyName::parse("Omega"), None);
    }
}
