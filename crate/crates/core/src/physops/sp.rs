use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::symcore::Q;
use crate::verify::VerificationReport;

/// Sparse square matrix with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseQ {
    pub dim: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseQ {
    pub fn zero(dim: usize) -> Self {
        SparseQ { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SparseQ::zero(dim);
        for i in 0..dim {
            m.set(i, i, Q::from_integer(1.into()));
        }
        m
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    fn add_at(&mut self, i: usize, j: usize, v: &Q) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_scaled(&self, other: &SparseQ, c: &Q) -> SparseQ {
        let mut out = self.clone();
        for ((i, j), v) in &other.entries {
            out.add_at(*i, *j, &(v * c));
        }
        out
    }

    pub fn scale(&self, c: &Q) -> SparseQ {
        SparseQ::zero(self.dim).add_scaled(self, c)
    }

    pub fn transpose(&self) -> SparseQ {
        let mut out = SparseQ::zero(self.dim);
        for ((i, j), v) in &self.entries {
            out.set(*j, *i, v.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparseQ) -> SparseQ {
        let mut rows: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
        for ((k, j), v) in &other.entries {
            rows.entry(*k).or_default().push((*j, v));
        }
        let mut out = SparseQ::zero(self.dim);
        for ((i, k), a) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (j, b) in row {
                    out.add_at(*i, *j, &(a * *b));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &SparseQ) -> SparseQ {
        self.mul(other).add_scaled(&other.mul(self), &Q::from_integer((-1).into()))
    }

    /// Bilinear trace form Sp(A B) = Σ A_ij B_ji.
    pub fn trace_form(&self, other: &SparseQ) -> Q {
        let mut acc = Q::zero();
        for ((i, j), a) in &self.entries {
            if let Some(b) = other.entries.get(&(*j, *i)) {
                acc += a * b;
            }
        }
        acc
    }

    pub fn to_dense_f64(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.dim]; self.dim];
        for ((i, j), v) in &self.entries {
            d[*i][*j] = v.to_f64().unwrap_or(f64::NAN);
        }
        d
    }
}

/// Block form E = [[0, I], [-I, 0]] as a sparse matrix.
pub fn e_matrix(n: usize) -> SparseQ {
    let mut e = SparseQ::zero(2 * n);
    for a in 0..n {
        e.set(a, a + n, Q::from_integer(1.into()));
        e.set(a + n, a, Q::from_integer((-1).into()));
    }
    e
}

/// Basis element γ = √w · β with β exact and Sp(γγ) = c.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisElement {
    pub beta: SparseQ,
    pub weight: Q,
}

impl BasisElement {
    /// √w as a complex number (imaginary when w < 0).
    pub fn sqrt_weight(&self) -> Complex<f64> {
        let w = self.weight.to_f64().unwrap_or(f64::NAN);
        if w >= 0.0 {
            Complex::new(w.sqrt(), 0.0)
        } else {
            Complex::new(0.0, (-w).sqrt())
        }
    }

    /// Normalized γ as a dense complex matrix.
    pub fn normalized(&self) -> Vec<Vec<Complex<f64>>> {
        let s = self.sqrt_weight();
        self.beta.to_dense_f64().into_iter().map(|row| row.into_iter().map(|x| s * x).collect()).collect()
    }
}

/// Orthonormal basis of sp(n, ℂ) under the bilinear trace form.
#[derive(Debug, Clone, PartialEq)]
pub struct SpBasis {
    pub n: usize,
    pub c: Q,
    pub elements: Vec<BasisElement>,
}

impl SpBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The normalized matrices γ_k.
    pub fn matrices(&self) -> Vec<Vec<Vec<Complex<f64>>>> {
        self.elements.iter().map(BasisElement::normalized).collect()
    }
}

fn unit_sym(dim: usize, a: usize, b: usize) -> SparseQ {
    let mut s = SparseQ::zero(dim);
    s.add_at(a, b, &Q::from_integer(1.into()));
    s.add_at(b, a, &Q::from_integer(1.into()));
    s
}

fn unit_antisym(dim: usize, a: usize, b: usize) -> SparseQ {
    let mut s = SparseQ::zero(dim);
    s.set(a, b, Q::from_integer(1.into()));
    s.set(b, a, Q::from_integer((-1).into()));
    s
}

/// Gram–Schmidt under the bilinear form with pivoting: when every remaining
/// seed is null, a null seed is replaced by its sum with a partner it pairs
/// with nontrivially. Each output carries weight c / B(β, β).
pub fn gram_schmidt(seeds: Vec<SparseQ>, c: &Q) -> Result<Vec<BasisElement>> {
    let mut done: Vec<BasisElement> = Vec::new();
    let mut pending: Vec<SparseQ> = seeds;
    while !pending.is_empty() {
        // project every pending seed against the accepted elements lazily
        let pick = pending.iter().position(|s| !s.trace_form(s).is_zero());
        let idx = match pick {
            Some(i) => i,
            None => {
                let mut fixed = None;
                'outer: for i in 0..pending.len() {
                    for j in 0..pending.len() {
                        if i != j && !pending[i].trace_form(&pending[j]).is_zero() {
                            fixed = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let (i, j) = fixed.ok_or(Error::DegenerateGram)?;
                pending[i] = pending[i].add_scaled(&pending[j], &Q::from_integer(1.into()));
                if pending[i].trace_form(&pending[i]).is_zero() {
                    return Err(Error::DegenerateGram);
                }
                i
            }
        };
        let beta = pending.remove(idx);
        let norm = beta.trace_form(&beta);
        for p in pending.iter_mut() {
            let coef = p.trace_form(&beta) / &norm;
            if !coef.is_zero() {
                *p = p.add_scaled(&beta, &-coef);
            }
        }
        pending.retain(|p| !p.is_zero());
        done.push(BasisElement { weight: c / &norm, beta });
    }
    Ok(done)
}

/// Builds the n(2n+1)-element basis {E S_ab} of sp(n, ℂ), orthonormalized to
/// Sp(γ_k γ_m) = ½ δ_km.
pub fn build_sp_basis(n: usize) -> Result<SpBasis> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidInput(format!("n must be in 1..=8, got {n}")));
    }
    let dim = 2 * n;
    let e = e_matrix(n);
    let mut seeds = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            seeds.push(e.mul(&unit_sym(dim, a, b)));
        }
    }
    let c = Q::new(1.into(), 2.into());
    let elements = gram_schmidt(seeds, &c)?;
    Ok(SpBasis { n, c, elements })
}

/// Complement of sp in gl(2n): γ₀ = √(c/2n)·I first, then the orthonormalized
/// symmetric class E·A with A antisymmetric. Together with the sp part these
/// are (2n)² elements.
pub fn symmetric_class(basis: &SpBasis) -> Result<Vec<BasisElement>> {
    let dim = 2 * basis.n;
    let e = e_matrix(basis.n);
    let mut seeds = vec![SparseQ::identity(dim)];
    for a in 0..dim {
        for b in a + 1..dim {
            seeds.push(e.mul(&unit_antisym(dim, a, b)));
        }
    }
    // remove the identity direction from the antisymmetric-class seeds
    let id = seeds[0].clone();
    let id_norm = id.trace_form(&id);
    for s in seeds.iter_mut().skip(1) {
        let coef = s.trace_form(&id) / &id_norm;
        if !coef.is_zero() {
            *s = s.add_scaled(&id, &-coef);
        }
    }
    let mut out = vec![BasisElement { weight: &basis.c / &id_norm, beta: id }];
    out.extend(gram_schmidt(seeds.into_iter().skip(1).filter(|s| !s.is_zero()).collect(), &basis.c)?);
    Ok(out)
}

/// Sp part followed by the symmetric class.
pub fn full_basis(basis: &SpBasis) -> Result<Vec<BasisElement>> {
    let mut all = basis.elements.clone();
    all.extend(symmetric_class(basis)?);
    Ok(all)
}

/// Σ_k w_k (β_k)_{ab}(β_k)_{cd} at one index tuple (0-based).
pub fn completeness_entry(elements: &[BasisElement], idx: [usize; 4]) -> Q {
    let [a, b, c, d] = idx;
    elements.iter().fold(Q::zero(), |acc, el| acc + &el.weight * el.beta.get(a, b) * el.beta.get(c, d))
}

/// Exact check of Σ_k (γ_k)_{αβ}(γ_k)_{γδ} = c δ_αδ δ_γβ over all (2n)⁴
/// tuples of the full basis.
pub fn verify_sp_completeness(basis: &SpBasis) -> VerificationReport {
    let id = format!("sp_completeness[n={}]", basis.n);
    let full = match full_basis(basis) {
        Ok(f) => f,
        Err(e) => return VerificationReport::failed(id, e.to_string()),
    };
    VerificationReport::timed(id, || {
        let dim = 2 * basis.n;
        let mut tensor: BTreeMap<[usize; 4], Q> = BTreeMap::new();
        for el in &full {
            for ((a, b), x) in el.beta.entries() {
                for ((c, d), y) in el.beta.entries() {
                    *tensor.entry([*a, *b, *c, *d]).or_insert_with(Q::zero) += &el.weight * x * y;
                }
            }
        }
        let mut residuals = Vec::new();
        if full.len() != dim * dim {
            residuals.push(format!("full basis has {} elements, expected {}", full.len(), dim * dim));
        }
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for d in 0..dim {
                        let got = tensor.get(&[a, b, c, d]).cloned().unwrap_or_else(Q::zero);
                        let want = if a == d && c == b { basis.c.clone() } else { Q::zero() };
                        if got != want {
                            residuals.push(format!("({},{},{},{}): {} != {}", a + 1, b + 1, c + 1, d + 1, got, want));
                        }
                    }
                }
            }
        }
        residuals
    })
}

/// Structural checks: count, γᵀE + Eγ = 0, and the orthonormality relations.
pub fn verify_sp_structure(basis: &SpBasis) -> VerificationReport {
    VerificationReport::timed(format!("sp_structure[n={}]", basis.n), || {
        let n = basis.n;
        let e = e_matrix(n);
        let mut residuals = Vec::new();
        if basis.len() != n * (2 * n + 1) {
            residuals.push(format!("{} elements, expected {}", basis.len(), n * (2 * n + 1)));
        }
        for (k, el) in basis.elements.iter().enumerate() {
            let anti = el.beta.transpose().mul(&e).add_scaled(&e.mul(&el.beta), &Q::from_integer(1.into()));
            if !anti.is_zero() {
                residuals.push(format!("element {k} violates γᵀE + Eγ = 0"));
            }
            for (m, other) in basis.elements.iter().enumerate().skip(k) {
                let b = el.beta.trace_form(&other.beta);
                let want = if k == m { &basis.c / &el.weight } else { Q::zero() };
                if b != want {
                    residuals.push(format!("Sp(γ{k} γ{m}) = {b}"));
                }
            }
        }
        residuals
    })
}

/// Brackets [β_i, β_j] re-expand in the basis with zero residual.
pub fn verify_sp_closure(basis: &SpBasis) -> VerificationReport {
    VerificationReport::timed(format!("sp_closure[n={}]", basis.n), || {
        let els = &basis.elements;
        let norms: Vec<Q> = els.iter().map(|e| e.beta.trace_form(&e.beta)).collect();
        let mut residuals = Vec::new();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                let br = els[i].beta.commutator(&els[j].beta);
                let mut rest = br.clone();
                for (k, el) in els.iter().enumerate() {
                    let coef = br.trace_form(&el.beta) / &norms[k];
                    if !coef.is_zero() {
                        rest = rest.add_scaled(&el.beta, &-coef);
                    }
                }
                if !rest.is_zero() {
                    let size = rest.entries().values().map(|v| v.abs()).max().unwrap_or_else(Q::zero);
                    residuals.push(format!("[β{i}, β{j}] leaves residual of size {size}"));
                }
            }
        }
        residuals
    })
}
