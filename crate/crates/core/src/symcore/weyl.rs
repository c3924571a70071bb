use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::coeff::Scalar;
use crate::error::{Error, Result};

/// Longest word accepted by the normal-ordering engine.
pub const MAX_WORD_LEN: usize = 8;

/// Word of 0-based generator indices.
pub type WeylWord = Vec<u16>;

/// Block symplectic form E = [[0, I_n], [-I_n, 0]].
pub fn symplectic_e(n: usize) -> Vec<Vec<i64>> {
    let mut e = vec![vec![0i64; 2 * n]; 2 * n];
    for a in 0..n {
        e[a][a + n] = 1;
        e[a + n][a] = -1;
    }
    e
}

fn e_entry(n: usize, a: u16, b: u16) -> i64 {
    let (a, b) = (a as usize, b as usize);
    if b == a + n {
        1
    } else if a == b + n {
        -1
    } else {
        0
    }
}

/// Normal-ordered element of the Weyl algebra [φ_a, φ_b] = Λ E_ab; each
/// key is a non-decreasing word and a power of the central symbol Λ.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylExpr<S> {
    n: usize,
    terms: BTreeMap<(WeylWord, u32), S>,
}

impl<S: Scalar> WeylExpr<S> {
    pub fn zero(n: usize) -> Self {
        WeylExpr { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(WeylWord, u32), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, word: WeylWord, lpow: u32, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (word, lpow);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Coefficient of Λ^lpow in the scalar part.
    pub fn scalar_coefficient(&self, lpow: u32) -> S {
        self.terms.get(&(Vec::new(), lpow)).cloned().unwrap_or_else(S::zero)
    }

    /// Terms carrying at least one generator.
    pub fn non_scalar_terms(&self) -> Vec<(&WeylWord, u32, &S)> {
        self.terms.iter().filter(|((w, _), _)| !w.is_empty()).map(|((w, p), c)| (w, *p, c)).collect()
    }

    /// True when only the empty word survives.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|(w, _)| w.is_empty())
    }

    pub fn add(&self, other: &WeylExpr<S>) -> WeylExpr<S> {
        let mut out = self.clone();
        for ((w, p), c) in &other.terms {
            out.insert(w.clone(), *p, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> WeylExpr<S> {
        let mut out = WeylExpr::zero(self.n);
        for ((w, p), v) in &self.terms {
            out.insert(w.clone(), *p, v.clone() * c.clone());
        }
        out
    }

    /// Product, re-normalized.
    pub fn mul(&self, other: &WeylExpr<S>) -> Result<WeylExpr<S>> {
        let mut raw = Vec::new();
        for ((wa, pa), ca) in &self.terms {
            for ((wb, pb), cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                raw.push((ca.clone() * cb.clone(), w, pa + pb));
            }
        }
        normal_order_powered(self.n, raw)
    }

    /// Terms rendered as strings with generators numbered from 1.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|((w, p), c)| {
                let gens: Vec<String> = w.iter().map(|g| format!("φ{}", g + 1)).collect();
                let word = if gens.is_empty() { "1".to_string() } else { gens.join("") };
                format!("{c:?}·Λ^{p}·{word}")
            })
            .collect()
    }
}

impl<S: Scalar> fmt::Display for WeylExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.term_strings().join(" + "))
        }
    }
}

fn check_words<S>(n: usize, words: &[(S, WeylWord, u32)]) -> Result<()> {
    for (_, w, _) in words {
        if w.len() > MAX_WORD_LEN {
            return Err(Error::DegreeCapExceeded { degree: w.len() as u32, cap: MAX_WORD_LEN as u32 });
        }
        if let Some(g) = w.iter().find(|g| **g as usize >= 2 * n) {
            return Err(Error::InvalidInput(format!("generator index {} outside 1..={}", g + 1, 2 * n)));
        }
    }
    Ok(())
}

// Normal form of a bare word with unit coefficient; integer coefficients.
fn word_normal_form(n: usize, word: &[u16]) -> Vec<(i64, WeylWord, u32)> {
    let mut out: BTreeMap<(WeylWord, u32), i64> = BTreeMap::new();
    let mut stack: Vec<(i64, WeylWord, u32)> = vec![(1, word.to_vec(), 0)];
    while let Some((c, w, p)) = stack.pop() {
        match (0..w.len().saturating_sub(1)).find(|&j| w[j] > w[j + 1]) {
            None => *out.entry((w, p)).or_insert(0) += c,
            Some(j) => {
                let e = e_entry(n, w[j], w[j + 1]);
                if e != 0 {
                    let mut shorter = w.clone();
                    shorter.drain(j..j + 2);
                    stack.push((c * e, shorter, p + 1));
                }
                let mut swapped = w;
                swapped.swap(j, j + 1);
                stack.push((c, swapped, p));
            }
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).map(|((w, p), c)| (c, w, p)).collect()
}

fn normal_order_powered<S: Scalar>(n: usize, words: Vec<(S, WeylWord, u32)>) -> Result<WeylExpr<S>> {
    check_words(n, &words)?;
    let mut cache: HashMap<WeylWord, Vec<(i64, WeylWord, u32)>> = HashMap::new();
    let mut out = WeylExpr::zero(n);
    for (c, w, p) in words {
        if c.is_zero() {
            continue;
        }
        let nf = cache.entry(w.clone()).or_insert_with(|| word_normal_form(n, &w));
        for (k, wn, pn) in nf.iter() {
            out.insert(wn.clone(), p + pn, c.clone() * S::from_int(*k));
        }
    }
    Ok(out)
}

/// Normal-orders a sum of generator words by adjacent transpositions
/// φ_b φ_a = φ_a φ_b + Λ E_ba.
pub fn normal_order<S: Scalar>(n: usize, words: Vec<(S, WeylWord)>) -> Result<WeylExpr<S>> {
    normal_order_powered(n, words.into_iter().map(|(c, w)| (c, w, 0)).collect())
}

/// As [`normal_order`], with `choose` picking which descent to swap next
/// from the list of candidate positions.
pub fn normal_order_by<S: Scalar, F: FnMut(&[usize]) -> usize>(
    n: usize,
    words: Vec<(S, WeylWord)>,
    mut choose: F,
) -> Result<WeylExpr<S>> {
    let powered: Vec<(S, WeylWord, u32)> = words.into_iter().map(|(c, w)| (c, w, 0)).collect();
    check_words(n, &powered)?;
    let mut out = WeylExpr::zero(n);
    let mut stack = powered;
    while let Some((c, w, p)) = stack.pop() {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&j| w[j] > w[j + 1]).collect();
        if descents.is_empty() {
            out.insert(w, p, c);
            continue;
        }
        let j = descents[choose(&descents) % descents.len()];
        let e = e_entry(n, w[j], w[j + 1]);
        if e != 0 {
            let mut shorter = w.clone();
            shorter.drain(j..j + 2);
            stack.push((c.clone() * S::from_int(e), shorter, p + 1));
        }
        let mut swapped = w;
        swapped.swap(j, j + 1);
        stack.push((c, swapped, p));
    }
    Ok(out)
}
