use num_complex::Complex;

use crate::verify::VerificationReport;

type G = Complex<i64>;

/// The three 2×2 completeness relations checked entrywise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletenessRelation {
    /// Σ_μ (σ⁺_μ)_{ab}(σ⁻_μ)_{cd} = 2 δ_ad δ_bc.
    SigmaPlusMinus,
    /// Σ_a (τ⁺_a)_{km}(τ⁻_a)_{np} = 2 δ_kp δ_nm.
    TauPlusMinus,
    /// Σ_a (τ⁺_a)_{km}(τ⁺_a)_{np} = 2 τ_kn τ_pm, τ = [[0, 1], [-1, 0]].
    TauPlusPlus,
}

fn pauli_g(a: usize) -> [[G; 2]; 2] {
    let z = G::new(0, 0);
    let o = G::new(1, 0);
    let i = G::new(0, 1);
    match a {
        0 => [[z, o], [o, z]],
        1 => [[z, -i], [i, z]],
        2 => [[o, z], [z, -o]],
        _ => [[o, z], [z, o]],
    }
}

// Four-component matrices: (τ_1, τ_2, τ_3, ±1) with metric diag(1, 1, 1, -1).
fn four_vector(plus: bool, mu: usize) -> [[G; 2]; 2] {
    let m = pauli_g(mu);
    if mu == 3 && !plus {
        [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
    } else {
        m
    }
}

const METRIC: [i64; 4] = [1, 1, 1, -1];

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// Left side of a relation at 0-based indices.
pub fn completeness_lhs(rel: CompletenessRelation, idx: [usize; 4]) -> G {
    let [a, b, c, d] = idx;
    let second_plus = matches!(rel, CompletenessRelation::TauPlusPlus);
    (0..4)
        .map(|mu| four_vector(true, mu)[a][b] * four_vector(second_plus, mu)[c][d] * METRIC[mu])
        .fold(G::new(0, 0), |s, x| s + x)
}

/// Right side of a relation at 0-based indices.
pub fn completeness_rhs(rel: CompletenessRelation, idx: [usize; 4]) -> G {
    let [a, b, c, d] = idx;
    let eps = |x: usize, y: usize| -> i64 {
        match (x, y) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    };
    let v = match rel {
        CompletenessRelation::SigmaPlusMinus | CompletenessRelation::TauPlusMinus => 2 * delta(a, d) * delta(b, c),
        CompletenessRelation::TauPlusPlus => 2 * eps(a, c) * eps(d, b),
    };
    G::new(v, 0)
}

/// Checks all three relations over every index tuple.
pub fn sigma_tau_completeness() -> VerificationReport {
    VerificationReport::timed("sigma_tau_completeness", || {
        let mut residuals = Vec::new();
        for rel in [
            CompletenessRelation::SigmaPlusMinus,
            CompletenessRelation::TauPlusMinus,
            CompletenessRelation::TauPlusPlus,
        ] {
            for t in 0..16usize {
                let idx = [t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1];
                let (l, r) = (completeness_lhs(rel, idx), completeness_rhs(rel, idx));
                if l != r {
                    residuals.push(format!("{rel:?} at {idx:?}: {l} != {r}"));
                }
            }
        }
        residuals
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(completeness_lhs(CompletenessRelation::SigmaPlusMinus, [0, 0, 0, 0]), G::new(2, 0));
        assert_eq!(completeness_lhs(CompletenessRelation::TauPlusMinus, [0, 1, 1, 0]), G::new(2, 0));
        assert_eq!(completeness_lhs(CompletenessRelation::TauPlusPlus, [0, 0, 0, 0]), G::new(0, 0));
    }

    #[test]
    fn all_relations_hold() {
        let r = sigma_tau_completeness();
        assert!(r.passed, "{:?}", r.residual_terms);
    }
}
