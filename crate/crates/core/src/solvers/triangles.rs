use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::assignment::ContextualAssignment;
use super::cval::cval_of;
use crate::error::{Error, Result};
use crate::graphs::dual_polar::{half_eigenvalue, valency};
use crate::lattice::counting::{count_level, item_four_check, question_count_q};
use crate::lattice::{MaximalSystem, PairTable};
#[allow(unused_imports)]
use num_traits::Float;

/// Exact `Δ(G_w)` and `λ(G_w)` from the dual polar closed forms.
pub fn gw_parameters(n: usize) -> Result<(f64, f64)> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddQubitCount(n));
    }
    let m = (n - 1) as u32;
    let delta = valency(m, (n / 2) as u32).to_f64().unwrap_or(f64::NAN);
    let lambda = half_eigenvalue(m)?.magnitude().to_f64().unwrap_or(f64::NAN);
    Ok((delta, lambda))
}

/// Contradiction triangles `(w, x, y)`: `d(x, y) = n/2`, `w ≤ x ∩ y`, and
/// `f(x)`, `f(y)` disagree at `w`. Pairs are ordered.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleReport {
    pub n: usize,
    pub total: u64,
    /// `T_w` for every direction.
    pub per_direction: Vec<u64>,
    pub inconsistent_pairs: u64,
    pub q: u64,
    /// `L_f`: the share of question pairs on which `f` is inconsistent.
    pub loss: f64,
    /// Every inconsistent pair disagrees on exactly `2^{n/2 − 1}` directions.
    pub disagreement_identity: bool,
    /// `L_f · Q · 2^{n/2 − 1}`.
    pub aggregate_lower: f64,
    pub aggregate_holds: bool,
    /// `2|V(G_w)|(Δ m_w(1 − m_w) + λ√(m_w(1 − m_w)))`.
    pub per_direction_upper: Vec<f64>,
    pub per_direction_holds: bool,
}

pub fn contradiction_triangles(system: &MaximalSystem, pairs: &PairTable, f: &ContextualAssignment) -> Result<TriangleReport> {
    let n = system.n();
    let (delta, lambda) = gw_parameters(n)?;
    if pairs.shared() != (1 << (n / 2)) - 1 {
        return Err(Error::InvalidArgument("pair table is not at distance n/2".into()));
    }
    let mut per_direction = vec![0u64; system.direction_count()];
    let mut inconsistent_pairs = 0u64;
    let mut identity = true;
    let expected = 1u64 << (n / 2 - 1);
    for (p, &(x, y)) in pairs.pairs.iter().enumerate() {
        let (x, y) = (x as usize, y as usize);
        let vx = system.value_bits(x, usize::from(f.get(x)));
        let vy = system.value_bits(y, usize::from(f.get(y)));
        let mut disagree = 0u64;
        for &(i, j) in pairs.common(p) {
            if (vx >> i & 1) != (vy >> j & 1) {
                disagree += 1;
                per_direction[system.contained(x)[usize::from(i)] as usize] += 1;
            }
        }
        if disagree > 0 {
            inconsistent_pairs += 1;
            identity &= disagree == expected;
        }
    }
    let total: u64 = per_direction.iter().sum();
    let q = pairs.len() as u64;
    let loss = inconsistent_pairs as f64 / q as f64;
    let aggregate_lower = loss * q as f64 * expected as f64;
    let ev = cval_of(system, f)?;
    let v = f64::from(ev.fiber);
    let per_direction_upper: Vec<f64> = (0..system.direction_count())
        .map(|d| {
            let (a, b) = ev.counts[d];
            let mm = f64::from(a) * f64::from(b) / (v * v);
            2.0 * v * (delta * mm + lambda * mm.sqrt())
        })
        .collect();
    let per_direction_holds = per_direction.iter().zip(&per_direction_upper).all(|(&t, &u)| t as f64 <= u + 1e-9 * u.max(1.0));
    Ok(TriangleReport {
        n,
        total,
        per_direction,
        inconsistent_pairs,
        q,
        loss,
        disagreement_identity: identity,
        aggregate_lower,
        aggregate_holds: total as f64 + 1e-9 >= aggregate_lower,
        per_direction_upper,
        per_direction_holds,
    })
}

/// The chain `Cval(f) ≥ F·L_f − λ/(2Δ) ≥ F(1 − V) − λ/(2Δ) ≥ (1 − V)/4 − λ/(2Δ)`
/// with `F = Q·2^{n/2−1} / (2|ℒⁿ_n|(2ⁿ − 1)Δ)` and `V` an upper bound on
/// `Val_syn(Z_{n/2})`.
#[derive(Clone, Debug, PartialEq)]
pub struct CvalChain {
    pub n: usize,
    pub q: f64,
    pub maximal: f64,
    pub delta: f64,
    pub lambda: f64,
    pub factor: f64,
    /// `F ≥ 1/4`, needed for the last step.
    pub factor_at_least_quarter: bool,
    /// The counting-lemma ratio is at least `2^{n/2}` with the degree of `G_w`.
    pub item_four_holds: bool,
    pub val_syn_upper: f64,
    /// `F(1 − V) − λ/(2Δ)`.
    pub lemma_value: f64,
    /// `(1 − V)/4 − λ/(2Δ)`.
    pub prop_value: f64,
    pub cval_certificate: f64,
    pub holds: bool,
}

pub fn cval_lower_chain(n: usize, val_syn_upper: f64, cval_certificate: f64) -> Result<CvalChain> {
    let (delta, lambda) = gw_parameters(n)?;
    let q = question_count_q(n as u64)?.to_f64().unwrap_or(f64::NAN);
    let maximal = count_level(n as u64, n as u64)?.to_f64().unwrap_or(f64::NAN);
    let h = (n / 2) as i32;
    let factor = q * 2f64.powi(h - 1) / (2.0 * maximal * (2f64.powi(n as i32) - 1.0) * delta);
    let item_four_holds = item_four_check(n as u64)?.holds_for_degree();
    let lemma_value = factor * (1.0 - val_syn_upper) - lambda / (2.0 * delta);
    let prop_value = (1.0 - val_syn_upper) / 4.0 - lambda / (2.0 * delta);
    let factor_at_least_quarter = factor >= 0.25 - 1e-15;
    let holds = factor_at_least_quarter && cval_certificate + 1e-12 >= lemma_value && lemma_value + 1e-12 >= prop_value;
    Ok(CvalChain {
        n,
        q,
        maximal,
        delta,
        lambda,
        factor,
        factor_at_least_quarter,
        item_four_holds,
        val_syn_upper,
        lemma_value,
        prop_value,
        cval_certificate,
        holds,
    })
}

/// Per-assignment form of the lemma: `Cval(f) ≥ F·L_f − λ/(2Δ)`.
pub fn lemma_bound_for(n: usize, loss: f64) -> Result<f64> {
    let chain = cval_lower_chain(n, 1.0 - loss, 0.0)?;
    Ok(chain.lemma_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_qubit_triangles() {
        let sys = MaximalSystem::new(2).unwrap();
        let pairs = sys.pairs_at_distance(1).unwrap();
        assert_eq!(gw_parameters(2).unwrap(), (2.0, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = ContextualAssignment::random(&sys, &mut rng);
            let t = contradiction_triangles(&sys, &pairs, &f).unwrap();
            assert_eq!(t.total, t.inconsistent_pairs);
            assert!(t.disagreement_identity && t.aggregate_holds && t.per_direction_holds);
            let cv = cval_of(&sys, &f).unwrap().value_f64();
            assert!(cv + 1e-12 >= lemma_bound_for(2, t.loss).unwrap());
        }
    }

    #[test]
    fn chain_factor() {
        let c = cval_lower_chain(2, 0.9, 0.0).unwrap();
        assert!((c.factor - 0.5).abs() < 1e-15);
        assert!(c.prop_value <= 0.0);
        let c4 = cval_lower_chain(4, 1.0, 0.0).unwrap();
        assert!((c4.factor - 1.0 / 3.0).abs() < 1e-12);
        assert!(c4.item_four_holds);
    }
}
