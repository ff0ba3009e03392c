use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;

use super::assignment::{Certificate, ContextualAssignment, SolveReport};
use crate::error::{Error, Result};
use crate::lattice::MaximalSystem;

/// Per-direction outcome statistics of a contextual assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvalEvaluation {
    /// `(c₀, c₁)`: measurements above `w` whose outcome takes value 0 / 1 at `w`.
    pub counts: Vec<(u32, u32)>,
    /// `|M_w|`, the same for every direction.
    pub fiber: u32,
    /// `E_w[m_w(1 − m_w)] = Σ_w c₀c₁ / (|M_w|² · |ℒⁿ_1|)`.
    pub value: Ratio<u64>,
}

impl CvalEvaluation {
    /// `Cval(f, w) = m_w(1 − m_w) = c₀c₁/|M_w|²`.
    pub fn per_direction(&self, d: usize) -> Ratio<u64> {
        let (a, b) = self.counts[d];
        Ratio::new(u64::from(a) * u64::from(b), u64::from(self.fiber) * u64::from(self.fiber))
    }

    /// `m_w`, the minority share (`1/2` on an exact tie).
    pub fn minority(&self, d: usize) -> Ratio<u64> {
        let (a, b) = self.counts[d];
        Ratio::new(u64::from(a.min(b)), u64::from(self.fiber))
    }

    pub fn value_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

fn fiber(system: &MaximalSystem) -> u32 {
    system.above(0).len() as u32
}

pub fn cval_of(system: &MaximalSystem, f: &ContextualAssignment) -> Result<CvalEvaluation> {
    if f.len() != system.len() {
        return Err(Error::DimensionMismatch { left: f.len(), right: system.len() });
    }
    let mut counts = vec![(0u32, 0u32); system.direction_count()];
    for x in 0..system.len() {
        let bits = system.value_bits(x, usize::from(f.get(x)));
        for (j, &d) in system.contained(x).iter().enumerate() {
            if bits >> j & 1 == 1 {
                counts[d as usize].1 += 1;
            } else {
                counts[d as usize].0 += 1;
            }
        }
    }
    let m = u64::from(fiber(system));
    let num: u64 = counts.iter().map(|&(a, b)| u64::from(a) * u64::from(b)).sum();
    let value = Ratio::new(num, m * m * counts.len() as u64);
    Ok(CvalEvaluation { counts, fiber: m as u32, value })
}

struct CvalSearch<'a> {
    system: &'a MaximalSystem,
    c0: Vec<u32>,
    c1: Vec<u32>,
    rem: Vec<u32>,
    current: Vec<u16>,
    best: Vec<u16>,
    best_cost: u64,
    nodes: u64,
    budget: u64,
    aborted: bool,
    open_bound: u64,
}

impl CvalSearch<'_> {
    fn bound(&self) -> u64 {
        (0..self.c0.len())
            .map(|d| {
                let (a, b, r) = (u64::from(self.c0[d]), u64::from(self.c1[d]), u64::from(self.rem[d]));
                ((a + r) * b).min(a * (b + r))
            })
            .sum()
    }

    fn apply(&mut self, x: usize, o: usize, sign: bool) {
        let bits = self.system.value_bits(x, o);
        for (j, &d) in self.system.contained(x).iter().enumerate() {
            let d = d as usize;
            let slot = if bits >> j & 1 == 1 { &mut self.c1[d] } else { &mut self.c0[d] };
            if sign {
                *slot += 1;
                self.rem[d] -= 1;
            } else {
                *slot -= 1;
                self.rem[d] += 1;
            }
        }
    }

    fn go(&mut self, x: usize) {
        self.nodes += 1;
        let lb = self.bound();
        if lb >= self.best_cost {
            return;
        }
        if x == self.system.len() {
            self.best_cost = lb;
            self.best = self.current.clone();
            return;
        }
        if self.nodes >= self.budget {
            self.aborted = true;
            self.open_bound = self.open_bound.min(lb);
            return;
        }
        let choices: &[usize] = if x == 0 { &[0] } else { &[0, 1, 2, 3][..self.system.outcome_count().min(4)] };
        let mut order: Vec<(u64, usize)> = Vec::new();
        for &o in choices {
            self.apply(x, o, true);
            order.push((self.bound(), o));
            self.apply(x, o, false);
        }
        order.sort_unstable();
        for (_, o) in order {
            self.apply(x, o, true);
            self.current[x] = o as u16;
            self.go(x + 1);
            self.apply(x, o, false);
            if self.aborted {
                return;
            }
        }
    }
}

/// Exact `Cval(ℒ²) = min_f E_w[m_w(1 − m_w)]` by branch and bound over
/// contextual assignments, seeded with `incumbent`.
///
/// The bound on a partial assignment is `Σ_w min((c₀+r)c₁, c₀(c₁+r))`,
/// admissible because `(c₀+t)(c₁+r−t)` is concave in `t`. The first
/// measurement is fixed to outcome 0: adding a symplectic character
/// `v ↦ ⟨p, v⟩` to every outcome preserves all counts up to swapping
/// `c₀, c₁`, and such characters reach every outcome of one measurement.
pub fn cval_exact(system: &MaximalSystem, budget: u64, incumbent: Option<&ContextualAssignment>) -> Result<SolveReport> {
    if system.n() > 2 {
        return Err(Error::Capacity { what: "qubits for exact Cval", value: system.n() as u64, limit: 2 });
    }
    let dirs = system.direction_count();
    let start = match incumbent {
        Some(f) => f.clone(),
        None => ContextualAssignment::constant(system, 0)?,
    };
    let start_eval = cval_of(system, &start)?;
    let start_cost: u64 = start_eval.counts.iter().map(|&(a, b)| u64::from(a) * u64::from(b)).sum();
    let m = u64::from(fiber(system));
    let mut s = CvalSearch {
        system,
        c0: vec![0; dirs],
        c1: vec![0; dirs],
        rem: vec![m as u32; dirs],
        current: vec![0; system.len()],
        best: start.outcomes().to_vec(),
        best_cost: start_cost + 1,
        nodes: 0,
        budget: budget.max(1),
        aborted: false,
        open_bound: u64::MAX,
    };
    s.go(0);
    if s.best_cost == start_cost + 1 {
        s.best_cost = start_cost;
    }
    let f = ContextualAssignment::new(system, s.best.clone())?;
    let check = cval_of(system, &f)?;
    let den = m * m * dirs as u64;
    if check.value != Ratio::new(s.best_cost, den) {
        return Err(Error::InvalidArgument("Cval certificate failed re-evaluation".into()));
    }
    let lower = if s.aborted { s.open_bound.min(s.best_cost) } else { s.best_cost };
    Ok(SolveReport {
        problem: "cval".to_string(),
        n: system.n(),
        lower: Ratio::new(lower, den),
        upper: check.value,
        certificate: Certificate::Contextual(f),
        nodes: s.nodes,
        proof_closed: !s.aborted,
    })
}

/// Randomized steepest descent on `Σ_w c₀c₁` with restarts. The result is
/// an upper bound on `Cval(ℒⁿ)`.
pub fn cval_local_search<R: Rng + ?Sized>(system: &MaximalSystem, restarts: usize, sweeps: usize, rng: &mut R) -> Result<SolveReport> {
    let dirs = system.direction_count();
    let per = system.outcome_count();
    let mut best: Option<(u64, ContextualAssignment)> = None;
    let mut steps = 0u64;
    for r in 0..restarts.max(1) {
        let mut f = if r == 0 { ContextualAssignment::constant(system, 0)? } else { ContextualAssignment::random(system, rng) };
        let ev = cval_of(system, &f)?;
        let mut c0: Vec<i64> = ev.counts.iter().map(|&(a, _)| i64::from(a)).collect();
        let mut c1: Vec<i64> = ev.counts.iter().map(|&(_, b)| i64::from(b)).collect();
        let mut cost: i64 = (0..dirs).map(|d| c0[d] * c1[d]).sum();
        for _ in 0..sweeps {
            let mut improved = false;
            for x in 0..system.len() {
                let cur = usize::from(f.get(x));
                let cur_bits = system.value_bits(x, cur);
                let mut best_delta = 0i64;
                let mut best_o = cur;
                let start = rng.gen_range(0..per);
                for k in 0..per {
                    let o = (start + k) % per;
                    if o == cur {
                        continue;
                    }
                    let bits = system.value_bits(x, o);
                    let mut delta = 0i64;
                    for (j, &d) in system.contained(x).iter().enumerate() {
                        let (old, new) = (cur_bits >> j & 1, bits >> j & 1);
                        if old == new {
                            continue;
                        }
                        let d = d as usize;
                        let (a, b) = (c0[d], c1[d]);
                        let after = if old == 0 { (a - 1) * (b + 1) } else { (a + 1) * (b - 1) };
                        delta += after - a * b;
                    }
                    if delta < best_delta {
                        best_delta = delta;
                        best_o = o;
                    }
                }
                if best_o != cur {
                    let bits = system.value_bits(x, best_o);
                    for (j, &d) in system.contained(x).iter().enumerate() {
                        let d = d as usize;
                        if cur_bits >> j & 1 == 1 {
                            c1[d] -= 1;
                        } else {
                            c0[d] -= 1;
                        }
                        if bits >> j & 1 == 1 {
                            c1[d] += 1;
                        } else {
                            c0[d] += 1;
                        }
                    }
                    cost += best_delta;
                    f.set(x, best_o as u16);
                    improved = true;
                    steps += 1;
                }
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|(c, _)| (cost as u64) < *c) {
            best = Some((cost as u64, f));
        }
    }
    let (_, f) = best.expect("at least one restart");
    let ev = cval_of(system, &f)?;
    Ok(SolveReport {
        problem: "cval".to_string(),
        n: system.n(),
        lower: Ratio::from_integer(0),
        upper: ev.value,
        certificate: Certificate::Contextual(f),
        nodes: steps,
        proof_closed: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_direction_values_at_two_qubits() {
        let sys = MaximalSystem::new(2).unwrap();
        let f = ContextualAssignment::constant(&sys, 0).unwrap();
        let ev = cval_of(&sys, &f).unwrap();
        assert_eq!(ev.fiber, 3);
        for d in 0..sys.direction_count() {
            let v = ev.per_direction(d);
            assert!(v == Ratio::from_integer(0) || v == Ratio::new(2, 9));
        }
    }

    #[test]
    fn exact_beats_baseline() {
        let sys = MaximalSystem::new(2).unwrap();
        let r = cval_exact(&sys, u64::MAX, None).unwrap();
        assert!(r.proof_closed);
        let base = cval_of(&sys, &ContextualAssignment::constant(&sys, 0).unwrap()).unwrap();
        assert!(r.upper <= base.value);
        assert_eq!(r.lower, r.upper);
        assert!(r.upper > Ratio::from_integer(0));
    }
}
