//! The verification suite: one entry per acceptance criterion.
//!
//! Each criterion runs a list of named checks against independent oracles
//! where one is cheap to write here, and against the library's own
//! re-validation otherwise. Object-level work is restricted to
//! `n ≤ n_max`; integer formula checks always run.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use anyhow::{ensure, Result};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use pauli_core::games::{evaluate, game_pauli_agreement, game_z1, val_syn_search, EvalMode, Strategy};
use pauli_core::gf2::enumerate_isotropic;
use pauli_core::graphs::{
    appendix_c_bounds, bbt_analysis, bipartite_mixing_trials, build_b_n2, build_gw, build_sn, default_direction, disjunctive_product,
    gw_check, gw_prime_check, hitting_walk_test, mixing_trials, random_regular_graph, random_sets, sandwich_holds, spectrum, t_value,
};
use pauli_core::lattice::counting::{count_level, degree_gw, item_four_check, qbinomial};
use pauli_core::lattice::phase_w;
use pauli_core::matrix::{bob_twist, conventional_phase_matrix, outcome_projector, BipartiteState};
use pauli_core::solvers::{
    brute_force_alpha, contradiction_triangles, cval_exact, cval_of, no_complete_consistent, pval_exact, product_t,
    stabilizer_alpha_theta, theta_sn, Certificate, ContextualAssignment, PartialAssignment,
};
use pauli_core::{GF2Vector, MaximalSystem, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Passing, with a documented discrepancy against the printed formula.
    PassWithNote,
    Fail,
    /// Nothing ran under the current `n_max`.
    Skipped,
}

impl Status {
    pub fn ok(self) -> bool {
        self != Status::Fail
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::PassWithNote => "PASS (note)",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub note: Option<String>,
    /// Wall time, kept out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let mut line = format!(
            "criterion {:>2} [{}] {}: {}/{} checks",
            self.id,
            self.status.label(),
            self.title,
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        );
        if !failed.is_empty() {
            line.push_str(&format!(", failed: {}", failed.join(", ")));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!(" | note: {n}"));
        }
        line
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Formulas,
    Phases,
    Spectra,
    Mixing,
    Games,
    Solvers,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "formulas" => Suite::Formulas,
            "phases" => Suite::Phases,
            "spectra" => Suite::Spectra,
            "mixing" => Suite::Mixing,
            "games" => Suite::Games,
            "solvers" => Suite::Solvers,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Phases => "phases",
            Suite::Spectra => "spectra",
            Suite::Mixing => "mixing",
            Suite::Games => "games",
            Suite::Solvers => "solvers",
            Suite::All => "all",
        }
    }

    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Formulas => &[1, 2, 6, 11],
            Suite::Phases => &[3],
            Suite::Spectra => &[5],
            Suite::Mixing => &[7],
            Suite::Games => &[8],
            Suite::Solvers => &[4, 9, 10],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub n_max: usize,
    pub seed: u64,
    /// Node budget for every exact search.
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { n_max: 4, seed: pauli_core::DEFAULT_SEED, budget: DEFAULT_BUDGET }
    }
}

pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

pub const TITLES: [&str; 11] = [
    "isotropic counts",
    "q-binomials and sandwich",
    "phase semantics",
    "Pval and completeness",
    "graph spectra",
    "eigenvalue bounds",
    "mixing and hitting",
    "game values",
    "inconsistency chain",
    "contextuality",
    "degree erratum",
];

/// Wall-time limits from the acceptance criteria.
pub fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(60)),
        4 => Some(Duration::from_secs(10)),
        7 => Some(Duration::from_secs(300)),
        _ => None,
    }
}

struct Checks {
    list: Vec<Check>,
    note: Option<String>,
}

impl Checks {
    fn new() -> Self {
        Self { list: Vec::new(), note: None }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.list.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    /// Records an error as a failed check instead of aborting the criterion.
    fn run(&mut self, name: &str, f: impl FnOnce(&mut Checks) -> Result<()>) {
        if let Err(e) = f(self) {
            self.push(name, false, format!("error: {e:#}"));
        }
    }
}

pub fn run_criterion(id: u8, opts: &Options) -> CriterionResult {
    let start = Instant::now();
    let mut c = Checks::new();
    match id {
        1 => counts(&mut c, opts),
        2 => qbinomials(&mut c, opts),
        3 => phases(&mut c, opts),
        4 => pval(&mut c, opts),
        5 => spectra(&mut c, opts),
        6 => eigenvalue_bounds(&mut c),
        7 => mixing(&mut c, opts),
        8 => games(&mut c, opts),
        9 => chain(&mut c, opts),
        10 => contextuality(&mut c, opts),
        11 => erratum(&mut c, opts),
        _ => c.push("criterion id", false, format!("no criterion {id}")),
    }
    let elapsed = start.elapsed();
    if let Some(limit) = time_limit(id) {
        if !c.list.is_empty() {
            c.push("runtime", elapsed <= limit, format!("limit {} s", limit.as_secs()));
        }
    }
    let status = if c.list.iter().any(|k| !k.pass) {
        Status::Fail
    } else if c.list.is_empty() {
        Status::Skipped
    } else if c.note.is_some() {
        Status::PassWithNote
    } else {
        Status::Pass
    };
    let title = TITLES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown").to_string();
    CriterionResult { id, title, status, checks: c.list, note: c.note, elapsed }
}

pub fn run_suite(suite: Suite, opts: &Options) -> Vec<CriterionResult> {
    suite.criteria().iter().map(|&id| run_criterion(id, opts)).collect()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn ratio_str(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn counts(c: &mut Checks, opts: &Options) {
    let top = opts.n_max.min(4);
    for n in 1..=top {
        c.run(&format!("n={n}"), |c| {
            let mut bad = Vec::new();
            for k in 0..=n {
                let got = enumerate_isotropic(n, k)?.len();
                let want = count_level(n as u64, k as u64)?;
                if want != got.into() {
                    bad.push(format!("k={k}: {got} vs {want}"));
                }
            }
            c.push(format!("levels n={n}"), bad.is_empty(), if bad.is_empty() { format!("k = 0..={n} agree") } else { bad.join("; ") });
            Ok(())
        });
    }
    if top >= 2 {
        c.run("L22", |c| {
            let got = enumerate_isotropic(2, 2)?.len();
            c.push("|L^2_2| = 15", got == 15, format!("{got}"));
            Ok(())
        });
    }
    if top >= 4 {
        c.run("L44", |c| {
            let got = enumerate_isotropic(4, 4)?.len();
            c.push("|L^4_4| = 2295", got == 2295, format!("{got}"));
            Ok(())
        });
    }
}

/// Every subspace of `Z₂^d` as a membership bitmap over the `2^d` vectors.
fn subspace_counts(d: usize) -> Vec<u64> {
    type Set = [u64; 4];
    let members = |s: &Set| -> Vec<usize> { (0..1usize << d).filter(|&v| s[v / 64] >> (v % 64) & 1 == 1).collect() };
    let mut level: Vec<Set> = vec![[1, 0, 0, 0]];
    let mut out = vec![1u64];
    for _ in 0..d {
        let next: HashSet<Set> = level
            .par_iter()
            .flat_map_iter(|s| {
                let elems = members(s);
                let mut ext = Vec::new();
                for v in 1..1usize << d {
                    // One representative per coset: the smallest element.
                    if s[v / 64] >> (v % 64) & 1 == 1 || elems.iter().any(|&e| e ^ v < v) {
                        continue;
                    }
                    let mut t = *s;
                    for &e in &elems {
                        let w = e ^ v;
                        t[w / 64] |= 1 << (w % 64);
                    }
                    ext.push(t);
                }
                ext
            })
            .collect();
        level = next.into_iter().collect();
        out.push(level.len() as u64);
    }
    out
}

fn qbinomials(c: &mut Checks, opts: &Options) {
    let d_max = (2 * opts.n_max).min(8);
    let mut bad = Vec::new();
    for d in 0..=d_max {
        for (m, got) in subspace_counts(d).into_iter().enumerate() {
            if qbinomial(d as u64, m as u64) != got.into() {
                bad.push(format!("({d},{m}): {got}"));
            }
        }
    }
    c.push("brute-force subspace counts", bad.is_empty(), format!("n ≤ {d_max}, all m{}", if bad.is_empty() { String::new() } else { format!("; mismatches {}", bad.join(" ")) }));
    let bad: Vec<String> = (0..=20u64).flat_map(|n| (0..=n).map(move |m| (n, m))).filter(|&(n, m)| !sandwich_holds(n, m)).map(|(n, m)| format!("({n},{m})")).collect();
    c.push("sandwich n ≤ 20", bad.is_empty(), if bad.is_empty() { "exact big-int, every m".to_string() } else { bad.join(" ") });
}

fn phases(c: &mut Checks, opts: &Options) {
    if opts.n_max < 2 {
        return;
    }
    c.run("phase matrices", |c| {
        let n = 2;
        let mut checked = 0;
        let mut commuting = 0;
        let mut failures = Vec::new();
        for a in 0..16u64 {
            for b in 0..16u64 {
                let (x, y) = (GF2Vector::new(n, a)?, GF2Vector::new(n, b)?);
                let (cx, cy) = (conventional_phase_matrix(&x)?, conventional_phase_matrix(&y)?);
                let prod = &cx * &cy;
                checked += 1;
                let ok = if x.symplectic(&y)? {
                    let anti = prod.approx_eq(&(&cy * &cx).scale((-1.0).into()), 1e-12);
                    phase_w(&x, &y).is_err() && anti
                } else {
                    commuting += 1;
                    let w = phase_w(&x, &y)?;
                    let cs = conventional_phase_matrix(&(x + y))?;
                    let sign = if w { -1.0 } else { 1.0 };
                    prod.approx_eq(&cs.scale(sign.into()), 1e-12) && !prod.approx_eq(&cs.scale((-sign).into()), 1e-12)
                };
                if !ok {
                    failures.push(format!("{x},{y}"));
                }
            }
        }
        c.push(
            "C(a)C(b) = (-1)^w C(a+b)",
            failures.is_empty(),
            format!("{}/{checked} pairs agree ({commuting} commuting, {} anticommuting rejected); {} failures", checked - failures.len(), checked - commuting, failures.len()),
        );
        Ok(())
    });
}

/// Consistency by direct evaluation on every common vector.
pub fn consistent_by_evaluation(a: &Outcome, b: &Outcome) -> Result<bool> {
    let common = a.base().as_subspace().intersect(b.base().as_subspace())?;
    for v in common.vectors()? {
        if a.eval(&v)? != b.eval(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn partial_is_consistent(system: &MaximalSystem, f: &PartialAssignment) -> Result<bool> {
    let outs: Vec<Outcome> = f.entries().iter().enumerate().filter_map(|(x, o)| o.map(|o| system.outcome(x, usize::from(o)))).collect();
    for i in 0..outs.len() {
        for j in i + 1..outs.len() {
            if !consistent_by_evaluation(&outs[i], &outs[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn pval(c: &mut Checks, opts: &Options) {
    if opts.n_max < 2 {
        return;
    }
    c.run("pval n=2", |c| {
        let sys = MaximalSystem::new(2)?;
        let r = pval_exact(&sys, opts.budget)?;
        c.push("Pval(L^2) = 12/15", r.optimum() == Some(Ratio::new(12, 15)), format!("[{}, {}], closed {}, {} nodes", ratio_str(r.lower), ratio_str(r.upper), r.proof_closed, r.nodes));
        let Certificate::Partial(f) = &r.certificate else {
            c.push("certificate", false, "not a partial assignment");
            return Ok(());
        };
        let valid = partial_is_consistent(&sys, f)?;
        c.push("certificate re-validated", valid && f.defined() == 12, format!("{} outcomes, pairwise consistent {valid}", f.defined()));
        let u = no_complete_consistent(2, opts.budget)?;
        c.push("completeness UNSAT", u.unsat && u.closed, format!("α ≤ {} < {}", u.alpha_upper, u.measurements));
        Ok(())
    });
}

fn spectra(c: &mut Checks, opts: &Options) {
    for (n, ratio) in [(2usize, 0.5), (4, 0.25)] {
        if n > opts.n_max {
            continue;
        }
        c.run(&format!("G_w n={n}"), |c| {
            let g = gw_check(&MaximalSystem::new(n)?)?;
            let s = &g.check.numeric;
            let residual = s.residual.unwrap_or(f64::NAN);
            c.push(
                format!("G_w n={n}"),
                g.passes() && s.ratio == ratio && residual < 1e-8,
                format!("max {} λ {} ratio {} (closed form {}), residual {residual:.1e}", s.max, s.lambda, s.ratio, g.predicted_ratio),
            );
            Ok(())
        });
    }
    for n in [3usize, 4] {
        if n > opts.n_max {
            continue;
        }
        c.run(&format!("G'_w n={n}"), |c| {
            let g = gw_prime_check(&MaximalSystem::new(n)?)?;
            c.push(format!("G'_w n={n}"), g.matches, format!("{} eigenvalues, max deviation {:.1e}, expected {:?}", g.numeric.eigenvalues.len(), g.max_deviation, g.expected));
            Ok(())
        });
        c.run(&format!("B n={n}"), |c| {
            let b = bbt_analysis(&MaximalSystem::new(n)?)?;
            c.push(
                format!("B_{{{n},2}} BBᵀ"),
                b.check.matches && b.decomposition_holds,
                format!("{}x{} incidence, relative deviation {:.1e}, λ/Δ {:.6}", b.left, b.right, b.check.max_deviation, b.ratio),
            );
            Ok(())
        });
    }
}

fn eigenvalue_bounds(c: &mut Checks) {
    let mut bad = Vec::new();
    for n in 9..=20 {
        let b = appendix_c_bounds(n);
        if b.lambda_bound != Some(true) || b.delta_bound != Some(true) {
            bad.push(n);
        }
    }
    c.push("λ² and Δ² bounds, 9 ≤ n ≤ 20", bad.is_empty(), format!("exact integers; failing n: {bad:?}"));
    let bad: Vec<u64> = (4..=20).filter(|&n| appendix_c_bounds(n).summation != Some(true)).collect();
    c.push("summation bound, 4 ≤ n ≤ 20", bad.is_empty(), format!("failing n: {bad:?}"));
}

fn mixing(c: &mut Checks, opts: &Options) {
    if opts.n_max >= 4 {
        c.run("mixing G_w", |c| {
            let sys = MaximalSystem::new(4)?;
            let g = build_gw(&sys, &default_direction(4)?)?;
            let lambda = spectrum(&g)?.lambda;
            let t = mixing_trials(&g, lambda, 1000, &mut rng_for(opts.seed, 71))?;
            c.push("mixing lemma on G_w(4)", t.violations == 0, format!("λ {lambda}, {} trials, {} violations, worst ratio {:.3}", t.trials, t.violations, t.worst_ratio));
            let b = build_b_n2(&sys)?;
            let lambda = bbt_analysis(&sys)?.lambda;
            let t = bipartite_mixing_trials(&b, lambda, 1000, &mut rng_for(opts.seed, 72))?;
            c.push("bipartite mixing on B_{4,2}", t.violations == 0, format!("λ {lambda:.4}, {} trials, {} violations, worst ratio {:.3}", t.trials, t.violations, t.worst_ratio));
            Ok(())
        });
    }
    c.run("hitting", |c| {
        let g = random_regular_graph(256, 8, 42)?;
        let s = spectrum(&g)?;
        let mut rng = rng_for(opts.seed, 73);
        let sets = random_sets(256, 128, 5, &mut rng);
        let h = hitting_walk_test(&g, &sets, s.lambda_nontrivial, 100_000, &mut rng)?;
        c.push(
            "hitting lemma, 8-regular on 256",
            h.pass && s.lambda_nontrivial < 8.0,
            format!("λ/Δ {:.4}, estimate {:.5} vs bound {:.5} + 3σ ({:.5})", s.lambda_nontrivial / 8.0, h.estimate, h.bound, 3.0 * h.sigma),
        );
        Ok(())
    });
}

/// Winning probability of the entangled strategy on `Z₁`, computed as
/// `⟨Φ|P_a ⊗ Q_b|Φ⟩` per answer pair from projectors.
fn quantum_z1_by_trace(system: &MaximalSystem) -> Result<(f64, usize)> {
    let game = game_z1()?;
    let d = 1usize << system.n();
    let phi = BipartiteState::maximally_entangled(d);
    let mut worst: f64 = 1.0;
    for r in game.base_rounds() {
        let (x, y) = (system.measurement(r.x as usize), system.measurement(r.y as usize));
        let mut win = 0.0;
        for a in 0..d as u32 {
            let pa = Outcome::new(x.clone(), a)?;
            let proj_a = outcome_projector(&pa)?;
            for raw in 0..d as u32 {
                let q = outcome_projector(&Outcome::new(y.clone(), raw)?)?;
                let submitted = Outcome::new(y.clone(), bob_twist(y, raw))?;
                if consistent_by_evaluation(&pa, &submitted)? {
                    win += phi.expectation(&proj_a, &q).re;
                }
            }
        }
        worst = worst.min(win);
    }
    Ok((worst, game.base_rounds().len()))
}

fn games(c: &mut Checks, opts: &Options) {
    if opts.n_max < 2 {
        return;
    }
    c.run("quantum Z1", |c| {
        let sys = MaximalSystem::new(2)?;
        let (worst, rounds) = quantum_z1_by_trace(&sys)?;
        let v = evaluate(&game_z1()?, &Strategy::Quantum, EvalMode::Exact)?;
        let dev = (1.0 - worst).abs().max((1.0 - v.value).abs());
        c.push("quantum value on Z1 = 1", dev < 1e-9 && rounds == 90, format!("{rounds} questions, deviation {dev:.1e}"));
        Ok(())
    });
    c.run("random agreement", |c| {
        let g = game_pauli_agreement(2)?;
        let mc = evaluate(&g, &Strategy::Random, EvalMode::MonteCarlo { samples: 100_000, seed: opts.seed })?;
        let (lo, hi) = mc.interval.unwrap_or((f64::NAN, f64::NAN));
        c.push("random agreement = 1/2", mc.covers(0.5), format!("mean {:.4}, 99% CI [{lo:.4}, {hi:.4}], 10^5 samples", mc.value));
        Ok(())
    });
    c.run("Val_syn(Z1)", |c| {
        let g = game_z1()?;
        let r = val_syn_search(&g, opts.budget)?;
        let value = r.report.optimum();
        let check = match &r.report.certificate {
            Certificate::Contextual(f) => evaluate(&g, &Strategy::Synchronous(f.clone()), EvalMode::Exact)?.exact,
            _ => None,
        };
        let agrees = matches!((value, check), (Some(v), Some(e)) if Ratio::new(u128::from(*v.numer()), u128::from(*v.denom())) == e);
        c.push(
            "Val_syn(Z1) exact and < 1",
            r.report.proof_closed && r.below_one && agrees && value.is_some_and(|v| v < Ratio::from_integer(1)),
            format!("{} after {} nodes, certificate re-evaluated {agrees}", value.map(ratio_str).unwrap_or_else(|| "open".into()), r.report.nodes),
        );
        Ok(())
    });
}

fn chain(c: &mut Checks, opts: &Options) {
    if opts.n_max < 2 {
        return;
    }
    c.run("Cval n=2", |c| {
        let sys = MaximalSystem::new(2)?;
        let r = cval_exact(&sys, opts.budget, None)?;
        let recheck = match &r.certificate {
            Certificate::Contextual(f) => Some(cval_of(&sys, f)?.value),
            _ => None,
        };
        c.push(
            "Cval(L^2) exact",
            r.proof_closed && r.optimum().is_some() && recheck == r.optimum(),
            format!("{} after {} nodes", r.optimum().map(ratio_str).unwrap_or_else(|| "open".into()), r.nodes),
        );
        Ok(())
    });
    for n in [2usize, 4] {
        if n > opts.n_max {
            continue;
        }
        c.run(&format!("triangles n={n}"), |c| {
            let sys = MaximalSystem::new(n)?;
            let pairs = sys.pairs_at_distance(n / 2)?;
            let results: Vec<(bool, bool)> = (0..100u64)
                .into_par_iter()
                .map(|i| {
                    let f = ContextualAssignment::random(&sys, &mut rng_for(opts.seed, 900 + i + 1000 * n as u64));
                    let t = contradiction_triangles(&sys, &pairs, &f)?;
                    Ok((t.aggregate_holds, t.per_direction_holds))
                })
                .collect::<Result<_>>()?;
            let lower = results.iter().filter(|r| !r.0).count();
            let upper = results.iter().filter(|r| !r.1).count();
            c.push(format!("triangle bounds n={n}"), lower == 0 && upper == 0, format!("100 assignments; {lower} lower and {upper} upper violations"));
            Ok(())
        });
    }
    if opts.n_max >= 3 {
        c.run("disagreement counts", |c| {
            let sys = MaximalSystem::new(3)?;
            let mut rng = rng_for(opts.seed, 95);
            let (mut seen, mut bad) = (0, 0);
            while seen < 1000 {
                let (x, y) = (rng.gen_range(0..sys.len()), rng.gen_range(0..sys.len()));
                let (a, b) = (sys.outcome(x, rng.gen_range(0..8)), sys.outcome(y, rng.gen_range(0..8)));
                if consistent_by_evaluation(&a, &b)? {
                    continue;
                }
                seen += 1;
                let dim = a.base().as_subspace().intersect(b.base().as_subspace())?.dim();
                let mut direct = 0u64;
                for v in a.base().as_subspace().intersect(b.base().as_subspace())?.vectors()? {
                    direct += u64::from(a.eval(&v)? != b.eval(&v)?);
                }
                let want = 1u64 << (dim - 1);
                if a.disagreement_count(&b)? != want || direct != want {
                    bad += 1;
                }
            }
            c.push("disagreements = 2^(dim∩−1) on L^3", bad == 0, format!("{seen} inconsistent pairs, {bad} mismatches"));
            Ok(())
        });
    }
}

fn contextuality(c: &mut Checks, opts: &Options) {
    if opts.n_max >= 2 {
        c.run("S_2", |c| {
            let sys = MaximalSystem::new(2)?;
            let g = build_sn(&sys)?;
            let th = theta_sn(&sys, &g, 100, &mut rng_for(opts.seed, 101))?;
            c.push(
                "θ(S_2) = 15 two-sided",
                th.passes(1e-9) && th.theta == 15 && th.cover.len() == 15 && th.cover_valid,
                format!("cover of {} cliques valid {}, representation deviation {:.1e} over {} states", th.cover.len(), th.cover_valid, th.max_deviation, th.samples),
            );
            let p = pval_exact(&sys, opts.budget)?;
            let r = stabilizer_alpha_theta(&p);
            c.push("α/θ = 0.8", r.exact && r.lower == 0.8 && r.upper == 0.8, format!("[{}, {}]", r.lower, r.upper));
            let alpha = p.optimum().map(|v| (v * 15).to_integer()).unwrap_or(0);
            let t = t_value(alpha as f64, th.theta as f64, g.order())?;
            let want = (15f64 / 12.0).ln() / 60f64.ln();
            c.push("T(S_2) = log(15/12)/log 60", (t - want).abs() <= 1e-12, format!("T = {t:.15} from α = {alpha}, θ = {}", th.theta));
            Ok(())
        });
    }
    c.run("S_1 product", |c| {
        let sys = MaximalSystem::new(1)?;
        let g = build_sn(&sys)?;
        let p = product_t(&g, 3, opts.budget)?;
        let brute = brute_force_alpha(&disjunctive_product(&g, &g));
        c.push(
            "T(S_1) = T(S_1 ⊗ S_1)",
            p.closed && p.t == p.t_product && brute == Some(p.alpha_product) && p.vertices_product == 36,
            format!("α {} and {} (brute force {} on {} vertices), T {}", p.alpha, p.alpha_product, opt(brute), p.vertices_product, p.t),
        );
        Ok(())
    });
}

fn erratum(c: &mut Checks, opts: &Options) {
    let mut notes = Vec::new();
    for n in [2usize, 4] {
        if n > opts.n_max {
            continue;
        }
        c.run(&format!("degree n={n}"), |c| {
            let g = build_gw(&MaximalSystem::new(n)?, &default_direction(n)?)?;
            let brute = g.regular_degree();
            let d = degree_gw(n as u64)?;
            let (halved, printed) = (d.value.to_usize(), d.doubled_expression.to_usize());
            ensure!(brute.is_some(), "G_w is not regular");
            c.push(format!("degree of G_w n={n}"), brute == halved, format!("constructed {}, printed formula {}, halved {}", opt(brute), opt(printed), opt(halved)));
            if brute != printed {
                notes.push(format!("n={n}: degree {} not {}", brute.unwrap_or(0), printed.unwrap_or(0)));
            }
            Ok(())
        });
    }
    c.run("question ratio", |c| {
        let bad: Vec<u64> = (2..=20).step_by(2).filter(|&n| !item_four_check(n).map(|k| k.holds_for_degree()).unwrap_or(false)).collect();
        c.push("|Q| / (|L^n_n| · deg) product form, even n ≤ 20", bad.is_empty(), format!("failing n: {bad:?}"));
        Ok(())
    });
    if !notes.is_empty() {
        c.note = Some(format!("the leading factor 2 in the printed G_w degree is an erratum ({})", notes.join(", ")));
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_small() {
        assert_eq!(subspace_counts(0), vec![1]);
        assert_eq!(subspace_counts(3), vec![1, 7, 7, 1]);
        assert_eq!(subspace_counts(4), vec![1, 15, 35, 15, 1]);
    }

    #[test]
    fn suites_cover_every_criterion() {
        let mut all: Vec<u8> = [Suite::Formulas, Suite::Phases, Suite::Spectra, Suite::Mixing, Suite::Games, Suite::Solvers]
            .iter()
            .flat_map(|s| s.criteria().iter().copied())
            .collect();
        all.sort_unstable();
        assert_eq!(all, Suite::All.criteria());
    }

    #[test]
    fn trivial_subset() {
        let opts = Options { n_max: 1, ..Options::default() };
        let r = run_suite(Suite::All, &opts);
        assert!(r.iter().all(|c| c.status.ok()), "{:?}", r.iter().map(CriterionResult::summary_line).collect::<Vec<_>>());
        assert_eq!(r[2].status, Status::Skipped);
    }
}
