//! Command implementations behind the CLI.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, ensure, Context, Result};
use pauli_core::games::{
    best_response_search, evaluate, game_parallel, game_pauli_agreement, game_z1, game_z_half, val_syn_search, EvalMode, GameSpec,
    Strategy,
};
use pauli_core::gf2::{enumerate_isotropic, MAX_ENUM_QUBITS};
use pauli_core::graphs::{
    bbt_analysis, build_b_n2, build_gw, build_gw_prime, build_sn, default_direction, gw_check, gw_prime_check, spectrum, LabeledGraph,
};
use pauli_core::lattice::counting::count_level;
use pauli_core::solvers::{
    cval_exact, cval_local_search, cval_of, pval_exact, pval_level2, walk_pipeline, Certificate, ContextualAssignment, LevelTwo,
    SolveReport,
};
use pauli_core::{MaximalSystem, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formats;
use crate::report::{
    ratio_string, Body, CountReport, Eigenvalue, EnumerateReport, GameReport, Report, SolverReport, SpectraReport, VerifyReport,
    WalksReport,
};
use crate::verify::{self, Suite};

/// Inputs shared by every command. Unused fields are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub k: Option<usize>,
    pub seed: u64,
    pub budget: u64,
    /// Report destination, or the fixture path for `enumerate`.
    pub out: Option<PathBuf>,
    pub suite: String,
    pub graph: String,
    pub name: String,
    pub strategy: String,
    pub mode: String,
    pub samples: u64,
    pub n_max: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 2,
            k: None,
            seed: pauli_core::DEFAULT_SEED,
            budget: verify::DEFAULT_BUDGET,
            out: None,
            suite: "all".into(),
            graph: "gw".into(),
            name: "z1".into(),
            strategy: "quantum".into(),
            mode: "exact".into(),
            samples: 100_000,
            n_max: 4,
        }
    }
}

fn report(command: &str, cfg: &RunConfig, body: Body) -> Report {
    Report::new(command, cfg.seed, cfg.budget, body)
}

/// Path of a certificate written next to the report.
fn certificate_path(cfg: &RunConfig) -> Option<PathBuf> {
    cfg.out.as_ref().map(|p| p.with_extension("cert"))
}

fn write_certificate(path: &Path, n: usize, outcomes: &[pauli_core::Outcome]) -> Result<String> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    formats::write_outcomes(BufWriter::new(f), n, outcomes)?;
    Ok(path.display().to_string())
}

pub fn count(cfg: &RunConfig) -> Result<Report> {
    let k = cfg.k.unwrap_or(cfg.n);
    let closed = count_level(cfg.n as u64, k as u64)?;
    let enumerated = if cfg.n <= MAX_ENUM_QUBITS { Some(enumerate_isotropic(cfg.n, k)?.len().to_string()) } else { None };
    Ok(report("count", cfg, Body::Count(CountReport { n: cfg.n, k, closed_form: closed.to_string(), enumerated })))
}

pub fn enumerate(cfg: &RunConfig) -> Result<Report> {
    let k = cfg.k.unwrap_or(cfg.n);
    let subs: Vec<Subspace> = enumerate_isotropic(cfg.n, k)?.into_iter().map(|s| s.into_subspace()).collect();
    let path = match &cfg.out {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            formats::write_subspaces(BufWriter::new(f), cfg.n, &subs)?;
            Some(p.display().to_string())
        }
        None => None,
    };
    Ok(report("enumerate", cfg, Body::Enumerate(EnumerateReport { n: cfg.n, k, count: subs.len(), path })))
}

fn eigen_list(pairs: &[(f64, usize)]) -> Vec<Eigenvalue> {
    pairs.iter().map(|&(value, multiplicity)| Eigenvalue { value, multiplicity }).collect()
}

fn expected_list(pairs: &[(i128, u64)]) -> Vec<Eigenvalue> {
    pairs.iter().map(|&(v, m)| Eigenvalue { value: v as f64, multiplicity: m as usize }).collect()
}

pub fn spectra(cfg: &RunConfig) -> Result<Report> {
    let sys = MaximalSystem::new(cfg.n)?;
    let body = match cfg.graph.as_str() {
        "gwp" => {
            let c = gw_prime_check(&sys)?;
            let s = &c.numeric;
            SpectraReport {
                graph: "gwp".into(),
                n: cfg.n,
                vertices: s.eigenvalues.len(),
                spectrum: eigen_list(&s.multiplicities()),
                max: s.max,
                lambda: s.lambda,
                ratio: s.ratio,
                residual: s.residual,
                integral: s.integral,
                expected: Some(expected_list(&c.expected)),
                matches_closed_form: Some(c.matches),
                predicted_ratio: None,
                notes: vec![],
            }
        }
        "gw" => {
            let c = gw_check(&sys)?;
            let s = &c.check.numeric;
            SpectraReport {
                graph: "gw".into(),
                n: cfg.n,
                vertices: s.eigenvalues.len(),
                spectrum: eigen_list(&s.multiplicities()),
                max: s.max,
                lambda: s.lambda,
                ratio: s.ratio,
                residual: s.residual,
                integral: s.integral,
                expected: Some(expected_list(&c.check.expected)),
                matches_closed_form: Some(c.passes()),
                predicted_ratio: Some(c.predicted_ratio),
                notes: vec![format!("closed-form max {} and λ {}", c.closed_max, c.closed_lambda)],
            }
        }
        "b" => {
            let b = bbt_analysis(&sys)?;
            let s = &b.check.numeric;
            SpectraReport {
                graph: "b".into(),
                n: cfg.n,
                vertices: b.left + b.right,
                spectrum: eigen_list(&s.multiplicities()),
                max: b.delta,
                lambda: b.lambda,
                ratio: b.ratio,
                residual: s.residual,
                integral: s.integral,
                expected: Some(expected_list(&b.check.expected)),
                matches_closed_form: Some(b.check.matches && b.decomposition_holds),
                predicted_ratio: None,
                notes: vec![
                    "spectrum lists the eigenvalues of BBᵀ; max and lambda are singular values of B".into(),
                    format!("{} measurements by {} planes", b.left, b.right),
                    format!("(λ/Δ)·2^(n/2) = {:.6}", b.constant),
                    format!("4(λ/Δ)² = {:.6}", b.pval_spectral_bound),
                ],
            }
        }
        "sn" => {
            let g = build_sn(&sys)?;
            let s = spectrum(&g)?;
            SpectraReport {
                graph: "sn".into(),
                n: cfg.n,
                vertices: g.order(),
                spectrum: eigen_list(&s.multiplicities()),
                max: s.max,
                lambda: s.lambda,
                ratio: s.ratio,
                residual: s.residual,
                integral: s.integral,
                expected: None,
                matches_closed_form: None,
                predicted_ratio: None,
                notes: vec![],
            }
        }
        other => bail!("unknown graph {other:?}; expected gwp, gw, b or sn"),
    };
    Ok(report("spectra", cfg, Body::Spectra(body)))
}

/// Writes `<stem>.adj` and `<stem>.payload` into `dir` and returns both paths.
pub fn export_graph(cfg: &RunConfig, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    let sys = MaximalSystem::new(cfg.n)?;
    fs::create_dir_all(dir)?;
    let stem = format!("{}-n{}", cfg.graph, cfg.n);
    let (adj, payload) = match cfg.graph.as_str() {
        "gw" | "gwp" => {
            let w = default_direction(cfg.n)?;
            let g = if cfg.graph == "gw" { build_gw(&sys, &w)? } else { build_gw_prime(&sys, &w)? };
            (formats::adjacency_text(&g), formats::measurement_payload(&sys, &g))
        }
        "sn" => {
            let g = build_sn(&sys)?;
            (formats::adjacency_text(&g), formats::outcome_payload(&sys, &g))
        }
        "b" => {
            let b = build_b_n2(&sys)?;
            let left = b.left.len();
            let mut edges = Vec::new();
            for (i, nb) in b.incidence.iter().enumerate() {
                edges.extend(nb.iter().map(|&j| (i, left + j as usize)));
            }
            let ids: Vec<usize> = (0..left + b.right.len()).collect();
            let g = LabeledGraph::from_edges(ids, edges)?;
            let mut payload = String::new();
            for (i, &x) in b.left.iter().enumerate() {
                payload.push_str(&format!("{i}: {}\n", formats::format_subspace(sys.measurement(x as usize).as_subspace())));
            }
            for (j, s) in b.right.iter().enumerate() {
                payload.push_str(&format!("{}: {}\n", left + j, formats::format_subspace(s.as_subspace())));
            }
            (formats::adjacency_text(&g), payload)
        }
        other => bail!("unknown graph {other:?}; expected gwp, gw, b or sn"),
    };
    let (a, p) = (dir.join(format!("{stem}.adj")), dir.join(format!("{stem}.payload")));
    fs::write(&a, adj)?;
    fs::write(&p, payload)?;
    Ok((a, p))
}

pub fn pval(cfg: &RunConfig) -> Result<Report> {
    let cert_path = certificate_path(cfg);
    let (r, outcomes, valid, mut notes) = if cfg.k == Some(2) {
        let (r, avg) = pval_level2(cfg.n, cfg.budget)?;
        let level = LevelTwo::new(cfg.n)?;
        let Certificate::IndependentSet(set) = &r.certificate else { bail!("level-two search returned no independent set") };
        let outs: Vec<_> = set.iter().map(|&v| level.outcomes[v as usize].clone()).collect();
        let mut valid = true;
        for i in 0..outs.len() {
            for j in i + 1..outs.len() {
                valid &= verify::consistent_by_evaluation(&outs[i], &outs[j])?;
            }
        }
        let notes = avg.map(|a| vec![format!("square averaging upper bound {} over {} squares", ratio_string(a.upper), a.squares)]).unwrap_or_default();
        (r, outs, valid, notes)
    } else {
        let sys = MaximalSystem::new(cfg.n)?;
        let r = pval_exact(&sys, cfg.budget)?;
        let Certificate::Partial(f) = &r.certificate else { bail!("Pval search returned no partial assignment") };
        let valid = verify::partial_is_consistent(&sys, f)?;
        (r.clone(), formats::partial_outcomes(&sys, f), valid, vec![])
    };
    if !r.proof_closed {
        notes.push("search budget exhausted: bounds only".into());
    }
    let path = cert_path.map(|p| write_certificate(&p, cfg.n, &outcomes)).transpose()?;
    let mut s = SolverReport::from_solve(&r, path, valid);
    s.notes = notes;
    Ok(report("pval", cfg, Body::Solver(s)))
}

fn contextual_certificate(r: &SolveReport) -> Result<&ContextualAssignment> {
    match &r.certificate {
        Certificate::Contextual(f) => Ok(f),
        _ => Err(anyhow!("{} search returned no assignment", r.problem)),
    }
}

pub fn cval(cfg: &RunConfig) -> Result<Report> {
    let sys = MaximalSystem::new(cfg.n)?;
    let (r, note) = if cfg.n <= 2 {
        (cval_exact(&sys, cfg.budget, None)?, None)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (cval_local_search(&sys, 4, 20, &mut rng)?, Some("local search: the value is an upper bound on Cval".to_string()))
    };
    let f = contextual_certificate(&r)?;
    let valid = cval_of(&sys, f)?.value == r.upper;
    let path = certificate_path(cfg).map(|p| write_certificate(&p, cfg.n, &formats::contextual_outcomes(&sys, f))).transpose()?;
    let mut s = SolverReport::from_solve(&r, path, valid);
    s.notes.extend(note);
    Ok(report("cval", cfg, Body::Solver(s)))
}

pub fn build_game(name: &str, n: usize, copies: usize) -> Result<GameSpec> {
    let base = match name {
        "z1" => {
            ensure!(n == 2, "z1 is the two-qubit game; use zhalf for n = {n}");
            game_z1()?
        }
        "zhalf" => game_z_half(n)?,
        "agreement" => game_pauli_agreement(n)?,
        other => bail!("unknown game {other:?}; expected z1, zhalf or agreement"),
    };
    Ok(if copies > 1 { game_parallel(&base, copies)? } else { base })
}

struct Chosen {
    strategy: Strategy,
    search: Option<SolverReport>,
    notes: Vec<String>,
}

/// Exact synchronous optimum of the single-copy game named in `cfg`.
fn synchronous_optimum(cfg: &RunConfig) -> Result<(ContextualAssignment, SolverReport)> {
    let base = build_game(&cfg.name, cfg.n, 1)?;
    let r = val_syn_search(&base, cfg.budget)?;
    let f = contextual_certificate(&r.report)?.clone();
    let check = evaluate(&base, &Strategy::Synchronous(f.clone()), EvalMode::Exact)?.exact;
    let valid = check.is_some_and(|v| v * u128::from(*r.report.lower.denom()) == u128::from(*r.report.lower.numer()).into());
    let path = certificate_path(cfg).map(|p| write_certificate(&p, base.n(), &formats::contextual_outcomes(base.system(), &f))).transpose()?;
    Ok((f, SolverReport::from_syn(&r, path, valid)))
}

fn choose_strategy(game: &GameSpec, cfg: &RunConfig) -> Result<Chosen> {
    let mut notes = Vec::new();
    let (strategy, search) = match cfg.strategy.as_str() {
        "quantum" => (Strategy::Quantum, None),
        "random" => (Strategy::Random, None),
        "synchronous" => {
            let (f, s) = synchronous_optimum(cfg)?;
            if game.copies() > 1 {
                notes.push("the single-copy synchronous optimum applied on every coordinate".into());
            }
            (Strategy::Synchronous(f), Some(s))
        }
        "best" => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let start = if game.n() == 2 && cfg.name != "agreement" { Some(Strategy::Synchronous(synchronous_optimum(cfg)?.0)) } else { None };
            let b = best_response_search(game, start.as_ref(), 64, &mut rng)?;
            notes.push(format!("best response after {} restarts and {} iterations: a lower bound on the classical value", b.restarts, b.iterations));
            (b.strategy, None)
        }
        s => {
            let path = s.strip_prefix("file:").ok_or_else(|| anyhow!("unknown strategy {s:?}; expected quantum, random, synchronous, best or file:PATH"))?;
            let f = File::open(path).with_context(|| format!("opening {path}"))?;
            let a = formats::read_contextual(game.system(), BufReader::new(f))?;
            notes.push(format!("synchronous strategy read from {path}"));
            (Strategy::Synchronous(a), None)
        }
    };
    Ok(Chosen { strategy, search, notes })
}

pub fn game(cfg: &RunConfig) -> Result<Report> {
    let copies = cfg.k.unwrap_or(1);
    let g = build_game(&cfg.name, cfg.n, copies)?;
    let chosen = choose_strategy(&g, cfg)?;
    let mode = match cfg.mode.as_str() {
        "exact" => EvalMode::Exact,
        "mc" => EvalMode::MonteCarlo { samples: cfg.samples, seed: cfg.seed },
        other => bail!("unknown mode {other:?}; expected exact or mc"),
    };
    let v = evaluate(&g, &chosen.strategy, mode)?;
    let mut r = GameReport::from_estimate(&v);
    r.search = chosen.search;
    r.notes = chosen.notes;
    Ok(report("game", cfg, Body::Game(r)))
}

pub fn walks(cfg: &RunConfig) -> Result<Report> {
    let sys = MaximalSystem::new(cfg.n)?;
    let k = cfg.k.unwrap_or(1);
    let p = pval_exact(&sys, cfg.budget)?;
    ensure!(p.proof_closed, "Pval search did not close within the budget");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let w = walk_pipeline(&sys, p.lower, k, cfg.seed, cfg.budget, &mut rng)?;
    Ok(report(
        "walks",
        cfg,
        Body::Walks(WalksReport {
            n: cfg.n,
            k,
            pval: ratio_string(p.lower),
            degree: w.degree,
            r_vertices: w.r_vertices,
            lambda_over_d: w.lambda_over_d,
            vertices: w.vertices,
            theta: w.theta,
            cover_valid: w.cover_valid,
            alpha_lower: w.alpha_lower,
            alpha_upper: w.alpha_upper,
            closed: w.closed,
            t_lower: w.t_lower,
            t_upper: w.t_upper,
            bound: w.bound,
            bound_holds: w.bound_holds,
            bound_certified: w.bound_certified,
        }),
    ))
}

pub fn verify_suite(cfg: &RunConfig) -> Result<Report> {
    let suite = Suite::parse(&cfg.suite).ok_or_else(|| anyhow!("unknown suite {:?}; expected formulas, phases, spectra, mixing, games, solvers or all", cfg.suite))?;
    let opts = verify::Options { n_max: cfg.n_max, seed: cfg.seed, budget: cfg.budget };
    let criteria = verify::run_suite(suite, &opts);
    let passed = criteria.iter().all(|c| c.status.ok());
    Ok(report("verify", cfg, Body::Verify(VerifyReport { suite: suite.name().into(), n_max: cfg.n_max, criteria, passed })))
}

/// Shared system for callers that evaluate several games on one `n`.
pub fn shared_system(n: usize) -> Result<Arc<MaximalSystem>> {
    Ok(Arc::new(MaximalSystem::new(n)?))
}
