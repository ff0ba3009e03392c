//! Plain-text fixture formats.
//!
//! Subspace files start with a header `n=<int>` and hold one subspace per
//! line. A line lists the basis rows as hex-encoded `2n`-bit strings (x part
//! in the high bits), separated by commas; the zero subspace is written `-`.
//!
//! Outcome lines extend a subspace line with a space and a bit string whose
//! character `i` is the outcome's value on row `i`. Solver certificates use
//! the same layout with one assigned measurement per line.
//!
//! Blank lines and lines starting with `#` are ignored by the readers.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use anyhow::{anyhow, bail, ensure, Context, Result};
use pauli_core::graphs::{LabeledGraph, OutcomeVertex, SpectrumReport};
use pauli_core::solvers::{ContextualAssignment, PartialAssignment};
use pauli_core::{GF2Vector, MaximalSystem, Measurement, Outcome, Subspace};

fn hex_width(n: usize) -> usize {
    (2 * n).div_ceil(4).max(1)
}

pub fn format_subspace(s: &Subspace) -> String {
    if s.is_zero() {
        return "-".to_string();
    }
    let w = hex_width(s.n());
    let rows: Vec<String> = s.rows().iter().map(|r| format!("{r:0w$x}")).collect();
    rows.join(",")
}

pub fn parse_subspace(n: usize, line: &str) -> Result<Subspace> {
    let line = line.trim();
    if line == "-" {
        return Ok(Subspace::zero(n)?);
    }
    let mut rows = Vec::new();
    for tok in line.split(',') {
        let tok = tok.trim();
        let bits = u64::from_str_radix(tok, 16).with_context(|| format!("bad hex row {tok:?}"))?;
        rows.push(GF2Vector::new(n, bits)?);
    }
    let s = Subspace::span(n, rows.iter().copied())?;
    ensure!(s.dim() == rows.len(), "rows of {line:?} are linearly dependent");
    Ok(s)
}

fn parse_header(line: &str) -> Result<usize> {
    let n = line
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| anyhow!("expected header n=<int>, got {line:?}"))?
        .parse::<usize>()
        .context("bad qubit count in header")?;
    ensure!(n >= 1, "qubit count must be positive");
    Ok(n)
}

/// Header value and the remaining content lines, numbered from 1.
fn content_lines<R: BufRead>(reader: R) -> Result<(usize, Vec<(usize, String)>)> {
    let mut n = None;
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match n {
            None => n = Some(parse_header(t).with_context(|| format!("line {}", i + 1))?),
            Some(_) => lines.push((i + 1, t.to_string())),
        }
    }
    let n = n.ok_or_else(|| anyhow!("missing n=<int> header"))?;
    Ok((n, lines))
}

pub fn write_subspaces<W: Write>(mut out: W, n: usize, subspaces: &[Subspace]) -> Result<()> {
    writeln!(out, "n={n}")?;
    for s in subspaces {
        ensure!(s.n() == n, "subspace on {} qubits in an n={n} file", s.n());
        writeln!(out, "{}", format_subspace(s))?;
    }
    Ok(())
}

pub fn read_subspaces<R: BufRead>(reader: R) -> Result<(usize, Vec<Subspace>)> {
    let (n, lines) = content_lines(reader)?;
    let subs = lines
        .iter()
        .map(|(i, l)| parse_subspace(n, l).with_context(|| format!("line {i}")))
        .collect::<Result<_>>()?;
    Ok((n, subs))
}

pub fn format_outcome(o: &Outcome) -> String {
    let base = o.base().as_subspace();
    let bits: String = (0..base.dim()).map(|i| if o.values() >> i & 1 == 1 { '1' } else { '0' }).collect();
    format!("{} {}", format_subspace(base), if bits.is_empty() { "-".to_string() } else { bits })
}

/// Parses an outcome line. The basis rows may be any basis of the
/// measurement; the values are moved onto the canonical rows.
pub fn parse_outcome(n: usize, line: &str) -> Result<Outcome> {
    let (rows, bits) = line.trim().split_once(' ').ok_or_else(|| anyhow!("outcome line needs a bit string: {line:?}"))?;
    let bits = bits.trim();
    let sub = parse_subspace(n, rows)?;
    if sub.dim() == 0 {
        ensure!(bits == "-", "the zero measurement takes no values: {line:?}");
        return Ok(Outcome::trivial(n)?);
    }
    let base = Measurement::canonicalize(&sub.basis().collect::<Vec<_>>())?;
    let given: Vec<GF2Vector> = if rows.trim() == "-" {
        Vec::new()
    } else {
        rows.split(',').map(|t| GF2Vector::new(n, u64::from_str_radix(t.trim(), 16).expect("parsed above"))).collect::<pauli_core::Result<_>>()?
    };
    let values: Vec<bool> = if bits == "-" {
        Vec::new()
    } else {
        bits.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(anyhow!("bad bit {c:?} in {bits:?}")),
            })
            .collect::<Result<_>>()?
    };
    ensure!(values.len() == given.len(), "{} values for {} rows", values.len(), given.len());
    let dim = base.dim();
    for mask in 0..(1u32 << dim) {
        let cand = Outcome::new(base.clone(), mask)?;
        if given.iter().zip(&values).all(|(v, &b)| cand.eval(v).map(|e| e == b).unwrap_or(false)) {
            return Ok(cand);
        }
    }
    bail!("values {bits} do not define an outcome of the measurement")
}

pub fn write_outcomes<W: Write>(mut out: W, n: usize, outcomes: &[Outcome]) -> Result<()> {
    writeln!(out, "n={n}")?;
    for o in outcomes {
        writeln!(out, "{}", format_outcome(o))?;
    }
    Ok(())
}

pub fn read_outcomes<R: BufRead>(reader: R) -> Result<(usize, Vec<Outcome>)> {
    let (n, lines) = content_lines(reader)?;
    let outs = lines
        .iter()
        .map(|(i, l)| parse_outcome(n, l).with_context(|| format!("line {i}")))
        .collect::<Result<_>>()?;
    Ok((n, outs))
}

/// Position of `o` in the system: measurement index and outcome index.
pub fn locate(system: &MaximalSystem, o: &Outcome) -> Result<(usize, u16)> {
    ensure!(o.n() == system.n(), "outcome on {} qubits for an n={} system", o.n(), system.n());
    let x = system.index_of(o.base()).ok_or_else(|| anyhow!("{} is not a maximal measurement", format_subspace(o.base().as_subspace())))?;
    let k = (0..system.outcome_count()).find(|&k| system.outcome(x, k) == *o).expect("every outcome of a maximal measurement is listed");
    Ok((x, k as u16))
}

pub fn partial_outcomes(system: &MaximalSystem, f: &PartialAssignment) -> Vec<Outcome> {
    f.entries().iter().enumerate().filter_map(|(x, o)| o.map(|o| system.outcome(x, usize::from(o)))).collect()
}

pub fn contextual_outcomes(system: &MaximalSystem, f: &ContextualAssignment) -> Vec<Outcome> {
    f.outcomes().iter().enumerate().map(|(x, &o)| system.outcome(x, usize::from(o))).collect()
}

fn read_located<R: BufRead>(system: &MaximalSystem, reader: R) -> Result<Vec<Option<u16>>> {
    let (n, outs) = read_outcomes(reader)?;
    ensure!(n == system.n(), "certificate for n={n}, system has n={}", system.n());
    let mut entries = vec![None; system.len()];
    for o in &outs {
        let (x, k) = locate(system, o)?;
        ensure!(entries[x].is_none(), "measurement {} listed twice", format_subspace(o.base().as_subspace()));
        entries[x] = Some(k);
    }
    Ok(entries)
}

/// Reads a partial certificate, rejecting inconsistent pairs.
pub fn read_partial<R: BufRead>(system: &MaximalSystem, reader: R) -> Result<PartialAssignment> {
    let mut f = PartialAssignment::empty(system);
    for (x, k) in read_located(system, reader)?.into_iter().enumerate() {
        if let Some(k) = k {
            f.insert(system, x, k)?;
        }
    }
    Ok(f)
}

/// Reads a certificate that assigns every maximal measurement.
pub fn read_contextual<R: BufRead>(system: &MaximalSystem, reader: R) -> Result<ContextualAssignment> {
    let entries = read_located(system, reader)?;
    let defined = entries.iter().flatten().count();
    ensure!(defined == system.len(), "certificate assigns {defined} of {} measurements", system.len());
    Ok(ContextualAssignment::new(system, entries.into_iter().flatten().collect())?)
}

/// Adjacency list text: `id: neighbor ids`.
pub fn adjacency_text<P>(g: &LabeledGraph<P>) -> String {
    let mut s = String::new();
    for i in 0..g.order() {
        let nb: Vec<String> = g.neighbors(i).iter().map(u32::to_string).collect();
        writeln!(s, "{i}: {}", nb.join(" ")).expect("write to string");
    }
    s
}

pub fn parse_adjacency(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (id, rest) = line.split_once(':').ok_or_else(|| anyhow!("line {}: missing ':'", i + 1))?;
        let id: usize = id.trim().parse().with_context(|| format!("line {}", i + 1))?;
        ensure!(id == out.len(), "line {}: expected vertex {}, got {id}", i + 1, out.len());
        let nb = rest.split_whitespace().map(|t| t.parse::<u32>().with_context(|| format!("line {}", i + 1))).collect::<Result<_>>()?;
        out.push(nb);
    }
    Ok(out)
}

/// Sidecar for a graph on maximal measurements: `id: subspace`.
pub fn measurement_payload(system: &MaximalSystem, g: &LabeledGraph<u32>) -> String {
    let mut s = String::new();
    for (i, &x) in g.vertices().iter().enumerate() {
        writeln!(s, "{i}: {}", format_subspace(system.measurement(x as usize).as_subspace())).expect("write to string");
    }
    s
}

/// Sidecar for a graph on outcomes: `id: subspace bits`.
pub fn outcome_payload(system: &MaximalSystem, g: &LabeledGraph<OutcomeVertex>) -> String {
    let mut s = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let o = system.outcome(v.measurement as usize, usize::from(v.outcome));
        writeln!(s, "{i}: {}", format_outcome(&o)).expect("write to string");
    }
    s
}

/// `eigenvalue,multiplicity`, descending.
pub fn spectrum_csv(report: &SpectrumReport) -> String {
    multiplicity_csv(&report.multiplicities())
}

pub fn multiplicity_csv(pairs: &[(f64, usize)]) -> String {
    let mut s = String::from("eigenvalue,multiplicity\n");
    for (v, m) in pairs {
        writeln!(s, "{v},{m}").expect("write to string");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use pauli_core::gf2::enumerate_isotropic;
    use pauli_core::lattice::outcomes;

    #[test]
    fn subspace_round_trip() {
        for n in 1..=3 {
            for k in 0..=n {
                let subs: Vec<Subspace> = enumerate_isotropic(n, k).unwrap().into_iter().map(|s| s.into_subspace()).collect();
                let mut buf = Vec::new();
                write_subspaces(&mut buf, n, &subs).unwrap();
                let (m, back) = read_subspaces(buf.as_slice()).unwrap();
                assert_eq!((m, back), (n, subs));
            }
        }
    }

    #[test]
    fn zero_subspace_is_a_dash() {
        let z = Subspace::zero(2).unwrap();
        assert_eq!(format_subspace(&z), "-");
        assert_eq!(parse_subspace(2, "-").unwrap(), z);
        let o = Outcome::trivial(2).unwrap();
        assert_eq!(format_outcome(&o), "- -");
        assert_eq!(parse_outcome(2, "- -").unwrap(), o);
    }

    #[test]
    fn hex_rows() {
        let s = parse_subspace(2, "c,3").unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(format_subspace(&s), "c,3");
        assert!(parse_subspace(2, "1,1").is_err());
        assert!(parse_subspace(2, "g").is_err());
        assert!(parse_subspace(1, "10").is_err());
    }

    #[test]
    fn outcome_round_trip() {
        let sys = MaximalSystem::new(2).unwrap();
        for x in 0..sys.len() {
            for o in outcomes(sys.measurement(x)).unwrap() {
                let line = format_outcome(&o);
                assert_eq!(parse_outcome(2, &line).unwrap(), o, "{line}");
                assert_eq!(sys.outcome(x, locate(&sys, &o).unwrap().1 as usize), o);
            }
        }
    }

    #[test]
    fn outcome_on_another_basis() {
        // XX and ZZ, then the same outcome written on the basis XX, YY.
        let a = parse_outcome(2, "c,3 01").unwrap();
        let b = parse_outcome(2, "c,f 01").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.base(), b.base());
        let yy: GF2Vector = "11|11".parse().unwrap();
        assert_eq!(a.eval(&yy).unwrap(), b.eval(&yy).unwrap());
        assert!(parse_outcome(2, "c,3 0").is_err());
        assert!(parse_outcome(2, "c,3").is_err());
    }

    #[test]
    fn adjacency_round_trip() {
        let g = LabeledGraph::from_predicate(vec![0u32, 1, 2, 3], |a, b| (a + b) % 2 == 1);
        let text = adjacency_text(&g);
        assert!(text.starts_with("0: 1 3\n"));
        assert_eq!(parse_adjacency(&text).unwrap(), g.adjacency_lists());
        assert!(parse_adjacency("1: 0\n").is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let sys = MaximalSystem::new(2).unwrap();
        let f = ContextualAssignment::new(&sys, (0..15).map(|i| (i % 4) as u16).collect()).unwrap();
        let mut buf = Vec::new();
        write_outcomes(&mut buf, 2, &contextual_outcomes(&sys, &f)).unwrap();
        assert_eq!(read_contextual(&sys, buf.as_slice()).unwrap(), f);
        let mut p = PartialAssignment::empty(&sys);
        p.insert(&sys, 3, 1).unwrap();
        let mut buf = Vec::new();
        write_outcomes(&mut buf, 2, &partial_outcomes(&sys, &p)).unwrap();
        assert_eq!(read_partial(&sys, buf.as_slice()).unwrap(), p);
        assert!(read_contextual(&sys, buf.as_slice()).is_err());
    }
}
