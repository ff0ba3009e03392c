use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::MaximalSystem;

/// A partial function from maximal measurements to outcomes whose image is
/// pairwise consistent. Entries are outcome indices of a [`MaximalSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    n: usize,
    entries: Vec<Option<u16>>,
}

impl PartialAssignment {
    pub fn empty(system: &MaximalSystem) -> Self {
        Self { n: system.n(), entries: vec![None; system.len()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Option<u16>] {
        &self.entries
    }

    pub fn get(&self, x: usize) -> Option<u16> {
        self.entries.get(x).copied().flatten()
    }

    /// Sets `f(x) = o` after checking consistency with every defined entry.
    pub fn insert(&mut self, system: &MaximalSystem, x: usize, o: u16) -> Result<()> {
        if x >= self.entries.len() || usize::from(o) >= system.outcome_count() {
            return Err(Error::VertexOutOfRange { index: x, len: self.entries.len() });
        }
        for (y, e) in self.entries.iter().enumerate() {
            if let Some(b) = *e {
                if y != x && !system.consistent(x, usize::from(o), y, usize::from(b)) {
                    return Err(Error::InvalidArgument(alloc::format!("outcome {o} of {x} conflicts with {b} of {y}")));
                }
            }
        }
        self.entries[x] = Some(o);
        Ok(())
    }

    pub fn defined(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    /// `|Dom f| / |ℒⁿ_n|`.
    pub fn pval(&self) -> Ratio<u64> {
        Ratio::new(self.defined() as u64, self.entries.len().max(1) as u64)
    }

    /// Re-checks pairwise consistency through the subspace-level outcome
    /// API, independently of the system's precomputed tables.
    pub fn validate(&self, system: &MaximalSystem) -> bool {
        let defined: Vec<(usize, u16)> = self.entries.iter().enumerate().filter_map(|(x, e)| e.map(|o| (x, o))).collect();
        let outs: Vec<_> = defined.iter().map(|&(x, o)| system.outcome(x, usize::from(o))).collect();
        for i in 0..outs.len() {
            for j in i + 1..outs.len() {
                if !outs[i].consistent(&outs[j]).unwrap_or(false) {
                    return false;
                }
            }
        }
        self.entries.len() == system.len()
    }

    /// Vertices of `S_n` (index `x·2ⁿ + o`) in the image.
    pub fn to_vertices(&self) -> Vec<u32> {
        let per = 1u32 << self.n;
        self.entries.iter().enumerate().filter_map(|(x, e)| e.map(|o| x as u32 * per + u32::from(o))).collect()
    }

    /// Inverse of [`Self::to_vertices`]; rejects two outcomes for one measurement.
    pub fn from_vertices(system: &MaximalSystem, vertices: &[u32]) -> Result<Self> {
        let per = system.outcome_count() as u32;
        let mut f = Self::empty(system);
        for &v in vertices {
            let (x, o) = ((v / per) as usize, (v % per) as u16);
            if x >= f.entries.len() {
                return Err(Error::VertexOutOfRange { index: x, len: f.entries.len() });
            }
            if f.entries[x].is_some() {
                return Err(Error::InvalidArgument(alloc::format!("two outcomes for measurement {x}")));
            }
            f.entries[x] = Some(o);
        }
        Ok(f)
    }
}

/// A total assignment of outcomes to maximal measurements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextualAssignment {
    n: usize,
    outcomes: Vec<u16>,
}

impl ContextualAssignment {
    pub fn new(system: &MaximalSystem, outcomes: Vec<u16>) -> Result<Self> {
        if outcomes.len() != system.len() {
            return Err(Error::DimensionMismatch { left: outcomes.len(), right: system.len() });
        }
        if let Some(&o) = outcomes.iter().find(|&&o| usize::from(o) >= system.outcome_count()) {
            return Err(Error::InvalidArgument(alloc::format!("outcome index {o} out of range")));
        }
        Ok(Self { n: system.n(), outcomes })
    }

    pub fn constant(system: &MaximalSystem, o: u16) -> Result<Self> {
        Self::new(system, vec![o; system.len()])
    }

    pub fn random<R: Rng + ?Sized>(system: &MaximalSystem, rng: &mut R) -> Self {
        let per = system.outcome_count() as u16;
        Self { n: system.n(), outcomes: (0..system.len()).map(|_| rng.gen_range(0..per)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize) -> u16 {
        self.outcomes[x]
    }

    pub fn outcomes(&self) -> &[u16] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub(crate) fn set(&mut self, x: usize, o: u16) {
        self.outcomes[x] = o;
    }
}

/// A solver certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Partial(PartialAssignment),
    Contextual(ContextualAssignment),
    IndependentSet(Vec<u32>),
    None,
}

/// Result of an optimization with proven bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub problem: String,
    pub n: usize,
    pub lower: Ratio<u64>,
    pub upper: Ratio<u64>,
    pub certificate: Certificate,
    pub nodes: u64,
    /// Whether the search finished, so the certificate is optimal.
    pub proof_closed: bool,
}

impl SolveReport {
    pub fn optimum(&self) -> Option<Ratio<u64>> {
        (self.proof_closed && self.lower == self.upper).then_some(self.lower)
    }

    pub fn bounds_ordered(&self) -> bool {
        self.lower <= self.upper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_checks_consistency() {
        let sys = MaximalSystem::new(2).unwrap();
        let mut f = PartialAssignment::empty(&sys);
        f.insert(&sys, 0, 0).unwrap();
        let y = (1..sys.len()).find(|&y| sys.distance(0, y) == 1).unwrap();
        let bad = (0..4u16).find(|&b| !sys.consistent(0, 0, y, usize::from(b))).unwrap();
        assert!(f.insert(&sys, y, bad).is_err());
        let good = (0..4u16).find(|&b| sys.consistent(0, 0, y, usize::from(b))).unwrap();
        f.insert(&sys, y, good).unwrap();
        assert!(f.validate(&sys));
        assert_eq!(f.pval(), Ratio::new(2, 15));
        let round = PartialAssignment::from_vertices(&sys, &f.to_vertices()).unwrap();
        assert_eq!(round, f);
    }

    #[test]
    fn contextual_bounds() {
        let sys = MaximalSystem::new(1).unwrap();
        assert!(ContextualAssignment::new(&sys, vec![0, 1]).is_err());
        assert!(ContextualAssignment::new(&sys, vec![0, 1, 2]).is_err());
        assert_eq!(ContextualAssignment::constant(&sys, 1).unwrap().outcomes(), &[1, 1, 1]);
    }
}
