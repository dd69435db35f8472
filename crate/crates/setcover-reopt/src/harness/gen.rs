//! Seeded, reproducible instance and graph generation.
//!
//! The PRNG is SplitMix64 (Steele/Lea/Flood), fixed here as part of the
//! format contract so golden files survive reimplementation in any
//! language: state advances by 0x9E3779B97F4A7C15 and the output is the
//! standard two-round xor-shift-multiply mix.
//!
//! Draw order is part of the contract too: set membership first (sets
//! outer, elements inner, one draw per pair, member iff
//! `draw < density * 2^64`), then one weight per set in set order
//! (denominator `1 + next % 4`, then a uniform numerator in the scaled
//! range), then one draw per initially uncovered element (in element
//! order) to patch it into a random set.
//!
//! ```
//! use setcover_reopt::harness::{generate, GenSpec};
//!
//! let spec = GenSpec::unweighted(42, 6, 8, 0.4);
//! assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
//! ```

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{ElementId, Instance, NamedSet, SetName};
use crate::rational::Rational;
use std::collections::BTreeSet;

/// SplitMix64; the fixed generator behind every seeded artifact.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `[0, n)` by modulo; the bias is irrelevant at
    /// the desk scales this harness runs at.
    pub fn next_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn chance(&mut self, threshold: u128) -> bool {
        (self.next_u64() as u128) < threshold
    }
}

/// Membership threshold for a probability in (0, 1].
pub fn density_threshold(p: f64) -> u128 {
    (p * 18_446_744_073_709_551_616.0) as u128 // p * 2^64
}

/// Parameters of a generated instance.
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub seed: u64,
    pub n_elements: u32,
    pub n_sets: u32,
    /// Per (set, element) membership probability, in (0, 1].
    pub density: f64,
    /// Weight interval; `None` generates an unweighted instance.
    pub weights: Option<(Rational, Rational)>,
    /// Keep only the first set of each extent.
    pub dedup_extents: bool,
}

impl GenSpec {
    pub fn unweighted(seed: u64, n_elements: u32, n_sets: u32, density: f64) -> GenSpec {
        GenSpec { seed, n_elements, n_sets, density, weights: None, dedup_extents: false }
    }

    pub fn weighted(
        seed: u64,
        n_elements: u32,
        n_sets: u32,
        density: f64,
        lo: Rational,
        hi: Rational,
    ) -> GenSpec {
        GenSpec { seed, n_elements, n_sets, density, weights: Some((lo, hi)), dedup_extents: false }
    }

    pub fn with_seed(&self, seed: u64) -> GenSpec {
        GenSpec { seed, ..self.clone() }
    }

    fn check(&self) -> Result<()> {
        if self.n_elements == 0 || self.n_sets == 0 {
            return Err(Error::Precondition("need at least one element and one set".into()));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::Precondition(format!("density {} outside (0, 1]", self.density)));
        }
        if let Some((lo, hi)) = &self.weights {
            if lo > hi {
                return Err(Error::Precondition(format!("empty weight range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }
}

fn pad_width(n: u32) -> usize {
    (n.max(1).ilog10() as usize + 1).max(2)
}

/// Generate a valid instance; identical specs give identical instances on
/// every platform.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.check()?;
    let n = spec.n_elements as usize;
    let m = spec.n_sets as usize;
    let ew = pad_width(spec.n_elements);
    let sw = pad_width(spec.n_sets);
    let elements: Vec<ElementId> = (1..=n)
        .map(|i| ElementId::new(format!("e{i:0ew$}")))
        .collect::<Result<_>>()?;
    let names: Vec<SetName> = (1..=m)
        .map(|j| SetName::new(format!("s{j:0sw$}")))
        .collect::<Result<_>>()?;

    let mut rng = SplitMix64::new(spec.seed);
    let threshold = density_threshold(spec.density);
    let mut extents: Vec<BTreeSet<ElementId>> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut extent = BTreeSet::new();
        for e in &elements {
            if rng.chance(threshold) {
                extent.insert(e.clone());
            }
        }
        extents.push(extent);
    }

    let weights: Vec<Rational> = match &spec.weights {
        None => vec![Rational::ONE; m],
        Some((lo, hi)) => (0..m)
            .map(|_| {
                let den = 1 + rng.next_below(4);
                let lo_n = (lo.numer() as u128 * den as u128).div_ceil(lo.denom() as u128);
                let hi_n = hi.numer() as u128 * den as u128 / hi.denom() as u128;
                if lo_n > hi_n {
                    Ok(*lo)
                } else {
                    let span = (hi_n - lo_n + 1) as u64;
                    Rational::new(lo_n as u64 + rng.next_below(span), den)
                }
            })
            .collect::<Result<_>>()?,
    };

    // patch uncovered elements into a random set
    for e in &elements {
        if !extents.iter().any(|x| x.contains(e)) {
            let j = rng.next_below(m as u64) as usize;
            extents[j].insert(e.clone());
        }
    }

    let mut family: Vec<NamedSet> = names
        .into_iter()
        .zip(extents)
        .zip(weights)
        .map(|((name, extent), weight)| NamedSet::new(name, extent, weight))
        .collect();
    if spec.dedup_extents {
        let mut seen: BTreeSet<BTreeSet<ElementId>> = BTreeSet::new();
        family.retain(|s| seen.insert(s.extent.clone()));
    }
    Instance::new(elements, family, spec.weights.is_some())
}

/// Generate a simple graph on `v1..vn`, each pair (outer index lower)
/// independently an edge with probability `p`.
pub fn generate_graph(seed: u64, n: u32, p: f64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Precondition("need at least one vertex".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Precondition(format!("edge probability {p} outside (0, 1]")));
    }
    let w = pad_width(n);
    let vertices: Vec<ElementId> = (1..=n)
        .map(|i| ElementId::new(format!("v{i:0w$}")))
        .collect::<Result<_>>()?;
    let mut rng = SplitMix64::new(seed);
    let threshold = density_threshold(p);
    let mut edges = Vec::new();
    for i in 0..n as usize {
        for j in i + 1..n as usize {
            if rng.chance(threshold) {
                edges.push((vertices[i].clone(), vertices[j].clone()));
            }
        }
    }
    Graph::new(vertices, edges)
}
