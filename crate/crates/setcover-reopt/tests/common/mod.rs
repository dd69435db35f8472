//! Shared helpers for integration tests: an exhaustive brute-force oracle
//! (independent of the branch-and-bound solver) and retrying generators.

#![allow(dead_code)]

use setcover_reopt::harness::{generate, GenSpec};
use setcover_reopt::{ElementId, Instance, Rational};
use std::collections::BTreeSet;

/// Minimum cover value by enumerating all 2^m subsets.
pub fn brute_force_optimum(inst: &Instance) -> Option<Rational> {
    let m = inst.num_sets();
    assert!(m <= 20, "brute force oracle is for tiny instances");
    let universe: BTreeSet<&ElementId> = inst.universe().iter().collect();
    let mut best: Option<Rational> = None;
    for bits in 0u32..(1 << m) {
        let mut covered: BTreeSet<&ElementId> = BTreeSet::new();
        let mut value = Rational::ZERO;
        for (i, set) in inst.family().iter().enumerate() {
            if bits & (1 << i) != 0 {
                covered.extend(set.extent.iter());
                value = value.add(&set.weight).expect("oracle value");
            }
        }
        if covered.is_superset(&universe) {
            best = Some(match best {
                None => value,
                Some(b) => b.min(value),
            });
        }
    }
    best
}

/// Smallest dominating set size by enumerating vertex subsets.
pub fn brute_force_domset(g: &setcover_reopt::Graph) -> Option<usize> {
    let n = g.num_vertices();
    assert!(n <= 16);
    let vs = g.vertices();
    let mut best: Option<usize> = None;
    for bits in 0u32..(1 << n) {
        let set: BTreeSet<ElementId> = (0..n)
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| vs[i].clone())
            .collect();
        if g.is_dominating(&set) {
            best = Some(best.map_or(set.len(), |b: usize| b.min(set.len())));
        }
    }
    best
}

/// Generate with derived retry seeds until `pred` accepts the instance.
pub fn generate_where(spec: &GenSpec, pred: impl Fn(&Instance) -> bool) -> Instance {
    for retry in 0u64..500 {
        let seed = spec.seed.wrapping_add(retry.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let inst = generate(&spec.with_seed(seed)).expect("generation");
        if pred(&inst) {
            return inst;
        }
    }
    panic!("no generated instance satisfied the predicate for seed {}", spec.seed);
}

/// Sources suitable for the duplicate-cover gadgets: some set of size >= 2.
pub fn has_big_set(inst: &Instance) -> bool {
    inst.family().iter().any(|s| s.extent.len() >= 2)
}

/// Sources suitable for the full-set gadget: nothing covers everything.
pub fn has_no_full_set(inst: &Instance) -> bool {
    inst.family().iter().all(|s| s.extent.len() < inst.num_elements())
}
