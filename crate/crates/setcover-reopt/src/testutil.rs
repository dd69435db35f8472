//! Test-only helpers: tiny instance builders and an exhaustive brute-force
//! oracle kept deliberately independent of the branch-and-bound solver.

use crate::model::{elem, sname, ElementId, Instance, NamedSet, SetName, Solution};
use crate::rational::Rational;
use std::collections::BTreeSet;

pub fn unit_instance(universe: &[&str], sets: &[(&str, &[&str])]) -> Instance {
    Instance::new(
        universe.iter().map(|e| elem(e)),
        sets.iter()
            .map(|(n, ext)| NamedSet::unit(sname(n), ext.iter().map(|e| elem(e)).collect())),
        false,
    )
    .expect("test instance must be valid")
}

pub fn weighted_instance(universe: &[&str], sets: &[(&str, &[&str], &str)]) -> Instance {
    Instance::new(
        universe.iter().map(|e| elem(e)),
        sets.iter().map(|(n, ext, w)| {
            NamedSet::new(
                sname(n),
                ext.iter().map(|e| elem(e)).collect(),
                w.parse().expect("weight"),
            )
        }),
        true,
    )
    .expect("test instance must be valid")
}

/// Three elements, three pair sets; OPT = 2.
pub fn triangle() -> Instance {
    unit_instance(
        &["1", "2", "3"],
        &[("s12", &["1", "2"]), ("s23", &["2", "3"]), ("s13", &["1", "3"])],
    )
}

/// Minimum cover value by enumerating all 2^m subsets.  Independent of the
/// branch-and-bound path in `solvers`.
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

/// All optimal covers by enumeration, as sorted name sets.
pub fn brute_force_optima(inst: &Instance) -> Vec<BTreeSet<SetName>> {
    let opt = match brute_force_optimum(inst) {
        Some(v) => v,
        None => return Vec::new(),
    };
    let m = inst.num_sets();
    let universe: BTreeSet<&ElementId> = inst.universe().iter().collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << m) {
        let mut covered: BTreeSet<&ElementId> = BTreeSet::new();
        let mut value = Rational::ZERO;
        let mut names = BTreeSet::new();
        for (i, set) in inst.family().iter().enumerate() {
            if bits & (1 << i) != 0 {
                covered.extend(set.extent.iter());
                value = value.add(&set.weight).expect("oracle value");
                names.insert(set.name.clone());
            }
        }
        if covered.is_superset(&universe) && value == opt {
            out.push(names);
        }
    }
    out
}

/// Smallest dominating set size by enumerating vertex subsets.
pub fn brute_force_domset(g: &crate::graph::Graph) -> Option<usize> {
    let n = g.num_vertices();
    assert!(n <= 16, "brute force domset oracle is for tiny graphs");
    let vs = g.vertices();
    let mut best: Option<usize> = None;
    for bits in 0u32..(1 << n) {
        let set: BTreeSet<ElementId> = (0..n)
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| vs[i].clone())
            .collect();
        if g.is_dominating(&set) {
            let size = set.len();
            best = Some(best.map_or(size, |b: usize| b.min(size)));
        }
    }
    best
}

pub fn solution(inst: &Instance, names: &[&str]) -> Solution {
    Solution::new(inst, names.iter().map(|n| sname(n)).collect()).expect("solution binds")
}
