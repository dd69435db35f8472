//! The four local modifications — add/remove a set, add/remove a universe
//! element — as validated, invertible instance transformations, plus the
//! reoptimization triple (old instance, quality solution, modified instance).
//!
//! Element modifications rewrite extents while preserving set names and
//! weights, which is exactly the weight transport the removal/addition
//! semantics require (`w'(s) = w(s \ {e})` and its case-split counterpart).
//!
//! ```
//! use setcover_reopt::{format, modifications};
//!
//! let inst = format::parse_instance(
//!     "universe: a b\nset s1: a b\nset s2: b\n",
//! ).unwrap();
//! let m = format::parse_modification("rm-elem b\n").unwrap();
//! let forward = modifications::apply(&inst, &m).unwrap();
//! let undo = modifications::inverse(&m, &inst).unwrap();
//! assert_eq!(format::print_modification(&undo), "add-elem b into: s1 s2\n");
//! assert_eq!(modifications::apply(&forward, &undo).unwrap(), inst);
//! ```

use crate::error::{Error, Result};
use crate::model::{
    is_cover, validate, ElementId, Instance, NamedSet, SetName, Solution, Violation,
};
use crate::rational::Rational;
use crate::solvers::solve_exact;
use std::collections::BTreeSet;
use std::fmt;

/// Auto-verification limits for quality claims: within this scale the exact
/// solver confirms `value <= rho * OPT`, beyond it the claim is recorded.
pub const ORACLE_MAX_ELEMENTS: usize = 24;
pub const ORACLE_MAX_SETS: usize = 24;

pub fn within_oracle_scale(inst: &Instance) -> bool {
    inst.num_elements() <= ORACLE_MAX_ELEMENTS && inst.num_sets() <= ORACLE_MAX_SETS
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modification {
    /// Add a fresh set: the extent must be a subset of the universe and may
    /// not duplicate an existing extent.
    AddSet {
        name: SetName,
        extent: BTreeSet<ElementId>,
        weight: Rational,
    },
    /// Remove a set; rejected if some element would become uncoverable.
    RemoveSet { name: SetName },
    /// Add a fresh element to the universe and to every set in `into`.
    AddElement {
        element: ElementId,
        into: BTreeSet<SetName>,
    },
    /// Remove an element from the universe and from every extent.
    RemoveElement { element: ElementId },
}

impl fmt::Display for Modification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modification::AddSet { name, .. } => write!(f, "add-set {name}"),
            Modification::RemoveSet { name } => write!(f, "rm-set {name}"),
            Modification::AddElement { element, .. } => write!(f, "add-elem {element}"),
            Modification::RemoveElement { element } => write!(f, "rm-elem {element}"),
        }
    }
}

/// Apply a modification, permissively (extensional duplicates warn).
pub fn apply(inst: &Instance, m: &Modification) -> Result<Instance> {
    apply_with(inst, m, false).map(|(inst, _)| inst)
}

/// Apply a modification; in strict mode a result with duplicate extents is
/// an error, otherwise the duplicates are returned as warnings.
pub fn apply_with(inst: &Instance, m: &Modification, strict: bool) -> Result<(Instance, Vec<Violation>)> {
    let result = match m {
        Modification::AddSet { name, extent, weight } => {
            if inst.set(name).is_some() {
                return Err(Error::Precondition(format!("set {name} already exists")));
            }
            if let Some(e) = extent.iter().find(|e| !inst.contains_element(e)) {
                return Err(Error::Precondition(format!(
                    "added set must be a subset of the universe; {e} is not an element"
                )));
            }
            if let Some(dup) = inst.family().iter().find(|s| s.extent == *extent) {
                return Err(Error::Precondition(format!(
                    "a set with identical extent already exists ({})",
                    dup.name
                )));
            }
            if !inst.weighted() && !weight.is_one() {
                return Err(Error::Precondition(format!(
                    "cannot add weight {weight} to an unweighted instance"
                )));
            }
            let mut family: Vec<NamedSet> = inst.family().to_vec();
            family.push(NamedSet::new(name.clone(), extent.clone(), *weight));
            Instance::new_unchecked(inst.universe().to_vec(), family, inst.weighted())
        }
        Modification::RemoveSet { name } => {
            if inst.set(name).is_none() {
                return Err(Error::UnknownSet(name.to_string()));
            }
            let family: Vec<NamedSet> = inst
                .family()
                .iter()
                .filter(|s| s.name != *name)
                .cloned()
                .collect();
            let covered: BTreeSet<&ElementId> = family.iter().flat_map(|s| s.extent.iter()).collect();
            if let Some(e) = inst.universe().iter().find(|e| !covered.contains(e)) {
                return Err(Error::Infeasible(format!(
                    "removing {name} leaves element {e} uncovered"
                )));
            }
            Instance::new_unchecked(inst.universe().to_vec(), family, inst.weighted())
        }
        Modification::AddElement { element, into } => {
            if inst.contains_element(element) {
                return Err(Error::Precondition(format!("element {element} already exists")));
            }
            if into.is_empty() {
                return Err(Error::Precondition(
                    "an added element must be placed into at least one set".into(),
                ));
            }
            for name in into {
                if inst.set(name).is_none() {
                    return Err(Error::UnknownSet(name.to_string()));
                }
            }
            let mut universe = inst.universe().to_vec();
            universe.push(element.clone());
            let family: Vec<NamedSet> = inst
                .family()
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    if into.contains(&s.name) {
                        s.extent.insert(element.clone());
                    }
                    s
                })
                .collect();
            Instance::new_unchecked(universe, family, inst.weighted())
        }
        Modification::RemoveElement { element } => {
            if !inst.contains_element(element) {
                return Err(Error::UnknownElement(element.to_string()));
            }
            let universe: Vec<ElementId> = inst
                .universe()
                .iter()
                .filter(|e| *e != element)
                .cloned()
                .collect();
            let family: Vec<NamedSet> = inst
                .family()
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    s.extent.remove(element);
                    s
                })
                .collect();
            Instance::new_unchecked(universe, family, inst.weighted())
        }
    };

    let report = validate(&result, strict);
    if let Some(v) = report.first() {
        return Err(Error::InvalidInstance(format!("{m} produced an invalid instance: {v}")));
    }
    Ok((result, report.warnings))
}

/// The modification undoing `m` against the instance it applies to.
pub fn inverse(m: &Modification, ctx: &Instance) -> Result<Modification> {
    match m {
        Modification::AddSet { name, .. } => Ok(Modification::RemoveSet { name: name.clone() }),
        Modification::RemoveSet { name } => {
            let set = ctx
                .set(name)
                .ok_or_else(|| Error::UnknownSet(name.to_string()))?;
            Ok(Modification::AddSet {
                name: set.name.clone(),
                extent: set.extent.clone(),
                weight: set.weight,
            })
        }
        Modification::AddElement { element, .. } => {
            Ok(Modification::RemoveElement { element: element.clone() })
        }
        Modification::RemoveElement { element } => {
            if !ctx.contains_element(element) {
                return Err(Error::UnknownElement(element.to_string()));
            }
            let into: BTreeSet<SetName> = ctx
                .family()
                .iter()
                .filter(|s| s.extent.contains(element))
                .map(|s| s.name.clone())
                .collect();
            Ok(Modification::AddElement { element: element.clone(), into })
        }
    }
}

/// Whether a quality claim was confirmed by the oracle or merely recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QualityStatus {
    Verified,
    Claimed,
}

/// A reoptimization instance: the old instance with a rho-quality solution,
/// a modification, and the derived modified instance.
#[derive(Clone, Debug)]
pub struct ReoptInstance {
    pub old: Instance,
    pub old_solution: Solution,
    pub rho: Rational,
    pub modification: Modification,
    pub new: Instance,
    pub quality: QualityStatus,
}

impl ReoptInstance {
    /// Assemble without consulting the oracle; the quality promise is
    /// recorded as a claim.  Cover feasibility and `rho >= 1` still hold.
    pub fn assemble_claimed(
        old: Instance,
        chosen: BTreeSet<SetName>,
        rho: Rational,
        modification: Modification,
    ) -> Result<ReoptInstance> {
        if rho < Rational::ONE {
            return Err(Error::Precondition(format!("rho = {rho} is below 1")));
        }
        let old_solution = Solution::new(&old, chosen)?;
        if !is_cover(&old, &old_solution)? {
            return Err(Error::Infeasible("the given solution does not cover the old instance".into()));
        }
        let new = apply(&old, &modification)?;
        Ok(ReoptInstance {
            old,
            old_solution,
            rho,
            modification,
            new,
            quality: QualityStatus::Claimed,
        })
    }
}

/// Assemble a reoptimization instance and verify the quality promise
/// `value(solution) <= rho * OPT(old)` with the exact solver when the old
/// instance is within oracle scale; otherwise record it as a claim.
pub fn make_reopt(
    old: Instance,
    chosen: BTreeSet<SetName>,
    rho: Rational,
    modification: Modification,
) -> Result<ReoptInstance> {
    let mut r = ReoptInstance::assemble_claimed(old, chosen, rho, modification)?;
    if within_oracle_scale(&r.old) {
        let opt = solve_exact(&r.old)?.value();
        let bound = r.rho.mul(&opt)?;
        if r.old_solution.value() > bound {
            return Err(Error::QualityRefuted(format!(
                "value {} exceeds rho * OPT = {} * {} = {}",
                r.old_solution.value(),
                r.rho,
                opt,
                bound
            )));
        }
        r.quality = QualityStatus::Verified;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{elem, sname};
    use crate::testutil::{triangle, unit_instance};

    #[test]
    fn add_set_duplicate_extent_rejected() {
        let inst = unit_instance(&["a"], &[("s1", &["a"])]);
        let m = Modification::AddSet {
            name: sname("s2"),
            extent: [elem("a")].into(),
            weight: Rational::ZERO,
        };
        // duplicate extent precondition fires before the weight check
        assert!(matches!(apply(&inst, &m), Err(Error::Precondition(_))));
    }

    #[test]
    fn remove_element_from_everything() {
        let inst = unit_instance(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["b"])]);
        let out = apply(&inst, &Modification::RemoveElement { element: elem("b") }).unwrap();
        assert_eq!(out.universe(), &[elem("a")]);
        assert_eq!(out.set(&sname("s1")).unwrap().extent, [elem("a")].into());
        assert!(out.set(&sname("s2")).unwrap().extent.is_empty());
    }

    #[test]
    fn add_element_transports_weights_by_name() {
        let inst = unit_instance(&["a"], &[("s1", &["a"]), ("s2", &["a"])]);
        let m = Modification::AddElement { element: elem("e"), into: [sname("s2")].into() };
        let out = apply(&inst, &m).unwrap();
        let s2 = out.set(&sname("s2")).unwrap();
        assert_eq!(s2.extent, [elem("a"), elem("e")].into());
        assert_eq!(s2.weight, Rational::ONE);
        assert_eq!(out.set(&sname("s1")).unwrap().extent, [elem("a")].into());
    }

    #[test]
    fn remove_set_must_keep_feasibility() {
        let inst = unit_instance(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["b"])]);
        assert!(apply(&inst, &Modification::RemoveSet { name: sname("s2") }).is_ok());
        let err = apply(&inst, &Modification::RemoveSet { name: sname("s1") }).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn inverses() {
        let inst = unit_instance(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["b"])]);
        let add = Modification::AddSet {
            name: sname("s3"),
            extent: [elem("a")].into(),
            weight: Rational::ONE,
        };
        assert_eq!(
            inverse(&add, &inst).unwrap(),
            Modification::RemoveSet { name: sname("s3") }
        );
        let add_e = Modification::AddElement { element: elem("e"), into: [sname("s1")].into() };
        assert_eq!(
            inverse(&add_e, &inst).unwrap(),
            Modification::RemoveElement { element: elem("e") }
        );
        let rm_e = Modification::RemoveElement { element: elem("b") };
        assert_eq!(
            inverse(&rm_e, &inst).unwrap(),
            Modification::AddElement { element: elem("b"), into: [sname("s1"), sname("s2")].into() }
        );
    }

    #[test]
    fn roundtrip_identity() {
        let inst = unit_instance(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["b"])]);
        for m in [
            Modification::AddSet { name: sname("s3"), extent: [elem("a")].into(), weight: Rational::ONE },
            Modification::AddElement { element: elem("e"), into: [sname("s2")].into() },
            Modification::RemoveElement { element: elem("a") },
            Modification::RemoveSet { name: sname("s2") },
        ] {
            let forward = apply(&inst, &m).unwrap();
            let back = apply(&forward, &inverse(&m, &inst).unwrap()).unwrap();
            assert_eq!(back, inst, "round trip failed for {m}");
        }
    }

    #[test]
    fn quality_checked_at_oracle_scale() {
        let inst = triangle();
        let all: BTreeSet<SetName> = inst.set_names().cloned().collect();
        let m = Modification::RemoveElement { element: elem("1") };
        // value 3 on OPT 2 refutes rho = 1 but passes rho = 3/2
        let err = make_reopt(inst.clone(), all.clone(), Rational::ONE, m.clone()).unwrap_err();
        assert!(matches!(err, Error::QualityRefuted(_)));
        let ok = make_reopt(inst.clone(), all, Rational::new(3, 2).unwrap(), m.clone()).unwrap();
        assert_eq!(ok.quality, QualityStatus::Verified);
        // an optimal solution is accepted at rho = 1
        let opt = crate::solvers::solve_exact(&inst).unwrap();
        let ok = make_reopt(inst, opt.chosen().clone(), Rational::ONE, m).unwrap();
        assert_eq!(ok.quality, QualityStatus::Verified);
    }

    #[test]
    fn removal_keeps_old_solutions_covering() {
        // extents only shrink with the universe, so any old cover's names
        // still cover the modified instance
        use crate::harness::{generate, GenSpec};
        use crate::model::{is_cover, Solution};
        for seed in 0..30u64 {
            let inst = generate(&GenSpec::unweighted(seed, 7, 9, 0.4)).unwrap();
            let sol = crate::solvers::greedy(&inst).unwrap();
            for e in inst.universe() {
                let out = apply(&inst, &Modification::RemoveElement { element: e.clone() }).unwrap();
                let restricted = Solution::new(&out, sol.chosen().clone()).unwrap();
                assert!(is_cover(&out, &restricted).unwrap(), "seed {seed} element {e}");
            }
        }
    }

    #[test]
    fn addition_preserves_solution_values() {
        // the weight transport keeps every named selection at its old value
        use crate::harness::{generate, GenSpec, SplitMix64};
        use crate::model::Solution;
        let mut rng = SplitMix64::new(17);
        for seed in 0..30u64 {
            let inst = generate(&GenSpec::weighted(
                seed,
                6,
                8,
                0.45,
                Rational::new(1, 2).unwrap(),
                Rational::from_int(3),
            ))
            .unwrap();
            let names: Vec<SetName> = inst.set_names().cloned().collect();
            let into: BTreeSet<SetName> =
                [names[rng.next_u64() as usize % names.len()].clone()].into();
            let m = Modification::AddElement { element: elem("_x"), into };
            let out = apply(&inst, &m).unwrap();
            let any: BTreeSet<SetName> =
                names.iter().filter(|_| rng.next_u64().is_multiple_of(2)).cloned().collect();
            let before = Solution::new(&inst, any.clone()).unwrap();
            let after = Solution::new(&out, any).unwrap();
            assert_eq!(before.value(), after.value(), "seed {seed}");
        }
    }

    #[test]
    fn strict_mode_rejects_extensional_merge() {
        // removing b makes s1 and s2 extensionally equal
        let inst = unit_instance(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["a"])]);
        let m = Modification::RemoveElement { element: elem("b") };
        let (out, warnings) = apply_with(&inst, &m, false).unwrap();
        assert_eq!(out.num_sets(), 2);
        assert_eq!(warnings.len(), 1);
        assert!(apply_with(&inst, &m, true).is_err());
    }
}
