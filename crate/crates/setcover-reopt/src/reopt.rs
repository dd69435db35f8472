//! Reoptimization algorithms.
//!
//! * [`repair_add_element`] — keep the old solution and, if the fresh
//!   element is uncovered, add one cheapest set containing it.  With a
//!   rho-quality old solution this is a (1 + rho)-approximation.
//! * [`ptas_case_distinction`] — the unweighted element-change scheme:
//!   either the optimum is small and a bounded search solves the modified
//!   instance exactly, or it is large and the repaired/unchanged old
//!   solution is already within 1 + epsilon.
//! * [`eptas_fpt_driver`] — walks a chain of singly-modified instances,
//!   invoking a reoptimization routine with accuracy `1/(f(k)+1)` at every
//!   step; if all step optima stay at most `f(k)`, integrality forces every
//!   step to be exact, turning the routine into a decision procedure.
//!
//! ```
//! use setcover_reopt::{format, Rational};
//! use setcover_reopt::modifications::make_reopt;
//! use setcover_reopt::reopt::repair_add_element;
//!
//! let old = format::parse_instance("universe: a\nset s1: a\nset s2:\n").unwrap();
//! let given = format::parse_solution("solution: s1\n").unwrap();
//! let m = format::parse_modification("add-elem e into: s2\n").unwrap();
//! let r = make_reopt(old, given, Rational::ONE, m).unwrap();
//! let repaired = repair_add_element(&r).unwrap();
//! assert_eq!(format::print_solution(&repaired), "solution: s1 s2\n");
//! ```

use crate::error::{Error, Result};
use crate::model::{is_cover, Instance, SetName, Solution};
use crate::modifications::{within_oracle_scale, Modification, ReoptInstance};
use crate::ratio::RatioFunction;
use crate::rational::Rational;
use crate::solvers::{decide_bounded, greedy, solve_exact, BoundedOutcome};
use std::collections::BTreeSet;

/// Accuracy parameter of an approximation scheme; epsilon must be positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accuracy {
    epsilon: Rational,
}

impl Accuracy {
    pub fn new(epsilon: Rational) -> Result<Accuracy> {
        if epsilon.is_zero() {
            return Err(Error::Precondition("epsilon must be positive".into()));
        }
        Ok(Accuracy { epsilon })
    }

    pub fn epsilon(&self) -> Rational {
        self.epsilon
    }
}

/// The callable contract of a reoptimization routine: old instance, old
/// solution, modified instance, accuracy.  Exact solvers ignore the
/// accuracy; approximation schemes honor it.
pub trait ReoptRoutine {
    fn reoptimize(
        &self,
        old: &Instance,
        old_solution: &Solution,
        new: &Instance,
        accuracy: &Accuracy,
    ) -> Result<Solution>;

    fn name(&self) -> &'static str {
        "routine"
    }
}

impl<F> ReoptRoutine for F
where
    F: Fn(&Instance, &Solution, &Instance, &Accuracy) -> Result<Solution>,
{
    fn reoptimize(
        &self,
        old: &Instance,
        old_solution: &Solution,
        new: &Instance,
        accuracy: &Accuracy,
    ) -> Result<Solution> {
        self(old, old_solution, new, accuracy)
    }
}

/// Solves every modified instance exactly; the stand-in for a hypothetical
/// scheme when exercising chains and transfer wrappers at desk scale.
pub struct ExactRoutine;

impl ReoptRoutine for ExactRoutine {
    fn reoptimize(&self, _: &Instance, _: &Solution, new: &Instance, _: &Accuracy) -> Result<Solution> {
        solve_exact(new)
    }

    fn name(&self) -> &'static str {
        "exact"
    }
}

/// Ignores the old solution and runs the greedy approximation on the
/// modified instance.
pub struct GreedyRoutine;

impl ReoptRoutine for GreedyRoutine {
    fn reoptimize(&self, _: &Instance, _: &Solution, new: &Instance, _: &Accuracy) -> Result<Solution> {
        greedy(new)
    }

    fn name(&self) -> &'static str {
        "greedy"
    }
}

/// Repair for element additions, applicable when the modification can be
/// inferred from the two instances (their universes differ by one element).
pub struct RepairRoutine;

impl ReoptRoutine for RepairRoutine {
    fn reoptimize(&self, old: &Instance, old_solution: &Solution, new: &Instance, _: &Accuracy) -> Result<Solution> {
        let added: Vec<_> = new
            .universe()
            .iter()
            .filter(|e| !old.contains_element(e))
            .collect();
        match added.as_slice() {
            [e] => {
                let into: BTreeSet<SetName> = new
                    .family()
                    .iter()
                    .filter(|s| s.extent.contains(e))
                    .map(|s| s.name.clone())
                    .collect();
                repair_with(old_solution, e, &into, new)
            }
            _ => Err(Error::Precondition(
                "repair routine requires instances differing by one added element".into(),
            )),
        }
    }

    fn name(&self) -> &'static str {
        "repair"
    }
}

fn repair_with(
    old_solution: &Solution,
    element: &crate::model::ElementId,
    into: &BTreeSet<SetName>,
    new: &Instance,
) -> Result<Solution> {
    let mut chosen = old_solution.chosen().clone();
    if !into.iter().any(|name| chosen.contains(name)) {
        let pick = into
            .iter()
            .filter_map(|name| new.set(name))
            .min_by(|a, b| a.weight.cmp(&b.weight).then_with(|| a.name.cmp(&b.name)))
            .ok_or_else(|| {
                Error::Infeasible(format!("no set of the modified instance contains {element}"))
            })?;
        chosen.insert(pick.name.clone());
    }
    Solution::new(new, chosen)
}

/// The (1 + rho) repair for an element addition: the old solution plus, if
/// needed, one minimum-weight set containing the new element.
pub fn repair_add_element(r: &ReoptInstance) -> Result<Solution> {
    match &r.modification {
        Modification::AddElement { element, into } => {
            repair_with(&r.old_solution, element, into, &r.new)
        }
        other => Err(Error::Precondition(format!(
            "repair applies to element additions, got {other}"
        ))),
    }
}

/// Case-distinction scheme for unweighted element changes with an optimal
/// old solution.  Threshold `T = ceil(1/eps) + 1`: below it the bounded
/// search solves the modified instance exactly, above it the repaired (or
/// unchanged, for removals) old solution is within 1 + eps.
pub fn ptas_case_distinction(r: &ReoptInstance, accuracy: &Accuracy) -> Result<Solution> {
    if r.old.weighted() || r.new.weighted() {
        return Err(Error::Precondition("the case-distinction scheme is for unweighted instances".into()));
    }
    if !r.rho.is_one() {
        return Err(Error::Precondition(
            "the case-distinction scheme requires an optimal old solution (rho = 1)".into(),
        ));
    }
    if !matches!(
        r.modification,
        Modification::AddElement { .. } | Modification::RemoveElement { .. }
    ) {
        return Err(Error::Precondition("the case-distinction scheme handles element changes".into()));
    }

    let threshold = accuracy.epsilon().recip()?.ceil() + 1;
    if r.old_solution.value() <= Rational::from_int(threshold) {
        let k = u32::try_from(threshold + 1)
            .map_err(|_| Error::Precondition("threshold out of range".into()))?;
        match decide_bounded(&r.new, k)? {
            BoundedOutcome::Solved(s) => Ok(s),
            BoundedOutcome::Exceeds(_) => Err(Error::QualityRefuted(
                "bounded search exceeded; the old solution was not optimal".into(),
            )),
        }
    } else {
        match &r.modification {
            Modification::AddElement { .. } => repair_add_element(r),
            Modification::RemoveElement { .. } => {
                Solution::new(&r.new, r.old_solution.chosen().clone())
            }
            _ => unreachable!(),
        }
    }
}

/// Start state of an instance chain: an optimal solution of the first
/// instance, or a certificate that its optimum already exceeds the bound.
#[derive(Clone, Debug)]
pub enum ChainStart {
    Optimal(Solution),
    ExceedsBound,
}

/// A sequence `I_0, ..., I_n` of unweighted instances linked by single
/// modifications, with a start state, a bound function and a parameter `k`.
#[derive(Clone, Debug)]
pub struct InstanceChain {
    instances: Vec<Instance>,
    mods: Vec<Modification>,
    start: ChainStart,
    bound_fn: RatioFunction,
    k: u32,
}

impl InstanceChain {
    pub fn new(
        instances: Vec<Instance>,
        mods: Vec<Modification>,
        start: ChainStart,
        bound_fn: RatioFunction,
        k: u32,
    ) -> Result<InstanceChain> {
        if instances.is_empty() {
            return Err(Error::Precondition("a chain needs at least one instance".into()));
        }
        if mods.len() + 1 != instances.len() {
            return Err(Error::Precondition(format!(
                "{} instances need {} modifications, got {}",
                instances.len(),
                instances.len() - 1,
                mods.len()
            )));
        }
        if let Some(w) = instances.iter().find(|i| i.weighted()) {
            let _ = w;
            return Err(Error::Precondition("chains require integral solution values (unweighted)".into()));
        }
        for (i, m) in mods.iter().enumerate() {
            let derived = crate::modifications::apply(&instances[i], m)?;
            if derived != instances[i + 1] {
                return Err(Error::Precondition(format!(
                    "chain link {}: applying {m} does not yield the next instance",
                    i + 1
                )));
            }
        }
        if let ChainStart::Optimal(sol) = &start {
            if !is_cover(&instances[0], sol)? {
                return Err(Error::Infeasible("start solution does not cover the first instance".into()));
            }
            if within_oracle_scale(&instances[0]) {
                let opt = solve_exact(&instances[0])?.value();
                if sol.value() != opt {
                    return Err(Error::QualityRefuted(format!(
                        "start solution has value {}, optimum is {opt}",
                        sol.value()
                    )));
                }
            }
        }
        Ok(InstanceChain { instances, mods, start, bound_fn, k })
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn mods(&self) -> &[Modification] {
        &self.mods
    }

    pub fn start(&self) -> &ChainStart {
        &self.start
    }

    pub fn bound_fn(&self) -> &RatioFunction {
        &self.bound_fn
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn last(&self) -> &Instance {
        self.instances.last().unwrap()
    }

    /// Same chain under a different parameter.
    pub fn with_k(&self, k: u32) -> InstanceChain {
        let mut c = self.clone();
        c.k = k;
        c
    }

    pub fn len(&self) -> usize {
        self.mods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mods.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum DriverOutcome {
    /// Final-step solution with value at most `f(k)`.
    Solved(Solution),
    Exceeds(u32),
}

/// Walk the chain with the given routine at accuracy `1/(f(k)+1)`.
///
/// Returns the final solution when its value is at most `f(k)`, otherwise
/// `Exceeds(k)`.  Every step output is checked for feasibility.
pub fn eptas_fpt_driver(chain: &InstanceChain, routine: &dyn ReoptRoutine) -> Result<DriverOutcome> {
    let f_k = chain.bound_fn.eval(chain.k as u64)?;
    let mut current = match &chain.start {
        ChainStart::ExceedsBound => return Ok(DriverOutcome::Exceeds(chain.k)),
        ChainStart::Optimal(sol) => sol.clone(),
    };
    let accuracy = Accuracy::new(f_k.add(&Rational::ONE)?.recip()?)?;
    for (i, m) in chain.mods.iter().enumerate() {
        let out = routine.reoptimize(&chain.instances[i], &current, &chain.instances[i + 1], &accuracy)?;
        let out = Solution::new(&chain.instances[i + 1], out.chosen().clone())?;
        if !is_cover(&chain.instances[i + 1], &out)? {
            return Err(Error::Infeasible(format!(
                "routine `{}` returned an infeasible solution at step {} ({m})",
                routine.name(),
                i + 1
            )));
        }
        current = out;
    }
    if current.value() <= f_k {
        Ok(DriverOutcome::Solved(current))
    } else {
        Ok(DriverOutcome::Exceeds(chain.k))
    }
}
