//! Hardness gadgets: executable instance constructors that turn a plain set
//! cover instance (or a graph) into a reoptimization instance with a known
//! optimal old solution, a claimed optimum relation, and an extraction map
//! back to the source.  The transfer wrappers run a reoptimization solver
//! through a gadget and extract a source solution, carrying the solver's
//! ratio across.
//!
//! Single-step gadgets:
//! * add-set (unweighted): duplicate every element, cover each element with
//!   its duplicate by a fresh pair set; the added set covers all duplicates.
//!   `OPT(new) = OPT(source) + 1`.
//! * add-set (weighted): same construction with the added set at weight 0,
//!   so `OPT(new) = OPT(source)`.
//! * remove-set: add a full-universe set (the old optimum) and remove it
//!   again; the modified instance is the source itself.
//! * add-element (weighted): tag every set with a private element, add a
//!   full set G at weight `2*guess` and the tag set R at weight `guess`;
//!   the new element lands only in R.  At the correct guess every optimum
//!   of the modified instance contains R and avoids G.
//! * remove-element (weighted): add a fresh element plus a heavy full set
//!   (the old optimum) whose weight exceeds any useful cover; removing the
//!   fresh element exposes the source.
//!
//! Chain gadgets drive the EPTAS-to-FPT argument: one builds the modified
//! instance by adding source elements one by one starting from a trivially
//! solved core; the other starts from a graph's domination instance whose
//! optimum is pinned by fixing elements and removes the fixers one by one.
//!
//! ```
//! use setcover_reopt::format;
//! use setcover_reopt::reductions::{extract, gadget_add_set_unweighted};
//! use setcover_reopt::solvers::solve_exact;
//!
//! let src = format::parse_instance(
//!     "universe: 1 2 3\nset s12: 1 2\nset s23: 2 3\nset s13: 1 3\n",
//! ).unwrap();
//! let gadget = gadget_add_set_unweighted(&src).unwrap();
//! // the modified instance's optimum sits exactly one above the source's
//! let opt_new = solve_exact(&gadget.reopt.new).unwrap();
//! assert_eq!(opt_new.value().to_string(), "3");
//! let recovered = extract(&gadget, &opt_new).unwrap();
//! assert_eq!(recovered.value().to_string(), "2");
//! ```

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{is_cover, ElementId, Instance, NamedSet, SetName, Solution};
use crate::modifications::{apply, Modification, ReoptInstance};
use crate::ratio::RatioFunction;
use crate::rational::Rational;
use crate::reopt::{
    eptas_fpt_driver, Accuracy, ChainStart, DriverOutcome, InstanceChain, ReoptRoutine,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Which gadget to build; parameters ride along.
#[derive(Clone, Debug)]
pub enum GadgetKind {
    AddSetUnweighted,
    AddSetWeighted,
    RemoveSet { weighted: bool },
    AddElementWeighted,
    RemoveElementWeighted { f: RatioFunction },
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::AddSetUnweighted => write!(f, "add-set-unweighted"),
            GadgetKind::AddSetWeighted => write!(f, "add-set-weighted"),
            GadgetKind::RemoveSet { weighted: false } => write!(f, "rm-set"),
            GadgetKind::RemoveSet { weighted: true } => write!(f, "rm-set-weighted"),
            GadgetKind::AddElementWeighted => write!(f, "add-elem-weighted"),
            GadgetKind::RemoveElementWeighted { f: rf } => write!(f, "rm-elem-weighted[{rf}]"),
        }
    }
}

/// The optimum identities a gadget claims, checked exactly by the harness.
#[derive(Clone, Debug, Default)]
pub struct OptClaims {
    /// `OPT(new) = OPT(source) + delta`.
    pub source_delta: Option<Rational>,
    /// Absolute `OPT(new)`.
    pub new_opt: Option<Rational>,
    /// Absolute `OPT(old)`.
    pub old_opt: Option<Rational>,
    /// Sets present in every optimum of the new instance.
    pub must_contain: Vec<SetName>,
    /// Sets absent from every optimum of the new instance.
    pub must_avoid: Vec<SetName>,
    /// Claims hold only if the embedded guess equals the preprocessed
    /// optimum.
    pub conditional_on_guess: bool,
}

impl fmt::Display for OptClaims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(d) = &self.source_delta {
            if d.is_zero() {
                parts.push("OPT(new)=OPT(src)".to_string());
            } else {
                parts.push(format!("OPT(new)=OPT(src)+{d}"));
            }
        }
        if let Some(v) = &self.new_opt {
            parts.push(format!("OPT(new)={v}"));
        }
        if let Some(v) = &self.old_opt {
            parts.push(format!("OPT(old)={v}"));
        }
        for s in &self.must_contain {
            parts.push(format!("{s} in every optimum"));
        }
        for s in &self.must_avoid {
            parts.push(format!("{s} in no optimum"));
        }
        if self.conditional_on_guess {
            parts.push("at the correct guess".to_string());
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// How to map a solution of the gadget's new instance back to the source.
#[derive(Clone, Debug)]
pub enum Extraction {
    Identity,
    /// Drop the duplicate-cover set, exchange pair sets for source sets.
    DupCover {
        adder: SetName,
        pairs: BTreeMap<SetName, ElementId>,
    },
    /// Drop the heavy full set, patching any coverage it provided.
    DropHeavy { heavy: SetName },
    /// Drop R, reject G, map added singletons back to covering source sets,
    /// re-add the forced singletons of the preprocessing step.
    TaggedSets {
        r_set: SetName,
        g_set: SetName,
        singletons: BTreeMap<SetName, ElementId>,
        forced: BTreeSet<SetName>,
    },
}

/// A constructed reoptimization instance with its provenance.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub source: Instance,
    pub reopt: ReoptInstance,
    pub claims: OptClaims,
    pub extraction: Extraction,
    /// For the add-element gadget: the preprocessed-and-completed instance
    /// whose optimum the guess must hit.
    pub completed: Option<Instance>,
    pub guess: Option<u64>,
}

fn mint_element(inst: &Instance, name: String) -> Result<ElementId> {
    let id = ElementId::new(name)?;
    if inst.contains_element(&id) {
        return Err(Error::Precondition(format!(
            "reserved element name {id} collides with the source instance"
        )));
    }
    Ok(id)
}

fn mint_set(inst: &Instance, name: String) -> Result<SetName> {
    let name = SetName::new(name)?;
    if inst.set(&name).is_some() {
        return Err(Error::Precondition(format!(
            "reserved set name {name} collides with the source instance"
        )));
    }
    Ok(name)
}

/// Lexicographically least source set containing `u` with extent size at
/// least `min_size`.
fn least_covering_set(src: &Instance, u: &ElementId, min_size: usize) -> Result<SetName> {
    src.family()
        .iter()
        .find(|s| s.extent.len() >= min_size && s.extent.contains(u))
        .map(|s| s.name.clone())
        .ok_or_else(|| Error::Infeasible(format!("no source set of size >= {min_size} covers {u}")))
}

fn build_add_set_gadget(src: &Instance, weighted: bool) -> Result<Gadget> {
    if src.weighted() {
        return Err(Error::Precondition("the add-set gadgets take an unweighted source".into()));
    }
    if src.num_elements() == 0 {
        return Err(Error::Precondition("the source universe is empty".into()));
    }
    if !src.family().iter().any(|s| s.extent.len() >= 2) {
        return Err(Error::Precondition(
            "degenerate source: every set has fewer than 2 elements, so the optimum is the whole universe; solve the source directly".into(),
        ));
    }

    let mut universe = src.universe().to_vec();
    let mut family = src.family().to_vec();
    let mut pairs = BTreeMap::new();
    let mut dups = BTreeSet::new();
    for u in src.universe() {
        let dup = mint_element(src, format!("{u}'"))?;
        let pair_name = mint_set(src, format!("_pair_{u}"))?;
        family.push(NamedSet::unit(pair_name.clone(), [u.clone(), dup.clone()].into()));
        pairs.insert(pair_name, u.clone());
        universe.push(dup.clone());
        dups.insert(dup);
    }
    let old = Instance::new(universe, family, weighted)?;

    let adder = mint_set(src, "_dup".into())?;
    let weight = if weighted { Rational::ZERO } else { Rational::ONE };
    let modification = Modification::AddSet { name: adder.clone(), extent: dups, weight };
    let old_solution: BTreeSet<SetName> = pairs.keys().cloned().collect();
    let reopt = ReoptInstance::assemble_claimed(old, old_solution, Rational::ONE, modification)?;

    let claims = OptClaims {
        source_delta: Some(if weighted { Rational::ZERO } else { Rational::ONE }),
        old_opt: Some(Rational::from_int(src.num_elements() as u64)),
        ..OptClaims::default()
    };
    Ok(Gadget {
        kind: if weighted { GadgetKind::AddSetWeighted } else { GadgetKind::AddSetUnweighted },
        source: src.clone(),
        reopt,
        claims,
        extraction: Extraction::DupCover { adder, pairs },
        completed: None,
        guess: None,
    })
}

/// Duplicate-and-cover gadget on an unweighted source: `OPT(new) = OPT + 1`.
pub fn gadget_add_set_unweighted(src: &Instance) -> Result<Gadget> {
    build_add_set_gadget(src, false)
}

/// Weighted variant: the added duplicate cover has weight 0, so
/// `OPT(new) = OPT(source)`.
pub fn gadget_add_set_weighted(src: &Instance) -> Result<Gadget> {
    build_add_set_gadget(src, true)
}

/// Full-set gadget: the old instance adds a unit-weight set covering the
/// whole universe (the old optimum); removing it exposes the source.
pub fn gadget_remove_set(src: &Instance, weighted: bool) -> Result<Gadget> {
    if weighted != src.weighted() {
        return Err(Error::Precondition(format!(
            "variant mismatch: source weighted = {}, requested weighted = {weighted}",
            src.weighted()
        )));
    }
    if src.num_elements() == 0 {
        return Err(Error::Precondition("the source universe is empty".into()));
    }
    if let Some(full) = src.family().iter().find(|s| s.extent.len() == src.num_elements()) {
        return Err(Error::Precondition(format!(
            "set {} already covers the entire universe",
            full.name
        )));
    }
    if weighted {
        if let Some(cheap) = src.family().iter().find(|s| s.weight < Rational::ONE) {
            return Err(Error::Precondition(format!(
                "set {} has weight {} below 1; the unit full set would not be an old optimum",
                cheap.name, cheap.weight
            )));
        }
    }

    let full_name = mint_set(src, "_full".into())?;
    let mut family = src.family().to_vec();
    family.push(NamedSet::unit(full_name.clone(), src.universe().iter().cloned().collect()));
    let old = Instance::new(src.universe().to_vec(), family, src.weighted())?;
    let modification = Modification::RemoveSet { name: full_name.clone() };
    let reopt = ReoptInstance::assemble_claimed(old, [full_name].into(), Rational::ONE, modification)?;
    debug_assert_eq!(&reopt.new, src);

    let claims = OptClaims {
        source_delta: Some(Rational::ZERO),
        old_opt: Some(Rational::ONE),
        ..OptClaims::default()
    };
    Ok(Gadget {
        kind: GadgetKind::RemoveSet { weighted },
        source: src.clone(),
        reopt,
        claims,
        extraction: Extraction::Identity,
        completed: None,
        guess: None,
    })
}

/// Result of the singleton preprocessing in front of the add-element gadget.
#[derive(Clone, Debug)]
pub struct SingletonPreprocess {
    /// Source minus forced elements, singleton sets and empty sets.
    pub reduced: Instance,
    /// Singletons that belong to every source solution.
    pub forced: BTreeSet<SetName>,
    pub removed_elements: BTreeSet<ElementId>,
}

/// Remove elements covered only by singleton sets (those singletons are
/// forced and re-added to extracted solutions), then delete the remaining
/// singleton and empty sets.
pub fn preprocess_singletons(src: &Instance) -> Result<SingletonPreprocess> {
    if src.weighted() {
        return Err(Error::Precondition("singleton preprocessing takes an unweighted source".into()));
    }
    let mut universe: Vec<ElementId> = src.universe().to_vec();
    let mut family: Vec<NamedSet> = src.family().to_vec();
    let mut forced = BTreeSet::new();
    let mut removed_elements = BTreeSet::new();

    loop {
        let target = universe
            .iter()
            .find(|e| {
                let mut covers = family.iter().filter(|s| s.extent.contains(e)).peekable();
                covers.peek().is_some() && {
                    let mut all_singleton = true;
                    for s in family.iter().filter(|s| s.extent.contains(e)) {
                        all_singleton &= s.extent.len() == 1;
                    }
                    all_singleton
                }
            })
            .cloned();
        let Some(e) = target else { break };
        let pick = family
            .iter()
            .filter(|s| s.extent.contains(&e))
            .map(|s| s.name.clone())
            .min()
            .expect("a covering singleton exists");
        forced.insert(pick);
        family.retain(|s| !(s.extent.len() == 1 && s.extent.contains(&e)));
        universe.retain(|u| *u != e);
        removed_elements.insert(e);
    }
    family.retain(|s| s.extent.len() >= 2);
    let reduced = Instance::new(universe, family, false)?;
    Ok(SingletonPreprocess { reduced, forced, removed_elements })
}

/// Guess-parameterized add-element gadget.  Every set of the completed
/// instance gets a private tag element; `G` covers everything at weight
/// `2*guess`, `R` covers exactly the tags at weight `guess`; the new element
/// is added only to `R`.
pub fn gadget_add_element_weighted(src: &Instance, guess: u64) -> Result<Gadget> {
    if src.weighted() {
        return Err(Error::Precondition("the add-element gadget takes an unweighted source".into()));
    }
    if guess < 1 || guess > src.num_elements() as u64 {
        return Err(Error::Precondition(format!(
            "guess {guess} out of range [1, {}]",
            src.num_elements()
        )));
    }
    let prep = preprocess_singletons(src)?;
    if prep.reduced.num_elements() == 0 {
        return Err(Error::Precondition(
            "preprocessing leaves an empty universe; the forced singletons already solve the source".into(),
        ));
    }

    // Complete with one singleton per remaining element.
    let mut family = prep.reduced.family().to_vec();
    let mut singletons = BTreeMap::new();
    for u in prep.reduced.universe() {
        let name = mint_set(src, format!("_sing_{u}"))?;
        family.push(NamedSet::unit(name.clone(), [u.clone()].into()));
        singletons.insert(name, u.clone());
    }
    let completed = Instance::new(prep.reduced.universe().to_vec(), family, false)?;

    // Tag every completed set with a private element.
    let mut universe: Vec<ElementId> = completed.universe().to_vec();
    let mut tagged_family: Vec<NamedSet> = Vec::new();
    let mut tags: BTreeSet<ElementId> = BTreeSet::new();
    for s in completed.family() {
        let tag = mint_element(src, format!("_es_{}", s.name))?;
        let mut extent = s.extent.clone();
        extent.insert(tag.clone());
        tagged_family.push(NamedSet::new(s.name.clone(), extent, Rational::ONE));
        universe.push(tag.clone());
        tags.insert(tag);
    }
    let g_name = mint_set(src, "_g".into())?;
    let r_name = mint_set(src, "_r".into())?;
    let guess_q = Rational::from_int(guess);
    tagged_family.push(NamedSet::new(
        g_name.clone(),
        universe.iter().cloned().collect(),
        guess_q.mul(&Rational::from_int(2))?,
    ));
    tagged_family.push(NamedSet::new(r_name.clone(), tags, guess_q));
    let old = Instance::new(universe, tagged_family, true)?;

    let e_new = mint_element(src, "_enew".into())?;
    let modification = Modification::AddElement { element: e_new, into: [r_name.clone()].into() };
    let reopt =
        ReoptInstance::assemble_claimed(old, [g_name.clone()].into(), Rational::ONE, modification)?;

    let two_guess = guess_q.mul(&Rational::from_int(2))?;
    let claims = OptClaims {
        new_opt: Some(two_guess),
        old_opt: Some(two_guess),
        must_contain: vec![r_name.clone()],
        must_avoid: vec![g_name.clone()],
        conditional_on_guess: true,
        ..OptClaims::default()
    };
    Ok(Gadget {
        kind: GadgetKind::AddElementWeighted,
        source: src.clone(),
        reopt,
        claims,
        extraction: Extraction::TaggedSets {
            r_set: r_name,
            g_set: g_name,
            singletons,
            forced: prep.forced,
        },
        completed: Some(completed),
        guess: Some(guess),
    })
}

/// Heavy-set gadget for element removal on a weighted source: a fresh
/// element is covered only by a full set of weight
/// `W = (f(|U|) + 1) * sum of all weights`, which is therefore the old
/// optimum; removing the fresh element exposes the source (the heavy set is
/// never worth taking).
pub fn gadget_remove_element_weighted(src: &Instance, f: &RatioFunction) -> Result<Gadget> {
    if !src.weighted() {
        return Err(Error::Precondition("the remove-element gadget takes a weighted source".into()));
    }
    if src.num_elements() == 0 {
        return Err(Error::Precondition("the source universe is empty".into()));
    }
    let mut total = Rational::ZERO;
    for s in src.family() {
        total = total.add(&s.weight)?;
    }
    let f_u = f.eval(src.num_elements() as u64)?;
    let heavy_weight = f_u.add(&Rational::ONE)?.mul(&total)?;

    let fresh = mint_element(src, "_unew".into())?;
    let full_name = mint_set(src, "_full".into())?;
    let mut universe = src.universe().to_vec();
    universe.push(fresh.clone());
    let mut family = src.family().to_vec();
    family.push(NamedSet::new(
        full_name.clone(),
        universe.iter().cloned().collect(),
        heavy_weight,
    ));
    let old = Instance::new(universe, family, true)?;
    let modification = Modification::RemoveElement { element: fresh };
    let reopt =
        ReoptInstance::assemble_claimed(old, [full_name.clone()].into(), Rational::ONE, modification)?;

    let claims = OptClaims {
        source_delta: Some(Rational::ZERO),
        old_opt: Some(heavy_weight),
        must_avoid: vec![full_name.clone()],
        ..OptClaims::default()
    };
    Ok(Gadget {
        kind: GadgetKind::RemoveElementWeighted { f: f.clone() },
        source: src.clone(),
        reopt,
        claims,
        extraction: Extraction::DropHeavy { heavy: full_name },
        completed: None,
        guess: None,
    })
}

/// Map a solution of the gadget's new instance to a source solution.
///
/// Fails with [`Error::InvalidRun`] when the solution uses a set the
/// gadget's analysis excludes (the full cover set G of the add-element
/// gadget), which the guess loop of [`wrapper_transfer`] discards.
pub fn extract(gadget: &Gadget, sol: &Solution) -> Result<Solution> {
    let src = &gadget.source;
    let chosen = match &gadget.extraction {
        Extraction::Identity => sol.chosen().clone(),
        Extraction::DupCover { adder, pairs } => {
            fn take(src: &Instance, name: SetName, names: &mut BTreeSet<SetName>, covered: &mut BTreeSet<ElementId>) {
                if let Some(s) = src.set(&name) {
                    covered.extend(s.extent.iter().cloned());
                }
                names.insert(name);
            }
            let mut names: BTreeSet<SetName> = BTreeSet::new();
            let mut covered: BTreeSet<ElementId> = BTreeSet::new();
            if !sol.contains(adder) {
                // all duplicates are pair-covered; rebuild a cover of size
                // at most |U| - 1 starting from a set of size >= 2
                let first = src
                    .family()
                    .iter()
                    .find(|s| s.extent.len() >= 2)
                    .map(|s| s.name.clone())
                    .ok_or_else(|| Error::Infeasible("no set of size >= 2 in the source".into()))?;
                take(src, first, &mut names, &mut covered);
                for u in src.universe() {
                    if !covered.contains(u) {
                        take(src, least_covering_set(src, u, 1)?, &mut names, &mut covered);
                    }
                }
            } else {
                for name in sol.chosen() {
                    if src.set(name).is_some() {
                        take(src, name.clone(), &mut names, &mut covered);
                    }
                }
                for (pair, u) in pairs {
                    if sol.contains(pair) && !covered.contains(u) {
                        take(src, least_covering_set(src, u, 1)?, &mut names, &mut covered);
                    }
                }
            }
            names
        }
        Extraction::DropHeavy { heavy } => {
            let mut names = sol.chosen().clone();
            names.remove(heavy);
            let mut covered: BTreeSet<ElementId> = BTreeSet::new();
            for name in &names {
                if let Some(s) = src.set(name) {
                    covered.extend(s.extent.iter().cloned());
                }
            }
            for u in src.universe() {
                if !covered.contains(u) {
                    let patch = least_covering_set(src, u, 1)?;
                    if let Some(s) = src.set(&patch) {
                        covered.extend(s.extent.iter().cloned());
                    }
                    names.insert(patch);
                }
            }
            names
        }
        Extraction::TaggedSets { r_set, g_set, singletons, forced } => {
            if sol.contains(g_set) {
                return Err(Error::InvalidRun(format!(
                    "solution takes the full cover set {g_set}"
                )));
            }
            let mut names: BTreeSet<SetName> = forced.clone();
            for name in sol.chosen() {
                if name == r_set {
                    continue;
                }
                match singletons.get(name) {
                    Some(u) => {
                        names.insert(least_covering_set(src, u, 2)?);
                    }
                    None => {
                        names.insert(name.clone());
                    }
                }
            }
            names
        }
    };
    let extracted = Solution::new(src, chosen)?;
    if !is_cover(src, &extracted)? {
        return Err(Error::Infeasible("extraction produced a non-cover".into()));
    }
    Ok(extracted)
}

/// Build a gadget of the requested kind; `guess` only matters for the
/// add-element kind.
pub fn build_gadget(src: &Instance, kind: &GadgetKind, guess: u64) -> Result<Gadget> {
    match kind {
        GadgetKind::AddSetUnweighted => gadget_add_set_unweighted(src),
        GadgetKind::AddSetWeighted => gadget_add_set_weighted(src),
        GadgetKind::RemoveSet { weighted } => gadget_remove_set(src, *weighted),
        GadgetKind::AddElementWeighted => gadget_add_element_weighted(src, guess),
        GadgetKind::RemoveElementWeighted { f } => gadget_remove_element_weighted(src, f),
    }
}

/// Run a reoptimization solver through a gadget and extract a source
/// solution.  For the add-element gadget the guess is swept over
/// `[1, |U|]` and the best valid extraction wins; runs whose solution takes
/// G are discarded.  An exact solver transfers exactness: the result is an
/// optimal source solution.
pub fn wrapper_transfer(
    src: &Instance,
    kind: &GadgetKind,
    solver: &dyn ReoptRoutine,
) -> Result<Solution> {
    let accuracy = Accuracy::new(Rational::ONE)?;
    let run = |gadget: &Gadget| -> Result<Solution> {
        let out = solver.reoptimize(
            &gadget.reopt.old,
            &gadget.reopt.old_solution,
            &gadget.reopt.new,
            &accuracy,
        )?;
        let out = Solution::new(&gadget.reopt.new, out.chosen().clone())?;
        if !is_cover(&gadget.reopt.new, &out)? {
            return Err(Error::Infeasible(
                "reoptimization solver returned an infeasible solution".into(),
            ));
        }
        extract(gadget, &out)
    };

    match kind {
        GadgetKind::AddElementWeighted => {
            let prep = preprocess_singletons(src)?;
            if prep.reduced.num_elements() == 0 {
                // the forced singletons already cover everything
                return Solution::new(src, prep.forced);
            }
            let mut best: Option<Solution> = None;
            for guess in 1..=src.num_elements() as u64 {
                let gadget = gadget_add_element_weighted(src, guess)?;
                match run(&gadget) {
                    Err(Error::InvalidRun(_)) => continue,
                    Err(e) => return Err(e),
                    Ok(sol) => {
                        if best.as_ref().is_none_or(|b| sol.value() < b.value()) {
                            best = Some(sol);
                        }
                    }
                }
            }
            best.ok_or_else(|| Error::InvalidRun("no guess produced a valid extraction".into()))
        }
        _ => run(&build_gadget(src, kind, 1)?),
    }
}

/// The two chain gadget families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    AddElements,
    RemoveElements,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainKind::AddElements => write!(f, "chain-add-elem"),
            ChainKind::RemoveElements => write!(f, "chain-rm-elem"),
        }
    }
}

/// A chain of singly-modified instances for the EPTAS-to-FPT driver, with
/// the source it decides about.
#[derive(Clone, Debug)]
pub struct ChainGadget {
    pub kind: ChainKind,
    pub source: Instance,
    pub chain: InstanceChain,
    /// Size of the approximate dominating set (remove-elements kind).
    pub approx_size: Option<usize>,
}

impl ChainGadget {
    /// Decide `OPT(source) <= k` by driving the chain with the routine.
    ///
    /// For the add-elements chain the driver's threshold `f(k) = k + 1`
    /// answers directly.  For the remove-elements chain the approximate
    /// dominating set gates the run (`|approx| > 2k` certifies `OPT > k`),
    /// the bound function `f(k) = 2k` keeps every step optimum below the
    /// accuracy threshold, and the final (exact) solution is compared
    /// against `k` itself.
    pub fn decide(&self, k: u32, routine: &dyn ReoptRoutine) -> Result<bool> {
        match self.kind {
            ChainKind::AddElements => {
                match eptas_fpt_driver(&self.chain.with_k(k), routine)? {
                    DriverOutcome::Solved(_) => Ok(true),
                    DriverOutcome::Exceeds(_) => Ok(false),
                }
            }
            ChainKind::RemoveElements => {
                let size = self.approx_size.unwrap_or(0) as u64;
                if size > 2 * k as u64 {
                    return Ok(false);
                }
                match eptas_fpt_driver(&self.chain.with_k(k), routine)? {
                    DriverOutcome::Solved(s) => Ok(s.value() <= Rational::from_int(k as u64)),
                    DriverOutcome::Exceeds(_) => Ok(false),
                }
            }
        }
    }
}

/// Chain gadget for element addition: start from a core of fresh elements
/// (one per source set plus one more, all covered by one obvious set) and
/// add the source elements one by one.  `OPT(final) = OPT(source) + 1` and
/// every intermediate optimum stays at most `OPT(source) + 1`, so the chain
/// satisfies the driver's bullets with `f(k) = k + 1`.
pub fn chain_add_element(src: &Instance) -> Result<ChainGadget> {
    if src.weighted() {
        return Err(Error::Precondition("the add-element chain takes an unweighted source".into()));
    }
    if src.num_elements() == 0 {
        return Err(Error::Precondition("the source universe is empty".into()));
    }
    let m = src.num_sets();
    let mut tags = Vec::with_capacity(m + 1);
    for i in 1..=m + 1 {
        tags.push(mint_element(src, format!("_e{i}"))?);
    }
    let eall = mint_set(src, "_eall".into())?;

    let mut family: Vec<NamedSet> = src
        .family()
        .iter()
        .enumerate()
        .map(|(i, s)| NamedSet::unit(s.name.clone(), [tags[i].clone()].into()))
        .collect();
    family.push(NamedSet::unit(eall.clone(), tags.iter().cloned().collect()));
    let core = Instance::new(tags.clone(), family, false)?;

    let mut instances = vec![core.clone()];
    let mut mods = Vec::new();
    for u in src.universe() {
        let into: BTreeSet<SetName> = src
            .family()
            .iter()
            .filter(|s| s.extent.contains(u))
            .map(|s| s.name.clone())
            .collect();
        let m = Modification::AddElement { element: u.clone(), into };
        let next = apply(instances.last().unwrap(), &m)?;
        mods.push(m);
        instances.push(next);
    }
    let start = ChainStart::Optimal(Solution::new(&core, [eall].into())?);
    let chain = InstanceChain::new(
        instances,
        mods,
        start,
        RatioFunction::affine(Rational::ONE, Rational::ONE),
        src.num_elements() as u32,
    )?;
    Ok(ChainGadget { kind: ChainKind::AddElements, source: src.clone(), chain, approx_size: None })
}

/// Chain gadget for element removal, from a graph's domination instance.
///
/// The closed-neighborhood map sends each vertex to a set; the given
/// dominating set (standing in for a 2-approximation) is pinned as the
/// unique optimum by adding one fixing element per chosen vertex, and the
/// fixers are removed one by one until the plain domination instance
/// remains.  Every step optimum is bounded by the size of the given set.
pub fn chain_remove_element(graph: &Graph, approx: &BTreeSet<ElementId>) -> Result<ChainGadget> {
    if let Some((u, v)) = graph.twins() {
        return Err(Error::Precondition(format!(
            "vertices {u} and {v} have identical closed neighborhoods"
        )));
    }
    if approx.is_empty() {
        return Err(Error::Precondition("the approximate dominating set is empty".into()));
    }
    for v in approx {
        if graph.closed_neighborhood(v).is_none() {
            return Err(Error::UnknownElement(v.to_string()));
        }
    }
    if !graph.is_dominating(approx) {
        return Err(Error::Precondition("the given vertex set does not dominate the graph".into()));
    }

    let base = graph.cover_instance()?;
    let mut universe = base.universe().to_vec();
    let mut family = base.family().to_vec();
    let mut fixers = Vec::new();
    for v in approx {
        let fixer = mint_element(&base, format!("{v}'"))?;
        let name = SetName::new(v.as_str())?;
        let set = family
            .iter_mut()
            .find(|s| s.name == name)
            .expect("vertex set exists");
        set.extent.insert(fixer.clone());
        universe.push(fixer.clone());
        fixers.push(fixer);
    }
    let pinned = Instance::new(universe, family, false)?;

    let mut instances = vec![pinned.clone()];
    let mut mods = Vec::new();
    for fixer in fixers {
        let m = Modification::RemoveElement { element: fixer };
        let next = apply(instances.last().unwrap(), &m)?;
        mods.push(m);
        instances.push(next);
    }
    debug_assert_eq!(instances.last().unwrap(), &base);

    let names: BTreeSet<SetName> = approx
        .iter()
        .map(|v| SetName::new(v.as_str()))
        .collect::<Result<_>>()?;
    let start = ChainStart::Optimal(Solution::new(&pinned, names)?);
    let chain = InstanceChain::new(
        instances,
        mods,
        start,
        RatioFunction::affine(Rational::from_int(2), Rational::ZERO),
        graph.num_vertices() as u32,
    )?;
    Ok(ChainGadget {
        kind: ChainKind::RemoveElements,
        source: base,
        chain,
        approx_size: Some(approx.len()),
    })
}
