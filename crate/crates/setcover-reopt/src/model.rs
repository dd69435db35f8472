//! The instance/solution model: universes of named elements, families of
//! named weighted sets, feasibility checking and exact solution values.
//!
//! Instances are immutable after construction and canonically ordered
//! (universe and family sorted by name) so that every operation iterates
//! deterministically and printed files are byte-stable.
//!
//! ```
//! use setcover_reopt::{format, model};
//!
//! let inst = format::parse_instance("universe: a b\nset s1: a b\nset s2: a\n").unwrap();
//! assert!(model::validate(&inst, false).is_ok());
//! assert_eq!(inst.num_sets(), 2);
//! ```

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

fn check_token(s: &str) -> std::result::Result<(), String> {
    if s.is_empty() {
        return Err("empty".into());
    }
    if let Some(c) = s.chars().find(|c| c.is_whitespace() || *c == '#' || *c == ':') {
        return Err(format!("contains forbidden character {c:?}"));
    }
    Ok(())
}

/// Identifier of a universe element: a non-empty token without whitespace,
/// `#` or `:`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(s: impl Into<String>) -> Result<ElementId> {
        let s = s.into();
        check_token(&s).map_err(|reason| Error::InvalidName { name: s.clone(), reason })?;
        Ok(ElementId(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Name of a set in the family; same token rules as [`ElementId`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetName(String);

impl SetName {
    pub fn new(s: impl Into<String>) -> Result<SetName> {
        let s = s.into();
        check_token(&s).map_err(|reason| Error::InvalidName { name: s.clone(), reason })?;
        Ok(SetName(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A named set of the family with its extent and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSet {
    pub name: SetName,
    pub extent: BTreeSet<ElementId>,
    pub weight: Rational,
}

impl NamedSet {
    pub fn new(name: SetName, extent: BTreeSet<ElementId>, weight: Rational) -> NamedSet {
        NamedSet { name, extent, weight }
    }

    pub fn unit(name: SetName, extent: BTreeSet<ElementId>) -> NamedSet {
        NamedSet::new(name, extent, Rational::ONE)
    }
}

/// A set cover instance: ordered universe, ordered family, weighted flag.
///
/// Feasibility (the family covers the universe) is an invariant of
/// [`Instance::new`]; [`Instance::new_unchecked`] only canonicalizes the
/// ordering so that broken instances can still be inspected via [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    universe: Vec<ElementId>,
    family: Vec<NamedSet>,
    weighted: bool,
}

impl Instance {
    pub fn new_unchecked(
        universe: impl IntoIterator<Item = ElementId>,
        family: impl IntoIterator<Item = NamedSet>,
        weighted: bool,
    ) -> Instance {
        let mut universe: Vec<ElementId> = universe.into_iter().collect();
        universe.sort();
        let mut family: Vec<NamedSet> = family.into_iter().collect();
        family.sort_by(|a, b| a.name.cmp(&b.name));
        Instance { universe, family, weighted }
    }

    pub fn new(
        universe: impl IntoIterator<Item = ElementId>,
        family: impl IntoIterator<Item = NamedSet>,
        weighted: bool,
    ) -> Result<Instance> {
        let inst = Instance::new_unchecked(universe, family, weighted);
        let report = validate(&inst, false);
        match report.violations.first() {
            None => Ok(inst),
            Some(v) => Err(Error::InvalidInstance(v.to_string())),
        }
    }

    pub fn universe(&self) -> &[ElementId] {
        &self.universe
    }

    pub fn family(&self) -> &[NamedSet] {
        &self.family
    }

    pub fn weighted(&self) -> bool {
        self.weighted
    }

    pub fn num_elements(&self) -> usize {
        self.universe.len()
    }

    pub fn num_sets(&self) -> usize {
        self.family.len()
    }

    pub fn contains_element(&self, id: &ElementId) -> bool {
        self.universe.binary_search(id).is_ok()
    }

    pub fn set(&self, name: &SetName) -> Option<&NamedSet> {
        self.family
            .binary_search_by(|s| s.name.cmp(name))
            .ok()
            .map(|i| &self.family[i])
    }

    pub fn set_names(&self) -> impl Iterator<Item = &SetName> {
        self.family.iter().map(|s| &s.name)
    }

    /// Largest extent size; the `d` of the greedy bound `H_d * OPT`.
    pub fn max_extent(&self) -> usize {
        self.family.iter().map(|s| s.extent.len()).max().unwrap_or(0)
    }
}

/// One violated invariant with a witness, e.g. `element b uncovered`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

/// Outcome of [`validate`]: hard violations plus (in permissive mode)
/// warnings for duplicate extents.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Check every instance invariant; in strict mode duplicate extents are a
/// violation, otherwise a warning.
pub fn validate(inst: &Instance, strict: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut push = |code, message| report.violations.push(Violation { code, message });

    for pair in inst.universe.windows(2) {
        if pair[0] == pair[1] {
            push("duplicate-element", format!("element {} listed twice in the universe", pair[0]));
        }
    }
    for pair in inst.family.windows(2) {
        if pair[0].name == pair[1].name {
            push("duplicate-set-name", format!("set name {} used twice", pair[0].name));
        }
    }
    for set in &inst.family {
        if let Some(e) = set.extent.iter().find(|e| !inst.contains_element(e)) {
            push(
                "extent-outside-universe",
                format!("set {} contains unknown element {e}", set.name),
            );
        }
    }
    let covered: BTreeSet<&ElementId> = inst.family.iter().flat_map(|s| s.extent.iter()).collect();
    for e in &inst.universe {
        if !covered.contains(e) {
            push("uncovered-element", format!("element {e} uncovered"));
        }
    }
    if !inst.weighted {
        for set in &inst.family {
            if !set.weight.is_one() {
                push(
                    "non-unit-weight",
                    format!("set {} has weight {} in an unweighted instance", set.name, set.weight),
                );
            }
        }
    }
    let mut by_extent: BTreeMap<&BTreeSet<ElementId>, &SetName> = BTreeMap::new();
    for set in &inst.family {
        if let Some(prev) = by_extent.insert(&set.extent, &set.name) {
            let v = Violation {
                code: "duplicate-extent",
                message: format!("duplicate extent: sets {prev} and {}", set.name),
            };
            if strict {
                report.violations.push(v);
            } else {
                report.warnings.push(v);
            }
        }
    }
    report
}

/// A selection of family sets together with its cached exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    chosen: BTreeSet<SetName>,
    value: Rational,
}

impl Solution {
    /// Bind a set of names to an instance, checking that every name exists
    /// and computing the exact value.
    pub fn new(inst: &Instance, chosen: BTreeSet<SetName>) -> Result<Solution> {
        let value = value_of(inst, &chosen)?;
        Ok(Solution { chosen, value })
    }

    pub fn empty() -> Solution {
        Solution { chosen: BTreeSet::new(), value: Rational::ZERO }
    }

    pub fn chosen(&self) -> &BTreeSet<SetName> {
        &self.chosen
    }

    pub fn value(&self) -> Rational {
        self.value
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn contains(&self, name: &SetName) -> bool {
        self.chosen.contains(name)
    }
}

/// Exact sum of the chosen sets' weights; equals the cardinality on
/// unweighted instances.
pub fn value_of(inst: &Instance, chosen: &BTreeSet<SetName>) -> Result<Rational> {
    let mut total = Rational::ZERO;
    for name in chosen {
        let set = inst.set(name).ok_or_else(|| Error::UnknownSet(name.to_string()))?;
        total = total.add(&set.weight)?;
    }
    Ok(total)
}

/// True iff the union of the chosen extents equals the universe.
pub fn is_cover(inst: &Instance, sol: &Solution) -> Result<bool> {
    let mut covered: BTreeSet<&ElementId> = BTreeSet::new();
    for name in sol.chosen() {
        let set = inst.set(name).ok_or_else(|| Error::UnknownSet(name.to_string()))?;
        covered.extend(set.extent.iter());
    }
    Ok(inst.universe.iter().all(|e| covered.contains(e)))
}

#[cfg(test)]
pub(crate) fn elem(s: &str) -> ElementId {
    ElementId::new(s).expect("valid element token")
}

#[cfg(test)]
pub(crate) fn sname(s: &str) -> SetName {
    SetName::new(s).expect("valid set token")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(universe: &[&str], sets: &[(&str, &[&str])]) -> Instance {
        Instance::new_unchecked(
            universe.iter().map(|e| elem(e)),
            sets.iter().map(|(n, ext)| {
                NamedSet::unit(sname(n), ext.iter().map(|e| elem(e)).collect())
            }),
            false,
        )
    }

    #[test]
    fn validate_minimal_feasible() {
        let i = inst(&["a"], &[("s1", &["a"])]);
        assert!(validate(&i, false).is_ok());
    }

    #[test]
    fn validate_reports_uncovered_element() {
        let i = inst(&["a", "b"], &[("s1", &["a"])]);
        let r = validate(&i, false);
        assert!(!r.is_ok());
        assert_eq!(r.first().unwrap().code, "uncovered-element");
        assert!(r.first().unwrap().message.contains("element b uncovered"));
    }

    #[test]
    fn validate_duplicate_extent_strict_only() {
        let i = inst(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["a", "b"])]);
        assert!(validate(&i, false).is_ok());
        assert_eq!(validate(&i, false).warnings.len(), 1);
        let strict = validate(&i, true);
        assert_eq!(strict.first().unwrap().code, "duplicate-extent");
    }

    #[test]
    fn is_cover_examples() {
        let i = inst(&["a", "b"], &[("s1", &["a", "b"]), ("s2", &["a"])]);
        let full = Solution::new(&i, [sname("s1")].into()).unwrap();
        let partial = Solution::new(&i, [sname("s2")].into()).unwrap();
        assert!(is_cover(&i, &full).unwrap());
        assert!(!is_cover(&i, &partial).unwrap());

        let triangle = inst(
            &["1", "2", "3"],
            &[("s12", &["1", "2"]), ("s23", &["2", "3"]), ("s13", &["1", "3"])],
        );
        let two = Solution::new(&triangle, [sname("s12"), sname("s23")].into()).unwrap();
        assert!(is_cover(&triangle, &two).unwrap());
    }

    #[test]
    fn value_examples() {
        let i = inst(&["a", "b", "c"], &[("s1", &["a"]), ("s2", &["b"]), ("s3", &["c"])]);
        assert_eq!(Solution::empty().value(), Rational::ZERO);
        let all = Solution::new(&i, i.set_names().cloned().collect()).unwrap();
        assert_eq!(all.value(), Rational::from_int(3));

        let w = Instance::new_unchecked(
            [elem("a"), elem("b")],
            [
                NamedSet::new(sname("s1"), [elem("a")].into(), Rational::new(1, 2).unwrap()),
                NamedSet::new(sname("s2"), [elem("b")].into(), Rational::new(3, 2).unwrap()),
            ],
            true,
        );
        let both = Solution::new(&w, w.set_names().cloned().collect()).unwrap();
        assert_eq!(both.value(), Rational::from_int(2));
    }

    #[test]
    fn value_rejects_unknown_set() {
        let i = inst(&["a"], &[("s1", &["a"])]);
        assert!(matches!(
            Solution::new(&i, [sname("zz")].into()),
            Err(Error::UnknownSet(_))
        ));
    }

    #[test]
    fn value_is_permutation_invariant() {
        let i = inst(&["a", "b"], &[("s1", &["a"]), ("s2", &["b"])]);
        let ab = Solution::new(&i, [sname("s1"), sname("s2")].into()).unwrap();
        let ba = Solution::new(&i, [sname("s2"), sname("s1")].into()).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn tokens_reject_whitespace_and_delimiters() {
        assert!(ElementId::new("a b").is_err());
        assert!(ElementId::new("").is_err());
        assert!(ElementId::new("a:b").is_err());
        assert!(SetName::new("s#1").is_err());
        assert!(ElementId::new("x'").is_ok());
    }
}
