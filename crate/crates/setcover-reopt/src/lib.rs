//! A toolkit for set cover reoptimization.
//!
//! Reoptimization asks: given an instance, a good solution for it, and a
//! locally modified instance, how well can the modified instance be solved?
//! This crate makes that question executable for (weighted) set cover:
//!
//! * an exact instance/solution model over exact rationals ([`model`],
//!   [`rational`]), with line-based text formats ([`mod@format`]);
//! * solvers ([`solvers`]): a deterministic exact branch-and-bound oracle,
//!   a bounded search tree for `OPT <= k?`, and the greedy
//!   `H_d`-approximation;
//! * the four local modifications — add/remove a set, add/remove an
//!   element — as invertible transformations ([`modifications`]);
//! * reoptimization algorithms ([`reopt`]): the (1 + rho) repair for
//!   element additions, the case-distinction scheme for unweighted element
//!   changes, and a driver that walks a chain of modified instances to turn
//!   an approximation scheme into a parameterized decision procedure;
//! * hardness gadgets ([`reductions`]): instance constructors with known
//!   old optima, claimed optimum identities, and extraction maps, plus
//!   transfer wrappers that carry a reoptimization solver's ratio back to
//!   plain set cover;
//! * a harness ([`harness`]): seeded reproducible generation and batch
//!   certification of every gadget claim against the exact oracle.
//!
//! ```
//! use setcover_reopt::{format, modifications, solvers};
//! use setcover_reopt::modifications::Modification;
//!
//! let inst = format::parse_instance(
//!     "universe: a b c\nset s1: a b\nset s2: b c\nset s3: c\n",
//! ).unwrap();
//! let best = solvers::solve_exact(&inst).unwrap();
//! assert_eq!(best.value().to_string(), "2");
//!
//! let m = format::parse_modification("rm-elem c\n").unwrap();
//! let smaller = modifications::apply(&inst, &m).unwrap();
//! assert_eq!(smaller.num_elements(), 2);
//! let undo = modifications::inverse(&m, &inst).unwrap();
//! assert!(matches!(undo, Modification::AddElement { .. }));
//! assert_eq!(modifications::apply(&smaller, &undo).unwrap(), inst);
//! ```

pub mod cli;
mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod model;
pub mod modifications;
pub mod ratio;
pub mod rational;
pub mod reductions;
pub mod reopt;
pub mod solvers;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{ElementId, Instance, NamedSet, SetName, Solution};
pub use ratio::RatioFunction;
pub use rational::Rational;
