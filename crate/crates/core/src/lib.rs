//! Subgroup perfect codes in Cayley graphs of finite groups.
//!
//! A subgroup `H` of a finite group `G` is a perfect code of `G` when some
//! Cayley graph `Cay(G, S)` has `H` as an efficient dominating set;
//! equivalently, when `H` has a left (or right) transversal that contains
//! `e` and is closed under inverses. This crate builds groups as explicit
//! multiplication tables and decides that question, always returning a
//! checkable witness:
//!
//! * [`group`] / [`families`]: tables, standard families, permutation closure.
//! * [`subgroups`]: generation, enumeration, cosets, normality, complements.
//! * [`cayley`]: Cayley graphs and the three perfect-code criteria.
//! * [`construct`]: transversal constructions and the brute-force oracle.
//! * [`classify`]: decision procedures and the code-perfect test.
//! * [`dsl`], [`labels`], [`catalogue`], [`cli`]: front end.

pub mod catalogue;
pub mod cayley;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod dsl;
pub mod element;
pub mod error;
pub mod families;
pub mod group;
pub mod labels;
pub mod subgroups;

pub use cayley::{
    build_cayley, group_ring_product_check, is_perfect_code_graph, is_transversal, CayleyGraph, ConnectionSet,
    MultiplicityMap,
};
pub use classify::{decide, enumerate_codes, is_code_perfect, quaternion_codes, CodeDecision, Limits, Method, Mode};
pub use construct::{
    coset_obstruction, involution_transversal, order4free_transversal, search_transversal, SearchOutcome, Transversal,
};
pub use dsl::{parse_spec, pretty_print};
pub use element::{ElementId, ElementSet};
pub use error::{Error, Result};
pub use families::{build_group, GroupSpec};
pub use group::FiniteGroup;
pub use subgroups::{all_subgroups, cosets, generated_subgroup, Side, Subgroup};
