//! The Mathieu-subspace predicate framework: exactly decidable membership
//! predicates over Laurent/polynomial rings and square rational matrices,
//! the bounded-horizon power tester, and the one-variable moment-problem
//! verifiers.

mod pm;
mod predicate;
mod tester;

pub use pm::{
    compose, decompose_search, folk_streak, pm_verify, PmDecomposition, PmReport,
};
pub use predicate::{Ambient, Element, Predicate, PredicateKind};
pub use tester::{
    atomic_mathieu_condition, atomic_points_sum_condition, interpolating_indicator,
    mathieu_test, one_membership_shortcut, vandermonde_group_sums, MathieuReport,
    ShortcutVerdict, Side, Verdict,
};
