//! Process-wide counters recording which engine operations ran.

use std::sync::atomic::{AtomicUsize, Ordering};

pub const OPERATIONS: &[&str] = &[
    "orient",
    "complete",
    "normal_form",
    "ideal_membership",
    "tensor_quotient",
    "specialize",
    "check_delta_hom",
    "check_coassoc",
    "check_counit",
    "check_algebra_morphism",
    "check_coalgebra_morphism",
    "check_equivalence",
];

static COUNTS: [AtomicUsize; 12] = [const { AtomicUsize::new(0) }; 12];

pub fn hit(op: &str) {
    if let Some(i) = OPERATIONS.iter().position(|&o| o == op) {
        COUNTS[i].fetch_add(1, Ordering::Relaxed);
    }
}

pub fn count(op: &str) -> usize {
    OPERATIONS
        .iter()
        .position(|&o| o == op)
        .map_or(0, |i| COUNTS[i].load(Ordering::Relaxed))
}

pub fn snapshot() -> Vec<(&'static str, usize)> {
    OPERATIONS.iter().map(|&o| (o, count(o))).collect()
}
