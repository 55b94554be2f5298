//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the library's strided bit-vector
//! path: they evaluate clauses per assignment, so agreement between the two
//! routes is meaningful.

#![allow(dead_code)]

use satcube::formula::{Clause, Formula};

pub fn formula(n: u32, lits: &[[i32; 3]]) -> Formula {
    let clauses = lits
        .iter()
        .map(|&[a, b, c]| Clause::from_dimacs_lits(a, b, c).unwrap())
        .collect();
    Formula::new(n, clauses).unwrap()
}

/// One clause: removes only the all-false corner.
pub fn single_clause_instance() -> Formula {
    formula(3, &[[1, 2, 3]])
}

/// Three clauses that cut every bridge out of the all-false corner,
/// splitting S into {000} and a 4-vertex cluster.
pub fn shattering_instance() -> Formula {
    formula(3, &[[-1, 2, 3], [1, -2, 3], [1, 2, -3]])
}

/// Four clauses removing the whole x1=0 face; x1 freezes globally.
pub fn face_removal_instance() -> Formula {
    formula(3, &[[1, 2, 3], [1, 2, -3], [1, -2, 3], [1, -2, -3]])
}

/// Per-assignment evaluation oracle: the valid indices in ascending order.
pub fn naive_solutions(f: &Formula) -> Vec<u64> {
    assert!(f.n_vars() <= 24, "oracle is exponential");
    (0..1u64 << f.n_vars())
        .filter(|&idx| f.clauses().iter().all(|c| c.satisfied_by(idx)))
        .collect()
}

/// Variables frozen across a set of assignment indices, as (var, value)
/// pairs, computed by direct scanning.
pub fn naive_frozen(n: u32, members: &[u64]) -> Vec<(u32, bool)> {
    assert!(!members.is_empty());
    let mut out = Vec::new();
    for var in 1..=n {
        let first = members[0] >> (var - 1) & 1;
        if members.iter().all(|&m| m >> (var - 1) & 1 == first) {
            out.push((var, first == 1));
        }
    }
    out
}
