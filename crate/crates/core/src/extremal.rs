//! Extremal instances and exact counting at the structural boundaries of
//! strict 3-SAT.
//!
//! Two constructions bracket the satisfiable regime:
//!
//! * the minimal unsatisfiable core: all 8 sign patterns over one variable
//!   triple, which removes every assignment to that subcube regardless of
//!   the remaining N-3 variables;
//! * the maximal satisfiable instance for a target assignment: every clause
//!   the target satisfies -- 7 per triple, 7*C(N,3) total -- whose unique
//!   solution is the target; appending any excluded clause makes it
//!   unsatisfiable.
//!
//! Triples are ordered lexicographically and the 8 clauses per triple by
//! their 3-bit falsifying pattern, so constructed formulas are canonical.

use serde_json::json;

use crate::error::{Error, Result};
use crate::formula::{Clause, Formula};
use crate::hypercube::AssignmentIndex;

/// The 8 clauses covering every sign pattern on `triple`; unsatisfiable for
/// any `n >= 3` because every assignment falsifies exactly one of them.
pub fn make_unsat_core(n: u32, triple: (u32, u32, u32)) -> Result<Formula> {
    let (i, j, k) = triple;
    if n < 3 {
        return Err(Error::InvalidN { n: n as u64 });
    }
    if !(1 <= i && i < j && j < k && k <= n) {
        return Err(Error::InvalidTriple { i, j, k, n });
    }
    let clauses = (0..8)
        .map(|p| Clause::from_triple_pattern([i, j, k], p))
        .collect();
    Formula::new(n, clauses)
}

/// C(n,3): the number of variable triples, hence of canonical minimal cores.
pub fn count_min_cores(n: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidN { n: n as u64 });
    }
    let n = n as u128;
    u64::try_from(n * (n - 1) * (n - 2) / 6)
        .map_err(|_| Error::Unsupported(format!("triple count for n={n} overflows u64")))
}

/// A maximal satisfiable instance together with the clauses it excluded
/// (the unique falsifier of the target on each triple, in triple order).
#[derive(Clone, Debug)]
pub struct MaxSatInstance {
    pub formula: Formula,
    pub target: AssignmentIndex,
    pub excluded: Vec<Clause>,
}

/// For each of the C(n,3) triples, include the 7 clauses the target
/// satisfies; the result has 7*C(n,3) clauses and `target` as its unique
/// solution.
pub fn make_max_sat(n: u32, target: AssignmentIndex) -> Result<MaxSatInstance> {
    if n < 3 {
        return Err(Error::InvalidN { n: n as u64 });
    }
    if n > 63 {
        return Err(Error::Unsupported(
            "maximal instances use u64 assignment indices (n <= 63)".into(),
        ));
    }
    if target >= 1u64 << n {
        return Err(Error::Config(format!(
            "target index {target} out of range for {n} variables"
        )));
    }
    let mut clauses = Vec::new();
    let mut excluded = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let bit = |v: u32| (target >> (v - 1) & 1) as u8;
                let falsifier = bit(i) | bit(j) << 1 | bit(k) << 2;
                for p in 0..8 {
                    let c = Clause::from_triple_pattern([i, j, k], p);
                    if p == falsifier {
                        excluded.push(c);
                    } else {
                        clauses.push(c);
                    }
                }
            }
        }
    }
    Ok(MaxSatInstance {
        formula: Formula::new(n, clauses)?,
        target,
        excluded,
    })
}

/// Append one excluded clause (by its triple position) to a maximal
/// satisfiable instance; the result falsifies the last solution and is
/// unsatisfiable.
pub fn extend_to_unsat(inst: &MaxSatInstance, excluded_idx: usize) -> Formula {
    assert!(excluded_idx < inst.excluded.len());
    let mut f = inst.formula.clone();
    f.push(inst.excluded[excluded_idx])
        .expect("excluded clause ranges over the same variables");
    f
}

/// The exact structural boundary numbers for n variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsSummary {
    pub n_vars: u64,
    /// Every strict formula with at most this many clauses is satisfiable.
    pub m_guaranteed_sat: u64,
    /// Lowest density at which unsatisfiability is possible, as (num, den).
    pub alpha_min_unsat: (u64, u64),
    /// C(n,3) canonical minimal unsatisfiable cores.
    pub n_min_cores: u128,
    /// 7*C(n,3): size of every maximal satisfiable instance.
    pub m_maxsat: u128,
    /// 8*C(n,3): the whole clause universe.
    pub m_max: u128,
    /// 2^n maximal satisfiable instances, as a decimal string.
    pub n_maximal_sat_instances: String,
}

pub fn bounds_summary(n: u64) -> Result<BoundsSummary> {
    if n < 3 {
        return Err(Error::InvalidN { n });
    }
    if n > 10_000 {
        return Err(Error::Unsupported(
            "bounds summaries are computed for n <= 10000".into(),
        ));
    }
    let triples = (n as u128) * (n as u128 - 1) * (n as u128 - 2) / 6;
    Ok(BoundsSummary {
        n_vars: n,
        m_guaranteed_sat: 7,
        alpha_min_unsat: (8, n),
        n_min_cores: triples,
        m_maxsat: 7 * triples,
        m_max: 8 * triples,
        n_maximal_sat_instances: pow2_decimal(n),
    })
}

impl BoundsSummary {
    /// JSON with the potentially huge counts as decimal strings, so readers
    /// in any language keep exactness.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n_vars": self.n_vars,
            "m_guaranteed_sat": self.m_guaranteed_sat,
            "alpha_min_unsat": { "num": self.alpha_min_unsat.0, "den": self.alpha_min_unsat.1 },
            "n_min_cores": self.n_min_cores.to_string(),
            "m_maxsat": self.m_maxsat.to_string(),
            "m_max": self.m_max.to_string(),
            "n_maximal_sat_instances": self.n_maximal_sat_instances,
        })
    }
}

/// 2^n as a decimal string, by repeated doubling over decimal digits.
fn pow2_decimal(n: u64) -> String {
    let mut digits = vec![1u8]; // little-endian decimal
    for _ in 0..n {
        let mut carry = 0u8;
        for d in &mut digits {
            let v = *d * 2 + carry;
            *d = v % 10;
            carry = v / 10;
        }
        if carry > 0 {
            digits.push(carry);
        }
    }
    digits.iter().rev().map(|d| (b'0' + d) as char).collect()
}
