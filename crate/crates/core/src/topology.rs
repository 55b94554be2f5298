//! Cluster decomposition of a solution set under Hamming-1 adjacency, and
//! the frozen / removed variables it induces.
//!
//! Clusters are the maximal connected components of the valid vertices; two
//! clusters are strictly disjoint (no Hamming-1 edge crosses them). A
//! variable is locally frozen in a cluster when every member agrees on its
//! value, and globally frozen when all of S agrees. Labels are deterministic:
//! clusters are numbered by their smallest member index, ascending.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, PartialAssignment};
use crate::hypercube::{full_space_with_cap, AssignmentIndex, SolutionSet, DEFAULT_ENUM_CAP};

const NO_CLUSTER: u32 = u32::MAX;

/// The Hamming-1 connected components of a solution set.
#[derive(Clone, Debug)]
pub struct ClusterReport {
    n_vars: u32,
    labels: Vec<u32>,
    sizes: Vec<u64>,
}

impl ClusterReport {
    pub fn n_clusters(&self) -> usize {
        self.sizes.len()
    }

    /// Per-cluster solution counts, indexed by label.
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn cluster_of(&self, idx: AssignmentIndex) -> Option<u32> {
        match self.labels[idx as usize] {
            NO_CLUSTER => None,
            label => Some(label),
        }
    }
}

/// Iterative breadth-first flood fill over the valid vertices. The explicit
/// queue keeps the deepest instances (2^22 vertices) off the call stack.
pub fn clusters(s: &SolutionSet) -> ClusterReport {
    let n = s.n_vars();
    let total = 1u64 << n;
    let mut labels = vec![NO_CLUSTER; total as usize];
    let mut sizes = Vec::new();
    let mut queue: VecDeque<u64> = VecDeque::new();

    for start in 0..total {
        if !s.contains(start) || labels[start as usize] != NO_CLUSTER {
            continue;
        }
        let label = sizes.len() as u32;
        labels[start as usize] = label;
        queue.push_back(start);
        let mut size = 0u64;
        while let Some(cur) = queue.pop_front() {
            size += 1;
            for bit in 0..n {
                let nb = cur ^ (1 << bit);
                if s.contains(nb) && labels[nb as usize] == NO_CLUSTER {
                    labels[nb as usize] = label;
                    queue.push_back(nb);
                }
            }
        }
        sizes.push(size);
    }
    ClusterReport {
        n_vars: n,
        labels,
        sizes,
    }
}

/// Locally and globally frozen variables, as var -> forced value maps.
#[derive(Clone, Debug)]
pub struct FreezeReport {
    pub per_cluster: Vec<BTreeMap<u32, bool>>,
    pub global_frozen: BTreeMap<u32, bool>,
}

/// Per-cluster AND/OR accumulators over member indices: a variable is frozen
/// at 1 when it survives the AND, frozen at 0 when it never enters the OR.
fn frozen_map(n: u32, and_acc: u64, or_acc: u64) -> BTreeMap<u32, bool> {
    let mut map = BTreeMap::new();
    for var in 1..=n {
        let bit = 1u64 << (var - 1);
        if and_acc & bit != 0 {
            map.insert(var, true);
        } else if or_acc & bit == 0 {
            map.insert(var, false);
        }
    }
    map
}

pub fn freeze_report(s: &SolutionSet, cr: &ClusterReport) -> Result<FreezeReport> {
    if cr.sizes.is_empty() {
        return Err(Error::EmptySolutionSpace);
    }
    debug_assert_eq!(cr.n_vars, s.n_vars());
    let k = cr.sizes.len();
    let mut and_acc = vec![u64::MAX; k];
    let mut or_acc = vec![0u64; k];
    for idx in s.indices() {
        let label = cr.labels[idx as usize] as usize;
        and_acc[label] &= idx;
        or_acc[label] |= idx;
    }
    let n = s.n_vars();
    let per_cluster: Vec<_> = (0..k)
        .map(|c| frozen_map(n, and_acc[c], or_acc[c]))
        .collect();
    let global_and = and_acc.iter().fold(u64::MAX, |a, &b| a & b);
    let global_or = or_acc.iter().fold(0u64, |a, &b| a | b);
    Ok(FreezeReport {
        per_cluster,
        global_frozen: frozen_map(n, global_and, global_or),
    })
}

/// Variables taking a single value across the entire solution set.
pub fn globally_frozen(s: &SolutionSet) -> Result<BTreeMap<u32, bool>> {
    let mut and_acc = u64::MAX;
    let mut or_acc = 0u64;
    let mut any = false;
    for idx in s.indices() {
        and_acc &= idx;
        or_acc |= idx;
        any = true;
    }
    if !any {
        return Err(Error::EmptySolutionSpace);
    }
    Ok(frozen_map(s.n_vars(), and_acc, or_acc))
}

/// Free variables whose both polarities immediately falsify some clause
/// under `partial` -- the purely syntactic removed-variable check.
#[derive(Clone, Debug)]
pub struct RemovalProbe {
    pub partial: Vec<(u32, bool)>,
    pub removed_vars: BTreeSet<u32>,
}

pub fn immediately_removed_vars(f: &Formula, partial: &PartialAssignment) -> RemovalProbe {
    assert_eq!(partial.n_vars(), f.n_vars());
    let mut removed = BTreeSet::new();
    for var in 1..=f.n_vars() {
        if !partial.is_free(var) {
            continue;
        }
        let conflicts_at = |value: bool| {
            f.clauses().iter().any(|c| {
                c.lits().iter().all(|l| {
                    let assigned = if l.var() == var {
                        Some(value)
                    } else {
                        partial.get(l.var())
                    };
                    assigned == Some(l.falsifying_value())
                })
            })
        };
        if conflicts_at(false) && conflicts_at(true) {
            removed.insert(var);
        }
    }
    RemovalProbe {
        partial: partial.assigned_pairs(),
        removed_vars: removed,
    }
}

/// One step of the clause-by-clause trajectory. `n_global_frozen` is `None`
/// once the solution set is empty (freezing undefined).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayRow {
    pub m: usize,
    pub n_solutions: u64,
    pub n_clusters: u64,
    pub n_global_frozen: Option<u32>,
}

/// Apply clauses one at a time in formula order, recording (m, |S|,
/// clusters, globally frozen count) after each. An empty formula yields the
/// single unconstrained row.
pub fn replay_topology(f: &Formula) -> Result<Vec<ReplayRow>> {
    replay_topology_with_cap(f, DEFAULT_ENUM_CAP)
}

pub fn replay_topology_with_cap(f: &Formula, cap: u32) -> Result<Vec<ReplayRow>> {
    let mut s = full_space_with_cap(f.n_vars(), cap)?;
    if f.clauses().is_empty() {
        return Ok(vec![ReplayRow {
            m: 0,
            n_solutions: s.count(),
            n_clusters: 1,
            n_global_frozen: Some(0),
        }]);
    }
    let mut rows = Vec::with_capacity(f.n_clauses());
    for (i, c) in f.clauses().iter().enumerate() {
        s.apply_clause_in_place(c);
        let cr = clusters(&s);
        let n_solutions = s.count();
        let n_global_frozen = if n_solutions > 0 {
            Some(globally_frozen(&s).expect("non-empty set").len() as u32)
        } else {
            None
        };
        rows.push(ReplayRow {
            m: i + 1,
            n_solutions,
            n_clusters: cr.n_clusters() as u64,
            n_global_frozen,
        });
    }
    Ok(rows)
}

/// JSON-facing summary of a formula's solution-space topology.
/// `cluster_sizes` is sorted descending with `n_locally_frozen_per_cluster`
/// aligned to it; `global_frozen` lists +v for frozen-true, -v for
/// frozen-false.
#[derive(Clone, Debug, Serialize)]
pub struct TopologyReport {
    pub n_vars: u32,
    pub n_clauses: usize,
    pub n_solutions: u64,
    pub n_clusters: u64,
    pub cluster_sizes: Vec<u64>,
    pub n_locally_frozen_per_cluster: Vec<u32>,
    pub global_frozen: Vec<i64>,
}

pub fn topology_report(f: &Formula, cap: u32) -> Result<TopologyReport> {
    let s = crate::hypercube::enumerate_with_cap(f, cap)?;
    let cr = clusters(&s);
    let n_solutions = s.count();
    if n_solutions == 0 {
        return Ok(TopologyReport {
            n_vars: f.n_vars(),
            n_clauses: f.n_clauses(),
            n_solutions: 0,
            n_clusters: 0,
            cluster_sizes: Vec::new(),
            n_locally_frozen_per_cluster: Vec::new(),
            global_frozen: Vec::new(),
        });
    }
    let fr = freeze_report(&s, &cr)?;
    let mut order: Vec<usize> = (0..cr.n_clusters()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(cr.sizes[c]), c));
    let cluster_sizes = order.iter().map(|&c| cr.sizes[c]).collect();
    let n_locally_frozen_per_cluster = order
        .iter()
        .map(|&c| fr.per_cluster[c].len() as u32)
        .collect();
    let global_frozen = fr
        .global_frozen
        .iter()
        .map(|(&var, &val)| if val { var as i64 } else { -(var as i64) })
        .collect();
    Ok(TopologyReport {
        n_vars: f.n_vars(),
        n_clauses: f.n_clauses(),
        n_solutions,
        n_clusters: cr.n_clusters() as u64,
        cluster_sizes,
        n_locally_frozen_per_cluster,
        global_frozen,
    })
}
