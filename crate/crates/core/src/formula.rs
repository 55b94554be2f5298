//! Literals, strict 3-clauses, formulas, and the seeded random generator.
//!
//! Variables are 1-based externally (DIMACS convention). At the bit level,
//! assignment index bit `v-1` carries the truth value of variable `x_v`, so
//! variable 1 is the least-significant bit.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// A signed occurrence of a variable. `var >= 1` always holds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn positive(var: u32) -> Literal {
        assert!(var >= 1, "variable indices are 1-based");
        Literal {
            var,
            negated: false,
        }
    }

    pub fn negative(var: u32) -> Literal {
        assert!(var >= 1, "variable indices are 1-based");
        Literal { var, negated: true }
    }

    pub fn new(var: u32, negated: bool) -> Literal {
        if negated {
            Literal::negative(var)
        } else {
            Literal::positive(var)
        }
    }

    pub fn from_dimacs(code: i32) -> Result<Literal> {
        if code == 0 {
            return Err(Error::Config("literal 0 is the clause terminator".into()));
        }
        Ok(Literal {
            var: code.unsigned_abs(),
            negated: code < 0,
        })
    }

    #[inline]
    pub fn var(self) -> u32 {
        self.var
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        !self.negated
    }

    #[inline]
    pub fn negate(self) -> Literal {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// The variable value that makes this literal false: positive literals
    /// are falsified by 0, negative literals by 1.
    #[inline]
    pub fn falsifying_value(self) -> bool {
        self.negated
    }

    /// True value of the literal under assignment-index `idx`.
    #[inline]
    pub fn satisfied_by(self, idx: u64) -> bool {
        let bit = (idx >> (self.var - 1)) & 1 == 1;
        bit != self.falsifying_value()
    }

    pub fn to_dimacs(self) -> i32 {
        if self.negated {
            -(self.var as i32)
        } else {
            self.var as i32
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A strict 3-clause: exactly three literals over pairwise-distinct
/// variables, stored in canonical order (ascending variable index). Any
/// permutation of the same literals constructs an identical value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    lits: [Literal; 3],
}

impl Clause {
    pub fn new(a: Literal, b: Literal, c: Literal) -> Result<Clause> {
        let mut lits = [a, b, c];
        lits.sort_unstable();
        if lits[0].var == lits[1].var {
            return Err(Error::DuplicateVariable { var: lits[0].var });
        }
        if lits[1].var == lits[2].var {
            return Err(Error::DuplicateVariable { var: lits[1].var });
        }
        Ok(Clause { lits })
    }

    /// Convenience constructor from three signed DIMACS codes.
    pub fn from_dimacs_lits(a: i32, b: i32, c: i32) -> Result<Clause> {
        Clause::new(
            Literal::from_dimacs(a)?,
            Literal::from_dimacs(b)?,
            Literal::from_dimacs(c)?,
        )
    }

    /// Canonical clause over a sorted triple of distinct variables whose
    /// falsifying pattern is the low 3 bits of `pattern` (bit j = value that
    /// falsifies the literal on `vars[j]`).
    pub(crate) fn from_triple_pattern(vars: [u32; 3], pattern: u8) -> Clause {
        debug_assert!(vars[0] < vars[1] && vars[1] < vars[2]);
        debug_assert!(vars[0] >= 1);
        debug_assert!(pattern < 8);
        let lit = |j: usize| Literal {
            var: vars[j],
            negated: pattern >> j & 1 == 1,
        };
        Clause {
            lits: [lit(0), lit(1), lit(2)],
        }
    }

    #[inline]
    pub fn lits(&self) -> &[Literal; 3] {
        &self.lits
    }

    #[inline]
    pub fn vars(&self) -> [u32; 3] {
        [self.lits[0].var, self.lits[1].var, self.lits[2].var]
    }

    pub fn max_var(&self) -> u32 {
        self.lits[2].var
    }

    /// The unique variable values under which every literal is false: the
    /// clause removes exactly the assignments matching all three bits.
    pub fn falsifying_pattern(&self) -> ([u32; 3], [bool; 3]) {
        (
            self.vars(),
            [
                self.lits[0].falsifying_value(),
                self.lits[1].falsifying_value(),
                self.lits[2].falsifying_value(),
            ],
        )
    }

    /// Falsifying pattern packed into the low 3 bits (bit j for `vars()[j]`).
    pub fn pattern_bits(&self) -> u8 {
        let mut p = 0u8;
        for (j, lit) in self.lits.iter().enumerate() {
            if lit.falsifying_value() {
                p |= 1 << j;
            }
        }
        p
    }

    /// Evaluate under a full assignment given as an index.
    #[inline]
    pub fn satisfied_by(&self, idx: u64) -> bool {
        self.lits.iter().any(|l| l.satisfied_by(idx))
    }

    /// True iff all three literals are assigned and false.
    pub fn falsified_by(&self, partial: &PartialAssignment) -> bool {
        self.lits
            .iter()
            .all(|l| partial.get(l.var) == Some(l.falsifying_value()))
    }

    pub fn to_dimacs(&self) -> [i32; 3] {
        [
            self.lits[0].to_dimacs(),
            self.lits[1].to_dimacs(),
            self.lits[2].to_dimacs(),
        ]
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_dimacs();
        write!(f, "({} {} {})", a, b, c)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An ordered list of strict 3-clauses over variables `1..=n_vars`.
/// Clause order is preserved as built so clause-by-clause replay is
/// meaningful; duplicate clauses are legal except in unique-mode generation.
#[derive(Clone, PartialEq, Eq)]
pub struct Formula {
    n_vars: u32,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(n_vars: u32, clauses: Vec<Clause>) -> Result<Formula> {
        if n_vars < 3 {
            return Err(Error::InvalidN { n: n_vars as u64 });
        }
        for c in &clauses {
            if c.max_var() > n_vars {
                return Err(Error::VarOutOfRange {
                    var: c.max_var(),
                    n_vars,
                });
            }
        }
        Ok(Formula { n_vars, clauses })
    }

    pub fn empty(n_vars: u32) -> Result<Formula> {
        Formula::new(n_vars, Vec::new())
    }

    #[inline]
    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    #[inline]
    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    #[inline]
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Constraint density M/N.
    pub fn alpha(&self) -> f64 {
        self.clauses.len() as f64 / self.n_vars as f64
    }

    pub fn push(&mut self, c: Clause) -> Result<()> {
        if c.max_var() > self.n_vars {
            return Err(Error::VarOutOfRange {
                var: c.max_var(),
                n_vars: self.n_vars,
            });
        }
        self.clauses.push(c);
        Ok(())
    }

    /// Seeded random formula: each clause picks a uniform variable triple
    /// (three distinct variables) and an independent uniform sign pattern
    /// out of 8. Deterministic for a fixed config.
    pub fn random(cfg: &GenConfig) -> Result<Formula> {
        if cfg.n_vars < 3 {
            return Err(Error::InvalidN {
                n: cfg.n_vars as u64,
            });
        }
        if cfg.mode == SampleMode::Unique {
            let capacity = clause_universe_size(cfg.n_vars)?;
            if cfg.n_clauses > capacity {
                return Err(Error::CapacityExceeded {
                    requested: cfg.n_clauses,
                    capacity,
                    n: cfg.n_vars,
                });
            }
        }
        let mut rng = Rng::new(cfg.seed);
        let mut clauses = Vec::with_capacity(cfg.n_clauses as usize);
        let mut seen: HashSet<Clause> = HashSet::new();
        while (clauses.len() as u64) < cfg.n_clauses {
            let c = random_clause(&mut rng, cfg.n_vars);
            if cfg.mode == SampleMode::Unique && !seen.insert(c) {
                continue;
            }
            clauses.push(c);
        }
        Ok(Formula {
            n_vars: cfg.n_vars,
            clauses,
        })
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula(n={}, m={})", self.n_vars, self.clauses.len())
    }
}

fn random_clause(rng: &mut Rng, n: u32) -> Clause {
    let n = n as u64;
    let v1 = rng.below(n) as u32 + 1;
    let v2 = loop {
        let v = rng.below(n) as u32 + 1;
        if v != v1 {
            break v;
        }
    };
    let v3 = loop {
        let v = rng.below(n) as u32 + 1;
        if v != v1 && v != v2 {
            break v;
        }
    };
    let mut vars = [v1, v2, v3];
    vars.sort_unstable();
    let pattern = rng.below(8) as u8;
    Clause::from_triple_pattern(vars, pattern)
}

/// How random clauses are drawn: independently (duplicates allowed) or with
/// canonical duplicates rejected and redrawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleMode {
    #[default]
    #[serde(rename = "replacement")]
    WithReplacement,
    #[serde(rename = "unique")]
    Unique,
}

/// Configuration for [`Formula::random`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_vars: u32,
    pub n_clauses: u64,
    #[serde(default)]
    pub mode: SampleMode,
    pub seed: u64,
}

/// Number of distinct canonical strict 3-clauses over `n` variables:
/// 8 * C(n,3) = (4/3) n (n-1) (n-2).
pub fn clause_universe_size(n: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidN { n: n as u64 });
    }
    let n = n as u128;
    let triples = n * (n - 1) * (n - 2) / 6;
    u64::try_from(8 * triples)
        .map_err(|_| Error::Unsupported(format!("clause universe for n={n} overflows u64")))
}

/// A partial truth assignment over variables `1..=n_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
    n_assigned: u32,
}

impl PartialAssignment {
    pub fn new(n_vars: u32) -> PartialAssignment {
        PartialAssignment {
            values: vec![None; n_vars as usize],
            n_assigned: 0,
        }
    }

    pub fn from_pairs(n_vars: u32, pairs: &[(u32, bool)]) -> PartialAssignment {
        let mut pa = PartialAssignment::new(n_vars);
        for &(var, value) in pairs {
            pa.set(var, value);
        }
        pa
    }

    #[inline]
    pub fn n_vars(&self) -> u32 {
        self.values.len() as u32
    }

    #[inline]
    pub fn n_assigned(&self) -> u32 {
        self.n_assigned
    }

    #[inline]
    pub fn get(&self, var: u32) -> Option<bool> {
        self.values[(var - 1) as usize]
    }

    #[inline]
    pub fn is_free(&self, var: u32) -> bool {
        self.get(var).is_none()
    }

    pub fn set(&mut self, var: u32, value: bool) {
        let slot = &mut self.values[(var - 1) as usize];
        if slot.is_none() {
            self.n_assigned += 1;
        }
        *slot = Some(value);
    }

    pub fn unset(&mut self, var: u32) {
        let slot = &mut self.values[(var - 1) as usize];
        if slot.is_some() {
            self.n_assigned -= 1;
        }
        *slot = None;
    }

    pub fn assigned_pairs(&self) -> Vec<(u32, bool)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| (i as u32 + 1, b)))
            .collect()
    }

    /// Pack a full assignment into its index (bit v-1 = value of x_v).
    /// Requires every variable assigned and `n_vars <= 64`.
    pub fn to_index(&self) -> u64 {
        debug_assert_eq!(self.n_assigned as usize, self.values.len());
        let mut idx = 0u64;
        for (i, v) in self.values.iter().enumerate() {
            if v.expect("full assignment required") {
                idx |= 1 << i;
            }
        }
        idx
    }
}
