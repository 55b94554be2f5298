//! DIMACS CNF interchange, restricted to strict 3-SAT.
//!
//! Accepted input: optional `c` comment lines, one `p cnf N M` header, then
//! exactly M clause lines, each holding three signed 1-based literals
//! terminated by `0`. Anything that is not a strict 3-clause (wrong arity,
//! repeated variable, out-of-range variable) is rejected with the offending
//! line number.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::formula::{Clause, Formula, Literal};

pub fn parse<R: BufRead>(reader: R) -> Result<Formula> {
    let mut header: Option<(u32, u64)> = None;
    let mut clauses = Vec::new();
    let mut line_no = 0usize;

    for line in reader.lines() {
        let line = line?;
        line_no += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return parse_err(line_no, "duplicate header line");
            }
            header = Some(parse_header(line_no, trimmed)?);
            continue;
        }
        let Some((n_vars, n_clauses)) = header else {
            return parse_err(line_no, "clause before `p cnf` header");
        };
        if clauses.len() as u64 >= n_clauses {
            return parse_err(line_no, "more clauses than declared in header");
        }
        clauses.push(parse_clause(line_no, trimmed, n_vars)?);
    }

    let Some((n_vars, n_clauses)) = header else {
        return parse_err(line_no.max(1), "missing `p cnf` header");
    };
    if (clauses.len() as u64) < n_clauses {
        return parse_err(
            line_no.max(1),
            &format!(
                "header declares {n_clauses} clauses, found {}",
                clauses.len()
            ),
        );
    }
    Formula::new(n_vars, clauses)
}

pub fn parse_str(text: &str) -> Result<Formula> {
    parse(text.as_bytes())
}

fn parse_err<T>(line: usize, msg: &str) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.to_string(),
    })
}

fn parse_header(line_no: usize, line: &str) -> Result<(u32, u64)> {
    let mut tok = line.split_whitespace();
    if tok.next() != Some("p") || tok.next() != Some("cnf") {
        return parse_err(line_no, "malformed header, expected `p cnf N M`");
    }
    let n_vars: u32 = tok
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "invalid variable count in header".into(),
        })?;
    let n_clauses: u64 = tok
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "invalid clause count in header".into(),
        })?;
    if tok.next().is_some() {
        return parse_err(line_no, "trailing tokens after header");
    }
    if n_vars < 3 {
        return parse_err(line_no, "strict 3-SAT needs at least 3 variables");
    }
    Ok((n_vars, n_clauses))
}

fn parse_clause(line_no: usize, line: &str, n_vars: u32) -> Result<Clause> {
    let mut lits: Vec<Literal> = Vec::with_capacity(3);
    let mut terminated = false;
    for tok in line.split_whitespace() {
        if terminated {
            return parse_err(line_no, "tokens after clause terminator 0");
        }
        let code: i32 = tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("invalid literal `{tok}`"),
        })?;
        if code == 0 {
            terminated = true;
            continue;
        }
        let lit = Literal::from_dimacs(code)?;
        if lit.var() > n_vars {
            return parse_err(
                line_no,
                &format!("variable {} out of range 1..={n_vars}", lit.var()),
            );
        }
        lits.push(lit);
    }
    if !terminated {
        return parse_err(line_no, "clause line missing terminating 0");
    }
    if lits.len() != 3 {
        return parse_err(
            line_no,
            &format!(
                "strict 3-clause requires exactly 3 literals, found {}",
                lits.len()
            ),
        );
    }
    Clause::new(lits[0], lits[1], lits[2]).map_err(|e| match e {
        Error::DuplicateVariable { var } => Error::Parse {
            line: line_no,
            msg: format!("repeated variable x{var} in clause"),
        },
        other => other,
    })
}

/// Write `f` in DIMACS form, with optional leading comment lines (written
/// verbatim after a `c ` prefix).
pub fn write<W: Write>(mut out: W, f: &Formula, comments: &[String]) -> std::io::Result<()> {
    for c in comments {
        writeln!(out, "c {c}")?;
    }
    writeln!(out, "p cnf {} {}", f.n_vars(), f.n_clauses())?;
    for clause in f.clauses() {
        let [a, b, c] = clause.to_dimacs();
        writeln!(out, "{a} {b} {c} 0")?;
    }
    Ok(())
}

pub fn to_string(f: &Formula, comments: &[String]) -> String {
    let mut buf = Vec::new();
    write(&mut buf, f, comments).expect("write to Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}
