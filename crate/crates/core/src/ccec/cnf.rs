//! 3-CNF formulas and DIMACS input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Literal as a signed 1-based variable index; negative means negated.
pub type Lit = i32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<[Lit; 3]>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<[Lit; 3]>) -> Result<Self> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(Error::Instance(format!("literal {l} outside 1..={num_vars}")));
                }
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// `assignment[i]` is the value of variable i+1.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| lit_value(l, assignment)))
    }

    /// Lowest satisfying assignment as a bitmask (bit i ↦ x_{i+1}), by exhaustive search.
    pub fn brute_force_sat(&self) -> Option<u64> {
        assert!(self.num_vars < 40, "brute force limited to fewer than 40 variables");
        (0..1u64 << self.num_vars).find(|&mask| self.eval(&mask_to_assignment(mask, self.num_vars)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }
}

pub fn lit_value(l: Lit, assignment: &[bool]) -> bool {
    assignment[l.unsigned_abs() as usize - 1] ^ (l < 0)
}

pub fn mask_to_assignment(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (mask >> i) & 1 == 1).collect()
}

/// Parses DIMACS CNF; every clause must have exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<Lit> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if f.len() != 3 || f[0] != "cnf" {
                return Err(Error::Parse(format!("bad header `{line}`")));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad header `{line}`")));
            header = Some((num(f[1])?, num(f[2])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse("clause before `p cnf` header".into()));
        }
        for tok in line.split_whitespace() {
            let l: Lit = tok.parse().map_err(|_| Error::Parse(format!("bad literal `{tok}`")))?;
            if l == 0 {
                let c: [Lit; 3] = cur.as_slice().try_into().map_err(|_| {
                    Error::Instance(format!("clause has {} literals, expected 3", cur.len()))
                })?;
                clauses.push(c);
                cur.clear();
            } else {
                cur.push(l);
            }
        }
    }
    if !cur.is_empty() {
        return Err(Error::Parse("last clause is not terminated by 0".into()));
    }
    let (vars, count) = header.ok_or_else(|| Error::Parse("missing `p cnf` header".into()))?;
    if count != clauses.len() {
        return Err(Error::Parse(format!("header declares {count} clauses, found {}", clauses.len())));
    }
    Cnf::new(vars, clauses)
}
