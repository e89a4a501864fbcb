//! 3-CNF formulas, DIMACS input and a truth-table solver.

use std::fmt;

use crate::error::Error;
use crate::Result;

/// A signed variable; variables are numbered from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, positive: false }
    }

    pub fn from_dimacs(x: i64) -> Result<Self> {
        if x == 0 || x.unsigned_abs() > u32::MAX as u64 {
            return Err(Error::Formula(format!("bad literal {x}")));
        }
        Ok(Literal { var: x.unsigned_abs() as u32, positive: x > 0 })
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CnfFormula {
    pub variable_count: u32,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Validates arity, variable range, distinctness and tautologies.
    pub fn new(variable_count: u32, clauses: Vec<Clause>) -> Result<Self> {
        if variable_count == 0 {
            return Err(Error::Formula("no variables".into()));
        }
        if clauses.is_empty() {
            return Err(Error::Formula("no clauses".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            for (a, l) in c.iter().enumerate() {
                if l.var == 0 || l.var > variable_count {
                    return Err(Error::Formula(format!("clause {i}: variable {} out of range", l.var)));
                }
                for m in &c[a + 1..] {
                    if m.var == l.var {
                        let what = if m.positive == l.positive { "repeated literal" } else { "tautological" };
                        return Err(Error::Formula(format!("clause {i} is {what}")));
                    }
                }
            }
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    pub fn from_dimacs_clauses(variable_count: u32, clauses: &[[i64; 3]]) -> Result<Self> {
        let cl = clauses
            .iter()
            .map(|c| Ok([Literal::from_dimacs(c[0])?, Literal::from_dimacs(c[1])?, Literal::from_dimacs(c[2])?]))
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(variable_count, cl)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(a)))
    }

    /// Variables that occur in no clause.
    pub fn unused_variables(&self) -> Vec<u32> {
        (1..=self.variable_count)
            .filter(|&v| !self.clauses.iter().flatten().any(|l| l.var == v))
            .collect()
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            s += &format!("{} {} {} 0\n", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs());
        }
        s
    }
}

/// Parses DIMACS CNF. Clauses may span lines; `c` lines are comments.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: n + 1, msg };
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" || header.is_some() {
                return Err(perr("expected `p cnf <vars> <clauses>`".into()));
            }
            let v = parts[2].parse().map_err(|_| perr("bad variable count".into()))?;
            let c = parts[3].parse().map_err(|_| perr("bad clause count".into()))?;
            header = Some((v, c));
            continue;
        }
        if header.is_none() {
            return Err(perr("clause before header".into()));
        }
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| perr(format!("bad token `{tok}`")))?;
            if x == 0 {
                if cur.len() != 3 {
                    return Err(Error::Formula(format!("clause {} has {} literals, expected 3", clauses.len(), cur.len())));
                }
                clauses.push([cur[0], cur[1], cur[2]]);
                cur.clear();
            } else {
                cur.push(x);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(Error::Parse { line: 0, msg: "missing header".into() });
    };
    if !cur.is_empty() {
        return Err(Error::Formula("last clause is not terminated by 0".into()));
    }
    if count != clauses.len() {
        return Err(Error::Formula(format!("header announces {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::from_dimacs_clauses(vars, &clauses)
}

/// Truth values for variables 1..=n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(n: u32) -> Self {
        Assignment { values: vec![false; n as usize] }
    }

    pub fn value(&self, var: u32) -> bool {
        self.values[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, v: bool) {
        self.values[var as usize - 1] = v;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Parses signed DIMACS-style literals such as `"1 -2 3"`; unlisted
    /// variables are false.
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        let mut a = Assignment::all_false(n);
        for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let x: i64 = tok.parse().map_err(|_| Error::Formula(format!("bad literal `{tok}`")))?;
            let l = Literal::from_dimacs(x)?;
            if l.var > n {
                return Err(Error::Formula(format!("variable {} out of range", l.var)));
            }
            a.set(l.var, l.positive);
        }
        Ok(a)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| if v { format!("{}", i + 1) } else { format!("-{}", i + 1) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Largest variable count accepted by [`sat_bruteforce`].
pub const BRUTEFORCE_LIMIT: u32 = 24;

/// First satisfying assignment in truth-table order (false < true, variable
/// 1 most significant).
pub fn sat_bruteforce(phi: &CnfFormula) -> Result<Option<Assignment>> {
    let n = phi.variable_count;
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::Formula(format!("{n} variables exceed the brute-force limit {BRUTEFORCE_LIMIT}")));
    }
    for bits in 0u64..(1 << n) {
        let a = Assignment::new((0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect());
        if phi.is_satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
