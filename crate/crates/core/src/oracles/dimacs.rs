//! DIMACS CNF reader.
//!
//! Accepts `c` comment lines anywhere, exactly one `p cnf <vars> <clauses>`
//! header before the first clause, and clauses as whitespace-separated
//! literals terminated by `0` (a clause may span lines). A line starting with
//! `%` ends the input, as in the SATLIB benchmark files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A formula in conjunctive normal form. Literal `v` means variable `v`
/// true, `-v` means variable `v` false; variables are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidArgument(
                "formula needs at least one variable".into(),
            ));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidArgument(format!("clause {i} is empty")));
            }
            if let Some(&lit) = clause
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() > num_vars as u64)
            {
                return Err(Error::InvalidArgument(format!(
                    "literal {lit} in clause {i} out of range for {num_vars} variables"
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// Evaluates the formula under `assignment`, where `assignment(v)` is the
    /// value of variable `v` (1-based).
    pub fn satisfied_by(&self, assignment: impl Fn(usize) -> bool) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment(lit.unsigned_abs() as usize) == (lit > 0))
        })
    }

    /// Renders the formula back to DIMACS text.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate problem line"));
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let (num_vars, _) =
            header.ok_or_else(|| parse_err(line_no, "clause before `p cnf` header"))?;
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid literal {token:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(parse_err(line_no, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() > num_vars as u64 {
                    return Err(parse_err(
                        line_no,
                        format!("literal {lit} exceeds declared {num_vars} variables"),
                    ));
                }
                current.push(lit);
            }
        }
    }

    let (num_vars, num_clauses) =
        header.ok_or_else(|| parse_err(last_line.max(1), "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(parse_err(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(parse_err(
            last_line.max(1),
            format!(
                "header declares {num_clauses} clauses but {} were found",
                clauses.len()
            ),
        ));
    }
    Ok(CnfFormula { num_vars, clauses })
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["p", "cnf", vars, clauses] => {
            let vars: usize = vars
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid variable count {vars:?}")))?;
            let clauses: usize = clauses
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid clause count {clauses:?}")))?;
            if vars == 0 {
                return Err(parse_err(line_no, "variable count must be positive"));
            }
            Ok((vars, clauses))
        }
        _ => Err(parse_err(
            line_no,
            format!("malformed problem line {line:?}, expected `p cnf <vars> <clauses>`"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn two_unit_clauses() {
        let f = parse_dimacs("p cnf 2 2\n1 0\n2 0\n").unwrap();
        assert_eq!(f, CnfFormula::new(2, vec![vec![1], vec![2]]).unwrap());
    }

    #[test]
    fn comment_then_negative_literal() {
        let f = parse_dimacs("c comment\np cnf 1 1\n-1 0\n").unwrap();
        assert_eq!(f.num_vars(), 1);
        assert_eq!(f.clauses(), &[vec![-1]]);
    }

    #[test]
    fn literal_out_of_range() {
        let err = parse_dimacs("p cnf 2 1\n3 0\n").unwrap_err();
        assert_eq!(line_of(err), 2);
    }

    #[test]
    fn clause_spanning_lines_and_trailing_percent() {
        let f = parse_dimacs("p cnf 3 1\n1 -2\n3 0\n%\n0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2, 3]]);
    }

    #[test]
    fn error_paths_carry_line_numbers() {
        assert_eq!(line_of(parse_dimacs("1 0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_dimacs("p cnf 2\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_dimacs("p dnf 2 1\n1 0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_dimacs("p cnf 2 1\n\n0\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_dimacs("p cnf 2 1\n1 x 0\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_dimacs("p cnf 2 2\n1 0\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_dimacs("p cnf 0 0\n").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_dimacs("p cnf 1 1\np cnf 1 1\n1 0\n").unwrap_err()),
            2
        );
        assert_eq!(line_of(parse_dimacs("").unwrap_err()), 1);
    }

    #[test]
    fn dimacs_text_round_trip() {
        let f = CnfFormula::new(3, vec![vec![1, -3], vec![2], vec![-1, -2, 3]]).unwrap();
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn constructor_validates() {
        assert!(CnfFormula::new(0, vec![]).is_err());
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![-3]]).is_err());
    }
}
