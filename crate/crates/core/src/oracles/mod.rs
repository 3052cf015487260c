//! Black-box decision functions `f : {0,1}^n → {0,1}` and their call accounting.

mod dimacs;

use std::sync::atomic::{AtomicU64, Ordering};

pub use dimacs::{parse_dimacs, CnfFormula};

use crate::error::{Error, Result};
use crate::statevec::{check_width, BasisIndex};

/// Widest input `brute_force_solutions` will enumerate (about a million evaluations).
pub const MAX_ENUMERATION_WIDTH: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    /// `f(x) = 1` iff `x == ω`.
    Marked(BasisIndex),
    /// `f(x) = 1` iff `x` satisfies every clause; variable `i` is bit `i`
    /// of the basis string, counting from the most significant end.
    Cnf(CnfFormula),
}

/// A decision function plus a counter of state-level oracle applications.
///
/// The counter is atomic, so a shared `&OracleSpec` may be applied from
/// several threads and every application is counted exactly once.
#[derive(Debug)]
pub struct OracleSpec {
    n: usize,
    predicate: Predicate,
    calls: AtomicU64,
}

impl OracleSpec {
    pub fn marked(omega: BasisIndex) -> Result<Self> {
        check_width(omega.width())?;
        Ok(Self {
            n: omega.width(),
            predicate: Predicate::Marked(omega),
            calls: AtomicU64::new(0),
        })
    }

    pub fn cnf(formula: CnfFormula) -> Result<Self> {
        check_width(formula.num_vars())?;
        Ok(Self {
            n: formula.num_vars(),
            predicate: Predicate::Cnf(formula),
            calls: AtomicU64::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    /// Number of state-level applications recorded so far.
    pub fn call_count(&self) -> u64 {
        self.calls.load(Ordering::SeqCst)
    }

    pub(crate) fn record_call(&self) {
        self.calls.fetch_add(1, Ordering::SeqCst);
    }

    /// Classical evaluation of `f(x)`. Never touches the call counter.
    pub fn evaluate(&self, x: BasisIndex) -> Result<bool> {
        if x.width() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.width(),
            });
        }
        Ok(self.eval_raw(x.value()))
    }

    pub(crate) fn eval_raw(&self, x: u64) -> bool {
        match &self.predicate {
            Predicate::Marked(omega) => x == omega.value(),
            Predicate::Cnf(formula) => {
                let n = self.n;
                formula.satisfied_by(|var| (x >> (n - var)) & 1 == 1)
            }
        }
    }

    /// Every `x` with `f(x) = 1`, in ascending order.
    pub fn brute_force_solutions(&self) -> Result<Vec<BasisIndex>> {
        if self.n > MAX_ENUMERATION_WIDTH {
            return Err(Error::EnumerationRefused {
                n: self.n,
                max: MAX_ENUMERATION_WIDTH,
            });
        }
        Ok((0..1u64 << self.n)
            .filter(|&x| self.eval_raw(x))
            .map(|x| BasisIndex::new(x, self.n).expect("x < 2^n"))
            .collect())
    }

    /// The unique solution, or a refusal naming how many were found.
    ///
    /// Marked-string oracles are unique by construction and skip enumeration.
    pub fn unique_solution(&self) -> Result<BasisIndex> {
        if let Predicate::Marked(omega) = &self.predicate {
            return Ok(*omega);
        }
        let solutions = self.brute_force_solutions()?;
        match solutions.as_slice() {
            [only] => Ok(*only),
            _ => Err(Error::NotUnique {
                count: solutions.len(),
            }),
        }
    }
}
