//! Exhaustive enumeration of `m x (n+1)` multiplicity matrices.
//!
//! Rows are drawn from the `2^n` support sets in numeric mask order and stacked
//! by backtracking, pruning on running column sums. Output order is fixed.

use crate::error::{Error, Result};
use crate::multiplicity::{vector_from_support, MultiplicityMatrix, MultiplicityVector, SupportSet};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub m: usize,
    pub n: usize,
    /// Prescribed `mu_{i,0}` for each row.
    pub col0: Option<Vec<usize>>,
    /// One representative per row-permutation class (rows non-increasing).
    pub canonical: bool,
    /// Caps both the candidate table size `m * 2^n` and the number of search steps.
    pub budget: u64,
}

impl EnumerationSpec {
    pub fn new(m: usize, n: usize) -> Self {
        EnumerationSpec {
            m,
            n,
            col0: None,
            canonical: false,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_col0(mut self, col0: Vec<usize>) -> Self {
        self.col0 = Some(col0);
        self
    }

    pub fn canonical(mut self, yes: bool) -> Self {
        self.canonical = yes;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Iterator over the matrices described by an [`EnumerationSpec`].
#[derive(Debug)]
pub struct Enumeration {
    n: usize,
    canonical: bool,
    candidates: Vec<Vec<MultiplicityVector>>,
    cursor: Vec<usize>,
    chosen: Vec<usize>,
    colsum: Vec<usize>,
    steps: u64,
    budget: u64,
    finished: bool,
}

pub fn enumerate_matrices(spec: &EnumerationSpec) -> Result<Enumeration> {
    let EnumerationSpec { m, n, .. } = *spec;
    if m == 0 {
        return Err(Error::Empty("row count"));
    }
    if let Some(col0) = &spec.col0 {
        if col0.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: col0.len(),
            });
        }
    }
    let table = if n >= 63 {
        u64::MAX
    } else {
        (m as u64).saturating_mul(1u64 << n)
    };
    if table > spec.budget {
        return Err(Error::BudgetExceeded { budget: spec.budget });
    }

    let all: Vec<MultiplicityVector> = (0..1u64 << n)
        .map(|mask| vector_from_support(&SupportSet::from_mask(n, mask)))
        .collect();

    // Under canonical ordering row 0 is the largest, so a column-0 prescription
    // is read as a multiset and sorted to match.
    let col0 = spec.col0.clone().map(|mut c| {
        if spec.canonical {
            c.sort_by(|a, b| b.cmp(a));
        }
        c
    });
    let candidates = (0..m)
        .map(|i| match &col0 {
            Some(c) => all.iter().filter(|v| v.entries()[0] == c[i]).cloned().collect(),
            None => all.clone(),
        })
        .collect();

    Ok(Enumeration {
        n,
        canonical: spec.canonical,
        candidates,
        cursor: vec![0; m],
        chosen: Vec::with_capacity(m),
        colsum: vec![0; n + 1],
        steps: 0,
        budget: spec.budget,
        finished: false,
    })
}

impl Enumeration {
    fn fits(&self, depth: usize, idx: usize) -> bool {
        let v = &self.candidates[depth][idx];
        if self.canonical && depth > 0 {
            let prev = &self.candidates[depth - 1][self.chosen[depth - 1]];
            if v > prev {
                return false;
            }
        }
        v.entries()
            .iter()
            .enumerate()
            .all(|(j, &e)| self.colsum[j] + e <= self.n - j)
    }

    fn push(&mut self, depth: usize, idx: usize) {
        for (s, &e) in self.colsum.iter_mut().zip(self.candidates[depth][idx].entries()) {
            *s += e;
        }
        self.chosen.push(idx);
    }

    fn pop(&mut self) {
        let depth = self.chosen.len() - 1;
        let idx = self.chosen.pop().expect("pop on empty stack");
        for (s, &e) in self.colsum.iter_mut().zip(self.candidates[depth][idx].entries()) {
            *s -= e;
        }
    }

    fn current(&self) -> MultiplicityMatrix {
        MultiplicityMatrix::from_valid_rows(
            self.chosen
                .iter()
                .enumerate()
                .map(|(d, &i)| self.candidates[d][i].clone())
                .collect(),
        )
    }
}

impl Iterator for Enumeration {
    type Item = Result<MultiplicityMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        let m = self.candidates.len();
        loop {
            let depth = self.chosen.len();
            if depth == m {
                let out = self.current();
                self.pop();
                return Some(Ok(out));
            }
            let mut advanced = false;
            for idx in self.cursor[depth]..self.candidates[depth].len() {
                self.steps += 1;
                if self.steps > self.budget {
                    self.finished = true;
                    return Some(Err(Error::BudgetExceeded { budget: self.budget }));
                }
                if self.fits(depth, idx) {
                    self.cursor[depth] = idx + 1;
                    self.push(depth, idx);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                self.cursor[depth] = 0;
                if depth == 0 {
                    self.finished = true;
                    return None;
                }
                self.pop();
            }
        }
    }
}

/// Collects an enumeration, stopping at the first error.
pub fn collect_matrices(spec: &EnumerationSpec) -> Result<Vec<MultiplicityMatrix>> {
    enumerate_matrices(spec)?.collect()
}
