//! Exact linear algebra: Gauss-Jordan elimination into an affine solution space,
//! and feasibility under finitely many disequalities.
//!
//! Over an infinite field an affine space is never a finite union of proper
//! hyperplanes, so a system of disequalities is infeasible on a space exactly
//! when one of them vanishes identically there. Witnesses come from the moment
//! curve `t(T) = (T, T^2, ..., T^d)`: each restricted functional becomes a
//! nonzero polynomial in `T` of degree at most `d`, so some integer
//! `T <= d * k` avoids all `k` of them.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    ctx: FieldContext,
    unknowns: usize,
    rows: Vec<Vec<FieldElement>>,
    rhs: Vec<FieldElement>,
}

impl LinearSystem {
    pub fn new(ctx: FieldContext, unknowns: usize) -> Self {
        LinearSystem {
            ctx,
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds the equation `row . x = rhs`.
    pub fn push(&mut self, row: Vec<FieldElement>, rhs: FieldElement) -> Result<()> {
        if row.len() != self.unknowns {
            return Err(Error::DimensionMismatch {
                expected: self.unknowns,
                found: row.len(),
            });
        }
        for c in row.iter().chain(std::iter::once(&rhs)) {
            self.ctx.ensure_same(&c.context())?;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(())
    }

    /// Adds `L(x) = 0` for an affine functional `L`.
    pub fn push_functional(&mut self, l: &AffineFunctional) -> Result<()> {
        self.push(l.gradient.clone(), -&l.constant)
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[FieldElement] {
        &self.rhs
    }

    /// Residual `A x - b`.
    pub fn residual(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| &dot(row, x, self.ctx) - b)
            .collect()
    }
}

fn dot(a: &[FieldElement], b: &[FieldElement], ctx: FieldContext) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::zero(ctx), |acc, (x, y)| &acc + &(x * y))
}

/// `x0 + span(basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub particular: Vec<FieldElement>,
    /// One vector per free unknown, in increasing unknown order.
    pub basis: Vec<Vec<FieldElement>>,
    pub rank: usize,
}

impl AffineSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.particular.len()
    }

    /// `x0 + sum_k t_k v_k`.
    pub fn point(&self, t: &[FieldElement]) -> Vec<FieldElement> {
        let mut x = self.particular.clone();
        for (tk, v) in t.iter().zip(&self.basis) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi = &*xi + &(tk * vi);
            }
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// `combination . A = 0` while `combination . b != 0`.
    Inconsistent {
        combination: Vec<FieldElement>,
    },
    Consistent(AffineSolutionSpace),
}

/// Gauss-Jordan elimination; the pivot is the first nonzero entry at or below
/// the current row. Row operations are mirrored on an identity block so an
/// inconsistency comes with its certificate.
pub fn solve(sys: &LinearSystem) -> Solution {
    let ctx = sys.ctx;
    let rows = sys.rows.len();
    let cols = sys.unknowns;
    let zero = FieldElement::zero(ctx);
    // [A | b | I]
    let mut aug: Vec<Vec<FieldElement>> = sys
        .rows
        .iter()
        .zip(&sys.rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let mut r = row.clone();
            r.push(b.clone());
            r.extend((0..rows).map(|k| if k == i { FieldElement::one(ctx) } else { zero.clone() }));
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].inv().expect("pivot is nonzero");
        for v in aug[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&factor * pv);
            }
        }
        pivots.push(c);
        r += 1;
    }

    if let Some(bad) = aug[r..].iter().find(|row| !row[cols].is_zero()) {
        return Solution::Inconsistent {
            combination: bad[cols + 1..].to_vec(),
        };
    }

    let mut particular = vec![zero.clone(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); cols];
            v[f] = FieldElement::one(ctx);
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&aug[i][f];
            }
            v
        })
        .collect();
    Solution::Consistent(AffineSolutionSpace {
        particular,
        basis,
        rank: pivots.len(),
    })
}

/// `x -> gradient . x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFunctional {
    pub gradient: Vec<FieldElement>,
    pub constant: FieldElement,
}

impl AffineFunctional {
    pub fn new(gradient: Vec<FieldElement>, constant: FieldElement) -> Self {
        AffineFunctional { gradient, constant }
    }

    pub fn context(&self) -> FieldContext {
        self.constant.context()
    }

    pub fn evaluate(&self, x: &[FieldElement]) -> Result<FieldElement> {
        if x.len() != self.gradient.len() {
            return Err(Error::DimensionMismatch {
                expected: self.gradient.len(),
                found: x.len(),
            });
        }
        Ok(&dot(&self.gradient, x, self.context()) + &self.constant)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.constant.is_zero() && self.gradient.iter().all(FieldElement::is_zero)
    }

    pub fn is_nonzero_constant(&self) -> bool {
        !self.constant.is_zero() && self.gradient.iter().all(FieldElement::is_zero)
    }
}

/// `t -> L(x0 + B t)` as a functional on the space's parameters.
pub fn restrict(l: &AffineFunctional, space: &AffineSolutionSpace) -> Result<AffineFunctional> {
    let constant = l.evaluate(&space.particular)?;
    let ctx = l.context();
    let gradient = space.basis.iter().map(|v| dot(&l.gradient, v, ctx)).collect();
    Ok(AffineFunctional { gradient, constant })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// Functional `index` vanishes on the whole space.
    Infeasible { index: usize },
    /// `point` avoids every functional; found at moment-curve parameter `t`.
    Witness { point: Vec<FieldElement>, t: u64 },
}

/// Finds a point of `space` where every functional in `disequalities` is nonzero.
pub fn feasible_point(space: &AffineSolutionSpace, disequalities: &[AffineFunctional]) -> Result<Feasibility> {
    let restricted = disequalities
        .iter()
        .map(|l| restrict(l, space))
        .collect::<Result<Vec<_>>>()?;
    if let Some(index) = restricted.iter().position(AffineFunctional::is_identically_zero) {
        return Ok(Feasibility::Infeasible { index });
    }
    let d = space.dimension();
    let ctx = match disequalities.first() {
        Some(l) => l.context(),
        None => {
            return Ok(Feasibility::Witness {
                point: space.particular.clone(),
                t: 0,
            })
        }
    };
    let bound = (d as u64) * (restricted.len() as u64);
    for t in 0..=bound {
        let tt = FieldElement::from_int(ctx, t as i64);
        let params: Vec<FieldElement> = (1..=d).map(|k| tt.pow(k)).collect();
        let ok = restricted
            .iter()
            .all(|l| !l.evaluate(&params).expect("dimension checked").is_zero());
        if ok {
            return Ok(Feasibility::Witness {
                point: space.point(&params),
                t,
            });
        }
    }
    Err(Error::Postcondition(
        "moment-curve search exceeded its root-count bound".into(),
    ))
}
