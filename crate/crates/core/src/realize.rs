//! Deciding whether a multiplicity matrix comes from a polynomial.
//!
//! The unknowns are the lower coefficients `c_0..c_{N-1}` of a monic degree-`N`
//! polynomial. Each entry `mu_{i,j}` turns into the linear functional
//! `f^(j)(lambda_i) = sum_k (k)_j c_k lambda_i^(k-j)`: an equation when
//! `mu_{i,j} >= 1` and a disequality when `mu_{i,j} = 0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, Rational};
use crate::linalg::{feasible_point, solve, AffineFunctional, Feasibility, LinearSystem, Solution};
use crate::multiplicity::{multiplicity_matrix_of, LambdaSequence, MultiplicityMatrix};
use crate::poly::{falling_factorial, Polynomial};

/// Where a constraint came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Matrix entry `(row, column)`.
    Entry { row: usize, column: usize },
    /// Coefficient `c_k` fixed by a forced derivative.
    Pinned { coefficient: usize },
}

/// What an entry of the matrix became.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Equality(usize),
    Disequality(usize),
    /// Column `N`, or a functional that is a nonzero constant.
    Omitted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintEncoding {
    ctx: FieldContext,
    degree: usize,
    n: usize,
    equalities: LinearSystem,
    equality_origins: Vec<Origin>,
    disequalities: Vec<AffineFunctional>,
    disequality_origins: Vec<Origin>,
    slots: Vec<Vec<Slot>>,
}

impl ConstraintEncoding {
    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    /// Degree `N` of the sought polynomial.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn equalities(&self) -> &LinearSystem {
        &self.equalities
    }

    pub fn equality_origins(&self) -> &[Origin] {
        &self.equality_origins
    }

    pub fn disequalities(&self) -> &[AffineFunctional] {
        &self.disequalities
    }

    pub fn disequality_origins(&self) -> &[Origin] {
        &self.disequality_origins
    }

    pub fn slot(&self, row: usize, column: usize) -> Slot {
        self.slots[row][column]
    }

    /// Zero entries that produced no disequality.
    pub fn omitted(&self) -> usize {
        self.slots.iter().flatten().filter(|s| **s == Slot::Omitted).count()
    }

    /// Adds `c_k = value`.
    fn pin(&mut self, k: usize, value: FieldElement) -> Result<()> {
        let mut row = vec![FieldElement::zero(self.ctx); self.degree];
        row[k] = FieldElement::one(self.ctx);
        self.equalities.push(row, value)?;
        self.equality_origins.push(Origin::Pinned { coefficient: k });
        Ok(())
    }
}

fn check_shape(m: &MultiplicityMatrix, lambda: &LambdaSequence) -> Result<()> {
    if lambda.len() != m.m() {
        return Err(Error::DimensionMismatch {
            expected: m.m(),
            found: lambda.len(),
        });
    }
    Ok(())
}

/// `f -> f^(j)(lambda)` for monic `f` of degree `big_n`.
fn derivative_functional(ctx: FieldContext, big_n: usize, lambda: &FieldElement, j: usize) -> AffineFunctional {
    let term = |k: usize| {
        let ff = FieldElement::from_bigint(ctx, falling_factorial(k as u64, j as u64));
        &ff * &lambda.pow(k - j)
    };
    let mut gradient = vec![FieldElement::zero(ctx); big_n];
    for (k, g) in gradient.iter_mut().enumerate().skip(j) {
        *g = term(k);
    }
    AffineFunctional::new(gradient, term(big_n))
}

pub fn encode(m: &MultiplicityMatrix, lambda: &LambdaSequence, big_n: usize) -> Result<ConstraintEncoding> {
    check_shape(m, lambda)?;
    let n = m.n();
    if big_n < n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: big_n,
        });
    }
    let ctx = lambda.context();
    let mut enc = ConstraintEncoding {
        ctx,
        degree: big_n,
        n,
        equalities: LinearSystem::new(ctx, big_n),
        equality_origins: Vec::new(),
        disequalities: Vec::new(),
        disequality_origins: Vec::new(),
        slots: vec![vec![Slot::Omitted; n + 1]; m.m()],
    };
    for (i, point) in lambda.points().iter().enumerate() {
        for j in 0..=n {
            let origin = Origin::Entry { row: i, column: j };
            if m.entry(i, j) >= 1 {
                let l = derivative_functional(ctx, big_n, point, j);
                enc.slots[i][j] = Slot::Equality(enc.equalities.len());
                enc.equalities.push_functional(&l)?;
                enc.equality_origins.push(origin);
            } else if j < big_n {
                let l = derivative_functional(ctx, big_n, point, j);
                if !l.is_nonzero_constant() {
                    enc.slots[i][j] = Slot::Disequality(enc.disequalities.len());
                    enc.disequalities.push(l);
                    enc.disequality_origins.push(origin);
                }
            }
        }
    }
    Ok(enc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Realizable,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `sum weight * equation` reads `0 = nonzero`.
    InconsistentEqualities { combination: Vec<(Origin, FieldElement)> },
    /// This disequality vanishes on every solution of the equalities.
    VanishedDisequality { origin: Origin },
    /// The forced polynomial (or derivative) disagrees with the matrix here.
    ForcedMismatch { row: usize, column: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationResult {
    pub status: Status,
    pub witness: Option<Polynomial>,
    /// Dimension of the solution space of the equalities, when they are consistent.
    pub dimension: Option<usize>,
    pub unique: bool,
    pub certificate: Option<Certificate>,
}

impl RealizationResult {
    pub fn is_realizable(&self) -> bool {
        self.status == Status::Realizable
    }

    fn infeasible(dimension: Option<usize>, certificate: Certificate) -> Self {
        RealizationResult {
            status: Status::Infeasible,
            witness: None,
            dimension,
            unique: false,
            certificate: Some(certificate),
        }
    }
}

fn first_difference(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<(usize, usize)> {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(i, (ra, rb))| ra.iter().zip(rb).position(|(x, y)| x != y).map(|j| (i, j)))
}

fn solve_encoding(
    enc: &ConstraintEncoding,
    m: &MultiplicityMatrix,
    lambda: &LambdaSequence,
) -> Result<RealizationResult> {
    let space = match solve(&enc.equalities) {
        Solution::Inconsistent { combination } => {
            let combination = combination
                .into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(k, w)| (enc.equality_origins[k], w))
                .collect();
            return Ok(RealizationResult::infeasible(
                None,
                Certificate::InconsistentEqualities { combination },
            ));
        }
        Solution::Consistent(space) => space,
    };
    let d = space.dimension();
    let point = match feasible_point(&space, &enc.disequalities)? {
        Feasibility::Infeasible { index } => {
            return Ok(RealizationResult::infeasible(
                Some(d),
                Certificate::VanishedDisequality {
                    origin: enc.disequality_origins[index],
                },
            ))
        }
        Feasibility::Witness { point, .. } => point,
    };
    let mut coeffs = point;
    coeffs.push(FieldElement::one(enc.ctx));
    let witness = Polynomial::new(enc.ctx, coeffs)?;
    let got = multiplicity_matrix_of(&witness, lambda)?.prefix_columns(enc.n);
    if let Some((i, j)) = first_difference(&got, &m.to_raw()) {
        return Err(Error::Postcondition(format!(
            "witness {witness} misses entry ({i}, {j})"
        )));
    }
    Ok(RealizationResult {
        status: Status::Realizable,
        witness: Some(witness),
        dimension: Some(d),
        unique: d == 0,
        certificate: None,
    })
}

/// Is there a monic `f` of degree `n` with `M_f(Lambda) = M`?
pub fn realize(m: &MultiplicityMatrix, lambda: &LambdaSequence) -> Result<RealizationResult> {
    let enc = encode(m, lambda, m.n())?;
    solve_encoding(&enc, m, lambda)
}

/// Smallest `j <= n - 1` with `colsum_j = n - j`.
pub fn saturated_column(m: &MultiplicityMatrix) -> Option<usize> {
    let n = m.n();
    (0..n).find(|&j| m.colsum(j) == n - j)
}

/// Uses `f^(j) = (n)_j prod (x - lambda_i)^{mu_{i,j}}` at the first saturated column.
pub fn realize_forced(m: &MultiplicityMatrix, lambda: &LambdaSequence) -> Result<RealizationResult> {
    check_shape(m, lambda)?;
    let j = saturated_column(m).ok_or(Error::NoSaturatedColumn)?;
    let n = m.n();
    let ctx = lambda.context();
    let roots: Vec<(FieldElement, usize)> = lambda
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), m.entry(i, j)))
        .collect();
    let scale = FieldElement::from_bigint(ctx, falling_factorial(n as u64, j as u64));
    let h = Polynomial::from_root_powers(&roots, &Polynomial::constant(scale))?;
    let want = m.truncate(j)?.to_raw();
    if let Some((i, k)) = first_difference(&multiplicity_matrix_of(&h, lambda)?.to_raw(), &want) {
        return Ok(RealizationResult::infeasible(
            None,
            Certificate::ForcedMismatch { row: i, column: j + k },
        ));
    }
    if j == 0 {
        return Ok(RealizationResult {
            status: Status::Realizable,
            witness: Some(h),
            dimension: Some(0),
            unique: true,
            certificate: None,
        });
    }
    // h = f^(j) fixes c_k = h_{k-j} / (k)_j for k >= j.
    let mut enc = encode(m, lambda, n)?;
    for k in j..n {
        let ff = FieldElement::from_bigint(ctx, falling_factorial(k as u64, j as u64));
        enc.pin(k, h.coeff(k - j).checked_div(&ff)?)?;
    }
    solve_encoding(&enc, m, lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionOutcome {
    /// Smallest `p` that works, with the degree `n + p` result.
    Extension {
        p: usize,
        result: RealizationResult,
    },
    NoExtensionUpTo(usize),
}

/// Smallest `p <= p_max` with a monic degree `n + p` polynomial matching `M` on columns `0..=n`.
pub fn extend(m: &MultiplicityMatrix, lambda: &LambdaSequence, p_max: usize) -> Result<ExtensionOutcome> {
    for p in 0..=p_max {
        let enc = encode(m, lambda, m.n() + p)?;
        let result = solve_encoding(&enc, m, lambda)?;
        if result.is_realizable() {
            return Ok(ExtensionOutcome::Extension { p, result });
        }
    }
    Ok(ExtensionOutcome::NoExtensionUpTo(p_max))
}

/// Cap on the number of point assignments tried by [`search_lambda`].
pub const SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Realizable assignments, each starting `(0, 1, ...)`.
    pub found: Vec<(LambdaSequence, RealizationResult)>,
    /// When set, `found` lists every realizing sequence up to affine change.
    pub exhaustive: bool,
}

/// Rationals `p/q` with `|p| <= h`, `1 <= q <= h`, by height then value.
pub fn rationals_of_height(h: u64) -> Vec<Rational> {
    let h = h as i64;
    let mut out: Vec<(i64, Rational)> = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            let r = Rational::new(p.into(), q.into());
            out.push((height(&r), r));
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|(_, r)| r).collect()
}

fn height(r: &Rational) -> i64 {
    use num_traits::{Signed, ToPrimitive};
    r.numer().abs().max(r.denom().clone()).to_i64().unwrap_or(i64::MAX)
}

/// Field elements of height at most `h`: rationals, or `a + b sqrt(d)` with
/// both `a` and `b` of height at most `h`.
pub fn elements_of_height(ctx: FieldContext, h: u64) -> Vec<FieldElement> {
    let qs = rationals_of_height(h);
    if ctx.is_rational() {
        return qs.into_iter().map(FieldElement::rational).collect();
    }
    let mut out: Vec<(i64, Rational, Rational)> = Vec::new();
    for a in &qs {
        for b in &qs {
            out.push((height(a).max(height(b)), a.clone(), b.clone()));
        }
    }
    out.sort();
    out.into_iter()
        .map(|(_, a, b)| FieldElement::new(ctx, a, b).expect("extension context"))
        .collect()
}

fn normalized(ctx: FieldContext, rest: &[FieldElement]) -> Result<LambdaSequence> {
    let mut points = vec![FieldElement::zero(ctx), FieldElement::one(ctx)];
    points.extend_from_slice(rest);
    LambdaSequence::new(ctx, points)
}

/// Searches for `Lambda = (0, 1, lambda_3, ..)` realizing `M`.
///
/// Two rows are decided outright. With more rows, points are drawn from
/// [`elements_of_height`]; when column 0 is saturated and the first two rows
/// pin `f` down, the remaining points are read off the roots of `f` instead.
pub fn search_lambda(m: &MultiplicityMatrix, ctx: FieldContext, height_bound: u64) -> Result<SearchOutcome> {
    let rows = m.m();
    if rows < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: rows });
    }
    if rows == 2 {
        let lambda = normalized(ctx, &[])?;
        let result = realize(m, &lambda)?;
        let found = if result.is_realizable() {
            vec![(lambda, result)]
        } else {
            Vec::new()
        };
        return Ok(SearchOutcome {
            found,
            exhaustive: true,
        });
    }
    if let Some(outcome) = search_roots(m, ctx)? {
        return Ok(outcome);
    }
    search_grid(m, ctx, height_bound)
}

/// The saturated-column-0 shortcut. `None` when it does not apply.
fn search_roots(m: &MultiplicityMatrix, ctx: FieldContext) -> Result<Option<SearchOutcome>> {
    let n = m.n();
    if m.colsum(0) != n || (2..m.m()).any(|i| m.entry(i, 0) == 0) {
        return Ok(None);
    }
    let base = normalized(ctx, &[])?;
    let head = realize(&m.select_rows(&[0, 1]), &base)?;
    if !head.is_realizable() {
        return Ok(Some(SearchOutcome {
            found: Vec::new(),
            exhaustive: true,
        }));
    }
    if !head.unique {
        return Ok(None);
    }
    let f = head.witness.expect("realizable");
    let zero = FieldElement::zero(ctx);
    let one = FieldElement::one(ctx);
    let g = f
        .divide_root_power(&zero, m.entry(0, 0))?
        .divide_root_power(&one, m.entry(1, 0))?;
    let Some(roots) = distinct_roots(&g)? else {
        return Ok(None);
    };
    let mult = |r: &FieldElement| g.multiplicity(r);
    let tail: Vec<usize> = (2..m.m()).map(|i| m.entry(i, 0)).collect();
    let mut found = Vec::new();
    for assignment in injections(roots.len(), tail.len()) {
        let pts: Vec<FieldElement> = assignment.iter().map(|&k| roots[k].clone()).collect();
        let fits = pts
            .iter()
            .zip(&tail)
            .map(|(p, &mu)| mult(p).map(|e| e == mu))
            .collect::<Result<Vec<_>>>()?;
        if !fits.iter().all(|&b| b) {
            continue;
        }
        let lambda = normalized(ctx, &pts)?;
        let result = realize(m, &lambda)?;
        if result.is_realizable() {
            found.push((lambda, result));
        }
    }
    Ok(Some(SearchOutcome {
        found,
        exhaustive: true,
    }))
}

/// Roots in the context field of a polynomial of degree at most 2, or `None` for higher degree.
fn distinct_roots(g: &Polynomial) -> Result<Option<Vec<FieldElement>>> {
    let g = g.monic()?;
    let c = |k| g.coeff(k);
    Ok(match g.degree() {
        Some(0) => Some(Vec::new()),
        Some(1) => Some(vec![-&c(0)]),
        Some(2) => {
            let half = FieldElement::from_rational(g.context(), Rational::new(1.into(), 2.into()));
            let b = c(1);
            let disc = &(&b * &b) - &(&FieldElement::from_int(g.context(), 4) * &c(0));
            Some(match disc.sqrt() {
                None => Vec::new(),
                Some(s) if s.is_zero() => vec![&(-&b) * &half],
                Some(s) => vec![&(&(-&b) + &s) * &half, &(&(-&b) - &s) * &half],
            })
        }
        _ => None,
    })
}

/// All injective maps `0..k -> 0..n` in lexicographic order.
fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

fn search_grid(m: &MultiplicityMatrix, ctx: FieldContext, height_bound: u64) -> Result<SearchOutcome> {
    let zero = FieldElement::zero(ctx);
    let one = FieldElement::one(ctx);
    let pool: Vec<FieldElement> = elements_of_height(ctx, height_bound)
        .into_iter()
        .filter(|x| *x != zero && *x != one)
        .collect();
    let free = m.m() - 2;
    let total = (pool.len() as u64).checked_pow(free as u32).unwrap_or(u64::MAX);
    if total > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded { budget: SEARCH_BUDGET });
    }
    let tuples: Vec<Vec<usize>> = injections(pool.len(), free);
    let results: Vec<Option<(LambdaSequence, RealizationResult)>> = tuples
        .par_iter()
        .map(|t| {
            let pts: Vec<FieldElement> = t.iter().map(|&k| pool[k].clone()).collect();
            let lambda = normalized(ctx, &pts)?;
            let result = realize(m, &lambda)?;
            Ok(result.is_realizable().then_some((lambda, result)))
        })
        .collect::<Result<_>>()?;
    Ok(SearchOutcome {
        found: results.into_iter().flatten().collect(),
        exhaustive: false,
    })
}
