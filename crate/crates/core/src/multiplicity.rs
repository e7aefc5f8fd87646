//! Multiplicity vectors and matrices, point sequences, and support sets.

use std::fmt;

use crate::error::{Error, Result, VectorAxiom};
use crate::field::{FieldContext, FieldElement};
use crate::poly::Polynomial;

/// `(mu_0, ..., mu_n)` with `mu_n = 0` and `mu_j >= 1 => mu_{j+1} = mu_j - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector(Vec<usize>);

impl MultiplicityVector {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn zeros(n: usize) -> Self {
        MultiplicityVector(vec![0; n + 1])
    }
}

fn check_axioms(v: &[usize]) -> std::result::Result<(), (usize, VectorAxiom)> {
    let n = v.len() - 1;
    for (j, &mu) in v.iter().enumerate() {
        if mu == 0 {
            continue;
        }
        if j == n {
            return Err((j, VectorAxiom::LastEntryNonzero));
        }
        if v[j + 1] != mu - 1 {
            return Err((j, VectorAxiom::DescentBroken));
        }
    }
    Ok(())
}

/// Accepts `v` iff it satisfies both vector axioms.
pub fn validate_vector(v: &[usize]) -> Result<MultiplicityVector> {
    if v.is_empty() {
        return Err(Error::Empty("multiplicity vector"));
    }
    check_axioms(v).map_err(|(index, axiom)| Error::VectorAxiom { index, axiom })?;
    Ok(MultiplicityVector(v.to_vec()))
}

/// Drops the first `ell` columns of any rectangular matrix; truncation is
/// defined without the multiplicity axioms.
pub fn truncate_raw<R: AsRef<[usize]>>(rows: &[R], ell: usize) -> Result<Vec<Vec<usize>>> {
    let width = rows.first().ok_or(Error::Empty("matrix"))?.as_ref().len();
    if width == 0 {
        return Err(Error::Empty("matrix row"));
    }
    let n = width - 1;
    if ell > n {
        return Err(Error::TruncationOutOfRange { ell, n });
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r.as_ref();
            if r.len() != width {
                return Err(Error::Ragged {
                    row: i,
                    found: r.len(),
                    expected: width,
                });
            }
            Ok(r[ell..].to_vec())
        })
        .collect()
}

/// Rows of common length `n + 1`, each a multiplicity vector, with
/// `colsum_j <= n - j` for every column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityMatrix {
    rows: Vec<MultiplicityVector>,
}

/// Accepts `rows` iff every row is a multiplicity vector and the column sums are bounded.
pub fn validate_matrix<R: AsRef<[usize]>>(rows: &[R]) -> Result<MultiplicityMatrix> {
    let first = rows.first().ok_or(Error::Empty("multiplicity matrix"))?;
    let width = first.as_ref().len();
    if width == 0 {
        return Err(Error::Empty("matrix row"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != width {
            return Err(Error::Ragged {
                row: i,
                found: row.len(),
                expected: width,
            });
        }
        check_axioms(row).map_err(|(index, axiom)| Error::RowAxiom { row: i, index, axiom })?;
        out.push(MultiplicityVector(row.to_vec()));
    }
    let n = width - 1;
    for j in 0..=n {
        let sum: usize = out.iter().map(|r| r.0[j]).sum();
        if sum > n - j {
            return Err(Error::ColumnSum {
                column: j,
                sum: sum as u64,
                bound: (n - j) as u64,
            });
        }
    }
    Ok(MultiplicityMatrix { rows: out })
}

impl MultiplicityMatrix {
    /// Wraps rows already known to be valid (used by enumeration).
    pub(crate) fn from_valid_rows(rows: Vec<MultiplicityVector>) -> Self {
        debug_assert!(validate_matrix(&rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>()).is_ok());
        MultiplicityMatrix { rows }
    }

    pub fn rows(&self) -> &[MultiplicityVector] {
        &self.rows
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].n()
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[i].0[j]
    }

    pub fn colsum(&self, j: usize) -> usize {
        self.rows.iter().map(|r| r.0[j]).sum()
    }

    pub fn to_raw(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.0.clone()).collect()
    }

    /// Drops the first `ell` columns.
    pub fn truncate(&self, ell: usize) -> Result<Self> {
        let n = self.n();
        if ell > n {
            return Err(Error::TruncationOutOfRange { ell, n });
        }
        Ok(MultiplicityMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| MultiplicityVector(r.0[ell..].to_vec()))
                .collect(),
        })
    }

    /// Keeps only the columns `0..=n_keep`. The result is a valid matrix for
    /// degree `n_keep` whenever `mu_{i, n_keep} = 0` for every row.
    pub fn prefix_columns(&self, n_keep: usize) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.0[..=n_keep].to_vec()).collect()
    }

    /// Subset of rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        MultiplicityMatrix {
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Rows sorted lexicographically non-increasing; the row-permutation representative.
    pub fn canonical(&self) -> Self {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| b.cmp(a));
        MultiplicityMatrix { rows }
    }

    pub fn is_canonical(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for MultiplicityMatrix {
    /// One line per row, entries separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.0.iter().map(ToString::to_string).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

/// Distinct points `lambda_1, ..., lambda_m` of one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaSequence {
    points: Vec<FieldElement>,
    ctx: FieldContext,
}

impl LambdaSequence {
    pub fn new(ctx: FieldContext, points: Vec<FieldElement>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            ctx.ensure_same(&p.context())?;
            if points[..i].contains(p) {
                return Err(Error::RepeatedPoint(p.to_string()));
            }
        }
        Ok(LambdaSequence { points, ctx })
    }

    pub fn from_ints(ctx: FieldContext, points: &[i64]) -> Result<Self> {
        Self::new(ctx, points.iter().map(|&p| FieldElement::from_int(ctx, p)).collect())
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }
}

impl fmt::Display for LambdaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `M_f(lambda)`: entry `j` is the multiplicity of `lambda` as a zero of `f^{(j)}`.
pub fn multiplicity_vector_of(f: &Polynomial, lambda: &FieldElement) -> Result<MultiplicityVector> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let entries = (0..=n)
        .map(|j| f.derivative(j).multiplicity(lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiplicityVector(entries))
}

/// `M_f(Lambda)`, one row per point.
pub fn multiplicity_matrix_of(f: &Polynomial, lambda: &LambdaSequence) -> Result<MultiplicityMatrix> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lambda.is_empty() {
        return Err(Error::Empty("point sequence"));
    }
    f.context().ensure_same(&lambda.context())?;
    let rows = lambda
        .points()
        .iter()
        .map(|p| multiplicity_vector_of(f, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiplicityMatrix { rows })
}

/// `g_j` with `f^{(j)} = g_j * prod (x - lambda_i)^{mu_{i,j}}` and `g_j(lambda_i) != 0`.
pub fn cofactor(f: &Polynomial, lambda: &LambdaSequence, j: usize) -> Result<Polynomial> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if j > n {
        return Err(Error::TruncationOutOfRange { ell: j, n });
    }
    f.context().ensure_same(&lambda.context())?;
    let mut g = f.derivative(j);
    for p in lambda.points() {
        let mu = g.multiplicity(p)?;
        g = g.divide_root_power(p, mu)?;
    }
    Ok(g)
}

/// A subset of `{0, ..., n-1}`; maximal runs encode the positive entries of a vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    n: usize,
    members: Vec<usize>,
}

impl SupportSet {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&k| k >= n) {
            return Err(Error::SupportOutOfRange { index: bad, n });
        }
        Ok(SupportSet { n, members })
    }

    /// Bit `k` of `mask` selects index `k`; bits at or above `n` are ignored.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let members = (0..n.min(64)).filter(|k| mask >> k & 1 == 1).collect();
        SupportSet { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

/// Each maximal run `[a, b]` becomes `b-a+1, ..., 1` at positions `a..=b`.
pub fn vector_from_support(z: &SupportSet) -> MultiplicityVector {
    let mut v = vec![0; z.n + 1];
    for j in (0..z.n).rev() {
        if z.members.binary_search(&j).is_ok() {
            v[j] = v[j + 1] + 1;
        }
    }
    MultiplicityVector(v)
}

pub fn support_of_vector(v: &MultiplicityVector) -> SupportSet {
    SupportSet {
        n: v.n(),
        members: (0..v.n()).filter(|&j| v.0[j] > 0).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;
    use proptest::prelude::*;

    const Q: FieldContext = FieldContext::RATIONALS;

    fn ints(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(Q, c)
    }

    fn pt(n: i64) -> FieldElement {
        FieldElement::from_int(Q, n)
    }

    fn lam(p: &[i64]) -> LambdaSequence {
        LambdaSequence::from_ints(Q, p).unwrap()
    }

    #[test]
    fn vector_validation() {
        assert!(validate_vector(&[2, 1, 0, 0]).is_ok());
        assert!(validate_vector(&[2, 1, 0]).is_ok());
        assert!(validate_vector(&[0, 0, 0, 0, 0]).is_ok());
        assert_eq!(
            validate_vector(&[2, 0, 0]),
            Err(Error::VectorAxiom {
                index: 0,
                axiom: VectorAxiom::DescentBroken
            })
        );
        assert_eq!(
            validate_vector(&[0, 0, 1]),
            Err(Error::VectorAxiom {
                index: 2,
                axiom: VectorAxiom::LastEntryNonzero
            })
        );
        assert_eq!(validate_vector(&[]), Err(Error::Empty("multiplicity vector")));
    }

    #[test]
    fn matrix_validation() {
        assert!(validate_matrix(&[[2, 1, 0, 0], [0, 1, 0, 0]]).is_ok());
        assert!(validate_matrix(&[[1, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0]]).is_ok());
        // both rows are vectors, but column 1 sums to 2 > 3 - 1 - 1
        assert_eq!(
            validate_matrix(&[[2, 1, 0], [0, 1, 0]]),
            Err(Error::ColumnSum {
                column: 1,
                sum: 2,
                bound: 1
            })
        );
        assert!(matches!(
            validate_matrix(&[vec![1, 0], vec![0, 0, 0]]),
            Err(Error::Ragged { row: 1, .. })
        ));
        assert!(matches!(
            validate_matrix(&[[0, 0, 0], [1, 1, 0]]),
            Err(Error::RowAxiom { row: 1, index: 0, .. })
        ));
    }

    #[test]
    fn vectors_of_worked_polynomials() {
        let f = ints(&[0, 0, -3, 1]);
        let expect = [[2, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];
        for (lambda, e) in expect.iter().enumerate() {
            assert_eq!(multiplicity_vector_of(&f, &pt(lambda as i64)).unwrap().entries(), e);
        }
        assert!(multiplicity_vector_of(&f, &pt(7)).unwrap().is_zero());
        let g = ints(&[0, 0, 0, 4, -7, 3]);
        assert_eq!(
            multiplicity_vector_of(&g, &pt(0)).unwrap().entries(),
            &[3, 2, 1, 0, 0, 0]
        );
        assert_eq!(
            multiplicity_vector_of(&g, &pt(1)).unwrap().entries(),
            &[1, 0, 1, 0, 0, 0]
        );
    }

    #[test]
    fn matrices_of_worked_polynomials() {
        let f = ints(&[0, 4, 0, -4, 1]);
        let m = multiplicity_matrix_of(&f, &lam(&[0, 1, 2])).unwrap();
        assert_eq!(
            m.to_raw(),
            vec![vec![1, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 1, 0, 0]]
        );
        let scaled = f.scale(&FieldElement::rational(ratio(-7, 3)));
        assert_eq!(multiplicity_matrix_of(&scaled, &lam(&[0, 1, 2])).unwrap(), m);

        let h = Polynomial::from_root_powers(&[(pt(0), 3), (pt(1), 2)], &Polynomial::one(Q)).unwrap();
        let m = multiplicity_matrix_of(&h, &lam(&[0, 1])).unwrap();
        assert_eq!(m.to_raw(), vec![vec![3, 2, 1, 0, 0, 0], vec![2, 1, 0, 0, 0, 0]]);
        assert_eq!(
            multiplicity_matrix_of(&Polynomial::zero(Q), &lam(&[0])),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn truncation() {
        // column 1 of this one sums past its bound, so it goes through the raw path
        let raw = [[5, 4, 3, 2, 1, 0], [0, 2, 1, 0, 0, 0]];
        assert!(validate_matrix(&raw).is_err());
        assert_eq!(truncate_raw(&raw, 2).unwrap(), vec![vec![3, 2, 1, 0], vec![1, 0, 0, 0]]);
        assert_eq!(truncate_raw(&raw, 0).unwrap(), raw.map(|r| r.to_vec()).to_vec());
        assert_eq!(truncate_raw(&raw, 6), Err(Error::TruncationOutOfRange { ell: 6, n: 5 }));

        let m = validate_matrix(&[[3, 2, 1, 0, 0, 0], [0, 2, 1, 0, 0, 0]]).unwrap();
        assert_eq!(
            m.truncate(2).unwrap().to_raw(),
            vec![vec![1, 0, 0, 0], vec![1, 0, 0, 0]]
        );
        assert_eq!(m.truncate(0).unwrap(), m);
        assert_eq!(m.truncate(5).unwrap().to_raw(), vec![vec![0], vec![0]]);
        assert_eq!(m.truncate(6), Err(Error::TruncationOutOfRange { ell: 6, n: 5 }));
    }

    #[test]
    fn cofactors() {
        let f = ints(&[0, 0, -3, 1]);
        assert_eq!(cofactor(&f, &lam(&[0]), 0).unwrap(), ints(&[-3, 1]));
        let g = ints(&[0, 0, 0, 4, -7, 3]);
        assert_eq!(cofactor(&g, &lam(&[0, 1]), 0).unwrap(), ints(&[-4, 3]));
        // no point vanishes on f'' = 6x - 6 except 1; at (5, 7) the cofactor is f'' itself
        assert_eq!(cofactor(&f, &lam(&[5, 7]), 2).unwrap(), f.derivative(2));
    }

    #[test]
    fn supports() {
        assert!(vector_from_support(&SupportSet::new(4, vec![]).unwrap()).is_zero());
        let v = vector_from_support(&SupportSet::new(3, vec![0, 1]).unwrap());
        assert_eq!(v.entries(), &[2, 1, 0, 0]);
        assert!(validate_vector(v.entries()).is_ok());
        assert_eq!(
            SupportSet::new(3, vec![3]),
            Err(Error::SupportOutOfRange { index: 3, n: 3 })
        );
        // brute force: every subset maps to a valid vector and back
        for n in 0..=10usize {
            let mut seen = std::collections::HashSet::new();
            for mask in 0..(1u64 << n) {
                let z = SupportSet::from_mask(n, mask);
                let v = vector_from_support(&z);
                assert!(validate_vector(v.entries()).is_ok());
                assert_eq!(support_of_vector(&v), z);
                assert!(seen.insert(v));
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-4i64..=4, 1..=7).prop_map(|c| ints(&c))
    }

    proptest! {
        #[test]
        fn computed_matrices_validate_and_truncate(f in arb_poly(), pts in prop::collection::btree_set(-3i64..=3, 1..=3)) {
            prop_assume!(!f.is_zero());
            let l = lam(&pts.into_iter().collect::<Vec<_>>());
            let m = multiplicity_matrix_of(&f, &l).unwrap();
            prop_assert!(validate_matrix(&m.to_raw()).is_ok());
            let n = f.degree().unwrap();
            for ell in 0..=n {
                prop_assert_eq!(m.truncate(ell).unwrap(), multiplicity_matrix_of(&f.derivative(ell), &l).unwrap());
            }
            for j in 0..=n {
                let g = cofactor(&f, &l, j).unwrap();
                let roots: Vec<_> = l.points().iter().enumerate().map(|(i, p)| (p.clone(), m.entry(i, j))).collect();
                prop_assert_eq!(Polynomial::from_root_powers(&roots, &g).unwrap(), f.derivative(j));
                for p in l.points() {
                    prop_assert!(!g.evaluate(p).unwrap().is_zero());
                }
            }
        }
    }
}
