//! Changes of variable that preserve multiplicity matrices.
//!
//! Direction convention: with the map `x -> r x + s`, the polynomial goes to
//! `f(r x + s)` and each point `lambda` goes to `(lambda - s) / r`, so that
//! `M_{f(rx+s)}((Lambda - s)/r) = M_f(Lambda)`.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::multiplicity::LambdaSequence;
use crate::poly::Polynomial;

/// `x -> r x + s` with `r != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    r: FieldElement,
    s: FieldElement,
}

impl AffineMap {
    pub fn new(r: FieldElement, s: FieldElement) -> Result<Self> {
        r.context().ensure_same(&s.context())?;
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(AffineMap { r, s })
    }

    pub fn identity(ctx: crate::field::FieldContext) -> Self {
        AffineMap {
            r: FieldElement::one(ctx),
            s: FieldElement::zero(ctx),
        }
    }

    pub fn r(&self) -> &FieldElement {
        &self.r
    }

    pub fn s(&self) -> &FieldElement {
        &self.s
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        &(&self.r * x) + &self.s
    }

    /// `x -> x/r - s/r`.
    pub fn inverse(&self) -> Self {
        let r_inv = self.r.inv().expect("r is nonzero");
        AffineMap {
            s: -&(&self.s * &r_inv),
            r: r_inv,
        }
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &AffineMap) -> Self {
        AffineMap {
            r: &self.r * &other.r,
            s: self.apply(&other.s),
        }
    }
}

/// `f(r x + s)`.
pub fn transform_poly(f: &Polynomial, map: &AffineMap) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.compose_affine(&map.r, &map.s)
}

/// `kappa_i = (lambda_i - s) / r`, the points paired with [`transform_poly`].
pub fn transform_lambda(lambda: &LambdaSequence, map: &AffineMap) -> Result<LambdaSequence> {
    let inv = map.inverse();
    let points = lambda
        .points()
        .iter()
        .map(|p| {
            p.context().ensure_same(&inv.r.context())?;
            Ok(inv.apply(p))
        })
        .collect::<Result<Vec<_>>>()?;
    LambdaSequence::new(lambda.context(), points)
}

/// Returns `(kappa, map)` with `kappa = (0, 1, ...)` and `map(kappa_i) = lambda_i`.
pub fn normalize_lambda(lambda: &LambdaSequence) -> Result<(LambdaSequence, AffineMap)> {
    let p = lambda.points();
    if p.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            found: p.len(),
        });
    }
    let map = AffineMap::new(&p[1] - &p[0], p[0].clone())?;
    Ok((transform_lambda(lambda, &map)?, map))
}

/// Conjugates every coefficient of `f` and every point of `lambda`.
pub fn transport_automorphism(f: &Polynomial, lambda: &LambdaSequence) -> Result<(Polynomial, LambdaSequence)> {
    let points = lambda.points().iter().map(FieldElement::conjugate).collect();
    Ok((f.conjugate(), LambdaSequence::new(lambda.context(), points)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, FieldContext};
    use crate::multiplicity::multiplicity_matrix_of;
    use proptest::prelude::*;

    const Q: FieldContext = FieldContext::RATIONALS;

    fn v(n: i64) -> FieldElement {
        FieldElement::from_int(Q, n)
    }

    fn qv(p: i64, q: i64) -> FieldElement {
        FieldElement::rational(ratio(p, q))
    }

    fn lam(p: &[i64]) -> LambdaSequence {
        LambdaSequence::from_ints(Q, p).unwrap()
    }

    #[test]
    fn maps() {
        assert!(AffineMap::new(v(0), v(1)).is_err());
        let id = AffineMap::identity(Q);
        let f = Polynomial::from_ints(Q, &[1, -2, 0, 3]);
        assert_eq!(transform_poly(&f, &id).unwrap(), f);
        assert_eq!(transform_lambda(&lam(&[4, 9]), &id).unwrap(), lam(&[4, 9]));
        let sq = Polynomial::from_ints(Q, &[0, 0, 1]);
        let m = AffineMap::new(v(2), v(1)).unwrap();
        assert_eq!(transform_poly(&sq, &m).unwrap(), Polynomial::from_ints(Q, &[1, 4, 4]));
        assert_eq!(m.compose(&m.inverse()), id);
    }

    #[test]
    fn normalization() {
        let (k, map) = normalize_lambda(&lam(&[5, 7])).unwrap();
        assert_eq!(k, lam(&[0, 1]));
        assert_eq!((map.r().clone(), map.s().clone()), (v(2), v(5)));

        let (k, map) = normalize_lambda(&lam(&[3, 5])).unwrap();
        assert_eq!(k, lam(&[0, 1]));
        assert_eq!((map.r().clone(), map.s().clone()), (v(2), v(3)));

        let (k, map) = normalize_lambda(&lam(&[1, 0])).unwrap();
        assert_eq!(k, lam(&[0, 1]));
        assert_eq!((map.r().clone(), map.s().clone()), (v(-1), v(1)));

        let (_, map) = normalize_lambda(&lam(&[0, 1, 7])).unwrap();
        assert_eq!(map, AffineMap::identity(Q));

        let (k, _) = normalize_lambda(&lam(&[0, -3, 4, 12])).unwrap();
        assert_eq!(k.points(), &[v(0), v(1), qv(-4, 3), v(-4)]);

        assert_eq!(
            normalize_lambda(&lam(&[3])).map(|_| ()),
            Err(Error::TooFewPoints { needed: 2, found: 1 })
        );
    }

    #[test]
    fn conjugation_transport() {
        let f = Polynomial::from_ints(Q, &[0, 2, 1]);
        let l = lam(&[0, 3]);
        assert_eq!(transport_automorphism(&f, &l).unwrap(), (f, l));

        let k = FieldContext::quadratic(-3).unwrap();
        let rho1 = FieldElement::new(k, ratio(-1, 2), ratio(1, 2)).unwrap();
        let rho2 = rho1.conjugate();
        let f = Polynomial::from_ints(k, &[0, -1, 0, 0, 1]);
        let pts = |a: &FieldElement, b: &FieldElement| {
            LambdaSequence::new(
                k,
                vec![FieldElement::zero(k), FieldElement::one(k), a.clone(), b.clone()],
            )
            .unwrap()
        };
        let (g, l2) = transport_automorphism(&f, &pts(&rho1, &rho2)).unwrap();
        assert_eq!(g, f);
        assert_eq!(l2, pts(&rho2, &rho1));
        let (g2, l3) = transport_automorphism(&g, &l2).unwrap();
        assert_eq!((g2, l3), (f, pts(&rho1, &rho2)));
    }

    proptest! {
        #[test]
        fn affine_invariance(
            c in prop::collection::vec(-4i64..=4, 2..=6),
            pts in prop::collection::btree_set(-3i64..=3, 1..=3),
            (rp, rq) in (-3i64..=3, 1i64..=3),
            (sp, sq) in (-3i64..=3, 1i64..=3),
        ) {
            prop_assume!(rp != 0);
            let f = Polynomial::from_ints(Q, &c);
            prop_assume!(!f.is_zero());
            let l = lam(&pts.into_iter().collect::<Vec<_>>());
            let map = AffineMap::new(qv(rp, rq), qv(sp, sq)).unwrap();
            let g = transform_poly(&f, &map).unwrap();
            let k = transform_lambda(&l, &map).unwrap();
            prop_assert_eq!(multiplicity_matrix_of(&g, &k).unwrap(), multiplicity_matrix_of(&f, &l).unwrap());
            let inv = map.inverse();
            prop_assert_eq!(transform_poly(&g, &inv).unwrap(), f);
            prop_assert_eq!(transform_lambda(&k, &inv).unwrap(), l);
        }

        #[test]
        fn two_points_decide_like_zero_one(
            masks in (0u64..32, 0u64..32),
            (a, b) in (-6i64..=6, -6i64..=6),
        ) {
            use crate::multiplicity::{validate_matrix, vector_from_support, SupportSet};
            use crate::realize::realize;
            prop_assume!(a != b);
            let row = |mask| vector_from_support(&SupportSet::from_mask(5, mask)).entries().to_vec();
            let Ok(m) = validate_matrix(&[row(masks.0), row(masks.1)]) else {
                return Ok(());
            };
            let here = realize(&m, &lam(&[a, b])).unwrap();
            let there = realize(&m, &lam(&[0, 1])).unwrap();
            prop_assert_eq!(here.status, there.status);
        }

        #[test]
        fn normalization_round_trip(pts in prop::collection::btree_set(-9i64..=9, 2..=5), seed in 0usize..100) {
            let mut pts: Vec<_> = pts.into_iter().collect();
            let k = seed % pts.len();
            pts.rotate_left(k);
            let l = lam(&pts);
            let (k, map) = normalize_lambda(&l).unwrap();
            prop_assert_eq!(&k.points()[..2], &[v(0), v(1)]);
            let back: Vec<_> = k.points().iter().map(|p| map.apply(p)).collect();
            prop_assert_eq!(back.as_slice(), l.points());
        }
    }
}
