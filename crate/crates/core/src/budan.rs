//! Sign variations of `(f(x), f'(x), ..., f^(n)(x))` and a checker for the
//! Budan-Fourier bound on polynomials whose rational roots are all known.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};
use crate::poly::Polynomial;

/// Sign changes in the derivative sequence at `x`, zeros dropped.
pub fn sign_variations(f: &Polynomial, x: &Rational) -> Result<usize> {
    if !f.context().is_rational() {
        return Err(Error::OrderedFieldRequired);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // f^(j)(x) = j! * c_j, so the Taylor coefficients carry the signs.
    let t = f.taylor_coefficients(&FieldElement::rational(x.clone()))?;
    let signs: Vec<bool> = t
        .coefficients
        .iter()
        .map(|c| c.as_rational().expect("rational context"))
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVariationReport {
    pub a: Rational,
    pub b: Rational,
    pub v_a: usize,
    pub v_b: usize,
    /// Roots in `(a, b]`, with multiplicity.
    pub root_count: usize,
    /// `(v_a - v_b - root_count) / 2`.
    pub nu: usize,
}

/// Checks `root_count = V(a) - V(b) - 2 nu` with `nu >= 0`.
///
/// `roots` must be the complete factorization of `f` over the rationals:
/// every listed multiplicity exact and the leftover cofactor constant.
pub fn verify_budan_fourier(
    f: &Polynomial,
    roots: &[(Rational, usize)],
    a: &Rational,
    b: &Rational,
) -> Result<SignVariationReport> {
    if !f.context().is_rational() {
        return Err(Error::OrderedFieldRequired);
    }
    if a >= b {
        return Err(Error::InvalidInterval);
    }
    let mut rest = f.clone();
    for (i, (r, mult)) in roots.iter().enumerate() {
        if roots[..i].iter().any(|(s, _)| s == r) {
            return Err(Error::RootListInconsistent(format!("root {r} listed twice")));
        }
        let x = FieldElement::rational(r.clone());
        let actual = f.multiplicity(&x)?;
        if actual != *mult {
            return Err(Error::RootListInconsistent(format!(
                "root {r} has multiplicity {actual}, not {mult}"
            )));
        }
        rest = rest.divide_root_power(&x, *mult)?;
    }
    if rest.degree() != Some(0) {
        return Err(Error::RootListInconsistent(format!("cofactor {rest} is not constant")));
    }
    let v_a = sign_variations(f, a)?;
    let v_b = sign_variations(f, b)?;
    let root_count: usize = roots
        .iter()
        .filter(|(r, _)| a < r && r <= b)
        .map(|(_, mult)| mult)
        .sum();
    let excess = (v_a as i64) - (v_b as i64) - (root_count as i64);
    if excess < 0 || excess % 2 != 0 {
        return Err(Error::Postcondition(format!(
            "V({a}) - V({b}) = {v_a} - {v_b} against {root_count} roots"
        )));
    }
    Ok(SignVariationReport {
        a: a.clone(),
        b: b.clone(),
        v_a,
        v_b,
        root_count,
        nu: (excess / 2) as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio, FieldContext};
    use proptest::prelude::*;

    const Q: FieldContext = FieldContext::RATIONALS;

    #[test]
    fn variations() {
        let f = Polynomial::from_ints(Q, &[-1, 0, 1]);
        assert_eq!(sign_variations(&f, &rat(-2)).unwrap(), 2);
        assert_eq!(sign_variations(&f, &rat(0)).unwrap(), 1);
        let g = Polynomial::from_ints(Q, &[7, -3, 0, 5, -2, 1]);
        assert_eq!(sign_variations(&g, &rat(1000)).unwrap(), 0);
        let k = FieldContext::quadratic(2).unwrap();
        assert_eq!(
            sign_variations(&Polynomial::from_ints(k, &[0, 1]), &rat(0)),
            Err(Error::OrderedFieldRequired)
        );
    }

    #[test]
    fn worked_reports() {
        let f = Polynomial::from_ints(Q, &[0, 0, -3, 1]);
        let r = verify_budan_fourier(&f, &[(rat(0), 2), (rat(3), 1)], &rat(-1), &rat(4)).unwrap();
        assert_eq!((r.v_a, r.v_b, r.root_count, r.nu), (3, 0, 3, 0));

        let sq = Polynomial::from_ints(Q, &[1, -2, 1]);
        let r = verify_budan_fourier(&sq, &[(rat(1), 2)], &rat(0), &rat(2)).unwrap();
        assert_eq!((r.v_a, r.v_b, r.root_count, r.nu), (2, 0, 2, 0));

        let r = verify_budan_fourier(&f, &[(rat(0), 2), (rat(3), 1)], &ratio(1, 2), &rat(2)).unwrap();
        assert_eq!(r.root_count, 0);
        assert_eq!((r.v_a - r.v_b) % 2, 0);
    }

    #[test]
    fn rejects_bad_input() {
        let f = Polynomial::from_ints(Q, &[0, 0, -3, 1]);
        assert_eq!(
            verify_budan_fourier(&f, &[(rat(0), 2)], &rat(1), &rat(0)),
            Err(Error::InvalidInterval)
        );
        assert!(matches!(
            verify_budan_fourier(&f, &[(rat(0), 1), (rat(3), 1)], &rat(-1), &rat(4)),
            Err(Error::RootListInconsistent(_))
        ));
        assert!(matches!(
            verify_budan_fourier(&f, &[(rat(0), 2)], &rat(-1), &rat(4)),
            Err(Error::RootListInconsistent(_))
        ));
        assert!(matches!(
            verify_budan_fourier(&f, &[(rat(0), 2), (rat(0), 2)], &rat(-1), &rat(4)),
            Err(Error::RootListInconsistent(_))
        ));
    }

    proptest! {
        #[test]
        fn variations_do_not_increase(
            roots in prop::collection::btree_map(-6i64..=6, 1usize..=3, 1..=3),
            grid in prop::collection::btree_set(-16i64..=16, 2..=6),
        ) {
            let list: Vec<(FieldElement, usize)> =
                roots.iter().map(|(&r, &e)| (FieldElement::from_int(Q, r), e)).collect();
            let f = Polynomial::from_root_powers(&list, &Polynomial::one(Q)).unwrap();
            let v: Vec<usize> = grid.iter().map(|&x| sign_variations(&f, &ratio(x, 2)).unwrap()).collect();
            prop_assert!(v.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
