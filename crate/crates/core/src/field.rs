//! Exact coefficient fields: the rationals and quadratic extensions `Q(sqrt(d))`.
//!
//! A [`FieldElement`] is `a + b*sqrt(d)` with rational `a`, `b`. Because `d` is
//! squarefree and not 1, `sqrt(d)` is irrational and the element is zero exactly
//! when both parts are zero. Operators (`+ - * /`) panic on context mismatch or
//! division by zero, like the integer operators do; the `checked_*` methods
//! return errors instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`; panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The field an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldContext {
    discriminant: Option<i64>,
}

impl FieldContext {
    pub const RATIONALS: FieldContext = FieldContext { discriminant: None };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// `Q(sqrt(d))`; `d` must be squarefree and not in `{0, 1}`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if !is_valid_discriminant(d) {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(FieldContext { discriminant: Some(d) })
    }

    pub fn discriminant(&self) -> Option<i64> {
        self.discriminant
    }

    pub fn is_rational(&self) -> bool {
        self.discriminant.is_none()
    }

    /// Checks that `other` is the same field.
    pub fn ensure_same(&self, other: &FieldContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.discriminant {
            None => write!(f, "Q"),
            Some(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

fn is_valid_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `a + b*sqrt(d)` in a fixed [`FieldContext`]; `b == 0` in the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    ctx: FieldContext,
}

impl FieldElement {
    pub fn zero(ctx: FieldContext) -> Self {
        Self::from_rational(ctx, Rational::zero())
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_int(ctx: FieldContext, n: i64) -> Self {
        Self::from_rational(ctx, rat(n))
    }

    pub fn from_bigint(ctx: FieldContext, n: BigInt) -> Self {
        Self::from_rational(ctx, Rational::from_integer(n))
    }

    pub fn from_rational(ctx: FieldContext, a: Rational) -> Self {
        FieldElement {
            a,
            b: Rational::zero(),
            ctx,
        }
    }

    /// Shorthand for an element of `Q`.
    pub fn rational(a: Rational) -> Self {
        Self::from_rational(FieldContext::RATIONALS, a)
    }

    /// `a + b*sqrt(d)`; fails if `b != 0` in the rationals.
    pub fn new(ctx: FieldContext, a: Rational, b: Rational) -> Result<Self> {
        if ctx.is_rational() && !b.is_zero() {
            return Err(Error::IrrationalInRationals);
        }
        Ok(FieldElement { a, b, ctx })
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    /// Rational part.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt(d)`.
    pub fn im(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The rational value, if the `sqrt(d)` part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Re-home an element into `ctx`. Rational values move freely; irrational
    /// ones only into their own field.
    pub fn lift(&self, ctx: FieldContext) -> Result<Self> {
        if self.ctx == ctx || self.b.is_zero() {
            Ok(FieldElement {
                a: self.a.clone(),
                b: self.b.clone(),
                ctx,
            })
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx,
                right: ctx,
            })
        }
    }

    fn d(&self) -> Rational {
        rat(self.ctx.discriminant.unwrap_or(0))
    }

    /// `a + b*sqrt(d) -> a - b*sqrt(d)`; the identity on `Q`.
    pub fn conjugate(&self) -> Self {
        FieldElement {
            a: self.a.clone(),
            b: -&self.b,
            ctx: self.ctx,
        }
    }

    /// `x * conj(x) = a^2 - d b^2`, always rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.d() * &self.b * &self.b
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.ctx.ensure_same(&rhs.ctx)?;
        Ok(FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            ctx: self.ctx,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.ctx.ensure_same(&rhs.ctx)?;
        Ok(FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            ctx: self.ctx,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.ctx.ensure_same(&rhs.ctx)?;
        let a = &self.a * &rhs.a + self.d() * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(FieldElement { a, b, ctx: self.ctx })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(FieldElement {
            a: &self.a / &n,
            b: -&self.b / &n,
            ctx: self.ctx,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.ctx.ensure_same(&rhs.ctx)?;
        self.checked_mul(&rhs.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        FieldElement {
            a: &self.a * k,
            b: &self.b * k,
            ctx: self.ctx,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// A square root inside the same field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let ctx = self.ctx;
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Self::from_rational(ctx, r));
            }
            // a = d w^2  =>  sqrt(a) = w sqrt(d)
            let d = self.d();
            if ctx.is_rational() {
                return None;
            }
            let w = rational_sqrt(&(&self.a / &d))?;
            return Some(FieldElement {
                a: Rational::zero(),
                b: w,
                ctx,
            });
        }
        // (x + y sqrt(d))^2 = a + b sqrt(d): x^2 + d y^2 = a, 2xy = b.
        // x^2 solves X^2 - a X + d b^2 / 4 = 0.
        let d = self.d();
        let disc = &self.a * &self.a - &d * &self.b * &self.b;
        let s = rational_sqrt(&disc)?;
        let two = rat(2);
        for x2 in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = FieldElement { a: x, b: y, ctx };
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = bigint_sqrt(q.numer())?;
    let d = bigint_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
            ctx: self.ctx,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    /// `p/q`, or `a+b*sqrt(d)` with the unit coefficient written as bare `sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.ctx.discriminant.filter(|_| !self.b.is_zero()) else {
            return f.write_str(&fmt_rational(&self.a));
        };
        let mag = self.b.abs();
        let surd = if mag.is_one() {
            format!("sqrt({d})")
        } else {
            format!("{}*sqrt({d})", fmt_rational(&mag))
        };
        let neg = self.b.is_negative();
        if self.a.is_zero() {
            if neg {
                write!(f, "-{surd}")
            } else {
                f.write_str(&surd)
            }
        } else {
            let sign = if neg { '-' } else { '+' };
            write!(f, "{}{sign}{surd}", fmt_rational(&self.a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> FieldElement {
        FieldElement::rational(ratio(p, d))
    }

    fn elt(ctx: FieldContext, a: (i64, i64), b: (i64, i64)) -> FieldElement {
        FieldElement::new(ctx, ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn inverse_of_two_thirds() {
        assert_eq!(q(1, 1).checked_div(&q(2, 3)).unwrap(), q(3, 2));
    }

    #[test]
    fn golden_ratio_times_conjugate() {
        let k = FieldContext::quadratic(5).unwrap();
        let phi = elt(k, (1, 2), (1, 2));
        let psi = elt(k, (1, 2), (-1, 2));
        assert_eq!(&phi * &psi, FieldElement::from_int(k, -1));
        assert_eq!(phi.conjugate(), psi);
    }

    #[test]
    fn cube_roots_of_unity_product() {
        let k = FieldContext::quadratic(-3).unwrap();
        let rho1 = elt(k, (-1, 2), (1, 2));
        let rho2 = elt(k, (-1, 2), (-1, 2));
        assert_eq!(&rho1 * &rho2, FieldElement::one(k));
        // rho^2 + rho + 1 = 0
        let one = FieldElement::one(k);
        assert!((&(&rho1 * &rho1) + &rho1 + one).is_zero());
    }

    #[test]
    fn conjugation_fixes_rationals() {
        assert_eq!(q(3, 7).conjugate(), q(3, 7));
    }

    #[test]
    fn errors() {
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
        let k = FieldContext::quadratic(5).unwrap();
        assert!(matches!(
            q(1, 1).checked_add(&FieldElement::one(k)),
            Err(Error::ContextMismatch { .. })
        ));
        for bad in [0, 1, 4, -4, 12, 18, -27] {
            assert_eq!(FieldContext::quadratic(bad), Err(Error::InvalidDiscriminant(bad)));
        }
        for good in [-1, 2, -3, 5, 21, 30] {
            assert!(FieldContext::quadratic(good).is_ok());
        }
        assert!(FieldElement::new(FieldContext::RATIONALS, rat(1), rat(1)).is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-1, 1).sqrt(), None);
        let k = FieldContext::quadratic(21).unwrap();
        let s = FieldElement::from_int(k, 21).sqrt().unwrap();
        assert_eq!(s, elt(k, (0, 1), (1, 1)));
        let k = FieldContext::quadratic(-3).unwrap();
        assert_eq!(FieldElement::from_int(k, -3).sqrt(), Some(elt(k, (0, 1), (1, 1))));
        // (1 + sqrt(-3))^2 = -2 + 2 sqrt(-3)
        let x = elt(k, (-2, 1), (2, 1));
        let r = x.sqrt().unwrap();
        assert_eq!(&r * &r, x);
    }

    #[test]
    fn display() {
        let k = FieldContext::quadratic(-3).unwrap();
        assert_eq!(elt(k, (-1, 2), (1, 2)).to_string(), "-1/2+1/2*sqrt(-3)");
        assert_eq!(elt(k, (0, 1), (-1, 1)).to_string(), "-sqrt(-3)");
        assert_eq!(elt(k, (3, 1), (0, 1)).to_string(), "3");
        assert_eq!(q(-6, 4).to_string(), "-3/2");
    }

    fn arb_elt() -> impl Strategy<Value = FieldElement> {
        (-20i64..20, 1i64..8, -20i64..20, 1i64..8)
            .prop_map(|(a, b, c, d)| elt(FieldContext::quadratic(-7).unwrap(), (a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn conjugation_is_an_automorphism(x in arb_elt(), y in arb_elt()) {
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn inverse_round_trip(x in arb_elt()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn rationals_stay_reduced(p in -1000i64..1000, d in 1i64..1000) {
            let r = ratio(p, d);
            let again = Rational::new(r.numer().clone(), r.denom().clone());
            prop_assert_eq!(&again, &r);
            prop_assert!(r.denom().is_positive());
        }
    }
}
