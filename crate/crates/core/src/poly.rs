//! Dense univariate polynomials over a [`FieldContext`], ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    /// `coeffs[k]` is the coefficient of `x^k`; no trailing zeros.
    coeffs: Vec<FieldElement>,
    ctx: FieldContext,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients; trailing zeros are trimmed.
    pub fn new(ctx: FieldContext, coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            ctx.ensure_same(&c.context())?;
        }
        Ok(Self::from_raw(ctx, coeffs))
    }

    fn from_raw(ctx: FieldContext, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs, ctx }
    }

    pub fn from_ints(ctx: FieldContext, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| FieldElement::from_int(ctx, c)).collect();
        Self::from_raw(ctx, coeffs)
    }

    pub fn from_rationals(ctx: FieldContext, coeffs: &[Rational]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|c| FieldElement::from_rational(ctx, c.clone()))
            .collect();
        Self::from_raw(ctx, coeffs)
    }

    pub fn zero(ctx: FieldContext) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            ctx,
        }
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::constant(FieldElement::one(ctx))
    }

    pub fn constant(c: FieldElement) -> Self {
        let ctx = c.context();
        Self::from_raw(ctx, vec![c])
    }

    /// `x - lambda`.
    pub fn linear_root(lambda: &FieldElement) -> Self {
        let ctx = lambda.context();
        Self::from_raw(ctx, vec![-lambda, FieldElement::one(ctx)])
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?.inv()?;
        Ok(self.scale(&lead))
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        Self::from_raw(self.ctx, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// The `j`-th formal derivative.
    pub fn derivative(&self, j: usize) -> Self {
        if j == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(j)
            .map(|(k, c)| c.scale(&Rational::from_integer(falling_factorial(k as u64, j as u64))))
            .collect();
        Self::from_raw(self.ctx, coeffs)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        self.ctx.ensure_same(&x.context())?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(self.ctx), |acc, c| &(&acc * x) + c))
    }

    /// Synthetic division by `x - lambda`: returns quotient and remainder `f(lambda)`.
    pub fn div_linear(&self, lambda: &FieldElement) -> Result<(Self, FieldElement)> {
        self.ctx.ensure_same(&lambda.context())?;
        if self.coeffs.is_empty() {
            return Ok((self.clone(), FieldElement::zero(self.ctx)));
        }
        let n = self.coeffs.len();
        let mut quotient = vec![FieldElement::zero(self.ctx); n - 1];
        let mut carry = FieldElement::zero(self.ctx);
        for k in (0..n).rev() {
            carry = &(&carry * lambda) + &self.coeffs[k];
            if k > 0 {
                quotient[k - 1] = carry.clone();
            }
        }
        Ok((Self::from_raw(self.ctx, quotient), carry))
    }

    /// Coefficients of `f` in powers of `x - lambda`, by repeated synthetic division.
    pub fn taylor_coefficients(&self, lambda: &FieldElement) -> Result<TaylorExpansion> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rest = self.clone();
        let mut coefficients = Vec::with_capacity(self.coeffs.len());
        while !rest.is_zero() {
            let (q, r) = rest.div_linear(lambda)?;
            coefficients.push(r);
            rest = q;
        }
        Ok(TaylorExpansion {
            center: lambda.clone(),
            coefficients,
        })
    }

    /// Multiplicity of `lambda` as a zero; 0 when `f(lambda) != 0`.
    pub fn multiplicity(&self, lambda: &FieldElement) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rest = self.clone();
        let mut mu = 0;
        loop {
            let (q, r) = rest.div_linear(lambda)?;
            if !r.is_zero() {
                return Ok(mu);
            }
            mu += 1;
            rest = q;
        }
    }

    /// Removes the factor `(x - lambda)^e`; fails if it does not divide exactly.
    pub fn divide_root_power(&self, lambda: &FieldElement, e: usize) -> Result<Self> {
        let mut rest = self.clone();
        for _ in 0..e {
            let (q, r) = rest.div_linear(lambda)?;
            if !r.is_zero() {
                return Err(Error::RootListInconsistent(format!(
                    "(x - {lambda})^{e} does not divide the polynomial"
                )));
            }
            rest = q;
        }
        Ok(rest)
    }

    /// `prod (x - lambda_i)^{e_i} * cofactor`.
    pub fn from_root_powers(roots: &[(FieldElement, usize)], cofactor: &Polynomial) -> Result<Self> {
        if cofactor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ctx = cofactor.ctx;
        for (i, (lambda, _)) in roots.iter().enumerate() {
            ctx.ensure_same(&lambda.context())?;
            if roots[..i].iter().any(|(other, _)| other == lambda) {
                return Err(Error::RepeatedPoint(lambda.to_string()));
            }
        }
        let mut acc = cofactor.clone();
        for (lambda, e) in roots {
            let lin = Self::linear_root(lambda);
            for _ in 0..*e {
                acc = &acc * &lin;
            }
        }
        Ok(acc)
    }

    /// `f(r x + s)` by Horner substitution.
    pub fn compose_affine(&self, r: &FieldElement, s: &FieldElement) -> Result<Self> {
        self.ctx.ensure_same(&r.context())?;
        self.ctx.ensure_same(&s.context())?;
        let inner = Self::from_raw(self.ctx, vec![s.clone(), r.clone()]);
        let mut acc = Self::zero(self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(c.clone());
        }
        Ok(acc)
    }

    /// Applies field conjugation to every coefficient.
    pub fn conjugate(&self) -> Self {
        Self::from_raw(self.ctx, self.coeffs.iter().map(FieldElement::conjugate).collect())
    }

    /// Conventional notation, highest power first, e.g. `x^3 - 3/2*x^2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let monomial = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let (negative, magnitude) = match c.as_rational() {
                Some(q) if q < &Rational::zero() => (true, FieldElement::rational(-q)),
                _ => (false, c.clone()),
            };
            let body = if monomial.is_empty() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                monomial
            } else if magnitude.as_rational().is_some() {
                format!("{magnitude}*{monomial}")
            } else {
                format!("({magnitude})*{monomial}")
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push_str(&format!("-{body}")),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&format!(" - {body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

/// `f = sum_j c_j (x - center)^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorExpansion {
    pub center: FieldElement,
    pub coefficients: Vec<FieldElement>,
}

impl TaylorExpansion {
    /// Re-expands in the standard basis.
    pub fn to_polynomial(&self) -> Polynomial {
        let ctx = self.center.context();
        let shift = Polynomial::linear_root(&self.center);
        let mut acc = Polynomial::zero(ctx);
        for c in self.coefficients.iter().rev() {
            acc = &(&acc * &shift) + &Polynomial::constant(c.clone());
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// Ascending coefficients separated by spaces; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, rhs.ctx, "polynomial context mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Polynomial::from_raw(self.ctx, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_raw(self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, rhs.ctx, "polynomial context mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.ctx);
        }
        let mut coeffs = vec![FieldElement::zero(self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_raw(self.ctx, coeffs)
    }
}

pub fn factorial(n: u64) -> BigInt {
    falling_factorial(n, n)
}

/// `(k)_j = k (k-1) ... (k-j+1)`; zero when `j > k`, one when `j = 0`.
pub fn falling_factorial(k: u64, j: u64) -> BigInt {
    if j > k {
        return BigInt::zero();
    }
    ((k - j + 1)..=k).fold(BigInt::one(), |acc, t| acc * t)
}

/// `j! / (k_1! ... k_m!)`; the parts must sum to `j`.
pub fn multinomial(j: u64, parts: &[u64]) -> Result<BigInt> {
    let sum: u64 = parts.iter().sum();
    if sum != j {
        return Err(Error::PartsSumMismatch { sum, expected: j });
    }
    let denom = parts.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    Ok(factorial(j) / denom)
}

/// `j`-th derivative of `(x - lambda)^p g(x)` at `lambda`, from the closed forms:
/// zero below `p`, `p! g(lambda)` at `p`, and `(j)_p g^{(j-p)}(lambda)` above.
pub fn leibniz_derivative_value(p: u64, lambda: &FieldElement, g: &Polynomial, j: u64) -> Result<FieldElement> {
    let g_at = g.evaluate(lambda)?;
    if g_at.is_zero() {
        return Err(Error::CofactorVanishes);
    }
    let ctx = g.context();
    Ok(match j.cmp(&p) {
        std::cmp::Ordering::Less => FieldElement::zero(ctx),
        std::cmp::Ordering::Equal => g_at.scale(&Rational::from_integer(factorial(p))),
        std::cmp::Ordering::Greater => g
            .derivative((j - p) as usize)
            .evaluate(lambda)?
            .scale(&Rational::from_integer(falling_factorial(j, p))),
    })
}
