//! Exact polynomial and truncated-power-series algebra: evaluation,
//! arithmetic, definite integration over `[0,1]`, the gamma-moment
//! transform, and the reference EGF construction.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, pochhammer, Rational};

/// Dense univariate polynomial in `y` over [`Rational`], trailing zeros
/// trimmed; the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// Coefficients indexed by degree; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn monomial(degree: usize, c: Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// p(a*y + b), expanded exactly.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc*(a*y+b) + c
            let mut next = vec![Rational::zero(); acc.coeffs.len() + 1];
            for (d, v) in acc.coeffs.iter().enumerate() {
                next[d + 1] += v * a;
                next[d] += v * b;
            }
            next[0] += c;
            acc = UniPoly::from_coeffs(next);
        }
        acc
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "y")?,
                1 => write!(f, "{c}*y")?,
                _ if c.is_one() => write!(f, "y^{d}")?,
                _ => write!(f, "{c}*y^{d}")?,
            }
        }
        Ok(())
    }
}

/// ∫₀¹ p(y) dy = Σ cₖ/(k+1), exact.
pub fn integrate_unit(p: &UniPoly) -> Rational {
    let mut acc = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        acc += c / Rational::from_integer(BigInt::from(k + 1));
    }
    acc
}

/// The gamma-moment transform of order r >= 1: Σ cₖ uᵏ ↦ Σ cₖ (r)ₖ yᵏ,
/// the exact value of (1/Γ(r)) ∫₀^∞ λ^{r-1} p(yλ) e^{-λ} dλ.
pub fn gamma_moment(p: &UniPoly, r: usize) -> Result<UniPoly> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    let rr = Rational::from_integer(BigInt::from(r));
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * pochhammer(&rr, k))
        .collect();
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Dense bivariate polynomial with coefficient grid `c[i][j]` for x^i y^j.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn from_grid(mut coeffs: Vec<Vec<Rational>>) -> Self {
        for row in &mut coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while coeffs.last().is_some_and(|r| r.is_empty()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = Rational::zero();
            for c in row.iter().rev() {
                inner = inner * y + c;
            }
            acc = acc * x + inner;
        }
        acc
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if i == 0 && j == 0 {
                    write!(f, "{c}")?;
                    continue;
                }
                if !c.is_one() {
                    write!(f, "{c}")?;
                    if i > 0 || j > 0 {
                        write!(f, "*")?;
                    }
                }
                let mut star = false;
                if i > 0 {
                    if i == 1 {
                        write!(f, "x")?
                    } else {
                        write!(f, "x^{i}")?
                    }
                    star = true;
                }
                if j > 0 {
                    if star {
                        write!(f, "*")?;
                    }
                    if j == 1 {
                        write!(f, "y")?
                    } else {
                        write!(f, "y^{j}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// Truncated formal power series in t: coefficients of t^0..t^N.
/// Binary operations require matching order; multiplication truncates
/// exactly at N and reciprocal requires a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>, // length order + 1
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has order >= 0");
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse to order N; panics if the constant term is
    /// zero (never the case for the EGF denominators built here).
    pub fn recip(&self) -> TruncSeries {
        assert!(
            !self.coeffs[0].is_zero(),
            "series reciprocal needs a(0) != 0"
        );
        let n = self.order();
        let inv0 = Rational::one() / &self.coeffs[0];
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = inv0.clone();
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * &coeffs[m - k];
                }
            }
            coeffs[m] = -&inv0 * s;
        }
        TruncSeries { coeffs }
    }

    pub fn pow(&self, k: usize) -> TruncSeries {
        let mut acc = TruncSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// e^{ct} truncated to the given order (coefficients c^n/n!).
fn exp_series(c: &Rational, order: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for n in 1..=order {
        term = term * c / Rational::from_integer(BigInt::from(n));
        coeffs.push(term.clone());
    }
    TruncSeries { coeffs }
}

/// The truncation to the given order of (1 - y(e^t - 1))^{-r} e^{xt};
/// the coefficient of t^n is w_n^{(r)}(x; y)/n!.
pub fn egf_reference(r: usize, x: &Rational, y: &Rational, order: usize) -> TruncSeries {
    let one = Rational::one();
    let mut em1 = exp_series(&one, order); // e^t - 1
    em1.coeffs[0] = Rational::zero();
    let mut u = em1.scale(&-y); // 1 - y(e^t - 1)
    u.coeffs[0] += &one;
    let base = u.recip().pow(r);
    base.mul(&exp_series(x, order))
}

/// n! as a rational, for EGF coefficient comparisons.
pub fn factorial_rat(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}
