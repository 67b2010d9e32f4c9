//! Certified evaluation of the infinite series attached to the
//! geometric-polynomial families: exact rational partial sums plus
//! rigorous rational tail radii, compared against exact closed forms.
//!
//! Tail bounds use eventual geometric domination: each series has a
//! monotone-decreasing term-ratio bound R(k) converging to |y| (or 0),
//! so once R(k) <= rho := (1+|y|)/2 < 1 the tail after term k is at most
//! |t_k| * rho/(1-rho). All arithmetic is exact rational; no floating
//! point anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::geomfamily::{geom_poly, rbell_poly};

/// Number of summed terms after which a non-certifying run aborts.
pub const TERM_CAP: usize = 1_000_000;

/// An exact partial sum with a rigorous tail radius: the true series
/// value lies in [partial_sum - tail_radius, partial_sum + tail_radius].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedValue {
    pub partial_sum: Rational,
    pub tail_radius: Rational,
    pub terms_used: usize,
}

impl CertifiedValue {
    pub fn low(&self) -> Rational {
        &self.partial_sum - &self.tail_radius
    }

    pub fn high(&self) -> Rational {
        &self.partial_sum + &self.tail_radius
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.low() <= *v && *v <= self.high()
    }
}

fn ir(b: BigInt) -> Rational {
    Rational::from_integer(b)
}

fn check_tol(tol: &Rational) -> Result<()> {
    if tol <= &Rational::zero() {
        return Err(Error::InvalidTolerance(tol.to_string()));
    }
    Ok(())
}

fn rat_usize(n: usize) -> Rational {
    ir(BigInt::from(n))
}

fn pow_rat(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Σ_{k>=0} (k+r)^n C(k+r-1, k) y^k for 0 < |y| < 1, certified.
/// Term-ratio bound: R(k) = ((k+1+r)/(k+1)) ((k+r+1)/(k+r))^n |y|.
pub fn sum_dobinski_geometric(
    n: usize,
    r: usize,
    y: &Rational,
    tol: &Rational,
) -> Result<CertifiedValue> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    check_tol(tol)?;
    let abs_y = y.abs();
    if abs_y.is_zero() || abs_y >= Rational::one() {
        return Err(Error::DivergentInput {
            name: "y",
            value: y.to_string(),
        });
    }
    let rho = (Rational::one() + &abs_y) / rat_usize(2);
    let geo = &rho / (Rational::one() - &rho);

    let mut partial = Rational::zero();
    let mut binom = BigInt::one(); // C(k+r-1, k)
    let mut y_pow = Rational::one();
    for k in 0..TERM_CAP {
        if k > 0 {
            binom = binom * BigInt::from(k + r - 1) / BigInt::from(k);
            y_pow *= y;
        }
        let term = ir(BigInt::from(k + r).pow(n as u32) * &binom) * &y_pow;
        partial += &term;
        let ratio_bound = rat_usize(k + 1 + r) / rat_usize(k + 1)
            * pow_rat(&(rat_usize(k + r + 1) / rat_usize(k + r)), n)
            * &abs_y;
        if ratio_bound <= rho {
            let tail = term.abs() * &geo;
            if tail <= *tol {
                return Ok(CertifiedValue {
                    partial_sum: partial,
                    tail_radius: tail,
                    terms_used: k + 1,
                });
            }
        }
    }
    Err(Error::TolNotReached {
        cap: TERM_CAP,
        tail: "unbounded".into(),
    })
}

/// Exact closed form of the same series: ((-1)^n/(1-y)^r) w_n^{(r)}(1/(y-1)).
pub fn dobinski_closed_form(n: usize, r: usize, y: &Rational) -> Result<Rational> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    let abs_y = y.abs();
    if abs_y.is_zero() || abs_y >= Rational::one() {
        return Err(Error::DivergentInput {
            name: "y",
            value: y.to_string(),
        });
    }
    let one = Rational::one();
    let arg = &one / (y - &one);
    let mut v = geom_poly(n, r)?.eval(&arg) / pow_rat(&(&one - y), r);
    if n % 2 == 1 {
        v = -v;
    }
    Ok(v)
}

/// Σ_{k>=0} k^n C(k+r-1, k) x^k for 0 < |x| < 1, certified
/// (0^0 = 1 for the k = 0, n = 0 term).
/// Term-ratio bound for k >= 1: R(k) = ((k+1)/k)^n ((k+r)/(k+1)) |x|.
pub fn sum_power_binomial(
    n: usize,
    r: usize,
    x: &Rational,
    tol: &Rational,
) -> Result<CertifiedValue> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    check_tol(tol)?;
    let abs_x = x.abs();
    if abs_x.is_zero() || abs_x >= Rational::one() {
        return Err(Error::DivergentInput {
            name: "x",
            value: x.to_string(),
        });
    }
    let rho = (Rational::one() + &abs_x) / rat_usize(2);
    let geo = &rho / (Rational::one() - &rho);

    let mut partial = if n == 0 {
        Rational::one()
    } else {
        Rational::zero()
    };
    let mut binom = BigInt::one();
    let mut x_pow = Rational::one();
    for k in 1..TERM_CAP {
        binom = binom * BigInt::from(k + r - 1) / BigInt::from(k);
        x_pow *= x;
        let term = ir(BigInt::from(k).pow(n as u32) * &binom) * &x_pow;
        partial += &term;
        let ratio_bound = pow_rat(&(rat_usize(k + 1) / rat_usize(k)), n)
            * (rat_usize(k + r) / rat_usize(k + 1))
            * &abs_x;
        if ratio_bound <= rho {
            let tail = term.abs() * &geo;
            if tail <= *tol {
                return Ok(CertifiedValue {
                    partial_sum: partial,
                    tail_radius: tail,
                    terms_used: k + 1,
                });
            }
        }
    }
    Err(Error::TolNotReached {
        cap: TERM_CAP,
        tail: "unbounded".into(),
    })
}

/// Exact closed form: (1/(1-x)^r) w_n^{(r)}(x/(1-x)).
pub fn power_binomial_closed_form(n: usize, r: usize, x: &Rational) -> Result<Rational> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    let abs_x = x.abs();
    if abs_x.is_zero() || abs_x >= Rational::one() {
        return Err(Error::DivergentInput {
            name: "x",
            value: x.to_string(),
        });
    }
    let one = Rational::one();
    let denom = &one - x;
    Ok(geom_poly(n, r)?.eval(&(x / &denom)) / pow_rat(&denom, r))
}

/// Certified Taylor partial sum of e^y: tail after K terms is
/// |y|^{K+1}/(K+1)! * 1/(1 - |y|/(K+2)) once K+2 > |y|.
pub fn exp_certified(y: &Rational, tol: &Rational) -> Result<CertifiedValue> {
    check_tol(tol)?;
    let abs_y = y.abs();
    let mut partial = Rational::one();
    let mut term = Rational::one(); // y^k / k!
    let mut abs_term = Rational::one();
    for k in 0..TERM_CAP {
        // tail bound after the terms 0..=k
        let next_abs = &abs_term * &abs_y / rat_usize(k + 1);
        if abs_y < rat_usize(k + 2) {
            let tail = &next_abs / (Rational::one() - &abs_y / rat_usize(k + 2));
            if tail <= *tol {
                return Ok(CertifiedValue {
                    partial_sum: partial,
                    tail_radius: tail,
                    terms_used: k + 1,
                });
            }
        }
        term = term * y / rat_usize(k + 1);
        abs_term = next_abs;
        partial += &term;
    }
    Err(Error::TolNotReached {
        cap: TERM_CAP,
        tail: "unbounded".into(),
    })
}

/// Outcome of the r-Bell Dobinski cross-check: does the certified
/// interval of e^y * φ_{n,r}(y) intersect the certified interval of
/// Σ (k+r)^n y^k / k!?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DobinskiCheck {
    pub pass: bool,
    pub product_low: Rational,
    pub product_high: Rational,
    pub series_low: Rational,
    pub series_high: Rational,
    pub terms_used: usize,
}

/// Certified Σ_{k>=0} (k+r)^n y^k/k! (y > 0); ratio bound
/// R(k) = ((k+r+1)/(k+r))^n * y/(k+1) for k + r >= 1.
fn sum_shifted_power_exp(
    n: usize,
    r: usize,
    y: &Rational,
    tol: &Rational,
) -> Result<CertifiedValue> {
    check_tol(tol)?;
    let mut partial = Rational::zero();
    let mut y_pow = Rational::one();
    let mut fact = BigInt::one();
    for k in 0..TERM_CAP {
        if k > 0 {
            y_pow *= y;
            fact *= BigInt::from(k);
        }
        let base = if k + r == 0 && n == 0 {
            BigInt::one() // 0^0 = 1
        } else {
            BigInt::from(k + r).pow(n as u32)
        };
        let term = ir(base) * &y_pow / ir(fact.clone());
        partial += &term;
        if k + r >= 1 {
            let ratio_bound =
                pow_rat(&(rat_usize(k + r + 1) / rat_usize(k + r)), n) * y / rat_usize(k + 1);
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            if ratio_bound <= half {
                let tail = term.abs(); // * (1/2)/(1 - 1/2) = 1
                if tail <= *tol {
                    return Ok(CertifiedValue {
                        partial_sum: partial,
                        tail_radius: tail,
                        terms_used: k + 1,
                    });
                }
            }
        }
    }
    Err(Error::TolNotReached {
        cap: TERM_CAP,
        tail: "unbounded".into(),
    })
}

/// Verifies Dobinski's formula for the r-Bell polynomials at y > 0:
/// φ_{n,r}(y) = e^{-y} Σ (k+r)^n y^k/k!, as a certified interval
/// intersection with combined width at most tol.
pub fn check_rbell_dobinski(
    n: usize,
    r: usize,
    y: &Rational,
    tol: &Rational,
) -> Result<DobinskiCheck> {
    check_tol(tol)?;
    if *y <= Rational::zero() {
        return Err(Error::ParameterOutOfDomain(format!(
            "rbell check needs y > 0, got {y}"
        )));
    }
    let value = rbell_poly(n, r).eval(y); // > 0 for y > 0
    let quarter = tol / rat_usize(4);
    let exp = exp_certified(y, &(&quarter / &value))?;
    let series = sum_shifted_power_exp(n, r, y, &quarter)?;
    let product_low = exp.low() * &value;
    let product_high = exp.high() * &value;
    let pass = product_low.clone().max(series.low()) <= product_high.clone().min(series.high());
    Ok(DobinskiCheck {
        pass,
        product_low,
        product_high,
        series_low: series.low(),
        series_high: series.high(),
        terms_used: exp.terms_used + series.terms_used,
    })
}
