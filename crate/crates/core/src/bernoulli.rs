//! Bernoulli numbers (B_1 = -1/2 convention), tangent-related values of
//! the geometric polynomials, and p-Bernoulli numbers through two
//! independent computation routes.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{binomial, factorial, stirling1, stirling2r, Rational};
use crate::geomfamily::geom_poly;

fn cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Exact Bernoulli number B_n from the defining recursion, cached
/// grow-only.
pub fn bernoulli(n: usize) -> Rational {
    {
        let guard = cache().read().expect("bernoulli cache poisoned");
        if n < guard.len() {
            return guard[n].clone();
        }
    }
    let mut guard = cache().write().expect("bernoulli cache poisoned");
    while guard.len() <= n {
        let m = guard.len();
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut s = Rational::zero();
        for (k, b) in guard.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, k as isize)) * b;
        }
        let b_m = -s / Rational::from_integer(BigInt::from(m + 1));
        guard.push(b_m);
    }
    guard[n].clone()
}

/// p-Bernoulli number by the explicit r-Stirling formula
/// B_{n,p} = ((p+1)/p!) Σ_k {n+p, k+p}_p (-1)^k (k+p)!/(k+p+1).
pub fn pbernoulli_explicit(n: usize, p: usize) -> Rational {
    let mut s = Rational::zero();
    for k in 0..=n {
        let mut t = Rational::new(factorial(k + p), BigInt::from(k + p + 1))
            * Rational::from_integer(stirling2r(n + p, k + p, p));
        if k % 2 == 1 {
            t = -t;
        }
        s += t;
    }
    s * Rational::new(BigInt::from(p + 1), factorial(p))
}

/// The same number recovered from the first-kind Stirling relation
/// `Σ_k [p,k] (-1)^k B_{n+k} = (p!/(p+1)) B_{n,p}`; used as the oracle
/// route against [`pbernoulli_explicit`].
pub fn pbernoulli_via_stirling1(n: usize, p: usize) -> Rational {
    let mut s = Rational::zero();
    for k in 0..=p {
        let c = stirling1(p, k);
        if c.is_zero() {
            continue;
        }
        let mut t = Rational::from_integer(c) * bernoulli(n + k);
        if k % 2 == 1 {
            t = -t;
        }
        s += t;
    }
    s * Rational::new(BigInt::from(p + 1), factorial(p))
}

/// Closed form (2/(n+1))(1 - 2^{n+1}) B_{n+1} that w_n(-1/2) must equal.
pub fn tangent_bernoulli_form(n: usize) -> Rational {
    let two_pow = Rational::from_integer(BigInt::from(2).pow(n as u32 + 1));
    Rational::new(BigInt::from(2), BigInt::from(n + 1))
        * (Rational::one() - two_pow)
        * bernoulli(n + 1)
}

/// Returns w_n(-1/2), asserting the Bernoulli closed form on the way
/// (n >= 1; the tangent-number clause of the source identity is out of
/// scope, only the Bernoulli form is checked).
pub fn tangent_check(n: usize) -> Rational {
    let value = geom_poly(n, 1)
        .expect("order 1 is valid")
        .eval(&Rational::new(BigInt::from(-1), BigInt::from(2)));
    assert_eq!(
        value,
        tangent_bernoulli_form(n),
        "tangent identity broke at n={n}"
    );
    value
}
