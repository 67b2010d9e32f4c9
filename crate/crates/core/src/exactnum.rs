//! Arbitrary-precision integers/rationals, modular residues, and the
//! combinatorial number tables (binomial, Pochhammer, Stirling and
//! r-Stirling of both kinds).
//!
//! The r-Stirling triangles use Broder's absolute-index convention: the
//! table for offset `r` stores entries `{n,k}_r` (resp. `[n,k]_r`) for
//! `n, k >= r`, with base `{r,r}_r = 1` and everything outside the
//! triangle equal to zero. Tables are grow-only caches behind a
//! single-writer/multi-reader lock; completed rows are never mutated.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The universal exact scalar: a normalized arbitrary-precision fraction
/// (gcd(|num|, den) = 1, den >= 1, zero is 0/1; maintained by the
/// underlying rational type on every operation).
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an exact rational from `p/q`, integer, decimal (`0.25`) or
/// scientific (`1e-30`, `2.5e3`) notation. Decimal forms are converted
/// exactly, never through floating point.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::InvalidRational(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if digits == "-" || digits == "+" {
        return Err(err());
    }
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(n * ten.pow(scale as u32))
    } else {
        Rational::new(n, ten.pow(-scale as u32))
    })
}

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
pub fn binomial(n: usize, k: isize) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Rising factorial (x)_n = x(x+1)...(x+n-1), with (x)_0 = 1.
pub fn pochhammer(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc *= x + Rational::from_integer(BigInt::from(i));
    }
    acc
}

/// Integer rising factorial (a)_n.
pub fn rising_factorial(a: usize, n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n {
        acc *= BigInt::from(a + i);
    }
    acc
}

// ---------------------------------------------------------------------------
// Stirling / r-Stirling triangles
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    First,
    Second,
}

type Triangle = Vec<Vec<BigInt>>;

fn tables() -> &'static RwLock<HashMap<(Kind, usize), Triangle>> {
    static TABLES: OnceLock<RwLock<HashMap<(Kind, usize), Triangle>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(HashMap::new()))
}

fn grow(kind: Kind, r: usize, rows: &mut Triangle, n_abs: usize) {
    if rows.is_empty() {
        rows.push(vec![BigInt::one()]); // n = r, single entry k = r
    }
    while rows.len() <= n_abs - r {
        let n = r + rows.len();
        let prev = rows.last().expect("nonempty");
        let mut row = Vec::with_capacity(n - r + 1);
        for j in 0..=(n - r) {
            let above = if j < prev.len() { Some(&prev[j]) } else { None };
            let diag = if j >= 1 { Some(&prev[j - 1]) } else { None };
            let mut v = match (kind, above) {
                (Kind::Second, Some(t)) => t * BigInt::from(r + j),
                (Kind::First, Some(t)) => t * BigInt::from(n - 1),
                (_, None) => BigInt::zero(),
            };
            if let Some(d) = diag {
                v += d;
            }
            row.push(v);
        }
        rows.push(row);
    }
}

fn stirling(kind: Kind, n: usize, k: usize, r: usize) -> BigInt {
    if n < r || k < r || k > n {
        return BigInt::zero();
    }
    {
        let guard = tables().read().expect("table lock poisoned");
        if let Some(rows) = guard.get(&(kind, r)) {
            if n - r < rows.len() {
                return rows[n - r][k - r].clone();
            }
        }
    }
    let mut guard = tables().write().expect("table lock poisoned");
    let rows = guard.entry((kind, r)).or_default();
    grow(kind, r, rows, n);
    rows[n - r][k - r].clone()
}

/// r-Stirling number of the second kind {n, k}_r (absolute indices).
pub fn stirling2r(n: usize, k: usize, r: usize) -> BigInt {
    stirling(Kind::Second, n, k, r)
}

/// r-Stirling number of the first kind (unsigned) [n, k]_r.
pub fn stirling1r(n: usize, k: usize, r: usize) -> BigInt {
    stirling(Kind::First, n, k, r)
}

/// Classical Stirling number of the second kind {n, k}.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    stirling2r(n, k, 0)
}

/// Classical Stirling number of the first kind (unsigned) [n, k].
pub fn stirling1(n: usize, k: usize) -> BigInt {
    stirling1r(n, k, 0)
}

// ---------------------------------------------------------------------------
// Primality and modular residues
// ---------------------------------------------------------------------------

const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality: trial division by candidates up to 10^6,
/// then Miller-Rabin with a witness set that is exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = 7u64;
    // 2/3/5 wheel offsets
    let steps = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut idx = 0;
    while d <= TRIAL_LIMIT && d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += steps[idx];
        idx = (idx + 1) % steps.len();
    }
    if d * d > n {
        return true;
    }
    // Miller-Rabin, deterministic for n < 3.3 * 10^24 (covers u64)
    let mut s = 0u32;
    let mut t = n - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, t, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes q with lo <= q <= hi, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Inverse of a modulo the prime q (a not divisible by q).
pub fn mod_inverse(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q));
    pow_mod(a, q - 2, q)
}

/// A residue in [0, q) modulo a prime q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueModQ {
    value: u64,
    modulus: u64,
}

impl ResidueModQ {
    pub fn new(value: u64, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(ResidueModQ {
            value: value % q,
            modulus: q,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl std::fmt::Display for ResidueModQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

fn bigint_mod_u64(x: &BigInt, q: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(q));
    m.to_u64().expect("residue fits in u64")
}

/// Reduces a rational with q-free denominator to numerator * denominator^{-1}
/// mod the prime q.
pub fn rational_residue(x: &Rational, q: u64) -> Result<ResidueModQ> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let den = bigint_mod_u64(x.denom(), q);
    if den == 0 {
        return Err(Error::DenominatorDivisibleByQ {
            value: x.to_string(),
            q,
        });
    }
    let num = bigint_mod_u64(x.numer(), q);
    ResidueModQ::new(mul_mod(num, mod_inverse(den, q), q), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(4, 9), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }

    #[test]
    fn binomial_pascal_recurrence() {
        for n in 1..30usize {
            for k in 0..=n as isize {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(2), 2), rat(6));
        assert_eq!(pochhammer(&rat(3), 0), rat(1));
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(rising_factorial(3, 2), BigInt::from(12));
    }

    #[test]
    fn stirling2_examples() {
        assert_eq!(stirling2r(4, 2, 0), BigInt::from(7));
        assert_eq!(stirling2r(3, 2, 2), BigInt::from(2));
        for r in [0usize, 1, 3, 7] {
            assert_eq!(stirling2r(r, r, r), BigInt::one());
        }
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(stirling2(5, 0), BigInt::zero());
        assert_eq!(stirling2(3, 5), BigInt::zero());
    }

    /// Independent oracle: the classical alternating-sum formula for {n,k}.
    fn stirling2_sum(n: usize, k: usize) -> BigInt {
        let mut s = BigInt::zero();
        for j in 1..=k {
            let t = binomial(k, j as isize) * BigInt::from(j).pow(n as u32);
            if (k - j).is_multiple_of(2) {
                s += t;
            } else {
                s -= t;
            }
        }
        if n == 0 && k == 0 {
            return BigInt::one();
        }
        s / factorial(k)
    }

    #[test]
    fn stirling2_matches_alternating_sum() {
        for n in 0..=20 {
            for k in 0..=n {
                assert_eq!(stirling2(n, k), stirling2_sum(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn stirling1_examples() {
        assert_eq!(stirling1(3, 1), BigInt::from(2));
        assert_eq!(stirling1r(3, 2, 2), BigInt::from(2));
        assert_eq!(stirling1(5, 4), BigInt::from(10));
        // special values: [n,1] = (n-1)!, [n,n-1] = C(n,2), [n,n-2] = (3n-1)/4 C(n,3)
        for n in 2..=12usize {
            assert_eq!(stirling1(n, 1), factorial(n - 1));
            assert_eq!(stirling1(n, n - 1), binomial(n, 2));
        }
        for n in 3..=12usize {
            assert_eq!(
                stirling1(n, n - 2),
                BigInt::from(3 * n - 1) * binomial(n, 3) / BigInt::from(4)
            );
        }
    }

    /// [n,k]_r satisfies sum_k [n,k]_r x^{k-r} = (x+r)(x+r+1)...(x+n-1):
    /// expand the product as integer coefficients and compare.
    #[test]
    fn stirling1r_matches_rising_factorial_expansion() {
        for r in 0..=4usize {
            for n in r..=(r + 12) {
                let mut coeffs = vec![BigInt::one()]; // coefficient of x^j
                for j in r..n {
                    let mut next = vec![BigInt::zero(); coeffs.len() + 1];
                    for (d, c) in coeffs.iter().enumerate() {
                        next[d + 1] += c;
                        next[d] += c * BigInt::from(j);
                    }
                    coeffs = next;
                }
                for (d, c) in coeffs.iter().enumerate() {
                    assert_eq!(stirling1r(n, r + d, r), c.clone(), "n={n} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn r_zero_matches_classical() {
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(stirling2r(n, k, 0), stirling2(n, k));
                assert_eq!(stirling1r(n, k, 0), stirling1(n, k));
            }
        }
    }

    #[test]
    fn frozen_large_r_stirling_entry() {
        assert_eq!(
            stirling2r(63, 40, 32).to_string(),
            "5594036419673694083426770525386444091463520"
        );
    }

    #[test]
    fn prime_stirling_congruences() {
        // [q,k] = 0 = {q,k} (mod q) for 2 <= k <= q-1
        for q in primes_in(2, 31) {
            for k in 2..q as usize {
                assert!((stirling1(q as usize, k) % BigInt::from(q)).is_zero());
                assert!((stirling2(q as usize, k) % BigInt::from(q)).is_zero());
            }
        }
    }

    #[test]
    fn howard_congruence_small() {
        // {q+m, k} = {m+1, k} + {m, k-q} (mod q)
        for q in primes_in(2, 13) {
            for m in 0..=10usize {
                for k in 0..=(q as usize + m) {
                    let lhs = stirling2(q as usize + m, k);
                    let mut rhs = stirling2(m + 1, k);
                    if k >= q as usize {
                        rhs += stirling2(m, k - q as usize);
                    }
                    assert!(
                        ((lhs - rhs) % BigInt::from(q)).is_zero(),
                        "q={q} m={m} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime(1_000_003));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert_eq!(primes_in(3, 13), vec![3, 5, 7, 11, 13]);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(rational_residue(&ratio(1, 12), 5).unwrap().value(), 3);
        assert_eq!(rational_residue(&rat(7), 7).unwrap().value(), 0);
        assert!(matches!(
            rational_residue(&ratio(1, 5), 5),
            Err(Error::DenominatorDivisibleByQ { .. })
        ));
        assert!(matches!(ResidueModQ::new(1, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("2.5e3").unwrap(), rat(2500));
        assert_eq!(parse_rational("-1.5e-2").unwrap(), ratio(-3, 200));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    proptest! {
        /// rational_residue is a ring homomorphism on q-free denominators.
        #[test]
        fn residue_homomorphism(a in -200i64..200, b in 1i64..40, c in -200i64..200, d in 1i64..40) {
            let q = 13u64;
            prop_assume!(b % q as i64 != 0 && d % q as i64 != 0);
            let x = ratio(a, b);
            let y = ratio(c, d);
            let rx = rational_residue(&x, q).unwrap().value();
            let ry = rational_residue(&y, q).unwrap().value();
            let sum = rational_residue(&(&x + &y), q);
            let prod = rational_residue(&(&x * &y), q);
            // x+y and x*y keep q-free denominators when x and y have them
            prop_assert_eq!(sum.unwrap().value(), (rx + ry) % q);
            prop_assert_eq!(prod.unwrap().value(), (rx * ry) % q);
        }

        #[test]
        fn pochhammer_splits(a in -20i64..20, b in 1i64..6, n in 0usize..8, m in 0usize..8) {
            // (x)_{n+m} = (x)_n * (x+n)_m
            let x = ratio(a, b);
            let shifted = &x + rat(n as i64);
            prop_assert_eq!(
                pochhammer(&x, n + m),
                pochhammer(&x, n) * pochhammer(&shifted, m)
            );
        }
    }
}
