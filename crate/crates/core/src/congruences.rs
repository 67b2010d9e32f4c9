//! Prime-modulus verification of the congruence catalog: Stirling-number
//! congruences, the mod-q behaviour of geometric polynomials of prime
//! order, the Gross mod-10 periodicity of the geometric numbers, and the
//! p-Bernoulli residue claims.
//!
//! Polynomial checks run through two evaluation paths (exact big-integer
//! arithmetic followed by reduction, and native mod-q tables) and the
//! sweep asserts the paths agree on every case.
//!
//! Note on C-QQ, C-QQ1 and the (q-1) ∤ 2n branch of C-VSCP: the claimed
//! residues (1/12, 1/12, a unit with square 1) are encoded as stated, and
//! the checker reports them as failing: the observed residues are 0, -1/4
//! and 0 on every prime in range, through all three independent B_{n,p}
//! routes. The claims themselves are wrong, not the arithmetic; the
//! reports record the observed residues per case. The (q-1) | 2n branch
//! of C-VSCP (residue of -1/2) is correct and passes.

use num_bigint::BigInt;

use crate::bernoulli::{bernoulli, pbernoulli_explicit};
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, mod_inverse, rational_residue, stirling1, stirling2, Rational};
use crate::geomfamily::geom_poly;
use crate::report::{params, CaseValue, CheckCase, CheckReport, ParamValue, Params, Verdict};

/// Check ids, in catalog order.
pub const CHECKS: &[&str] = &[
    "C-GROSS", "C-32", "C-33", "C-HOWARD", "C-L1", "C-L2", "C-T3", "C-T4", "C-T5", "C-T6", "C-VSC",
    "C-VSCP", "C-QQ", "C-QQ1",
];

pub fn check_ids() -> &'static [&'static str] {
    CHECKS
}

pub fn is_known_check(id: &str) -> bool {
    CHECKS.contains(&id)
}

/// Default prime range per check, mirroring the acceptance sweeps.
pub fn default_prime_range(id: &str) -> Result<(u64, u64)> {
    Ok(match id {
        "C-GROSS" => (2, 5),
        "C-32" | "C-33" => (2, 97),
        "C-HOWARD" => (2, 31),
        "C-L1" => (3, 61),
        "C-L2" | "C-VSC" => (2, 61),
        "C-T3" | "C-T4" | "C-T5" | "C-T6" | "C-VSCP" => (3, 31),
        "C-QQ" | "C-QQ1" => (5, 31),
        _ => return Err(Error::UnknownCheck(id.to_string())),
    })
}

/// Sweep knobs; `None` takes the per-check default.
#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Bound for the auxiliary index (n for C-L2/C-T4/C-GROSS, m for
    /// C-HOWARD, n of 2n for C-VSC/C-VSCP).
    pub n_max: Option<usize>,
    /// For polynomial checks, evaluate at this many evenly spaced y in
    /// [1, q-1] instead of all of them.
    pub y_sample: Option<usize>,
}

fn default_n_max(id: &str) -> usize {
    match id {
        "C-GROSS" => 40,
        "C-HOWARD" => 10,
        "C-L2" => 10,
        "C-T4" => 6,
        "C-VSC" => 30,
        "C-VSCP" => 10,
        _ => 0,
    }
}

// ---------------------------------------------------------------------------
// Native mod-q evaluation path
// ---------------------------------------------------------------------------

mod modq {
    use super::mod_inverse;

    fn mul(a: u64, b: u64, q: u64) -> u64 {
        ((a as u128 * b as u128) % q as u128) as u64
    }

    /// Classical Stirling-2 triangle mod q, rows 0..=n_max.
    pub fn stirling2_table(n_max: usize, q: u64) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = vec![vec![1 % q]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![0u64; n + 1];
            for k in 1..=n {
                let above = if k < prev.len() { prev[k] } else { 0 };
                let diag = prev[k - 1];
                row[k] = (mul(k as u64 % q, above, q) + diag) % q;
            }
            rows.push(row);
        }
        rows
    }

    /// w_n^{(r)}(y) mod q via mod-q tables: sum_k {n,k} (r)_k y^k.
    pub fn geom_value(n: usize, r: usize, y: u64, q: u64) -> u64 {
        let table = stirling2_table(n, q);
        let mut acc = 0u64;
        let mut rising = 1 % q; // (r)_k mod q
        let mut y_pow = 1 % q;
        for (k, entry) in table[n].iter().enumerate() {
            if k > 0 {
                rising = mul(rising, (r as u64 + k as u64 - 1) % q, q);
                y_pow = mul(y_pow, y % q, q);
            }
            acc = (acc + mul(*entry, mul(rising, y_pow, q), q)) % q;
        }
        acc
    }

    /// Residue of a rational with q-free denominator, from u64 parts.
    pub fn rational(num: i64, den: u64, q: u64) -> u64 {
        let n = num.rem_euclid(q as i64) as u64;
        mul(n, mod_inverse(den % q, q), q)
    }
}

// ---------------------------------------------------------------------------
// Case evaluation
// ---------------------------------------------------------------------------

fn ir(b: BigInt) -> Rational {
    Rational::from_integer(b)
}

fn residue_case(id: &str, params: Params, observed: u64, expected: CaseValue) -> CheckCase {
    let ok = match &expected {
        CaseValue::Residue(e) => observed == *e,
        CaseValue::ResidueSet(set) => set.contains(&observed),
        _ => false,
    };
    CheckCase {
        id: id.into(),
        params,
        lhs: CaseValue::Residue(observed),
        rhs: expected,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    }
}

fn hypothesis_violated(id: &str, params: Params) -> CheckCase {
    CheckCase {
        id: id.into(),
        params,
        lhs: CaseValue::Absent,
        rhs: CaseValue::Absent,
        verdict: Verdict::Inapplicable,
    }
}

/// Exact-then-reduce evaluation of w_n^{(r)}(y) mod q, cross-checked
/// against the native mod-q path.
fn w_residue_dual(n: usize, r: usize, y: i64, q: u64) -> u64 {
    let exact = geom_poly(n, r)
        .expect("order >= 1")
        .eval(&ir(BigInt::from(y)));
    let reduced = rational_residue(&exact, q)
        .expect("integer value cannot have divisible denominator")
        .value();
    let native = modq::geom_value(n, r, y.rem_euclid(q as i64) as u64, q);
    assert_eq!(
        reduced, native,
        "mod-q path diverged at n={n} r={r} y={y} q={q}"
    );
    reduced
}

fn get_int(p: &Params, name: &'static str) -> Result<i64> {
    match p.get(name) {
        Some(ParamValue::Int(v)) => Ok(*v),
        Some(v) => Err(Error::ParameterOutOfDomain(format!(
            "{name} = {v} must be an integer"
        ))),
        None => Err(Error::MissingParameter(name)),
    }
}

fn get_unsigned(p: &Params, name: &'static str) -> Result<usize> {
    let v = get_int(p, name)?;
    if v < 0 {
        return Err(Error::ParameterOutOfDomain(format!(
            "{name} = {v} must be >= 0"
        )));
    }
    Ok(v as usize)
}

fn stirling_residue(v: BigInt, q: u64) -> u64 {
    rational_residue(&ir(v), q).expect("integer").value()
}

/// Runs a single congruence case. Hypotheses are evaluated before any
/// comparison; a failing hypothesis yields an `inapplicable` verdict,
/// and a rational whose denominator is divisible by q yields the
/// distinct `denominator-divisible` verdict.
pub fn check_congruence(id: &str, q: u64, extra: &Params) -> Result<CheckCase> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let mut p = extra.clone();
    p.insert("q".into(), ParamValue::Int(q as i64));
    match id {
        "C-GROSS" => {
            // w_{n+4} = w_n (mod 10), split over the prime factors 2 and 5
            let n = get_unsigned(&p, "n")?;
            if n < 1 {
                return Err(Error::ParameterOutOfDomain("C-GROSS needs n >= 1".into()));
            }
            if q != 2 && q != 5 {
                return Ok(hypothesis_violated(id, p));
            }
            let observed = w_residue_dual(n + 4, 1, 1, q);
            let expected = w_residue_dual(n, 1, 1, q);
            Ok(residue_case(id, p, observed, CaseValue::Residue(expected)))
        }
        "C-32" | "C-33" => {
            let k = get_unsigned(&p, "k")?;
            if !(2..=(q as usize - 1)).contains(&k) {
                return Err(Error::ParameterOutOfDomain(format!(
                    "k = {k} must lie in [2, q-1] for {id}"
                )));
            }
            let v = if id == "C-32" {
                stirling1(q as usize, k)
            } else {
                stirling2(q as usize, k)
            };
            Ok(residue_case(
                id,
                p,
                stirling_residue(v, q),
                CaseValue::Residue(0),
            ))
        }
        "C-HOWARD" => {
            let m = get_unsigned(&p, "m")?;
            let k = get_unsigned(&p, "k")?;
            let observed = stirling_residue(stirling2(q as usize + m, k), q);
            let mut rhs = stirling2(m + 1, k);
            if k >= q as usize {
                rhs += stirling2(m, k - q as usize);
            }
            Ok(residue_case(
                id,
                p,
                observed,
                CaseValue::Residue(stirling_residue(rhs, q)),
            ))
        }
        "C-L1" => {
            let y = get_int(&p, "y")?;
            if q == 2 {
                return Ok(hypothesis_violated(id, p)); // odd primes only
            }
            let observed = w_residue_dual(q as usize, 1, y, q);
            let expected = y.rem_euclid(q as i64) as u64;
            Ok(residue_case(id, p, observed, CaseValue::Residue(expected)))
        }
        "C-L2" => {
            let y = get_int(&p, "y")?;
            let n = get_unsigned(&p, "n")?;
            if n < 1 {
                return Err(Error::ParameterOutOfDomain("C-L2 needs n >= 1".into()));
            }
            let observed = w_residue_dual(q as usize + n - 1, 1, y, q);
            let expected = w_residue_dual(n, 1, y, q);
            Ok(residue_case(id, p, observed, CaseValue::Residue(expected)))
        }
        "C-T3" => {
            let y = get_int(&p, "y")?;
            if q == 2 || (y + 1).rem_euclid(q as i64) == 0 {
                return Ok(hypothesis_violated(id, p));
            }
            let observed = w_residue_dual(q as usize, q as usize, y, q);
            Ok(residue_case(id, p, observed, CaseValue::Residue(0)))
        }
        "C-T4" => {
            let y = get_int(&p, "y")?;
            let r = get_unsigned(&p, "r")?;
            let n = get_unsigned(&p, "n")?;
            if n < 1 || r < 1 {
                return Err(Error::ParameterOutOfDomain("C-T4 needs n, r >= 1".into()));
            }
            if !(r as u64).is_multiple_of(q) || y.rem_euclid(q as i64) == 0 {
                return Ok(hypothesis_violated(id, p));
            }
            let observed = w_residue_dual(n, r, y, q);
            Ok(residue_case(id, p, observed, CaseValue::Residue(0)))
        }
        "C-T5" => {
            let y = get_int(&p, "y")?;
            let r = get_unsigned(&p, "r")?;
            let y_mod = y.rem_euclid(q as i64);
            if q == 2 || r < 1 || r as u64 % q != 1 || y_mod == 0 || (y_mod + 1) % q as i64 == 0 {
                return Ok(hypothesis_violated(id, p));
            }
            let observed = w_residue_dual(q as usize - 1, r, y, q);
            Ok(residue_case(id, p, observed, CaseValue::Residue(0)))
        }
        "C-T6" => {
            let y = get_int(&p, "y")?;
            let r = get_unsigned(&p, "r")?;
            if r < 1 {
                return Err(Error::ParameterOutOfDomain("C-T6 needs r >= 1".into()));
            }
            let r_mod = r as u64 % q;
            if q == 2 || y.rem_euclid(q as i64) == 0 || (r_mod != 0 && r_mod != q - 1) {
                return Ok(hypothesis_violated(id, p));
            }
            let expected = if r_mod == 0 {
                0
            } else {
                (-y).rem_euclid(q as i64) as u64
            };
            let observed = w_residue_dual(q as usize + 1, r, y, q);
            Ok(residue_case(id, p, observed, CaseValue::Residue(expected)))
        }
        "C-VSC" => {
            let n = get_unsigned(&p, "n")?;
            if n < 1 {
                return Err(Error::ParameterOutOfDomain("C-VSC needs n >= 1".into()));
            }
            let value = ir(BigInt::from(q)) * bernoulli(2 * n);
            let expected = if (2 * n) % (q as usize - 1) == 0 {
                q - 1
            } else {
                0
            };
            match rational_residue(&value, q) {
                Ok(res) => Ok(residue_case(
                    id,
                    p,
                    res.value(),
                    CaseValue::Residue(expected),
                )),
                Err(Error::DenominatorDivisibleByQ { .. }) => Ok(CheckCase {
                    id: id.into(),
                    params: p,
                    lhs: CaseValue::Scalar(value),
                    rhs: CaseValue::Residue(expected),
                    verdict: Verdict::DenominatorDivisible,
                }),
                Err(e) => Err(e),
            }
        }
        "C-VSCP" => {
            let n = get_unsigned(&p, "n")?;
            if n < 1 {
                return Err(Error::ParameterOutOfDomain("C-VSCP needs n >= 1".into()));
            }
            if q == 2 {
                return Ok(hypothesis_violated(id, p));
            }
            let value = ir(BigInt::from(q)) * pbernoulli_explicit(2 * n, q as usize);
            let expected = if (2 * n) % (q as usize - 1) == 0 {
                CaseValue::Residue(modq::rational(-1, 2, q))
            } else {
                // claimed "∓1", asserted sign-insensitively
                CaseValue::ResidueSet(vec![1, q - 1])
            };
            match rational_residue(&value, q) {
                Ok(res) => Ok(residue_case(id, p, res.value(), expected)),
                Err(Error::DenominatorDivisibleByQ { .. }) => Ok(CheckCase {
                    id: id.into(),
                    params: p,
                    lhs: CaseValue::Scalar(value),
                    rhs: expected,
                    verdict: Verdict::DenominatorDivisible,
                }),
                Err(e) => Err(e),
            }
        }
        "C-QQ" | "C-QQ1" => {
            if q <= 3 {
                return Ok(hypothesis_violated(id, p));
            }
            let value = if id == "C-QQ" {
                ir(BigInt::from(q)) * pbernoulli_explicit(q as usize, q as usize)
            } else {
                pbernoulli_explicit(q as usize, q as usize + 1)
            };
            let expected = CaseValue::Residue(modq::rational(1, 12, q));
            match rational_residue(&value, q) {
                Ok(res) => Ok(residue_case(id, p, res.value(), expected)),
                Err(Error::DenominatorDivisibleByQ { .. }) => Ok(CheckCase {
                    id: id.into(),
                    params: p,
                    lhs: CaseValue::Scalar(value),
                    rhs: expected,
                    verdict: Verdict::DenominatorDivisible,
                }),
                Err(e) => Err(e),
            }
        }
        _ => Err(Error::UnknownCheck(id.to_string())),
    }
}

/// Evenly spaced residues in [1, q-1]; `None` keeps all of them.
fn y_values(q: u64, sample: Option<usize>) -> Vec<i64> {
    let all: Vec<i64> = (1..q as i64).collect();
    match sample {
        Some(s) if s > 0 && s < all.len() => {
            let mut picked: Vec<i64> = (0..s).map(|i| all[i * all.len() / s]).collect();
            picked.dedup();
            picked
        }
        _ => all,
    }
}

fn int(v: i64) -> ParamValue {
    ParamValue::Int(v)
}

/// Enumerates the (prime, parameters) cases a check runs over.
fn cases_for(id: &str, q: u64, opts: &SweepOptions) -> Result<Vec<Params>> {
    let n_max = opts.n_max.unwrap_or_else(|| default_n_max(id));
    let mut out = Vec::new();
    match id {
        "C-GROSS" => {
            for n in 1..=n_max {
                out.push(params(&[("n", int(n as i64))]));
            }
        }
        "C-32" | "C-33" => {
            for k in 2..q as i64 {
                out.push(params(&[("k", int(k))]));
            }
        }
        "C-HOWARD" => {
            for m in 0..=n_max {
                for k in 0..=(q as usize + m) {
                    out.push(params(&[("k", int(k as i64)), ("m", int(m as i64))]));
                }
            }
        }
        "C-L1" | "C-T3" => {
            for y in y_values(q, opts.y_sample) {
                out.push(params(&[("y", int(y))]));
            }
        }
        "C-L2" => {
            for n in 1..=n_max {
                for y in y_values(q, opts.y_sample) {
                    out.push(params(&[("n", int(n as i64)), ("y", int(y))]));
                }
            }
        }
        "C-T4" => {
            for r in [q as usize, 2 * q as usize] {
                for n in 1..=n_max {
                    for y in y_values(q, opts.y_sample) {
                        out.push(params(&[
                            ("n", int(n as i64)),
                            ("r", int(r as i64)),
                            ("y", int(y)),
                        ]));
                    }
                }
            }
        }
        "C-T5" => {
            for r in [q as usize + 1, 2 * q as usize + 1] {
                for y in y_values(q, opts.y_sample) {
                    out.push(params(&[("r", int(r as i64)), ("y", int(y))]));
                }
            }
        }
        "C-T6" => {
            for r in [
                q as usize - 1,
                q as usize,
                2 * q as usize - 1,
                2 * q as usize,
            ] {
                for y in y_values(q, opts.y_sample) {
                    out.push(params(&[("r", int(r as i64)), ("y", int(y))]));
                }
            }
        }
        "C-VSC" | "C-VSCP" => {
            for n in 1..=n_max {
                out.push(params(&[("n", int(n as i64))]));
            }
        }
        "C-QQ" | "C-QQ1" => {
            out.push(Params::new());
        }
        _ => return Err(Error::UnknownCheck(id.to_string())),
    }
    Ok(out)
}

/// Sweeps a check over the given primes (each must be prime) and
/// aggregates the outcome; hypotheses are honored per case.
pub fn sweep(id: &str, primes: &[u64], opts: &SweepOptions) -> Result<CheckReport> {
    if !is_known_check(id) {
        return Err(Error::UnknownCheck(id.to_string()));
    }
    let mut cases = Vec::new();
    for &q in primes {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        // C-GROSS is a mod-10 statement; only its prime factors apply
        if id == "C-GROSS" && q != 2 && q != 5 {
            continue;
        }
        for case_params in cases_for(id, q, opts)? {
            cases.push(check_congruence(id, q, &case_params)?);
        }
    }
    Ok(CheckReport::from_cases(id, cases))
}

/// Runs a check over its default prime range.
pub fn sweep_default(id: &str, opts: &SweepOptions) -> Result<CheckReport> {
    let (lo, hi) = default_prime_range(id)?;
    sweep(id, &crate::exactnum::primes_in(lo, hi), opts)
}
