//! Constructors for the polynomial families: exponential (Bell) and
//! r-Bell polynomials, geometric polynomials of any positive integer
//! order, their two-variable extension, and the number specializations.
//! Each family has at least two independent construction routes so the
//! identity suite can cross-validate them.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, stirling2, stirling2r, Rational};
use crate::polyalg::{BiPoly, UniPoly};

fn rat_int(b: BigInt) -> Rational {
    Rational::from_integer(b)
}

fn rising(r: usize, k: usize) -> Rational {
    rat_int(crate::exactnum::rising_factorial(r, k))
}

/// Exponential (single-variable Bell) polynomial φ_n(y) = Σ {n,k} y^k.
pub fn exp_poly(n: usize) -> UniPoly {
    UniPoly::from_coeffs((0..=n).map(|k| rat_int(stirling2(n, k))).collect())
}

/// r-Bell polynomial φ_{n,r}(y) = Σ {n+r, k+r}_r y^k.
pub fn rbell_poly(n: usize, r: usize) -> UniPoly {
    UniPoly::from_coeffs(
        (0..=n)
            .map(|k| rat_int(stirling2r(n + r, k + r, r)))
            .collect(),
    )
}

/// Higher-order geometric polynomial w_n^{(r)}(y) = Σ {n,k} (r)_k y^k;
/// order r = 1 gives the geometric (Fubini) polynomial w_n(y).
pub fn geom_poly(n: usize, r: usize) -> Result<UniPoly> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    Ok(UniPoly::from_coeffs(
        (0..=n)
            .map(|k| rat_int(stirling2(n, k)) * rising(r, k))
            .collect(),
    ))
}

/// Same polynomial through the r-Stirling route:
/// w_n^{(r)}(y) = Σ {n+r, k+r}_r (r)_k (-1)^{n+k} (y+1)^k.
pub fn geom_poly_explicit(n: usize, r: usize) -> Result<UniPoly> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    let mut acc = UniPoly::zero();
    let y_plus_1 = UniPoly::from_coeffs(vec![Rational::one(), Rational::one()]);
    let mut power = UniPoly::one();
    for k in 0..=n {
        let mut c = rat_int(stirling2r(n + r, k + r, r)) * rising(r, k);
        if (n + k) % 2 == 1 {
            c = -c;
        }
        acc = &acc + &power.scale(&c);
        power = &power * &y_plus_1;
    }
    Ok(acc)
}

/// Two-variable polynomial w_n^{(r)}(x; y) = Σ C(n,k) w_k^{(r)}(y) x^{n-k}.
pub fn geom_two_var(n: usize, r: usize) -> Result<BiPoly> {
    if r < 1 {
        return Err(Error::InvalidOrder(r));
    }
    let mut grid = vec![Vec::new(); n + 1];
    for k in 0..=n {
        let w_k = geom_poly(k, r)?;
        let c = rat_int(binomial(n, k as isize));
        grid[n - k] = w_k.coeffs().iter().map(|a| a * &c).collect();
    }
    Ok(BiPoly::from_grid(grid))
}

/// Higher-order geometric number w_n^{(r)} = w_n^{(r)}(1); always a
/// nonnegative integer.
pub fn geom_number(n: usize, r: usize) -> Result<Rational> {
    Ok(geom_poly(n, r)?.eval(&Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};
    use crate::polyalg::{egf_reference, factorial_rat, gamma_moment};
    use num_traits::Signed;

    fn ipoly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn exp_poly_examples() {
        assert_eq!(exp_poly(0), UniPoly::one());
        assert_eq!(exp_poly(2), ipoly(&[0, 1, 1]));
        assert_eq!(exp_poly(3).eval(&rat(1)), rat(5)); // Bell number
    }

    #[test]
    fn rbell_examples() {
        assert_eq!(rbell_poly(1, 2), ipoly(&[2, 1]));
        assert_eq!(rbell_poly(3, 2), ipoly(&[8, 19, 9, 1]));
        for n in 0..=8 {
            assert_eq!(rbell_poly(n, 0), exp_poly(n));
        }
        assert_eq!(rbell_poly(0, 5), UniPoly::one());
    }

    #[test]
    fn geom_poly_examples() {
        assert_eq!(geom_poly(3, 1).unwrap(), ipoly(&[0, 1, 6, 6]));
        assert_eq!(geom_poly(2, 2).unwrap(), ipoly(&[0, 2, 6]));
        assert_eq!(geom_poly(0, 4).unwrap(), UniPoly::one());
        assert_eq!(
            geom_poly(6, 3).unwrap(),
            ipoly(&[0, 3, 372, 5400, 23400, 37800, 20160])
        );
        assert!(matches!(geom_poly(2, 0), Err(Error::InvalidOrder(0))));
    }

    #[test]
    fn explicit_route_examples() {
        assert_eq!(geom_poly_explicit(1, 1).unwrap(), ipoly(&[0, 1]));
        assert_eq!(geom_poly_explicit(0, 3).unwrap(), UniPoly::one());
        assert_eq!(geom_poly_explicit(2, 2).unwrap(), geom_poly(2, 2).unwrap());
    }

    #[test]
    fn two_var_examples() {
        let p = geom_two_var(1, 1).unwrap();
        assert_eq!(p.coeff(1, 0), rat(1)); // x
        assert_eq!(p.coeff(0, 1), rat(1)); // y
        assert_eq!(p.eval(&rat(1), &rat(5)), rat(6));
        assert_eq!(geom_two_var(0, 3).unwrap().eval(&rat(9), &rat(9)), rat(1));
        // reflection spot check: w_1(x;y) at (1,5) = -w_1(-6)
        let refl = -geom_poly(1, 1).unwrap().eval(&rat(-6));
        assert_eq!(p.eval(&rat(1), &rat(5)), refl);
        // x = 0 recovers the single-variable polynomial
        let q = geom_two_var(4, 2).unwrap();
        let w4 = geom_poly(4, 2).unwrap();
        for y0 in [rat(2), ratio(-1, 2), rat(1)] {
            assert_eq!(q.eval(&rat(0), &y0), w4.eval(&y0));
        }
    }

    #[test]
    fn geom_number_examples() {
        assert_eq!(geom_number(4, 1).unwrap(), rat(75));
        assert_eq!(geom_number(2, 3).unwrap(), rat(15));
        assert_eq!(geom_number(0, 7).unwrap(), rat(1));
        let fubini = [1i64, 1, 3, 13, 75, 541, 4683, 47293, 545835];
        for (n, &f) in fubini.iter().enumerate() {
            assert_eq!(geom_number(n, 1).unwrap(), rat(f));
        }
    }

    #[test]
    fn integrality() {
        for n in 0..=10 {
            for r in 1..=4 {
                let v = geom_number(n, r).unwrap();
                assert!(v.is_integer() && !v.is_negative(), "n={n} r={r}");
                for c in geom_poly(n, r).unwrap().coeffs() {
                    assert!(c.is_integer());
                }
            }
        }
    }

    #[test]
    fn route_equivalence_small() {
        for n in 0..=8 {
            for r in 1..=4 {
                let direct = geom_poly(n, r).unwrap();
                assert_eq!(
                    direct,
                    geom_poly_explicit(n, r).unwrap(),
                    "explicit n={n} r={r}"
                );
                assert_eq!(
                    direct,
                    gamma_moment(&exp_poly(n), r).unwrap(),
                    "gamma n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn reflection_and_rbell_bridge() {
        // w_n^{(r)}(r; y) = (-1)^n w_n^{(r)}(-y-1), and the gamma-moment
        // of the r-Bell polynomial lands on the same reflection
        for n in 0..=10usize {
            for r in 1..=4usize {
                let two_var = geom_two_var(n, r).unwrap();
                let single = geom_poly(n, r).unwrap();
                let bridged = gamma_moment(&rbell_poly(n, r), r).unwrap();
                for y0 in [rat(1), rat(-2), ratio(1, 2), ratio(-1, 2)] {
                    let mut reflected = single.eval(&(-&y0 - rat(1)));
                    if n % 2 == 1 {
                        reflected = -reflected;
                    }
                    assert_eq!(two_var.eval(&rat(r as i64), &y0), reflected, "n={n} r={r}");
                    assert_eq!(bridged.eval(&y0), reflected, "bridge n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn egf_matches_constructors_small() {
        let order = 8;
        for r in 1..=3usize {
            for x0 in [rat(0), rat(r as i64)] {
                for y0 in [rat(1), rat(-2), ratio(1, 2)] {
                    let s = egf_reference(r, &x0, &y0, order);
                    for n in 0..=order {
                        let expected = geom_two_var(n, r).unwrap().eval(&x0, &y0);
                        assert_eq!(s.coeff(n) * factorial_rat(n), expected, "n={n} r={r}");
                    }
                }
            }
        }
    }
}
