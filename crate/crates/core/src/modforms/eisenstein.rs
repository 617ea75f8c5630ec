//! Bernoulli numbers, divisor-power sums and Eisenstein series.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::qexp::QExpansion;
use crate::coefficients::{ell_valuation, Integers, Modulus, Rationals};
use crate::error::{Error, Result};
use crate::series::{LaurentSeries, TruncSeries};

/// Largest Bernoulli index computed.
pub const BERNOULLI_CAP: u64 = 200;

fn bernoulli_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1, B_0 = 1.
        let cap = BERNOULLI_CAP as usize;
        let mut b: Vec<BigRational> = Vec::with_capacity(cap + 1);
        b.push(BigRational::one());
        // Pascal row C(n + 1, 0..=n + 1), starting at n = 0.
        let mut row = vec![BigInt::one(), BigInt::one()];
        for n in 1..=cap {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigInt::one());
            next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::one());
            row = next;
            let mut acc = BigRational::zero();
            for (bj, c) in b.iter().zip(&row) {
                if !bj.is_zero() {
                    acc += bj * c;
                }
            }
            b.push(-acc / BigInt::from(n + 1));
        }
        b
    })
}

/// Exact `B_k` with `B_1 = -1/2`, for `k <= 200`.
pub fn bernoulli(k: u64) -> Result<BigRational> {
    if k > BERNOULLI_CAP {
        return Err(Error::CapExceeded {
            value: k,
            cap: BERNOULLI_CAP,
        });
    }
    Ok(bernoulli_table()[k as usize].clone())
}

/// `sigma_r(n) = sum_{d | n} d^r`, `n >= 1`.
pub fn sigma(n: u64, r: u32) -> BigInt {
    assert!(n >= 1, "divisor sums start at n = 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(r);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(r);
            }
        }
        d += 1;
    }
    total
}

/// `sigma_r(n)` for all `1 <= n <= order` by sieving; index 0 holds zero.
fn sigma_table(order: usize, r: u32) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let power = BigInt::from(d).pow(r);
        for multiple in (d..=order).step_by(d) {
            table[multiple] += &power;
        }
    }
    table
}

fn check_weight(k: u64) -> Result<()> {
    if k % 2 == 1 {
        return Err(Error::OddWeight(k as i64));
    }
    if k < 4 {
        return Err(Error::InvalidParameter(format!(
            "Eisenstein weight {k} below 4"
        )));
    }
    if k > BERNOULLI_CAP {
        return Err(Error::CapExceeded {
            value: k,
            cap: BERNOULLI_CAP,
        });
    }
    Ok(())
}

/// `-2k / B_k`, the normalizing factor of `E_k`.
pub fn eisenstein_factor(k: u64) -> Result<BigRational> {
    check_weight(k)?;
    Ok(BigRational::from_integer(BigInt::from(-2 * k as i64)) / bernoulli(k)?)
}

/// `E_k = 1 + (-2k / B_k) sum_{n >= 1} sigma_{k-1}(n) q^n` through `q^order`.
pub fn eisenstein(k: u64, order: usize) -> Result<QExpansion> {
    let factor = eisenstein_factor(k)?;
    let mut coeffs: Vec<BigRational> = sigma_table(order, k as u32 - 1)
        .into_iter()
        .map(|s| &factor * BigRational::from_integer(s))
        .collect();
    coeffs[0] = BigRational::one();
    Ok(QExpansion::new(
        k as i64,
        LaurentSeries::from_coeffs(Rationals, 0, coeffs),
    ))
}

/// `E_k` over the integers; fails unless `-2k / B_k` is an integer.
pub fn eisenstein_integral(k: u64, order: usize) -> Result<TruncSeries<Integers>> {
    let factor = eisenstein_factor(k)?;
    if !factor.is_integer() {
        return Err(Error::InvalidParameter(format!(
            "E_{k} has non-integral coefficients"
        )));
    }
    let factor = factor.to_integer();
    let mut coeffs: Vec<BigInt> = sigma_table(order, k as u32 - 1)
        .into_iter()
        .map(|s| s * &factor)
        .collect();
    coeffs[0] = BigInt::one();
    Ok(TruncSeries::new(Integers, coeffs))
}

/// `E_k` reduced mod `ell^m`; fails with `NotAUnit` when `ell` divides the
/// reduced denominator of `-2k / B_k`.
pub fn eisenstein_residues(k: u64, order: usize, modulus: Modulus) -> Result<TruncSeries<Modulus>> {
    let factor = modulus.reduce_rational(&eisenstein_factor(k)?)?;
    let coeffs = sigma_table(order, k as u32 - 1)
        .iter()
        .enumerate()
        .map(|(n, s)| {
            if n == 0 {
                1 % modulus.value()
            } else {
                modulus.reduce_big(&(s * factor))
            }
        })
        .collect();
    Ok(TruncSeries::new(modulus, coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinReport {
    pub ell: u64,
    pub m: u32,
    /// `ell^(m-1) (ell - 1)`.
    pub weight: u64,
    /// `ord_ell(2 weight) + 1`.
    pub exponent: u32,
    pub order: usize,
    /// `E_weight = 1 (mod ell^exponent)` through `q^order`.
    pub holds: bool,
    /// `E_weight = 1 (mod ell^m)` through `q^order`.
    pub holds_mod_ell_m: bool,
}

/// Checks `E_k = 1` modulo `ell^(ord_ell(2k) + 1)` and modulo `ell^m` for
/// `k = ell^(m-1) (ell - 1)`, coefficientwise through `q^order`.
pub fn eisenstein_congruence_check(ell: u64, m: u32, order: usize) -> Result<EisensteinReport> {
    crate::certifier::delta::check_prime(ell)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let weight = ell
        .checked_pow(m - 1)
        .and_then(|p| p.checked_mul(ell - 1))
        .filter(|&w| w <= BERNOULLI_CAP)
        .ok_or(Error::CapExceeded {
            value: ell.saturating_pow(m - 1) * (ell - 1),
            cap: BERNOULLI_CAP,
        })?;
    let exponent = ell_valuation(2 * weight, ell).finite().expect("nonzero") + 1;
    let factor = eisenstein_factor(weight)?;
    let sigmas = sigma_table(order, weight as u32 - 1);
    // Every coefficient past q^0 must vanish mod ell^e, so factor * sigma is
    // checked as an ell-adic valuation.
    let divisible = |e: u32| {
        let md = BigInt::from(ell).pow(e);
        sigmas.iter().skip(1).all(|s| {
            let c = &factor * BigRational::from_integer(s.clone());
            let reduced = c.numer() % &md;
            reduced.is_zero() && (c.denom() % BigInt::from(ell)) != BigInt::zero()
        })
    };
    Ok(EisensteinReport {
        ell,
        m,
        weight,
        exponent,
        order,
        holds: divisible(exponent),
        holds_mod_ell_m: divisible(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli(6).unwrap(), q(1, 42));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert!(bernoulli(7).unwrap().is_zero());
        assert_eq!(
            bernoulli(201),
            Err(Error::CapExceeded {
                value: 201,
                cap: 200
            })
        );
    }

    #[test]
    fn bernoulli_von_staudt_clausen() {
        // B_2n + sum_{(p-1) | 2n} 1/p is an integer.
        for n in (2..=200u64).step_by(2) {
            let mut x = bernoulli(n).unwrap();
            for p in (2..=n + 1).filter(|&p| crate::coefficients::is_prime(p) && n % (p - 1) == 0) {
                x += q(1, p as i64);
            }
            assert!(x.is_integer(), "n = {n}");
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1, 3), BigInt::from(1));
        assert_eq!(sigma(2, 3), BigInt::from(9));
        assert_eq!(sigma(6, 1), BigInt::from(12));
        let table = sigma_table(50, 5);
        for n in 1..=50u64 {
            assert_eq!(table[n as usize], sigma(n, 5));
        }
    }

    #[test]
    fn eisenstein_examples() {
        let e4 = eisenstein(4, 2).unwrap();
        assert_eq!(e4.coeff(0).unwrap(), q(1, 1));
        assert_eq!(e4.coeff(1).unwrap(), q(240, 1));
        assert_eq!(e4.coeff(2).unwrap(), q(2160, 1));
        assert_eq!(eisenstein(6, 1).unwrap().coeff(1).unwrap(), q(-504, 1));
        assert_eq!(eisenstein(5, 1), Err(Error::OddWeight(5)));
        assert!(eisenstein(2, 1).is_err());
        let e4_mod5 = eisenstein_residues(4, 100, Modulus::new(5, 1).unwrap()).unwrap();
        assert_eq!(e4_mod5.coeff(0), &1);
        assert!(e4_mod5.coeffs()[1..].iter().all(|&c| c == 0));
        // -24 / B_12 = 65520 / 691 is not 691-integral.
        let md691 = Modulus::new(691, 1).unwrap();
        assert!(matches!(
            eisenstein_residues(12, 3, md691),
            Err(Error::NotAUnit { .. })
        ));
        assert!(eisenstein_integral(12, 3).is_err());
        assert_eq!(
            eisenstein_integral(14, 1).unwrap().coeff(1),
            &BigInt::from(-24)
        );
    }

    #[test]
    fn e4_squared_is_e8() {
        let e4 = eisenstein(4, 30).unwrap();
        let e8 = eisenstein(8, 30).unwrap();
        assert_eq!(e4.mul(&e4).unwrap(), e8);
    }

    #[test]
    fn congruence_examples() {
        for (ell, m, order) in [
            (5, 1, 500),
            (5, 2, 300),
            (7, 1, 500),
            (11, 1, 300),
            (13, 1, 300),
        ] {
            let r = eisenstein_congruence_check(ell, m, order).unwrap();
            assert!(r.holds && r.holds_mod_ell_m, "{ell}^{m}");
        }
        let r = eisenstein_congruence_check(5, 2, 10).unwrap();
        assert_eq!((r.weight, r.exponent), (20, 2));
        assert!(matches!(
            eisenstein_congruence_check(17, 2, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn congruence_is_sharp() {
        // E_4 is not 1 mod 25: 240 = 5 * 48.
        let e4 = eisenstein_residues(4, 3, Modulus::new(5, 2).unwrap()).unwrap();
        assert_eq!(e4.coeff(1), &(240 % 25));
    }
}
