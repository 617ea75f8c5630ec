use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::coefficients::is_prime;
use crate::error::{Error, Result};

/// `delta_{k,ell,r} = k (ell^(2r) - 1) / 24` for every level `1 <= r <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaParams {
    pub k: u64,
    pub ell: u64,
    pub m: u32,
    deltas: Vec<BigInt>,
}

impl DeltaParams {
    /// `delta_{k,ell,r}`; panics unless `1 <= r <= m`.
    pub fn delta(&self, r: u32) -> &BigInt {
        assert!(r >= 1 && r <= self.m, "level {r} outside 1..={}", self.m);
        &self.deltas[r as usize - 1]
    }

    /// `delta_{k,ell,r}` as a machine integer.
    pub fn delta_i64(&self, r: u32) -> Result<i64> {
        let d = self.delta(r);
        d.to_i64().ok_or(Error::CapExceeded {
            value: u64::MAX,
            cap: i64::MAX as u64,
        })
    }

    pub fn top(&self) -> &BigInt {
        self.delta(self.m)
    }
}

pub(crate) fn check_prime(ell: u64) -> Result<()> {
    if ell < 5 || !is_prime(ell) {
        return Err(Error::InvalidPrime(ell));
    }
    Ok(())
}

pub fn delta(k: u64, ell: u64, m: u32) -> Result<DeltaParams> {
    check_prime(ell)?;
    if k == 0 || m == 0 {
        return Err(Error::InvalidParameter("k and m must be positive".into()));
    }
    let deltas = (1..=m)
        .map(|r| {
            let num = BigInt::from(k) * (BigInt::from(ell).pow(2 * r) - 1u32);
            let (q, rem) = num.div_rem(&BigInt::from(24));
            debug_assert!(rem.is_zero(), "ell^2 = 1 (mod 24) for primes ell >= 5");
            q
        })
        .collect();
    Ok(DeltaParams { k, ell, m, deltas })
}

/// `(-delta_{k,ell,r}) mod ell^r`.
pub fn target_residue(params: &DeltaParams, r: u32) -> u64 {
    let modulus = BigInt::from(params.ell).pow(r);
    (-params.delta(r))
        .mod_floor(&modulus)
        .to_u64()
        .expect("residue below a machine-word modulus")
}

/// Numerator of the finite-check bound `(k ell^r + 2 ell + 2) / 24`.
pub fn bound_numerator(k: u64, ell: u64, r: u32) -> BigInt {
    BigInt::from(k) * BigInt::from(ell).pow(r) + 2 * BigInt::from(ell) + 2
}

/// Number of integers `n >= 0` with `n < (k ell^r + 2 ell + 2) / 24`.
pub fn finite_bound(k: u64, ell: u64, r: u32) -> u64 {
    // ceil(num / 24): the strict inequality excludes an exact integer bound.
    let num = bound_numerator(k, ell, r);
    Integer::div_ceil(&num, &BigInt::from(24))
        .to_u64()
        .expect("bound fits a machine word")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn delta_examples() {
        assert_eq!(delta(1, 5, 1).unwrap().top(), &BigInt::from(1));
        assert_eq!(delta(1, 5, 2).unwrap().top(), &BigInt::from(26));
        assert_eq!(delta(95, 11, 2).unwrap().top(), &BigInt::from(57950));
        assert_eq!(delta(1, 3, 1), Err(Error::InvalidPrime(3)));
        assert_eq!(delta(1, 25, 1), Err(Error::InvalidPrime(25)));
        assert!(delta(0, 5, 1).is_err());
    }

    #[test]
    fn target_examples() {
        assert_eq!(target_residue(&delta(1, 5, 1).unwrap(), 1), 4);
        assert_eq!(target_residue(&delta(1, 5, 2).unwrap(), 2), 24);
        assert_eq!(target_residue(&delta(10, 13, 1).unwrap(), 1), 8);
        assert_eq!(target_residue(&delta(8, 11, 1).unwrap(), 1), 4);
        assert_eq!(target_residue(&delta(95, 11, 2).unwrap(), 2), 9);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(finite_bound(1, 5, 1), 1);
        assert_eq!(finite_bound(1, 11, 1), 2);
        assert_eq!(finite_bound(95, 11, 2), 480);
    }

    #[test]
    fn bound_is_strict_and_monotone() {
        for ell in [5u64, 7, 11, 13, 17, 19, 23] {
            for r in 1..=3 {
                let mut prev = 0;
                for k in 1..=200 {
                    let b = finite_bound(k, ell, r);
                    assert!(b >= prev);
                    prev = b;
                    assert!(b >= finite_bound(k, ell, r.saturating_sub(1).max(1)));
                    // b - 1 < X <= b, compared as rationals.
                    let x = BigRational::new(bound_numerator(k, ell, r), BigInt::from(24));
                    assert!(BigRational::from_integer(BigInt::from(b - 1)) < x);
                    assert!(BigRational::from_integer(BigInt::from(b)) >= x);
                }
            }
        }
        // (12 * 5 + 12) / 24 = 3 exactly, so only n in {0, 1, 2}.
        assert_eq!(finite_bound(12, 5, 1), 3);
    }

    #[test]
    fn integrality_and_level_congruence() {
        let primes: Vec<u64> = (5..=97).filter(|&p| is_prime(p)).collect();
        for &ell in &primes {
            for k in (1..=200).step_by(7) {
                let params = delta(k, ell, 3).unwrap();
                for r in 1..=3 {
                    let modulus = BigInt::from(ell).pow(r);
                    let diff = params.top() - params.delta(r);
                    assert!(diff.mod_floor(&modulus).is_zero());
                    let num = BigInt::from(k) * (BigInt::from(ell).pow(2 * r) - 1u32);
                    assert!(num.mod_floor(&BigInt::from(24)).is_zero());
                }
            }
        }
    }
}
