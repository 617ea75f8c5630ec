//! Shifting certified chains to `k + s ell^m` and the exact identity behind it.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, CongruenceClaim, Method};
use crate::coefficients::Integers;
use crate::error::{Error, Result};
use crate::multipartition::{pk_exact_by_divisor_sums, pk_series};
use crate::series::{euler_phi, ladic_decompose_series, TruncSeries};

/// A claim that follows from a certificate without being re-checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedClaim {
    pub claim: CongruenceClaim,
    pub base: CongruenceClaim,
    pub method: Method,
}

fn shifted_k(k: u64, s: i64, step: u64) -> Result<u64> {
    let shifted = i128::from(k) + i128::from(s) * i128::from(step);
    if shifted < 1 || shifted > i128::from(u64::MAX) {
        return Err(Error::InvalidShift { k, s, step });
    }
    Ok(shifted as u64)
}

/// Claims at `(ell^r, k + s ell^m, a mod ell^r)` for every `r <= m`.
///
/// The certificate must carry evidence for all levels `1..=m`.
pub fn lift(cert: &Certificate, s: i64) -> Result<Vec<DerivedClaim>> {
    let base = cert.claim;
    if let Some(level) = (1..=base.m).find(|&r| cert.level(r).is_none()) {
        return Err(Error::IncompleteChain { level });
    }
    let k = shifted_k(base.k, s, base.modulus().value())?;
    (1..=base.m)
        .map(|r| {
            Ok(DerivedClaim {
                claim: CongruenceClaim::new(base.ell, r, k, base.a % base.ell.pow(r))?,
                base,
                method: Method::Lift {
                    base_k: base.k,
                    shift: s,
                },
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftIdentityReport {
    pub rows: u64,
    /// First `n` where the two sides differ.
    pub first_mismatch: Option<u64>,
}

impl LiftIdentityReport {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Checks, for `0 <= n <= n_max` and `M = level`,
///
/// `p_{k+s ell^M}(n ell^M + a)
///   = sum_{i=0}^{M} ell^i sum_{j=0}^{n ell^i + b_i} p_k((ell^i n - j) ell^(M-i) + a) c_i(j)`
///
/// where `b_i = floor(a / ell^(M-i))` and `c_i` are the components of the
/// `ell`-adic decomposition of `(P^s)^(ell^M)`, `P = prod (1 - q^n)^(-1)`.
/// The left side comes from the divisor-sum recurrence, the right side from
/// the product route, all in exact integers.
pub fn lift_identity_check(
    k: u64,
    ell: u64,
    level: u32,
    s: i64,
    a: u64,
    n_max: u64,
) -> Result<LiftIdentityReport> {
    super::delta::check_prime(ell)?;
    if level == 0 {
        return Err(Error::InvalidParameter("level must be positive".into()));
    }
    let step = ell.pow(level);
    let k_lifted = shifted_k(k, s, step)?;
    let top = (n_max * step + a) as usize;

    let base: TruncSeries<Integers> = match s {
        0 => TruncSeries::one(Integers, top),
        s if s > 0 => pk_series(s as u64, Integers, top).series().clone(),
        s => euler_phi(Integers, top).pow(s.unsigned_abs(), top)?,
    };
    let decomposition = ladic_decompose_series(&base.pow(step, top)?, ell, level)?;
    let pk = pk_series(k, Integers, top);
    let lhs = pk_exact_by_divisor_sums(k_lifted, top);

    let ell_i = ell as i64;
    let mut first_mismatch = None;
    for n in 0..=n_max as i64 {
        let mut rhs = BigInt::zero();
        for i in 0..=level {
            let inner_step = ell_i.pow(level - i);
            let b_i = a as i64 / inner_step;
            let scale = ell_i.pow(i);
            let mut inner = BigInt::zero();
            for j in 0..=n * scale + b_i {
                let c = decomposition.c(i as usize, j);
                if !c.is_zero() {
                    inner += pk.at((scale * n - j) * inner_step + a as i64) * c;
                }
            }
            rhs += inner * BigInt::from(ell).pow(i);
        }
        if rhs != lhs.at(n * step as i64 + a as i64) {
            first_mismatch = Some(n as u64);
            break;
        }
    }
    Ok(LiftIdentityReport {
        rows: n_max + 1,
        first_mismatch,
    })
}
