//! `tau_{k,m}(n)`, the coefficients of `Delta^(delta_{k,ell,m})`, and their
//! convolution identities with `p_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::qexp::{delta_power, TauSeries};
use crate::certifier::delta::delta;
use crate::coefficients::Integers;
use crate::error::{Error, Result};
use crate::multipartition::{pk_series, PartitionSeries};
use crate::series::{euler_phi, ladic_decompose_series, LadicDecomposition, TruncSeries};

/// `tau_{k,m}(0..=order)` for the prime `ell`.
pub fn tau_series(k: u64, ell: u64, m: u32, order: usize) -> Result<TauSeries> {
    let d = delta(k, ell, m)?.delta_i64(m)?;
    delta_power(d as u64, order)
}

/// The same coefficients as `q^delta (sum p_k(n) q^n) prod (1 - q^n)^(k ell^(2m))`.
pub fn tau_by_convolution(k: u64, ell: u64, m: u32, order: usize) -> Result<TauSeries> {
    let d = delta(k, ell, m)?.delta_i64(m)? as usize;
    if d > order {
        return Err(Error::InsufficientPrecision {
            needed: d as i64,
            available: order as i64,
        });
    }
    let body_order = order - d;
    let exponent = k * ell.pow(2 * m);
    let phi = euler_phi(Integers, body_order).pow(exponent, body_order)?;
    let product = pk_series(k, Integers, body_order)
        .series()
        .mul(&phi, body_order)?;
    let mut coeffs = vec![BigInt::zero(); d];
    coeffs.extend(product.into_coeffs());
    Ok(TauSeries::from_coeffs(d as u64, coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauReport {
    pub k: u64,
    pub ell: u64,
    pub m: u32,
    pub r: u32,
    pub order: usize,
    /// Rows `n` with `n ell^r <= order` compared in each identity.
    pub rows: usize,
    /// `tau(n ell^r)` rebuilt from `p_k` and the decomposition of `phi^(k ell^(2m))`.
    pub tau_identity: bool,
    /// `p_k(n ell^r - delta)` rebuilt from `tau` and the decomposition of
    /// `prod (1 - q^n)^(-k ell^(2m))`.
    pub pk_identity: bool,
    /// For each level `s = 1..=min(r, m)`: `p_k(ell^s n - delta) = 0 (mod ell^s)`
    /// for every `ell^s n <= order`.
    pub pk_prefix: Vec<bool>,
    /// For each level `s`: `tau(ell^s n) = 0 (mod ell^s)` for every `ell^s n <= order`.
    pub tau_prefix: Vec<bool>,
}

impl TauReport {
    /// The prefix conditions hold for all levels on both sides, or fail on both.
    pub fn transfer_consistent(&self) -> bool {
        self.pk_prefix.iter().all(|&b| b) == self.tau_prefix.iter().all(|&b| b)
    }

    pub fn identities_hold(&self) -> bool {
        self.tau_identity && self.pk_identity
    }
}

/// `sum_{i=0}^{r} ell^i sum_{j=0}^{n ell^i} value((n ell^i - j) ell^(r-i)) c_i(j)`.
fn convolve(
    d: &LadicDecomposition,
    ell: u64,
    r: u32,
    n: i64,
    value: impl Fn(i64) -> BigInt,
) -> BigInt {
    let ell_i = ell as i64;
    let mut total = BigInt::zero();
    for i in 0..=r {
        let scale = ell_i.pow(i);
        let step = ell_i.pow(r - i);
        let mut inner = BigInt::zero();
        for j in 0..=n * scale {
            let c = d.c(i as usize, j);
            if !c.is_zero() {
                inner += value((n * scale - j) * step) * c;
            }
        }
        total += inner * BigInt::from(ell).pow(i);
    }
    total
}

/// Exact checks of both convolution identities at level `r` and of the
/// prefix form of the `p_k` / `tau` divisibility transfer, through `q^order`.
pub fn tau_congruence_check(k: u64, ell: u64, m: u32, r: u32, order: usize) -> Result<TauReport> {
    if r == 0 || r > 2 * m {
        return Err(Error::InvalidParameter(format!(
            "level {r} outside 1..={}",
            2 * m
        )));
    }
    let params = delta(k, ell, m)?;
    let d = params.delta_i64(m)?;
    let tau = tau_series(k, ell, m, order)?;
    let pk: PartitionSeries<Integers> = pk_series(k, Integers, order);
    let exponent = k * ell.pow(2 * m);
    let phi_power = euler_phi(Integers, order).pow(exponent, order)?;
    let inverse_power: TruncSeries<Integers> =
        pk_series(exponent, Integers, order).series().clone();
    let c = ladic_decompose_series(&phi_power, ell, r)?;
    let b = ladic_decompose_series(&inverse_power, ell, r)?;

    let step = (ell as i64).pow(r);
    let rows = (order as i64 / step) as usize + 1;
    let pk_shifted = |x: i64| pk.at(x - d);
    let tau_identity =
        (0..rows as i64).all(|n| tau.at(n * step) == convolve(&c, ell, r, n, pk_shifted));
    let pk_identity =
        (0..rows as i64).all(|n| pk.at(n * step - d) == convolve(&b, ell, r, n, |x| tau.at(x)));

    let mut pk_prefix = Vec::new();
    let mut tau_prefix = Vec::new();
    for s in 1..=r.min(m) {
        let level_step = (ell as i64).pow(s);
        let md = BigInt::from(ell).pow(s);
        let count = order as i64 / level_step;
        pk_prefix.push((0..=count).all(|n| pk.at(n * level_step - d).mod_floor(&md).is_zero()));
        tau_prefix.push((0..=count).all(|n| tau.at(n * level_step).mod_floor(&md).is_zero()));
    }
    Ok(TauReport {
        k,
        ell,
        m,
        r,
        order,
        rows,
        tau_identity,
        pk_identity,
        pk_prefix,
        tau_prefix,
    })
}
