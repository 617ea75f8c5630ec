//! Multipartition counts `p_k(n)`: the coefficients of `prod (1 - q^n)^(-k)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};

use crate::coefficients::{Integers, Ring};
use crate::error::{Error, Result};
use crate::series::{euler_phi, TruncSeries};

/// Largest `n` and `k` the enumeration oracle accepts.
pub const ENUMERATION_MAX_N: u64 = 30;
pub const ENUMERATION_MAX_K: u64 = 10;

/// `p_k(0..=N)` over one coefficient domain.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionSeries<R: Ring> {
    k: u64,
    series: TruncSeries<R>,
}

impl<R: Ring> PartitionSeries<R> {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncSeries<R> {
        &self.series
    }

    pub fn values(&self) -> &[R::Elem] {
        self.series.coeffs()
    }

    /// `p_k(n)`, zero for negative `n`. Panics past the computed order.
    pub fn at(&self, n: i64) -> R::Elem {
        if n < 0 {
            self.series.ring().zero()
        } else {
            self.series.coeff(n as usize).clone()
        }
    }

    /// Like [`PartitionSeries::at`] but `None` past the computed order.
    pub fn get(&self, n: i64) -> Option<R::Elem> {
        if n < 0 {
            Some(self.series.ring().zero())
        } else {
            self.series.coeffs().get(n as usize).cloned()
        }
    }
}

/// `p_k(0..=order)`: `phi^k` (sparse base, binary powering), then one Newton
/// inversion.
pub fn pk_series<R: Ring>(k: u64, ring: R, order: usize) -> PartitionSeries<R> {
    assert!(k >= 1, "component count must be positive");
    let phi_k = euler_phi(ring, order).pow(k, order).expect("orders match");
    let series = phi_k.inverse(order).expect("phi^k has constant term 1");
    PartitionSeries { k, series }
}

/// Same values by the other order of operations: invert `phi`, then power.
pub fn pk_series_inverse_first<R: Ring>(k: u64, ring: R, order: usize) -> PartitionSeries<R> {
    assert!(k >= 1, "component count must be positive");
    let p1 = euler_phi(ring, order)
        .inverse_naive(order)
        .expect("phi has constant term 1");
    let series = p1.pow(k, order).expect("orders match");
    PartitionSeries { k, series }
}

/// Exact `p_k(0..=order)` from `n p_k(n) = k sum_{j=1}^n sigma(j) p_k(n-j)`.
///
/// Division by `n` is exact over the integers, so this route is only
/// available in the exact domain. It shares no code with the
/// product/inversion route and serves as its independent check.
pub fn pk_exact_by_divisor_sums(k: u64, order: usize) -> PartitionSeries<Integers> {
    assert!(k >= 1, "component count must be positive");
    let sigma: Vec<u32> = divisor_sums(order)
        .into_iter()
        .map(|s| u32::try_from(s).expect("divisor sum fits 32 bits"))
        .collect();
    // Values are kept as 32-bit limbs so the inner loop is a widening
    // multiply-add on u64 lanes. Lanes are folded into u128 before the summed
    // multipliers could overflow them.
    let mut values: Vec<Vec<u32>> = Vec::with_capacity(order + 1);
    values.push(vec![1]);
    let mut lanes: Vec<u64> = Vec::new();
    let mut wide: Vec<u128> = Vec::new();
    for n in 1..=order {
        // p_k is nondecreasing, so the previous value is the widest.
        let width = values[n - 1].len();
        lanes.clear();
        lanes.resize(width, 0);
        wide.clear();
        wide.resize(width, 0);
        let mut budget = 0u64;
        for j in 1..=n {
            let s = sigma[j];
            if budget + u64::from(s) > u64::from(u32::MAX) {
                fold(&mut wide, &mut lanes);
                budget = 0;
            }
            budget += u64::from(s);
            for (lane, &limb) in lanes.iter_mut().zip(&values[n - j]) {
                *lane += u64::from(limb) * u64::from(s);
            }
        }
        fold(&mut wide, &mut lanes);
        let mut limbs = normalize(&wide);
        mul_small(&mut limbs, k);
        let rem = div_small(&mut limbs, n as u64);
        debug_assert_eq!(rem, 0, "n p_k(n) is divisible by n");
        values.push(limbs);
    }
    let coeffs = values
        .into_iter()
        .map(|l| BigInt::from(BigUint::new(l)))
        .collect();
    PartitionSeries {
        k,
        series: TruncSeries::new(Integers, coeffs),
    }
}

fn fold(wide: &mut [u128], lanes: &mut [u64]) {
    for (w, lane) in wide.iter_mut().zip(lanes.iter_mut()) {
        *w += u128::from(*lane);
        *lane = 0;
    }
}

/// Carries u128 lanes of 32-bit limb weight into trimmed little-endian limbs.
fn normalize(lanes: &[u128]) -> Vec<u32> {
    let mut out = Vec::with_capacity(lanes.len() + 4);
    let mut carry = 0u128;
    for &lane in lanes {
        let (sum, overflow) = lane.overflowing_add(carry);
        out.push(sum as u32);
        carry = (sum >> 32) + (u128::from(overflow) << 96);
    }
    while carry != 0 {
        out.push(carry as u32);
        carry >>= 32;
    }
    trim(&mut out);
    out
}

fn mul_small(limbs: &mut Vec<u32>, x: u64) {
    let mut carry = 0u128;
    for limb in limbs.iter_mut() {
        let t = u128::from(*limb) * u128::from(x) + carry;
        *limb = t as u32;
        carry = t >> 32;
    }
    while carry != 0 {
        limbs.push(carry as u32);
        carry >>= 32;
    }
}

fn div_small(limbs: &mut Vec<u32>, d: u64) -> u64 {
    let mut rem = 0u128;
    for limb in limbs.iter_mut().rev() {
        let cur = (rem << 32) | u128::from(*limb);
        *limb = (cur / u128::from(d)) as u32;
        rem = cur % u128::from(d);
    }
    trim(limbs);
    rem as u64
}

fn trim(limbs: &mut Vec<u32>) {
    while limbs.last() == Some(&0) {
        limbs.pop();
    }
}

/// `sigma_1(j)` for `0 <= j <= n` by sieving.
fn divisor_sums(n: usize) -> Vec<u64> {
    let mut sigma = vec![0u64; n + 1];
    for d in 1..=n {
        for multiple in (d..=n).step_by(d) {
            sigma[multiple] += d as u64;
        }
    }
    sigma
}

/// Single value `p_k(n)`; exactly zero for `n < 0`.
pub fn pk_at<R: Ring>(k: u64, n: i64, ring: R) -> R::Elem {
    if n < 0 {
        return ring.zero();
    }
    pk_series(k, ring, n as usize).at(n)
}

/// All partitions of `n` as nonincreasing part lists.
pub fn partitions_of(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            current.push(part);
            go(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p_k(n)` by enumeration: split `n` over the `k` ordered components, then
/// count the explicitly listed partitions of each component size.
pub fn pk_enumerate(k: u64, n: u64) -> Result<u128> {
    if n > ENUMERATION_MAX_N || k > ENUMERATION_MAX_K || k == 0 {
        return Err(Error::OracleScaleExceeded { k, n });
    }
    let counts: Vec<u128> = (0..=n).map(|s| partitions_of(s).len() as u128).collect();
    fn tuples(k: u64, n: u64, counts: &[u128], memo: &mut HashMap<(u64, u64), u128>) -> u128 {
        if k == 0 {
            return u128::from(n == 0);
        }
        if let Some(&v) = memo.get(&(k, n)) {
            return v;
        }
        // First component takes `s`, the remaining k - 1 components share n - s.
        let v = (0..=n)
            .map(|s| counts[s as usize] * tuples(k - 1, n - s, counts, memo))
            .sum();
        memo.insert((k, n), v);
        v
    }
    Ok(tuples(k, n, &counts, &mut HashMap::new()))
}
