//! Brute-force validation of a claim over a finite range of `n`.

use serde::{Deserialize, Serialize};

use super::certificate::CongruenceClaim;
use crate::multipartition::{pk_exact_by_divisor_sums, pk_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValuePath {
    /// Residue-domain product and inversion.
    Residue,
    /// Exact divisor-sum recurrence, then reduction.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub argument: u64,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub claim: CongruenceClaim,
    pub n_max: u64,
    pub path: ValuePath,
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl EmpiricalReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn report(
    claim: CongruenceClaim,
    n_max: u64,
    path: ValuePath,
    value: impl Fn(u64) -> u64,
) -> EmpiricalReport {
    let md = claim.modulus().value();
    let counterexample = (0..=n_max).find_map(|n| {
        let argument = md * n + claim.a;
        let v = value(argument);
        (v != 0).then_some(Counterexample {
            n,
            argument,
            value: v,
        })
    });
    EmpiricalReport {
        claim,
        n_max,
        path,
        checked: n_max + 1,
        counterexample,
    }
}

/// Checks `p_k(ell^m n + a) = 0 (mod ell^m)` for `0 <= n <= n_max` on the
/// residue path.
pub fn verify_empirical(claim: &CongruenceClaim, n_max: u64) -> EmpiricalReport {
    let md = claim.modulus();
    let top = md.value() * n_max + claim.a;
    let series = pk_series(claim.k, md, top as usize);
    report(*claim, n_max, ValuePath::Residue, |arg| {
        series.at(arg as i64)
    })
}

/// Same check on exact values from the divisor-sum recurrence.
pub fn verify_empirical_exact(claim: &CongruenceClaim, n_max: u64) -> EmpiricalReport {
    let md = claim.modulus();
    let top = md.value() * n_max + claim.a;
    let exact = pk_exact_by_divisor_sums(claim.k, top as usize);
    report(*claim, n_max, ValuePath::Exact, |arg| {
        md.reduce_big(&exact.at(arg as i64))
    })
}
