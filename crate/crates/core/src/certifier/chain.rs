//! Finite-check certification of congruence chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::{
    Certificate, ChainOutcome, CheckedValue, CongruenceClaim, HypothesisRecord, LevelEvidence,
    Method, Refutation,
};
use super::delta::{delta, finite_bound, target_residue, DeltaParams};
use crate::coefficients::Modulus;
use crate::error::{Error, Result};
use crate::multipartition::pk_series;

/// Arguments `ell^r n - delta_r` for `0 <= n < bound` that are nonnegative,
/// paired with their index.
fn nonnegative_arguments(ell: u64, r: u32, delta_r: &BigInt, bound: u64) -> Vec<(u64, u64)> {
    let step = BigInt::from(ell).pow(r);
    // First n with ell^r n >= delta_r.
    let first = Integer::div_ceil(delta_r, &step)
        .to_u64()
        .unwrap_or(u64::MAX);
    (first..bound)
        .map(|n| {
            let arg = &step * n - delta_r;
            (
                n,
                arg.to_u64()
                    .expect("finite-check argument fits a machine word"),
            )
        })
        .collect()
}

/// Evaluates the level-`r` finite condition for `p_k`.
pub fn level_evidence(params: &DeltaParams, r: u32) -> Result<LevelEvidence> {
    let (k, ell) = (params.k, params.ell);
    let modulus = Modulus::new(ell, r)?;
    let bound = finite_bound(k, ell, r);
    let args = nonnegative_arguments(ell, r, params.delta(r), bound);
    let checked: Vec<CheckedValue> = match args.last() {
        None => Vec::new(),
        Some(&(_, max_arg)) => {
            let series = pk_series(k, modulus, max_arg as usize);
            args.iter()
                .map(|&(n, argument)| CheckedValue {
                    n,
                    argument,
                    value: series.at(argument as i64),
                })
                .collect()
        }
    };
    let digest = LevelEvidence::digest_of(&checked);
    Ok(LevelEvidence {
        r,
        modulus: modulus.value(),
        target: target_residue(params, r),
        delta: params.delta(r).to_string(),
        bound,
        checked,
        digest,
    })
}

fn first_failure(claim: CongruenceClaim, level: &LevelEvidence) -> Option<Refutation> {
    level
        .checked
        .iter()
        .find(|c| c.value != 0)
        .map(|c| Refutation {
            claim,
            r: level.r,
            n: c.n,
            argument: c.argument,
            value: c.value,
            note: Refutation::NOTE.to_string(),
        })
}

fn check_hypothesis(k: u64, ell: u64, m: u32) -> Result<HypothesisRecord> {
    let record = HypothesisRecord::evaluate(k, ell, m);
    if !record.holds {
        return Err(Error::HypothesisViolated {
            k,
            ell,
            exponent: m - 1,
        });
    }
    Ok(record)
}

fn prepare(k: u64, ell: u64, m: u32) -> Result<(DeltaParams, CongruenceClaim, HypothesisRecord)> {
    let params = delta(k, ell, m)?;
    Modulus::new(ell, m)?;
    let hypothesis = check_hypothesis(k, ell, m)?;
    let claim = CongruenceClaim::new(ell, m, k, target_residue(&params, m))?;
    Ok((params, claim, hypothesis))
}

/// Checks the finite condition at every level `1..=m`.
///
/// Success certifies congruences at `(ell^r, k, -delta_{k,ell,r})` for every
/// `r <= m`. Failure reports the first nonzero value, level by level.
pub fn certify_chain(k: u64, ell: u64, m: u32) -> Result<ChainOutcome> {
    let (params, claim, hypothesis) = prepare(k, ell, m)?;
    let mut levels = Vec::with_capacity(m as usize);
    for r in 1..=m {
        let level = level_evidence(&params, r)?;
        if let Some(refutation) = first_failure(claim, &level) {
            return Ok(ChainOutcome::Refuted(refutation));
        }
        levels.push(level);
    }
    Ok(ChainOutcome::Certified(Certificate {
        claim,
        method: Method::Chain,
        hypothesis,
        levels,
    }))
}

/// Checks only the level-`m` condition; lower levels must come from `priors`.
///
/// A prior covers level `r < m` if it is a certificate for the same `k` and
/// `ell` whose level-`r` evidence is intact, all zero, and targets
/// `-delta_{k,ell,m} mod ell^r`.
pub fn certify_main(k: u64, ell: u64, m: u32, priors: &[Certificate]) -> Result<ChainOutcome> {
    let (params, claim, hypothesis) = prepare(k, ell, m)?;
    let mut levels = Vec::with_capacity(m as usize);
    for r in 1..m {
        let wanted = (-params.top()).mod_floor(&BigInt::from(ell).pow(r));
        let found = priors
            .iter()
            .filter(|p| p.claim.k == k && p.claim.ell == ell)
            .filter_map(|p| p.level(r))
            .find(|l| l.all_zero() && l.digest_matches() && BigInt::from(l.target) == wanted);
        match found {
            Some(l) => levels.push(l.clone()),
            None => return Err(Error::MissingPriors { level: r }),
        }
    }
    let level = level_evidence(&params, m)?;
    if let Some(refutation) = first_failure(claim, &level) {
        return Ok(ChainOutcome::Refuted(refutation));
    }
    levels.push(level);
    Ok(ChainOutcome::Certified(Certificate {
        claim,
        method: Method::TopLevel,
        hypothesis,
        levels,
    }))
}

/// Recomputes every level of a certificate and compares it with the record.
pub fn recheck(cert: &Certificate) -> Result<bool> {
    let claim = cert.claim;
    let params = delta(claim.k, claim.ell, claim.m)?;
    if target_residue(&params, claim.m) != claim.a {
        return Ok(false);
    }
    if HypothesisRecord::evaluate(claim.k, claim.ell, claim.m) != cert.hypothesis {
        return Ok(false);
    }
    for level in &cert.levels {
        if level.r == 0 || level.r > claim.m || !level.digest_matches() || !level.all_zero() {
            return Ok(false);
        }
        if &level_evidence(&params, level.r)? != level {
            return Ok(false);
        }
    }
    Ok(cert.is_complete_chain())
}

/// Outcome of comparing the `delta_r`- and `delta_m`-indexed conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    /// `(delta_m - delta_r) / ell^r`.
    pub shift: u64,
    /// `p_k(ell^r n - delta_r) = 0 (mod ell^r)` for `0 <= n <= N`.
    pub level_condition: bool,
    /// `p_k(ell^r n - delta_m) = 0 (mod ell^r)` for `0 <= n <= N + shift`.
    pub top_condition: bool,
}

impl ShiftReport {
    pub fn equivalent(&self) -> bool {
        self.level_condition == self.top_condition
    }
}

/// Evaluates both forms of the level-`r` condition on the same series.
pub fn residue_shift_equivalence(
    k: u64,
    ell: u64,
    r: u32,
    m: u32,
    n_max: u64,
) -> Result<ShiftReport> {
    if r == 0 || r > m {
        return Err(Error::InvalidParameter(format!(
            "level {r} outside 1..={m}"
        )));
    }
    let params = delta(k, ell, m)?;
    let modulus = Modulus::new(ell, r)?;
    let step = BigInt::from(ell).pow(r);
    let (shift, rem) = (params.top() - params.delta(r)).div_rem(&step);
    debug_assert!(rem.is_zero());
    let shift = shift
        .to_u64()
        .ok_or(Error::InvalidParameter("shift too large".into()))?;
    let top_arg = &step * n_max - params.delta(r);
    let order = if top_arg.is_negative() {
        0
    } else {
        top_arg.to_usize().expect("small order")
    };
    let series = pk_series(k, modulus, order);
    let holds = |delta: &BigInt, count: u64| {
        (0..=count).all(|n| {
            let arg = &step * n - delta;
            // Negative arguments are zero by convention.
            arg.is_negative() || series.at(arg.to_i64().expect("small argument")) == 0
        })
    };
    Ok(ShiftReport {
        shift,
        level_condition: holds(params.delta(r), n_max),
        top_condition: holds(params.top(), n_max + shift),
    })
}
