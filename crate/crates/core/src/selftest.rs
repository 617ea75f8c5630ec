//! Named invariant suites, runnable from the CLI and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::Integers;
use crate::error::{Error, Result};
use crate::modforms::{
    basis_mk, cko_constant_term, eisenstein_congruence_check, expansion_check, induction_rows,
    scaffold, tau_congruence_check, tau_series, weight_class,
};
use crate::par::{map_slice, Execution};
use crate::series::{ladic_decompose_series, satisfies_power_divisibility, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ladic,
    Eisenstein,
    Cko,
    Tau,
    Scaffold,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Ladic,
        Suite::Eisenstein,
        Suite::Cko,
        Suite::Tau,
        Suite::Scaffold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ladic => "ladic",
            Suite::Eisenstein => "eisenstein",
            Suite::Cko => "cko",
            Suite::Tau => "tau",
            Suite::Scaffold => "scaffold",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn from_result(suite: Suite, name: String, outcome: Result<(bool, String)>) -> CheckResult {
    match outcome {
        Ok((passed, detail)) => CheckResult::new(suite, name, passed, detail),
        Err(e) => CheckResult::new(suite, name, false, format!("error: {e}")),
    }
}

pub fn run_suite(suite: Suite, exec: Execution) -> Vec<CheckResult> {
    match suite {
        Suite::Ladic => ladic_suite(0x5eed, 100),
        Suite::Eisenstein => eisenstein_suite(),
        Suite::Cko => cko_suite(exec),
        Suite::Tau => tau_suite(),
        Suite::Scaffold => scaffold_suite(),
    }
}

/// Outcome of the power-decomposition fuzz for one `(ell, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadicFuzz {
    pub ell: u64,
    pub m: u32,
    pub cases: usize,
    pub failures: usize,
}

/// `cases` random integer series (coefficients in `[-10, 10]`, 60 terms),
/// raised to `ell^m`: every coefficient must satisfy the divisibility law and
/// the decomposition must recompose exactly.
pub fn ladic_fuzz(seed: u64, cases: usize) -> Vec<LadicFuzz> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let series: Vec<TruncSeries<Integers>> = (0..cases)
        .map(|_| {
            let coeffs: Vec<i64> = (0..60).map(|_| rng.gen_range(-10..=10)).collect();
            TruncSeries::from_i64s(Integers, &coeffs, 59)
        })
        .collect();
    let mut out = Vec::new();
    for (ell, m) in [(5u64, 1u32), (5, 2), (7, 1), (7, 2)] {
        let failures = series
            .iter()
            .filter(|f| {
                let g = f.pow(ell.pow(m), 59).expect("same order");
                let recomposed = ladic_decompose_series(&g, ell, m).map(|d| d.recompose());
                let exact = matches!(&recomposed, Ok(r) if r.body().coeffs() == g.coeffs() && r.lead() == 0);
                !(satisfies_power_divisibility(&g, ell, m) && exact)
            })
            .count();
        out.push(LadicFuzz {
            ell,
            m,
            cases,
            failures,
        });
    }
    out
}

fn ladic_suite(seed: u64, cases: usize) -> Vec<CheckResult> {
    ladic_fuzz(seed, cases)
        .into_iter()
        .map(|r| {
            CheckResult::new(
                Suite::Ladic,
                format!(
                    "power divisibility and recomposition, ell^m = {}^{}",
                    r.ell, r.m
                ),
                r.failures == 0,
                format!("{} cases, {} failures", r.cases, r.failures),
            )
        })
        .collect()
}

fn eisenstein_suite() -> Vec<CheckResult> {
    [(5u64, 1u32), (7, 1), (11, 1), (13, 1), (5, 2)]
        .into_iter()
        .map(|(ell, m)| {
            let outcome = eisenstein_congruence_check(ell, m, 300).map(|r| {
                (
                    r.holds && r.holds_mod_ell_m,
                    format!(
                        "E_{} = 1 mod {}^{} through q^{}",
                        r.weight, ell, r.exponent, r.order
                    ),
                )
            });
            from_result(
                Suite::Eisenstein,
                format!("E_(ell^(m-1)(ell-1)) for {ell}^{m}"),
                outcome,
            )
        })
        .collect()
}

/// `(n, k)` pairs of the constant-term sweep: `n <= 2`, even `4 <= k <= 24`.
pub fn cko_cases() -> Vec<(u64, i64)> {
    (0..=2u64)
        .flat_map(|n| (4..=24i64).step_by(2).map(move |k| (n, k)))
        .collect()
}

/// Constant terms for every basis pair of one `(n, k)`; returns the count
/// of pairs and the nonzero values found.
pub fn cko_case(n: u64, k: i64) -> Result<(usize, Vec<String>)> {
    let order = (n + crate::modforms::dim_mk(k)) as usize;
    let fs = basis_mk(12 * n as i64 + 14, order)?;
    let gs = basis_mk(k, order)?;
    let mut pairs = 0;
    let mut nonzero = Vec::new();
    for f in &fs {
        for g in &gs {
            pairs += 1;
            let value = cko_constant_term(n, k, f, g)?;
            if !value.is_zero() {
                nonzero.push(value.to_string());
            }
        }
    }
    Ok((pairs, nonzero))
}

fn cko_suite(exec: Execution) -> Vec<CheckResult> {
    let cases = cko_cases();
    let results = map_slice(exec, &cases, |&(n, k)| cko_case(n, k));
    cases
        .iter()
        .zip(results)
        .map(|(&(n, k), outcome)| {
            let outcome = outcome.map(|(pairs, nonzero)| {
                (
                    nonzero.is_empty(),
                    format!("{pairs} pairs, nonzero: {nonzero:?}"),
                )
            });
            from_result(
                Suite::Cko,
                format!("constant term n = {n}, k = {k}"),
                outcome,
            )
        })
        .collect()
}

fn tau_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let spot = tau_series(1, 5, 1, 250).map(|t| {
        let divisible = (0..=50).all(|n| (t.at(5 * n) % BigInt::from(5)).is_zero());
        (
            divisible && t.at(5) == BigInt::from(4830),
            format!("tau(5) = {}", t.at(5)),
        )
    });
    out.push(from_result(
        Suite::Tau,
        "tau(5n) = 0 mod 5 for 5n <= 250".into(),
        spot,
    ));
    for (k, ell, m, r) in [
        (1u64, 5u64, 1u32, 1u32),
        (1, 5, 2, 1),
        (1, 5, 2, 2),
        (2, 7, 1, 1),
    ] {
        let outcome = tau_congruence_check(k, ell, m, r, 100).map(|rep| {
            (
                rep.identities_hold() && rep.transfer_consistent(),
                format!(
                    "{} rows, p_k prefix {:?}, tau prefix {:?}",
                    rep.rows, rep.pk_prefix, rep.tau_prefix
                ),
            )
        });
        out.push(from_result(
            Suite::Tau,
            format!("identities k={k} ell={ell} m={m} r={r}"),
            outcome,
        ));
    }
    out
}

/// Parameter sets of the scaffold sweep: `k = 1`, `ell` in `{5, 7, 11}`,
/// `m` in `{1, 2}` where `1 = -4 (mod ell^(m-1))`.
pub fn scaffold_params() -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for ell in [5u64, 7, 11] {
        for m in 1..=2u32 {
            if (1 + 4) % ell.pow(m - 1) == 0 {
                out.push((1, ell, m));
            }
        }
    }
    out
}

/// Relations of the first `count` admissible scaffolds; returns the number
/// of failing indices.
pub fn scaffold_sweep(k: u64, ell: u64, m: u32, count: u64) -> Result<usize> {
    let start = crate::certifier::finite_bound(k, ell, m);
    let mut failures = 0;
    for n in start..start + count {
        if !scaffold(k, ell, m, n)?.check().all() {
            failures += 1;
        }
    }
    Ok(failures)
}

fn scaffold_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (k, ell, m) in scaffold_params() {
        let outcome =
            scaffold_sweep(k, ell, m, 20).map(|f| (f == 0, format!("20 indices, {f} failures")));
        out.push(from_result(
            Suite::Scaffold,
            format!("relations k={k} ell={ell} m={m}"),
            outcome,
        ));
    }
    let cko = (|| -> Result<(bool, String)> {
        let mut ok = true;
        for n in 1..=3 {
            let s = scaffold(1, 5, 1, n)?;
            ok &= s.cko_value()?.is_zero() && s.zero_residue()? == 0;
        }
        Ok((ok, "n = 1..=3".into()))
    })();
    out.push(from_result(
        Suite::Scaffold,
        "constant terms of f_n g / Delta^(5n), k=1 ell=5".into(),
        cko,
    ));
    let expansion = (|| -> Result<(bool, String)> {
        let mut ok = true;
        for n in 0..=6 {
            let class = weight_class(1, 5, 1, n)?;
            ok &= expansion_check(class.big_k, 5, 1, n as u64)?.all();
        }
        Ok((ok, "n = 0..=6".into()))
    })();
    out.push(from_result(
        Suite::Scaffold,
        "leading terms of (E_K / Delta^n)^5".into(),
        expansion,
    ));
    let induction = induction_rows(1, 5, 1, 10).map(|rows| {
        let ok = rows
            .iter()
            .all(|r| r.lead_is_one && r.consistent(5) && r.full == 0 && r.tau_top == 0);
        (ok, format!("{} rows", rows.len()))
    });
    out.push(from_result(
        Suite::Scaffold,
        "induction on tau(5n) mod 5, n <= 10".into(),
        induction,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn fuzz_is_deterministic() {
        assert_eq!(ladic_fuzz(7, 5), ladic_fuzz(7, 5));
        assert!(ladic_fuzz(7, 5).iter().all(|r| r.failures == 0));
    }

    #[test]
    fn scaffold_parameter_sets() {
        assert_eq!(
            scaffold_params(),
            vec![(1, 5, 1), (1, 5, 2), (1, 7, 1), (1, 11, 1)]
        );
    }

    #[test]
    fn cko_sweep_shape() {
        assert_eq!(cko_cases().len(), 33);
        let (pairs, nonzero) = cko_case(2, 24).unwrap();
        assert_eq!(pairs, 3 * 3);
        assert!(nonzero.is_empty());
    }
}
