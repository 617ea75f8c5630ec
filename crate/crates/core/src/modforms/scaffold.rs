//! The weight bookkeeping and auxiliary forms behind the finite check:
//! `w(n) = 12 (n ell^m - delta) + 2`, `C_n`, `K_n`, `s_n`, and the forms
//! `f_n = E_(K_n)^(ell^m) E_(ell^(m-1)(ell-1))^(s_n)`, `g = Delta^delta`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::eisenstein::{eisenstein, eisenstein_integral};
use super::qexp::{delta_power, discriminant_power, QExpansion};
use super::spaces::cko_constant_term;
use super::tau::tau_series;
use crate::certifier::delta::{delta, finite_bound};
use crate::coefficients::{Integers, Modulus};
use crate::error::{Error, Result};
use crate::series::{ladic_decompose, LaurentSeries, TruncSeries};

/// Admissible `K_n` values: `{0, 4, 6}` for `ell = 5`, otherwise
/// `{0, 4, 6, ..., ell - 3, ell + 1}`.
pub fn k_candidates(ell: u64) -> Vec<u64> {
    if ell == 5 {
        return vec![0, 4, 6];
    }
    let mut out = vec![0];
    out.extend((4..=ell - 3).step_by(2));
    out.push(ell + 1);
    out
}

/// `w`, `C = w / ell^(m-1)` and `K`, defined for every integer `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClass {
    pub w: BigInt,
    pub c: BigInt,
    pub big_k: u64,
}

/// Weight class of index `n`. Requires `k = -4 (mod ell^(m-1))`.
///
/// For `ell = 5` both 0 and 4 match `C = 0 (mod 4)`; the first listed
/// candidate, 0, is used.
pub fn weight_class(k: u64, ell: u64, m: u32, n: i64) -> Result<WeightClass> {
    let params = delta(k, ell, m)?;
    let lower = ell.pow(m - 1);
    if !(k + 4).is_multiple_of(lower) {
        return Err(Error::HypothesisViolated {
            k,
            ell,
            exponent: m - 1,
        });
    }
    let w: BigInt =
        BigInt::from(12) * (BigInt::from(n) * BigInt::from(ell).pow(m) - params.top()) + 2;
    let (c, rem) = w.div_rem(&BigInt::from(lower));
    if !rem.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "w = {w} not divisible by {ell}^{}",
            m - 1
        )));
    }
    let class = c.mod_floor(&BigInt::from(ell - 1));
    let big_k = k_candidates(ell)
        .into_iter()
        .find(|&cand| BigInt::from(cand % (ell - 1)) == class)
        .ok_or_else(|| Error::InvalidParameter(format!("no admissible K for C = {c}")))?;
    Ok(WeightClass { w, c, big_k })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScaffold {
    pub k: u64,
    pub ell: u64,
    pub m: u32,
    pub n: u64,
    pub delta: BigInt,
    pub w: BigInt,
    pub c: BigInt,
    pub big_k: u64,
    /// `(w - K ell^m) / (ell^(m-1) (ell - 1))`.
    pub s: BigInt,
}

/// Scaffold at index `n >= (k ell^m + 2 ell + 2) / 24`.
pub fn scaffold(k: u64, ell: u64, m: u32, n: u64) -> Result<ProofScaffold> {
    let min = finite_bound(k, ell, m);
    if n < min {
        return Err(Error::RangeTooSmall {
            n: n as i64,
            min: min as i64,
        });
    }
    let class = weight_class(k, ell, m, n as i64)?;
    let denom = BigInt::from(ell.pow(m - 1) * (ell - 1));
    let (s, rem) =
        (&class.w - BigInt::from(class.big_k) * BigInt::from(ell).pow(m)).div_rem(&denom);
    if !rem.is_zero() || !s.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "s = ({} - K ell^m) / {denom} not a positive integer",
            class.w
        )));
    }
    Ok(ProofScaffold {
        k,
        ell,
        m,
        n,
        delta: delta(k, ell, m)?.top().clone(),
        w: class.w,
        c: class.c,
        big_k: class.big_k,
        s,
    })
}

/// Independent re-evaluation of a scaffold's defining relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldCheck {
    /// `ell^(m-1)` divides `w` and `C = w / ell^(m-1)` is even.
    pub divisibility: bool,
    /// `s` is a positive integer.
    pub positivity: bool,
    /// `K ell^m + s ell^(m-1) (ell - 1) = w`.
    pub weight_identity: bool,
    /// `K` is admissible and `K = C (mod ell - 1)`.
    pub k_admissible: bool,
}

impl ScaffoldCheck {
    pub fn all(&self) -> bool {
        self.divisibility && self.positivity && self.weight_identity && self.k_admissible
    }
}

impl ProofScaffold {
    pub fn check(&self) -> ScaffoldCheck {
        let ell = BigInt::from(self.ell);
        let lower = ell.pow(self.m - 1);
        let top = ell.pow(self.m);
        let w = BigInt::from(12) * (BigInt::from(self.n) * &top - &self.delta) + 2;
        let divisibility = w == self.w && &self.c * &lower == w && self.c.is_even();
        let positivity = self.s.is_positive();
        let weight_identity = BigInt::from(self.big_k) * &top + &self.s * &lower * (&ell - 1) == w;
        let k_admissible = k_candidates(self.ell).contains(&self.big_k)
            && (&self.c - BigInt::from(self.big_k))
                .mod_floor(&(&ell - 1))
                .is_zero();
        ScaffoldCheck {
            divisibility,
            positivity,
            weight_identity,
            k_admissible,
        }
    }

    /// `n ell^m`, the power of `Delta` in the quotient.
    pub fn top_index(&self) -> u64 {
        self.n * self.ell.pow(self.m)
    }

    fn delta_u64(&self) -> Result<u64> {
        self.delta
            .to_u64()
            .ok_or(Error::InvalidParameter("delta too large".into()))
    }

    /// `f_n` through `q^order`, with `E_0 = 1`.
    pub fn f_n(&self, order: usize) -> Result<QExpansion> {
        let power = self.ell.pow(self.m);
        let base = eisenstein_or_one(self.big_k, order)?.pow(power)?;
        let aux_weight = self.ell.pow(self.m - 1) * (self.ell - 1);
        let s = self
            .s
            .to_u64()
            .ok_or(Error::InvalidParameter("s too large".into()))?;
        base.mul(&eisenstein(aux_weight, order)?.pow(s)?)
    }

    /// `g = Delta^delta` through `q^order`.
    pub fn g(&self, order: usize) -> Result<QExpansion> {
        Ok(delta_power(self.delta_u64()?, order)?.to_qexpansion())
    }

    /// `const(f_n g / Delta^(n ell^m))`, which must be exactly zero.
    pub fn cko_value(&self) -> Result<num_rational::BigRational> {
        let top = self.top_index();
        let d = self.delta_u64()?;
        let order = top as usize;
        let f = self.f_n(order)?;
        let g = self.g(order.max(d as usize))?;
        // f has weight 12 (n ell^m - delta - 1) + 14 and D(12 delta) = delta + 1.
        let n_prime = top - d - 1;
        cko_constant_term(n_prime, 12 * d as i64, &f, &g)
    }

    /// `const(E_K^(ell^m) Delta^delta / Delta^(n ell^m)) mod ell^m`.
    pub fn zero_residue(&self) -> Result<u64> {
        let p = self.top_index() - self.delta_u64()?;
        let power = self.ell.pow(self.m);
        let e = eisenstein_or_one(self.big_k, p as usize)?.pow(power)?;
        let quotient = e.div(&discriminant_power(p, p as usize)?)?;
        Modulus::new(self.ell, self.m)?.reduce_rational(&quotient.constant_term()?)
    }
}

fn eisenstein_or_one(k: u64, order: usize) -> Result<QExpansion> {
    if k == 0 {
        Ok(QExpansion::one(order))
    } else {
        eisenstein(k, order)
    }
}

fn integral_eisenstein_or_one(k: u64, order: usize) -> Result<TruncSeries<Integers>> {
    if k == 0 {
        Ok(TruncSeries::one(Integers, order))
    } else {
        eisenstein_integral(k, order)
    }
}

/// `(E_K / Delta^n)^(ell^m)` over the integers, known through `q^0`.
pub fn expansion(big_k: u64, ell: u64, m: u32, n: u64) -> Result<LaurentSeries<Integers>> {
    let power = ell.pow(m);
    let body = (n * power) as usize;
    let e = LaurentSeries::from_series(integral_eisenstein_or_one(big_k, body)?);
    let phi = crate::series::euler_phi(Integers, body).pow(24 * n, body)?;
    let delta_n = LaurentSeries::new(n as i64, phi);
    e.mul(&delta_n.inverse()?)?.pow(power)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCheck {
    /// Leading term is `q^(-n ell^m)` with coefficient 1.
    pub leading_term: bool,
    /// `c_{0,n}(-n) = 1`.
    pub c0_lead: bool,
    /// `c_{i,n}(-n ell^i) = 0` for `1 <= i <= m`.
    pub higher_zero: bool,
}

impl ExpansionCheck {
    pub fn all(&self) -> bool {
        self.leading_term && self.c0_lead && self.higher_zero
    }
}

/// Checks the leading behaviour of `(E_K / Delta^n)^(ell^m)` and of its
/// `ell`-adic decomposition. Needs an integral `E_K`, so `K = 12` is rejected.
pub fn expansion_check(big_k: u64, ell: u64, m: u32, n: u64) -> Result<ExpansionCheck> {
    let series = expansion(big_k, ell, m, n)?;
    let top = (n * ell.pow(m)) as i64;
    let leading_term = series.lead() == -top && series.body().coeffs()[0].is_one();
    let d = ladic_decompose(&series, ell, m)?;
    let c0_lead = d.c(0, -(n as i64)).is_one();
    let higher_zero = (1..=m).all(|i| d.c(i as usize, -(n as i64) * (ell as i64).pow(i)).is_zero());
    Ok(ExpansionCheck {
        leading_term,
        c0_lead,
        higher_zero,
    })
}

/// One step of the induction on `tau(n ell^m) mod ell^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionRow {
    pub n: u64,
    pub big_k: u64,
    /// `c_{0,n}(-n) = 1`.
    pub lead_is_one: bool,
    /// `sum_{j=0}^{n-1} c_{0,n}(-j) tau(j ell^m) mod ell^m`.
    pub partial: u64,
    /// `sum_{j=0}^{n} c_{0,n}(-j) tau(j ell^m) mod ell^m`.
    pub full: u64,
    /// `tau(n ell^m) mod ell^m`.
    pub tau_top: u64,
}

impl InductionRow {
    /// The full sum splits as `c_{0,n}(-n) tau(n ell^m)` plus the partial sum.
    pub fn consistent(&self, modulus: u64) -> bool {
        !self.lead_is_one || (self.partial + self.tau_top) % modulus == self.full
    }
}

/// Rows `n = 0..=n_max` of `sum_{j=0}^{n} c_{0,n}(-j) tau_{k,m}(j ell^m)`.
pub fn induction_rows(k: u64, ell: u64, m: u32, n_max: u64) -> Result<Vec<InductionRow>> {
    let md = Modulus::new(ell, m)?;
    let power = ell.pow(m);
    let tau = tau_series(k, ell, m, (n_max * power) as usize)?;
    let tau_at = |j: u64| md.reduce_big(&tau.at((j * power) as i64));
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let class = weight_class(k, ell, m, n as i64)?;
        let d = ladic_decompose(&expansion(class.big_k, ell, m, n)?, ell, m)?;
        let term = |j: u64| md.reduce_big(&d.c(0, -(j as i64))) as u128 * tau_at(j) as u128;
        let partial = ((0..n).map(term).sum::<u128>() % md.value() as u128) as u64;
        let full = ((0..=n).map(term).sum::<u128>() % md.value() as u128) as u64;
        rows.push(InductionRow {
            n,
            big_k: class.big_k,
            lead_is_one: d.c(0, -(n as i64)).is_one(),
            partial,
            full,
            tau_top: tau_at(n),
        });
    }
    Ok(rows)
}
