//! Truncated power series and Laurent series with a finite principal part.
//!
//! A [`TruncSeries`] of order `N` is known modulo `q^(N+1)`. Operations take
//! the target order explicitly and refuse to produce coefficients beyond what
//! their inputs determine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::coefficients::{ell_valuation, Integers, Ring};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Output length above which `mul` splits the coefficient loop across threads.
pub const PARALLEL_MUL_THRESHOLD: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> TruncSeries<R> {
    /// Series from its first `coeffs.len()` coefficients; order `len - 1`.
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        TruncSeries { ring, coeffs }
    }

    /// A polynomial viewed as a series of order `order` (zero-padded or cut).
    pub fn from_poly(ring: R, poly: &[R::Elem], order: usize) -> Self {
        let mut coeffs: Vec<R::Elem> = poly.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, ring.zero());
        TruncSeries { ring, coeffs }
    }

    pub fn from_i64s(ring: R, poly: &[i64], order: usize) -> Self {
        let elems: Vec<R::Elem> = poly.iter().map(|&x| ring.from_i64(x)).collect();
        Self::from_poly(ring, &elems, order)
    }

    pub fn zero(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        TruncSeries { ring, coeffs }
    }

    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = s.ring.one();
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    /// Coefficient of `q^n`; panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &R::Elem {
        &self.coeffs[n]
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn require(&self, order: usize) -> Result<()> {
        if order > self.order() {
            return Err(Error::InsufficientPrecision {
                needed: order as i64,
                available: self.order() as i64,
            });
        }
        Ok(())
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.ring.add(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.ring.sub(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect();
        TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Cauchy product to order `order`.
    pub fn mul(&self, other: &Self, order: usize) -> Result<Self> {
        self.mul_with(other, order, Execution::default())
    }

    pub fn mul_with(&self, other: &Self, order: usize, exec: Execution) -> Result<Self> {
        self.same_ring(other)?;
        self.require(order)?;
        other.require(order)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        // Skip leading zeros: q-power factors are common (Delta, shifted series).
        let a_lo = a[..=order]
            .iter()
            .position(|c| !self.ring.is_zero(c))
            .unwrap_or(order + 1);
        let b_lo = b[..=order]
            .iter()
            .position(|c| !self.ring.is_zero(c))
            .unwrap_or(order + 1);
        let ring = &self.ring;
        let coeff = |n: usize| {
            if n < a_lo + b_lo {
                return ring.zero();
            }
            let lo = a_lo.max(n.saturating_sub(order));
            let hi = n - b_lo;
            ring.dot_rev(&a[lo..=hi], &b[n - hi..=n - lo])
        };
        let exec = if order + 1 >= PARALLEL_MUL_THRESHOLD {
            exec
        } else {
            Execution::Sequential
        };
        let coeffs = par::map_range(exec, 0..order + 1, coeff);
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Reciprocal by Newton iteration (order doubling).
    pub fn inverse(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        let inv0 = self
            .ring
            .inv(&self.coeffs[0])
            .ok_or(Error::NonUnitConstantTerm)?;
        let two = self.ring.from_i64(2);
        let mut b = TruncSeries {
            ring: self.ring.clone(),
            coeffs: vec![inv0],
        };
        let mut prec = 0usize;
        while prec < order {
            let next = (2 * prec + 1).min(order);
            let b_ext = TruncSeries::from_poly(self.ring.clone(), &b.coeffs, next);
            let a = self.truncate(next)?;
            // b <- b (2 - a b)
            let mut e = a.mul(&b_ext, next)?.neg();
            e.coeffs[0] = self.ring.add(&e.coeffs[0], &two);
            b = b_ext.mul(&e, next)?;
            prec = next;
        }
        Ok(b)
    }

    /// Reciprocal by the triangular recurrence `b_n = -a_0^{-1} sum_{i>=1} a_i b_{n-i}`.
    /// Quadratic; the in-repo oracle for [`TruncSeries::inverse`].
    pub fn inverse_naive(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        let inv0 = self
            .ring
            .inv(&self.coeffs[0])
            .ok_or(Error::NonUnitConstantTerm)?;
        let ring = &self.ring;
        let mut b: Vec<R::Elem> = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for n in 1..=order {
            let s = ring.dot_rev(&self.coeffs[1..=n], &b[..n]);
            b.push(ring.neg(&ring.mul(&s, &inv0)));
        }
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs: b,
        })
    }

    /// `self^e` to order `order` by binary exponentiation.
    pub fn pow(&self, e: u64, order: usize) -> Result<Self> {
        let mut result = TruncSeries::one(self.ring.clone(), order);
        if e == 0 {
            return Ok(result);
        }
        let mut base = self.truncate(order)?;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul(&base, order)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base, order)?;
        }
        Ok(result)
    }

    /// `a(q^t)` to order `order`.
    pub fn substitute_qpower(&self, t: usize, order: usize) -> Result<Self> {
        assert!(t >= 1, "substitution exponent must be positive");
        self.require(order / t)?;
        let mut out = TruncSeries::zero(self.ring.clone(), order);
        for n in 0..=order / t {
            out.coeffs[n * t] = self.coeffs[n].clone();
        }
        Ok(out)
    }

    /// Coefficientwise image in another ring.
    pub fn map_ring<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> TruncSeries<S> {
        let coeffs = self.coeffs.iter().map(f).collect();
        TruncSeries {
            ring: target,
            coeffs,
        }
    }
}

impl TruncSeries<Integers> {
    /// Reduction of an exact series into any ring.
    pub fn reduce<S: Ring>(&self, target: S) -> TruncSeries<S> {
        let t = target.clone();
        self.map_ring(target, |c| t.from_bigint(c))
    }
}

/// Exponents `j(3j-1)/2`, `j in Z`, up to `order`, with signs `(-1)^j`.
pub fn pentagonal_terms(order: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let g1 = j * (3 * j - 1) / 2;
        if g1 > order {
            break;
        }
        terms.push((g1, sign));
        let g2 = j * (3 * j + 1) / 2;
        if g2 <= order {
            terms.push((g2, sign));
        }
    }
    terms.sort_unstable();
    terms
}

/// `phi(q) = prod_{n>=1} (1 - q^n)`, by the pentagonal number theorem.
pub fn euler_phi<R: Ring>(ring: R, order: usize) -> TruncSeries<R> {
    let mut s = TruncSeries::zero(ring, order);
    for (g, sign) in pentagonal_terms(order) {
        s.coeffs[g] = s.ring.from_i64(sign);
    }
    s
}

/// Series `q^lead * (c_0 + c_1 q + ... + c_L q^L)`, known through exponent
/// `lead + L`. `lead` may be negative.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<R: Ring> {
    lead: i64,
    body: TruncSeries<R>,
}

impl<R: Ring> LaurentSeries<R> {
    pub fn new(lead: i64, body: TruncSeries<R>) -> Self {
        LaurentSeries { lead, body }
    }

    pub fn from_series(body: TruncSeries<R>) -> Self {
        LaurentSeries { lead: 0, body }
    }

    /// Coefficient list starting at exponent `lead`, known through the last entry.
    pub fn from_coeffs(ring: R, lead: i64, coeffs: Vec<R::Elem>) -> Self {
        LaurentSeries {
            lead,
            body: TruncSeries::new(ring, coeffs),
        }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn body(&self) -> &TruncSeries<R> {
        &self.body
    }

    pub fn ring(&self) -> &R {
        self.body.ring()
    }

    /// Largest exponent whose coefficient is known.
    pub fn precision(&self) -> i64 {
        self.lead + self.body.order() as i64
    }

    /// Coefficient at `exponent`; zero below `lead`, `None` past the precision.
    pub fn coeff_at(&self, exponent: i64) -> Option<R::Elem> {
        if exponent > self.precision() {
            None
        } else if exponent < self.lead {
            Some(self.ring().zero())
        } else {
            Some(self.body.coeffs[(exponent - self.lead) as usize].clone())
        }
    }

    /// Coefficient of `q^0`.
    pub fn const_term(&self) -> Result<R::Elem> {
        self.coeff_at(0).ok_or(Error::InsufficientPrecision {
            needed: 0,
            available: self.precision(),
        })
    }

    /// Strips leading zero coefficients; `None` if every known coefficient is zero.
    pub fn normalized(&self) -> Option<Self> {
        let ring = self.ring();
        let skip = self.body.coeffs.iter().position(|c| !ring.is_zero(c))?;
        Some(LaurentSeries {
            lead: self.lead + skip as i64,
            body: TruncSeries {
                ring: ring.clone(),
                coeffs: self.body.coeffs[skip..].to_vec(),
            },
        })
    }

    /// Keeps coefficients through absolute exponent `precision`.
    pub fn truncate_to(&self, precision: i64) -> Result<Self> {
        if precision < self.lead {
            return Err(Error::InsufficientPrecision {
                needed: self.lead,
                available: precision,
            });
        }
        let rel = (precision - self.lead) as usize;
        Ok(LaurentSeries {
            lead: self.lead,
            body: self.body.truncate(rel)?,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let rel = self.body.order().min(other.body.order());
        let body = self
            .body
            .truncate(rel)?
            .mul(&other.body.truncate(rel)?, rel)?;
        Ok(LaurentSeries {
            lead: self.lead + other.lead,
            body,
        })
    }

    /// Reciprocal; leading coefficient (after normalization) must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let norm = self.normalized().ok_or(Error::NonUnitLeadingCoefficient)?;
        let rel = norm.body.order();
        let body = norm.body.inverse(rel).map_err(|e| match e {
            Error::NonUnitConstantTerm => Error::NonUnitLeadingCoefficient,
            other => other,
        })?;
        Ok(LaurentSeries {
            lead: -norm.lead,
            body,
        })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let rel = self.body.order();
        Ok(LaurentSeries {
            lead: self.lead * e as i64,
            body: self.body.pow(e, rel)?,
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        LaurentSeries {
            lead: self.lead,
            body: self.body.scale(c),
        }
    }

    /// Multiplication by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentSeries {
            lead: self.lead + shift,
            body: self.body.clone(),
        }
    }
}

pub fn laurent_mul<R: Ring>(
    a: &LaurentSeries<R>,
    b: &LaurentSeries<R>,
) -> Result<LaurentSeries<R>> {
    a.mul(b)
}

pub fn laurent_inverse<R: Ring>(a: &LaurentSeries<R>) -> Result<LaurentSeries<R>> {
    a.inverse()
}

fn div_ceil(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Components `f_0, ..., f_m` with
/// `g = sum_i ell^i f_i(q^(ell^(m-i)))` through the source precision.
///
/// Component `i` stores `c_i(n)`, the coefficient attached to exponent
/// `n * ell^(m-i)`. An exponent `j` lands in component `m - min(m, v_ell(j))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LadicDecomposition {
    ell: u64,
    m: u32,
    precision: i64,
    components: Vec<LaurentSeries<Integers>>,
}

impl LadicDecomposition {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn component(&self, i: usize) -> &LaurentSeries<Integers> {
        &self.components[i]
    }

    pub fn components(&self) -> &[LaurentSeries<Integers>] {
        &self.components
    }

    /// Exponent step `ell^(m-i)` of component `i`.
    pub fn step(&self, i: usize) -> i64 {
        (self.ell as i64).pow(self.m - i as u32)
    }

    /// `c_i(n)`; zero outside the stored range.
    pub fn c(&self, i: usize, n: i64) -> BigInt {
        self.components[i].coeff_at(n).unwrap_or_else(BigInt::zero)
    }

    /// `sum_i ell^i f_i(q^(ell^(m-i)))` as a Laurent series through `precision`.
    pub fn recompose(&self) -> LaurentSeries<Integers> {
        let lead = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| c.lead() * self.step(i))
            .min()
            .unwrap_or(0)
            .min(self.precision);
        let len = (self.precision - lead + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, comp) in self.components.iter().enumerate() {
            let step = self.step(i);
            let weight = BigInt::from(self.ell).pow(i as u32);
            for (idx, c) in comp.body().coeffs().iter().enumerate() {
                let exponent = (comp.lead() + idx as i64) * step;
                if exponent <= self.precision && !c.is_zero() {
                    coeffs[(exponent - lead) as usize] += c * &weight;
                }
            }
        }
        LaurentSeries::from_coeffs(Integers, lead, coeffs)
    }
}

/// Canonical `ell`-adic decomposition of `g`, which should be an
/// `ell^m`-th power. Fails with `DivisibilityViolation` otherwise.
pub fn ladic_decompose(
    g: &LaurentSeries<Integers>,
    ell: u64,
    m: u32,
) -> Result<LadicDecomposition> {
    assert!(
        ell >= 2 && m >= 1,
        "decomposition needs ell >= 2 and m >= 1"
    );
    let precision = g.precision();
    let ell_i = ell as i64;
    let mut components = Vec::with_capacity(m as usize + 1);
    for i in 0..=m {
        let step = ell_i.pow(m - i);
        let lo = div_ceil(g.lead(), step);
        let hi = precision.div_euclid(step);
        let len = (hi - lo + 1).max(1) as usize;
        components.push(LaurentSeries::from_coeffs(
            Integers,
            lo,
            vec![BigInt::zero(); len],
        ));
    }
    let mut coeffs: Vec<Vec<BigInt>> = components
        .iter()
        .map(|c| c.body().coeffs().to_vec())
        .collect();
    for (idx, a) in g.body().coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = g.lead() + idx as i64;
        let u = ell_valuation(j.unsigned_abs(), ell).capped(m);
        let i = (m - u) as usize;
        let divisor = BigInt::from(ell).pow(i as u32);
        let (q, r) = a.div_rem(&divisor);
        if !r.is_zero() {
            return Err(Error::DivisibilityViolation {
                exponent: j,
                coefficient: a.to_string(),
                ell,
                required: i as u32,
            });
        }
        let step = ell_i.pow(u);
        let n = j / step;
        coeffs[i][(n - components[i].lead()) as usize] = q;
    }
    let components = components
        .into_iter()
        .zip(coeffs)
        .map(|(c, body)| LaurentSeries::from_coeffs(Integers, c.lead(), body))
        .collect();
    Ok(LadicDecomposition {
        ell,
        m,
        precision,
        components,
    })
}

/// Decomposition of an ordinary power series.
pub fn ladic_decompose_series(
    g: &TruncSeries<Integers>,
    ell: u64,
    m: u32,
) -> Result<LadicDecomposition> {
    ladic_decompose(&LaurentSeries::from_series(g.clone()), ell, m)
}

/// Whether every coefficient `a_j` of `g` is divisible by `ell^(m - min(m, v(j)))`.
pub fn satisfies_power_divisibility(g: &TruncSeries<Integers>, ell: u64, m: u32) -> bool {
    let modulus = |i: u32| BigInt::from(ell).pow(i);
    g.coeffs().iter().enumerate().all(|(j, a)| {
        let i = m - ell_valuation(j as u64, ell).capped(m);
        (a % modulus(i)).is_zero()
    })
}

/// Largest absolute value among coefficients, for diagnostics.
pub fn max_abs(g: &TruncSeries<Integers>) -> BigInt {
    g.coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Modulus;
    use proptest::prelude::*;

    fn z(v: &[i64], order: usize) -> TruncSeries<Integers> {
        TruncSeries::from_i64s(Integers, v, order)
    }

    fn ints(s: &TruncSeries<Integers>) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    /// prod_{n=1}^{order} (1 - q^n) by direct multiplication.
    fn phi_brute(order: usize) -> Vec<i64> {
        let mut p = vec![0i64; order + 1];
        p[0] = 1;
        for n in 1..=order {
            for i in (n..=order).rev() {
                p[i] -= p[i - n];
            }
        }
        p
    }

    #[test]
    fn mul_examples() {
        let a = z(&[1, -1], 3);
        let b = z(&[1, 1, 1, 1], 3);
        assert_eq!(ints(&a.mul(&b, 3).unwrap()), vec![1, 0, 0, 0]);

        let phi = euler_phi(Integers, 50);
        let p1 = phi.inverse(50).unwrap();
        assert_eq!(phi.mul(&p1, 50).unwrap(), TruncSeries::one(Integers, 50));
        assert_eq!(ints(&p1)[5], 7);
    }

    #[test]
    fn mul_rejects_mixed_domains_and_extension() {
        let a = TruncSeries::from_i64s(Modulus::new(5, 1).unwrap(), &[1, 1], 3);
        let b = TruncSeries::from_i64s(Modulus::new(7, 1).unwrap(), &[1, 1], 3);
        assert_eq!(a.mul(&b, 3), Err(Error::DomainMismatch));
        assert!(matches!(
            a.mul(&a, 4),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            ints(&z(&[1, -1], 4).inverse(4).unwrap()),
            vec![1, 1, 1, 1, 1]
        );
        let phi = euler_phi(Integers, 3);
        assert_eq!(ints(&phi.inverse(3).unwrap()), vec![1, 1, 2, 3]);
        let md = Modulus::new(5, 2).unwrap();
        let s = TruncSeries::from_i64s(md, &[2, 1], 6);
        assert_eq!(*s.inverse(6).unwrap().coeff(0), 13);
        assert_eq!(z(&[2, 1], 3).inverse(3), Err(Error::NonUnitConstantTerm));
        let t = TruncSeries::from_i64s(md, &[5, 1], 3);
        assert_eq!(t.inverse_naive(3), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn newton_matches_recurrence() {
        let md = Modulus::new(11, 2).unwrap();
        for order in [0, 1, 2, 7, 64, 300] {
            let phi = euler_phi(md, order).pow(7, order).unwrap();
            assert_eq!(
                phi.inverse(order).unwrap(),
                phi.inverse_naive(order).unwrap()
            );
        }
        // 4 is not a unit over Z.
        assert!(z(&[4, -1], 40).inverse(40).is_err());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(
            ints(&z(&[3, 2, 1], 4).pow(0, 4).unwrap()),
            vec![1, 0, 0, 0, 0]
        );
        let p = euler_phi(Integers, 3).inverse(3).unwrap();
        assert_eq!(ints(&p.pow(2, 3).unwrap()), vec![1, 2, 5, 10]);
        let delta = euler_phi(Integers, 12).pow(24, 12).unwrap();
        // Delta = q * phi^24, so tau(2) is the q^1 coefficient of phi^24.
        assert_eq!(ints(&delta)[1], -24);
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            ints(&z(&[1, 1], 3).substitute_qpower(1, 3).unwrap()),
            vec![1, 1, 0, 0]
        );
        let s = z(&[1, 1], 6).substitute_qpower(5, 6).unwrap();
        assert_eq!(ints(&s), vec![1, 0, 0, 0, 0, 1, 0]);
        let phi = euler_phi(Integers, 2).substitute_qpower(25, 60).unwrap();
        let mut expected = vec![0i64; 61];
        expected[0] = 1;
        expected[25] = -1;
        expected[50] = -1;
        assert_eq!(ints(&phi), expected);
    }

    #[test]
    fn euler_phi_matches_brute_force() {
        assert_eq!(ints(&euler_phi(Integers, 0)), vec![1]);
        assert_eq!(
            ints(&euler_phi(Integers, 7)),
            vec![1, -1, -1, 0, 0, 1, 0, 1]
        );
        for order in [12, 40, 200] {
            assert_eq!(ints(&euler_phi(Integers, order)), phi_brute(order));
        }
        assert_eq!(ints(&euler_phi(Integers, 12))[12], -1);
        let nonzero = euler_phi(Integers, 10_000)
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .count();
        assert!(nonzero < 2 * 90);
    }

    #[test]
    fn ladic_binomial_example() {
        let g = z(&[1, 1], 5).pow(5, 5).unwrap();
        let d = ladic_decompose_series(&g, 5, 1).unwrap();
        assert_eq!(d.c(0, 0), BigInt::from(1));
        assert_eq!(d.c(0, 1), BigInt::from(1));
        let f1: Vec<i64> = (1..=4).map(|n| i64::try_from(d.c(1, n)).unwrap()).collect();
        assert_eq!(f1, vec![1, 2, 2, 1]);
        assert_eq!(d.recompose(), LaurentSeries::from_series(g));
    }

    #[test]
    fn ladic_phi25() {
        let g = euler_phi(Integers, 80).pow(25, 80).unwrap();
        assert!(satisfies_power_divisibility(&g, 5, 2));
        assert_eq!(g.coeff(1), &BigInt::from(-25));
        let d = ladic_decompose_series(&g, 5, 2).unwrap();
        assert_eq!(d.c(2, 1), BigInt::from(-1));
        assert_eq!(d.recompose().body(), &g);
    }

    #[test]
    fn ladic_rejects_non_powers() {
        let g = z(&[1, 1], 5);
        match ladic_decompose_series(&g, 5, 1) {
            Err(Error::DivisibilityViolation { exponent, .. }) => assert_eq!(exponent, 1),
            other => panic!("expected a divisibility violation, got {other:?}"),
        }
    }

    #[test]
    fn prop_2_1_support() {
        // f(q^(ell^k))^ell = g(q^(ell^(k+1))) + ell h(q^(ell^k)).
        let (ell, k) = (5u64, 1u32);
        let f = z(&[2, -1, 3, 1], 30);
        let fk = f.substitute_qpower(5usize.pow(k), 150).unwrap();
        let g = fk.pow(ell, 150).unwrap();
        for (j, a) in g.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            assert_eq!(j % 5usize.pow(k), 0, "support at {j}");
            if j % 5usize.pow(k + 1) != 0 {
                assert!((a % BigInt::from(ell)).is_zero(), "coefficient at {j}");
            }
        }
        let d = ladic_decompose_series(&g, ell, 1).unwrap();
        assert_eq!(d.recompose().body(), &g);
    }

    #[test]
    fn laurent_examples() {
        let a = LaurentSeries::from_coeffs(Integers, -1, vec![1.into(), 1.into(), 0.into()]);
        let b = LaurentSeries::from_coeffs(Integers, 1, vec![1.into(), 0.into(), 0.into()]);
        let p = laurent_mul(&a, &b).unwrap();
        assert_eq!(p.lead(), 0);
        assert_eq!(p.coeff_at(0), Some(BigInt::from(1)));
        assert_eq!(p.coeff_at(1), Some(BigInt::from(1)));

        // (Delta/q)^{-1} = prod (1-q^n)^{-24}: 1 + 24q + 324q^2 + ...
        let phi24 = euler_phi(Integers, 10).pow(24, 10).unwrap();
        let inv = laurent_inverse(&LaurentSeries::from_series(phi24.clone())).unwrap();
        assert_eq!(inv.coeff_at(0), Some(BigInt::from(1)));
        assert_eq!(inv.coeff_at(1), Some(BigInt::from(24)));
        let oracle = euler_phi(Integers, 10)
            .inverse_naive(10)
            .unwrap()
            .pow(24, 10)
            .unwrap();
        assert_eq!(inv.body(), &oracle);

        let delta = LaurentSeries::new(1, phi24);
        let dinv = delta.inverse().unwrap();
        assert_eq!(dinv.lead(), -1);
        let two = LaurentSeries::from_coeffs(Integers, 0, vec![2.into(), 1.into()]);
        assert_eq!(two.inverse(), Err(Error::NonUnitLeadingCoefficient));
    }

    #[test]
    fn parallel_and_sequential_mul_agree() {
        let md = Modulus::new(13, 2).unwrap();
        let order = PARALLEL_MUL_THRESHOLD + 100;
        let a = euler_phi(md, order).pow(3, order).unwrap();
        let b = euler_phi(md, order).inverse(order).unwrap();
        assert_eq!(
            a.mul_with(&b, order, Execution::Sequential).unwrap(),
            a.mul_with(&b, order, Execution::Parallel).unwrap()
        );
    }

    fn small_series() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-10i64..=10, 1..12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn power_divisibility_law(f in small_series(), idx in 0usize..3, m in 1u32..=2) {
            let ell = [5u64, 7, 11][idx];
            let order = 40;
            let g = z(&f, order).pow(ell.pow(m), order).unwrap();
            prop_assert!(satisfies_power_divisibility(&g, ell, m));
            let d = ladic_decompose_series(&g, ell, m).unwrap();
            prop_assert_eq!(d.recompose(), LaurentSeries::from_series(g));
        }

        #[test]
        fn inverse_and_pow_laws(mut f in small_series(), e1 in 0u64..6, e2 in 0u64..6) {
            f[0] = 1;
            let order = 30;
            let a = z(&f, order);
            prop_assert_eq!(a.inverse(order).unwrap().inverse(order).unwrap(), a.clone());
            let lhs = a.pow(e1 + e2, order).unwrap();
            let rhs = a.pow(e1, order).unwrap().mul(&a.pow(e2, order).unwrap(), order).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
