//! Exact q-expansions with a weight tag.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coefficients::{Integers, Rationals};
use crate::error::{Error, Result};
use crate::series::{LaurentSeries, TruncSeries};

/// A formal q-expansion of a (meromorphic) modular form. The weight is
/// bookkeeping carried through products and quotients, not a verified property.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    weight: i64,
    series: LaurentSeries<Rationals>,
}

impl QExpansion {
    pub fn new(weight: i64, series: LaurentSeries<Rationals>) -> Self {
        QExpansion { weight, series }
    }

    /// Power series `sum_{n <= order} coeffs[n] q^n` with integer coefficients.
    pub fn from_integers(weight: i64, coeffs: &TruncSeries<Integers>) -> Self {
        let series = coeffs.map_ring(Rationals, |c| BigRational::from_integer(c.clone()));
        QExpansion {
            weight,
            series: LaurentSeries::from_series(series),
        }
    }

    /// The constant `1` of weight 0 through `order`.
    pub fn one(order: usize) -> Self {
        QExpansion {
            weight: 0,
            series: LaurentSeries::from_series(TruncSeries::one(Rationals, order)),
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn series(&self) -> &LaurentSeries<Rationals> {
        &self.series
    }

    pub fn lead(&self) -> i64 {
        self.series.lead()
    }

    /// Largest exponent whose coefficient is known.
    pub fn precision(&self) -> i64 {
        self.series.precision()
    }

    /// Coefficient of `q^n`, `None` past the precision.
    pub fn coeff(&self, n: i64) -> Option<BigRational> {
        self.series.coeff_at(n)
    }

    pub fn constant_term(&self) -> Result<BigRational> {
        self.series.const_term()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(QExpansion {
            weight: self.weight + other.weight,
            series: self.series.mul(&other.series)?,
        })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        Ok(QExpansion {
            weight: self.weight * e as i64,
            series: self.series.pow(e)?,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(QExpansion {
            weight: -self.weight,
            series: self.series.inverse()?,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    pub fn truncate_to(&self, precision: i64) -> Result<Self> {
        Ok(QExpansion {
            weight: self.weight,
            series: self.series.truncate_to(precision)?,
        })
    }

    /// Whether every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.series.body().coeffs().iter().all(|c| c.is_integer())
    }

    /// Same expansion over the integers, if every coefficient is integral.
    pub fn to_integers(&self) -> Option<LaurentSeries<Integers>> {
        if !self.is_integral() {
            return None;
        }
        let body = self.series.body().map_ring(Integers, |c| c.to_integer());
        Some(LaurentSeries::new(self.series.lead(), body))
    }

    /// Whether the known coefficients are `1, 0, 0, ...` from exponent 0.
    pub fn is_one(&self) -> bool {
        (self.lead()..=self.precision()).all(|e| {
            self.coeff(e)
                .is_some_and(|c| if e == 0 { c.is_one() } else { c.is_zero() })
        })
    }
}

/// Exact coefficients `tau(n)` of a power of the discriminant.
#[derive(Clone, Debug, PartialEq)]
pub struct TauSeries {
    delta: u64,
    coeffs: Vec<BigInt>,
}

impl TauSeries {
    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `tau(n)`, zero for negative `n`. Panics past the order.
    pub fn at(&self, n: i64) -> BigInt {
        if n < 0 {
            BigInt::zero()
        } else {
            self.coeffs[n as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_qexpansion(&self) -> QExpansion {
        let series = TruncSeries::new(Integers, self.coeffs.clone());
        QExpansion::from_integers(12 * self.delta as i64, &series)
    }

    pub(crate) fn from_coeffs(delta: u64, coeffs: Vec<BigInt>) -> Self {
        TauSeries { delta, coeffs }
    }
}

/// `Delta^delta = q^delta prod (1 - q^n)^(24 delta)` through `q^order`.
pub fn delta_power(delta: u64, order: usize) -> Result<TauSeries> {
    if (delta as usize) > order {
        return Err(Error::InsufficientPrecision {
            needed: delta as i64,
            available: order as i64,
        });
    }
    let body_order = order - delta as usize;
    let phi = crate::series::euler_phi(Integers, body_order).pow(24 * delta, body_order)?;
    let mut coeffs = vec![BigInt::zero(); delta as usize];
    coeffs.extend(phi.into_coeffs());
    Ok(TauSeries { delta, coeffs })
}

/// `Delta` as a q-expansion through `q^order`.
pub fn discriminant(order: usize) -> Result<QExpansion> {
    Ok(delta_power(1, order)?.to_qexpansion())
}

/// `Delta^e` as a Laurent expansion with leading exponent `e` and body order `body_order`.
pub fn discriminant_power(e: u64, body_order: usize) -> Result<QExpansion> {
    let phi = crate::series::euler_phi(Integers, body_order).pow(24 * e, body_order)?;
    let body = QExpansion::from_integers(12 * e as i64, &phi);
    Ok(QExpansion::new(body.weight, body.series.shift(e as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_examples() {
        let t = delta_power(1, 5).unwrap();
        let want: Vec<BigInt> = [0, 1, -24, 252, -1472, 4830]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(t.coeffs(), &want[..]);
        let t2 = delta_power(2, 4).unwrap();
        assert_eq!(t2.at(2), BigInt::from(1));
        assert!(t2.at(1).is_zero() && t2.at(-3).is_zero());
        assert!(delta_power(3, 2).is_err());
    }

    #[test]
    fn discriminant_power_matches_delta_power() {
        let lau = discriminant_power(3, 10).unwrap();
        let t = delta_power(3, 13).unwrap();
        assert_eq!(lau.lead(), 3);
        assert_eq!(lau.weight(), 36);
        for n in 0..=13 {
            assert_eq!(lau.coeff(n).unwrap(), BigRational::from_integer(t.at(n)));
        }
    }

    #[test]
    fn weights_track_products() {
        let d = discriminant(6).unwrap();
        let q = d.mul(&d).unwrap().div(&d).unwrap();
        assert_eq!(q.weight(), 12);
        assert_eq!(q.series().normalized().unwrap().lead(), 1);
        assert!(QExpansion::one(4).is_one());
        assert!(d.to_integers().is_some());
    }
}
