//! Level-one spaces `M_k`, the auxiliary forms `E~_k`, and the
//! constant-term identity.

use num_rational::BigRational;
use num_traits::Zero;

use super::eisenstein::eisenstein;
use super::qexp::{discriminant_power, QExpansion};
use crate::error::{Error, Result};

/// `dim M_k`: 0 for odd or negative `k`, otherwise `floor(k/12)` when
/// `k = 2 (mod 12)` and `floor(k/12) + 1` else.
pub fn dim_mk(k: i64) -> u64 {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    let base = (k / 12) as u64;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// `E~_k`: `1, E_14, E_4, E_6, E_4^2, E_4 E_6` for `k = 0, 2, 4, 6, 8, 10 (mod 12)`.
pub fn e_tilde(k: i64, order: usize) -> Result<QExpansion> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if k < 0 {
        return Err(Error::InvalidParameter(format!("negative weight {k}")));
    }
    match k % 12 {
        0 => Ok(QExpansion::one(order)),
        2 => eisenstein(14, order),
        4 => eisenstein(4, order),
        6 => eisenstein(6, order),
        8 => eisenstein(4, order)?.pow(2),
        _ => eisenstein(4, order)?.mul(&eisenstein(6, order)?),
    }
}

/// Monomials `E_4^a E_6^b` with `4a + 6b = k`, ordered by increasing `b`.
pub fn basis_mk(k: i64, order: usize) -> Result<Vec<QExpansion>> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if k < 0 {
        return Ok(Vec::new());
    }
    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    let mut basis = Vec::new();
    for b in 0..=(k / 6) {
        let rest = k - 6 * b;
        if rest % 4 == 0 {
            let a = rest / 4;
            let f = e4.pow(a as u64)?.mul(&e6.pow(b as u64)?)?;
            basis.push(QExpansion::new(k, f.series().clone()));
        }
    }
    Ok(basis)
}

/// Rank over `Q` of the matrix of coefficients `q^0 .. q^(cols-1)`.
pub fn leading_rank(forms: &[QExpansion], cols: usize) -> usize {
    let mut rows: Vec<Vec<BigRational>> = forms
        .iter()
        .map(|f| {
            (0..cols as i64)
                .map(|n| f.coeff(n).unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `const(f g / (Delta^(n + D(k)) E~_k))` for `f` in `M_(12n+14)`, `g` in `M_k`.
///
/// `f` and `g` must be known through `q^(n + D(k))`. The value is zero for
/// genuine modular forms; anything else means a wrong input or a bug.
pub fn cko_constant_term(n: u64, k: i64, f: &QExpansion, g: &QExpansion) -> Result<BigRational> {
    let expected = 12 * n as i64 + 14;
    if f.weight() != expected {
        return Err(Error::WeightMismatch {
            expected,
            found: f.weight(),
        });
    }
    if g.weight() != k {
        return Err(Error::WeightMismatch {
            expected: k,
            found: g.weight(),
        });
    }
    let power = n + dim_mk(k);
    let needed = power as i64;
    let available = f.precision().min(g.precision());
    if available < needed {
        return Err(Error::InsufficientPrecision { needed, available });
    }
    let order = power as usize;
    let denominator = discriminant_power(power, order)?.mul(&e_tilde(k, order)?)?;
    let numerator = f.truncate_to(needed)?.mul(&g.truncate_to(needed)?)?;
    numerator.div(&denominator)?.constant_term()
}
