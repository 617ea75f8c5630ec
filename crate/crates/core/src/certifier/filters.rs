//! Necessary conditions for exceptional mod-`ell` congruences and the
//! `k = ell - 3` family.

use serde::{Deserialize, Serialize};

use super::delta::{check_prime, delta, target_residue};
use crate::coefficients::Modulus;
use crate::error::Result;

/// A possible exceptional congruence `p_k(ell n + a) = 0 (mod ell)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoCandidate {
    pub k: u64,
    pub a: u64,
    /// Whether `a = -delta_{k,ell,1} (mod ell)`.
    pub matches_delta: bool,
}

/// All `(k, a)` with `1 <= k <= ell - 1`, `k` not `ell - 1` or `ell - 3`,
/// `k` odd and `24 a = k (mod ell)`.
pub fn ko_exceptional_filter(ell: u64) -> Result<Vec<KoCandidate>> {
    check_prime(ell)?;
    let md = Modulus::new(ell, 1)?;
    let inv24 = md.reduce_rational(&num_rational::BigRational::new(1.into(), 24.into()))?;
    (1..ell)
        .filter(|&k| k % 2 == 1 && k != ell - 1 && k != ell - 3)
        .map(|k| {
            let a = (k % ell) * inv24 % ell;
            let params = delta(k, ell, 1)?;
            Ok(KoCandidate {
                k,
                a,
                matches_delta: target_residue(&params, 1) == a,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GandhiParams {
    pub k: u64,
    pub a: u64,
    /// Whether `a = -delta_{ell-3,ell,1} (mod ell)`.
    pub matches_delta: bool,
}

/// `k = ell - 3` and `a = (ell^2 - 1) / 8 mod ell`.
pub fn gandhi_params(ell: u64) -> Result<GandhiParams> {
    check_prime(ell)?;
    let k = ell - 3;
    let a = ((ell * ell - 1) / 8) % ell;
    let matches_delta = target_residue(&delta(k, ell, 1)?, 1) == a;
    Ok(GandhiParams {
        k,
        a,
        matches_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::is_prime;
    use crate::error::Error;

    #[test]
    fn filter_examples() {
        let five = ko_exceptional_filter(5).unwrap();
        assert_eq!(
            five,
            vec![
                KoCandidate {
                    k: 1,
                    a: 4,
                    matches_delta: true
                },
                KoCandidate {
                    k: 3,
                    a: 2,
                    matches_delta: true
                },
            ]
        );
        assert!(five.iter().all(|c| c.k != 2));
        let eleven = ko_exceptional_filter(11).unwrap();
        assert!(eleven.iter().any(|c| c.k == 3 && c.a == 7));
        assert!(eleven
            .iter()
            .all(|c| c.k % 2 == 1 && (24 * c.a) % 11 == c.k));
        assert_eq!(ko_exceptional_filter(4), Err(Error::InvalidPrime(4)));
    }

    #[test]
    fn candidates_always_match_delta() {
        for ell in (5..200).filter(|&p| is_prime(p)) {
            assert!(ko_exceptional_filter(ell)
                .unwrap()
                .iter()
                .all(|c| c.matches_delta));
        }
    }

    #[test]
    fn gandhi_examples() {
        assert_eq!(
            gandhi_params(5).unwrap(),
            GandhiParams {
                k: 2,
                a: 3,
                matches_delta: true
            }
        );
        assert_eq!(
            gandhi_params(7).unwrap(),
            GandhiParams {
                k: 4,
                a: 6,
                matches_delta: true
            }
        );
        assert_eq!(
            gandhi_params(13).unwrap(),
            GandhiParams {
                k: 10,
                a: 8,
                matches_delta: true
            }
        );
        for ell in (5..200).filter(|&p| is_prime(p)) {
            assert!(gandhi_params(ell).unwrap().matches_delta);
        }
    }
}
