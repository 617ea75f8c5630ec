//! Parameter sweep over `(ell, m, k)` producing a table of congruence families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, CongruenceClaim};
use super::chain::certify_chain;
use super::lift::lift;
use crate::coefficients::{is_prime, Modulus};
use crate::error::Result;
use crate::par::{map_slice, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub ell_max: u64,
    pub m_max: u32,
    pub k_max: u64,
}

/// How a family entered the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    /// The representative `k` itself was certified.
    Direct,
    /// A larger `from_k` in the same class was certified and shifted down.
    Lifted { from_k: u64, shift: i64 },
}

/// The family `p_{k + ell^m r}(ell^m n + a) = 0 (mod ell^m)`, `r >= 0`, with
/// `1 <= k <= ell^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub family: CongruenceClaim,
    pub label: String,
    pub origin: Origin,
    /// Certificate for the `k` that was actually checked.
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTable {
    pub params: SearchParams,
    /// Number of `(ell, m, k)` chains examined.
    pub attempted: usize,
    /// Sorted by `(ell, m, k, a)`.
    pub rows: Vec<FamilyRow>,
}

impl SearchTable {
    pub fn families(&self) -> Vec<CongruenceClaim> {
        self.rows.iter().map(|r| r.family).collect()
    }
}

/// `p_{k+ell^m r}(ell^m n+a)`, with `ell^m` written as `ell^m` when `m > 1`.
pub fn family_label(claim: &CongruenceClaim) -> String {
    let power = if claim.m == 1 {
        claim.ell.to_string()
    } else {
        format!("{}^{}", claim.ell, claim.m)
    };
    format!("p_{{{}+{}r}}({}n+{})", claim.k, power, power, claim.a)
}

/// All `(ell, m, k)` the sweep visits: primes `5 <= ell <= ell_max`,
/// `1 <= m <= m_max`, `1 <= k <= k_max`, `k = -4 (mod ell^(m-1))`.
pub fn search_tasks(params: &SearchParams) -> Vec<(u64, u32, u64)> {
    let mut tasks = Vec::new();
    for ell in (5..=params.ell_max).filter(|&p| is_prime(p)) {
        for m in 1..=params.m_max {
            let Ok(md) = Modulus::new(ell, m) else { break };
            let lower = md.value() / ell;
            for k in (1..=params.k_max).filter(|k| (k + 4) % lower == 0) {
                tasks.push((ell, m, k));
            }
        }
    }
    tasks
}

/// Certifies every task and folds the successes into families.
///
/// Distinct tasks are independent and run under `exec`; the table is sorted,
/// so its content does not depend on scheduling.
pub fn search(params: &SearchParams, exec: Execution) -> Result<SearchTable> {
    let tasks = search_tasks(params);
    let rows = search_tasks_run(&tasks, exec)?;
    Ok(SearchTable {
        params: *params,
        attempted: tasks.len(),
        rows,
    })
}

/// Runs an explicit list of `(ell, m, k)` chains and folds the certified
/// ones into sorted, deduplicated family rows.
pub fn search_tasks_run(tasks: &[(u64, u32, u64)], exec: Execution) -> Result<Vec<FamilyRow>> {
    let outcomes = map_slice(exec, tasks, |&(ell, m, k)| certify_chain(k, ell, m));
    let mut families: BTreeMap<CongruenceClaim, FamilyRow> = BTreeMap::new();
    for outcome in outcomes {
        let Some(cert) = outcome?.into_certificate() else {
            continue;
        };
        let claim = cert.claim;
        let step = claim.modulus().value();
        let k0 = (claim.k - 1) % step + 1;
        let family = CongruenceClaim { k: k0, ..claim };
        let origin = if k0 == claim.k {
            Origin::Direct
        } else {
            let shift = -(((claim.k - k0) / step) as i64);
            let lifted = lift(&cert, shift)?;
            debug_assert_eq!(lifted.last().map(|d| d.claim), Some(family));
            Origin::Lifted {
                from_k: claim.k,
                shift,
            }
        };
        let row = FamilyRow {
            family,
            label: family_label(&family),
            origin,
            certificate: cert,
        };
        match families.get(&family) {
            Some(existing) if existing.origin <= row.origin => {}
            _ => {
                families.insert(family, row);
            }
        }
    }
    Ok(families.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(table: &SearchTable) -> Vec<(u64, u64, u64)> {
        table
            .rows
            .iter()
            .map(|r| (r.family.modulus().value(), r.family.k, r.family.a))
            .collect()
    }

    #[test]
    fn labels() {
        let c = CongruenceClaim {
            ell: 5,
            m: 1,
            k: 1,
            a: 4,
        };
        assert_eq!(family_label(&c), "p_{1+5r}(5n+4)");
        let c = CongruenceClaim {
            ell: 11,
            m: 2,
            k: 95,
            a: 9,
        };
        assert_eq!(family_label(&c), "p_{95+11^2r}(11^2n+9)");
    }

    #[test]
    fn tasks_respect_hypothesis() {
        let tasks = search_tasks(&SearchParams {
            ell_max: 7,
            m_max: 2,
            k_max: 30,
        });
        assert!(tasks
            .iter()
            .all(|&(ell, m, k)| m == 1 || (k + 4) % ell == 0));
        assert!(tasks.contains(&(5, 2, 1)) && !tasks.contains(&(5, 2, 2)));
        assert_eq!(tasks.iter().filter(|t| t.1 == 1).count(), 60);
    }

    #[test]
    fn mod_five_families() {
        let table = search(
            &SearchParams {
                ell_max: 5,
                m_max: 1,
                k_max: 12,
            },
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(triples(&table), vec![(5, 1, 4), (5, 2, 3)]);
        assert!(table.rows.iter().all(|r| r.origin == Origin::Direct));
    }

    #[test]
    fn direct_form_wins_over_shifted_duplicates() {
        // k = 1 and k = 6 both certify the same family.
        let table = search(
            &SearchParams {
                ell_max: 5,
                m_max: 1,
                k_max: 6,
            },
            Execution::Sequential,
        )
        .unwrap();
        let rows: Vec<_> = table.rows.iter().filter(|r| r.family.a == 4).collect();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].origin, Origin::Direct);
        assert_eq!(rows[0].certificate.claim.k, 1);
        assert!(
            Origin::Direct
                < Origin::Lifted {
                    from_k: 6,
                    shift: -1
                }
        );
    }

    #[test]
    fn strategies_agree() {
        let seq = search(
            &SearchParams {
                ell_max: 7,
                m_max: 1,
                k_max: 20,
            },
            Execution::Sequential,
        )
        .unwrap();
        let par = search(
            &SearchParams {
                ell_max: 7,
                m_max: 1,
                k_max: 20,
            },
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn mod_25_families() {
        let table = search(
            &SearchParams {
                ell_max: 5,
                m_max: 2,
                k_max: 25,
            },
            Execution::default(),
        )
        .unwrap();
        let m2: Vec<_> = triples(&table).into_iter().filter(|t| t.0 == 25).collect();
        assert_eq!(m2, vec![(25, 1, 24), (25, 6, 19), (25, 11, 14)]);
    }
}
