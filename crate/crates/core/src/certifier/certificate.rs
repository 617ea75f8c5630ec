//! Claims, certificates and refutations.
//!
//! A certificate serializes to a single JSON object on one line (see
//! [`Certificate::to_line`]); a file of certificates is one object per line.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coefficients::Modulus;
use crate::error::{Error, Result};

/// `p_k(ell^m n + a) = 0 (mod ell^m)` for all `n >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub ell: u64,
    pub m: u32,
    pub k: u64,
    pub a: u64,
}

impl CongruenceClaim {
    pub fn new(ell: u64, m: u32, k: u64, a: u64) -> Result<Self> {
        let modulus = Modulus::new(ell, m)?;
        if a >= modulus.value() {
            return Err(Error::InvalidParameter(format!(
                "residue {a} not reduced mod {modulus}"
            )));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        Ok(CongruenceClaim { ell, m, k, a })
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.ell, self.m).expect("validated on construction")
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let md = self.modulus().value();
        write!(f, "p_{}({}n+{}) = 0 mod {}", self.k, md, self.a, md)
    }
}

/// How a certificate was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// Single top-level finite check, lower levels taken from priors.
    TopLevel,
    /// Finite checks at every level `1..=m`.
    Chain,
    /// Shift of a certified chain by `shift * ell^m` components.
    Lift { base_k: u64, shift: i64 },
}

/// One nontrivial finite-check value: `p_k(argument) mod ell^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedValue {
    pub n: u64,
    pub argument: u64,
    pub value: u64,
}

/// Evidence for one level `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEvidence {
    pub r: u32,
    pub modulus: u64,
    /// `(-delta_{k,ell,r}) mod ell^r`.
    pub target: u64,
    pub delta: String,
    /// Number of indices `n` the finite condition ranges over.
    pub bound: u64,
    /// Only indices with a nonnegative argument; the rest are zero by convention.
    pub checked: Vec<CheckedValue>,
    /// SHA-256 (hex) over the lines `n,argument,value\n` of `checked`.
    pub digest: String,
}

impl LevelEvidence {
    pub fn digest_of(checked: &[CheckedValue]) -> String {
        let mut hasher = Sha256::new();
        for c in checked {
            hasher.update(format!("{},{},{}\n", c.n, c.argument, c.value).as_bytes());
        }
        hex::encode(hasher.finalize())
    }

    pub fn digest_matches(&self) -> bool {
        Self::digest_of(&self.checked) == self.digest
    }

    pub fn all_zero(&self) -> bool {
        self.checked.iter().all(|c| c.value == 0)
    }
}

/// Record of the `k = -4 (mod ell^(m-1))` hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub modulus: u64,
    pub k_residue: u64,
    pub holds: bool,
}

impl HypothesisRecord {
    pub fn evaluate(k: u64, ell: u64, m: u32) -> Self {
        let modulus = ell.pow(m - 1);
        let k_residue = k % modulus;
        let holds = (k + 4).is_multiple_of(modulus);
        HypothesisRecord {
            modulus,
            k_residue,
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: CongruenceClaim,
    pub method: Method,
    pub hypothesis: HypothesisRecord,
    /// Ordered by level.
    pub levels: Vec<LevelEvidence>,
}

impl Certificate {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        serde_json::from_str(line.trim()).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn level(&self, r: u32) -> Option<&LevelEvidence> {
        self.levels.iter().find(|l| l.r == r)
    }

    /// Whether evidence is present for every level `1..=m`.
    pub fn is_complete_chain(&self) -> bool {
        (1..=self.claim.m).all(|r| self.level(r).is_some())
    }

    pub fn checked_count(&self) -> usize {
        self.levels.iter().map(|l| l.checked.len()).sum()
    }
}

/// First failing finite check.
///
/// This does not show the claim is false: the finite criterion is an
/// equivalence only under its hypotheses, including congruences at all lower
/// levels. A refutation says the hypotheses were not established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub claim: CongruenceClaim,
    pub r: u32,
    pub n: u64,
    pub argument: u64,
    pub value: u64,
    pub note: String,
}

impl Refutation {
    pub const NOTE: &'static str = "hypotheses not established";
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: level {} fails at n = {} (p_{}({}) = {} mod {}^{}); {}",
            self.claim,
            self.r,
            self.n,
            self.claim.k,
            self.argument,
            self.value,
            self.claim.ell,
            self.r,
            self.note
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ChainOutcome {
    Certified(Certificate),
    Refuted(Refutation),
}

impl ChainOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ChainOutcome::Certified(c) => Some(c),
            ChainOutcome::Refuted(_) => None,
        }
    }

    pub fn into_certificate(self) -> Option<Certificate> {
        match self {
            ChainOutcome::Certified(c) => Some(c),
            ChainOutcome::Refuted(_) => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, ChainOutcome::Certified(_))
    }
}
