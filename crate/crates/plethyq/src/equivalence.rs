//! The decision kernel for plethystic equivalence λ ≡_ℓ^m μ, i.e.
//! s_λ(1,q,…,q^ℓ) = q^d s_μ(1,q,…,q^m): signed difference multisets, the two
//! complete key invariants (content/hook and pyramid), the equivalence
//! predicate, composition, the determinant-twist lifting divisor, and the
//! criterion for infinite conjugate families.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{Partition, PartitionError};
use crate::specialize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error("degree {ell} is below len(λ) − 1 = {min}")]
    DegreeTooSmall { ell: u32, min: usize },
    #[error("not a plethystic equivalence: {0}")]
    NotEquivalent(String),
    #[error("records do not chain: first ends at ({mu}, {m}), second starts at ({lambda}, {ell})")]
    MiddleMismatch {
        mu: Partition,
        m: u32,
        lambda: Partition,
        ell: u32,
    },
    #[error("column removal needs a partition with at least one incomplete column")]
    NothingLeft,
    #[error("internal disagreement between decision routes: {0}")]
    InternalDisagreement(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("malformed record: {0}")]
    BadRecord(String),
}

/// A signed multiset over positive integers, canonical (no zero
/// multiplicities).  Equality of these keys decides plethystic equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffMultiset {
    entries: BTreeMap<i64, i64>,
}

impl DiffMultiset {
    pub fn new() -> Self {
        DiffMultiset::default()
    }

    pub fn entries(&self) -> &BTreeMap<i64, i64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, key: i64, mult: i64) {
        debug_assert!(key > 0, "difference multiset keys must be positive");
        let e = self.entries.entry(key).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.entries.remove(&key);
        }
    }

    /// Canonical serialization "k:m;k:m;…" with keys ascending; used as the
    /// grouping key in the search engine.
    pub fn serialize_key(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(k, m)| format!("{k}:{m}"))
            .collect();
        parts.join(";")
    }
}

impl fmt::Display for DiffMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize_key())
    }
}

fn check_degree(lam: &Partition, ell: u32) -> Result<(), EquivalenceError> {
    if (ell as usize) + 1 < lam.len() {
        return Err(EquivalenceError::DegreeTooSmall {
            ell,
            min: lam.len() - 1,
        });
    }
    Ok(())
}

/// The complete invariant (C(λ)+ℓ+1) / H(λ): contents shifted by ℓ+1 minus
/// hook lengths, as a signed multiset.
pub fn content_hook_key(lam: &Partition, ell: u32) -> Result<DiffMultiset, EquivalenceError> {
    check_degree(lam, ell)?;
    let mut key = DiffMultiset::new();
    for (c, mult) in lam.content_multiset() {
        key.add(c + ell as i64 + 1, mult as i64);
    }
    for (h, mult) in lam.hook_multiset() {
        key.add(h as i64, -(mult as i64));
    }
    Ok(key)
}

/// The equivalent invariant Δ_ℓ(λ) / {1^ℓ, 2^{ℓ−1}, …, ℓ}.
pub fn pyramid_key(lam: &Partition, ell: u32) -> Result<DiffMultiset, EquivalenceError> {
    check_degree(lam, ell)?;
    let mut key = DiffMultiset::new();
    for (x, mult) in lam.pyramid(ell)?.entries {
        key.add(x as i64, mult as i64);
    }
    for x in 1..=ell as i64 {
        key.add(x, -(ell as i64 - x + 1));
    }
    Ok(key)
}

/// Decides λ ≡_ℓ^m μ; on success returns the shift d = b(λ) − b(μ) with
/// s_λ(1,…,q^ℓ) = q^d s_μ(1,…,q^m).
pub fn is_equivalent(
    lam: &Partition,
    ell: u32,
    mu: &Partition,
    m: u32,
) -> Result<Option<i64>, EquivalenceError> {
    let a = content_hook_key(lam, ell)?;
    let b = content_hook_key(mu, m)?;
    if a == b {
        Ok(Some(lam.min_weight() as i64 - mu.min_weight() as i64))
    } else {
        Ok(None)
    }
}

/// As [`is_equivalent`], but recomputes the answer by the pyramid key and by
/// direct polynomial comparison and errors if any route disagrees.
pub fn is_equivalent_validated(
    lam: &Partition,
    ell: u32,
    mu: &Partition,
    m: u32,
) -> Result<Option<i64>, EquivalenceError> {
    let by_key = is_equivalent(lam, ell, mu, m)?;
    let by_pyramid = pyramid_key(lam, ell)? == pyramid_key(mu, m)?;
    if by_key.is_some() != by_pyramid {
        return Err(EquivalenceError::InternalDisagreement(format!(
            "content/hook and pyramid keys disagree for ({lam},{ell}) vs ({mu},{m})"
        )));
    }
    let pa = specialize::schur_spec_hcf(lam, ell).shift(-(lam.min_weight() as i64));
    let pb = specialize::schur_spec_hcf(mu, m).shift(-(mu.min_weight() as i64));
    if by_key.is_some() != (pa == pb) {
        return Err(EquivalenceError::InternalDisagreement(format!(
            "key and polynomial routes disagree for ({lam},{ell}) vs ({mu},{m})"
        )));
    }
    Ok(by_key)
}

/// Whether the pair of degrees makes an equivalence prime: ℓ ≥ len(λ) and
/// m ≥ len(μ) (no degrees at the column-removal boundary).
pub fn is_prime(lam: &Partition, ell: u32, mu: &Partition, m: u32) -> bool {
    ell as usize >= lam.len() && m as usize >= mu.len()
}

/// A verified equivalence λ ≡_ℓ^m μ with its shift, lifting data, primality,
/// and classification labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceRecord {
    pub lambda: Partition,
    pub ell: u32,
    pub mu: Partition,
    pub m: u32,
    /// Shift d = b(λ) − b(μ).
    pub d: i64,
    /// Twice the lifting divisor: D2 = −ℓ|λ| + m|μ| = −2d.
    #[serde(rename = "D2")]
    pub d2: i64,
    pub prime: bool,
    pub labels: Vec<String>,
}

impl EquivalenceRecord {
    /// Builds and verifies the record for λ ≡_ℓ^m μ.
    pub fn new(lam: Partition, ell: u32, mu: Partition, m: u32) -> Result<Self, EquivalenceError> {
        let d = is_equivalent(&lam, ell, &mu, m)?.ok_or_else(|| {
            EquivalenceError::NotEquivalent(format!("({lam},{ell}) vs ({mu},{m})"))
        })?;
        let d2 = -(ell as i64) * lam.size() as i64 + m as i64 * mu.size() as i64;
        debug_assert_eq!(d2, -2 * d, "degree and weight shifts must agree");
        let prime = is_prime(&lam, ell, &mu, m);
        Ok(EquivalenceRecord {
            lambda: lam,
            ell,
            mu,
            m,
            d,
            d2,
            prime,
            labels: Vec::new(),
        })
    }

    /// The lifting divisor D: the equivalence lifts to det^{−D} ⊗ − on GL₂;
    /// always an integer.
    pub fn lift_divisor(&self) -> i64 {
        debug_assert_eq!(self.d2 % 2, 0);
        self.d2 / 2
    }

    /// Whether the equivalence lifts to the subgroup with determinant in the
    /// d-th roots of unity: true iff d divides D.
    pub fn lifts_to_subgroup(&self, d: u32) -> bool {
        self.lift_divisor().rem_euclid(d as i64) == 0
    }

    /// Whether the equivalence lifts to GL₂ itself (equal degrees ℓ|λ| = m|μ|).
    pub fn lifts_to_gl(&self) -> bool {
        self.d2 == 0
    }

    /// Re-checks every stored field against a fresh verification.
    pub fn check(&self) -> Result<(), EquivalenceError> {
        let fresh = EquivalenceRecord::new(self.lambda.clone(), self.ell, self.mu.clone(), self.m)?;
        if fresh.d != self.d || fresh.d2 != self.d2 || fresh.prime != self.prime {
            return Err(EquivalenceError::BadRecord(format!(
                "stored (d={}, D2={}, prime={}) but verified (d={}, D2={}, prime={})",
                self.d, self.d2, self.prime, fresh.d, fresh.d2, fresh.prime
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("record serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, EquivalenceError> {
        serde_json::from_value(v.clone()).map_err(|e| EquivalenceError::BadRecord(e.to_string()))
    }
}

impl fmt::Display for EquivalenceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) =[{},{}]= ({}), d={}, D={}",
            self.lambda,
            self.ell,
            self.m,
            self.mu,
            self.d,
            self.lift_divisor()
        )
    }
}

/// Chains r1: λ ≡_ℓ^m μ with r2: μ ≡_m^{m'} ν into λ ≡_ℓ^{m'} ν.
pub fn compose(
    r1: &EquivalenceRecord,
    r2: &EquivalenceRecord,
) -> Result<EquivalenceRecord, EquivalenceError> {
    if r1.mu != r2.lambda || r1.m != r2.ell {
        return Err(EquivalenceError::MiddleMismatch {
            mu: r1.mu.clone(),
            m: r1.m,
            lambda: r2.lambda.clone(),
            ell: r2.ell,
        });
    }
    let rec = EquivalenceRecord::new(r1.lambda.clone(), r1.ell, r2.mu.clone(), r2.m)?;
    debug_assert_eq!(rec.d, r1.d + r2.d, "shifts add under composition");
    Ok(rec)
}

/// The column-removal equivalence λ ≡_{len(λ)−1}^{len(λ)−1} λ̄ at the
/// degenerate degree, where λ̄ drops all full-height columns.
pub fn column_removal_record(lam: &Partition) -> Result<EquivalenceRecord, EquivalenceError> {
    let bar = lam.remove_full_columns()?;
    if bar.is_empty() {
        return Err(EquivalenceError::NothingLeft);
    }
    let ell = (lam.len() - 1) as u32;
    EquivalenceRecord::new(lam.clone(), ell, bar, ell)
}

/// Whether there are infinitely many equivalences between λ and μ (at
/// shifted degree pairs): true iff H(λ) = H(μ) and C(λ) + d = C(μ) for some
/// shift d; equivalently λ = μ, or μ = λ′ with epar(λ) = spar(λ)′.  Both
/// routes are computed and compared.
pub fn infinite_family_criterion(
    lam: &Partition,
    mu: &Partition,
) -> Result<Option<i64>, EquivalenceError> {
    if lam.is_empty() || mu.is_empty() {
        return Err(EquivalenceError::Partition(PartitionError::Empty));
    }
    // Route 1: multisets.  Any witnessing shift must align the minima.
    let d = lam.len() as i64 - mu.len() as i64;
    let contents_shift: BTreeMap<i64, u32> = lam
        .content_multiset()
        .into_iter()
        .map(|(c, mult)| (c + d, mult))
        .collect();
    let by_multisets =
        lam.hook_multiset() == mu.hook_multiset() && contents_shift == mu.content_multiset();
    // Route 2: structure.
    let by_structure = if lam == mu {
        true
    } else if *mu == lam.conjugate() {
        let stats = lam.durfee_stats()?;
        stats.east_partition == stats.south_partition.conjugate()
    } else {
        false
    };
    if by_multisets != by_structure {
        return Err(EquivalenceError::InternalDisagreement(format!(
            "multiset and structural routes disagree for λ={lam}, μ={mu}"
        )));
    }
    Ok(by_multisets.then_some(if lam == mu { 0 } else { d }))
}

/// Twice the degree statistic d(λ) at level ℓ:
/// 2d(λ) = Σ_j j(ℓ+1−j)·δ(λ)_j − 2·C(ℓ+2,3)/2, satisfying
/// ℓ|λ| − 2b(λ) = 2d(λ).
pub fn d_statistic_doubled(lam: &Partition, ell: u32) -> Result<i64, EquivalenceError> {
    if (ell as usize) < lam.len() {
        return Err(EquivalenceError::DegreeTooSmall {
            ell,
            min: lam.len(),
        });
    }
    let diffs = lam.differences(ell)?;
    let ell = ell as i64;
    let sum: i64 = diffs
        .iter()
        .enumerate()
        .map(|(j0, &delta)| {
            let j = j0 as i64 + 1;
            j * (ell + 1 - j) * delta as i64
        })
        .sum();
    let correction = (ell + 2) * (ell + 1) * ell / 6;
    Ok(sum - correction)
}
