//! The search engine and theorem verifiers: enumerate all plethystic
//! equivalences within bounds by canonical-key grouping, label each record
//! against the classification theorems, and run finite-window verifications
//! of the classification results (conjugates, complements, rectangles,
//! two-row/two-column/hook families, equal degree, solitary staircases).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivalence::{
    content_hook_key, is_equivalent, is_prime, EquivalenceError, EquivalenceRecord,
};
use crate::irreducible::irreducible_partition_predicate;
use crate::partitions::{Partition, PartitionError};
use crate::specialize::schur_spec_hcf;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Hard cap on the number of (partition, degree) items a single search may
/// enumerate.
pub const MAX_SEARCH_ITEMS: u64 = 20_000_000;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("search space of {estimate} items exceeds the limit of {limit}")]
    LimitExceeded { estimate: u64, limit: u64 },
    #[error("the exceptional family requires degree at least 5, got {ell}")]
    EllTooSmall { ell: u32 },
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Bounds for [`search_equivalences`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchBounds {
    pub max_size: u32,
    pub max_ell: u32,
    pub max_m: u32,
    #[serde(default)]
    pub prime_only: bool,
    #[serde(default)]
    pub equal_degree_only: bool,
    #[serde(default)]
    pub include_self_pairs: bool,
}

impl SearchBounds {
    pub fn new(max_size: u32, max_ell: u32, max_m: u32) -> Self {
        SearchBounds {
            max_size,
            max_ell,
            max_m,
            prime_only: false,
            equal_degree_only: false,
            include_self_pairs: false,
        }
    }
}

/// Runs a closure inside a thread pool with the requested number of worker
/// threads (`None` = the default pool).  Without the `parallel` feature the
/// closure simply runs on the calling thread.
#[cfg(feature = "parallel")]
pub fn run_with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("failed to build thread pool")
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<R>(threads: Option<usize>, f: impl FnOnce() -> R) -> R {
    let _ = threads;
    f()
}

fn canon_key(p: &Partition, n: u32) -> (u64, Vec<u32>, u32) {
    (p.size(), p.parts().to_vec(), n)
}

fn record_sort_key(r: &EquivalenceRecord) -> (u64, Vec<u32>, u32, u64, Vec<u32>, u32) {
    (
        r.lambda.size(),
        r.lambda.parts().to_vec(),
        r.ell,
        r.mu.size(),
        r.mu.parts().to_vec(),
        r.m,
    )
}

fn key_items(bounds: &SearchBounds) -> Result<Vec<(Partition, u32)>, ClassifyError> {
    let degree_cap = bounds.max_ell.max(bounds.max_m);
    let partitions = Partition::all_up_to_size(bounds.max_size);
    let estimate = partitions.len() as u64 * degree_cap as u64;
    if estimate > MAX_SEARCH_ITEMS {
        return Err(ClassifyError::LimitExceeded {
            estimate,
            limit: MAX_SEARCH_ITEMS,
        });
    }
    let mut items = Vec::new();
    for p in partitions {
        let lo = 1.max(p.len() as u32 - 1);
        for n in lo..=degree_cap {
            items.push((p.clone(), n));
        }
    }
    Ok(items)
}

fn serialized_keys(items: &[(Partition, u32)], parallel: bool) -> Vec<String> {
    let key_of = |(p, n): &(Partition, u32)| {
        content_hook_key(p, *n)
            .expect("degree is at least len − 1 by construction")
            .serialize_key()
    };
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(key_of).collect();
    }
    let _ = parallel;
    items.iter().map(key_of).collect()
}

/// Enumerates every plethystic equivalence within the bounds.  Pairs are
/// canonically oriented by (|λ|, λ lexicographic, ℓ) ≤ (|μ|, μ lexicographic,
/// m), deduplicated, verified, labelled, and returned in a deterministic
/// order.  Self pairs (λ,ℓ) = (μ,m) are excluded unless requested.
pub fn search_equivalences(bounds: &SearchBounds) -> Result<Vec<EquivalenceRecord>, ClassifyError> {
    search_impl(bounds, true)
}

/// As [`search_equivalences`] but forces a single-threaded key pass; used as
/// the baseline in benchmarks.
pub fn search_equivalences_sequential(
    bounds: &SearchBounds,
) -> Result<Vec<EquivalenceRecord>, ClassifyError> {
    search_impl(bounds, false)
}

fn search_impl(
    bounds: &SearchBounds,
    parallel: bool,
) -> Result<Vec<EquivalenceRecord>, ClassifyError> {
    let items = key_items(bounds)?;
    let keys = serialized_keys(&items, parallel);
    let mut groups: HashMap<&str, Vec<usize>> = HashMap::new();
    for (idx, key) in keys.iter().enumerate() {
        groups.entry(key).or_default().push(idx);
    }
    let mut records = Vec::new();
    let mut emit = |li: usize, ri: usize| -> Result<(), ClassifyError> {
        let (lam, ell) = &items[li];
        let (mu, m) = &items[ri];
        if *ell > bounds.max_ell || *m > bounds.max_m {
            return Ok(());
        }
        if bounds.equal_degree_only && ell != m {
            return Ok(());
        }
        if bounds.prime_only && !is_prime(lam, *ell, mu, *m) {
            return Ok(());
        }
        let mut record = EquivalenceRecord::new(lam.clone(), *ell, mu.clone(), *m)?;
        record.labels = label_record(&record);
        records.push(record);
        Ok(())
    };
    for indices in groups.values() {
        let mut members = indices.clone();
        members.sort_by_key(|&i| canon_key(&items[i].0, items[i].1));
        for (pos, &li) in members.iter().enumerate() {
            if bounds.include_self_pairs {
                emit(li, li)?;
            }
            for &ri in &members[pos + 1..] {
                emit(li, ri)?;
            }
        }
    }
    records.sort_by_key(record_sort_key);
    Ok(records)
}

// ---------------------------------------------------------------------------
// Shape helpers for labelling.

fn rect(a: u32, b: u32) -> Partition {
    Partition::new(vec![a; b as usize])
}

/// (a+1, 1^leg) for arm, leg ≥ 0.
fn hook(arm: u32, leg: u32) -> Partition {
    let mut parts = vec![arm + 1];
    parts.extend(std::iter::repeat_n(1, leg as usize));
    Partition::new(parts)
}

/// Some((a, b)) when p = (a^b) is a non-empty rectangle.
fn as_rectangle(p: &Partition) -> Option<(u32, u32)> {
    let parts = p.parts();
    let first = *parts.first()?;
    parts
        .iter()
        .all(|&x| x == first)
        .then_some((first, parts.len() as u32))
}

/// Some((arm, leg)) when p = (arm+1, 1^leg) is a proper hook (arm, leg ≥ 1).
fn as_proper_hook(p: &Partition) -> Option<(u32, u32)> {
    let parts = p.parts();
    if parts.len() < 2 || parts[0] < 2 || parts[1..].iter().any(|&x| x != 1) {
        return None;
    }
    Some((parts[0] - 1, parts.len() as u32 - 1))
}

/// Some((a, b)) when p = (2^a, 1^b) with a ≥ 1 (at most two columns).
fn as_two_column(p: &Partition) -> Option<(u32, u32)> {
    if p.is_empty() || p.a() != 2 {
        return None;
    }
    let twos = p.parts().iter().filter(|&&x| x == 2).count() as u32;
    Some((twos, p.len() as u32 - twos))
}

fn qualifies_for_table(p: &Partition) -> bool {
    p.len() == 2 || p.a() == 2 || as_proper_hook(p).is_some()
}

/// Strips the columns of length ℓ+1 from λ: Some(core) with λ = core plus t
/// full columns, or None if λ has more than ℓ+1 rows.
fn strip_full_columns(p: &Partition, ell: u32) -> Option<Partition> {
    if p.len() > ell as usize + 1 {
        return None;
    }
    let t = p.part(ell as usize + 1);
    let parts: Vec<u32> = p.parts().iter().map(|&x| x - t).collect();
    Some(Partition::from_parts_with_zeros(&parts).expect("weakly decreasing by construction"))
}

fn durfee_condition(p: &Partition) -> bool {
    match p.durfee_stats() {
        Ok(stats) => stats.east_partition == stats.south_partition.conjugate(),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// Labelling.

/// Matches one orientation of a record against the sixteen families (a)–(p)
/// of the two-row/two-column/hook classification and collects the letters.
fn table_letters_oriented(
    lam: &Partition,
    ell: u32,
    mu: &Partition,
    m: u32,
    letters: &mut Vec<char>,
) {
    let le = ell as i64;
    let lm = m as i64;
    if lam == mu && ell == m {
        if as_proper_hook(lam).is_some() {
            letters.push('a');
        }
        if lam.len() == 2 {
            letters.push('c');
        }
        if lam.a() == 2 {
            letters.push('g');
        }
    }
    if let Some((a, b)) = as_proper_hook(lam) {
        if *mu == lam.conjugate() && lm - le == a as i64 - b as i64 {
            letters.push('b');
        }
    }
    if lam.len() == 2 && lam.part(1) == lam.part(2) && mu.len() == 2 && mu.part(1) == mu.part(2) {
        let (x, y) = (lam.part(1), mu.part(1));
        if ell == y + 1 && m == x + 1 {
            letters.push('d');
        }
    }
    if ell == 2 && m == 2 && lam.len() == 2 {
        if let Ok(comp) = lam.complement_in_box(3) {
            if *mu == comp {
                letters.push('e');
            }
        }
    }
    if ell >= 3
        && lam.parts() == [2 * ell, ell + 2]
        && m == ell + 2
        && mu.parts() == [2 * ell - 2, ell - 2]
    {
        letters.push('f');
    }
    if let (Some((2, a)), Some((2, c))) = (as_rectangle(lam), as_rectangle(mu)) {
        if a >= 2 && c >= 2 && ell + 1 == a && m + 1 == c {
            letters.push('h');
        }
    }
    if let (Some((a, b)), Some((c, b2))) = (as_two_column(lam), as_two_column(mu)) {
        if a >= 2 && c >= 2 && b == b2 && ell == m && ell + 1 == a + b + c {
            letters.push('i');
        }
        if a >= 2 && c == 1 && b == b2 && ell == m && ell == a + b {
            letters.push('l');
        }
    }
    if lam.len() == 2 && lam.part(2) >= 2 && lam.part(1) > lam.part(2) {
        let (x, y) = (lam.part(1), lam.part(2));
        if ell == x - y + 1
            && ((m == x && *mu == hook(x - y, y)) || (m == 2 * (x - y) && *mu == hook(y, x - y)))
        {
            letters.push('j');
        }
    }
    if ell >= 3
        && lam.parts() == [3 * ell - 3, 2 * ell - 1]
        && ((m == 3 * ell - 4 && *mu == hook(ell, ell - 2))
            || (m == 3 * ell - 2 && *mu == hook(ell - 2, ell)))
    {
        letters.push('k');
    }
    if let Some((a, c)) = as_two_column(lam) {
        if a >= 2 && c >= 1 && *mu == hook(c, 1) && ell == a + c && m == a + 1 {
            letters.push('m');
        }
    }
    if lam.len() == 2 && lam.part(1) == lam.part(2) {
        let x = lam.part(1);
        if *mu == lam.conjugate() && lm - le == x as i64 - 2 {
            letters.push('n');
        }
        if let Some((2, y)) = as_rectangle(mu) {
            if ell == y + 1 && m == x + y - 1 {
                letters.push('o');
            }
        }
    }
    if lam.parts() == [6, 5] && ell == 3 && mu.parts() == [2, 2, 2, 2, 1, 1, 1] && m == 7 {
        letters.push('p');
    }
}

/// Attaches every applicable classification label to a verified record.
pub fn label_record(r: &EquivalenceRecord) -> Vec<String> {
    let mut labels = Vec::new();
    let (lam, ell, mu, m) = (&r.lambda, r.ell, &r.mu, r.m);
    let identity = lam == mu && ell == m;
    if identity {
        labels.push("identity".to_string());
    }
    // Conjugate family: μ = λ′, epar(λ) = spar(λ)′, degrees (len(λ)−1+k,
    // len(μ)−1+k) for a common k ≥ 0.
    if *mu == lam.conjugate() && durfee_condition(lam) {
        let k_lam = ell as i64 - (lam.len() as i64 - 1);
        let k_mu = m as i64 - (mu.len() as i64 - 1);
        if k_lam == k_mu && k_lam >= 0 {
            labels.push("conjugate-family".to_string());
        }
    }
    let complement = ell == m
        && lam
            .complement_in_box(ell + 1)
            .map(|comp| comp == *mu)
            .unwrap_or(false);
    if complement {
        labels.push("complement".to_string());
    }
    // Rectangle: both endpoints rectangles and (a′, b′, ℓ−b′+1) a permutation
    // of (a, b, c) with c = m−b+1.
    let rect_match = |(a1, b1): (u32, u32), e1: u32, (a2, b2): (u32, u32), e2: u32| {
        if e2 + 1 < b2 || e1 < b1 {
            return false;
        }
        let c = e2 + 1 - b2;
        if c == 0 {
            return false;
        }
        let mut left = [a1, b1, e1 + 1 - b1];
        let mut right = [a2, b2, c];
        left.sort_unstable();
        right.sort_unstable();
        left == right
    };
    if let (Some(r1), Some(r2)) = (as_rectangle(lam), as_rectangle(mu)) {
        if rect_match(r1, ell, r2, m) || rect_match(r2, m, r1, ell) {
            labels.push("rectangle".to_string());
        }
    }
    let mut letters = Vec::new();
    table_letters_oriented(lam, ell, mu, m, &mut letters);
    table_letters_oriented(mu, m, lam, ell, &mut letters);
    letters.sort_unstable();
    letters.dedup();
    for letter in letters {
        labels.push(format!("table1-({letter})"));
    }
    if !r.prime {
        labels.push("column-removal-composite".to_string());
    }
    if ell == m && r.prime && !identity && !complement {
        labels.push("exceptional".to_string());
    }
    if labels.is_empty() {
        labels.push("unclassified".to_string());
    }
    labels
}

// ---------------------------------------------------------------------------
// The exceptional family.

/// The pair (λ[k,ℓ], μ[k,ℓ]) generating an exceptional equal-degree
/// equivalence at every ℓ ≥ 5 and k ≥ 0.
pub fn exceptional_family(k: u32, ell: u32) -> Result<(Partition, Partition), ClassifyError> {
    if ell < 5 {
        return Err(ClassifyError::EllTooSmall { ell });
    }
    let tail = (ell - 8.min(ell)) as usize;
    let lam_parts: Vec<u32> = match ell {
        5 => vec![8 + 5 * k, 7 + 4 * k, 2 + 2 * k, 2 + k],
        6 => vec![6 + k, 4 + k, 3 + k, 3 + k, 3],
        7 => vec![6 + k, 4 + k, 4 + k, 3 + k, 3 + k, 3],
        _ => {
            let mut v = vec![5 + k, 4 + k];
            v.extend(std::iter::repeat_n(3 + k, 4));
            v.push(3);
            v.extend(std::iter::repeat_n(1, tail));
            v
        }
    };
    let mu_parts: Vec<u32> = match ell {
        5 => vec![8 + 5 * k, 6 + 4 * k, 3 + 2 * k, k],
        6 => vec![6 + k, 3 + k, 3 + k, 3, 1],
        7 => vec![6 + k, 3 + k, 3 + k, 3, 1, 1],
        _ => {
            let mut v = vec![5 + k];
            v.extend(std::iter::repeat_n(3 + k, tail));
            v.extend([2 + k, 2 + k, 2, 1]);
            v
        }
    };
    Ok((
        Partition::from_parts_with_zeros(&lam_parts)?,
        Partition::from_parts_with_zeros(&mu_parts)?,
    ))
}

/// The multiset of pyramid entries shared by λ[k,8] and μ[k,8]^{∘9} at ℓ = 8.
pub fn exceptional_pyramid_multiset(k: u64) -> BTreeMap<u64, u32> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    for (x, c) in [(1, 4), (2, 4), (3, 2), (4, 3), (5, 3), (6, 1), (7, 1)] {
        *out.entry(x).or_insert(0) += c;
    }
    for (x, c) in [
        (1, 1),
        (2, 1),
        (3, 1),
        (4, 1),
        (5, 1),
        (6, 3),
        (7, 2),
        (8, 3),
        (9, 1),
        (10, 1),
        (11, 1),
        (12, 1),
        (13, 1),
    ] {
        *out.entry(x + k).or_insert(0) += c;
    }
    out
}

// ---------------------------------------------------------------------------
// Theorem verification.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Conjugates,
    MultiplePairs,
    Complements,
    Rectangles,
    OneRow,
    Irreducible,
    Table1,
    EqualDegree,
    Exceptional,
    Solitary,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::Conjugates,
        Theorem::MultiplePairs,
        Theorem::Complements,
        Theorem::Rectangles,
        Theorem::OneRow,
        Theorem::Irreducible,
        Theorem::Table1,
        Theorem::EqualDegree,
        Theorem::Exceptional,
        Theorem::Solitary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Conjugates => "conjugates",
            Theorem::MultiplePairs => "multiple-pairs",
            Theorem::Complements => "complements",
            Theorem::Rectangles => "rectangles",
            Theorem::OneRow => "one-row",
            Theorem::Irreducible => "irreducible",
            Theorem::Table1 => "table1",
            Theorem::EqualDegree => "equal-degree",
            Theorem::Exceptional => "exceptional",
            Theorem::Solitary => "solitary",
        }
    }

    /// Desk-scale default bounds per verifier.
    pub fn default_bounds(self) -> VerifyBounds {
        match self {
            Theorem::Conjugates => VerifyBounds {
                max_size: 12,
                max_ell: 8,
                max_m: 8,
                max_k: 4,
                max_mu_size: 12,
            },
            Theorem::MultiplePairs => VerifyBounds {
                max_size: 10,
                max_ell: 6,
                max_m: 6,
                max_k: 0,
                max_mu_size: 10,
            },
            Theorem::Complements => VerifyBounds {
                max_size: 12,
                max_ell: 8,
                max_m: 8,
                max_k: 0,
                max_mu_size: 12,
            },
            Theorem::Rectangles => VerifyBounds {
                max_size: 16,
                max_ell: 16,
                max_m: 16,
                max_k: 4,
                max_mu_size: 16,
            },
            Theorem::OneRow => VerifyBounds {
                max_size: 12,
                max_ell: 8,
                max_m: 8,
                max_k: 0,
                max_mu_size: 12,
            },
            Theorem::Irreducible => VerifyBounds {
                max_size: 12,
                max_ell: 4,
                max_m: 1,
                max_k: 0,
                max_mu_size: 12,
            },
            Theorem::Table1 => VerifyBounds {
                max_size: 18,
                max_ell: 0,
                max_m: 0,
                max_k: 0,
                max_mu_size: 18,
            },
            Theorem::EqualDegree => VerifyBounds {
                max_size: 20,
                max_ell: 4,
                max_m: 4,
                max_k: 0,
                max_mu_size: 20,
            },
            Theorem::Exceptional => VerifyBounds {
                max_size: 0,
                max_ell: 10,
                max_m: 10,
                max_k: 3,
                max_mu_size: 0,
            },
            Theorem::Solitary => VerifyBounds {
                max_size: 0,
                max_ell: 12,
                max_m: 12,
                max_k: 5,
                max_mu_size: 30,
            },
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem {s:?}"))
    }
}

/// Window bounds for [`verify_theorem`]; not every field is meaningful for
/// every verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyBounds {
    pub max_size: u32,
    pub max_ell: u32,
    pub max_m: u32,
    /// Family parameter bound (conjugate shift, exceptional k, staircase k).
    pub max_k: u32,
    /// Size bound for the scanned partner partition (solitary verifier).
    pub max_mu_size: u32,
}

/// Result of a finite-window theorem verification.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub bounds: VerifyBounds,
    pub pass: bool,
    pub checked: u64,
    pub counterexamples: Vec<String>,
}

/// Verifies the named theorem on the finite window given by the bounds and
/// reports pass/fail with counterexamples.
pub fn verify_theorem(
    theorem: Theorem,
    bounds: VerifyBounds,
) -> Result<TheoremReport, ClassifyError> {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    match theorem {
        Theorem::Conjugates => verify_conjugates(&bounds, &mut checked, &mut bad)?,
        Theorem::MultiplePairs => verify_multiple_pairs(&bounds, &mut checked, &mut bad)?,
        Theorem::Complements => verify_complements(&bounds, &mut checked, &mut bad)?,
        Theorem::Rectangles => verify_rectangles(&bounds, &mut checked, &mut bad)?,
        Theorem::OneRow => verify_one_row(&bounds, &mut checked, &mut bad)?,
        Theorem::Irreducible => verify_irreducible(&bounds, &mut checked, &mut bad)?,
        Theorem::Table1 => verify_table1(&bounds, &mut checked, &mut bad)?,
        Theorem::EqualDegree => verify_equal_degree(&bounds, &mut checked, &mut bad)?,
        Theorem::Exceptional => verify_exceptional(&bounds, &mut checked, &mut bad)?,
        Theorem::Solitary => verify_solitary(&bounds, &mut checked, &mut bad)?,
    }
    Ok(TheoremReport {
        theorem: theorem.name().to_string(),
        bounds,
        pass: bad.is_empty(),
        checked,
        counterexamples: bad,
    })
}

/// λ ≡ λ′ exactly at the shifted degree pairs when epar(λ) = spar(λ)′, and at
/// no degrees at all otherwise.
fn verify_conjugates(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    for lam in Partition::all_up_to_size(b.max_size) {
        let mu = lam.conjugate();
        let cond = durfee_condition(&lam);
        let lo_l = 1.max(lam.len() as u32 - 1);
        let lo_m = 1.max(mu.len() as u32 - 1);
        for ell in lo_l..=b.max_ell {
            for m in lo_m..=b.max_m {
                *checked += 1;
                let found = is_equivalent(&lam, ell, &mu, m)?.is_some();
                let shifted =
                    ell as i64 - (lam.len() as i64 - 1) == m as i64 - (mu.len() as i64 - 1);
                let expected = cond && shifted;
                if found != expected {
                    bad.push(format!(
                        "λ={lam}, μ=λ′={mu}, (ℓ,m)=({ell},{m}): found={found}, expected={expected}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Three equivalence pairs — or two prime pairs — between fixed λ and μ force
/// λ = μ or the conjugate-family condition; two equal-degree pairs force λ = μ.
fn verify_multiple_pairs(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    let records = search_equivalences(&SearchBounds::new(b.max_size, b.max_ell, b.max_m))?;
    let mut groups: HashMap<(Vec<u32>, Vec<u32>), Vec<&EquivalenceRecord>> = HashMap::new();
    for r in &records {
        groups
            .entry((r.lambda.parts().to_vec(), r.mu.parts().to_vec()))
            .or_default()
            .push(r);
    }
    for group in groups.values() {
        *checked += 1;
        let lam = &group[0].lambda;
        let mu = &group[0].mu;
        // Distinct partitions within a key group, so the family condition is
        // the only admissible explanation.
        let cond = *mu == lam.conjugate() && durfee_condition(lam);
        let total = group.len();
        let prime = group.iter().filter(|r| r.prime).count();
        let equal_degree = group.iter().filter(|r| r.ell == r.m).count();
        if (total >= 3 || prime >= 2) && !cond {
            bad.push(format!("λ={lam}, μ={mu}: {total} pairs ({prime} prime) without the conjugate-family condition"));
        }
        if equal_degree >= 2 {
            bad.push(format!(
                "λ={lam}, μ={mu}: {equal_degree} equal-degree pairs with λ ≠ μ"
            ));
        }
    }
    Ok(())
}

/// λ ≡_ℓ^ℓ λ^{∘r} exactly when r = ℓ+1 or the complement is λ itself.
fn verify_complements(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    for lam in Partition::all_up_to_size(b.max_size) {
        for r in lam.len() as u32..=b.max_ell + 1 {
            let comp = lam.complement_in_box(r)?;
            for ell in (lam.len() as u32).max(comp.len() as u32).max(1)..=b.max_ell {
                *checked += 1;
                let found = is_equivalent(&lam, ell, &comp, ell)?.is_some();
                let expected = r == ell + 1 || comp == lam;
                if found != expected {
                    bad.push(format!(
                        "λ={lam}, r={r}, ℓ={ell}: found={found}, expected={expected}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Whether λ ≡_ℓ^{b+c−1} (a^b) is explained by column-padding a rectangle
/// (a′^b′) with (a′, b′, ℓ−b′+1) a permutation of (a, b, c).
fn rectangles_full_matches(lam: &Partition, ell: u32, a: u32, bb: u32, c: u32) -> bool {
    let Some(core) = strip_full_columns(lam, ell) else {
        return false;
    };
    let Some((a1, b1)) = as_rectangle(&core) else {
        return false;
    };
    if b1 > ell {
        return false;
    }
    let mut left = [a1, b1, ell - b1 + 1];
    let mut right = [a, bb, c];
    left.sort_unstable();
    right.sort_unstable();
    left == right
}

/// Six-fold rectangle equivalences all hold, and every searched equivalence
/// with a rectangle endpoint is of the column-padded permutation form.
fn verify_rectangles(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    let abc = b.max_k.max(1);
    for a in 1..=abc {
        for bb in 1..=abc {
            for c in 1..=abc {
                let triples = [
                    (rect(c, bb), a + bb - 1),
                    (rect(bb, c), a + c - 1),
                    (rect(bb, a), a + c - 1),
                ];
                for (mu, m) in triples {
                    *checked += 1;
                    if is_equivalent(&rect(a, bb), bb + c - 1, &mu, m)?.is_none() {
                        bad.push(format!(
                            "({a}^{bb}) at degree {} not equivalent to ({mu}) at degree {m}",
                            bb + c - 1
                        ));
                    }
                }
            }
        }
    }
    let records = search_equivalences(&SearchBounds::new(b.max_size, b.max_ell, b.max_m))?;
    for r in &records {
        let oriented = [
            (&r.lambda, r.ell, &r.mu, r.m),
            (&r.mu, r.m, &r.lambda, r.ell),
        ];
        for (lam, ell, mu, m) in oriented {
            if let Some((a, bb)) = as_rectangle(mu) {
                if m < bb {
                    continue; // degree below the rectangle: theorem is silent
                }
                let c = m + 1 - bb;
                *checked += 1;
                if !rectangles_full_matches(lam, ell, a, bb, c) {
                    bad.push(format!(
                        "{r} has a rectangle endpoint outside the classification"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// λ ≡_ℓ^c (a) exactly when λ is one of (a), (1^a), (c), (1^c), (a^c), (c^a)
/// padded by columns of length ℓ+1, at the respective degree.
fn verify_one_row(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    let partitions = Partition::all_up_to_size(b.max_size);
    for a in 1..=b.max_size {
        for c in 1..=b.max_m {
            let target = rect(a, 1);
            let forms = [
                (rect(a, 1), c),
                (rect(1, a), a + c - 1),
                (rect(c, 1), a),
                (rect(1, c), a + c - 1),
                (rect(a, c), c),
                (rect(c, a), a),
            ];
            for lam in &partitions {
                let lo = 1.max(lam.len() as u32 - 1);
                for ell in lo..=b.max_ell {
                    *checked += 1;
                    let found = is_equivalent(lam, ell, &target, c)?.is_some();
                    let expected = forms.iter().any(|(base, need_ell)| {
                        ell == *need_ell && strip_full_columns(lam, ell).as_ref() == Some(base)
                    });
                    if found != expected {
                        bad.push(format!(
                            "λ={lam}, ℓ={ell} vs ({a}) at degree {c}: found={found}, expected={expected}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The structural irreducibility predicate agrees with the specialization
/// being a run q^b(1 + q + ⋯ + q^n).
fn verify_irreducible(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    for lam in Partition::all_up_to_size(b.max_size) {
        for ell in 1..=b.max_ell {
            *checked += 1;
            let structural = irreducible_partition_predicate(&lam, ell);
            let oracle = if (ell as usize) + 1 >= lam.len() {
                let poly = schur_spec_hcf(&lam, ell);
                let run = !poly.is_zero()
                    && poly
                        .coeffs()
                        .iter()
                        .all(|c| *c == num_bigint::BigInt::from(1));
                run.then(|| (poly.max_exp().unwrap() - poly.min_exp().unwrap()) as u64)
            } else {
                None
            };
            if structural != oracle {
                bad.push(format!(
                    "λ={lam}, ℓ={ell}: structural={structural:?}, specialization={oracle:?}"
                ));
            }
        }
    }
    Ok(())
}

/// Every prime equivalence between two-row, two-column, or proper-hook
/// partitions carries a table label.
fn verify_table1(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    // Per-shape degree window: a(ν) + 2·len(ν) bounds every tabulated family.
    let mut items = Vec::new();
    for p in Partition::all_up_to_size(b.max_size) {
        if !qualifies_for_table(&p) {
            continue;
        }
        let hi = p.a() + 2 * p.len() as u32;
        let hi = if b.max_ell > 0 { hi.min(b.max_ell) } else { hi };
        for n in p.len() as u32..=hi {
            items.push((p.clone(), n));
        }
    }
    let keys = serialized_keys(&items, true);
    let mut groups: HashMap<&str, Vec<usize>> = HashMap::new();
    for (idx, key) in keys.iter().enumerate() {
        groups.entry(key).or_default().push(idx);
    }
    for indices in groups.values() {
        let mut members = indices.clone();
        members.sort_by_key(|&i| canon_key(&items[i].0, items[i].1));
        for (pos, &li) in members.iter().enumerate() {
            for &ri in &members[pos + 1..] {
                let (lam, ell) = &items[li];
                let (mu, m) = &items[ri];
                *checked += 1;
                let record = EquivalenceRecord::new(lam.clone(), *ell, mu.clone(), *m)?;
                let labels = label_record(&record);
                if !labels.iter().any(|l| l.starts_with("table1-")) {
                    bad.push(format!(
                        "{record} carries no table label (labels: {labels:?})"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// For ℓ ≤ 4, every prime equal-degree equivalence is the identity or the
/// box complement.
fn verify_equal_degree(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    let bounds = SearchBounds {
        max_size: b.max_size,
        max_ell: b.max_ell.min(4),
        max_m: b.max_ell.min(4),
        prime_only: true,
        equal_degree_only: true,
        include_self_pairs: false,
    };
    for r in search_equivalences(&bounds)? {
        *checked += 1;
        if r.labels.iter().any(|l| l == "exceptional") {
            bad.push(format!("{r} is exceptional at degree ≤ 4"));
        }
    }
    Ok(())
}

/// The family pairs (λ[k,ℓ], μ[k,ℓ]) are exceptional equivalences for every
/// k ≤ max_k and 5 ≤ ℓ ≤ max_ell, with the stated ℓ = 8 pyramid multiset.
fn verify_exceptional(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    for k in 0..=b.max_k {
        for ell in 5..=b.max_ell.max(5) {
            *checked += 1;
            let (lam, mu) = exceptional_family(k, ell)?;
            let equivalent = is_equivalent(&lam, ell, &mu, ell)?.is_some();
            let comp = lam.complement_in_box(ell + 1)?;
            let exceptional = equivalent && lam != mu && comp != mu;
            if !exceptional {
                bad.push(format!(
                    "k={k}, ℓ={ell}: λ={lam}, μ={mu} is not an exceptional equivalence"
                ));
                continue;
            }
            if ell == 8 {
                let expected = exceptional_pyramid_multiset(k as u64);
                let lam_entries = lam.pyramid(8)?.entries;
                let eta = mu.complement_in_box(9)?;
                let eta_entries = eta.pyramid(8)?.entries;
                if lam_entries != expected || eta_entries != expected {
                    bad.push(format!("k={k}, ℓ=8: pyramid multiset mismatch"));
                }
            }
        }
    }
    Ok(())
}

/// The staircase δ(k) admits only the forced complement equivalences.
/// Scanned for k ≥ 2: δ(1) = (1) genuinely has the extra reciprocal
/// equivalences (1) ≡ (n) (the contents of (1) lack the second-greatest
/// element the uniqueness argument cancels against), so the claim starts
/// at the two-row staircase.
fn verify_solitary(
    b: &VerifyBounds,
    checked: &mut u64,
    bad: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    // Key map over every candidate partner (μ, m) with m ≥ len(μ).
    let partners = Partition::all_up_to_size(b.max_mu_size);
    let mut by_key: HashMap<String, Vec<(usize, u32)>> = HashMap::new();
    for (idx, mu) in partners.iter().enumerate() {
        for m in (mu.len() as u32).max(1)..=b.max_m {
            let key = content_hook_key(mu, m)?.serialize_key();
            by_key.entry(key).or_default().push((idx, m));
        }
    }
    for k in 2..=b.max_k.max(2) {
        let delta = Partition::staircase(k);
        for ell in k..=b.max_ell {
            let key = content_hook_key(&delta, ell)?.serialize_key();
            let mut found: Vec<(Partition, u32)> = by_key
                .get(key.as_str())
                .map(|hits| {
                    hits.iter()
                        .map(|&(idx, m)| (partners[idx].clone(), m))
                        .filter(|(mu, _)| *mu != delta)
                        .collect()
                })
                .unwrap_or_default();
            found.sort_by_key(|(mu, m)| canon_key(mu, *m));
            let mut expected = Vec::new();
            if ell > k && ell <= b.max_m {
                let comp = delta.complement_in_box(ell + 1)?;
                if comp.size() <= b.max_mu_size as u64 && comp != delta {
                    expected.push((comp, ell));
                }
            }
            expected.sort_by_key(|(mu, m)| canon_key(mu, *m));
            *checked += 1;
            if found != expected {
                bad.push(format!(
                    "δ({k}) at ℓ={ell}: found {} partner(s), expected {}",
                    found.len(),
                    expected.len()
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exceptional census.

/// Histogram of exceptional equal-degree equivalences within a size bound.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub max_size: u32,
    /// The scanned degree window 5 ≤ ℓ ≤ max_ell; the published counts depend
    /// on it, so it is always reported alongside them.
    pub max_ell: u32,
    pub total: u64,
    pub by_ell: BTreeMap<u32, u64>,
    /// The smallest equal-size pair (lifting to GL₂), if any.
    pub min_equal_size: Option<EquivalenceRecord>,
}

/// Counts exceptional equivalences λ ≡_ℓ^ℓ μ (prime, λ ≠ μ, μ ≠ λ^{∘(ℓ+1)})
/// with |λ|, |μ| ≤ max_size over the window 5 ≤ ℓ ≤ max_ell
/// (default max_size + 6).
pub fn exceptional_census(
    max_size: u32,
    max_ell: Option<u32>,
) -> Result<CensusReport, ClassifyError> {
    let max_ell = max_ell.unwrap_or(max_size + 6);
    let partitions = Partition::all_up_to_size(max_size);
    let census_one = |ell: u32| -> Result<(u64, Vec<(usize, usize)>), ClassifyError> {
        let mut groups: HashMap<String, Vec<usize>> = HashMap::new();
        for (idx, lam) in partitions.iter().enumerate() {
            if lam.len() as u32 > ell {
                continue; // prime equivalences only
            }
            let key = content_hook_key(lam, ell)?.serialize_key();
            groups.entry(key).or_default().push(idx);
        }
        let mut count = 0u64;
        let mut pairs = Vec::new();
        for indices in groups.values() {
            let mut members = indices.clone();
            members.sort_by_key(|&i| canon_key(&partitions[i], 0));
            for (pos, &li) in members.iter().enumerate() {
                for &ri in &members[pos + 1..] {
                    let lam = &partitions[li];
                    let mu = &partitions[ri];
                    if lam.complement_in_box(ell + 1)? == *mu {
                        continue;
                    }
                    count += 1;
                    if lam.size() == mu.size() {
                        pairs.push((li, ri));
                    }
                }
            }
        }
        Ok((count, pairs))
    };
    type EllOutcome = (u32, Result<(u64, Vec<(usize, usize)>), ClassifyError>);
    #[cfg(feature = "parallel")]
    let per_ell: Vec<EllOutcome> = (5..=max_ell)
        .into_par_iter()
        .map(|ell| (ell, census_one(ell)))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let per_ell: Vec<EllOutcome> = (5..=max_ell).map(|ell| (ell, census_one(ell))).collect();
    let mut by_ell = BTreeMap::new();
    let mut total = 0u64;
    let mut min_equal_size: Option<EquivalenceRecord> = None;
    for (ell, outcome) in per_ell {
        let (count, pairs) = outcome?;
        if count > 0 {
            by_ell.insert(ell, count);
            total += count;
        }
        for (li, ri) in pairs {
            let record =
                EquivalenceRecord::new(partitions[li].clone(), ell, partitions[ri].clone(), ell)?;
            let better = match &min_equal_size {
                None => true,
                Some(best) => record_sort_key(&record) < record_sort_key(best),
            };
            if better {
                min_equal_size = Some(record);
            }
        }
    }
    Ok(CensusReport {
        max_size,
        max_ell,
        total,
        by_ell,
        min_equal_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        Partition::parse(text).unwrap()
    }

    fn record(l: &str, ell: u32, m: &str, mm: u32) -> EquivalenceRecord {
        let mut r = EquivalenceRecord::new(p(l), ell, p(m), mm).unwrap();
        r.labels = label_record(&r);
        r
    }

    #[test]
    fn search_matches_brute_force() {
        let bounds = SearchBounds::new(8, 5, 5);
        let fast = search_equivalences(&bounds).unwrap();
        assert_eq!(search_equivalences_sequential(&bounds).unwrap(), fast);
        let mut brute = Vec::new();
        let items = key_items(&bounds).unwrap();
        for (i, (lam, ell)) in items.iter().enumerate() {
            for (mu, m) in items.iter().skip(i + 1) {
                if is_equivalent(lam, *ell, mu, *m).unwrap().is_some() {
                    if canon_key(lam, *ell) <= canon_key(mu, *m) {
                        brute.push((lam.clone(), *ell, mu.clone(), *m));
                    } else {
                        brute.push((mu.clone(), *m, lam.clone(), *ell));
                    }
                }
            }
        }
        brute.sort_by_key(|(lam, ell, mu, m)| {
            (
                lam.size(),
                lam.parts().to_vec(),
                *ell,
                mu.size(),
                mu.parts().to_vec(),
                *m,
            )
        });
        let fast_tuples: Vec<_> = fast
            .iter()
            .map(|r| (r.lambda.clone(), r.ell, r.mu.clone(), r.m))
            .collect();
        assert_eq!(fast_tuples, brute);
        assert!(!fast.is_empty());
        for r in &fast {
            r.check().unwrap();
            assert!(!r.labels.is_empty());
        }
    }

    #[test]
    fn search_finds_known_pairs() {
        let records = search_equivalences(&SearchBounds::new(8, 6, 6)).unwrap();
        for n in 1..=6u32 {
            for ell in 1..=6u32 {
                if n >= ell || n * ell > 8 {
                    continue;
                }
                assert!(
                    records.iter().any(|r| r.lambda.parts() == [n]
                        && r.ell == ell
                        && r.mu.parts() == [ell]
                        && r.m == n),
                    "missing Hermite pair n={n}, ℓ={ell}"
                );
            }
        }
        let records = search_equivalences(&SearchBounds::new(19, 5, 5)).unwrap();
        assert!(records
            .iter()
            .any(|r| r.lambda == p("8,6,3") && r.mu == p("8,7,2,2") && r.ell == 5 && r.m == 5));
    }

    #[test]
    fn equal_degree_search_is_identity_or_complement() {
        let bounds = SearchBounds {
            max_size: 10,
            max_ell: 4,
            max_m: 4,
            prime_only: true,
            equal_degree_only: true,
            include_self_pairs: true,
        };
        let records = search_equivalences(&bounds).unwrap();
        assert!(!records.is_empty());
        for r in records {
            let complement = r.lambda.complement_in_box(r.ell + 1).unwrap() == r.mu;
            assert!(
                r.lambda == r.mu || complement,
                "unexpected equal-degree record {r}"
            );
        }
    }

    #[test]
    fn label_examples() {
        assert!(record("4,2", 3, "3,1,1", 4)
            .labels
            .contains(&"table1-(j)".to_string()));
        assert!(record("10,7", 5, "8,3", 7)
            .labels
            .contains(&"table1-(f)".to_string()));
        assert!(record("6,5", 3, "2^4,1^3", 7)
            .labels
            .contains(&"table1-(p)".to_string()));
        let hermite = record("3", 5, "5", 3);
        assert!(hermite.labels.contains(&"rectangle".to_string()));
        let conj = record("3,1", 2, "2,1,1", 3);
        assert!(conj.labels.contains(&"conjugate-family".to_string()));
        assert!(conj.labels.contains(&"table1-(b)".to_string()));
        let comp = record("3,1", 2, "3,2", 2);
        assert!(comp.labels.contains(&"complement".to_string()));
        assert!(!comp.labels.contains(&"exceptional".to_string()));
        let exceptional = record("8,6,3", 5, "8,7,2,2", 5);
        assert!(exceptional.labels.contains(&"exceptional".to_string()));
        let column = record("2,2", 1, "3,3,3", 2);
        assert!(column
            .labels
            .contains(&"column-removal-composite".to_string()));
        let identity = record("2,1", 3, "2,1", 3);
        assert!(identity.labels.contains(&"identity".to_string()));
        assert!(identity.labels.contains(&"table1-(a)".to_string()));
        assert!(identity.labels.contains(&"table1-(g)".to_string()));
    }

    #[test]
    fn exceptional_family_examples() {
        assert_eq!(
            exceptional_family(0, 5).unwrap(),
            (p("8,7,2,2"), p("8,6,3"))
        );
        assert_eq!(
            exceptional_family(0, 6).unwrap(),
            (p("6,4,3,3,3"), p("6,3,3,3,1"))
        );
        assert_eq!(
            exceptional_family(1, 8).unwrap(),
            (p("6,5,4^4,3"), p("6,3,3,2,1"))
        );
        assert!(exceptional_family(0, 4).is_err());
        for k in 0..=2 {
            for ell in 5..=10 {
                let (lam, mu) = exceptional_family(k, ell).unwrap();
                assert!(
                    is_equivalent(&lam, ell, &mu, ell).unwrap().is_some(),
                    "k={k}, ℓ={ell}"
                );
            }
        }
    }

    #[test]
    fn verify_small_windows() {
        let cases: &[(Theorem, VerifyBounds)] = &[
            (
                Theorem::Conjugates,
                VerifyBounds {
                    max_size: 8,
                    max_ell: 6,
                    max_m: 6,
                    max_k: 3,
                    max_mu_size: 8,
                },
            ),
            (
                Theorem::MultiplePairs,
                VerifyBounds {
                    max_size: 8,
                    max_ell: 5,
                    max_m: 5,
                    max_k: 0,
                    max_mu_size: 8,
                },
            ),
            (
                Theorem::Complements,
                VerifyBounds {
                    max_size: 8,
                    max_ell: 6,
                    max_m: 6,
                    max_k: 0,
                    max_mu_size: 8,
                },
            ),
            (
                Theorem::Rectangles,
                VerifyBounds {
                    max_size: 10,
                    max_ell: 10,
                    max_m: 10,
                    max_k: 3,
                    max_mu_size: 10,
                },
            ),
            (
                Theorem::OneRow,
                VerifyBounds {
                    max_size: 10,
                    max_ell: 6,
                    max_m: 6,
                    max_k: 0,
                    max_mu_size: 10,
                },
            ),
            (
                Theorem::Irreducible,
                VerifyBounds {
                    max_size: 8,
                    max_ell: 3,
                    max_m: 1,
                    max_k: 0,
                    max_mu_size: 8,
                },
            ),
            (
                Theorem::Table1,
                VerifyBounds {
                    max_size: 12,
                    max_ell: 0,
                    max_m: 0,
                    max_k: 0,
                    max_mu_size: 12,
                },
            ),
            (
                Theorem::EqualDegree,
                VerifyBounds {
                    max_size: 10,
                    max_ell: 4,
                    max_m: 4,
                    max_k: 0,
                    max_mu_size: 10,
                },
            ),
            (
                Theorem::Exceptional,
                VerifyBounds {
                    max_size: 0,
                    max_ell: 8,
                    max_m: 8,
                    max_k: 1,
                    max_mu_size: 0,
                },
            ),
            (
                Theorem::Solitary,
                VerifyBounds {
                    max_size: 0,
                    max_ell: 8,
                    max_m: 8,
                    max_k: 3,
                    max_mu_size: 14,
                },
            ),
        ];
        for &(theorem, bounds) in cases {
            let report = verify_theorem(theorem, bounds).unwrap();
            assert!(
                report.pass,
                "{} failed: {:?}",
                report.theorem,
                report.counterexamples.iter().take(5).collect::<Vec<_>>()
            );
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn census_contains_pyramid_pair() {
        let report = exceptional_census(19, None).unwrap();
        assert_eq!(report.max_ell, 25);
        assert!(report.by_ell.get(&5).copied().unwrap_or(0) >= 1);
        assert!(report.total >= 1);
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("bogus".parse::<Theorem>().is_err());
    }
}
