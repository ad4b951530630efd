//! Integer partitions and the statistics the equivalence theory needs:
//! conjugates, complements in a box, hook and content multisets, minimum
//! weight, difference sequences, pyramids, and Durfee-square data.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("malformed partition text: {0}")]
    Parse(String),
    #[error("parts must be weakly decreasing")]
    NotWeaklyDecreasing,
    #[error("partition must be non-empty")]
    Empty,
    #[error("complement box has {rows} rows but the partition has {parts} parts")]
    BoxTooSmall { rows: u32, parts: usize },
    #[error("degree {ell} is below len(λ) − 1 = {min}")]
    DegreeTooSmall { ell: u32, min: usize },
}

/// A partition: weakly decreasing positive parts; the empty sequence is ∅.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition, panicking unless the parts are weakly decreasing
    /// and positive (zero parts are not stored; pass them through
    /// [`Partition::from_parts_with_zeros`] instead).
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        assert!(
            parts.last().is_none_or(|&p| p > 0),
            "partition parts must be positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Normalizes a weakly decreasing sequence by dropping trailing zeros.
    pub fn from_parts_with_zeros(parts: &[u32]) -> Result<Self, PartitionError> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(PartitionError::NotWeaklyDecreasing);
        }
        let len = parts.iter().take_while(|&&p| p > 0).count();
        Ok(Partition {
            parts: parts[..len].to_vec(),
        })
    }

    /// Parses the grammar `"[]" | item ("," item)*` with `item = INT | INT "^" INT`,
    /// e.g. `"3^5,1^6"` for five 3s then six 1s.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let text = text.trim();
        if text == "[]" {
            return Ok(Partition::empty());
        }
        if text.is_empty() {
            return Err(PartitionError::Parse(
                "empty input (use \"[]\" for ∅)".into(),
            ));
        }
        let mut parts = Vec::new();
        for item in text.split(',') {
            let item = item.trim();
            let (base, count) = match item.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (item, "1"),
            };
            let part: u32 = parse_positive_int(base)?;
            let mult: u32 = parse_positive_int(count)?;
            parts.extend(std::iter::repeat_n(part, mult as usize));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(PartitionError::NotWeaklyDecreasing);
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part with 1-based index; 0 beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// First part a(λ) (0 for ∅).
    pub fn a(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Number of parts ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Size |λ|.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.parts.len() <= self.parts.len()
            && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// The conjugate partition λ′ (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let a = self.a() as usize;
        let mut parts = vec![0u32; a];
        for (j, p) in parts.iter_mut().enumerate() {
            *p = self.parts.iter().take_while(|&&x| x as usize > j).count() as u32;
        }
        Partition { parts }
    }

    /// The complement λ^{∘r} in the r × a(λ) box: λ^{∘r}_{r+1−i} = a(λ) − λ_i,
    /// with zero parts dropped.  complement_in_box(∅, r) = ∅.
    pub fn complement_in_box(&self, r: u32) -> Result<Partition, PartitionError> {
        if self.parts.len() > r as usize {
            return Err(PartitionError::BoxTooSmall {
                rows: r,
                parts: self.parts.len(),
            });
        }
        let a = self.a();
        let parts: Vec<u32> = (1..=r as usize).rev().map(|i| a - self.part(i)).collect();
        Partition::from_parts_with_zeros(&parts)
    }

    /// λ̄: remove all columns of full height len(λ), i.e. subtract the last
    /// part from every part.
    pub fn remove_full_columns(&self) -> Result<Partition, PartitionError> {
        let last = *self.parts.last().ok_or(PartitionError::Empty)?;
        let parts: Vec<u32> = self.parts.iter().map(|&p| p - last).collect();
        Partition::from_parts_with_zeros(&parts)
    }

    /// Hook lengths H(λ) = {(λ_i − i) + (λ′_j − j) + 1 : (i,j) ∈ [λ]} as a multiset.
    pub fn hook_multiset(&self) -> BTreeMap<u32, u32> {
        let conj = self.conjugate();
        let mut hooks = BTreeMap::new();
        for (i0, &row) in self.parts.iter().enumerate() {
            for j0 in 0..row as usize {
                let h = (row as i64 - i0 as i64) + (conj.parts[j0] as i64 - j0 as i64) - 1;
                *hooks.entry(h as u32).or_insert(0) += 1;
            }
        }
        hooks
    }

    /// Contents C(λ) = {j − i : (i,j) ∈ [λ]} as a multiset.
    pub fn content_multiset(&self) -> BTreeMap<i64, u32> {
        let mut contents = BTreeMap::new();
        for (i0, &row) in self.parts.iter().enumerate() {
            for j0 in 0..row as i64 {
                *contents.entry(j0 - i0 as i64).or_insert(0) += 1;
            }
        }
        contents
    }

    /// Minimum weight b(λ) = Σ_i (i−1)λ_i, the least weight of a semistandard
    /// tableau of shape λ and the lowest exponent of the specialization.
    pub fn min_weight(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i0, &p)| i0 as u64 * p as u64)
            .sum()
    }

    /// The difference sequence (δ_1,…,δ_ℓ), δ_j = λ_j − λ_{j+1} + 1.
    pub fn differences(&self, ell: u32) -> Result<Vec<u32>, PartitionError> {
        if (ell as usize) + 1 < self.parts.len() {
            return Err(PartitionError::DegreeTooSmall {
                ell,
                min: self.parts.len() - 1,
            });
        }
        Ok((1..=ell as usize)
            .map(|j| self.part(j) - self.part(j + 1) + 1)
            .collect())
    }

    /// The pyramid of λ at degree ℓ: row 1 is the difference sequence, and
    /// row i lists the sums of i consecutive differences.  The multiset of
    /// all entries is Δ_ℓ(λ).
    pub fn pyramid(&self, ell: u32) -> Result<Pyramid, PartitionError> {
        let row1: Vec<u64> = self.differences(ell)?.into_iter().map(u64::from).collect();
        let mut rows = if ell == 0 { Vec::new() } else { vec![row1] };
        for i in 1..ell as usize {
            let prev = &rows[i - 1];
            let row: Vec<u64> = prev.windows(2).map(|w| w[0] + w[1]).collect();
            // Consecutive sums overlap; subtract the doubly counted middle.
            let row = if i >= 2 {
                let older = &rows[i - 2];
                row.iter()
                    .enumerate()
                    .map(|(j, &s)| s - older[j + 1])
                    .collect()
            } else {
                row
            };
            rows.push(row);
        }
        let mut entries = BTreeMap::new();
        for row in &rows {
            for &e in row {
                *entries.entry(e).or_insert(0) += 1;
            }
        }
        Ok(Pyramid { rows, entries })
    }

    /// Durfee-square statistics (rank, srank, erank, spar, epar).
    pub fn durfee_stats(&self) -> Result<DurfeeStats, PartitionError> {
        if self.is_empty() {
            return Err(PartitionError::Empty);
        }
        let rank = (1..=self.parts.len())
            .take_while(|&r| self.part(r) >= r as u32)
            .count();
        let south_rank = (rank + 1..=self.parts.len())
            .take_while(|&i| self.part(i) == rank as u32)
            .count();
        let south_partition =
            Partition::new(self.parts[(rank + south_rank).min(self.parts.len())..].to_vec());
        let conj = self.conjugate();
        let east_rank = (rank + 1..=conj.parts.len())
            .take_while(|&j| conj.part(j) == rank as u32)
            .count();
        let east_spar =
            Partition::new(conj.parts[(rank + east_rank).min(conj.parts.len())..].to_vec());
        Ok(DurfeeStats {
            rank: rank as u32,
            south_rank: south_rank as u32,
            east_rank: east_rank as u32,
            south_partition,
            east_partition: east_spar.conjugate(),
        })
    }

    /// Number of removable boxes = number of distinct part values.
    pub fn removable_box_count(&self) -> u32 {
        (1..=self.parts.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .count() as u32
    }

    /// The staircase δ(k) = (k, k−1, …, 1).
    pub fn staircase(k: u32) -> Partition {
        Partition {
            parts: (1..=k).rev().collect(),
        }
    }

    /// All partitions of exactly n, in descending lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        gen_partitions(n, n, &mut current, &mut out);
        out
    }

    /// All non-empty partitions of size 1..=n.
    pub fn all_up_to_size(n: u32) -> Vec<Partition> {
        (1..=n).flat_map(Partition::all_of_size).collect()
    }
}

fn gen_partitions(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        gen_partitions(remaining - p, p, current, out);
        current.pop();
    }
}

fn parse_positive_int(s: &str) -> Result<u32, PartitionError> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) || s.starts_with('0') {
        return Err(PartitionError::Parse(format!("invalid integer {s:?}")));
    }
    s.parse()
        .map_err(|_| PartitionError::Parse(format!("integer out of range: {s:?}")))
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::from_parts_with_zeros(&parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    /// Grammar form round-tripping through [`Partition::parse`], e.g. `3^2,1` or `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "[]");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let run = self.parts[i..]
                .iter()
                .take_while(|&&p| p == self.parts[i])
                .count();
            if !first {
                write!(f, ",")?;
            }
            if run == 1 {
                write!(f, "{}", self.parts[i])?;
            } else {
                write!(f, "{}^{}", self.parts[i], run)?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({:?})", self.parts)
    }
}

/// A pyramid display of the multiset Δ_ℓ(λ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pyramid {
    /// Row i (0-based) has ℓ − i entries: the sums of i+1 consecutive differences.
    pub rows: Vec<Vec<u64>>,
    /// The multiset Δ_ℓ(λ) of all entries.
    pub entries: BTreeMap<u64, u32>,
}

/// Durfee-square statistics of a non-empty partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DurfeeStats {
    /// rank(λ): the side of the Durfee square.
    pub rank: u32,
    /// srank(λ): the number of parts equal to rank below the Durfee square.
    pub south_rank: u32,
    /// erank(λ) = srank(λ′).
    pub east_rank: u32,
    /// spar(λ): the parts strictly below the rank × rank+srank block.
    pub south_partition: Partition,
    /// epar(λ) = spar(λ′)′.
    pub east_partition: Partition,
}
