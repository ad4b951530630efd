//! Brute-force enumeration oracles: semistandard skew tableaux, weight
//! enumerators, the minimum-weight tableau, bumping, the box-complement
//! bijection on tableaux, and plane partitions.
//!
//! Everything here is exhaustive and capped; the fast formula routes in
//! [`crate::specialize`] are tested against these oracles.

use num_bigint::BigInt;
use thiserror::Error;

use crate::partitions::Partition;
use crate::qpoly::QPoly;

/// Default enumeration cap: refuse rather than silently truncate.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Largest box volume accepted by the plane-partition enumerators.
pub const MAX_PP_VOLUME: u64 = 64;

/// Largest shape the enumeration oracles accept.
pub const MAX_ORACLE_BOXES: u64 = 25;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauxError {
    #[error("inner partition is not contained in the outer partition")]
    NotContained,
    #[error("enumeration would exceed the work cap of {cap}")]
    CapExceeded { cap: u64 },
    #[error("shape has {boxes} boxes, above the oracle limit of {limit}")]
    ShapeTooLarge { boxes: u64, limit: u64 },
    #[error("column {col} has {len} boxes, too long for entries bounded by {ell}")]
    ColumnTooLong { col: usize, len: u32, ell: u32 },
    #[error("box ({row},{col}) is not in the shape")]
    BoxNotInShape { row: usize, col: usize },
    #[error("box ({row},{col}) is not bumpable")]
    NotBumpable { row: usize, col: usize },
    #[error("complement requires a straight shape with entries below r and at most r rows")]
    ComplementPrecondition,
    #[error("plane-partition box {a}x{b}x{c} exceeds the enumeration cap")]
    PlanePartitionTooLarge { a: u32, b: u32, c: u32 },
}

/// A skew shape outer/inner with inner ⊆ outer; a straight shape has inner = ∅.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, TableauxError> {
        if !outer.contains(&inner) {
            return Err(TableauxError::NotContained);
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    /// Number of boxes |outer| − |inner|.
    pub fn size(&self) -> u64 {
        self.outer.size() - self.inner.size()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Column length c_j = outer′_j − inner′_j (1-based j ≤ a(outer)).
    pub fn column_length(&self, j: usize) -> u32 {
        self.outer.conjugate().part(j) - self.inner.conjugate().part(j)
    }

    /// All column lengths (c_1, …, c_{a(outer)}).
    pub fn column_lengths(&self) -> Vec<u32> {
        let oc = self.outer.conjugate();
        let ic = self.inner.conjugate();
        (1..=self.outer.a() as usize)
            .map(|j| oc.part(j) - ic.part(j))
            .collect()
    }

    /// Whether the 1-based box (i, j) lies in the skew diagram.
    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        row >= 1
            && row <= self.outer.len()
            && col as u32 > self.inner.part(row)
            && col as u32 <= self.outer.part(row)
    }

    /// Minimum tableau weight b(outer/inner) = Σ_j C(c_j, 2).
    pub fn min_weight(&self) -> u64 {
        self.column_lengths()
            .iter()
            .map(|&c| c as u64 * (c as u64).saturating_sub(1) / 2)
            .sum()
    }
}

impl std::fmt::Display for SkewShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

/// A semistandard tableau of a skew shape with entries in {0,…,bound}.
///
/// `rows[i]` holds the entries of row i+1 for columns inner_{i+1}+1 ..= outer_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    shape: SkewShape,
    rows: Vec<Vec<u32>>,
    bound: u32,
}

impl Tableau {
    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Entry at the 1-based box (i, j).
    pub fn entry(&self, row: usize, col: usize) -> Option<u32> {
        if !self.shape.contains_box(row, col) {
            return None;
        }
        let offset = col - 1 - self.shape.inner.part(row) as usize;
        Some(self.rows[row - 1][offset])
    }

    /// Weight |t| = sum of all entries.
    pub fn weight(&self) -> u64 {
        self.rows.iter().flatten().map(|&e| e as u64).sum()
    }

    fn is_semistandard(&self) -> bool {
        for i in 1..=self.shape.outer.len() {
            for j in (self.shape.inner.part(i) as usize + 1)..=(self.shape.outer.part(i) as usize) {
                let e = self.entry(i, j).unwrap();
                if e > self.bound {
                    return false;
                }
                if let Some(left) = self.entry(i, j.wrapping_sub(1)) {
                    if left > e {
                        return false;
                    }
                }
                if i > 1 {
                    if let Some(above) = self.entry(i - 1, j) {
                        if above >= e {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Boxes where adding 1 keeps the tableau semistandard within the bound.
    pub fn bumpable_boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.shape.outer.len() {
            for j in (self.shape.inner.part(i) as usize + 1)..=(self.shape.outer.part(i) as usize) {
                if self.can_bump(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn can_bump(&self, row: usize, col: usize) -> bool {
        let e = match self.entry(row, col) {
            Some(e) => e + 1,
            None => return false,
        };
        if e > self.bound {
            return false;
        }
        if let Some(right) = self.entry(row, col + 1) {
            if e > right {
                return false;
            }
        }
        if let Some(below) = self.entry(row + 1, col) {
            if e >= below {
                return false;
            }
        }
        true
    }

    /// Adds 1 to the entry at the given box; errors if the result would not
    /// be semistandard.
    pub fn bump(&self, row: usize, col: usize) -> Result<Tableau, TableauxError> {
        if !self.shape.contains_box(row, col) {
            return Err(TableauxError::BoxNotInShape { row, col });
        }
        if !self.can_bump(row, col) {
            return Err(TableauxError::NotBumpable { row, col });
        }
        let mut t = self.clone();
        let offset = col - 1 - t.shape.inner.part(row) as usize;
        t.rows[row - 1][offset] += 1;
        Ok(t)
    }
}

fn check_oracle_size(shape: &SkewShape) -> Result<(), TableauxError> {
    let boxes = shape.size();
    if boxes > MAX_ORACLE_BOXES {
        return Err(TableauxError::ShapeTooLarge {
            boxes,
            limit: MAX_ORACLE_BOXES,
        });
    }
    Ok(())
}

/// Row-major list of 1-based boxes of the shape.
fn box_list(shape: &SkewShape) -> Vec<(usize, usize)> {
    let mut boxes = Vec::new();
    for i in 1..=shape.outer.len() {
        for j in (shape.inner.part(i) as usize + 1)..=(shape.outer.part(i) as usize) {
            boxes.push((i, j));
        }
    }
    boxes
}

struct Enumerator<'a, F: FnMut(&[Vec<u32>], u64)> {
    shape: &'a SkewShape,
    boxes: Vec<(usize, usize)>,
    /// Boxes strictly below (i,j) in its column, for the bound-pruning rule.
    below: Vec<u32>,
    ell: u32,
    cap: u64,
    count: u64,
    rows: Vec<Vec<u32>>,
    visit: F,
}

impl<'a, F: FnMut(&[Vec<u32>], u64)> Enumerator<'a, F> {
    fn new(shape: &'a SkewShape, ell: u32, cap: u64, visit: F) -> Self {
        let boxes = box_list(shape);
        let outer_conj = shape.outer.conjugate();
        let below = boxes
            .iter()
            .map(|&(i, j)| outer_conj.part(j) - i as u32)
            .collect();
        let rows = (1..=shape.outer.len())
            .map(|i| vec![0u32; (shape.outer.part(i) - shape.inner.part(i)) as usize])
            .collect();
        Enumerator {
            shape,
            boxes,
            below,
            ell,
            cap,
            count: 0,
            rows,
            visit,
        }
    }

    fn get(&self, row: usize, col: usize) -> Option<u32> {
        if !self.shape.contains_box(row, col) {
            return None;
        }
        Some(self.rows[row - 1][col - 1 - self.shape.inner.part(row) as usize])
    }

    fn run(&mut self, idx: usize, weight: u64) -> Result<(), TableauxError> {
        if idx == self.boxes.len() {
            self.count += 1;
            if self.count > self.cap {
                return Err(TableauxError::CapExceeded { cap: self.cap });
            }
            (self.visit)(&self.rows, weight);
            return Ok(());
        }
        let (i, j) = self.boxes[idx];
        let mut lo = 0u32;
        if j > self.shape.inner.part(i) as usize + 1 {
            lo = lo.max(self.get(i, j - 1).unwrap());
        }
        if i > 1 {
            if let Some(above) = self.get(i - 1, j) {
                lo = lo.max(above + 1);
            }
        }
        // Entries strictly increase down the column, so leave headroom for
        // every box below this one.
        let hi = self.ell.saturating_sub(self.below[idx]);
        for v in lo..=hi {
            self.rows[i - 1][j - 1 - self.shape.inner.part(i) as usize] = v;
            self.run(idx + 1, weight + v as u64)?;
        }
        Ok(())
    }
}

/// Every semistandard filling of the shape with entries in {0,…,ℓ}, in
/// deterministic (row-major lexicographic) order.
pub fn enumerate_ssyt(shape: &SkewShape, ell: u32) -> Result<Vec<Tableau>, TableauxError> {
    enumerate_ssyt_capped(shape, ell, DEFAULT_CAP)
}

pub fn enumerate_ssyt_capped(
    shape: &SkewShape,
    ell: u32,
    cap: u64,
) -> Result<Vec<Tableau>, TableauxError> {
    check_oracle_size(shape)?;
    let mut out = Vec::new();
    let mut e = Enumerator::new(shape, ell, cap, |rows, _| {
        out.push(rows.to_vec());
    });
    e.run(0, 0)?;
    drop(e);
    Ok(out
        .into_iter()
        .map(|rows| Tableau {
            shape: shape.clone(),
            rows,
            bound: ell,
        })
        .collect())
}

/// The oracle: Σ_t q^{|t|} over all semistandard fillings with entries ≤ ℓ.
pub fn weight_enumerator(shape: &SkewShape, ell: u32) -> Result<QPoly, TableauxError> {
    weight_enumerator_capped(shape, ell, DEFAULT_CAP)
}

pub fn weight_enumerator_capped(
    shape: &SkewShape,
    ell: u32,
    cap: u64,
) -> Result<QPoly, TableauxError> {
    check_oracle_size(shape)?;
    let max_weight = ell as u64 * shape.size();
    let mut counts = vec![0u64; max_weight as usize + 1];
    let mut e = Enumerator::new(shape, ell, cap, |_, w| {
        counts[w as usize] += 1;
    });
    e.run(0, 0)?;
    drop(e);
    let coeffs: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Ok(QPoly::from_coeffs(0, coeffs))
}

/// The column-minimal tableau: column j holds 0,…,c_j−1 top to bottom.
/// Its weight is the minimum weight b(shape).
pub fn min_weight_tableau(shape: &SkewShape, ell: u32) -> Result<Tableau, TableauxError> {
    for (j0, &c) in shape.column_lengths().iter().enumerate() {
        if c > ell + 1 {
            return Err(TableauxError::ColumnTooLong {
                col: j0 + 1,
                len: c,
                ell,
            });
        }
    }
    let inner_conj = shape.inner.conjugate();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 1..=shape.outer.len() {
        let mut row = Vec::new();
        for j in (shape.inner.part(i) as usize + 1)..=(shape.outer.part(i) as usize) {
            // (i, j) is the (i − inner′_j − 1)-th box from the top of column j.
            row.push(i as u32 - inner_conj.part(j) - 1);
        }
        rows.push(row);
    }
    let t = Tableau {
        shape: shape.clone(),
        rows,
        bound: ell,
    };
    debug_assert!(t.is_semistandard());
    Ok(t)
}

/// The complement bijection: a tableau of straight shape λ with entries < r
/// maps to one of shape λ^{∘r}; column j of the result is the complement in
/// {0,…,r−1} of column a(λ)+1−j of the input.
pub fn complement_tableau(t: &Tableau, r: u32) -> Result<Tableau, TableauxError> {
    let lam = t.shape.outer();
    if !t.shape.is_straight() || lam.len() > r as usize || t.rows.iter().flatten().any(|&e| e >= r)
    {
        return Err(TableauxError::ComplementPrecondition);
    }
    let comp = lam
        .complement_in_box(r)
        .map_err(|_| TableauxError::ComplementPrecondition)?;
    let a = lam.a() as usize;
    let lam_conj = lam.conjugate();
    // Columns of the complement tableau, left to right.
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for j in 1..=comp.a() as usize {
        let src = a + 1 - j;
        let mut present = vec![false; r as usize];
        for i in 1..=lam_conj.part(src) as usize {
            present[t.entry(i, src).unwrap() as usize] = true;
        }
        cols.push((0..r).filter(|&v| !present[v as usize]).collect());
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 1..=comp.len() {
        rows.push(
            (0..comp.part(i) as usize)
                .map(|j0| cols[j0][i - 1])
                .collect(),
        );
    }
    let out = Tableau {
        shape: SkewShape::straight(comp),
        rows,
        bound: r - 1,
    };
    debug_assert!(out.is_semistandard());
    Ok(out)
}

/// A plane partition inside an a×b×c box: at most b rows of at most a
/// entries, each in {1,…,c}, with weakly decreasing rows and columns.
/// Stored as rectangular b×a arrays with zeros for absent entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePartition {
    pub rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn weight(&self) -> u64 {
        self.rows.iter().flatten().map(|&e| e as u64).sum()
    }
}

/// Every plane partition in the a×b×c box.
pub fn enumerate_plane_partitions(
    a: u32,
    b: u32,
    c: u32,
) -> Result<Vec<PlanePartition>, TableauxError> {
    if a as u64 * b as u64 * c as u64 > MAX_PP_VOLUME {
        return Err(TableauxError::PlanePartitionTooLarge { a, b, c });
    }
    let mut out = Vec::new();
    let mut rows = vec![vec![0u32; a as usize]; b as usize];
    fill_pp(&mut rows, 0, 0, a as usize, b as usize, c, &mut |rows| {
        out.push(PlanePartition {
            rows: rows.to_vec(),
        })
    });
    Ok(out)
}

/// Σ_π q^{|π|} over the a×b×c box, by enumeration.
pub fn plane_partition_gf_by_enumeration(a: u32, b: u32, c: u32) -> Result<QPoly, TableauxError> {
    if a as u64 * b as u64 * c as u64 > MAX_PP_VOLUME {
        return Err(TableauxError::PlanePartitionTooLarge { a, b, c });
    }
    let mut counts = vec![0u64; (a * b * c) as usize + 1];
    let mut rows = vec![vec![0u32; a as usize]; b as usize];
    fill_pp(&mut rows, 0, 0, a as usize, b as usize, c, &mut |rows| {
        let w: u64 = rows.iter().flatten().map(|&e| e as u64).sum();
        counts[w as usize] += 1;
    });
    let coeffs: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Ok(QPoly::from_coeffs(0, coeffs))
}

fn fill_pp(
    rows: &mut Vec<Vec<u32>>,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    c: u32,
    visit: &mut impl FnMut(&[Vec<u32>]),
) {
    if i == b {
        visit(rows);
        return;
    }
    if j == a {
        fill_pp(rows, i + 1, 0, a, b, c, visit);
        return;
    }
    let mut hi = c;
    if j > 0 {
        hi = hi.min(rows[i][j - 1]);
    }
    if i > 0 {
        hi = hi.min(rows[i - 1][j]);
    }
    for v in 0..=hi {
        rows[i][j] = v;
        fill_pp(rows, i, j + 1, a, b, c, visit);
    }
    rows[i][j] = 0;
}
