//! Exact verification of the plane-partition and q-binomial identities:
//! MacMahon's box product, the dual Jacobi–Trudi evaluation for rectangles,
//! the two determinant identities, the q-binomial determinant corollary, and
//! the scaled Chu–Vandermonde identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::partitions::Partition;
use crate::qpoly::{poly_matrix_determinant, QPoly};
use crate::specialize::schur_spec_hcf;
use crate::tableaux::{self, TableauxError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentitiesError {
    #[error("box volume {volume} exceeds the cap of {cap}")]
    CapExceeded { volume: u64, cap: u64 },
    #[error(transparent)]
    Oracle(#[from] TableauxError),
}

/// MacMahon's generating function for plane partitions in an a×b×c box:
/// Π_{i≤a,j≤b,k≤c} (q^{i+j+k−1} − 1)/(q^{i+j+k−2} − 1), computed by
/// cancelling the exponent multisets before any polynomial division.
pub fn macmahon_product(a: u32, b: u32, c: u32) -> Result<QPoly, IdentitiesError> {
    let volume = a as u64 * b as u64 * c as u64;
    if volume > 200 {
        return Err(IdentitiesError::CapExceeded { volume, cap: 200 });
    }
    // Multiplicity of exponent e among {i+j+k−1} minus {i+j+k−2}.
    let mut exps: BTreeMap<i64, i64> = BTreeMap::new();
    for i in 1..=a as i64 {
        for j in 1..=b as i64 {
            for k in 1..=c as i64 {
                *exps.entry(i + j + k - 1).or_insert(0) += 1;
                *exps.entry(i + j + k - 2).or_insert(0) -= 1;
            }
        }
    }
    // Equal numbers of (q^e − 1) factors above and below, so signs cancel;
    // use (1 − q^e) throughout to keep everything in non-negative terms.
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for (&e, &mult) in &exps {
        if mult == 0 {
            continue;
        }
        let factor = &QPoly::one() - &QPoly::monomial(BigInt::from(1), e);
        for _ in 0..mult.unsigned_abs() {
            if mult > 0 {
                num = &num * &factor;
            } else {
                den = &den * &factor;
            }
        }
    }
    Ok(num
        .exact_divide(&den)
        .expect("MacMahon quotient is a polynomial"))
}

/// The dual Jacobi–Trudi evaluation det(⟨b+c over b+j−i⟩)_{0≤i,j≤a−1},
/// equal to s_{(a^b)}(1,q,…,q^{b+c−1}).
pub fn jacobi_trudi_rectangle(a: u32, b: u32, c: u32) -> QPoly {
    let n = a as usize;
    let matrix: Vec<Vec<QPoly>> = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| QPoly::scaled_q_binomial((b + c) as i64, b as i64 + j - i))
                .collect()
        })
        .collect();
    poly_matrix_determinant(&matrix)
}

/// Verifies both determinant identities:
/// q^{a·C(b,2)}·MacMahon(a,b,c) = det(⟨b+c+j over b+j−i⟩)
///                              = q^{−A}·det(q^{−ij}⟨b+c+i+j over b+j⟩)
/// with A = C(a,2)·b − C(a+1,3).
pub fn check_proposition_dets(a: u32, b: u32, c: u32) -> Result<bool, IdentitiesError> {
    let (a64, b64, c64) = (a as i64, b as i64, c as i64);
    let lhs = macmahon_product(a, b, c)?.shift(a64 * b64 * (b64 - 1) / 2);
    let n = a as usize;
    let first: Vec<Vec<QPoly>> = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| QPoly::scaled_q_binomial(b64 + c64 + j, b64 + j - i))
                .collect()
        })
        .collect();
    let det1 = poly_matrix_determinant(&first);
    let second: Vec<Vec<QPoly>> = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| QPoly::scaled_q_binomial(b64 + c64 + i + j, b64 + j).shift(-i * j))
                .collect()
        })
        .collect();
    let big_a = a64 * (a64 - 1) / 2 * b64 - (a64 + 1) * a64 * (a64 - 1) / 6;
    let det2 = poly_matrix_determinant(&second).shift(-big_a);
    Ok(lhs == det1 && det1 == det2)
}

/// Verifies MacMahon(a,b,c) = q^{1²+⋯+(a−1)²}·det(q^{−ij}·qbinom(b+c+i+j, b+j)).
pub fn check_corollary_qbinom_det(a: u32, b: u32, c: u32) -> Result<bool, IdentitiesError> {
    let (a64, b64, c64) = (a as i64, b as i64, c as i64);
    let lhs = macmahon_product(a, b, c)?;
    let n = a as usize;
    let matrix: Vec<Vec<QPoly>> = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| QPoly::q_binomial(b64 + c64 + i + j, b64 + j).shift(-i * j))
                .collect()
        })
        .collect();
    let squares: i64 = (1..a64).map(|i| i * i).sum();
    let rhs = poly_matrix_determinant(&matrix).shift(squares);
    Ok(lhs == rhs)
}

/// Verifies both scaled Chu–Vandermonde identities at (m, r, ℓ):
/// ⟨m+r over ℓ+r⟩ = Σ_k q^{mk}⟨r over k⟩⟨m over ℓ+r−k⟩
///                = Σ_k q^{r(ℓ+r−k)}⟨r over k⟩⟨m over ℓ+r−k⟩.
pub fn check_chu_vandermonde(m: u32, r: u32, ell: u32) -> bool {
    let (m, r, ell) = (m as i64, r as i64, ell as i64);
    let lhs = QPoly::scaled_q_binomial(m + r, ell + r);
    let mut cols = QPoly::zero();
    let mut rows = QPoly::zero();
    for k in 0..=r {
        let common = &QPoly::scaled_q_binomial(r, k) * &QPoly::scaled_q_binomial(m, ell + r - k);
        cols = &cols + &common.shift(m * k);
        rows = &rows + &common.shift(r * (ell + r - k));
    }
    lhs == cols && lhs == rows
}

/// Verifies the half-turn bijection between rectangular tableaux and plane
/// partitions: q^{−a·C(b,2)}·s_{(a^b)}(1,…,q^{b+c−1}) = Σ_{π∈PP(a,b,c)} q^{|π|}.
pub fn check_ssyt_to_pp(a: u32, b: u32, c: u32) -> Result<bool, IdentitiesError> {
    let rect = Partition::new(vec![a; b as usize]);
    let lhs = schur_spec_hcf(&rect, b + c - 1).shift(-(a as i64 * b as i64 * (b as i64 - 1) / 2));
    let rhs = tableaux::plane_partition_gf_by_enumeration(a, b, c)?;
    Ok(lhs == rhs)
}
