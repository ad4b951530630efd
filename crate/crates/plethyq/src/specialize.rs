//! Fast exact computation of the principal specialization s_λ(1,q,…,q^ℓ)
//! by two independent formula routes — the hook content formula and the
//! pyramid (difference-multiset) formula — plus skew specializations via the
//! tableau oracle and SL₂ Q-characters.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::partitions::{Partition, PartitionError};
use crate::qpoly::{QPoly, QPolyError};
use crate::tableaux::{self, SkewShape, TableauxError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecializeError {
    #[error("degree {ell} is below len(λ) − 1 = {min}")]
    DegreeTooSmall { ell: u32, min: usize },
    #[error(transparent)]
    Oracle(#[from] TableauxError),
    #[error("internal disagreement between computation routes: {0}")]
    InternalDisagreement(String),
    #[error("polynomial arithmetic failed: {0}")]
    Poly(#[from] QPolyError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Multiplies Π [m]_q^mult over a multiset and divides by another, cancelling
/// common factors first.  Returns the zero polynomial if any numerator key is
/// ≤ 0 (a vanishing quantum integer).
fn quantum_ratio(
    mut num: BTreeMap<i64, u32>,
    den: &BTreeMap<i64, u32>,
) -> Result<QPoly, QPolyError> {
    let mut den_left: BTreeMap<i64, u32> = BTreeMap::new();
    for (&m, &mult) in den {
        let cancel = num.get(&m).copied().unwrap_or(0).min(mult);
        if cancel > 0 {
            let n = num.get_mut(&m).unwrap();
            *n -= cancel;
            if *n == 0 {
                num.remove(&m);
            }
        }
        if mult > cancel {
            den_left.insert(m, mult - cancel);
        }
    }
    if num.keys().any(|&m| m <= 0) {
        return Ok(QPoly::zero());
    }
    let mut acc = QPoly::one();
    for (&m, &mult) in &num {
        let factor = QPoly::quantum_int(m);
        for _ in 0..mult {
            acc = &acc * &factor;
        }
    }
    for (&m, &mult) in &den_left {
        let factor = QPoly::quantum_int(m);
        for _ in 0..mult {
            acc = acc.exact_divide(&factor)?;
        }
    }
    Ok(acc)
}

/// s_λ(1,q,…,q^ℓ) by the hook content formula:
/// q^{b(λ)} · Π_{(i,j)∈[λ]} [j−i+ℓ+1]_q / [hook(i,j)]_q.
///
/// Returns the zero polynomial when some column is longer than ℓ+1 (a content
/// factor [j−i+ℓ+1]_q vanishes).
pub fn schur_spec_hcf(lam: &Partition, ell: u32) -> QPoly {
    let num: BTreeMap<i64, u32> = lam
        .content_multiset()
        .into_iter()
        .map(|(c, mult)| (c + ell as i64 + 1, mult))
        .collect();
    let den: BTreeMap<i64, u32> = lam
        .hook_multiset()
        .into_iter()
        .map(|(h, mult)| (h as i64, mult))
        .collect();
    let ratio =
        quantum_ratio(num, &den).expect("hook content quotient is always an exact polynomial");
    ratio.shift(lam.min_weight() as i64)
}

/// s_λ(1,q,…,q^ℓ) by the pyramid formula:
/// q^{b(λ)} · Π_{x∈Δ_ℓ(λ)} [x]_q / ([1]_q^ℓ [2]_q^{ℓ−1} ⋯ [ℓ]_q).
pub fn schur_spec_pyramid(lam: &Partition, ell: u32) -> Result<QPoly, SpecializeError> {
    if (ell as usize) + 1 < lam.len() {
        return Err(SpecializeError::DegreeTooSmall {
            ell,
            min: lam.len() - 1,
        });
    }
    let num: BTreeMap<i64, u32> = lam
        .pyramid(ell)?
        .entries
        .into_iter()
        .map(|(x, mult)| (x as i64, mult))
        .collect();
    let den: BTreeMap<i64, u32> = (1..=ell as i64)
        .map(|x| (x, (ell as i64 - x + 1) as u32))
        .collect();
    let ratio = quantum_ratio(num, &den)?;
    Ok(ratio.shift(lam.min_weight() as i64))
}

/// s_{λ/λ★}(1,q,…,q^ℓ), via the tableau oracle after proper reduction.
pub fn skew_spec(shape: &SkewShape, ell: u32) -> Result<QPoly, SpecializeError> {
    skew_spec_capped(shape, ell, tableaux::DEFAULT_CAP)
}

pub fn skew_spec_capped(shape: &SkewShape, ell: u32, cap: u64) -> Result<QPoly, SpecializeError> {
    if shape.is_straight() {
        return Ok(schur_spec_hcf(shape.outer(), ell));
    }
    let reduced = crate::irreducible::proper_reduction(shape);
    if reduced.is_straight() {
        return Ok(schur_spec_hcf(reduced.outer(), ell));
    }
    Ok(tableaux::weight_enumerator_capped(&reduced, ell, cap)?)
}

/// Computes s_λ(1,q,…,q^ℓ) by both formula routes and the tableau oracle
/// (when within oracle caps) and errors if they disagree.
pub fn schur_spec_validated(lam: &Partition, ell: u32) -> Result<QPoly, SpecializeError> {
    let hcf = schur_spec_hcf(lam, ell);
    if (ell as usize) + 1 >= lam.len() {
        let pyr = schur_spec_pyramid(lam, ell)?;
        if pyr != hcf {
            return Err(SpecializeError::InternalDisagreement(format!(
                "hook-content and pyramid routes differ for λ={lam}, ℓ={ell}"
            )));
        }
    }
    if lam.size() <= tableaux::MAX_ORACLE_BOXES {
        match tableaux::weight_enumerator(&SkewShape::straight(lam.clone()), ell) {
            Ok(oracle) => {
                if oracle != hcf {
                    return Err(SpecializeError::InternalDisagreement(format!(
                        "formula and tableau oracle differ for λ={lam}, ℓ={ell}"
                    )));
                }
            }
            Err(TableauxError::CapExceeded { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(hcf)
}

/// The Q-character of ∇^λ Sym^ℓ E: the specialization re-centred about 0 with
/// exponents doubled (exponent e of q becomes 2e − ℓ|λ| of Q^{1/2}-units), so
/// it is palindromic about exponent 0 exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCharacter {
    poly: QPoly,
}

impl QCharacter {
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }
}

pub fn q_character(lam: &Partition, ell: u32) -> QCharacter {
    let spec = schur_spec_hcf(lam, ell);
    let total = ell as i64 * lam.size() as i64;
    let mut poly = QPoly::zero();
    if let (Some(lo), Some(hi)) = (spec.min_exp(), spec.max_exp()) {
        for e in lo..=hi {
            let c = spec.coeff(e);
            if !num_traits::Zero::is_zero(&c) {
                poly = &poly + &QPoly::monomial(c, 2 * e - total);
            }
        }
    }
    QCharacter { poly }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(text: &str) -> Partition {
        Partition::parse(text).unwrap()
    }

    #[test]
    fn hcf_examples() {
        for n in 1..=6i64 {
            for ell in 0..=6i64 {
                assert_eq!(
                    schur_spec_hcf(&Partition::new(vec![n as u32]), ell as u32),
                    QPoly::q_binomial(n + ell, ell)
                );
            }
        }
        // Column longer than ℓ+1 vanishes.
        assert!(schur_spec_hcf(&p("1^4"), 2).is_zero());
        assert!(schur_spec_hcf(&p("3,2,1,1"), 2).is_zero());
        assert_eq!(
            schur_spec_hcf(&p("2,1"), 2),
            QPoly::from_i64_coeffs(1, &[1, 2, 2, 2, 1])
        );
        assert_eq!(schur_spec_hcf(&Partition::empty(), 3), QPoly::one());
    }

    #[test]
    fn pyramid_route_matches_hcf() {
        for lam in Partition::all_up_to_size(8) {
            for ell in lam.len().saturating_sub(1) as u32..=4 {
                assert_eq!(
                    schur_spec_pyramid(&lam, ell).unwrap(),
                    schur_spec_hcf(&lam, ell),
                    "λ={lam}, ℓ={ell}"
                );
            }
        }
        assert_eq!(
            schur_spec_pyramid(&Partition::empty(), 4).unwrap(),
            QPoly::one()
        );
        assert!(schur_spec_pyramid(&p("1^4"), 2).is_err());
    }

    #[test]
    fn pyramid_pair_shift() {
        let a = schur_spec_hcf(&p("8,7,2,2"), 5);
        let b = schur_spec_hcf(&p("8,6,3"), 5);
        assert_eq!(a, b.shift(5));
    }

    #[test]
    fn triple_route_small() {
        for lam in Partition::all_up_to_size(8) {
            for ell in lam.len().saturating_sub(1) as u32..=4 {
                schur_spec_validated(&lam, ell).unwrap();
            }
        }
    }

    #[test]
    fn lowest_term_and_count() {
        for lam in Partition::all_up_to_size(9) {
            for ell in lam.len().saturating_sub(1) as u32..=4 {
                let s = schur_spec_hcf(&lam, ell);
                assert_eq!(s.min_exp(), Some(lam.min_weight() as i64));
                assert_eq!(s.coeff(lam.min_weight() as i64), BigInt::from(1));
                let count = tableaux::enumerate_ssyt(&SkewShape::straight(lam.clone()), ell)
                    .unwrap()
                    .len();
                assert_eq!(s.eval_one(), BigInt::from(count));
            }
        }
    }

    #[test]
    fn column_removal_identity() {
        for lam in Partition::all_up_to_size(12) {
            if lam.len() < 2 {
                continue;
            }
            let ell = (lam.len() - 1) as u32;
            let bar = lam.remove_full_columns().unwrap();
            let c = *lam.parts().last().unwrap() as i64;
            let shift = c * (lam.len() as i64) * (lam.len() as i64 - 1) / 2;
            assert_eq!(
                schur_spec_hcf(&lam, ell),
                schur_spec_hcf(&bar, ell).shift(shift)
            );
        }
    }

    #[test]
    fn hermite_reciprocity() {
        for n in 1..=8u32 {
            for ell in 1..=8u32 {
                assert_eq!(
                    schur_spec_hcf(&Partition::new(vec![n]), ell),
                    schur_spec_hcf(&Partition::new(vec![ell]), n)
                );
            }
        }
    }

    #[test]
    fn specialization_symmetry() {
        for lam in Partition::all_up_to_size(9) {
            for ell in lam.len().saturating_sub(1) as u32..=4 {
                let s = schur_spec_hcf(&lam, ell);
                if s.is_zero() {
                    continue;
                }
                let (unimodal, center2) = s.symmetry_checks().unwrap();
                assert!(unimodal, "not unimodal: λ={lam}, ℓ={ell}");
                assert_eq!(center2, Some(ell as i64 * lam.size() as i64));
            }
        }
    }

    #[test]
    fn q_character_examples() {
        for ell in 1..=5u32 {
            let chi = q_character(&p("1"), ell);
            let poly = chi.poly();
            assert_eq!(poly.min_exp(), Some(-(ell as i64)));
            assert_eq!(poly.max_exp(), Some(ell as i64));
            for e in (-(ell as i64)..=ell as i64).step_by(2) {
                assert_eq!(poly.coeff(e), BigInt::from(1));
            }
        }
        let chi = q_character(&p("2,1"), 2);
        assert_eq!(
            chi.poly().to_json().to_string(),
            r#"{"coeffs":["1","0","2","0","2","0","2","0","1"],"min":-4}"#
        );
        // Palindromic about 0 by construction.
        for lam in Partition::all_up_to_size(7) {
            for ell in lam.len() as u32..=4 {
                let chi = q_character(&lam, ell);
                let (_, center2) = chi.poly().symmetry_checks().unwrap();
                assert_eq!(center2, Some(0));
            }
        }
    }

    #[test]
    fn skew_spec_examples() {
        let shape = SkewShape::new(p("3^4,1"), p("2")).unwrap();
        let s = skew_spec(&shape, 3).unwrap();
        assert_eq!(s, QPoly::from_i64_coeffs(15, &[1, 1, 1, 1]));

        let straight = SkewShape::straight(p("4,2"));
        assert_eq!(
            skew_spec(&straight, 2).unwrap(),
            schur_spec_hcf(&p("4,2"), 2)
        );

        // A skew ℓ-rectangle specializes to the monomial q^{ℓn/2}.
        let rect = SkewShape::straight(p("2,2"));
        assert_eq!(skew_spec(&rect, 1).unwrap(), QPoly::monomial(1.into(), 2));
    }
}
