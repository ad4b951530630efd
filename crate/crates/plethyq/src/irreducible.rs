//! ℓ-irreducibility of skew Schur functions: a skew specialization is
//! ℓ-irreducible when it equals q^b(1 + q + ⋯ + q^m), i.e. the corresponding
//! SL₂(ℂ)-representation is irreducible.  Decided two ways: a fast structural
//! classification of the proper reduction (skew rectangles and near
//! rectangles) and the brute-force oracle on the enumerated specialization.

use num_traits::One;
use thiserror::Error;

use crate::partitions::Partition;
use crate::qpoly::QPoly;
use crate::specialize::{self, SpecializeError};
use crate::tableaux::SkewShape;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrreducibleError {
    #[error("shape is not proper")]
    NotProper,
    #[error(transparent)]
    Specialize(#[from] SpecializeError),
}

/// Structural class of a proper skew shape for a fixed ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeClass {
    /// Every column has length ℓ+1 (for ℓ = 0: length 1).
    SkewRectangle,
    /// ℓ = 1 only: one contiguous run of `width` columns of length 1, all at
    /// the same height, every other column of length 2.
    OneNearRectangle {
        width: u32,
    },
    /// ℓ ≥ 2 only: one special column of length 1 or ℓ, all others ℓ+1.
    EllNearRectangle {
        special_column: usize,
        special_length: u32,
    },
    Other,
}

/// Whether the first row and the first column each contain a box.
pub fn is_proper(shape: &SkewShape) -> bool {
    !shape.outer().is_empty()
        && shape.outer().a() > shape.inner().a()
        && shape.outer().len() > shape.inner().len()
}

/// Removes full first rows (outer₁ = inner₁) and full first columns
/// (len(outer) = len(inner)) until the shape is proper.  The box
/// configuration is unchanged; the empty shape reduces to ∅/∅.
pub fn proper_reduction(shape: &SkewShape) -> SkewShape {
    let mut outer: Vec<u32> = shape.outer().parts().to_vec();
    let mut inner: Vec<u32> = shape.inner().parts().to_vec();
    loop {
        if outer.is_empty() {
            break;
        }
        if inner.first() == outer.first() {
            outer.remove(0);
            if !inner.is_empty() {
                inner.remove(0);
            }
            continue;
        }
        if inner.len() == outer.len() {
            for p in &mut outer {
                *p -= 1;
            }
            for p in &mut inner {
                *p -= 1;
            }
            outer.retain(|&p| p > 0);
            inner.retain(|&p| p > 0);
            continue;
        }
        break;
    }
    SkewShape::new(Partition::new(outer), Partition::new(inner))
        .expect("reduction preserves containment")
}

/// Classification of one block of consecutive non-empty columns, given its
/// column lengths and the outer-conjugate heights of those columns.
fn classify_block(cs: &[u32], heights: &[u32], ell: u32) -> ShapeClass {
    debug_assert!(!cs.is_empty());
    if cs.iter().all(|&c| c == ell + 1) {
        return ShapeClass::SkewRectangle;
    }
    if ell == 1 {
        // One contiguous run of length-1 columns whose boxes share a row,
        // everything else of length 2.
        let ones: Vec<usize> = (0..cs.len()).filter(|&j| cs[j] == 1).collect();
        if ones.is_empty() {
            return ShapeClass::Other;
        }
        let y = ones[0];
        let d = ones.len();
        let contiguous = ones == (y..y + d).collect::<Vec<_>>();
        let same_height = ones.iter().all(|&j| heights[j] == heights[y]);
        let rest_two = (0..cs.len()).all(|j| ones.contains(&j) || cs[j] == 2);
        if contiguous && same_height && rest_two {
            return ShapeClass::OneNearRectangle { width: d as u32 };
        }
        return ShapeClass::Other;
    }
    if ell >= 2 {
        let special: Vec<usize> = (0..cs.len()).filter(|&j| cs[j] != ell + 1).collect();
        if special.len() == 1 {
            let z = special[0];
            if cs[z] == 1 || cs[z] == ell {
                return ShapeClass::EllNearRectangle {
                    special_column: z + 1,
                    special_length: cs[z],
                };
            }
        }
    }
    ShapeClass::Other
}

/// Classifies a proper skew shape per the rectangle / near-rectangle
/// definition (column lengths c_j = outer′_j − inner′_j over all columns).
pub fn classify_shape(shape: &SkewShape, ell: u32) -> Result<ShapeClass, IrreducibleError> {
    if !is_proper(shape) {
        return Err(IrreducibleError::NotProper);
    }
    let cs = shape.column_lengths();
    let oc = shape.outer().conjugate();
    let heights: Vec<u32> = (1..=cs.len()).map(|j| oc.part(j)).collect();
    Ok(classify_block(&cs, &heights, ell))
}

/// Whether a block's specialization is a single monomial.
fn block_is_monomial(class: &ShapeClass) -> bool {
    matches!(class, ShapeClass::SkewRectangle)
        || matches!(class, ShapeClass::OneNearRectangle { width: 0 })
}

/// Structural decision: ℓ-irreducibility of an arbitrary skew shape.
///
/// The shape is first reduced to its proper form, then split at empty columns
/// into independent blocks (the specialization factors over blocks);  it is
/// irreducible iff every block is a rectangle or near rectangle and at most
/// one block contributes more than a monomial.
pub fn is_ell_irreducible(shape: &SkewShape, ell: u32) -> bool {
    let reduced = proper_reduction(shape);
    if reduced.is_empty() {
        return true;
    }
    let cs = reduced.column_lengths();
    if ell == 0 {
        // Non-vanishing needs every column length ≤ 1, and then the
        // specialization is the monomial 1 (all entries are 0).
        return cs.iter().all(|&c| c <= 1);
    }
    if cs.iter().any(|&c| c > ell + 1) {
        // The specialization vanishes.
        return false;
    }
    let oc = reduced.outer().conjugate();
    let heights: Vec<u32> = (1..=cs.len()).map(|j| oc.part(j)).collect();
    let mut nontrivial_blocks = 0u32;
    let mut j = 0;
    while j < cs.len() {
        if cs[j] == 0 {
            j += 1;
            continue;
        }
        let start = j;
        while j < cs.len() && cs[j] > 0 {
            j += 1;
        }
        let class = classify_block(&cs[start..j], &heights[start..j], ell);
        if class == ShapeClass::Other {
            return false;
        }
        if !block_is_monomial(&class) {
            nontrivial_blocks += 1;
            if nontrivial_blocks > 1 {
                return false;
            }
        }
    }
    true
}

/// Oracle decision: enumerate the specialization and test whether it has the
/// form q^b(1 + q + ⋯ + q^m).
pub fn is_ell_irreducible_oracle(shape: &SkewShape, ell: u32) -> Result<bool, IrreducibleError> {
    let spec = specialize::skew_spec(shape, ell)?;
    Ok(poly_is_run(&spec))
}

fn poly_is_run(p: &QPoly) -> bool {
    !p.is_zero() && p.coeffs().iter().all(One::is_one)
}

/// Whether ∇^λ Sym^ℓ E is irreducible, and if so of which highest weight n:
/// ℓ = 1 needs len(λ) ≤ 2; ℓ ≥ 2 needs λ ∈ {(p^{ℓ+1}), (p,(p−1)^ℓ), (p^ℓ,p−1)};
/// then n = ℓ|λ| − 2b(λ).
pub fn irreducible_partition_predicate(lam: &Partition, ell: u32) -> Option<u64> {
    let n = || ell as u64 * lam.size() - 2 * lam.min_weight();
    if lam.is_empty() {
        return Some(0);
    }
    if ell == 0 {
        return if lam.len() <= 1 { Some(n()) } else { None };
    }
    if ell == 1 {
        return if lam.len() <= 2 { Some(n()) } else { None };
    }
    let p = lam.a();
    let rectangle = Partition::new(vec![p; ell as usize + 1]);
    let mut hook_row = vec![p.saturating_sub(1); ell as usize + 1];
    hook_row[0] = p;
    let near_row = Partition::from_parts_with_zeros(&hook_row).unwrap();
    let mut col_short = vec![p; ell as usize + 1];
    col_short[ell as usize] = p - 1;
    let near_col = Partition::from_parts_with_zeros(&col_short).unwrap();
    if *lam == rectangle || *lam == near_row || *lam == near_col {
        Some(n())
    } else {
        None
    }
}

/// All skew shapes (outer, inner) with |outer| ≤ max_outer and inner ⊊ outer,
/// including straight shapes (inner = ∅).  Test/verification helper.
pub fn all_skew_shapes(max_outer: u32) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for outer in Partition::all_up_to_size(max_outer) {
        for inner_size in 0..outer.size() as u32 {
            for inner in if inner_size == 0 {
                vec![Partition::empty()]
            } else {
                Partition::all_of_size(inner_size)
            } {
                if outer.contains(&inner) {
                    out.push(SkewShape::new(outer.clone(), inner).unwrap());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialize::skew_spec;
    use crate::tableaux::min_weight_tableau;

    fn shape(outer: &str, inner: &str) -> SkewShape {
        SkewShape::new(
            Partition::parse(outer).unwrap(),
            Partition::parse(inner).unwrap(),
        )
        .unwrap()
    }

    fn straight(outer: &str) -> SkewShape {
        SkewShape::straight(Partition::parse(outer).unwrap())
    }

    #[test]
    fn proper_reduction_examples() {
        assert_eq!(proper_reduction(&straight("3,2")), straight("3,2"));
        assert_eq!(proper_reduction(&shape("4,4,2", "4,1")), shape("4,2", "1"));
        assert_eq!(proper_reduction(&shape("2,2", "1,1")), straight("1,1"));
        assert_eq!(
            proper_reduction(&shape("2,2", "2,2")),
            SkewShape::straight(Partition::empty())
        );
        // Idempotent, proper, and oracle-invariant.
        for s in all_skew_shapes(6) {
            let r = proper_reduction(&s);
            assert_eq!(proper_reduction(&r), r);
            assert!(r.is_empty() || is_proper(&r));
            assert_eq!(r.size(), s.size());
            for ell in 0..=3u32 {
                assert_eq!(
                    crate::tableaux::weight_enumerator(&s, ell).unwrap(),
                    crate::tableaux::weight_enumerator(&r, ell).unwrap(),
                    "shape {s}, ℓ={ell}"
                );
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_shape(&shape("3^4,1", "2"), 3).unwrap(),
            ShapeClass::EllNearRectangle {
                special_column: 2,
                special_length: 3
            }
        );
        assert_eq!(
            classify_shape(&straight("2^4"), 3).unwrap(),
            ShapeClass::SkewRectangle
        );
        assert_eq!(
            classify_shape(&shape("3^4,1^2", "2^2"), 3).unwrap(),
            ShapeClass::Other
        );
        // (6,6,4,1)/(5,4): a run of four length-1 columns whose single boxes
        // do not all share a row, so the height condition rejects it.
        let diag = shape("6,6,4,1", "5,4");
        assert_eq!(diag.column_lengths(), vec![2, 1, 1, 1, 1, 2]);
        assert_eq!(classify_shape(&diag, 1).unwrap(), ShapeClass::Other);
        // (6,6,2,1)/(5,1): run of three length-1 columns all in row 2,
        // flanked by length-2 columns — a genuine 1-near rectangle.
        let near = shape("6,6,2,1", "5,1");
        assert_eq!(near.column_lengths(), vec![2, 2, 1, 1, 1, 2]);
        assert_eq!(
            classify_shape(&near, 1).unwrap(),
            ShapeClass::OneNearRectangle { width: 3 }
        );
        assert!(classify_shape(&shape("2,2", "2"), 1).is_err());
    }

    #[test]
    fn diagonally_split_run_is_not_near_rectangle() {
        // (2,1)/(1): two single boxes sharing no row or column; the height
        // condition on the run of length-1 columns rejects it.
        let s = shape("2,1", "1");
        assert_eq!(s.column_lengths(), vec![1, 1]);
        assert_eq!(classify_shape(&s, 1).unwrap(), ShapeClass::Other);
        assert!(!is_ell_irreducible(&s, 1));
    }

    #[test]
    fn worked_examples() {
        let irr = shape("3^4,1", "2");
        assert!(is_ell_irreducible(&irr, 3));
        assert!(is_ell_irreducible_oracle(&irr, 3).unwrap());
        let red = shape("3^4,1^2", "2^2");
        assert!(!is_ell_irreducible(&red, 3));
        assert!(!is_ell_irreducible_oracle(&red, 3).unwrap());
        assert!(is_ell_irreducible(&straight("5"), 0));
        assert!(is_ell_irreducible(&straight("2,1"), 1));
        assert!(is_ell_irreducible(&straight("2,2"), 1));
    }

    #[test]
    fn disconnected_monomial_blocks() {
        // c = (2,0,2): two forced columns; the specialization is q² so the
        // shape is 1-irreducible despite not matching the strict definition.
        let s = shape("3,3,1,1", "2,2");
        assert_eq!(s.column_lengths(), vec![2, 0, 2]);
        assert_eq!(classify_shape(&s, 1).unwrap(), ShapeClass::Other);
        assert!(is_ell_irreducible(&s, 1));
        assert!(is_ell_irreducible_oracle(&s, 1).unwrap());
    }

    #[test]
    fn classifier_matches_oracle_small() {
        for s in all_skew_shapes(7) {
            for ell in 0..=3u32 {
                assert_eq!(
                    is_ell_irreducible(&s, ell),
                    is_ell_irreducible_oracle(&s, ell).unwrap(),
                    "shape {s}, ℓ={ell}"
                );
            }
        }
    }

    #[test]
    fn value_forms() {
        for s in all_skew_shapes(7) {
            for ell in 1..=3u32 {
                let reduced = proper_reduction(&s);
                if reduced.is_empty() || !is_proper(&reduced) {
                    continue;
                }
                let class = classify_shape(&reduced, ell).unwrap();
                let spec = skew_spec(&reduced, ell).unwrap();
                let b = reduced.min_weight() as i64;
                match class {
                    ShapeClass::SkewRectangle => {
                        let n = reduced.size() as i64;
                        assert_eq!(spec, QPoly::monomial(1.into(), ell as i64 * n / 2));
                    }
                    ShapeClass::OneNearRectangle { width } => {
                        assert_eq!(
                            spec,
                            QPoly::from_i64_coeffs(b, &vec![1; width as usize + 1])
                        );
                    }
                    ShapeClass::EllNearRectangle { .. } => {
                        assert_eq!(spec, QPoly::from_i64_coeffs(b, &vec![1; ell as usize + 1]));
                    }
                    ShapeClass::Other => {}
                }
            }
        }
    }

    #[test]
    fn bump_lemma() {
        // Two or more bumpable boxes in the minimal tableau force
        // reducibility.
        for s in all_skew_shapes(7) {
            for ell in 1..=3u32 {
                let reduced = proper_reduction(&s);
                if reduced.is_empty() || reduced.column_lengths().iter().any(|&c| c > ell + 1) {
                    continue;
                }
                let t = min_weight_tableau(&reduced, ell).unwrap();
                if t.bumpable_boxes().len() >= 2 {
                    assert!(
                        !is_ell_irreducible(&reduced, ell),
                        "shape {reduced}, ℓ={ell}"
                    );
                }
            }
        }
    }

    #[test]
    fn partition_predicate() {
        use crate::partitions::Partition;
        fn p(s: &str) -> Partition {
            Partition::parse(s).unwrap()
        }
        assert_eq!(irreducible_partition_predicate(&p("4,2"), 1), Some(2));
        assert!(irreducible_partition_predicate(&p("3,2,2"), 2).is_some());
        assert_eq!(irreducible_partition_predicate(&p("2,1"), 2), None);
        assert_eq!(irreducible_partition_predicate(&p("3^3"), 2), Some(0));
        // Agreement with the structural decision on straight shapes.
        for lam in Partition::all_up_to_size(8) {
            for ell in 0..=3u32 {
                let claimed = irreducible_partition_predicate(&lam, ell);
                let shape = SkewShape::straight(lam.clone());
                let spec_ok = is_ell_irreducible(&shape, ell)
                    && !crate::specialize::schur_spec_hcf(&lam, ell).is_zero();
                assert_eq!(claimed.is_some(), spec_ok, "λ={lam}, ℓ={ell}");
                if let Some(n) = claimed {
                    let spec = crate::specialize::schur_spec_hcf(&lam, ell);
                    let width = (spec.max_exp().unwrap() - spec.min_exp().unwrap()) as u64;
                    assert_eq!(n, width);
                }
            }
        }
    }
}
