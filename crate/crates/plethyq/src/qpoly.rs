//! Exact integer-coefficient Laurent polynomials in q.
//!
//! The value type of every specialization and identity in this crate:
//! quantum integers [m]_q = 1 + q + ⋯ + q^{m−1} (with [m]_q = 0 for m ≤ 0),
//! q-binomial coefficients, exact division, determinants of polynomial
//! matrices, and the unimodality/palindromicity predicates.
//!
//! Coefficients are arbitrary-precision integers; storage is dense because
//! all polynomials arising here (specializations, plane-partition generating
//! functions) have no gaps worth exploiting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QPolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact (non-zero remainder)")]
    DivisionNotExact,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// A Laurent polynomial in q with exact integer coefficients.
///
/// `coeffs[k]` is the coefficient of `q^{min_exp + k}`.  Canonical form:
/// the first and last coefficients are non-zero; the zero polynomial has
/// empty coefficients and `min_exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        QPoly::monomial(BigInt::one(), 0)
    }

    /// The monomial c·q^e (canonicalized to zero if c = 0).
    pub fn monomial(c: BigInt, e: i64) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly {
                min_exp: e,
                coeffs: vec![c],
            }
        }
    }

    /// Build from the coefficient of q^{min_exp} upwards; trims to canonical form.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { min_exp, coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_coeffs(min_exp: i64, coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.min_exp += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with non-zero coefficient; None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// Highest exponent with non-zero coefficient; None for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    /// Coefficient of q^e.
    pub fn coeff(&self, e: i64) -> BigInt {
        let idx = e - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Coefficients in exponent order starting at `min_exp()`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiply by q^e.
    pub fn shift(&self, e: i64) -> QPoly {
        if self.is_zero() {
            QPoly::zero()
        } else {
            QPoly {
                min_exp: self.min_exp + e,
                coeffs: self.coeffs.clone(),
            }
        }
    }

    /// Evaluate at q = 1 (the sum of the coefficients).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The quantum integer [m]_q = 1 + q + ⋯ + q^{m−1}, with [m]_q = 0 for m ≤ 0.
    pub fn quantum_int(m: i64) -> QPoly {
        if m <= 0 {
            QPoly::zero()
        } else {
            QPoly {
                min_exp: 0,
                coeffs: vec![BigInt::one(); m as usize],
            }
        }
    }

    /// The Gaussian binomial coefficient [m choose l]_q = [m]⋯[m−l+1] / ([l]⋯[1]).
    ///
    /// Zero when l < 0, m < 0 or l > m; one when l = 0.
    pub fn q_binomial(m: i64, l: i64) -> QPoly {
        if l < 0 || m < 0 || l > m {
            return QPoly::zero();
        }
        let mut acc = QPoly::one();
        // Interleave multiplication and division so every intermediate value
        // is the polynomial [m choose i]_q.
        for i in 1..=l {
            acc = &acc * &QPoly::quantum_int(m - l + i);
            acc = acc
                .exact_divide(&QPoly::quantum_int(i))
                .expect("q-binomial division is always exact");
        }
        acc
    }

    /// The scaled q-binomial ⟨m over l⟩ = q^{l(l−1)/2}·[m choose l]_q, the
    /// generating function of l-subsets of {0,…,m−1} by sum.
    pub fn scaled_q_binomial(m: i64, l: i64) -> QPoly {
        if l < 0 || m < 0 || l > m {
            return QPoly::zero();
        }
        QPoly::q_binomial(m, l).shift(l * (l - 1) / 2)
    }

    /// Exact quotient; errors with [`QPolyError::DivisionNotExact`] if the
    /// remainder is non-zero.
    pub fn exact_divide(&self, d: &QPoly) -> Result<QPoly, QPolyError> {
        if d.is_zero() {
            return Err(QPolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Err(QPolyError::DivisionNotExact);
        }
        let qlen = self.coeffs.len() - d.coeffs.len() + 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); qlen];
        let dlead = d.coeffs.last().unwrap();
        // Long division from the top coefficient downwards.
        for k in (0..qlen).rev() {
            let top = rem[k + d.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = num_integer::div_rem(top, dlead.clone());
            if !r.is_zero() {
                return Err(QPolyError::DivisionNotExact);
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let prod = dc * &c;
                rem[k + i] -= prod;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(QPolyError::DivisionNotExact);
        }
        Ok(QPoly::from_coeffs(self.min_exp - d.min_exp, quot))
    }

    /// Unimodality and palindromicity of the coefficient sequence.
    ///
    /// Returns `(unimodal, center_times_two)` where `center_times_two` is
    /// `min_exp + max_exp` when the coefficients read the same in both
    /// directions, and None otherwise.
    pub fn symmetry_checks(&self) -> Result<(bool, Option<i64>), QPolyError> {
        if self.is_zero() {
            return Err(QPolyError::ZeroPolynomial);
        }
        let cs = &self.coeffs;
        let mut rising = true;
        let mut unimodal = true;
        for w in cs.windows(2) {
            if rising {
                if w[1] < w[0] {
                    rising = false;
                }
            } else if w[1] > w[0] {
                unimodal = false;
                break;
            }
        }
        let palindromic = cs.iter().eq(cs.iter().rev());
        let center = palindromic.then(|| self.min_exp + self.max_exp().unwrap());
        Ok((unimodal, center))
    }

    /// JSON form {"min": e, "coeffs": ["…", …]} with decimal-string coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "min": self.min_exp,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QPoly {
    /// Ascending-exponent rendering, e.g. `q^{-2} + 3 + q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag.is_one() {
                        write!(f, "q")?;
                    } else {
                        write!(f, "{mag} q")?;
                    }
                }
                _ => {
                    if mag.is_one() {
                        write!(f, "q^{{{e}}}")?;
                    } else {
                        write!(f, "{mag} q^{{{e}}}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min_exp.min(rhs.min_exp);
        let max = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (max - min + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_exp - min) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_exp - min) as usize + k] += c;
        }
        QPoly::from_coeffs(min, coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(self.min_exp + rhs.min_exp, coeffs)
    }
}

/// Exact determinant of a square matrix of Laurent polynomials.
///
/// Cofactor expansion for size ≤ 4; fraction-free Bareiss elimination above
/// (every division is exact over the Laurent polynomial ring).
pub fn poly_matrix_determinant(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    assert!(n <= 12, "determinant size capped at 12");
    if n == 0 {
        return QPoly::one();
    }
    if n <= 4 {
        return cofactor_det(m);
    }
    bareiss_det(m.to_vec())
}

fn cofactor_det(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = QPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        det = if j % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}

fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev_pivot = QPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return QPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_divide(&prev_pivot)
                    .expect("Bareiss division is always exact");
            }
            m[i][k] = QPoly::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        &QPoly::zero() - &det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_int_basic() {
        assert!(QPoly::quantum_int(0).is_zero());
        assert!(QPoly::quantum_int(-2).is_zero());
        assert!(QPoly::quantum_int(1).is_one());
        assert_eq!(QPoly::quantum_int(3), QPoly::from_i64_coeffs(0, &[1, 1, 1]));
    }

    #[test]
    fn quantum_int_splitting() {
        // [m+n]_q = [m]_q + q^m [n]_q.
        for m in 0..=20 {
            for n in 0..=20 {
                let lhs = QPoly::quantum_int(m + n);
                let rhs = &QPoly::quantum_int(m) + &QPoly::quantum_int(n).shift(m);
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(QPoly::q_binomial(2, 1), QPoly::from_i64_coeffs(0, &[1, 1]));
        assert_eq!(
            QPoly::q_binomial(4, 2),
            QPoly::from_i64_coeffs(0, &[1, 1, 2, 1, 1])
        );
        assert!(QPoly::q_binomial(2, 3).is_zero());
        assert!(QPoly::q_binomial(3, 0).is_one());
    }

    #[test]
    fn q_binomial_symmetry() {
        for m in 0..=20i64 {
            for l in 0..=m {
                assert_eq!(QPoly::q_binomial(m, l), QPoly::q_binomial(m, m - l));
            }
        }
    }

    #[test]
    fn scaled_q_binomial_values() {
        assert_eq!(
            QPoly::scaled_q_binomial(2, 1),
            QPoly::from_i64_coeffs(0, &[1, 1])
        );
        // Subsets {0,1},{0,2},{1,2} of {0,1,2} have sums 1,2,3.
        assert_eq!(
            QPoly::scaled_q_binomial(3, 2),
            QPoly::from_i64_coeffs(1, &[1, 1, 1])
        );
        assert!(QPoly::scaled_q_binomial(5, 0).is_one());
    }

    #[test]
    fn scaled_q_binomial_counts_subsets() {
        // Coefficient of q^e counts l-subsets of {0,…,m−1} with sum e.
        for m in 0..=12i64 {
            for l in 0..=m {
                let p = QPoly::scaled_q_binomial(m, l);
                let mut counts = std::collections::BTreeMap::new();
                let mut stack = vec![(0i64, 0i64, 0i64)]; // (next, chosen, sum)
                while let Some((next, chosen, sum)) = stack.pop() {
                    if chosen == l {
                        *counts.entry(sum).or_insert(0i64) += 1;
                        continue;
                    }
                    if next >= m {
                        continue;
                    }
                    stack.push((next + 1, chosen, sum));
                    stack.push((next + 1, chosen + 1, sum + next));
                }
                for (e, c) in counts {
                    assert_eq!(p.coeff(e), BigInt::from(c), "m={m} l={l} e={e}");
                }
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let p = QPoly::from_i64_coeffs(0, &[1, 1]);
        assert_eq!(&p * &p, QPoly::from_i64_coeffs(0, &[1, 2, 1]));
        assert_eq!(p.shift(-1), QPoly::from_i64_coeffs(-1, &[1, 1]));
        let two = QPoly::quantum_int(2);
        let three = QPoly::quantum_int(3);
        assert_eq!(&two * &three, QPoly::from_i64_coeffs(0, &[1, 2, 2, 1]));
    }

    #[test]
    fn ring_axioms_smoke() {
        let polys = [
            QPoly::zero(),
            QPoly::one(),
            QPoly::from_i64_coeffs(-1, &[1, 0, -2]),
            QPoly::from_i64_coeffs(2, &[3, 1]),
            QPoly::from_i64_coeffs(0, &[1, 1, 1]),
        ];
        for a in &polys {
            for b in &polys {
                assert_eq!(&(a * b), &(b * a));
                for c in &polys {
                    assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
                    assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
                }
            }
        }
    }

    #[test]
    fn exact_divide_examples() {
        let n = QPoly::from_i64_coeffs(0, &[-1, 0, 1]); // q² − 1
        let d = QPoly::from_i64_coeffs(0, &[-1, 1]); // q − 1
        assert_eq!(
            n.exact_divide(&d).unwrap(),
            QPoly::from_i64_coeffs(0, &[1, 1])
        );
        let q6 = QPoly::quantum_int(6);
        let q3 = QPoly::quantum_int(3);
        assert_eq!(
            q6.exact_divide(&q3).unwrap(),
            QPoly::from_i64_coeffs(0, &[1, 0, 0, 1])
        );
        let bad = QPoly::from_i64_coeffs(0, &[1, 1]).exact_divide(&QPoly::quantum_int(3));
        assert_eq!(bad.unwrap_err(), QPolyError::DivisionNotExact);
    }

    #[test]
    fn exact_divide_laurent_round_trip() {
        let a = QPoly::from_i64_coeffs(-3, &[2, 0, 5, 1]);
        let b = QPoly::from_i64_coeffs(-1, &[1, 7, 3]);
        let prod = &a * &b;
        assert_eq!(prod.exact_divide(&b).unwrap(), a);
        assert_eq!(prod.exact_divide(&a).unwrap(), b);
    }

    #[test]
    fn symmetry_checks_examples() {
        let p = QPoly::from_i64_coeffs(0, &[1, 1, 1]);
        assert_eq!(p.symmetry_checks().unwrap(), (true, Some(2)));
        let q = QPoly::from_i64_coeffs(0, &[1, 2, 0, 1]);
        assert_eq!(q.symmetry_checks().unwrap(), (false, None));
        let r = QPoly::from_i64_coeffs(1, &[1, 2, 2, 2, 1]);
        assert_eq!(r.symmetry_checks().unwrap(), (true, Some(6)));
        assert_eq!(
            QPoly::zero().symmetry_checks().unwrap_err(),
            QPolyError::ZeroPolynomial
        );
    }

    #[test]
    fn determinant_small() {
        let p = QPoly::from_i64_coeffs(0, &[1, 2]);
        assert_eq!(poly_matrix_determinant(&[vec![p.clone()]]), p);
        let one = QPoly::one();
        let q = QPoly::from_i64_coeffs(1, &[1]);
        let m = vec![vec![one.clone(), q.clone()], vec![q.clone(), one.clone()]];
        assert_eq!(
            poly_matrix_determinant(&m),
            QPoly::from_i64_coeffs(0, &[1, 0, -1])
        );
    }

    #[test]
    fn determinant_bareiss_matches_cofactor() {
        // A 6×6 Vandermonde-style matrix in q exercises the Bareiss path.
        let n = 6;
        let m: Vec<Vec<QPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| QPoly::scaled_q_binomial((i + j + 2) as i64, (j + 1) as i64))
                    .collect()
            })
            .collect();
        let by_bareiss = poly_matrix_determinant(&m);
        let by_cofactor = cofactor_det(&m);
        assert_eq!(by_bareiss, by_cofactor);
    }

    #[test]
    fn display_rendering() {
        let p = QPoly::from_i64_coeffs(-2, &[1, 0, 3, 1]);
        assert_eq!(p.to_string(), "q^{-2} + 3 + q");
        assert_eq!(QPoly::zero().to_string(), "0");
        let q = QPoly::from_i64_coeffs(0, &[-1, 2]);
        assert_eq!(q.to_string(), "-1 + 2 q");
    }
}
