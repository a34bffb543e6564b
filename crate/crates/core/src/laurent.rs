//! Sparse multivariate Laurent polynomials over arbitrary-precision
//! integers.
//!
//! A [`LaurentPolynomial`] is a finite map from exponent vectors (integer
//! tuples, negative entries allowed) to nonzero big-integer coefficients.
//! Invariants held at rest:
//!
//! * no stored zero coefficients and no duplicate exponent vectors;
//! * one exponent length (`num_vars`) across all terms;
//! * terms sorted lexicographically by exponent vector, so serialization
//!   and iteration order are deterministic.
//!
//! Multiplication merges terms through a hash map and re-canonicalizes.
//! The star of the module is [`LaurentPolynomial::constant_term_of_power`],
//! a pruned product kernel: while accumulating `f^m` factor by factor it
//! keeps a partial monomial only if it can still reach exponent zero, i.e.
//! after `j` of `m` factors the vector `v` survives only when for every
//! coordinate `c`
//!
//! ```text
//! v_c + (m-j)·maxexp_c(f) >= 0   and   v_c + (m-j)·minexp_c(f) <= 0,
//! ```
//!
//! where `maxexp`/`minexp` are the per-coordinate extremes of the support
//! of `f`. At `j = m` only the zero vector survives, whose coefficient is
//! the constant term of `f^m`. Each power uses its own bound, so
//! [`LaurentPolynomial::period_sequence`] runs one pruned product per
//! index (in parallel under the `parallel` feature) instead of one long
//! unpruned product.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::par;

/// Errors from Laurent-polynomial construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentError {
    /// Operands or term vectors disagree on the number of variables.
    DimensionMismatch { expected: usize, found: usize },
    /// The polynomial has no variables at all.
    NoVariables,
    /// The operation needs a nonzero polynomial.
    EmptyPolynomial,
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} variables, found {found}")
            }
            LaurentError::NoVariables => write!(f, "a Laurent polynomial needs at least one variable"),
            LaurentError::EmptyPolynomial => write!(f, "the zero polynomial is not allowed here"),
        }
    }
}

impl std::error::Error for LaurentError {}

/// A sparse Laurent polynomial with big-integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct LaurentPolynomial {
    num_vars: usize,
    /// Sorted lexicographically by exponent vector; coefficients nonzero.
    terms: Vec<(Vec<i64>, BigInt)>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    num_vars: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<i64>,
}

impl TryFrom<PolyJson> for LaurentPolynomial {
    type Error = String;

    fn try_from(json: PolyJson) -> Result<Self, String> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in json.terms {
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|e| format!("invalid coefficient {:?}: {e}", t.coeff))?;
            terms.push((t.exps, coeff));
        }
        LaurentPolynomial::new(json.num_vars, terms).map_err(|e| e.to_string())
    }
}

impl From<LaurentPolynomial> for PolyJson {
    fn from(p: LaurentPolynomial) -> PolyJson {
        PolyJson {
            num_vars: p.num_vars,
            terms: p
                .terms
                .into_iter()
                .map(|(exps, coeff)| TermJson {
                    coeff: coeff.to_string(),
                    exps,
                })
                .collect(),
        }
    }
}

impl LaurentPolynomial {
    /// Builds a polynomial from raw terms: duplicate exponent vectors are
    /// merged, zero coefficients dropped, terms sorted.
    pub fn new(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>,
    ) -> Result<Self, LaurentError> {
        if num_vars == 0 {
            return Err(LaurentError::NoVariables);
        }
        let mut map: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for (exps, coeff) in terms {
            if exps.len() != num_vars {
                return Err(LaurentError::DimensionMismatch {
                    expected: num_vars,
                    found: exps.len(),
                });
            }
            *map.entry(exps).or_insert_with(BigInt::zero) += coeff;
        }
        Ok(Self::from_map(num_vars, map))
    }

    fn from_map(num_vars: usize, map: HashMap<Vec<i64>, BigInt>) -> Self {
        let mut terms: Vec<(Vec<i64>, BigInt)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPolynomial { num_vars, terms }
    }

    pub fn zero(num_vars: usize) -> Self {
        LaurentPolynomial {
            num_vars: num_vars.max(1),
            terms: Vec::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::monomial(num_vars, vec![0; num_vars.max(1)], BigInt::one())
    }

    /// The single-term polynomial `coeff · x^exps`.
    pub fn monomial(num_vars: usize, exps: Vec<i64>, coeff: BigInt) -> Self {
        let num_vars = num_vars.max(1);
        assert_eq!(exps.len(), num_vars, "monomial exponent length");
        if coeff.is_zero() {
            return Self::zero(num_vars);
        }
        LaurentPolynomial {
            num_vars,
            terms: vec![(exps, coeff)],
        }
    }

    /// The variable `x_index` as a polynomial in `num_vars` variables.
    pub fn variable(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index in range");
        let mut exps = vec![0i64; num_vars];
        exps[index] = 1;
        Self::monomial(num_vars, exps, BigInt::one())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The coefficient at `exps` (zero if absent).
    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        match self.terms.binary_search_by(|(e, _)| e.as_slice().cmp(exps)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// The coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0i64; self.num_vars])
    }

    fn check_dims(&self, other: &Self) -> Result<(), LaurentError> {
        if self.num_vars != other.num_vars {
            return Err(LaurentError::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    /// Coefficient-wise sum; cancelled terms are dropped.
    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_dims(other)?;
        let mut map: HashMap<Vec<i64>, BigInt> =
            self.terms.iter().cloned().collect();
        for (exps, coeff) in &other.terms {
            *map.entry(exps.clone()).or_insert_with(BigInt::zero) += coeff;
        }
        Ok(Self::from_map(self.num_vars, map))
    }

    /// Distributive product: exponent vectors add componentwise, like terms
    /// merge.
    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_dims(other)?;
        let mut map: HashMap<Vec<i64>, BigInt> =
            HashMap::with_capacity(self.terms.len().max(other.terms.len()));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *map.entry(exps).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(self.num_vars, map))
    }

    /// `f^m` by binary exponentiation.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut result = Self::one(self.num_vars);
        if m == 0 {
            return result;
        }
        let mut base = self.clone();
        loop {
            if m & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            m >>= 1;
            if m == 0 {
                return result;
            }
            base = base.mul(&base).expect("same dimension");
        }
    }

    /// Per-coordinate minima and maxima of the support, `None` for the zero
    /// polynomial.
    pub fn support_bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.terms.first()?;
        let mut min = first.0.clone();
        let mut max = first.0.clone();
        for (exps, _) in &self.terms[1..] {
            for (c, &e) in exps.iter().enumerate() {
                if e < min[c] {
                    min[c] = e;
                }
                if e > max[c] {
                    max[c] = e;
                }
            }
        }
        Some((min, max))
    }

    /// Constant term of `f^m` through the pruned product kernel.
    pub fn constant_term_of_power(&self, m: u64) -> BigInt {
        if m == 0 {
            return BigInt::one();
        }
        let Some((min_e, max_e)) = self.support_bounds() else {
            return BigInt::zero();
        };
        let zero = vec![0i64; self.num_vars];
        let mut acc: HashMap<Vec<i64>, BigInt> = HashMap::new();
        acc.insert(zero.clone(), BigInt::one());
        for j in 1..=m {
            let remaining = (m - j) as i64;
            let mut next: HashMap<Vec<i64>, BigInt> = HashMap::with_capacity(acc.len());
            'pair: for (ea, ca) in &acc {
                for (eb, cb) in &self.terms {
                    let mut exps = Vec::with_capacity(self.num_vars);
                    for c in 0..self.num_vars {
                        let e = ea[c] + eb[c];
                        // Survivability box bound for the remaining factors.
                        if e + remaining * max_e[c] < 0 || e + remaining * min_e[c] > 0 {
                            continue 'pair;
                        }
                        exps.push(e);
                    }
                    *next.entry(exps).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            next.retain(|_, c| !c.is_zero());
            if next.is_empty() {
                return BigInt::zero();
            }
            acc = next;
        }
        // At j = m the bound pins every coordinate to zero.
        acc.remove(&zero).unwrap_or_else(BigInt::zero)
    }

    /// `b_0..b_n` with `b_i` the constant term of `f^i`, each index through
    /// its own pruned product (evaluated in parallel under the `parallel`
    /// feature; output order is fixed by the index either way).
    pub fn period_sequence(&self, n: usize) -> PeriodSequence {
        let coefficients = par::map_ordered((0..=n as u64).collect(), |m| {
            self.constant_term_of_power(m)
        });
        PeriodSequence { coefficients }
    }

    /// Reference kernel: full unpruned powers, constant term read off.
    pub fn period_sequence_naive(&self, n: usize) -> PeriodSequence {
        let coefficients = (0..=n as u64)
            .map(|m| self.pow(m).constant_term())
            .collect();
        PeriodSequence { coefficients }
    }

    /// Relabels variables: output variable `perm[c]` carries what input
    /// variable `c` carried.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self, LaurentError> {
        if perm.len() != self.num_vars {
            return Err(LaurentError::DimensionMismatch {
                expected: self.num_vars,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.num_vars];
        for &p in perm {
            assert!(p < self.num_vars && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let terms = self.terms.iter().map(|(exps, coeff)| {
            let mut out = vec![0i64; self.num_vars];
            for (c, &e) in exps.iter().enumerate() {
                out[perm[c]] = e;
            }
            (out, coeff.clone())
        });
        Self::new(self.num_vars, terms)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if exps.iter().all(|&e| e == 0) {
                write!(f, "{coeff}")?;
                continue;
            }
            if !coeff.is_one() {
                write!(f, "{coeff}*")?;
            }
            let mut first = true;
            for (c, &e) in exps.iter().enumerate() {
                if e != 0 {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "x{c}")?;
                    } else {
                        write!(f, "x{c}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The constant terms `b_0, b_1, ...` of successive powers of a Laurent
/// polynomial; `b_0 = 1` always.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSequence {
    #[serde(
        rename = "coeffs",
        serialize_with = "crate::serde_util::bigint_vec::serialize",
        deserialize_with = "crate::serde_util::bigint_vec::deserialize"
    )]
    coefficients: Vec<BigInt>,
}

impl PeriodSequence {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn get(&self, i: usize) -> Option<&BigInt> {
        self.coefficients.get(i)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Indices `i > 0` with `b_i != 0`, handy for vanishing-pattern checks.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Convenience for tests and fixtures: terms from `(exps, i64)` pairs.
pub fn poly(num_vars: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
    LaurentPolynomial::new(
        num_vars,
        terms
            .iter()
            .map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
    )
    .expect("well-formed fixture polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (y1 + y2 + 1)^3 / (y1*y2), the anticanonical cubic-surface mirror.
    fn cubic_surface_mirror() -> LaurentPolynomial {
        let base = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let shift = LaurentPolynomial::monomial(2, vec![-1, -1], BigInt::one());
        base.pow(3).mul(&shift).unwrap()
    }

    #[test]
    fn add_cancels_to_zero_terms() {
        let a = poly(1, &[(&[1], 1), (&[0], 1)]);
        let b = poly(1, &[(&[0], -1)]);
        assert_eq!(a.add(&b).unwrap(), poly(1, &[(&[1], 1)]));
    }

    #[test]
    fn add_merges_negative_exponents() {
        let a = poly(1, &[(&[-1], 1)]);
        assert_eq!(a.add(&a).unwrap(), poly(1, &[(&[-1], 2)]));
    }

    #[test]
    fn add_zero_is_identity() {
        let f = poly(2, &[(&[1, -2], 7), (&[0, 0], -3)]);
        assert_eq!(f.add(&LaurentPolynomial::zero(2)).unwrap(), f);
    }

    #[test]
    fn mul_difference_of_squares() {
        let sum = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let diff = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(
            sum.mul(&diff).unwrap(),
            poly(2, &[(&[2, 0], 1), (&[0, 2], -1)])
        );
    }

    #[test]
    fn mul_cancels_exponents_through_zero() {
        let x = poly(1, &[(&[1], 1)]);
        let x_inv = poly(1, &[(&[-1], 1)]);
        assert_eq!(x.mul(&x_inv).unwrap(), LaurentPolynomial::one(1));
    }

    #[test]
    fn mul_binomial_square() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let sq = f.mul(&f).unwrap();
        assert_eq!(
            sq,
            poly(
                2,
                &[
                    (&[2, 0], 1),
                    (&[1, 1], 2),
                    (&[1, 0], 2),
                    (&[0, 2], 1),
                    (&[0, 1], 2),
                    (&[0, 0], 1),
                ]
            )
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = LaurentPolynomial::one(1);
        let b = LaurentPolynomial::one(2);
        assert_eq!(
            a.add(&b),
            Err(LaurentError::DimensionMismatch { expected: 1, found: 2 })
        );
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn pow_zero_is_one() {
        let f = poly(2, &[(&[1, -1], 5)]);
        assert_eq!(f.pow(0), LaurentPolynomial::one(2));
    }

    #[test]
    fn pow_multinomial_coefficients() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        // 3!/(1!1!1!) = 6 on y1*y2 in (y1+y2+1)^3.
        assert_eq!(f.pow(3).coeff(&[1, 1]), BigInt::from(6));
        // 6!/(1!2!3!) = 60 on y1*y2^2 in (y1+y2+1)^6.
        assert_eq!(f.pow(6).coeff(&[1, 2]), BigInt::from(60));
    }

    #[test]
    fn constant_term_reads_zero_vector() {
        assert_eq!(
            poly(1, &[(&[0], 1), (&[1], 1)]).constant_term(),
            BigInt::one()
        );
        assert_eq!(
            poly(1, &[(&[1], 1), (&[-1], 1)]).constant_term(),
            BigInt::zero()
        );
        assert_eq!(cubic_surface_mirror().constant_term(), BigInt::from(6));
    }

    #[test]
    fn period_sequence_of_cubic_surface_mirror() {
        let f = cubic_surface_mirror();
        let b = f.period_sequence(4);
        let expect: Vec<BigInt> = [1, 6, 90, 1680, 34650]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(b.coefficients(), expect.as_slice());
    }

    #[test]
    fn period_sequence_at_zero_is_one() {
        let f = poly(3, &[(&[1, 2, -3], 11), (&[0, -1, 0], -4)]);
        assert_eq!(f.period_sequence(0).coefficients(), &[BigInt::one()]);
    }

    #[test]
    fn period_sequence_of_zero_polynomial() {
        let z = LaurentPolynomial::zero(2);
        assert_eq!(
            z.period_sequence(2).coefficients(),
            &[BigInt::one(), BigInt::zero(), BigInt::zero()]
        );
    }

    #[test]
    fn pruned_kernel_matches_naive_on_mixed_signs() {
        let f = poly(2, &[(&[1, 0], 2), (&[-1, 1], -3), (&[0, -1], 1), (&[0, 0], -1)]);
        for m in 0..=8u64 {
            assert_eq!(
                f.constant_term_of_power(m),
                f.pow(m).constant_term(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn permute_vars_preserves_period_sequence() {
        let f = poly(3, &[(&[1, 0, -1], 1), (&[0, 2, 0], -2), (&[0, 0, 0], 3), (&[-1, 1, 1], 1)]);
        let g = f.permute_vars(&[2, 0, 1]).unwrap();
        assert_eq!(f.period_sequence(6), g.period_sequence(6));
    }

    #[test]
    fn json_round_trip_keeps_sorted_terms_and_string_coeffs() {
        let f = poly(2, &[(&[0, 0], 1), (&[-1, -1], 6), (&[2, -1], 1)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"num_vars":2,"terms":[{"coeff":"6","exps":[-1,-1]},{"coeff":"1","exps":[0,0]},{"coeff":"1","exps":[2,-1]}]}"#
        );
        assert_eq!(serde_json::from_str::<LaurentPolynomial>(&json).unwrap(), f);
    }

    #[test]
    fn big_coefficients_survive_json() {
        let c: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = LaurentPolynomial::monomial(1, vec![-2], c.clone());
        let json = serde_json::to_string(&f).unwrap();
        let back: LaurentPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back.coeff(&[-2]), c);
    }
}
