//! Weighted projective space numerics.
//!
//! A [`CISpec`] is a weight vector `w_0..w_n` together with a degree vector
//! `d_1..d_k`, describing a complete intersection of `k` hypersurfaces in
//! the weighted projective space `P(w_0,...,w_n)`. This module implements
//! the purely numeric criteria attached to such data:
//!
//! * normalization — no `n` of the `n+1` weights share a common factor,
//!   weights ascending; every space is isomorphic to a unique normalized one;
//! * Cartier — every weight divides every degree;
//! * smoothness — every `k+1` weights are coprime;
//! * the relaxed condition — for every prime power `q > 1` the number of
//!   weights divisible by `q` is at most the number of degrees divisible
//!   by `q`;
//! * Fano — the degree sum is smaller than the weight sum, with index
//!   `d_0 = Σw − Σd`.
//!
//! All operations are pure functions of immutable values.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A complete-intersection specification: positive weights `w_0..w_n` and
/// positive degrees `d_1..d_k` with `1 <= k <= n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct CISpec {
    weights: Vec<u64>,
    degrees: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSpec {
    weights: Vec<u64>,
    degrees: Vec<u64>,
}

impl TryFrom<RawSpec> for CISpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, SpecError> {
        CISpec::new(raw.weights, raw.degrees)
    }
}

/// Errors rejected at [`CISpec`] construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    /// A weight or degree is zero.
    NonPositiveEntry,
    /// Fewer than two weights or no degrees at all.
    TooFewEntries,
    /// `k > n - 1`: the intersection would not be positive-dimensional.
    TooManyDegrees { weights: usize, degrees: usize },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::NonPositiveEntry => write!(f, "weights and degrees must be positive"),
            SpecError::TooFewEntries => {
                write!(f, "need at least two weights and one degree")
            }
            SpecError::TooManyDegrees { weights, degrees } => write!(
                f,
                "{degrees} degrees against {weights} weights: k must be at most n-1"
            ),
        }
    }
}

impl std::error::Error for SpecError {}

/// Error raised while reducing a spec to its normalized model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeError {
    /// A reduction step would make a degree non-integral: removing the
    /// common factor `factor` from all weights but one does not divide the
    /// degree `degree`. The input is not a valid Cartier spec on any
    /// normalized model; callers may still run the predicates on the raw
    /// spec.
    NonIntegralRescale { factor: u64, degree: u64 },
}

impl fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizeError::NonIntegralRescale { factor, degree } => write!(
                f,
                "normalization divides weights by {factor} but degree {degree} is not divisible"
            ),
        }
    }
}

impl std::error::Error for NormalizeError {}

impl CISpec {
    pub fn new(weights: Vec<u64>, degrees: Vec<u64>) -> Result<Self, SpecError> {
        if weights.iter().any(|&w| w == 0) || degrees.iter().any(|&d| d == 0) {
            return Err(SpecError::NonPositiveEntry);
        }
        if weights.len() < 2 || degrees.is_empty() {
            return Err(SpecError::TooFewEntries);
        }
        // k <= n - 1, i.e. degrees <= weights - 2.
        if degrees.len() + 2 > weights.len() {
            return Err(SpecError::TooManyDegrees {
                weights: weights.len(),
                degrees: degrees.len(),
            });
        }
        Ok(CISpec { weights, degrees })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `n`, where the ambient space is `P(w_0,...,w_n)`.
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    /// The number of hypersurfaces cut out.
    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().sum()
    }

    /// Whether the weights are ascending and every `n` of them are coprime.
    pub fn is_normalized(&self) -> bool {
        self.weights.windows(2).all(|p| p[0] <= p[1])
            && leave_one_out_gcds_trivial(&self.weights)
    }

    /// The unique normalized model, reached by repeatedly removing common
    /// factors of all-but-one weights and rescaling the degrees alongside.
    pub fn normalize(&self) -> Result<CISpec, NormalizeError> {
        let mut weights = self.weights.clone();
        let mut degrees = self.degrees.clone();
        loop {
            let mut reduced = false;
            for skip in 0..weights.len() {
                let g = gcd_excluding(&weights, skip);
                if g > 1 {
                    for (i, w) in weights.iter_mut().enumerate() {
                        if i != skip {
                            *w /= g;
                        }
                    }
                    for d in degrees.iter_mut() {
                        if *d % g != 0 {
                            return Err(NormalizeError::NonIntegralRescale {
                                factor: g,
                                degree: *d,
                            });
                        }
                        *d /= g;
                    }
                    reduced = true;
                }
            }
            if !reduced {
                break;
            }
        }
        weights.sort_unstable();
        Ok(CISpec { weights, degrees })
    }

    /// Whether every weight divides every degree.
    pub fn check_cartier(&self) -> bool {
        cartier_raw(&self.weights, &self.degrees)
    }

    /// Whether every `k+1` weights are coprime.
    pub fn check_smooth(&self) -> bool {
        smooth_raw(&self.weights, self.degrees.len())
    }

    /// Whether, for every prime power `q > 1`, the number of weights
    /// divisible by `q` is at most the number of degrees divisible by `q`.
    pub fn check_relaxed(&self) -> bool {
        relaxed_raw(&self.weights, &self.degrees)
    }

    /// `(Σd < Σw, Σw − Σd when positive)`.
    pub fn check_fano(&self) -> (bool, Option<u64>) {
        fano_raw(&self.weights, &self.degrees)
    }

    /// The Fano index `d_0 = Σw − Σd`, when positive.
    pub fn fano_index(&self) -> Option<u64> {
        self.check_fano().1
    }
}

impl fmt::Display for CISpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "); deg (")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The outcome of running every numeric criterion on one spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecReport {
    pub is_normalized: bool,
    pub is_cartier: bool,
    pub is_smooth: bool,
    pub satisfies_relaxed_condition: bool,
    pub is_fano: bool,
    /// `d_0 = Σw − Σd`; present exactly when `is_fano`.
    pub fano_index: Option<u64>,
}

impl SpecReport {
    pub fn for_spec(spec: &CISpec) -> SpecReport {
        let (is_fano, fano_index) = spec.check_fano();
        SpecReport {
            is_normalized: spec.is_normalized(),
            is_cartier: spec.check_cartier(),
            is_smooth: spec.check_smooth(),
            satisfies_relaxed_condition: spec.check_relaxed(),
            is_fano,
            fano_index,
        }
    }
}

fn gcd_excluding(weights: &[u64], skip: usize) -> u64 {
    let mut g = 0u64;
    for (i, &w) in weights.iter().enumerate() {
        if i != skip {
            g = g.gcd(&w);
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

fn leave_one_out_gcds_trivial(weights: &[u64]) -> bool {
    (0..weights.len()).all(|skip| gcd_excluding(weights, skip) == 1)
}

pub(crate) fn cartier_raw(weights: &[u64], degrees: &[u64]) -> bool {
    weights
        .iter()
        .all(|&w| degrees.iter().all(|&d| d % w == 0))
}

pub(crate) fn smooth_raw(weights: &[u64], k: usize) -> bool {
    // A subset containing a weight 1 has gcd 1, so only weights > 1 matter.
    let heavy: Vec<u64> = weights.iter().copied().filter(|&w| w > 1).collect();
    if heavy.len() < k + 1 {
        return true;
    }
    subsets_have_trivial_gcd(&heavy, k + 1)
}

/// True iff every `size`-element subset of `values` has gcd 1.
fn subsets_have_trivial_gcd(values: &[u64], size: usize) -> bool {
    fn rec(values: &[u64], start: usize, left: usize, acc: u64) -> bool {
        if acc == 1 {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in start..=values.len().saturating_sub(left) {
            if !rec(values, i + 1, left - 1, acc.gcd(&values[i])) {
                return false;
            }
        }
        true
    }
    rec(values, 0, size, 0)
}

pub(crate) fn fano_raw(weights: &[u64], degrees: &[u64]) -> (bool, Option<u64>) {
    let sw: u128 = weights.iter().map(|&w| w as u128).sum();
    let sd: u128 = degrees.iter().map(|&d| d as u128).sum();
    if sd < sw {
        (true, Some((sw - sd) as u64))
    } else {
        (false, None)
    }
}

pub(crate) fn relaxed_raw(weights: &[u64], degrees: &[u64]) -> bool {
    for q in prime_powers_dividing(weights) {
        let in_weights = weights.iter().filter(|&&w| w % q == 0).count();
        let in_degrees = degrees.iter().filter(|&&d| d % q == 0).count();
        if in_weights > in_degrees {
            return false;
        }
    }
    true
}

/// All prime powers `q > 1` dividing at least one of `values`, deduplicated.
/// A prime power dividing no weight satisfies the relaxed condition
/// vacuously, so these are the only candidates that can fail it.
fn prime_powers_dividing(values: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for &v in values {
        let mut rest = v;
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut q = 1u64;
                while rest % p == 0 {
                    rest /= p;
                    q *= p;
                    out.push(q);
                }
            }
            p += 1;
        }
        if rest > 1 {
            out.push(rest);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(weights: &[u64], degrees: &[u64]) -> CISpec {
        CISpec::new(weights.to_vec(), degrees.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(
            CISpec::new(vec![1, 0, 2], vec![2]),
            Err(SpecError::NonPositiveEntry)
        );
        assert_eq!(CISpec::new(vec![1, 2], vec![]), Err(SpecError::TooFewEntries));
        // k = 0 and k > n - 1 are both rejected.
        assert!(matches!(
            CISpec::new(vec![1, 1, 2], vec![2, 2]),
            Err(SpecError::TooManyDegrees { .. })
        ));
    }

    #[test]
    fn normalize_removes_shared_factors() {
        // Removing the factor 2 from all weights but the first rescales the
        // degree 4 to 2.
        assert_eq!(
            spec(&[1, 2, 2], &[4]).normalize().unwrap(),
            spec(&[1, 1, 1], &[2])
        );
    }

    #[test]
    fn normalize_sorts_already_coprime_weights() {
        assert_eq!(
            spec(&[3, 1, 2], &[6]).normalize().unwrap(),
            spec(&[1, 2, 3], &[6])
        );
    }

    #[test]
    fn normalize_fixes_normalized_spec() {
        let s = spec(&[1, 1, 2, 3], &[6]);
        assert_eq!(s.normalize().unwrap(), s);
        assert!(s.is_normalized());
    }

    #[test]
    fn normalize_reports_non_integral_rescale() {
        assert_eq!(
            spec(&[1, 2, 2], &[3]).normalize(),
            Err(NormalizeError::NonIntegralRescale { factor: 2, degree: 3 })
        );
    }

    #[test]
    fn normalize_is_idempotent_on_samples() {
        for s in [
            spec(&[1, 2, 2], &[4]),
            spec(&[2, 3, 4, 6], &[12]),
            spec(&[5, 10, 15, 20], &[60]),
        ] {
            let once = s.normalize().unwrap();
            assert_eq!(once.normalize().unwrap(), once);
            assert!(once.is_normalized());
        }
    }

    #[test]
    fn cartier_examples() {
        assert!(spec(&[1, 1, 2, 3], &[6]).check_cartier());
        assert!(!spec(&[1, 1, 2, 3], &[5]).check_cartier());
        assert!(spec(&[1, 6, 10, 15], &[30]).check_cartier());
    }

    #[test]
    fn smooth_examples() {
        assert!(spec(&[1, 1, 2, 3], &[6]).check_smooth());
        // gcd(6, 10) = 2 with k = 1.
        assert!(!spec(&[1, 6, 10, 15], &[30]).check_smooth());
        assert!(spec(&[1, 1, 1, 1], &[3]).check_smooth());
    }

    #[test]
    fn relaxed_examples() {
        assert!(spec(&[1, 1, 2, 3], &[6]).check_relaxed());
        // q = 2 divides two weights but only one degree.
        assert!(!spec(&[1, 6, 10, 15], &[30]).check_relaxed());
        assert!(spec(&[1, 1, 1, 1], &[3]).check_relaxed());
    }

    #[test]
    fn relaxed_needs_prime_powers_not_just_primes() {
        // q = 4 divides both weights 4 but only the degree 4; the degree 2
        // passes the q = 2 count yet cannot absorb a second factor of 4.
        assert!(!spec(&[1, 1, 4, 4, 8], &[4, 2]).check_relaxed());
        assert!(spec(&[1, 1, 4, 4, 8], &[4, 8]).check_relaxed());
    }

    #[test]
    fn fano_examples() {
        assert_eq!(spec(&[1, 1, 2, 3], &[6]).check_fano(), (true, Some(1)));
        assert_eq!(spec(&[1, 1, 1, 1, 1], &[5]).check_fano(), (false, None));
        assert_eq!(
            spec(&[1, 1, 1, 1, 1, 6, 10, 15], &[30]).check_fano(),
            (true, Some(6))
        );
    }

    #[test]
    fn predicates_are_permutation_invariant() {
        let a = spec(&[1, 6, 10, 15], &[30]);
        let b = spec(&[15, 6, 1, 10], &[30]);
        assert_eq!(a.check_cartier(), b.check_cartier());
        assert_eq!(a.check_smooth(), b.check_smooth());
        assert_eq!(a.check_relaxed(), b.check_relaxed());
        assert_eq!(a.check_fano(), b.check_fano());
    }

    #[test]
    fn report_mirrors_predicates() {
        let r = SpecReport::for_spec(&spec(&[1, 1, 2, 3], &[6]));
        assert!(r.is_normalized && r.is_cartier && r.is_smooth);
        assert!(r.satisfies_relaxed_condition && r.is_fano);
        assert_eq!(r.fano_index, Some(1));
    }

    #[test]
    fn spec_json_round_trip() {
        let s = spec(&[1, 1, 2, 3], &[6]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"weights":[1,1,2,3],"degrees":[6]}"#);
        assert_eq!(serde_json::from_str::<CISpec>(&json).unwrap(), s);
        // Invalid shapes are rejected at deserialization.
        assert!(serde_json::from_str::<CISpec>(r#"{"weights":[1,2],"degrees":[2]}"#).is_err());
    }
}
