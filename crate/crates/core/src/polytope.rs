//! Newton polytopes of Laurent polynomials.
//!
//! The Newton polytope is the convex hull of the support (the set of
//! exponent vectors). Only the extreme points are computed: a support point
//! is a vertex exactly when it is not a convex combination of the other
//! support points, which is decided by a phase-1 simplex over exact
//! rationals. Vertices come out in lexicographic order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentError, LaurentPolynomial};

/// Extreme points of the convex hull of a polynomial's support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    vertices: Vec<Vec<i64>>,
}

impl Polytope {
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Whether `point` lies in the convex hull of the vertices.
    pub fn contains(&self, point: &[i64]) -> bool {
        let generators: Vec<&[i64]> = self.vertices.iter().map(|v| v.as_slice()).collect();
        point_in_hull(point, &generators)
    }
}

/// Extreme points of the convex hull of `supp(f)`, lexicographically
/// ordered. Errors on the zero polynomial.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<Polytope, LaurentError> {
    if f.is_zero() {
        return Err(LaurentError::EmptyPolynomial);
    }
    let support: Vec<&[i64]> = f.terms().map(|(e, _)| e).collect();
    let mut vertices = Vec::new();
    for (i, &candidate) in support.iter().enumerate() {
        let others: Vec<&[i64]> = support
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        if !point_in_hull(candidate, &others) {
            vertices.push(candidate.to_vec());
        }
    }
    // Terms are stored in lexicographic order, so the filter preserved it.
    Ok(Polytope { vertices })
}

/// Exact test whether `point` is a convex combination of `generators`.
///
/// Feasibility of `Σ λ_u u = point`, `Σ λ_u = 1`, `λ >= 0`, decided by a
/// phase-1 simplex with Bland's rule over `BigRational`.
pub fn point_in_hull(point: &[i64], generators: &[&[i64]]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let dim = point.len();
    debug_assert!(generators.iter().all(|g| g.len() == dim));

    // Cheap box screen before setting up the tableau.
    for c in 0..dim {
        let lo = generators.iter().map(|g| g[c]).min().unwrap();
        let hi = generators.iter().map(|g| g[c]).max().unwrap();
        if point[c] < lo || point[c] > hi {
            return false;
        }
    }

    let rows = dim + 1;
    let cols = generators.len() + rows + 1; // lambdas, artificials, rhs
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));

    let mut t = vec![vec![BigRational::zero(); cols]; rows];
    for r in 0..rows {
        for (j, g) in generators.iter().enumerate() {
            t[r][j] = if r < dim { rat(g[r]) } else { BigRational::one() };
        }
        t[r][generators.len() + r] = BigRational::one();
        *t[r].last_mut().unwrap() = if r < dim { rat(point[r]) } else { BigRational::one() };
    }
    // Nonnegative right-hand sides; artificial columns flip with the row.
    for r in 0..rows {
        if t[r].last().unwrap().is_negative() {
            for v in t[r].iter_mut() {
                *v = -&*v;
            }
        }
    }

    let mut basis: Vec<usize> = (0..rows).map(|r| generators.len() + r).collect();
    loop {
        // Reduced costs of minimizing the artificial sum: the sum of rows
        // whose basic variable is still artificial.
        let artificial_rows: Vec<usize> = (0..rows)
            .filter(|&r| basis[r] >= generators.len())
            .collect();
        if artificial_rows.is_empty() {
            return true;
        }
        let objective = |j: usize| -> BigRational {
            artificial_rows.iter().map(|&r| t[r][j].clone()).sum()
        };
        // Bland's rule: smallest-index improving lambda column. Artificial
        // columns never re-enter.
        let entering = (0..generators.len()).find(|&j| objective(j).is_positive());
        let Some(e) = entering else {
            let residual: BigRational = artificial_rows
                .iter()
                .map(|&r| t[r].last().unwrap().clone())
                .sum();
            return residual.is_zero();
        };
        // Ratio test, ties broken by the smallest basic column (Bland).
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][e].is_positive() {
                let ratio = t[r].last().unwrap() / &t[r][e];
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            // Unbounded phase-1 cannot happen with bounded artificials;
            // treat defensively as infeasible.
            return false;
        };
        pivot(&mut t, pivot_row, e);
        basis[pivot_row] = e;
    }
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let scale = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v = &*v / &scale;
    }
    for r in 0..t.len() {
        if r != row && !t[r][col].is_zero() {
            let factor = t[r][col].clone();
            for j in 0..t[r].len() {
                let delta = &factor * &t[row][j];
                t[r][j] = &t[r][j] - &delta;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::poly;
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn point_in_hull_triangle_cases() {
        let tri: Vec<&[i64]> = vec![&[0, 0], &[4, 0], &[0, 4]];
        assert!(point_in_hull(&[1, 1], &tri)); // interior
        assert!(point_in_hull(&[2, 2], &tri)); // on the hypotenuse
        assert!(point_in_hull(&[0, 0], &tri)); // vertex itself
        assert!(!point_in_hull(&[3, 3], &tri)); // outside
        assert!(!point_in_hull(&[-1, 0], &tri)); // outside the box
    }

    #[test]
    fn point_in_hull_needs_generators() {
        assert!(!point_in_hull(&[0], &[]));
        let single: Vec<&[i64]> = vec![&[2]];
        assert!(point_in_hull(&[2], &single));
        assert!(!point_in_hull(&[1], &single));
    }

    #[test]
    fn point_in_hull_segment_midpoint_needs_exact_arithmetic() {
        let seg: Vec<&[i64]> = vec![&[-3, 6], &[3, -6]];
        assert!(point_in_hull(&[0, 0], &seg));
        assert!(point_in_hull(&[1, -2], &seg));
        assert!(!point_in_hull(&[1, 2], &seg));
        assert!(!point_in_hull(&[1, -1], &seg));
    }

    #[test]
    fn cubic_surface_mirror_polytope() {
        let base = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let shift = LaurentPolynomial::monomial(2, vec![-1, -1], BigInt::one());
        let f = base.pow(3).mul(&shift).unwrap();
        let p = newton_polytope(&f).unwrap();
        assert_eq!(
            p.vertices(),
            &[vec![-1, -1], vec![-1, 2], vec![2, -1]]
        );
        // The hull of the vertices carries the whole support.
        for (e, _) in f.terms() {
            assert!(p.contains(e));
        }
    }

    #[test]
    fn single_monomial_and_one_dimensional_supports() {
        let x = poly(1, &[(&[1], 1)]);
        assert_eq!(newton_polytope(&x).unwrap().vertices(), &[vec![1]]);

        let sym = poly(1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(
            newton_polytope(&sym).unwrap().vertices(),
            &[vec![-1], vec![1]]
        );

        // An interior point of a 1-d support is not a vertex.
        let three = poly(1, &[(&[-1], 1), (&[0], 5), (&[1], 1)]);
        assert_eq!(
            newton_polytope(&three).unwrap().vertices(),
            &[vec![-1], vec![1]]
        );
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let z = LaurentPolynomial::zero(2);
        assert_eq!(newton_polytope(&z), Err(LaurentError::EmptyPolynomial));
    }

    #[test]
    fn collinear_and_coplanar_degeneracies() {
        // Four collinear points in the plane: only the ends are vertices.
        let f = poly(2, &[(&[0, 0], 1), (&[1, 1], 1), (&[2, 2], 1), (&[3, 3], 1)]);
        assert_eq!(
            newton_polytope(&f).unwrap().vertices(),
            &[vec![0, 0], vec![3, 3]]
        );
    }

    #[test]
    fn polytope_json_shape() {
        let p = Polytope {
            vertices: vec![vec![-1, -1], vec![2, -1]],
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"vertices":[[-1,-1],[2,-1]]}"#
        );
    }
}
