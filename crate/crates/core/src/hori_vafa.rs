//! Hori–Vafa models and their Laurent-polynomial form.
//!
//! Given a spec and a Q-nef-partition, the Hori–Vafa model is the affine
//! variety cut out by the torus equation `x_0^{w_0}···x_n^{w_n} = 1` and
//! one equation `Σ_{j∈I_i} x_j = 1` per block, with potential the sum of
//! the free variables (the constant shift by `k` already applied).
//!
//! [`laurentize`] performs the change of coordinates that turns the
//! potential into a Laurent polynomial: inside each block substitute
//! `x_j = y_j / Σ_{l∈I_i} y_l`, pass to the chart where one chosen `y` per
//! block equals 1, and solve the torus equation for one weight-1 free
//! variable. The result, for blocks `I_i` with chart index removed
//! (`I_i' = I_i \ {chart_i}`), is
//!
//! ```text
//! f = [ Π_i (1 + Σ_{j∈I_i'} y_j)^{d_i} ]
//!     · [ Π_{free j ≠ solved} x_j^{w_j} · Π_i Π_{j∈I_i'} y_j^{w_j} ]^(-1)
//!     + Σ_{free j ≠ solved} x_j,
//! ```
//!
//! fully expanded into a [`LaurentPolynomial`] in `n - k` variables with
//! positive integer coefficients. The elimination step needs every free
//! weight to equal 1 (a strong partition); otherwise the model has no
//! Laurent form of this type and [`HoriVafaError::NotStrongPartition`] is
//! returned.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPolynomial;
use crate::nef::{validate_partition, QNefPartition};
use crate::wps::CISpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoriVafaError {
    /// The partition does not validate against the spec.
    InvalidPartition,
    /// A free index carries weight > 1, so the torus equation cannot be
    /// solved monomially and no Laurent form of this type exists.
    NotStrongPartition { index: usize, weight: u64 },
    /// No free index at all (the spec is not Fano), so there is nothing to
    /// solve the torus equation for.
    NoFreeIndex,
}

impl fmt::Display for HoriVafaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoriVafaError::InvalidPartition => write!(f, "partition does not fit the spec"),
            HoriVafaError::NotStrongPartition { index, weight } => write!(
                f,
                "free index {index} has weight {weight} != 1: no Laurent form of this type"
            ),
            HoriVafaError::NoFreeIndex => write!(f, "partition leaves no free index"),
        }
    }
}

impl std::error::Error for HoriVafaError {}

/// The symbolic Hori–Vafa model: no computation beyond bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoriVafaModel {
    spec: CISpec,
    partition: QNefPartition,
    /// Exponent vector of the torus equation (the weights; right side 1).
    torus_exponents: Vec<u64>,
    /// Index sets of the block equations `Σ x_j = 1`.
    block_equations: Vec<Vec<usize>>,
    /// Indices of the potential `f = Σ x_j` (the free variables).
    potential: Vec<usize>,
}

impl HoriVafaModel {
    pub fn spec(&self) -> &CISpec {
        &self.spec
    }

    pub fn partition(&self) -> &QNefPartition {
        &self.partition
    }

    pub fn torus_exponents(&self) -> &[u64] {
        &self.torus_exponents
    }

    pub fn block_equations(&self) -> &[Vec<usize>] {
        &self.block_equations
    }

    pub fn potential(&self) -> &[usize] {
        &self.potential
    }
}

/// Assembles the symbolic model, validating the partition first.
pub fn build_model(
    spec: &CISpec,
    partition: &QNefPartition,
) -> Result<HoriVafaModel, HoriVafaError> {
    if !validate_partition(spec, partition) {
        return Err(HoriVafaError::InvalidPartition);
    }
    Ok(HoriVafaModel {
        spec: spec.clone(),
        partition: partition.clone(),
        torus_exponents: spec.weights().to_vec(),
        block_equations: partition.blocks().to_vec(),
        potential: partition.free().to_vec(),
    })
}

/// One output variable of an [`LGModel`]: which original index it carries
/// and which block it came from (1-based; `None` for free variables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendEntry {
    pub var: usize,
    pub orig_index: usize,
    pub block: Option<usize>,
}

/// The Landau–Ginzburg side: a Laurent polynomial in `n - k` variables
/// plus the bookkeeping that ties its variables back to the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LGModel {
    pub polynomial: LaurentPolynomial,
    pub legend: Vec<LegendEntry>,
    /// Per block, the original index set to 1 in the chart.
    pub charts: Vec<usize>,
    /// The weight-1 free index eliminated through the torus equation.
    pub solved: usize,
}

impl LGModel {
    /// Structural consistency against a spec: the legend, charts and solved
    /// index must tile `{0..n}` and leave `n - k` variables.
    pub fn legend_consistent_with(&self, spec: &CISpec) -> bool {
        let n_indices = spec.weights().len();
        let k = spec.degrees().len();
        if self.legend.len() + k + 1 != n_indices
            || self.charts.len() != k
            || self.polynomial.num_vars() != self.legend.len()
        {
            return false;
        }
        let mut seen = vec![false; n_indices];
        let mut mark = |j: usize| -> bool {
            if j >= n_indices || seen[j] {
                return false;
            }
            seen[j] = true;
            true
        };
        if !mark(self.solved) {
            return false;
        }
        for &c in &self.charts {
            if !mark(c) {
                return false;
            }
        }
        for (v, entry) in self.legend.iter().enumerate() {
            if entry.var != v || !mark(entry.orig_index) {
                return false;
            }
            match entry.block {
                Some(b) if b == 0 || b > k => return false,
                _ => {}
            }
        }
        seen.iter().all(|&s| s) && spec.weights()[self.solved] == 1
    }
}

/// Default chart and elimination choices: per block the index of the
/// largest weight (ties to the largest index), and the smallest weight-1
/// free index.
pub fn laurentize(model: &HoriVafaModel) -> Result<LGModel, HoriVafaError> {
    let charts: Vec<usize> = model
        .partition
        .blocks()
        .iter()
        .map(|block| {
            *block
                .iter()
                .max_by_key(|&&j| (model.spec.weights()[j], j))
                .expect("blocks are nonempty")
        })
        .collect();
    laurentize_with_charts(model, &charts)
}

/// [`laurentize`] with explicit chart indices, one per block. Different
/// charts give different polynomials with the same period sequence.
pub fn laurentize_with_charts(
    model: &HoriVafaModel,
    charts: &[usize],
) -> Result<LGModel, HoriVafaError> {
    let spec = &model.spec;
    let weights = spec.weights();
    let partition = &model.partition;
    assert_eq!(charts.len(), partition.blocks().len(), "one chart per block");
    for (block, &c) in partition.blocks().iter().zip(charts) {
        assert!(block.contains(&c), "chart index {c} outside its block");
    }

    for &j in partition.free() {
        if weights[j] != 1 {
            return Err(HoriVafaError::NotStrongPartition {
                index: j,
                weight: weights[j],
            });
        }
    }
    let solved = *partition
        .free()
        .iter()
        .min()
        .ok_or(HoriVafaError::NoFreeIndex)?;

    // Output variables: free (minus solved) ascending, then each block's
    // survivors ascending.
    let mut legend = Vec::new();
    for &j in partition.free() {
        if j != solved {
            legend.push(LegendEntry {
                var: legend.len(),
                orig_index: j,
                block: None,
            });
        }
    }
    for (b, block) in partition.blocks().iter().enumerate() {
        for &j in block {
            if j != charts[b] {
                legend.push(LegendEntry {
                    var: legend.len(),
                    orig_index: j,
                    block: Some(b + 1),
                });
            }
        }
    }
    let num_vars = legend.len();
    debug_assert_eq!(num_vars, spec.n() - spec.k());

    let var_of = |orig: usize| -> usize {
        legend
            .iter()
            .find(|e| e.orig_index == orig)
            .expect("surviving index")
            .var
    };

    // Numerator: product over blocks of (1 + Σ survivors)^degree.
    let mut numerator = LaurentPolynomial::one(num_vars);
    for (b, block) in partition.blocks().iter().enumerate() {
        let mut base = LaurentPolynomial::one(num_vars);
        for &j in block {
            if j != charts[b] {
                base = base
                    .add(&LaurentPolynomial::variable(num_vars, var_of(j)))
                    .expect("same dimension");
            }
        }
        numerator = numerator
            .mul(&base.pow(spec.degrees()[b]))
            .expect("same dimension");
    }

    // Single monomial denominator: every surviving variable to its weight.
    let denominator_exps: Vec<i64> = legend
        .iter()
        .map(|e| -(weights[e.orig_index] as i64))
        .collect();
    let inverse = LaurentPolynomial::monomial(num_vars, denominator_exps, BigInt::one());
    let mut polynomial = numerator.mul(&inverse).expect("same dimension");

    // Plus the surviving free variables of the potential.
    for entry in &legend {
        if entry.block.is_none() {
            polynomial = polynomial
                .add(&LaurentPolynomial::variable(num_vars, entry.var))
                .expect("same dimension");
        }
    }

    Ok(LGModel {
        polynomial,
        legend,
        charts: charts.to_vec(),
        solved,
    })
}
