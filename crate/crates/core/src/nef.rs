//! Q-nef-partitions of a complete-intersection spec.
//!
//! A Q-nef-partition splits the weight indices `{0..n}` into `k` disjoint
//! blocks `I_1..I_k` with block weight-sums equal to the degrees, plus a
//! free remainder. The *strong* form additionally requires every free
//! weight to equal 1; that is the form the Laurent-polynomial construction
//! needs.
//!
//! Two deciders are provided and cross-checked against each other:
//!
//! * [`find_partition_exhaustive`] — a complete backtracking search over
//!   assignments of indices to blocks or the free set, deterministic and
//!   budgeted;
//! * [`find_partition_reduction`] — the constructive route: repeatedly
//!   divide weights and degrees by primes until all weights are 1, pick
//!   blocks by cardinality, then replay the divisions in reverse while
//!   repairing the blocks. For smooth Cartier Fano specs this always
//!   produces a strong partition; any replay failure falls back to the
//!   exhaustive search.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::wps::CISpec;

/// Node budget for the exhaustive search; far beyond anything desk-scale
/// inputs need.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// `k` disjoint index blocks plus the complementary free set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QNefPartition {
    blocks: Vec<Vec<usize>>,
    free: Vec<usize>,
}

impl QNefPartition {
    /// Blocks and free set are kept ascending for deterministic output.
    pub fn new(mut blocks: Vec<Vec<usize>>, mut free: Vec<usize>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        free.sort_unstable();
        QNefPartition { blocks, free }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    /// Whether every free index carries weight 1.
    pub fn is_strong(&self, spec: &CISpec) -> bool {
        self.free.iter().all(|&j| spec.weights()[j] == 1)
    }
}

/// The outcome of a partition search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionClass {
    pub has_partition: bool,
    pub has_strong_partition: bool,
    /// A strong witness if one exists, else any witness, else nothing.
    pub witness: Option<QNefPartition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NefError {
    /// The backtracking search exhausted its node budget; raise it and
    /// retry.
    SearchBudgetExceeded { budget: u64 },
    /// The reduction replay could not maintain its invariants (or its
    /// preconditions failed) and the exhaustive fallback also failed.
    ReductionFailed { reason: String },
}

impl fmt::Display for NefError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NefError::SearchBudgetExceeded { budget } => {
                write!(f, "partition search exceeded its budget of {budget} nodes")
            }
            NefError::ReductionFailed { reason } => {
                write!(f, "reduction process failed: {reason}")
            }
        }
    }
}

impl std::error::Error for NefError {}

/// True iff the blocks are disjoint, together with `free` cover `{0..n}`
/// exactly once, and each block's weight sum equals its degree.
pub fn validate_partition(spec: &CISpec, partition: &QNefPartition) -> bool {
    let n_indices = spec.weights().len();
    if partition.blocks.len() != spec.degrees().len() {
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
    for block in &partition.blocks {
        for &j in block {
            if !mark(j) {
                return false;
            }
        }
    }
    for &j in &partition.free {
        if !mark(j) {
            return false;
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    partition
        .blocks
        .iter()
        .zip(spec.degrees())
        .all(|(block, &d)| block.iter().map(|&j| spec.weights()[j] as u128).sum::<u128>() == d as u128)
}

/// Complete decision by backtracking, with [`DEFAULT_NODE_BUDGET`].
///
/// Indices are tried in ascending order and, per index, the free set is
/// tried before the blocks in input order, so the witness is the
/// lexicographically first solution under that ordering. The returned
/// flags do not depend on `require_strong`; the parameter only picks which
/// of the two searches (strong-constrained or unconstrained) runs first.
pub fn find_partition_exhaustive(
    spec: &CISpec,
    require_strong: bool,
) -> Result<PartitionClass, NefError> {
    find_partition_exhaustive_with_budget(spec, require_strong, DEFAULT_NODE_BUDGET)
}

/// [`find_partition_exhaustive`] with an explicit node budget.
pub fn find_partition_exhaustive_with_budget(
    spec: &CISpec,
    require_strong: bool,
    budget: u64,
) -> Result<PartitionClass, NefError> {
    let mut search = Search::new(spec, budget);
    if require_strong {
        if let Some(witness) = search.run(true)? {
            return Ok(PartitionClass {
                has_partition: true,
                has_strong_partition: true,
                witness: Some(witness),
            });
        }
        let witness = search.run(false)?;
        Ok(PartitionClass {
            has_partition: witness.is_some(),
            has_strong_partition: false,
            witness,
        })
    } else {
        match search.run(false)? {
            None => Ok(PartitionClass {
                has_partition: false,
                has_strong_partition: false,
                witness: None,
            }),
            Some(witness) if witness.is_strong(spec) => Ok(PartitionClass {
                has_partition: true,
                has_strong_partition: true,
                witness: Some(witness),
            }),
            Some(witness) => {
                // A weak first solution does not rule out a strong one.
                let strong = search.run(true)?;
                let has_strong = strong.is_some();
                Ok(PartitionClass {
                    has_partition: true,
                    has_strong_partition: has_strong,
                    witness: strong.or(Some(witness)),
                })
            }
        }
    }
}

/// Assignment codes: 0 = free, 1..=k = block. Lexicographic order on the
/// per-index code vector matches the search order, so the first solution
/// found is the lexicographically smallest.
struct Search<'a> {
    weights: &'a [u64],
    targets: &'a [u64],
    suffix: Vec<u64>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(spec: &'a CISpec, budget: u64) -> Self {
        let weights = spec.weights();
        let mut suffix = vec![0u64; weights.len() + 1];
        for i in (0..weights.len()).rev() {
            suffix[i] = suffix[i + 1] + weights[i];
        }
        Search {
            weights,
            targets: spec.degrees(),
            suffix,
            budget,
            nodes: 0,
        }
    }

    fn run(&mut self, strong: bool) -> Result<Option<QNefPartition>, NefError> {
        let mut assignment = vec![0u8; self.weights.len()];
        let mut sums = vec![0u64; self.targets.len()];
        let deficit: u64 = self.targets.iter().sum();
        let found = self.descend(0, strong, deficit, &mut assignment, &mut sums)?;
        if !found {
            return Ok(None);
        }
        let mut blocks = vec![Vec::new(); self.targets.len()];
        let mut free = Vec::new();
        for (j, &code) in assignment.iter().enumerate() {
            if code == 0 {
                free.push(j);
            } else {
                blocks[code as usize - 1].push(j);
            }
        }
        Ok(Some(QNefPartition::new(blocks, free)))
    }

    fn descend(
        &mut self,
        index: usize,
        strong: bool,
        deficit: u64,
        assignment: &mut Vec<u8>,
        sums: &mut Vec<u64>,
    ) -> Result<bool, NefError> {
        if deficit > self.suffix[index] {
            return Ok(false); // remaining weights cannot fill the blocks
        }
        if index == self.weights.len() {
            return Ok(deficit == 0);
        }
        let w = self.weights[index];
        // Among equal adjacent weights the lexicographically first solution
        // has non-decreasing codes, so start where the previous index
        // landed. This prunes permutations of interchangeable indices.
        let min_code = if index > 0 && self.weights[index - 1] == w {
            assignment[index - 1]
        } else {
            0
        };
        for code in min_code..=self.targets.len() as u8 {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(NefError::SearchBudgetExceeded { budget: self.budget });
            }
            if code == 0 {
                if strong && w != 1 {
                    continue;
                }
                assignment[index] = 0;
                if self.descend(index + 1, strong, deficit, assignment, sums)? {
                    return Ok(true);
                }
            } else {
                let b = code as usize - 1;
                if sums[b] + w > self.targets[b] {
                    continue;
                }
                sums[b] += w;
                assignment[index] = code;
                let hit = self.descend(index + 1, strong, deficit - w, assignment, sums)?;
                sums[b] -= w;
                if hit {
                    return Ok(true);
                }
            }
        }
        assignment[index] = 0;
        Ok(false)
    }
}

/// The constructive route of the reduction process, without fallback.
///
/// Preconditions: the spec passes Cartier, smoothness and Fano. Forward
/// phase: repeatedly pick the smallest prime factor of the largest weight
/// and divide all degrees and all divisible weights by it, until every
/// weight is 1. Base phase: blocks take the highest free indices, as many
/// as the reduced degrees say. Reverse phase: pop the divisions back;
/// before re-inflating, every about-to-grow index is routed into a block
/// (at most one per block, none left free), then block deficits are topped
/// up from weight-1 indices. The result is always strong.
pub fn reduction_partition(spec: &CISpec) -> Result<QNefPartition, NefError> {
    let fail = |reason: &str| NefError::ReductionFailed {
        reason: reason.to_string(),
    };
    if !spec.check_cartier() {
        return Err(fail("spec is not Cartier"));
    }
    if !spec.check_smooth() {
        return Err(fail("spec is not smooth"));
    }
    if !spec.check_fano().0 {
        return Err(fail("spec is not Fano"));
    }

    let mut weights = spec.weights().to_vec();
    let mut degrees = spec.degrees().to_vec();
    let k = degrees.len();

    // Forward phase.
    let mut steps: Vec<(u64, Vec<usize>)> = Vec::new();
    while let Some(&max_w) = weights.iter().max() {
        if max_w <= 1 {
            break;
        }
        let p = smallest_prime_factor(max_w);
        let divided: Vec<usize> = (0..weights.len())
            .filter(|&j| weights[j] % p == 0)
            .collect();
        if degrees.iter().any(|&d| d % p != 0) {
            return Err(fail("a degree is not divisible by the chosen prime"));
        }
        for &j in &divided {
            weights[j] /= p;
        }
        for d in degrees.iter_mut() {
            *d /= p;
        }
        steps.push((p, divided));
    }

    // Base phase: all weights are 1, blocks are picked by cardinality from
    // the top indices down.
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut cursor = weights.len();
    for &d in &degrees {
        let take = d as usize;
        if take > cursor {
            return Err(fail("reduced degrees exceed the number of indices"));
        }
        blocks.push(((cursor - take)..cursor).collect());
        cursor -= take;
    }
    let mut free: Vec<usize> = (0..cursor).collect();

    // Reverse phase.
    for (p, divided) in steps.into_iter().rev() {
        if divided.len() > k {
            return Err(fail("more growing weights than blocks"));
        }
        // u_i: weight of the members block i cannot shed (non-growing,
        // weight > 1).
        let anchored: Vec<u64> = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|j| !divided.contains(j) && weights[**j] > 1)
                    .map(|&j| weights[j])
                    .sum()
            })
            .collect();
        // Route each growing index to its own block: the lexicographically
        // smallest injective assignment that leaves room for the grown
        // weight.
        let assignment = match_growing_indices(&divided, &weights, &degrees, &anchored, p)
            .ok_or_else(|| fail("no block placement for the growing weights"))?;

        let post_degrees: Vec<u64> = degrees.iter().map(|d| d * p).collect();
        let mut new_blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut pool: Vec<usize> = free.clone();
        pool.retain(|j| !divided.contains(j));
        let mut need = vec![0u64; k];
        for i in 0..k {
            let mut sum = 0u64;
            for (&j, &target) in divided.iter().zip(&assignment) {
                if target == i {
                    new_blocks[i].push(j);
                    sum += weights[j] * p;
                }
            }
            for &j in &blocks[i] {
                if !divided.contains(&j) && weights[j] > 1 {
                    new_blocks[i].push(j);
                    sum += weights[j];
                }
            }
            if sum > post_degrees[i] {
                return Err(fail("block overfilled during replay"));
            }
            need[i] = post_degrees[i] - sum;
            // Weight-1 members the block already had fill it first,
            // smallest indices kept, surplus released to the pool.
            let mut own: Vec<usize> = blocks[i]
                .iter()
                .copied()
                .filter(|j| !divided.contains(j) && weights[*j] == 1)
                .collect();
            own.sort_unstable();
            for &j in &own {
                if need[i] > 0 {
                    new_blocks[i].push(j);
                    need[i] -= 1;
                } else {
                    pool.push(j);
                }
            }
        }
        pool.sort_unstable();
        // Remaining deficits draw from the weight-1 pool, blocks in order.
        let mut cursor = 0usize;
        for i in 0..k {
            let take = need[i] as usize;
            if cursor + take > pool.len() {
                return Err(fail("not enough weight-1 indices to top up a block"));
            }
            new_blocks[i].extend_from_slice(&pool[cursor..cursor + take]);
            cursor += take;
        }
        free = pool[cursor..].to_vec();
        blocks = new_blocks;
        for &j in &divided {
            weights[j] *= p;
        }
        degrees = post_degrees;
        for (i, block) in blocks.iter().enumerate() {
            let sum: u64 = block.iter().map(|&j| weights[j]).sum();
            if sum != degrees[i] {
                return Err(fail("block sum drifted from its degree"));
            }
        }
    }

    let partition = QNefPartition::new(blocks, free);
    if !validate_partition(spec, &partition) || !partition.is_strong(spec) {
        return Err(fail("replay finished with an invalid partition"));
    }
    Ok(partition)
}

/// Lexicographically smallest injective map from growing indices to blocks
/// such that block `i` can absorb the grown weight: `p*w_j + u_i <= p*d_i`.
fn match_growing_indices(
    divided: &[usize],
    weights: &[u64],
    degrees: &[u64],
    anchored: &[u64],
    p: u64,
) -> Option<Vec<usize>> {
    fn rec(
        pos: usize,
        divided: &[usize],
        weights: &[u64],
        degrees: &[u64],
        anchored: &[u64],
        p: u64,
        used: &mut Vec<bool>,
        out: &mut Vec<usize>,
    ) -> bool {
        if pos == divided.len() {
            return true;
        }
        let j = divided[pos];
        for i in 0..degrees.len() {
            if !used[i] && p * weights[j] + anchored[i] <= p * degrees[i] {
                used[i] = true;
                out.push(i);
                if rec(pos + 1, divided, weights, degrees, anchored, p, used, out) {
                    return true;
                }
                out.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut used = vec![false; degrees.len()];
    let mut out = Vec::with_capacity(divided.len());
    if rec(0, divided, weights, degrees, anchored, p, &mut used, &mut out) {
        Some(out)
    } else {
        None
    }
}

/// The reduction process with its defensive fallback: a failed replay is
/// logged and retried through the exhaustive search.
pub fn find_partition_reduction(spec: &CISpec) -> Result<PartitionClass, NefError> {
    match reduction_partition(spec) {
        Ok(witness) => Ok(PartitionClass {
            has_partition: true,
            has_strong_partition: true,
            witness: Some(witness),
        }),
        Err(err) => {
            log::warn!("{spec}: {err}; falling back to exhaustive search");
            find_partition_exhaustive(spec, true)
        }
    }
}

fn smallest_prime_factor(v: u64) -> u64 {
    debug_assert!(v > 1);
    if v % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= v {
        if v % p == 0 {
            return p;
        }
        p += 2;
    }
    v
}
