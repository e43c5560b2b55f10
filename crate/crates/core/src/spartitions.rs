//! Standard set-of-lists partitions ("s-partitions"): partitions of
//! `{1..n}` into ordered blocks, kept in increasing order of first entry.
//!
//! A *run* is a block of consecutive integers in increasing order. Runs can
//! be inserted and deleted; families closed under both operations are
//! counted by the run transform of their size series.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{Monomial, MultiPoly, Var};
use crate::paths::{Path, PathSpec, Step};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SPartitionError {
    #[error("not a standard s-partition: {0}")]
    NotStandard(String),
    #[error("cannot parse s-partition {0:?}")]
    Parse(String),
    #[error("insertion point {at} out of range for size {size}")]
    InsertOutOfRange { at: usize, size: usize },
    #[error("run length must be positive")]
    EmptyRun,
    #[error("block {0} is not a run")]
    NotARun(usize),
    #[error("block index {0} out of range")]
    NoSuchBlock(usize),
    #[error("s-partition is not {0}-compatible")]
    NotJCompatible(u32),
    #[error("size {size} exceeds the enumeration budget {limit}")]
    BudgetExceeded { size: usize, limit: usize },
    #[error("not a Dyck path")]
    NotDyck,
    #[error("path must run from height {0} to the axis without flatsteps or dips")]
    NotNk(u32),
    #[error("the F_k correspondence needs k >= 2, got {0}")]
    KTooSmall(u32),
    #[error("not a noncrossing set partition")]
    NotNoncrossingSetPartition,
    #[error("family {0:?} is not supported here")]
    UnsupportedFamily(FamilyId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPartition {
    blocks: Vec<Vec<u32>>,
}

impl SPartition {
    pub fn empty() -> Self {
        SPartition { blocks: Vec::new() }
    }

    /// Build from blocks in any order; checks standardness.
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self, SPartitionError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(SPartitionError::NotStandard("empty block".into()));
            }
            for &e in b {
                let e = e as usize;
                if e == 0 || e > n || seen[e] {
                    return Err(SPartitionError::NotStandard(format!("{blocks:?}")));
                }
                seen[e] = true;
            }
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SPartition { blocks })
    }

    fn from_sorted_unchecked(mut blocks: Vec<Vec<u32>>) -> Self {
        blocks.sort_by_key(|b| b[0]);
        SPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn run_count(&self) -> usize {
        self.blocks.iter().filter(|b| is_run(b)).count()
    }

    pub fn is_run_free(&self) -> bool {
        self.run_count() == 0
    }

    /// Increment every entry above `at` by `len` and adjoin the run
    /// `at+1, ..., at+len`.
    pub fn insert_run(&self, at: usize, len: usize) -> Result<SPartition, SPartitionError> {
        let size = self.size();
        if at > size {
            return Err(SPartitionError::InsertOutOfRange { at, size });
        }
        if len == 0 {
            return Err(SPartitionError::EmptyRun);
        }
        let (at, len) = (at as u32, len as u32);
        let mut blocks: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| if e > at { e + len } else { e }).collect())
            .collect();
        blocks.push((at + 1..=at + len).collect());
        Ok(SPartition::from_sorted_unchecked(blocks))
    }

    /// Remove the run at `index` and standardize what remains.
    pub fn delete_run(&self, index: usize) -> Result<SPartition, SPartitionError> {
        let block = self.blocks.get(index).ok_or(SPartitionError::NoSuchBlock(index))?;
        if !is_run(block) {
            return Err(SPartitionError::NotARun(index));
        }
        let (lo, len) = (block[0], block.len() as u32);
        let rest = self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, b)| b.iter().map(|&e| if e > lo { e - len } else { e }).collect())
            .collect();
        Ok(SPartition::from_sorted_unchecked(rest))
    }

    /// Delete runs until none is left; the result does not depend on the
    /// order of deletion.
    pub fn prune(&self) -> SPartition {
        self.run_deletion_sequence().base
    }

    /// Prune runs from right to left (largest first entry first).
    pub fn run_deletion_sequence(&self) -> RunDeletionSequence {
        let mut current = self.clone();
        let mut removed = Vec::new();
        while let Some(idx) = current.blocks.iter().rposition(|b| is_run(b)) {
            let b = &current.blocks[idx];
            removed.push(RunEntry {
                start: b[0],
                len: b.len() as u32,
            });
            current = current.delete_run(idx).expect("block is a run");
        }
        removed.reverse();
        RunDeletionSequence {
            base: current,
            entries: removed,
        }
    }

    fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.size() + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &e in b {
                owner[e as usize] = i;
            }
        }
        owner
    }

    /// The underlying set partition has no crossing `a < b < c < d` with
    /// `a, c` in one block and `b, d` in another.
    pub fn is_noncrossing(&self) -> bool {
        let owner = self.block_of();
        let bounds: Vec<(u32, u32)> = self.blocks.iter().map(|b| block_bounds(b)).collect();
        let mut open: Vec<usize> = Vec::new();
        for e in 1..=self.size() as u32 {
            let b = owner[e as usize];
            let (lo, hi) = bounds[b];
            if e == lo {
                if e != hi {
                    open.push(b);
                }
            } else {
                if open.last() != Some(&b) {
                    return false;
                }
                if e == hi {
                    open.pop();
                }
            }
        }
        true
    }

    /// The spans `[min, max]` of the blocks pairwise nest or are disjoint.
    pub fn is_nonoverlapping(&self) -> bool {
        let spans: Vec<(u32, u32)> = self.blocks.iter().map(|b| block_bounds(b)).collect();
        for (i, &(a1, b1)) in spans.iter().enumerate() {
            for &(a2, b2) in &spans[i + 1..] {
                if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                    return false;
                }
            }
        }
        true
    }

    /// No `a < b < c < d` with `a, d` in one block and `b, c` in another.
    pub fn is_nonnesting(&self) -> bool {
        for (i, x) in self.blocks.iter().enumerate() {
            for (k, y) in self.blocks.iter().enumerate() {
                if i == k {
                    continue;
                }
                let span = block_bounds(x);
                let inside = y.iter().filter(|&&e| span.0 < e && e < span.1).count();
                if inside >= 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn all_blocks_increasing(&self) -> bool {
        self.blocks.iter().all(|b| is_increasing(b))
    }
}

impl fmt::Display for SPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            let parts: Vec<String> = b.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SPartition {
    type Err = SPartitionError;

    /// `"1 12 10/2 6 8/3/4 5/7/9 11"`; the empty string is the empty
    /// s-partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(SPartition::empty());
        }
        let blocks = s
            .split('/')
            .map(|b| {
                b.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| SPartitionError::Parse(s.into())))
                    .collect::<Result<Vec<u32>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SPartition::new(blocks)
    }
}

fn block_bounds(b: &[u32]) -> (u32, u32) {
    let lo = *b.iter().min().expect("nonempty block");
    let hi = *b.iter().max().expect("nonempty block");
    (lo, hi)
}

fn is_increasing(b: &[u32]) -> bool {
    b.windows(2).all(|w| w[0] < w[1])
}

fn is_decreasing(b: &[u32]) -> bool {
    b.windows(2).all(|w| w[0] > w[1])
}

/// `i, i+1, ..., i+l-1` in that order. Singletons are runs.
pub fn is_run(block: &[u32]) -> bool {
    !block.is_empty() && block.windows(2).all(|w| w[1] == w[0] + 1)
}

/// A run whose length and last entry are both divisible by `j`.
pub fn is_j_run(block: &[u32], j: u32) -> bool {
    is_run(block) && (block.len() as u32).is_multiple_of(j) && block[block.len() - 1].is_multiple_of(j)
}

pub fn is_j_compatible(pi: &SPartition, j: u32) -> bool {
    pi.blocks.iter().all(|b| (b.len() as u32).is_multiple_of(j))
}

pub fn j_run_count(pi: &SPartition, j: u32) -> Result<usize, SPartitionError> {
    if !is_j_compatible(pi, j) {
        return Err(SPartitionError::NotJCompatible(j));
    }
    Ok(pi.blocks.iter().filter(|b| is_j_run(b, j)).count())
}

/// One deleted run: its first entry and length at the time of insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunEntry {
    pub start: u32,
    pub len: u32,
}

/// A run-free base together with the runs pruned from it, in insertion order
/// (the reverse of deletion order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunDeletionSequence {
    pub base: SPartition,
    pub entries: Vec<RunEntry>,
}

impl RunDeletionSequence {
    pub fn reconstruct(&self) -> Result<SPartition, SPartitionError> {
        self.entries.iter().try_fold(self.base.clone(), |pi, e| {
            pi.insert_run(e.start as usize - 1, e.len as usize)
        })
    }

    /// Runs that are disjoint from their immediate predecessor; this equals
    /// the run count of the reconstructed s-partition.
    pub fn disjoint_from_predecessor(&self) -> usize {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(i, e)| {
                i == 0 || {
                    let prev = self.entries[i - 1];
                    e.start >= prev.start + prev.len
                }
            })
            .count()
    }
}

/// Strictly increasing starts with `a_i <= k + l_1 + ... + l_{i-1} + 1`;
/// all values positive.
pub fn validate_sequence(base_size: usize, entries: &[RunEntry]) -> bool {
    let mut total = base_size as u64;
    let mut prev_start = 0u32;
    for e in entries {
        if e.start == 0 || e.len == 0 || e.start <= prev_start || e.start as u64 > total + 1 {
            return false;
        }
        prev_start = e.start;
        total += e.len as u64;
    }
    true
}

/// Every entry list satisfying [`validate_sequence`] whose lengths sum to
/// `extra`.
pub fn valid_sequences(base_size: usize, extra: usize) -> Vec<Vec<RunEntry>> {
    fn go(
        total: usize,
        remaining: usize,
        prev_start: u32,
        current: &mut Vec<RunEntry>,
        out: &mut Vec<Vec<RunEntry>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for start in prev_start + 1..=total as u32 + 1 {
            for len in 1..=remaining {
                current.push(RunEntry {
                    start,
                    len: len as u32,
                });
                go(total + len, remaining - len, start, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(base_size, extra, 0, &mut Vec::new(), &mut out);
    out
}

/// Built-in families of s-partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    AllSPartitions,
    /// Every block increasing.
    SetPartitions,
    /// Underlying partition noncrossing, blocks in any order.
    NoncrossingSPartitions,
    /// Underlying partition nonoverlapping, blocks in any order.
    NonoverlappingPartitions,
    /// Permutations as cycles, each listed smallest entry first.
    PermutationCycles,
    /// The family generated by the single base `k, k-1, ..., 1`. `k = 1` is
    /// not a family here and has no members.
    Fk(u32),
    /// Members of the inner family whose block lengths are all divisible by
    /// `j`, sized by support over `j`.
    JCompatible(u32, Box<FamilyId>),
    /// Nonnesting set partitions; not run-closed.
    NonnestingPartitions,
}

impl FamilyId {
    pub fn name(&self) -> String {
        match self {
            FamilyId::AllSPartitions => "all".into(),
            FamilyId::SetPartitions => "set".into(),
            FamilyId::NoncrossingSPartitions => "noncrossing".into(),
            FamilyId::NonoverlappingPartitions => "nonoverlapping".into(),
            FamilyId::PermutationCycles => "cycles".into(),
            FamilyId::Fk(k) => format!("f{k}"),
            FamilyId::JCompatible(j, inner) => format!("j{j}-{}", inner.name()),
            FamilyId::NonnestingPartitions => "nonnesting".into(),
        }
    }

    /// The `j` whose runs this family is closed under.
    pub fn run_modulus(&self) -> u32 {
        match self {
            FamilyId::JCompatible(j, _) => *j,
            _ => 1,
        }
    }

    fn check_supported(&self) -> Result<(), SPartitionError> {
        match self {
            FamilyId::Fk(1) | FamilyId::JCompatible(0, _) => {
                Err(SPartitionError::UnsupportedFamily(self.clone()))
            }
            FamilyId::JCompatible(_, inner) => inner.check_supported(),
            _ => Ok(()),
        }
    }
}

pub fn family_membership(pi: &SPartition, fam: &FamilyId) -> bool {
    match fam {
        FamilyId::AllSPartitions => true,
        FamilyId::SetPartitions => pi.all_blocks_increasing(),
        FamilyId::NoncrossingSPartitions => pi.is_noncrossing(),
        FamilyId::NonoverlappingPartitions => pi.is_nonoverlapping(),
        FamilyId::PermutationCycles => pi
            .blocks
            .iter()
            .all(|b| b.iter().all(|&e| e >= b[0])),
        FamilyId::Fk(0) => pi.is_noncrossing() && pi.all_blocks_increasing(),
        FamilyId::Fk(1) => false,
        FamilyId::Fk(k) => is_fk_member(pi, *k),
        FamilyId::JCompatible(j, inner) => {
            *j > 0 && is_j_compatible(pi, *j) && family_membership(pi, inner)
        }
        FamilyId::NonnestingPartitions => pi.all_blocks_increasing() && pi.is_nonnesting(),
    }
}

fn is_fk_member(pi: &SPartition, k: u32) -> bool {
    if !pi.is_noncrossing() {
        return false;
    }
    let mut odd = pi.blocks.iter().filter(|b| !is_increasing(b));
    let (Some(dec), None) = (odd.next(), odd.next()) else {
        return false;
    };
    if dec.len() != k as usize || !is_decreasing(dec) {
        return false;
    }
    let (lo, hi) = block_bounds(dec);
    !pi.blocks.iter().any(|b| {
        let (a, c) = block_bounds(b);
        b != dec && a < lo && hi < c
    })
}

/// Enumeration limit on support size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SPartitionBudget {
    pub max_size: usize,
}

impl Default for SPartitionBudget {
    fn default() -> Self {
        SPartitionBudget { max_size: 8 }
    }
}

impl SPartitionBudget {
    pub fn check(&self, size: usize) -> Result<(), SPartitionError> {
        if size > self.max_size {
            return Err(SPartitionError::BudgetExceeded {
                size,
                limit: self.max_size,
            });
        }
        Ok(())
    }
}

/// Visit every standard s-partition of `{1..n}`. Elements are placed in
/// increasing order, each either into a new block or at any position of an
/// existing block.
pub fn for_each_spartition(n: usize, mut visit: impl FnMut(&SPartition)) {
    fn go(e: u32, n: u32, blocks: &mut Vec<Vec<u32>>, visit: &mut dyn FnMut(&SPartition)) {
        if e > n {
            visit(&SPartition::from_sorted_unchecked(blocks.clone()));
            return;
        }
        for b in 0..blocks.len() {
            for pos in 0..=blocks[b].len() {
                blocks[b].insert(pos, e);
                go(e + 1, n, blocks, visit);
                blocks[b].remove(pos);
            }
        }
        blocks.push(vec![e]);
        go(e + 1, n, blocks, visit);
        blocks.pop();
    }
    go(1, n as u32, &mut Vec::new(), &mut visit);
}

pub fn enumerate_spartitions(
    n: usize,
    budget: &SPartitionBudget,
) -> Result<Vec<SPartition>, SPartitionError> {
    budget.check(n)?;
    let mut out = Vec::new();
    for_each_spartition(n, |p| out.push(p.clone()));
    Ok(out)
}

/// Members of `fam` of every support size up to `max_size`.
pub fn family_members(
    fam: &FamilyId,
    max_size: usize,
    budget: &SPartitionBudget,
) -> Result<Vec<SPartition>, SPartitionError> {
    budget.check(max_size)?;
    let mut out = Vec::new();
    for n in 0..=max_size {
        for_each_spartition(n, |p| {
            if family_membership(p, fam) {
                out.push(p.clone());
            }
        });
    }
    Ok(out)
}

/// A closure violation: `from` is a member, `to` is obtained by one run
/// insertion or deletion and is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub from: SPartition,
    pub to: SPartition,
}

/// Search members up to support `max_size` for a run insertion or deletion
/// leaving the family (j-runs for j-compatible families).
pub fn closure_violation(
    fam: &FamilyId,
    max_size: usize,
    budget: &SPartitionBudget,
) -> Result<Option<ClosureViolation>, SPartitionError> {
    fam.check_supported()?;
    let j = fam.run_modulus() as usize;
    for pi in family_members(fam, max_size, budget)? {
        let size = pi.size();
        for (idx, b) in pi.blocks.iter().enumerate() {
            if is_j_run(b, j as u32) {
                let to = pi.delete_run(idx)?;
                if !family_membership(&to, fam) {
                    return Ok(Some(ClosureViolation { from: pi, to }));
                }
            }
        }
        for at in (0..=size).step_by(j) {
            for len in (j..=max_size.saturating_sub(size)).step_by(j) {
                let to = pi.insert_run(at, len)?;
                if !family_membership(&to, fam) {
                    return Ok(Some(ClosureViolation { from: pi, to }));
                }
            }
        }
    }
    Ok(None)
}

pub fn closure_check(
    fam: &FamilyId,
    max_size: usize,
    budget: &SPartitionBudget,
) -> Result<bool, SPartitionError> {
    Ok(closure_violation(fam, max_size, budget)?.is_none())
}

/// What the y-exponent counts in [`family_distribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunMode {
    Runs,
    JRuns(u32),
}

/// `sum x^size y^runs` over members of `fam` up to size `max_size`. For
/// `JCompatible(j, _)` the size is support over `j`.
pub fn family_distribution(
    fam: &FamilyId,
    max_size: usize,
    mode: RunMode,
    budget: &SPartitionBudget,
) -> Result<TruncatedSeries, SPartitionError> {
    fam.check_supported()?;
    let j = fam.run_modulus() as usize;
    budget.check(max_size * j)?;
    let mut counts: Vec<HashMap<u32, u64>> = vec![HashMap::new(); max_size + 1];
    for size in 0..=max_size {
        for_each_spartition(size * j, |p| {
            if family_membership(p, fam) {
                let runs = match mode {
                    RunMode::Runs => p.run_count(),
                    RunMode::JRuns(q) => p.blocks.iter().filter(|b| is_j_run(b, q)).count(),
                };
                *counts[size].entry(runs as u32).or_insert(0) += 1;
            }
        });
    }
    Ok(TruncatedSeries::from_coeffs(
        max_size,
        counts.into_iter().map(|row| {
            MultiPoly::from_terms(row.into_iter().map(|(r, c)| {
                (Monomial::from_exponents([(Var::Y, r)]), BigInt::from(c))
            }))
        }),
    ))
}

/// Label each upstep with the number of its matching downstep and return the
/// label lists of the ascents, bottom to top.
fn ascent_labels(steps: &[Step]) -> Option<Vec<Vec<u32>>> {
    let mut labels = vec![0u32; steps.len()];
    let mut stack = Vec::new();
    let mut next_down = 0u32;
    for (i, &s) in steps.iter().enumerate() {
        match s {
            Step::Up => stack.push(i),
            Step::Down => {
                next_down += 1;
                labels[stack.pop()?] = next_down;
            }
            Step::Flat => return None,
        }
    }
    if !stack.is_empty() {
        return None;
    }
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        if steps[i] == Step::Up {
            let mut block = Vec::new();
            while i < steps.len() && steps[i] == Step::Up {
                block.push(labels[i]);
                i += 1;
            }
            blocks.push(block);
        } else {
            i += 1;
        }
    }
    Some(blocks)
}

fn is_plain_dyck_spec(spec: &PathSpec) -> bool {
    spec.j == 1 && spec.start_height == 0 && spec.min_level == 0 && !spec.allow_flat
}

/// Dyck path to noncrossing set partition: downsteps are numbered left to
/// right, upsteps take their matching downstep's number, ascents give the
/// blocks. Pyramid ascents become runs.
pub fn simion(p: &Path) -> Result<SPartition, SPartitionError> {
    if !is_plain_dyck_spec(p.spec()) {
        return Err(SPartitionError::NotDyck);
    }
    let raw = ascent_labels(p.steps()).ok_or(SPartitionError::NotDyck)?;
    Ok(SPartition::from_sorted_unchecked(
        raw.into_iter()
            .map(|mut b| {
                b.reverse();
                b
            })
            .collect(),
    ))
}

/// Inverse of [`simion`]: the ascent for a block sits right before the
/// downstep numbered by the block's smallest entry.
pub fn simion_inverse(pi: &SPartition) -> Result<Path, SPartitionError> {
    if !(pi.all_blocks_increasing() && pi.is_noncrossing()) {
        return Err(SPartitionError::NotNoncrossingSetPartition);
    }
    let lens: HashMap<u32, usize> = pi.blocks.iter().map(|b| (b[0], b.len())).collect();
    let mut steps = Vec::with_capacity(2 * pi.size());
    for e in 1..=pi.size() as u32 {
        if let Some(&len) = lens.get(&e) {
            steps.extend(std::iter::repeat_n(Step::Up, len));
        }
        steps.push(Step::Down);
    }
    Path::new(PathSpec::dyck(), steps).map_err(|_| SPartitionError::NotNoncrossingSetPartition)
}

/// Nonnegative path from `(0, k)` to the axis, mapped to a member of `F_k`.
///
/// Prepend `k` upsteps, label as in [`simion`] keeping blocks decreasing,
/// split the first block after its `k`-th entry, reverse every block but that
/// new first one, and reorder blocks by first entry.
pub fn fk_map(p: &Path, k: u32) -> Result<SPartition, SPartitionError> {
    if k < 2 {
        return Err(SPartitionError::KTooSmall(k));
    }
    let spec = p.spec();
    if spec.j != 1 || spec.start_height != k || spec.min_level != 0 || spec.allow_flat {
        return Err(SPartitionError::NotNk(k));
    }
    let mut steps = vec![Step::Up; k as usize];
    steps.extend_from_slice(p.steps());
    let mut raw = ascent_labels(&steps).ok_or(SPartitionError::NotNk(k))?;
    let first = raw.remove(0);
    let (dec, rest) = first.split_at(k as usize);
    let mut blocks = vec![dec.to_vec()];
    if !rest.is_empty() {
        let mut r = rest.to_vec();
        r.reverse();
        blocks.push(r);
    }
    for mut b in raw {
        b.reverse();
        blocks.push(b);
    }
    Ok(SPartition::from_sorted_unchecked(blocks))
}
