//! Independent ground-truth deciders for PARTITION and 3-PARTITION.
//!
//! These are deliberately kept separate from the game engine and the
//! reductions so the roundtrip checks (solver verdict vs. oracle verdict)
//! compare two genuinely independent computations.

use crate::reductions::{PartitionInstance, ThreePartitionInstance};

/// Yes/no verdict with a witness partition on yes.
///
/// The witness groups are index sets into the instance; each group re-sums
/// to the target exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub yes: bool,
    pub witness: Option<Vec<Vec<usize>>>,
}

impl OracleResult {
    fn no() -> Self {
        OracleResult { yes: false, witness: None }
    }

    fn yes(witness: Vec<Vec<usize>>) -> Self {
        OracleResult { yes: true, witness: Some(witness) }
    }
}

/// Decide PARTITION: can the values be split into two sets each summing to
/// half the total? Subset-sum dynamic program with witness reconstruction.
pub fn oracle_partition(inst: &PartitionInstance) -> OracleResult {
    let values = inst.values();
    let total: u64 = values.iter().sum();
    if total % 2 != 0 {
        return OracleResult::no();
    }
    let target = (total / 2) as usize;

    // reached[s] = Some(i) when sum s is reachable and value i was the last
    // element added to reach it (usize::MAX marks the empty sum).
    let mut reached: Vec<Option<usize>> = vec![None; target + 1];
    reached[0] = Some(usize::MAX);
    for (i, &v) in values.iter().enumerate() {
        let v = v as usize;
        if v > target {
            continue;
        }
        for s in (v..=target).rev() {
            if reached[s].is_none() && reached[s - v].is_some() {
                reached[s] = Some(i);
            }
        }
    }
    if reached[target].is_none() {
        return OracleResult::no();
    }

    let mut in_first = vec![false; values.len()];
    let mut s = target;
    while s > 0 {
        let i = reached[s].expect("backtrack stays on reachable sums");
        in_first[i] = true;
        s -= values[i] as usize;
    }
    let first: Vec<usize> = (0..values.len()).filter(|&i| in_first[i]).collect();
    let second: Vec<usize> = (0..values.len()).filter(|&i| !in_first[i]).collect();
    OracleResult::yes(vec![first, second])
}

/// Decide 3-PARTITION in the paper's sense: can the 3n values be split into
/// n groups each summing to S/n? Group sizes are unconstrained by default;
/// pass `require_triples` for the conventional size-3 variant.
pub fn oracle_3partition(inst: &ThreePartitionInstance) -> OracleResult {
    oracle_3partition_with(inst, false)
}

/// [`oracle_3partition`] with an explicit group-size-3 switch.
pub fn oracle_3partition_with(inst: &ThreePartitionInstance, require_triples: bool) -> OracleResult {
    let n = inst.group_count();
    let target = inst.sum() / n as u64;

    // Sort descending; larger values fail earlier.
    let mut order: Vec<usize> = (0..inst.values().len()).collect();
    order.sort_unstable_by_key(|&i| std::cmp::Reverse(inst.values()[i]));

    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sums = vec![0u64; n];
    if assign(inst.values(), &order, 0, &mut groups, &mut sums, target, require_triples) {
        OracleResult::yes(groups)
    } else {
        OracleResult::no()
    }
}

fn assign(
    values: &[u64],
    order: &[usize],
    depth: usize,
    groups: &mut Vec<Vec<usize>>,
    sums: &mut [u64],
    target: u64,
    require_triples: bool,
) -> bool {
    if depth == order.len() {
        return sums.iter().all(|&s| s == target)
            && (!require_triples || groups.iter().all(|g| g.len() == 3));
    }
    let item = order[depth];
    let v = values[item];
    for g in 0..groups.len() {
        if sums[g] + v > target {
            continue;
        }
        if require_triples && groups[g].len() == 3 {
            continue;
        }
        groups[g].push(item);
        sums[g] += v;
        if assign(values, order, depth + 1, groups, sums, target, require_triples) {
            return true;
        }
        sums[g] -= v;
        groups[g].pop();
        // Identical-group symmetry: placing into a second empty group is
        // the same branch as the first.
        if sums[g] == 0 {
            break;
        }
    }
    false
}
