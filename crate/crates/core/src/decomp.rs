//! Subquandles, complemented subquandles and the orbit decomposition.
//!
//! Two routes to the decomposition live here. [`orbit`] closes `{a}` under all
//! right translations. [`minimal_complemented`] intersects every complemented
//! subquandle containing `a` by exhaustive subset scan; it exists as an
//! independent cross-check of the orbit route on small tables.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{check_bound, QuandleError, Result};
use crate::table::QuandleTable;

/// Largest order for the exhaustive subset scan in [`minimal_complemented`].
pub const MAX_COMPLEMENT_SCAN_ORDER: usize = 16;
/// Default largest order for [`all_subquandles`].
pub const MAX_SUBQUANDLE_ORDER: usize = 12;

/// A partition of `{1..n}` into complemented subquandles.
///
/// Parts are sorted ascending and ordered by their minimum element. Values
/// returned by [`orbit_decomposition`] are additionally minimal: no proper
/// nonempty subset of a part is complemented.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitDecomposition {
    parts: Vec<Vec<usize>>,
}

impl OrbitDecomposition {
    /// Accepts any partition of `{1..n}` into complemented subquandles of `q`.
    pub fn from_parts(q: &QuandleTable, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = q.order();
        let mut seen = vec![false; n + 1];
        let mut normalized = Vec::with_capacity(parts.len());
        for mut part in parts {
            part.sort_unstable();
            if part.is_empty() {
                return Err(QuandleError::InvalidDecomposition("empty part".into()));
            }
            for &x in &part {
                q.check_index(x)?;
                if seen[x] {
                    return Err(QuandleError::InvalidDecomposition(format!(
                        "element {x} appears twice"
                    )));
                }
                seen[x] = true;
            }
            if !is_closed_subset(q, &part)? || !complement_closed(q, &part) {
                return Err(QuandleError::InvalidDecomposition(format!(
                    "part {part:?} is not a complemented subquandle"
                )));
            }
            normalized.push(part);
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return Err(QuandleError::InvalidDecomposition(format!("element {missing} not covered")));
        }
        normalized.sort_by_key(|p| p[0]);
        Ok(OrbitDecomposition { parts: normalized })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part holding element `x`.
    pub fn part_of(&self, x: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&x).is_ok())
    }
}

fn in_set(n: usize, subset: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n + 1];
    for &x in subset {
        mask[x] = true;
    }
    mask
}

/// Whether `a ▷ b ∈ subset` for all `a, b ∈ subset`.
pub fn is_closed_subset(q: &QuandleTable, subset: &[usize]) -> Result<bool> {
    for &x in subset {
        q.check_index(x)?;
    }
    let member = in_set(q.order(), subset);
    Ok(subset.iter().all(|&a| subset.iter().all(|&b| member[q.at(a, b)])))
}

fn complement_closed(q: &QuandleTable, subset: &[usize]) -> bool {
    let member = in_set(q.order(), subset);
    let rest: Vec<usize> = (1..=q.order()).filter(|&x| !member[x]).collect();
    rest.iter().all(|&a| rest.iter().all(|&b| !member[q.at(a, b)]))
}

/// Whether the subquandle `subset` has a complement that is also closed.
///
/// A subset that is not itself closed is a contract violation and yields
/// [`QuandleError::NotClosed`] rather than `false`.
pub fn is_complemented(q: &QuandleTable, subset: &[usize]) -> Result<bool> {
    if !is_closed_subset(q, subset)? {
        let mut s = subset.to_vec();
        s.sort_unstable();
        return Err(QuandleError::NotClosed(s));
    }
    Ok(complement_closed(q, subset))
}

/// The orbit of `a`: its closure under every right translation, sorted.
///
/// Only forward translations are applied; each `f_b` has finite order so
/// its inverse is one of its powers.
pub fn orbit(q: &QuandleTable, a: usize) -> Result<Vec<usize>> {
    q.check_index(a)?;
    let n = q.order();
    let mut seen = vec![false; n + 1];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for b in 1..=n {
            let y = q.at(x, b);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    Ok((1..=n).filter(|&x| seen[x]).collect())
}

/// The orbit decomposition, parts ordered by minimum element.
pub fn orbit_decomposition(q: &QuandleTable) -> OrbitDecomposition {
    let n = q.order();
    let mut assigned = vec![false; n + 1];
    let mut parts = Vec::new();
    for a in 1..=n {
        if assigned[a] {
            continue;
        }
        let part = orbit(q, a).expect("index in range");
        for &x in &part {
            assigned[x] = true;
        }
        parts.push(part);
    }
    OrbitDecomposition { parts }
}

fn mask_closed(table: &[u32], n: usize, mask: u32) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut inner = mask;
        while inner != 0 {
            let b = inner.trailing_zeros() as usize;
            inner &= inner - 1;
            if mask & table[a * n + b] == 0 {
                return false;
            }
        }
    }
    true
}

/// Bitmasks of every complemented subquandle, found by scanning all subsets.
fn complemented_masks(q: &QuandleTable) -> Result<Vec<u32>> {
    let n = q.order();
    check_bound("order for exhaustive complemented-subset scan", n, MAX_COMPLEMENT_SCAN_ORDER)?;
    // entry bits: 1 << (a ▷ b - 1)
    let table: Vec<u32> = q.as_slice().iter().map(|&v| 1u32 << (v - 1)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok((0..=full)
        .filter(|&mask| mask_closed(&table, n, mask) && mask_closed(&table, n, full & !mask))
        .collect())
}

fn mask_to_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

/// `S(a)`: the intersection of all complemented subquandles containing `a`.
///
/// Exhaustive over all `2^n` subsets, so limited to [`MAX_COMPLEMENT_SCAN_ORDER`].
pub fn minimal_complemented(q: &QuandleTable, a: usize) -> Result<Vec<usize>> {
    q.check_index(a)?;
    let bit = 1u32 << (a - 1);
    let masks = complemented_masks(q)?;
    let meet = masks.iter().filter(|&&m| m & bit != 0).fold(u32::MAX, |acc, &m| acc & m);
    Ok(mask_to_set(meet))
}

/// The distinct sets `S(a)` for all `a`, in the same normal form as [`orbit_decomposition`].
pub fn minimal_complemented_partition(q: &QuandleTable) -> Result<Vec<Vec<usize>>> {
    let masks = complemented_masks(q)?;
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for a in 1..=q.order() {
        let bit = 1u32 << (a - 1);
        let meet = masks.iter().filter(|&&m| m & bit != 0).fold(u32::MAX, |acc, &m| acc & m);
        let part = mask_to_set(meet);
        if !parts.contains(&part) {
            parts.push(part);
        }
    }
    parts.sort_by_key(|p| p[0]);
    Ok(parts)
}

/// Every complemented subquandle, i.e. every union of orbits, including `∅` and `Q`.
///
/// Sorted by size, then lexicographically.
pub fn complemented_subquandles(q: &QuandleTable) -> Result<Vec<Vec<usize>>> {
    let parts = orbit_decomposition(q).parts;
    check_bound("number of orbits", parts.len(), MAX_COMPLEMENT_SCAN_ORDER)?;
    let mut out: Vec<Vec<usize>> = (0u32..(1 << parts.len()))
        .map(|mask| {
            let mut set: Vec<usize> = parts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .flat_map(|(_, p)| p.iter().copied())
                .collect();
            set.sort_unstable();
            set
        })
        .collect();
    sort_sets(&mut out);
    Ok(out)
}

fn sort_sets(sets: &mut [Vec<usize>]) {
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
}

/// Connected means exactly one orbit.
pub fn is_connected(q: &QuandleTable) -> bool {
    orbit_decomposition(q).len() == 1
}

/// Number of orbit-decomposition layers until every remaining part is connected.
pub fn subquandle_depth(q: &QuandleTable) -> usize {
    let decomposition = orbit_decomposition(q);
    if decomposition.len() <= 1 {
        return 0;
    }
    1 + decomposition
        .parts
        .iter()
        .map(|part| subquandle_depth(&q.restrict(part).expect("orbits are closed")))
        .max()
        .unwrap_or(0)
}

/// The connected subquandles at the bottom of the depth recursion, as global index sets.
///
/// Listed depth-first, each layer in orbit order. Their union is `{1..n}`.
pub fn connected_leaves(q: &QuandleTable) -> Vec<Vec<usize>> {
    fn walk(q: &QuandleTable, global: &[usize], out: &mut Vec<Vec<usize>>) {
        let decomposition = orbit_decomposition(q);
        if decomposition.len() <= 1 {
            out.push(global.to_vec());
            return;
        }
        for part in decomposition.parts() {
            let sub = q.restrict(part).expect("orbits are closed");
            let sub_global: Vec<usize> = part.iter().map(|&x| global[x - 1]).collect();
            walk(&sub, &sub_global, out);
        }
    }
    let mut out = Vec::new();
    if q.order() > 0 {
        let identity: Vec<usize> = (1..=q.order()).collect();
        walk(q, &identity, &mut out);
    }
    out
}

/// Every closed subset, `∅` and `Q` included, sorted by size then lexicographically.
pub fn all_subquandles(q: &QuandleTable) -> Result<Vec<Vec<usize>>> {
    all_subquandles_with_limit(q, MAX_SUBQUANDLE_ORDER)
}

pub fn all_subquandles_with_limit(q: &QuandleTable, max_order: usize) -> Result<Vec<Vec<usize>>> {
    let n = q.order();
    check_bound("order for subquandle enumeration", n, max_order.min(32))?;
    let closure = |mut set: BTreeSet<usize>| -> BTreeSet<usize> {
        loop {
            let fresh: Vec<usize> = set
                .iter()
                .flat_map(|&a| set.iter().map(move |&b| q.at(a, b)))
                .filter(|v| !set.contains(v))
                .collect();
            if fresh.is_empty() {
                return set;
            }
            set.extend(fresh);
        }
    };
    // every nonempty closed set is reached by adding generators one at a time
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(Vec::new());
    let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    while let Some(set) = frontier.pop() {
        for x in 1..=n {
            if set.contains(&x) {
                continue;
            }
            let mut grown = set.clone();
            grown.insert(x);
            let grown = closure(grown);
            let key: Vec<usize> = grown.iter().copied().collect();
            if found.insert(key) {
                frontier.push(grown);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    sort_sets(&mut out);
    Ok(out)
}
