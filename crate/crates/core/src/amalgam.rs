//! Gluing quandles along rack actions.
//!
//! Blocks `Q_0, ..., Q_(k-1)` occupy consecutive global index ranges in list
//! order. The structure map `Φ^(i,j)` lets each element of `Q_i` act on
//! `Q_j`, so that `x ▷ y = φ^(j,i)_y(x)` for `x ∈ Q_i`, `y ∈ Q_j`. Block
//! indices are 0-based positions in the block list; element indices stay
//! 1-based.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::actions::{automorphisms_with_limit, rack_action_families, verify_family, RackAction};
use crate::decomp::OrbitDecomposition;
use crate::error::{QuandleError, Result};
use crate::isomorph::canonical_form_with_witness;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::table::QuandleTable;

/// Node budget for one structure-map search.
pub const GLUE_SEARCH_NODE_LIMIT: u64 = 50_000_000;

/// A failed compatibility instance: blocks `(i, j, k)` and local elements `a ∈ Q_i`, `b ∈ Q_j`, `c ∈ Q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("compatibility fails for blocks ({i},{j},{k}) at (a,b,c)=({a},{b},{c})")]
pub struct CompatibilityViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Blocks plus the full grid of rack actions between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps {
    blocks: Vec<QuandleTable>,
    // maps[i][j][b - 1] = φ^(i,j)_b ∈ Aut(Q_j); empty when i == j
    maps: Vec<Vec<Vec<Permutation>>>,
}

impl StructureMaps {
    /// Checks shapes only. `maps[i][j]` is the family `Φ^(i,j)`; diagonal entries must be empty.
    pub fn new(blocks: Vec<QuandleTable>, maps: Vec<Vec<Vec<Permutation>>>) -> Result<Self> {
        let k = blocks.len();
        if maps.len() != k {
            return Err(QuandleError::SizeMismatch { left: maps.len(), right: k });
        }
        for (i, row) in maps.iter().enumerate() {
            if row.len() != k {
                return Err(QuandleError::SizeMismatch { left: row.len(), right: k });
            }
            for (j, family) in row.iter().enumerate() {
                let expected = if i == j { 0 } else { blocks[i].order() };
                if family.len() != expected {
                    return Err(QuandleError::SizeMismatch { left: family.len(), right: expected });
                }
                if i != j {
                    if let Some(p) = family.iter().find(|p| p.len() != blocks[j].order()) {
                        return Err(QuandleError::SizeMismatch { left: p.len(), right: blocks[j].order() });
                    }
                }
            }
        }
        Ok(StructureMaps { blocks, maps })
    }

    /// All actions trivial: the disjoint union.
    pub fn disjoint_union(blocks: Vec<QuandleTable>) -> Self {
        let maps = (0..blocks.len())
            .map(|i| {
                (0..blocks.len())
                    .map(|j| {
                        if i == j {
                            Vec::new()
                        } else {
                            vec![Permutation::identity(blocks[j].order()); blocks[i].order()]
                        }
                    })
                    .collect()
            })
            .collect();
        StructureMaps { blocks, maps }
    }

    pub fn blocks(&self) -> &[QuandleTable] {
        &self.blocks
    }

    /// The family `Φ^(i,j)` as permutations of `Q_j`.
    pub fn family(&self, i: usize, j: usize) -> &[Permutation] {
        &self.maps[i][j]
    }

    /// `Φ^(i,j)` as a [`RackAction`] of `Q_i` on `Q_j`; for `i == j` the self-action.
    pub fn action(&self, i: usize, j: usize) -> RackAction {
        if i == j {
            RackAction::self_action(&self.blocks[i])
        } else {
            RackAction::new(self.blocks[i].clone(), self.blocks[j].clone(), self.maps[i][j].clone())
                .expect("shapes checked at construction")
        }
    }

    /// First global index of each block, 1-based.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.blocks)
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(QuandleTable::order).sum()
    }

    /// `φ^(i,j)_b(a)` with the self-action on the diagonal.
    fn phi(&self, i: usize, j: usize, b: usize, a: usize) -> usize {
        if i == j {
            self.blocks[i].at(a, b)
        } else {
            self.maps[i][j][b - 1].apply(a)
        }
    }

    /// Rack-action validity for every off-diagonal pair, then compatibility
    /// triples `(i, j, k)` with `i ≠ j ≠ k` in lexicographic order.
    pub fn check(&self) -> Result<()> {
        let k = self.blocks.len();
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    verify_family(&self.blocks[i], &self.blocks[j], &self.maps[i][j])?;
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                if j == i {
                    continue;
                }
                for l in 0..k {
                    if l == j {
                        continue;
                    }
                    if let Some(v) = self.compatibility_failure(i, j, l) {
                        return Err(v.into());
                    }
                }
            }
        }
        Ok(())
    }

    /// `φ^(k,i)_c(φ^(j,i)_b(a)) = φ^(j,i)_(φ^(k,j)_c(b))(φ^(k,i)_c(a))`.
    fn compatibility_failure(&self, i: usize, j: usize, k: usize) -> Option<CompatibilityViolation> {
        for a in 1..=self.blocks[i].order() {
            for b in 1..=self.blocks[j].order() {
                let ab = self.phi(j, i, b, a);
                for c in 1..=self.blocks[k].order() {
                    let lhs = self.phi(k, i, c, ab);
                    let rhs = self.phi(j, i, self.phi(k, j, c, b), self.phi(k, i, c, a));
                    if lhs != rhs {
                        return Some(CompatibilityViolation { i, j, k, a, b, c });
                    }
                }
            }
        }
        None
    }

    fn build_table(&self) -> Vec<usize> {
        let starts = self.offsets();
        let total = self.order();
        let mut data = vec![0; total * total];
        for (i, qi) in self.blocks.iter().enumerate() {
            for (j, qj) in self.blocks.iter().enumerate() {
                for x in 1..=qi.order() {
                    for y in 1..=qj.order() {
                        let row = starts[i] + x - 1;
                        let col = starts[j] + y - 1;
                        data[(row - 1) * total + (col - 1)] = starts[i] + self.phi(j, i, y, x) - 1;
                    }
                }
            }
        }
        data
    }
}

fn offsets(blocks: &[QuandleTable]) -> Vec<usize> {
    let mut next = 1;
    blocks
        .iter()
        .map(|b| {
            let start = next;
            next += b.order();
            start
        })
        .collect()
}

/// The glued quandle, after checking every rack action and compatibility condition.
pub fn assemble(maps: &StructureMaps) -> Result<QuandleTable> {
    maps.check()?;
    QuandleTable::from_data(maps.order(), maps.build_table())
}

/// All quandles on `Q ⊔ Q2` containing both as subquandles, `Q` first.
///
/// Enumerates rack actions `F : Q → Aut(Q2)` and `G : Q2 → Aut(Q)` and keeps
/// pairs with `g_x(a) ▷ b = g_(f_b(x))(a ▷ b)` and
/// `f_a(x) ▷ y = f_(g_y(a))(x ▷ y)`. Output order: `F` outer, `G` inner.
pub fn glue2(q: &QuandleTable, q2: &QuandleTable) -> Result<Vec<QuandleTable>> {
    glue2_with(q, q2, &Limits::default())
}

pub fn glue2_with(q: &QuandleTable, q2: &QuandleTable, limits: &Limits) -> Result<Vec<QuandleTable>> {
    let (n, m) = (q.order(), q2.order());
    let aut_q = automorphisms_with_limit(q, limits.max_automorphism_order)?;
    let aut_q2 = automorphisms_with_limit(q2, limits.max_automorphism_order)?;
    let fs = rack_action_families(q, &aut_q2)?;
    let gs = rack_action_families(q2, &aut_q)?;

    let compatible = |f: &[Permutation], g: &[Permutation]| -> bool {
        for x in 1..=m {
            for a in 1..=n {
                for b in 1..=n {
                    if q.at(g[x - 1].apply(a), b) != g[f[b - 1].apply(x) - 1].apply(q.at(a, b)) {
                        return false;
                    }
                }
            }
        }
        for a in 1..=n {
            for x in 1..=m {
                for y in 1..=m {
                    if q2.at(f[a - 1].apply(x), y) != f[g[y - 1].apply(a) - 1].apply(q2.at(x, y)) {
                        return false;
                    }
                }
            }
        }
        true
    };

    let size = n + m;
    let per_f: Vec<Result<Vec<QuandleTable>>> = fs
        .par_iter()
        .map(|f| {
            gs.iter()
                .filter(|g| compatible(f, g))
                .map(|g| {
                    let mut data = vec![0; size * size];
                    for a in 1..=n {
                        for b in 1..=n {
                            data[(a - 1) * size + (b - 1)] = q.at(a, b);
                        }
                        for y in 1..=m {
                            data[(a - 1) * size + (n + y - 1)] = g[y - 1].apply(a);
                        }
                    }
                    for x in 1..=m {
                        for b in 1..=n {
                            data[(n + x - 1) * size + (b - 1)] = n + f[b - 1].apply(x);
                        }
                        for y in 1..=m {
                            data[(n + x - 1) * size + (n + y - 1)] = n + q2.at(x, y);
                        }
                    }
                    QuandleTable::from_data(size, data)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for chunk in per_f {
        out.extend(chunk?);
    }
    Ok(out)
}

/// Largest candidate count accepted by [`glue2_by_completion`].
pub const COMPLETION_CANDIDATE_LIMIT: u64 = 20_000_000;

/// Same set as [`glue2`], found by filling the off-diagonal blocks with
/// arbitrary per-column permutations and validating each full table.
///
/// Independent of the rack-action machinery; meant as a cross-check for small inputs.
pub fn glue2_by_completion(q: &QuandleTable, q2: &QuandleTable) -> Result<Vec<QuandleTable>> {
    let (n, m) = (q.order(), q2.order());
    let candidates = (factorial(n) as u128)
        .saturating_pow(m as u32)
        .saturating_mul((factorial(m) as u128).saturating_pow(n as u32));
    if candidates > COMPLETION_CANDIDATE_LIMIT as u128 {
        return Err(QuandleError::BoundExceeded {
            what: "completion candidates",
            limit: COMPLETION_CANDIDATE_LIMIT,
            actual: candidates.min(u64::MAX as u128) as u64,
        });
    }
    let perms_q = all_permutations(n);
    let perms_q2 = all_permutations(m);
    let size = n + m;
    let mut base = vec![0; size * size];
    for a in 1..=n {
        for b in 1..=n {
            base[(a - 1) * size + (b - 1)] = q.at(a, b);
        }
    }
    for x in 1..=m {
        for y in 1..=m {
            base[(n + x - 1) * size + (n + y - 1)] = n + q2.at(x, y);
        }
    }
    // one odometer digit per off-diagonal column: first the m columns of Q2, then the n of Q
    let radices: Vec<usize> = std::iter::repeat_n(perms_q.len(), m)
        .chain(std::iter::repeat_n(perms_q2.len(), n))
        .collect();
    let mut digits = vec![0usize; m + n];
    let mut out = Vec::new();
    loop {
        let mut data = base.clone();
        for y in 1..=m {
            let col = &perms_q[digits[y - 1]];
            for a in 1..=n {
                data[(a - 1) * size + (n + y - 1)] = col[a - 1];
            }
        }
        for b in 1..=n {
            let col = &perms_q2[digits[m + b - 1]];
            for x in 1..=m {
                data[(n + x - 1) * size + (b - 1)] = n + col[x - 1];
            }
        }
        if crate::table::first_violation(size, &data).is_none() {
            out.push(QuandleTable::from_data_unchecked(size, data));
        }
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).fold(1u64, |acc, k| acc.saturating_mul(k))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn build(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                build(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    build(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

/// Every grid of structure maps on `blocks` satisfying all compatibility conditions.
///
/// Pairs `(i, j)` are assigned in lexicographic order, candidates in
/// rack-action enumeration order; a compatibility triple is checked as soon
/// as its three maps are known.
pub fn glue_structure_maps(blocks: &[QuandleTable], limits: &Limits) -> Result<Vec<StructureMaps>> {
    let k = blocks.len();
    let auts: Vec<Vec<Permutation>> = blocks
        .iter()
        .map(|b| automorphisms_with_limit(b, limits.max_automorphism_order))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    if pairs.is_empty() {
        return Ok(vec![StructureMaps::disjoint_union(blocks.to_vec())]);
    }
    let mut domains = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        domains.push(rack_action_families(&blocks[i], &auts[j])?);
    }
    let position = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
    // triple (i, j, l) reads Φ^(j,i), Φ^(l,i) and Φ^(l,j)
    let mut triples_at: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); pairs.len()];
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            for l in (0..k).filter(|&l| l != j) {
                let last = [position(j, i), position(l, i), position(l, j)]
                    .into_iter()
                    .flatten()
                    .max()
                    .expect("j != i");
                triples_at[last].push((i, j, l));
            }
        }
    }

    let search = GridSearch { blocks, pairs: &pairs, domains: &domains, triples_at: &triples_at };
    let branches: Vec<Result<Vec<Vec<usize>>>> = (0..domains[0].len())
        .into_par_iter()
        .map(|first| {
            let mut state = GridState { choice: vec![first], nodes: 0, found: Vec::new() };
            if search.consistent(&state.choice) {
                search.extend(&mut state)?;
            }
            Ok(state.found)
        })
        .collect();

    let mut out = Vec::new();
    for branch in branches {
        for choice in branch? {
            out.push(search.structure_maps(&choice));
        }
    }
    Ok(out)
}

struct GridSearch<'a> {
    blocks: &'a [QuandleTable],
    pairs: &'a [(usize, usize)],
    domains: &'a [Vec<Vec<Permutation>>],
    triples_at: &'a [Vec<(usize, usize, usize)>],
}

struct GridState {
    choice: Vec<usize>,
    nodes: u64,
    found: Vec<Vec<usize>>,
}

impl GridSearch<'_> {
    fn structure_maps(&self, choice: &[usize]) -> StructureMaps {
        let k = self.blocks.len();
        let mut maps = vec![vec![Vec::new(); k]; k];
        for (v, &(i, j)) in self.pairs.iter().enumerate() {
            maps[i][j] = self.domains[v][choice[v]].clone();
        }
        StructureMaps { blocks: self.blocks.to_vec(), maps }
    }

    fn phi(&self, choice: &[usize], i: usize, j: usize, b: usize, a: usize) -> usize {
        if i == j {
            return self.blocks[i].at(a, b);
        }
        // pairs are the off-diagonal (i, j) in lexicographic order
        let v = i * (self.blocks.len() - 1) + j - usize::from(j > i);
        self.domains[v][choice[v]][b - 1].apply(a)
    }

    fn consistent(&self, choice: &[usize]) -> bool {
        let v = choice.len() - 1;
        self.triples_at[v].iter().all(|&(i, j, l)| {
            (1..=self.blocks[i].order()).all(|a| {
                (1..=self.blocks[j].order()).all(|b| {
                    let ab = self.phi(choice, j, i, b, a);
                    (1..=self.blocks[l].order()).all(|c| {
                        let lhs = self.phi(choice, l, i, c, ab);
                        let bc = self.phi(choice, l, j, c, b);
                        let ac = self.phi(choice, l, i, c, a);
                        lhs == self.phi(choice, j, i, bc, ac)
                    })
                })
            })
        })
    }

    fn extend(&self, state: &mut GridState) -> Result<()> {
        state.nodes += 1;
        if state.nodes > GLUE_SEARCH_NODE_LIMIT {
            return Err(QuandleError::BoundExceeded {
                what: "structure-map search nodes",
                limit: GLUE_SEARCH_NODE_LIMIT,
                actual: state.nodes,
            });
        }
        let v = state.choice.len();
        if v == self.pairs.len() {
            state.found.push(state.choice.clone());
            return Ok(());
        }
        for candidate in 0..self.domains[v].len() {
            state.choice.push(candidate);
            if self.consistent(&state.choice) {
                self.extend(state)?;
            }
            state.choice.pop();
        }
        Ok(())
    }
}

/// All subquandle-depth-1 structures on the disjoint union of `blocks`.
pub fn glue_n(blocks: &[QuandleTable]) -> Result<Vec<QuandleTable>> {
    glue_n_with(blocks, &Limits::default())
}

pub fn glue_n_with(blocks: &[QuandleTable], limits: &Limits) -> Result<Vec<QuandleTable>> {
    glue_structure_maps(blocks, limits)?
        .iter()
        .map(|s| QuandleTable::from_data(s.order(), s.build_table()))
        .collect()
}

/// All non-connected quandles on the disjoint union of `blocks` with every block a subquandle,
/// one per isomorphism class.
///
/// Every set partition of the block list into at least two cells is tried;
/// a cell with several blocks contributes all of its own non-connected
/// structures (recursively), and the cells are then glued with [`glue_n`].
/// Each representative keeps the blocks at their list-order index ranges.
pub fn enumerate_nonconnected(blocks: &[QuandleTable]) -> Result<Vec<QuandleTable>> {
    enumerate_nonconnected_with(blocks, &Limits::default())
}

pub fn enumerate_nonconnected_with(blocks: &[QuandleTable], limits: &Limits) -> Result<Vec<QuandleTable>> {
    match blocks.len() {
        0 => Ok(Vec::new()),
        1 => {
            if crate::decomp::is_connected(&blocks[0]) {
                Ok(Vec::new())
            } else {
                Ok(vec![blocks[0].clone()])
            }
        }
        _ => {
            let mut memo = HashMap::new();
            nonconnected(blocks, limits, &mut memo)
        }
    }
}

fn nonconnected(
    blocks: &[QuandleTable],
    limits: &Limits,
    memo: &mut HashMap<Vec<QuandleTable>, Vec<QuandleTable>>,
) -> Result<Vec<QuandleTable>> {
    if let Some(hit) = memo.get(blocks) {
        return Ok(hit.clone());
    }
    let k = blocks.len();
    let starts = offsets(blocks);
    let total: usize = blocks.iter().map(QuandleTable::order).sum();
    let mut seen: BTreeSet<QuandleTable> = BTreeSet::new();
    let mut out = Vec::new();

    for partition in set_partitions(k).into_iter().filter(|p| p.len() >= 2) {
        let mut options: Vec<Vec<QuandleTable>> = Vec::with_capacity(partition.len());
        for cell in &partition {
            if cell.len() == 1 {
                options.push(vec![blocks[cell[0]].clone()]);
            } else {
                let sub: Vec<QuandleTable> = cell.iter().map(|&b| blocks[b].clone()).collect();
                options.push(nonconnected(&sub, limits, memo)?);
            }
        }
        // glued layout lists blocks cell by cell; map it back to list order
        let mut images = vec![0; total];
        let mut next = 1;
        for cell in &partition {
            for &b in cell {
                for x in 0..blocks[b].order() {
                    images[next - 1] = starts[b] + x;
                    next += 1;
                }
            }
        }
        let back = Permutation::from_images_unchecked(images);

        for combination in cartesian(&options) {
            for glued in glue_n_with(&combination, limits)? {
                let table = glued.relabel(&back)?;
                let (canonical, _) = canonical_form_with_witness(&table, limits.max_canonical_order)?;
                if seen.insert(canonical) {
                    out.push(table);
                }
            }
        }
    }
    memo.insert(blocks.to_vec(), out.clone());
    Ok(out)
}

/// Set partitions of `0..k` in restricted-growth order; cells ascending, ordered by minimum.
pub(crate) fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(k: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if rgs.len() == k {
            let mut cells = vec![Vec::new(); max + 1];
            for (x, &c) in rgs.iter().enumerate() {
                cells[c].push(x);
            }
            out.push(cells);
            return;
        }
        for c in 0..=max + 1 {
            rgs.push(c);
            grow(k, rgs, max.max(c), out);
            rgs.pop();
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    grow(k, &mut vec![0], 0, &mut out);
    out
}

fn cartesian(options: &[Vec<QuandleTable>]) -> Vec<Vec<QuandleTable>> {
    options.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect()
    })
}

/// Reads the structure maps off `q` with respect to `parts`.
///
/// Blocks are the parts in order, each relabelled `1..k` ascending. The glued
/// table of the result is `q` relabelled by [`contiguous_relabeling`].
pub fn extract_structure_maps(q: &QuandleTable, parts: &OrbitDecomposition) -> Result<StructureMaps> {
    let parts = parts.parts();
    let n = q.order();
    let mut owner = vec![(0, 0); n + 1];
    for (p, part) in parts.iter().enumerate() {
        for (local, &x) in part.iter().enumerate() {
            owner[x] = (p, local + 1);
        }
    }
    if (1..=n).any(|x| owner[x].1 == 0) || parts.iter().map(Vec::len).sum::<usize>() != n {
        return Err(QuandleError::InvalidDecomposition("parts do not cover the table".into()));
    }
    let blocks: Vec<QuandleTable> = parts.iter().map(|p| q.restrict(p)).collect::<Result<_>>()?;
    let k = parts.len();
    let mut maps = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for &b in &parts[i] {
                let mut images = Vec::with_capacity(parts[j].len());
                for &a in &parts[j] {
                    let (block, local) = owner[q.at(a, b)];
                    if block != j {
                        return Err(QuandleError::InvalidDecomposition(format!(
                            "{a} ▷ {b} leaves its part"
                        )));
                    }
                    images.push(local);
                }
                maps[i][j].push(Permutation::from_images_unchecked(images));
            }
        }
    }
    Ok(StructureMaps { blocks, maps })
}

/// Old index ↦ new index when the parts are laid out consecutively in order.
pub fn contiguous_relabeling(parts: &OrbitDecomposition) -> Permutation {
    let n: usize = parts.parts().iter().map(Vec::len).sum();
    let mut images = vec![0; n];
    for (new, &old) in parts.parts().iter().flatten().enumerate() {
        images[old - 1] = new + 1;
    }
    Permutation::from_images_unchecked(images)
}

/// Automorphisms `ρ_i` of each block with `ρ_j(φ^(i,j)_b(a)) = ψ^(i,j)_(ρ_i(b))(ρ_j(a))`, if any.
pub fn structure_maps_isomorphism(s: &StructureMaps, s2: &StructureMaps) -> Result<Option<Vec<Permutation>>> {
    if s.blocks != s2.blocks {
        return Err(QuandleError::BlockMismatch(format!(
            "{} blocks vs {} blocks, or differing tables",
            s.blocks.len(),
            s2.blocks.len()
        )));
    }
    let auts: Vec<Vec<Permutation>> =
        s.blocks.iter().map(crate::actions::automorphisms).collect::<Result<_>>()?;
    let k = s.blocks.len();

    let agrees = |rho: &[&Permutation], i: usize, j: usize| -> bool {
        (1..=s.blocks[i].order()).all(|b| {
            (1..=s.blocks[j].order()).all(|a| {
                rho[j].apply(s.maps[i][j][b - 1].apply(a))
                    == s2.maps[i][j][rho[i].apply(b) - 1].apply(rho[j].apply(a))
            })
        })
    };

    fn walk<'a>(
        t: usize,
        k: usize,
        auts: &'a [Vec<Permutation>],
        rho: &mut Vec<&'a Permutation>,
        agrees: &dyn Fn(&[&Permutation], usize, usize) -> bool,
    ) -> bool {
        if t == k {
            return true;
        }
        for candidate in &auts[t] {
            rho.push(candidate);
            let ok = (0..t).all(|other| agrees(rho, other, t) && agrees(rho, t, other));
            if ok && walk(t + 1, k, auts, rho, agrees) {
                return true;
            }
            rho.pop();
        }
        false
    }

    let mut rho = Vec::with_capacity(k);
    if walk(0, k, &auts, &mut rho, &agrees) {
        Ok(Some(rho.into_iter().cloned().collect()))
    } else {
        Ok(None)
    }
}

pub fn structure_maps_isomorphic(s: &StructureMaps, s2: &StructureMaps) -> Result<bool> {
    Ok(structure_maps_isomorphism(s, s2)?.is_some())
}
