//! Isomorphism tests, canonical forms and the small-order census.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{check_bound, Result};
use crate::perm::Permutation;
use crate::search::for_each_isomorphism;
use crate::table::QuandleTable;

/// Default largest order for [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 9;
/// Default largest order for [`census`].
pub const MAX_CENSUS_ORDER: usize = 5;

/// An isomorphism `ρ : q → q2`, if one exists.
pub fn are_isomorphic(q: &QuandleTable, q2: &QuandleTable) -> Option<Permutation> {
    let mut witness = None;
    for_each_isomorphism(q, q2, |images| {
        witness = Some(Permutation::from_images_unchecked(images.to_vec()));
        ControlFlow::Break(())
    });
    witness
}

/// The lexicographically smallest row-major table among all relabelings of `q`.
pub fn canonical_form(q: &QuandleTable) -> Result<QuandleTable> {
    Ok(canonical_form_with_witness(q, MAX_CANONICAL_ORDER)?.0)
}

/// Canonical form together with the relabeling `p` such that `q.relabel(p)` is that form.
pub fn canonical_form_with_witness(q: &QuandleTable, max_order: usize) -> Result<(QuandleTable, Permutation)> {
    let n = q.order();
    check_bound("order for canonical form", n, max_order)?;
    if n == 0 {
        return Ok((q.clone(), Permutation::identity(0)));
    }
    let generators = q
        .columns()
        .into_iter()
        .filter(|f| !f.is_identity())
        .map(|f| f.into_images())
        .collect();
    let mut search = Canonizer {
        q,
        n,
        best: Vec::new(),
        best_order: Vec::new(),
        generators,
    };
    let mut order = Vec::with_capacity(n);
    let mut label = vec![0; n + 1];
    search.descend(&mut order, &mut label);

    // best_order[new - 1] = old, so the relabeling sends old ↦ new
    let mut images = vec![0; n];
    for (new, &old) in search.best_order.iter().enumerate() {
        images[old - 1] = new + 1;
    }
    let table = QuandleTable::from_data_unchecked(n, search.best);
    Ok((table, Permutation::from_images_unchecked(images)))
}

/// Branch-and-bound over orderings of the elements.
///
/// `order[i]` is the old element receiving new label `i + 1`. Automorphisms
/// (the right translations, plus any found when two leaves tie) prune
/// sibling branches that differ only by an automorphism fixing the prefix.
struct Canonizer<'a> {
    q: &'a QuandleTable,
    n: usize,
    best: Vec<usize>,
    best_order: Vec<usize>,
    // image vectors, 0-based positions, 1-based values
    generators: Vec<Vec<usize>>,
}

impl Canonizer<'_> {
    fn descend(&mut self, order: &mut Vec<usize>, label: &mut [usize]) {
        let n = self.n;
        let k = order.len();
        if k == n {
            self.leaf(order, label);
            return;
        }
        if !self.best.is_empty() && self.prefix_cmp(order, label) == Ordering::Greater {
            return;
        }
        let mut explored: Vec<usize> = Vec::new();
        for candidate in 1..=n {
            if label[candidate] != 0 {
                continue;
            }
            if !explored.is_empty() && self.equivalent_to_explored(order, &explored, candidate) {
                continue;
            }
            order.push(candidate);
            label[candidate] = k + 1;
            self.descend(order, label);
            label[candidate] = 0;
            order.pop();
            explored.push(candidate);
        }
    }

    fn leaf(&mut self, order: &[usize], label: &[usize]) {
        let n = self.n;
        let mut table = Vec::with_capacity(n * n);
        for &a in order {
            for &b in order {
                table.push(label[self.q.at(a, b)]);
            }
        }
        if self.best.is_empty() {
            self.best = table;
            self.best_order = order.to_vec();
            return;
        }
        match table.cmp(&self.best) {
            Ordering::Less => {
                self.best = table;
                self.best_order = order.to_vec();
            }
            Ordering::Equal => {
                // best_order[i] ↦ order[i] is an automorphism
                let mut g = vec![0; n];
                for (&from, &to) in self.best_order.iter().zip(order) {
                    g[from - 1] = to;
                }
                if g.iter().enumerate().any(|(i, &v)| v != i + 1) && !self.generators.contains(&g) {
                    self.generators.push(g);
                }
            }
            Ordering::Greater => {}
        }
    }

    /// Compares the determined prefix of the row-major table against the incumbent.
    fn prefix_cmp(&self, order: &[usize], label: &[usize]) -> Ordering {
        let k = order.len();
        for i in 0..self.n {
            for j in 0..self.n {
                if i >= k || j >= k {
                    return Ordering::Less;
                }
                let best = self.best[i * self.n + j];
                let value = label[self.q.at(order[i], order[j])];
                if value == 0 {
                    // will receive a label above k
                    if k + 1 > best {
                        return Ordering::Greater;
                    }
                    return Ordering::Less;
                }
                match value.cmp(&best) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
        }
        Ordering::Equal
    }

    /// Whether an automorphism fixing `order` pointwise carries some explored candidate to `candidate`.
    fn equivalent_to_explored(&self, order: &[usize], explored: &[usize], candidate: usize) -> bool {
        let n = self.n;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for g in &self.generators {
            if order.iter().any(|&x| g[x - 1] != x) {
                continue;
            }
            any = true;
            for x in 1..=n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g[x - 1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, candidate);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// All quandles of order `n` up to isomorphism, as sorted canonical forms.
pub fn census(n: usize) -> Result<Vec<QuandleTable>> {
    census_with_limit(n, MAX_CENSUS_ORDER)
}

/// Columns range over permutations fixing the diagonal; self-distributivity
/// is checked as soon as the three columns it involves are assigned.
pub fn census_with_limit(n: usize, max_order: usize) -> Result<Vec<QuandleTable>> {
    check_bound("census order", n, max_order)?;
    if n == 0 {
        return Ok(vec![QuandleTable::empty()]);
    }
    let columns: Vec<Vec<Vec<usize>>> = (1..=n).map(|j| permutations_fixing(n, j)).collect();
    let canonical_max = max_order.max(MAX_CANONICAL_ORDER);
    let parts: Vec<Result<BTreeSet<QuandleTable>>> = columns[0]
        .par_iter()
        .map(|first| {
            let mut found = BTreeSet::new();
            let mut chosen: Vec<&[usize]> = vec![first.as_slice()];
            let mut err = None;
            census_extend(n, &columns, &mut chosen, &mut |cols| {
                let mut data = vec![0; n * n];
                for (j, col) in cols.iter().enumerate() {
                    for i in 0..n {
                        data[i * n + j] = col[i];
                    }
                }
                let q = QuandleTable::from_data_unchecked(n, data);
                match canonical_form_with_witness(&q, canonical_max) {
                    Ok((c, _)) => {
                        found.insert(c);
                    }
                    Err(e) => err = Some(e),
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(found),
            }
        })
        .collect();
    let mut all = BTreeSet::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all.into_iter().collect())
}

fn census_extend<'a>(
    n: usize,
    columns: &'a [Vec<Vec<usize>>],
    chosen: &mut Vec<&'a [usize]>,
    emit: &mut dyn FnMut(&[&[usize]]),
) {
    if !columns_consistent(chosen) {
        return;
    }
    if chosen.len() == n {
        emit(chosen);
        return;
    }
    let next = chosen.len();
    for candidate in &columns[next] {
        chosen.push(candidate);
        census_extend(n, columns, chosen, emit);
        chosen.pop();
    }
}

/// `f_k ∘ f_j = f_(f_k(j)) ∘ f_k` for every instance that involves the newest column.
fn columns_consistent(chosen: &[&[usize]]) -> bool {
    let c = chosen.len();
    for k in 1..=c {
        let fk = chosen[k - 1];
        for j in 1..=c {
            let z = fk[j - 1];
            if z > c || (j != c && k != c && z != c) {
                continue;
            }
            let (fj, fz) = (chosen[j - 1], chosen[z - 1]);
            if (0..fk.len()).any(|i| fk[fj[i] - 1] != fz[fk[i] - 1]) {
                return false;
            }
        }
    }
    true
}

/// Permutations of `1..n` (as image vectors) fixing `j`, in lexicographic order.
fn permutations_fixing(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn build(n: usize, j: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let pos = current.len() + 1;
        if pos > n {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if used[v] || (pos == j) != (v == j) {
                continue;
            }
            used[v] = true;
            current.push(v);
            build(n, j, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    build(n, j, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}
