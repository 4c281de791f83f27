//! Backtracking search for isomorphisms between two tables.
//!
//! Images are chosen for the smallest unassigned element with candidates in
//! ascending order, and every pair of assigned elements forces the image of
//! their product. Results therefore come out in lexicographic order of the
//! image vector.

use std::ops::ControlFlow;

use crate::decomp::orbit_decomposition;
use crate::table::QuandleTable;

/// Per-element isomorphism invariants.
pub(crate) fn element_profiles(q: &QuandleTable) -> Vec<[usize; 4]> {
    let n = q.order();
    let decomposition = orbit_decomposition(q);
    let mut orbit_size = vec![0; n + 1];
    for part in decomposition.parts() {
        for &x in part {
            orbit_size[x] = part.len();
        }
    }
    let mut out = vec![[0; 4]; n + 1];
    for x in 1..=n {
        let column_fixed = (1..=n).filter(|&a| q.at(a, x) == a).count();
        let row_fixed = (1..=n).filter(|&b| q.at(x, b) == x).count();
        let column_order = {
            let f = q.column(x);
            let mut k = 1;
            let mut power = f.clone();
            while !power.is_identity() {
                power = f.compose(&power);
                k += 1;
            }
            k
        };
        out[x] = [orbit_size[x], column_fixed, row_fixed, column_order];
    }
    out
}

struct Search<'a> {
    from: &'a QuandleTable,
    to: &'a QuandleTable,
    from_profile: Vec<[usize; 4]>,
    to_profile: Vec<[usize; 4]>,
}

#[derive(Clone)]
struct State {
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn assign(&self, state: &mut State, x: usize, y: usize) -> bool {
        if state.used[y] || self.from_profile[x] != self.to_profile[y] {
            return false;
        }
        state.image[x] = y;
        state.used[y] = true;
        let n = self.from.order();
        let mut pending = vec![x];
        while let Some(x) = pending.pop() {
            for z in 1..=n {
                if state.image[z] == 0 {
                    continue;
                }
                for (a, b) in [(x, z), (z, x)] {
                    let c = self.from.at(a, b);
                    let target = self.to.at(state.image[a], state.image[b]);
                    if state.image[c] != 0 {
                        if state.image[c] != target {
                            return false;
                        }
                    } else {
                        if state.used[target] || self.from_profile[c] != self.to_profile[target] {
                            return false;
                        }
                        state.image[c] = target;
                        state.used[target] = true;
                        pending.push(c);
                    }
                }
            }
        }
        true
    }

    fn run(&self, state: State, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        let n = self.from.order();
        let Some(x) = (1..=n).find(|&x| state.image[x] == 0) else {
            return visit(&state.image[1..]);
        };
        for y in 1..=n {
            let mut next = state.clone();
            if self.assign(&mut next, x, y) {
                self.run(next, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every isomorphism `from → to` (as 1-based image vectors) until it breaks.
pub(crate) fn for_each_isomorphism(
    from: &QuandleTable,
    to: &QuandleTable,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) {
    if from.order() != to.order() {
        return;
    }
    let n = from.order();
    let search = Search {
        from,
        to,
        from_profile: element_profiles(from),
        to_profile: element_profiles(to),
    };
    let mut a = search.from_profile[1..].to_vec();
    let mut b = search.to_profile[1..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return;
    }
    let state = State { image: vec![0; n + 1], used: vec![false; n + 1] };
    let _ = search.run(state, &mut visit);
}
