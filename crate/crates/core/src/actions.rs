//! Rack actions of one quandle on another.
//!
//! A rack action of `R` on `S` is a family `φ_r ∈ Aut(S)`, one per element of
//! `R`, with `φ_r ∘ φ_r' = φ_(r' ▷ r) ∘ φ_r`.

use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::error::{check_bound, QuandleError, Result};
use crate::perm::Permutation;
use crate::search::for_each_isomorphism;
use crate::table::QuandleTable;

/// Default largest order for [`automorphisms`].
pub const MAX_AUTOMORPHISM_ORDER: usize = 10;
/// Node budget for one rack-action enumeration.
pub const RACK_SEARCH_NODE_LIMIT: u64 = 50_000_000;

pub type Automorphism = Permutation;

/// First failing condition of a candidate rack action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ActionViolation {
    #[error("φ_{r} is not an automorphism: fails at (a,b)=({a},{b})")]
    NotAutomorphism { r: usize, a: usize, b: usize },
    #[error("rack law fails at (r,r',s)=({r},{r_prime},{s})")]
    RackLaw { r: usize, r_prime: usize, s: usize },
}

/// A family `{φ_r}` of permutations of the target, indexed by the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackAction {
    source: QuandleTable,
    target: QuandleTable,
    maps: Vec<Permutation>,
}

impl RackAction {
    /// Checks shapes only; use [`RackAction::verify`] for the algebraic conditions.
    pub fn new(source: QuandleTable, target: QuandleTable, maps: Vec<Permutation>) -> Result<Self> {
        if maps.len() != source.order() {
            return Err(QuandleError::SizeMismatch { left: maps.len(), right: source.order() });
        }
        if let Some(bad) = maps.iter().find(|p| p.len() != target.order()) {
            return Err(QuandleError::SizeMismatch { left: bad.len(), right: target.order() });
        }
        Ok(RackAction { source, target, maps })
    }

    /// The action of a quandle on itself by right translations.
    pub fn self_action(q: &QuandleTable) -> Self {
        RackAction { source: q.clone(), target: q.clone(), maps: q.columns() }
    }

    /// Every element acts as the identity.
    pub fn trivial(source: &QuandleTable, target: &QuandleTable) -> Self {
        RackAction {
            source: source.clone(),
            target: target.clone(),
            maps: vec![Permutation::identity(target.order()); source.order()],
        }
    }

    pub fn source(&self) -> &QuandleTable {
        &self.source
    }

    pub fn target(&self) -> &QuandleTable {
        &self.target
    }

    pub fn maps(&self) -> &[Permutation] {
        &self.maps
    }

    /// `φ_r`, 1-based.
    pub fn map(&self, r: usize) -> &Permutation {
        &self.maps[r - 1]
    }

    pub fn into_maps(self) -> Vec<Permutation> {
        self.maps
    }

    /// Automorphism conditions first (by `r`, then `(a, b)`), then the rack law by `(r, r', s)`.
    pub fn verify(&self) -> Result<(), ActionViolation> {
        verify_family(&self.source, &self.target, &self.maps)
    }
}

pub fn verify_rack_action(action: &RackAction) -> Result<(), ActionViolation> {
    action.verify()
}

pub(crate) fn verify_family(
    source: &QuandleTable,
    target: &QuandleTable,
    maps: &[Permutation],
) -> Result<(), ActionViolation> {
    let m = target.order();
    for (idx, phi) in maps.iter().enumerate() {
        if let Some((a, b)) = automorphism_failure(target, phi) {
            return Err(ActionViolation::NotAutomorphism { r: idx + 1, a, b });
        }
    }
    let k = source.order();
    for r in 1..=k {
        for r_prime in 1..=k {
            let (phi_r, phi_rp) = (&maps[r - 1], &maps[r_prime - 1]);
            let phi_prod = &maps[source.at(r_prime, r) - 1];
            for s in 1..=m {
                if phi_r.apply(phi_rp.apply(s)) != phi_prod.apply(phi_r.apply(s)) {
                    return Err(ActionViolation::RackLaw { r, r_prime, s });
                }
            }
        }
    }
    Ok(())
}

fn automorphism_failure(q: &QuandleTable, p: &Permutation) -> Option<(usize, usize)> {
    let n = q.order();
    for a in 1..=n {
        for b in 1..=n {
            if p.apply(q.at(a, b)) != q.at(p.apply(a), p.apply(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether `p` preserves the operation of `q`.
pub fn is_automorphism(q: &QuandleTable, p: &Permutation) -> Result<bool> {
    if p.len() != q.order() {
        return Err(QuandleError::SizeMismatch { left: p.len(), right: q.order() });
    }
    Ok(automorphism_failure(q, p).is_none())
}

/// All automorphisms, sorted lexicographically by image vector.
pub fn automorphisms(q: &QuandleTable) -> Result<Vec<Automorphism>> {
    automorphisms_with_limit(q, MAX_AUTOMORPHISM_ORDER)
}

pub fn automorphisms_with_limit(q: &QuandleTable, max_order: usize) -> Result<Vec<Automorphism>> {
    check_bound("order for automorphism search", q.order(), max_order)?;
    let mut out = Vec::new();
    for_each_isomorphism(q, q, |images| {
        out.push(Permutation::from_images_unchecked(images.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Every rack action of `source` on `target`, in lexicographic order of `(φ_1, φ_2, ...)`.
pub fn enumerate_rack_actions(source: &QuandleTable, target: &QuandleTable) -> Result<Vec<RackAction>> {
    let auts = automorphisms(target)?;
    Ok(rack_action_families(source, &auts)?
        .into_iter()
        .map(|maps| RackAction { source: source.clone(), target: target.clone(), maps })
        .collect())
}

/// Rack-action families drawn from `auts` (the automorphism group of the target, lex sorted).
pub(crate) fn rack_action_families(
    source: &QuandleTable,
    auts: &[Permutation],
) -> Result<Vec<Vec<Permutation>>> {
    let k = source.order();
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    // Branch on φ_1 in parallel; each branch is an independent depth-first search.
    let branches: Vec<Result<Vec<Vec<usize>>>> = (0..auts.len())
        .into_par_iter()
        .map(|first| {
            let mut finder = FamilyFinder { source, auts, nodes: 0, found: Vec::new() };
            let mut chosen = vec![first];
            if finder.consistent(&chosen) {
                finder.extend(&mut chosen)?;
            }
            Ok(finder.found)
        })
        .collect();
    let mut out = Vec::new();
    for branch in branches {
        for family in branch? {
            out.push(family.into_iter().map(|i| auts[i].clone()).collect());
        }
    }
    Ok(out)
}

struct FamilyFinder<'a> {
    source: &'a QuandleTable,
    auts: &'a [Permutation],
    nodes: u64,
    found: Vec<Vec<usize>>,
}

impl FamilyFinder<'_> {
    /// Checks every law instance among assigned elements that involves the newest one.
    fn consistent(&self, chosen: &[usize]) -> bool {
        let r_new = chosen.len();
        for r in 1..=r_new {
            for r_prime in 1..=r_new {
                let z = self.source.at(r_prime, r);
                if z > r_new || (r != r_new && r_prime != r_new && z != r_new) {
                    continue;
                }
                let phi_r = &self.auts[chosen[r - 1]];
                let phi_rp = &self.auts[chosen[r_prime - 1]];
                let phi_z = &self.auts[chosen[z - 1]];
                if (1..=phi_r.len()).any(|s| phi_r.apply(phi_rp.apply(s)) != phi_z.apply(phi_r.apply(s))) {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > RACK_SEARCH_NODE_LIMIT {
            return Err(QuandleError::BoundExceeded {
                what: "rack-action search nodes",
                limit: RACK_SEARCH_NODE_LIMIT,
                actual: self.nodes,
            });
        }
        if chosen.len() == self.source.order() {
            self.found.push(chosen.clone());
            return Ok(());
        }
        for candidate in 0..self.auts.len() {
            chosen.push(candidate);
            if self.consistent(chosen) {
                self.extend(chosen)?;
            }
            chosen.pop();
        }
        Ok(())
    }
}
