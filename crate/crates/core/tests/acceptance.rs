//! One test per acceptance criterion. Run with `--nocapture` to see the
//! PASS/FAIL lines.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use quandle::actions::{verify_rack_action, RackAction};
use quandle::amalgam::{extract_structure_maps, structure_maps_isomorphic};
use quandle::decomp::{connected_leaves, is_complemented, is_connected};
use quandle::generators::{dihedral, product, trivial};
use quandle::{
    are_isomorphic, canonical_form, census, enumerate_nonconnected, glue2, glue_n, orbit_decomposition,
    subquandle_depth, OrbitDecomposition, Permutation, QuandleTable,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::*;

fn report(id: u32, name: &str, ok: bool, elapsed: Duration, limit: Option<Duration>) {
    let within = limit.is_none_or(|l| elapsed <= l);
    let limit_text = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
    println!(
        "criterion {id:>2} {name}: {} ({elapsed:.2?}{limit_text})",
        if ok && within { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} ({name}) failed");
    assert!(within, "criterion {id} ({name}) exceeded its time limit: {elapsed:?}");
}

fn parts(q: &QuandleTable) -> Vec<Vec<usize>> {
    orbit_decomposition(q).parts().to_vec()
}

#[test]
fn criterion_01_fixture_validation() {
    let start = Instant::now();
    let ok = fixtures().iter().all(|(_, q)| {
        let rows: Vec<Vec<i64>> = q.rows().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        quandle::validate(&rows).is_ok()
    });
    report(1, "fixture validation", ok, start.elapsed(), Some(Duration::from_secs(1)));
}

#[test]
fn criterion_02_orbit_decomposition() {
    let start = Instant::now();
    let ok = parts(&depth2()) == vec![vec![1, 2], vec![3, 4]]
        && subquandle_depth(&depth2()) == 2
        && parts(&six_element()) == vec![vec![1, 2, 5], vec![3], vec![4], vec![6]]
        && subquandle_depth(&six_element()) == 2;
    report(2, "orbit decomposition", ok, start.elapsed(), None);
}

/// Largest order of a composite `f_a ∘ f_b` of two columns; an isomorphism invariant.
fn max_inner_order(q: &QuandleTable) -> usize {
    let cols = q.columns();
    let mut best = 1;
    for f in &cols {
        for g in &cols {
            let h = f.compose(g);
            let mut power = h.clone();
            let mut k = 1;
            while !power.is_identity() {
                power = power.compose(&h);
                k += 1;
            }
            best = best.max(k);
        }
    }
    best
}

#[test]
fn criterion_03_product_and_isomorphism() {
    // The product is the dihedral quandle of Z3 x Z3 (reflections of Z3^2 ⋊ Z2).
    // The cyclic dihedral quandle of Z9 has inner maps of order 9 and is not isomorphic.
    let start = Instant::now();
    let p = product(&q3(), &q3());
    let bit_exact = p.rows().iter().map(|r| r.iter().map(|&v| v as i64).collect::<Vec<_>>()).collect::<Vec<_>>()
        == q3_x_q3_rows();
    let reflections = generalized_dihedral_3x3();
    let witness_ok = are_isomorphic(&p, &reflections).is_some_and(|rho| {
        (1..=9).all(|a| (1..=9).all(|b| rho.apply(p.at(a, b)) == reflections.at(rho.apply(a), rho.apply(b))))
    });
    let r9 = dihedral(9).unwrap();
    let cyclic_distinct = are_isomorphic(&p, &r9).is_none() && max_inner_order(&p) == 3 && max_inner_order(&r9) == 9;
    println!("  Q3xQ3 vs cyclic dihedral(9): not isomorphic (inner map orders 3 vs 9)");
    report(
        3,
        "product and isomorphism",
        bit_exact && witness_ok && cyclic_distinct,
        start.elapsed(),
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_04_orbit_oracle_equivalence() {
    let start = Instant::now();
    let mut inputs = census(3).unwrap();
    inputs.extend(census(4).unwrap());
    inputs.extend(fixtures().into_iter().map(|(_, q)| q));
    let ok = inputs.iter().all(|q| {
        let oracle: BTreeSet<Vec<usize>> = (1..=q.order()).map(|a| naive_minimal_complemented(q, a)).collect();
        parts(q).into_iter().collect::<BTreeSet<_>>() == oracle
    });
    report(4, "orbit oracle equivalence", ok, start.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn criterion_05_gluing_soundness_and_completeness() {
    let start = Instant::now();
    let pool = census_upto(4);
    let mut pairs = 0;
    let mut ok = true;
    for q in &pool {
        for q2 in pool.iter().filter(|q2| q.order() + q2.order() <= 6) {
            let fast: BTreeSet<Vec<usize>> = glue2(q, q2).unwrap().iter().map(|t| t.as_slice().to_vec()).collect();
            ok &= fast == brute_glue2(q, q2);
            pairs += 1;
        }
    }
    println!("  {pairs} ordered block pairs compared");
    report(5, "gluing soundness and completeness", ok, start.elapsed(), Some(Duration::from_secs(600)));
}

#[test]
fn criterion_06_singleton_gluing_rigidity() {
    let start = Instant::now();
    let ok = (1..=5).all(|k| glue_n(&vec![trivial(1).unwrap(); k]).unwrap() == vec![trivial(k).unwrap()]);
    report(6, "singleton gluing rigidity", ok, start.elapsed(), None);
}

#[test]
fn criterion_07_recursive_enumeration() {
    let start = Instant::now();
    let blocks = vec![trivial(2).unwrap(); 3];
    let target = six_element();
    let recursive = enumerate_nonconnected(&blocks).unwrap();
    let depth_one = glue_n(&blocks).unwrap();
    let found = recursive.iter().any(|q| are_isomorphic(q, &target).is_some());
    let absent = depth_one.iter().all(|q| are_isomorphic(q, &target).is_none());
    println!(
        "  {} recursive structures, {} depth-one gluings",
        recursive.len(),
        depth_one.len()
    );
    report(7, "recursive enumeration", found && absent, start.elapsed(), None);
}

#[test]
fn criterion_08_census_counts() {
    let start = Instant::now();
    let counts: Vec<usize> = (1..=5).map(|n| census(n).unwrap().len()).collect();
    println!("  counts {counts:?}");
    report(8, "census counts", counts == [1, 1, 3, 7, 22], start.elapsed(), Some(Duration::from_secs(300)));
}

fn random_relabeling(n: usize, rng: &mut StdRng) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

#[test]
fn criterion_09_property_suites() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut fixtures: Vec<QuandleTable> = fixtures().into_iter().map(|(_, q)| q).collect();
    fixtures.extend(census_upto(4));

    let dual_ok = fixtures.iter().all(|q| {
        let d = q.dual();
        d.dual() == *q && QuandleTable::from_data(d.order(), d.as_slice().to_vec()).is_ok()
    });
    let self_action_ok = fixtures.iter().all(|q| verify_rack_action(&RackAction::self_action(q)).is_ok());
    let complemented_ok = fixtures
        .iter()
        .all(|q| parts(q).iter().all(|part| is_complemented(q, part).unwrap()));
    let relabel_ok = fixtures.iter().all(|q| {
        let form = canonical_form(q).unwrap();
        (0..20).all(|_| canonical_form(&q.relabel(&random_relabeling(q.order(), &mut rng)).unwrap()).unwrap() == form)
    });

    let glued = glue2(&trivial(3).unwrap(), &trivial(1).unwrap()).unwrap();
    let layout = |q: &QuandleTable| {
        let d = OrbitDecomposition::from_parts(q, vec![vec![1, 2, 3], vec![4]]).unwrap();
        extract_structure_maps(q, &d).unwrap()
    };
    let mut structure_ok = true;
    for a in &glued {
        for b in &glued {
            if structure_maps_isomorphic(&layout(a), &layout(b)).unwrap() {
                structure_ok &= are_isomorphic(a, b).is_some();
            }
        }
    }
    println!(
        "  dual {dual_ok}, self-action {self_action_ok}, complemented parts {complemented_ok}, relabeling {relabel_ok}, structure maps {structure_ok}"
    );
    report(
        9,
        "property suites",
        dual_ok && self_action_ok && complemented_ok && relabel_ok && structure_ok,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_10_nonconnected_completeness() {
    let start = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for q in census(4).unwrap().iter().filter(|q| !is_connected(q)) {
        let blocks: Vec<QuandleTable> = connected_leaves(q).iter().map(|leaf| q.restrict(leaf).unwrap()).collect();
        let outputs = enumerate_nonconnected(&blocks).unwrap();
        ok &= outputs.iter().any(|o| are_isomorphic(o, q).is_some());
        checked += 1;
    }
    println!("  {checked} non-connected quandles of order 4 recovered");
    report(10, "non-connected completeness", ok, start.elapsed(), Some(Duration::from_secs(300)));
}
