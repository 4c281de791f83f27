mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use quandle::actions::{verify_rack_action, RackAction};
use quandle::amalgam::glue2_by_completion;
use quandle::decomp::{connected_leaves, is_complemented};
use quandle::generators::{alexander, product};
use quandle::isomorph::canonical_form_with_witness;
use quandle::{
    are_isomorphic, canonical_form, census, glue2, orbit, orbit_decomposition, subquandle_depth, Permutation,
    QuandleTable,
};

use common::*;

#[test]
fn census_matches_brute_force_through_order_five() {
    for n in 1..=5 {
        let fast: BTreeSet<Vec<usize>> = census(n).unwrap().iter().map(|q| q.as_slice().to_vec()).collect();
        assert_eq!(fast, brute_census(n), "order {n}");
    }
}

#[test]
fn canonical_form_is_the_naive_lexmin() {
    for q in census_upto(4).iter().chain(fixtures().iter().map(|(_, q)| q).filter(|q| q.order() <= 7)) {
        assert_eq!(canonical_form(q).unwrap().as_slice(), naive_lexmin(q).as_slice());
    }
}

#[test]
fn glue2_matches_brute_force_on_small_blocks() {
    let blocks = census_upto(3);
    for q in &blocks {
        for q2 in &blocks {
            let fast: BTreeSet<Vec<usize>> = glue2(q, q2).unwrap().iter().map(|t| t.as_slice().to_vec()).collect();
            assert_eq!(fast, brute_glue2(q, q2));
            let completion: BTreeSet<Vec<usize>> =
                glue2_by_completion(q, q2).unwrap().iter().map(|t| t.as_slice().to_vec()).collect();
            assert_eq!(fast, completion);
        }
    }
}

#[test]
fn orbits_match_the_complemented_intersection_oracle() {
    for q in census_upto(4).iter().chain(fixtures().iter().map(|(_, q)| q)) {
        for a in 1..=q.order() {
            assert_eq!(orbit(q, a).unwrap(), naive_minimal_complemented(q, a));
        }
    }
}

#[test]
fn reflections_of_generalized_dihedral_group() {
    let r = generalized_dihedral_3x3();
    assert!(are_isomorphic(&q3_x_q3(), &r).is_some());
    assert!(are_isomorphic(&quandle::generators::dihedral(9).unwrap(), &r).is_none());
}

fn small_quandle() -> impl Strategy<Value = QuandleTable> {
    let pool: Vec<QuandleTable> = census_upto(4)
        .into_iter()
        .chain(fixtures().into_iter().map(|(_, q)| q))
        .chain([alexander(5, 2).unwrap(), alexander(7, 3).unwrap(), product(&q3(), &t3_t1())])
        .collect();
    (prop::sample::select(pool), any::<u64>()).prop_map(|(q, seed)| relabel_by_seed(&q, seed))
}

fn relabel_by_seed(q: &QuandleTable, seed: u64) -> QuandleTable {
    q.relabel(&permutation_from_seed(q.order(), seed)).unwrap()
}

fn permutation_from_seed(n: usize, mut seed: u64) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = (seed % (i as u64 + 1)) as usize;
        seed = seed.rotate_left(7) ^ 0x9e37_79b9_7f4a_7c15;
        images.swap(i, j);
    }
    Permutation::new(images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution_and_a_quandle(q in small_quandle()) {
        let d = q.dual();
        prop_assert!(QuandleTable::from_data(d.order(), d.as_slice().to_vec()).is_ok());
        prop_assert_eq!(d.dual(), q);
    }

    #[test]
    fn self_action_is_a_rack_action(q in small_quandle()) {
        prop_assert!(verify_rack_action(&RackAction::self_action(&q)).is_ok());
    }

    #[test]
    fn orbits_are_two_sided_closures(q in small_quandle()) {
        for a in 1..=q.order() {
            prop_assert_eq!(orbit(&q, a).unwrap(), two_sided_orbit(&q, a));
        }
    }

    #[test]
    fn orbit_parts_are_complemented(q in small_quandle()) {
        let parts = orbit_decomposition(&q);
        let mut covered = BTreeSet::new();
        for part in parts.parts() {
            prop_assert!(is_complemented(&q, part).unwrap());
            covered.extend(part.iter().copied());
        }
        prop_assert_eq!(covered.len(), q.order());
    }

    #[test]
    fn invariants_survive_relabeling(q in small_quandle(), seed in any::<u64>()) {
        let r = relabel_by_seed(&q, seed);
        let (form, witness) = canonical_form_with_witness(&r, 12).unwrap();
        prop_assert_eq!(&r.relabel(&witness).unwrap(), &form);
        prop_assert_eq!(form, canonical_form_with_witness(&q, 12).unwrap().0);
        prop_assert_eq!(subquandle_depth(&r), subquandle_depth(&q));
        let mut sizes_q: Vec<usize> = connected_leaves(&q).iter().map(Vec::len).collect();
        let mut sizes_r: Vec<usize> = connected_leaves(&r).iter().map(Vec::len).collect();
        sizes_q.sort();
        sizes_r.sort();
        prop_assert_eq!(sizes_q, sizes_r);
        let rho = are_isomorphic(&q, &r).expect("relabeling is an isomorphism");
        for a in 1..=q.order() {
            for b in 1..=q.order() {
                prop_assert_eq!(rho.apply(q.at(a, b)), r.at(rho.apply(a), rho.apply(b)));
            }
        }
    }

    #[test]
    fn glued_tables_restrict_to_their_blocks(i in 0usize..12, j in 0usize..12) {
        let pool = census_upto(3);
        let (q, q2) = (&pool[i % pool.len()], &pool[j % pool.len()]);
        let n = q.order();
        for t in glue2(q, q2).unwrap() {
            prop_assert_eq!(&t.restrict(&(1..=n).collect::<Vec<_>>()).unwrap(), q);
            prop_assert_eq!(&t.restrict(&(n + 1..=t.order()).collect::<Vec<_>>()).unwrap(), q2);
            prop_assert!(is_complemented(&t, &(1..=n).collect::<Vec<_>>()).unwrap());
        }
    }
}
