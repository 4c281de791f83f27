//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's search code: they enumerate
//! naively and check the axioms with their own loops.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use quandle::QuandleTable;

pub fn table(rows: &[&[i64]]) -> QuandleTable {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    QuandleTable::validate(&rows).expect("fixture is a quandle")
}

pub fn q3() -> QuandleTable {
    table(&[&[1, 3, 2], &[3, 2, 1], &[2, 1, 3]])
}

pub fn t3_t1() -> QuandleTable {
    table(&[&[1, 1, 1, 2], &[2, 2, 2, 3], &[3, 3, 3, 1], &[4, 4, 4, 4]])
}

pub fn depth2() -> QuandleTable {
    table(&[&[1, 1, 2, 2], &[2, 2, 1, 1], &[4, 4, 3, 3], &[3, 3, 4, 4]])
}

pub fn q3_x_q3_rows() -> Vec<Vec<i64>> {
    vec![
        vec![1, 3, 2, 7, 9, 8, 4, 6, 5],
        vec![3, 2, 1, 9, 8, 7, 6, 5, 4],
        vec![2, 1, 3, 8, 7, 9, 5, 4, 6],
        vec![7, 9, 8, 4, 6, 5, 1, 3, 2],
        vec![9, 8, 7, 6, 5, 4, 3, 2, 1],
        vec![8, 7, 9, 5, 4, 6, 2, 1, 3],
        vec![4, 6, 5, 1, 3, 2, 7, 9, 8],
        vec![6, 5, 4, 3, 2, 1, 9, 8, 7],
        vec![5, 4, 6, 2, 1, 3, 8, 7, 9],
    ]
}

pub fn q3_x_q3() -> QuandleTable {
    QuandleTable::validate(&q3_x_q3_rows()).unwrap()
}

pub fn six_element() -> QuandleTable {
    table(&[
        &[1, 1, 2, 2, 1, 1],
        &[2, 2, 5, 5, 2, 2],
        &[3, 3, 3, 3, 3, 3],
        &[4, 4, 4, 4, 4, 4],
        &[5, 5, 1, 1, 5, 5],
        &[6, 6, 6, 6, 6, 6],
    ])
}

pub fn fixtures() -> Vec<(&'static str, QuandleTable)> {
    vec![
        ("Q3", q3()),
        ("T3+T1", t3_t1()),
        ("depth-2", depth2()),
        ("Q3xQ3", q3_x_q3()),
        ("six-element", six_element()),
    ]
}

/// Reflection quandle of `Z_3^2 ⋊ Z_2`: reflections `(v, 1)` under conjugation,
/// built from the group multiplication rather than a closed formula.
pub fn generalized_dihedral_3x3() -> QuandleTable {
    // group element (u, v, s) with s = 1 a reflection; (a, s)(b, t) = (a + (-1)^s b, s + t)
    let elems: Vec<(i64, i64, i64)> = (0..2)
        .flat_map(|s| (0..3).flat_map(move |u| (0..3).map(move |v| (u, v, s))))
        .collect();
    let mul = |x: (i64, i64, i64), y: (i64, i64, i64)| {
        let sign = if x.2 == 1 { -1 } else { 1 };
        ((x.0 + sign * y.0).rem_euclid(3), (x.1 + sign * y.1).rem_euclid(3), (x.2 + y.2) % 2)
    };
    let index = |x: (i64, i64, i64)| elems.iter().position(|&e| e == x).unwrap() as i64 + 1;
    let cayley: Vec<Vec<i64>> = elems.iter().map(|&x| elems.iter().map(|&y| index(mul(x, y))).collect()).collect();
    let conj = quandle::generators::conjugation(&cayley).unwrap();
    let reflections: Vec<usize> = (10..=18).collect();
    conj.restrict(&reflections).unwrap()
}

/// Axioms checked with plain loops over a 0-based row-major table.
pub fn naive_is_quandle(n: usize, t: &[usize]) -> bool {
    let at = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        if at(a, a) != a {
            return false;
        }
    }
    for b in 0..n {
        let mut seen = vec![false; n];
        for a in 0..n {
            if std::mem::replace(&mut seen[at(a, b)], true) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(at(a, b), c) != at(at(a, c), at(b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

fn to_quandle(n: usize, zero_based: &[usize]) -> QuandleTable {
    QuandleTable::from_data(n, zero_based.iter().map(|v| v + 1).collect()).unwrap()
}

/// Least row-major relabeling over all `n!` permutations.
pub fn naive_lexmin(q: &QuandleTable) -> Vec<usize> {
    let n = q.order();
    let mut best: Option<Vec<usize>> = None;
    for p in (0..n).permutations(n) {
        let mut inv = vec![0; n];
        for (x, &px) in p.iter().enumerate() {
            inv[px] = x;
        }
        let relabeled: Vec<usize> = (0..n * n)
            .map(|idx| {
                let (a, b) = (inv[idx / n], inv[idx % n]);
                p[q.at(a + 1, b + 1) - 1] + 1
            })
            .collect();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    best.unwrap_or_default()
}

/// Every quandle of order `n` up to isomorphism: each column any permutation
/// fixing its diagonal entry, then the axioms, then naive lexmin.
pub fn brute_census(n: usize) -> BTreeSet<Vec<usize>> {
    let columns: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|j| (0..n).permutations(n).filter(|p| p[j] == j).collect())
        .collect();
    let mut classes = BTreeSet::new();
    for choice in columns.iter().map(|c| c.iter()).multi_cartesian_product() {
        let mut t = vec![0; n * n];
        for (b, col) in choice.iter().enumerate() {
            for a in 0..n {
                t[a * n + b] = col[a];
            }
        }
        if naive_is_quandle(n, &t) {
            classes.insert(naive_lexmin(&to_quandle(n, &t)));
        }
    }
    if n == 0 {
        classes.insert(Vec::new());
    }
    classes
}

/// Every quandle on `Q ⊔ Q2` (Q first) in which both blocks are subquandles with
/// closed complements: each off-diagonal column is any permutation of its block.
pub fn brute_glue2(q: &QuandleTable, q2: &QuandleTable) -> BTreeSet<Vec<usize>> {
    let (n, m) = (q.order(), q2.order());
    let size = n + m;
    let perms_q: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let perms_q2: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    let mut slots: Vec<&Vec<Vec<usize>>> = vec![&perms_q; m];
    slots.extend(std::iter::repeat_n(&perms_q2, n));
    let mut out = BTreeSet::new();
    for choice in slots.iter().map(|s| s.iter()).multi_cartesian_product() {
        let mut t = vec![0; size * size];
        for a in 0..n {
            for b in 0..n {
                t[a * size + b] = q.at(a + 1, b + 1) - 1;
            }
            for y in 0..m {
                t[a * size + n + y] = choice[y][a];
            }
        }
        for x in 0..m {
            for b in 0..n {
                t[(n + x) * size + b] = n + choice[m + b][x];
            }
            for y in 0..m {
                t[(n + x) * size + n + y] = n + q2.at(x + 1, y + 1) - 1;
            }
        }
        if naive_is_quandle(size, &t) {
            out.insert(t.iter().map(|v| v + 1).collect());
        }
    }
    out
}

/// Closure of `{a}` under every `f_b` and every `f_b^{-1}`.
pub fn two_sided_orbit(q: &QuandleTable, a: usize) -> Vec<usize> {
    let n = q.order();
    let mut seen = BTreeSet::from([a]);
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for b in 1..=n {
            let forward = q.at(x, b);
            let backward = (1..=n).find(|&y| q.at(y, b) == x).unwrap();
            for y in [forward, backward] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Intersection of all complemented subquandles containing `a`, by subset scan.
pub fn naive_minimal_complemented(q: &QuandleTable, a: usize) -> Vec<usize> {
    let n = q.order();
    let closed = |set: &[bool]| {
        (1..=n).all(|x| (1..=n).all(|y| !set[x] || !set[y] || set[q.at(x, y)]))
    };
    let mut meet: Vec<bool> = vec![true; n + 1];
    for mask in 1u32..(1 << n) {
        let mut inside = vec![false; n + 1];
        let mut outside = vec![false; n + 1];
        for x in 1..=n {
            inside[x] = mask & (1 << (x - 1)) != 0;
            outside[x] = !inside[x];
        }
        if inside[a] && closed(&inside) && closed(&outside) {
            for x in 1..=n {
                meet[x] &= inside[x];
            }
        }
    }
    (1..=n).filter(|&x| meet[x]).collect()
}

pub fn census_upto(n: usize) -> Vec<QuandleTable> {
    (1..=n).flat_map(|k| quandle::census(k).unwrap()).collect()
}
