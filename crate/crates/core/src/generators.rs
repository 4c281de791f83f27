//! Standard quandle families.
//!
//! Element `k` of a residue-based quandle stands for the residue `k - 1`, so
//! `alexander(3, -1)` reproduces the usual `Q_3` matrix with `x_1 = 0`.

use num_integer::Integer;

use crate::error::{QuandleError, Result};
use crate::table::QuandleTable;

/// The trivial quandle `T_n` with `i ▷ j = i`.
pub fn trivial(n: usize) -> Result<QuandleTable> {
    if n == 0 {
        return Err(QuandleError::EmptyOrder);
    }
    let data = (1..=n).flat_map(|i| std::iter::repeat_n(i, n)).collect();
    Ok(QuandleTable::from_data_unchecked(n, data))
}

/// The Alexander quandle on `Z_n` with `x ▷ y = t·x + (1 - t)·y`.
pub fn alexander(n: usize, t: i64) -> Result<QuandleTable> {
    if n == 0 {
        return Err(QuandleError::EmptyOrder);
    }
    let m = n as i64;
    if t.rem_euclid(m).gcd(&m) != 1 {
        return Err(QuandleError::NotCoprime { n, t });
    }
    let mut data = Vec::with_capacity(n * n);
    for a in 0..m {
        for b in 0..m {
            let v = (t * a + (1 - t) * b).rem_euclid(m);
            data.push(v as usize + 1);
        }
    }
    Ok(QuandleTable::from_data_unchecked(n, data))
}

/// The dihedral quandle `R_n`: `i ▷ j = 2j - i` on residues, i.e. `alexander(n, -1)`.
pub fn dihedral(n: usize) -> Result<QuandleTable> {
    alexander(n, -1)
}

/// The conjugation quandle `x ▷ y = y⁻¹ x y` of a group given by its Cayley table.
///
/// The table uses the same 1-based convention: entry `(i, j) = k` means `g_i g_j = g_k`.
pub fn conjugation(cayley: &[Vec<i64>]) -> Result<QuandleTable> {
    let n = cayley.len();
    if n == 0 {
        return Err(QuandleError::EmptyOrder);
    }
    let mut mul = vec![0usize; n * n];
    for (r, row) in cayley.iter().enumerate() {
        if row.len() != n {
            return Err(QuandleError::NotSquare { row: r + 1, len: row.len(), expected: n });
        }
        for (c, &v) in row.iter().enumerate() {
            if v < 1 || v > n as i64 {
                return Err(QuandleError::EntryOutOfRange { row: r + 1, col: c + 1, value: v, n });
            }
            mul[r * n + c] = v as usize - 1;
        }
    }
    let m = |a: usize, b: usize| mul[a * n + b];

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(QuandleError::NotAGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        a + 1,
                        b + 1,
                        c + 1
                    )));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
        .ok_or_else(|| QuandleError::NotAGroup("no identity element".into()))?;
    let inv = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| m(x, y) == e && m(y, x) == e)
                .ok_or_else(|| QuandleError::NotAGroup(format!("element {} has no inverse", x + 1)))
        })
        .collect::<Result<Vec<usize>>>()?;

    let mut data = Vec::with_capacity(n * n);
    for x in 0..n {
        for (y, &y_inv) in inv.iter().enumerate() {
            data.push(m(m(y_inv, x), y) + 1);
        }
    }
    Ok(QuandleTable::from_data_unchecked(n, data))
}

/// The Cartesian product with `(x, y)` identified with `(x - 1)·m + y`, where `m = |right|`.
pub fn product(left: &QuandleTable, right: &QuandleTable) -> QuandleTable {
    let (n, m) = (left.order(), right.order());
    let size = n * m;
    let mut data = vec![0; size * size];
    for a in 1..=n {
        for x in 1..=m {
            let row = (a - 1) * m + x;
            for b in 1..=n {
                let block = (left.at(a, b) - 1) * m;
                for y in 1..=m {
                    let col = (b - 1) * m + y;
                    data[(row - 1) * size + (col - 1)] = block + right.at(x, y);
                }
            }
        }
    }
    QuandleTable::from_data_unchecked(size, data)
}
