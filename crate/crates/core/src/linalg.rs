//! Dense Gaussian elimination over `F_p`.
//!
//! Pivots are taken column by column, first nonzero row wins, so results
//! depend only on the column order chosen by the caller.

use crate::field;

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<u32>>, ncols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field::inv(rows[r][col], p);
        for v in rows[r].iter_mut() {
            *v = field::mul(*v, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if pv != 0 {
                    *v = field::sub(*v, field::mul(factor, pv, p), p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}`, returned in reduced row echelon form.
pub fn nullspace(a: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis: Vec<Vec<u32>> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = field::neg(row[free], p);
            }
            v
        })
        .collect();
    rref(&mut basis, ncols, p);
    basis
}

pub fn mat_vec(a: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| field::add(acc, field::mul(x, y, p), p))
        })
        .collect()
}
