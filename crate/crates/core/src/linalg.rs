//! Gaussian elimination over a finite field.
//!
//! Pivoting takes the first nonzero entry of each column, so results are
//! deterministic.

use crate::gf::Field;

/// Rank of the matrix whose rows are given; the rows are destroyed.
pub fn rank<F: Field>(rows: &mut [Vec<F::Elem>], k: &F) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !k.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = k.inv(&rows[rank][col]).expect("pivot is nonzero");
        for r in rank + 1..rows.len() {
            if k.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = k.mul(&rows[r][col], &inv);
            let (top, bottom) = rows.split_at_mut(r);
            let pivot_row = &top[rank];
            for (x, y) in bottom[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = k.sub(x, &k.mul(&factor, y));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over `F_2` of rows packed as bit masks (bit `j` is column `j`).
pub fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank];
        for row in rows[rank + 1..].iter_mut() {
            if *row & mask != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of `{ v : A v = 0 }` for the matrix `A` with the given rows and
/// `ncols` columns.
pub fn nullspace<F: Field>(mut rows: Vec<Vec<F::Elem>>, ncols: usize, k: &F) -> Vec<Vec<F::Elem>> {
    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = k.inv(&rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i == r || k.is_zero(&rows[i][col]) {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = k.sub(x, &k.mul(&factor, y));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![k.zero(); ncols];
            v[fc] = k.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&rows[row][fc]);
            }
            v
        })
        .collect()
}
