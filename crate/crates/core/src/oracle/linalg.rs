//! Dense exact linear algebra on row vectors.

use crate::algebra::Field;

pub(crate) type Row<K> = Vec<<K as Field>::Elem>;

/// Reduced row echelon form in place; zero rows are dropped. Returns the
/// pivot column of each remaining row.
pub(crate) fn rref<K: Field>(f: &K, rows: &mut Vec<Row<K>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let s = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&s, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank<K: Field>(f: &K, mut rows: Vec<Row<K>>) -> usize {
    rref(f, &mut rows).len()
}

/// Kernel of the matrix with the given rows, as vectors of length `ncols`.
/// The vector attached to a free column is 1 there and 0 at every other
/// free column.
pub(crate) fn kernel<K: Field>(f: &K, mut rows: Vec<Row<K>>, ncols: usize) -> (Vec<usize>, Vec<Row<K>>) {
    let pivots = rref(f, &mut rows);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut free = Vec::new();
    let mut vecs = Vec::new();
    for c in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[c] = f.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !f.is_zero(&row[c]) {
                v[p] = f.neg(&row[c]);
            }
        }
        free.push(c);
        vecs.push(v);
    }
    (free, vecs)
}
