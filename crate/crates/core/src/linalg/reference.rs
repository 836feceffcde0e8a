//! Dense Gauss-Jordan over Q(i). Slow and obviously correct; used to
//! cross-check the sparse kernel and for small dense problems such as
//! determinants of metric matrices.

use num_traits::Zero;

use super::GaussianRational;

/// Rank of a dense matrix given as rows.
pub fn dense_rank(rows: &[Vec<GaussianRational>]) -> usize {
    let mut a: Vec<Vec<GaussianRational>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].inv().expect("nonzero pivot");
        let pivot: Vec<GaussianRational> = a[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        a[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Determinant of a square dense matrix.
pub fn determinant(rows: &[Vec<GaussianRational>]) -> GaussianRational {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = GaussianRational::from_int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pv = a[c][c].clone();
        det *= &pv;
        let inv = pv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let pivot_row = a[c].clone();
            for (x, y) in a[i][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &(&f * y);
            }
        }
    }
    det
}
