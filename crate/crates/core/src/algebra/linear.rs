//! Dense linear algebra over `Q`.

use alloc::vec::Vec;

use num_traits::Zero;

use super::{Monomial, Rational};

/// Rank of a dense matrix given by rows of equal length.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rk = 0;
    for c in 0..ncols {
        let Some(p) = (rk..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rk, p);
        let pivot = rows[rk][c].clone();
        for i in rk + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..ncols {
                let d = &f * &rows[rk][j];
                rows[i][j] -= d;
            }
        }
        rk += 1;
    }
    rk
}

/// Monomials of total degree `d` in `n` variables, exponents of `x_1` descending.
pub fn monomials_of_degree(n: usize, d: i64) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: i64, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left as u16);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 && n > 0 {
        rec(0, n, d, &mut Vec::new(), &mut out);
    }
    out
}
