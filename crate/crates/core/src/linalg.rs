//! Gaussian elimination over a finite field.

use crate::field::{Elem, Field};

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in
/// place and returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if pv != 0 {
                    *x = field.sub(*x, field.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{v : M v = 0}`.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `M v = rhs`, if one exists.
pub fn solve(field: &Field, rows: &[Vec<Elem>], rhs: &[Elem], ncols: usize) -> Option<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.push(b);
            r
        })
        .collect();
    let pivots = rref(field, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut v = vec![0; ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        v[pc] = row[ncols];
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        let f = Field::new(3, 1).unwrap();
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let ker = nullspace(&f, &rows, 3);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let s = r.iter().zip(&ker[0]).fold(0, |a, (&x, &y)| f.add(a, f.mul(x, y)));
            assert_eq!(s, 0);
        }
        let v = solve(&f, &rows, &[1, 2], 3).unwrap();
        assert_eq!(f.add(v[0], v[1]), 1);
        assert_eq!(f.add(v[1], v[2]), 2);
        assert!(solve(&f, &[vec![1, 0], vec![1, 0]], &[1, 2], 2).is_none());
    }
}
