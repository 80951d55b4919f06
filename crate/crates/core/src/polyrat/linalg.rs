//! Dense exact linear algebra on small rational matrices.

use num_traits::{One, Zero};

use super::rational::{dot, Rational};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    // forward elimination only; cheaper than a full rref
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Orthogonal basis of the span of `vectors` (Gram-Schmidt, exact).
pub fn orthogonal_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let w = project_out(v, &out);
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

/// Removes from `v` its components along the pairwise orthogonal `basis`.
pub fn project_out(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let mut w = v.to_vec();
    for u in basis {
        let uu = dot(u, u);
        let c = dot(&w, u) / uu;
        if !c.is_zero() {
            for (x, y) in w.iter_mut().zip(u) {
                *x -= &c * y;
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let n = nullspace(&a, 3);
        assert_eq!(n.len(), 1);
        for row in &a {
            assert!(dot(row, &n[0]).is_zero());
        }
    }

    #[test]
    fn projection_is_orthogonal() {
        let b = orthogonal_basis(&m(&[&[1, 1, 0], &[1, 0, 1]]));
        let w = project_out(&m(&[&[3, -1, 2]])[0], &b);
        for u in &b {
            assert!(dot(u, &w).is_zero());
        }
    }
}
