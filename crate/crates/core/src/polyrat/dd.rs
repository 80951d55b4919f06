//! Double description over the integers.
//!
//! Computes generators of the polyhedral cone `{x : a·x <= 0 for every row a}`
//! as a minimal set of extreme rays plus a basis of the lineality space.
//! Vectors are kept primitive after every step so entries stay small.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::reduce_ints;

pub(crate) struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(nrows: usize) -> Self {
        Bits(vec![0; nrows.div_ceil(64).max(1)])
    }

    fn prefix(nrows: usize, k: usize) -> Self {
        let mut b = Self::new(nrows);
        for i in 0..k {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn combine(s: &BigInt, x: &[BigInt], t: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| s * a + t * b).collect();
    reduce_ints(&mut v);
    v
}

pub(crate) fn cone_generators(rows: &[Vec<BigInt>], n: usize) -> ConeGenerators {
    let nrows = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        let s: Vec<BigInt> = lineality.iter().map(|l| idot(a, l)).collect();
        if let Some(j) = s.iter().position(|x| !x.is_zero()) {
            let l0 = lineality[j].clone();
            let s0 = s[j].clone();
            let neg_s0 = -&s0;
            lineality = lineality
                .iter()
                .zip(&s)
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, (l, sl))| combine(&s0, l, &-sl, &l0))
                .collect();
            let abs_s0 = s0.abs();
            let sign = if s0.is_positive() { BigInt::from(1) } else { BigInt::from(-1) };
            for r in rays.iter_mut() {
                let t = idot(a, &r.v);
                if !t.is_zero() {
                    r.v = combine(&abs_s0, &r.v, &(-&sign * t), &l0);
                }
                r.zeros.set(k);
            }
            let mut v = l0;
            if neg_s0.is_negative() {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
            reduce_ints(&mut v);
            rays.push(Ray {
                v,
                zeros: Bits::prefix(nrows, k),
            });
            continue;
        }

        let t: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| t[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, ti) in rays.iter_mut().zip(&t) {
                if ti.is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| t[i].is_negative()).collect();
        let needed = n.saturating_sub(lineality.len() + 2);
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let inter = rays[p].zeros.and(&rays[q].zeros);
                if inter.count() < needed {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && inter.is_subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let v = combine(&t[p], &rays[q].v, &-&t[q], &rays[p].v);
                let mut zeros = inter;
                zeros.set(k);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, ti) in rays.into_iter().zip(t) {
            if ti.is_zero() {
                r.zeros.set(k);
                kept.push(r);
            } else if ti.is_negative() {
                kept.push(r);
            }
        }
        kept.extend(fresh);
        rays = kept;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(rs: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rs.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn orthant_has_unit_rays() {
        let g = cone_generators(&rows(&[&[-1, 0], &[0, -1]]), 2);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, rows(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn halfspace_keeps_a_line() {
        let g = cone_generators(&rows(&[&[1, 1, 0]]), 3);
        assert_eq!(g.lineality.len(), 2);
        assert_eq!(g.rays.len(), 1);
        assert!(idot(&[BigInt::from(1), BigInt::from(1), BigInt::from(0)], &g.rays[0]).is_negative());
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // x3 >= |x1|, x3 >= |x2|
        let g = cone_generators(
            &rows(&[&[1, 0, -1], &[-1, 0, -1], &[0, 1, -1], &[0, -1, -1]]),
            3,
        );
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
    }

    #[test]
    fn contradictory_rows_leave_origin() {
        let g = cone_generators(&rows(&[&[1], &[-1]]), 1);
        assert!(g.rays.is_empty() && g.lineality.is_empty());
    }
}
