//! Exact two-phase simplex.
//!
//! Problems are stated as `max/min c·x  s.t.  A x <= b` with `x` free. The
//! kernel actually pivots on the dual, `min b·y  s.t.  Aᵀy = c, y >= 0`,
//! which keeps the tableau at `dim` rows no matter how many inequalities the
//! primal carries. Every outcome ships a certificate that can be checked
//! independently with [`LpOutcome::verify`].

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::polyhedron::{HRep, HalfSpace};
use super::rational::{dot, RatVector, Rational};
use crate::error::{check_dim, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`lp_solve`].
///
/// * `Optimal`: `point` attains `value`; `certificate` is `y >= 0` with
///   `Aᵀy = ±c` (sign of the sense) and `b·y = ±value`.
/// * `Infeasible`: `certificate` is a Farkas vector `y >= 0`, `Aᵀy = 0`,
///   `b·y < 0`.
/// * `Unbounded`: `point` is feasible and `certificate` is a ray `r` with
///   `A r <= 0` improving the objective.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpOutcome {
    pub status: LpStatus,
    #[serde(with = "super::json::opt_rational_str")]
    pub value: Option<Rational>,
    pub point: Option<RatVector>,
    pub certificate: RatVector,
}

pub fn lp_solve(objective: &RatVector, sense: Sense, feasible: &HRep) -> Result<LpOutcome> {
    check_dim(feasible.dim, objective.dim())?;
    Ok(solve_rows(objective, sense, &feasible.rows, feasible.dim))
}

pub(crate) fn solve_rows(
    objective: &[Rational],
    sense: Sense,
    rows: &[HalfSpace],
    dim: usize,
) -> LpOutcome {
    let c: Vec<Rational> = match sense {
        Sense::Max => objective.to_vec(),
        Sense::Min => objective.iter().map(|x| -x).collect(),
    };
    // dual in standard form: columns are the primal rows
    let m: Vec<Vec<Rational>> = (0..dim)
        .map(|k| rows.iter().map(|r| r.normal[k].clone()).collect())
        .collect();
    let g: Vec<Rational> = rows.iter().map(|r| r.rhs.clone()).collect();
    let flip = |v: Rational| match sense {
        Sense::Max => v,
        Sense::Min => -v,
    };
    match solve_standard(&m, &c, &g) {
        StdOutcome::Optimal { y, pi } => {
            let value = flip(dot(&c, &pi));
            LpOutcome {
                status: LpStatus::Optimal,
                value: Some(value),
                point: Some(RatVector(pi)),
                certificate: RatVector(y),
            }
        }
        StdOutcome::Unbounded { dir } => LpOutcome {
            status: LpStatus::Infeasible,
            value: None,
            point: None,
            certificate: RatVector(dir),
        },
        StdOutcome::Infeasible { w: ray } => {
            // the dual has no solution: either the primal is infeasible or
            // `ray` is an improving direction. Decide with a zero objective.
            let zero = vec![Rational::zero(); dim];
            match solve_standard(&m, &zero, &g) {
                StdOutcome::Optimal { pi, .. } => LpOutcome {
                    status: LpStatus::Unbounded,
                    value: None,
                    point: Some(RatVector(pi)),
                    certificate: RatVector(ray),
                },
                StdOutcome::Unbounded { dir } => LpOutcome {
                    status: LpStatus::Infeasible,
                    value: None,
                    point: None,
                    certificate: RatVector(dir),
                },
                StdOutcome::Infeasible { .. } => {
                    unreachable!("zero right-hand side is always feasible")
                }
            }
        }
    }
}

impl LpOutcome {
    /// Checks the certificate against the problem data, exactly.
    pub fn verify(&self, objective: &[Rational], sense: Sense, feasible: &HRep) -> bool {
        let rows = &feasible.rows;
        let c: Vec<Rational> = match sense {
            Sense::Max => objective.to_vec(),
            Sense::Min => objective.iter().map(|x| -x).collect(),
        };
        let feasible_point = |x: &RatVector| rows.iter().all(|r| r.normal.dot(x) <= r.rhs);
        let combo = |y: &RatVector| -> Option<Vec<Rational>> {
            if y.dim() != rows.len() || y.iter().any(Signed::is_negative) {
                return None;
            }
            let mut s = vec![Rational::zero(); feasible.dim];
            for (yi, r) in y.iter().zip(rows) {
                for (acc, a) in s.iter_mut().zip(r.normal.iter()) {
                    *acc += yi * a;
                }
            }
            Some(s)
        };
        let b_dot = |y: &RatVector| dot(y, &rows.iter().map(|r| r.rhs.clone()).collect::<Vec<_>>());
        match self.status {
            LpStatus::Optimal => {
                let (Some(x), Some(v)) = (&self.point, &self.value) else {
                    return false;
                };
                let signed_v = match sense {
                    Sense::Max => v.clone(),
                    Sense::Min => -v,
                };
                feasible_point(x)
                    && dot(objective, x) == *v
                    && combo(&self.certificate).is_some_and(|s| s == c)
                    && b_dot(&self.certificate) == signed_v
            }
            LpStatus::Infeasible => {
                combo(&self.certificate).is_some_and(|s| s.iter().all(Zero::is_zero))
                    && b_dot(&self.certificate).is_negative()
            }
            LpStatus::Unbounded => {
                let Some(x) = &self.point else { return false };
                let r = &self.certificate;
                feasible_point(x)
                    && rows.iter().all(|row| !row.normal.dot(r).is_positive())
                    && dot(&c, r).is_positive()
            }
        }
    }
}

pub(crate) enum StdOutcome {
    /// `y` optimal, `pi` simplex multipliers (`g - Mᵀpi >= 0`, `pi·h = g·y`).
    Optimal { y: Vec<Rational>, pi: Vec<Rational> },
    /// No `y >= 0` with `M y = h`; `w` has `Mᵀw <= 0` and `h·w > 0`.
    Infeasible { w: Vec<Rational> },
    /// Direction `d >= 0`, `M d = 0`, `g·d < 0`.
    Unbounded { dir: Vec<Rational> },
}

#[derive(Clone)]
struct Tableau {
    /// k rows of `[M | artificial | rhs]`
    t: Vec<Vec<Rational>>,
    /// reduced-cost row, last entry is minus the objective value
    z: Vec<Rational>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.t.first().map_or(self.n, |r| r.len() - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        self.pivot_plain(row, col);
        if !self.z[col].is_zero() {
            let f = self.z[col].clone();
            for (x, y) in self.z.iter_mut().zip(&self.t[row]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Pivot on the constraint rows only.
    fn pivot_plain(&mut self, row: usize, col: usize) {
        let inv = Rational::one() / &self.t[row][col];
        for x in self.t[row].iter_mut() {
            *x *= &inv;
        }
        let prow = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.basis[row] = col;
    }

    fn set_costs(&mut self, cost: &[Rational]) {
        let rhs = self.rhs();
        let mut z = cost.to_vec();
        z.push(Rational::zero());
        for (row, &b) in self.t.iter().zip(&self.basis) {
            let cb = &cost[b];
            if !cb.is_zero() {
                for (x, y) in z.iter_mut().zip(row) {
                    *x -= cb * y;
                }
            }
        }
        debug_assert_eq!(z.len(), rhs + 1);
        self.z = z;
    }

    /// Minimisation over the allowed columns. Dantzig's rule, falling back to
    /// Bland's rule after a run of degenerate pivots so the loop terminates.
    /// Returns the entering column if the objective is unbounded below.
    fn run(&mut self, allowed: usize) -> Option<usize> {
        const DEGENERATE_RUN: usize = 8;
        let rhs = self.rhs();
        let mut degenerate = 0;
        loop {
            let col = if degenerate < DEGENERATE_RUN {
                let mut best: Option<usize> = None;
                for j in 0..allowed {
                    if self.z[j].is_negative() && best.is_none_or(|b| self.z[j] < self.z[b]) {
                        best = Some(j);
                    }
                }
                best
            } else {
                (0..allowed).find(|&j| self.z[j].is_negative())
            };
            let col = col?;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((row, ratio)) => {
                    if ratio.is_zero() {
                        degenerate += 1;
                    } else {
                        degenerate = 0;
                    }
                    self.pivot(row, col)
                }
                None => return Some(col),
            }
        }
    }

    /// Multipliers with respect to the unflipped system.
    fn multipliers(&self, cost: &[Rational], sigma: &[bool]) -> Vec<Rational> {
        let k = self.t.len();
        (0..k)
            .map(|j| {
                let mut s = Rational::zero();
                for (row, &b) in self.t.iter().zip(&self.basis) {
                    if !cost[b].is_zero() {
                        s += &cost[b] * &row[self.n + j];
                    }
                }
                if sigma[j] {
                    -s
                } else {
                    s
                }
            })
            .collect()
    }
}

/// `min g·y  s.t.  M y = h, y >= 0` for a `k × n` matrix `M`.
pub(crate) fn solve_standard(m: &[Vec<Rational>], h: &[Rational], g: &[Rational]) -> StdOutcome {
    let k = m.len();
    let n = g.len();
    let sigma: Vec<bool> = h.iter().map(Signed::is_negative).collect();
    let t: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row = Vec::with_capacity(n + k + 1);
            for x in &m[i] {
                row.push(if sigma[i] { -x } else { x.clone() });
            }
            for j in 0..k {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            row.push(h[i].abs());
            row
        })
        .collect();
    let mut tab = Tableau {
        t,
        z: Vec::new(),
        basis: (n..n + k).collect(),
        n,
    };

    // start from the basis a floating-point solve ends at; the exact phases
    // below then only confirm it or repair the last few pivots
    if let Some(guess) = float_basis(m, h, g) {
        let mut crashed = tab.clone();
        for col in guess {
            if let Some(i) = (0..k).find(|&i| crashed.basis[i] >= n && !crashed.t[i][col].is_zero()) {
                crashed.pivot_plain(i, col);
            }
        }
        let rhs = crashed.rhs();
        if crashed.t.iter().all(|r| !r[rhs].is_negative()) {
            tab = crashed;
        }
    }

    // phase 1
    let mut cost1 = vec![Rational::zero(); n + k];
    for c in cost1.iter_mut().skip(n) {
        *c = Rational::one();
    }
    tab.set_costs(&cost1);
    let r1 = tab.run(n + k);
    debug_assert!(r1.is_none(), "phase 1 is bounded below by zero");
    let rhs = tab.rhs();
    if tab.z[rhs].is_negative() {
        return StdOutcome::Infeasible {
            w: tab.multipliers(&cost1, &sigma),
        };
    }
    // drive zero-level artificials out of the basis where possible
    for i in 0..k {
        if tab.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, col);
            }
        }
    }

    // phase 2
    let mut cost2 = g.to_vec();
    cost2.extend(std::iter::repeat_n(Rational::zero(), k));
    tab.set_costs(&cost2);
    if let Some(col) = tab.run(n) {
        let mut dir = vec![Rational::zero(); n];
        dir[col] = Rational::one();
        for (row, &b) in tab.t.iter().zip(&tab.basis) {
            if b < n {
                dir[b] = -row[col].clone();
            }
        }
        return StdOutcome::Unbounded { dir };
    }
    let mut y = vec![Rational::zero(); n];
    for (row, &b) in tab.t.iter().zip(&tab.basis) {
        if b < n {
            y[b] = row[rhs].clone();
        }
    }
    StdOutcome::Optimal {
        y,
        pi: tab.multipliers(&cost2, &sigma),
    }
}

/// Final basis of the same two-phase method in `f64`, restricted to
/// columns of `M`. `None` if the float run stalls.
fn float_basis(m: &[Vec<Rational>], h: &[Rational], g: &[Rational]) -> Option<Vec<usize>> {
    const EPS: f64 = 1e-9;
    let k = m.len();
    let n = g.len();
    let f = |x: &Rational| super::rational::to_f64(x);
    let mut t: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let flip = if h[i].is_negative() { -1.0 } else { 1.0 };
            let mut row: Vec<f64> = m[i].iter().map(|x| flip * f(x)).collect();
            row.extend((0..k).map(|j| if i == j { 1.0 } else { 0.0 }));
            row.push(flip * f(&h[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + k).collect();
    let rhs = n + k;
    let limit = 50 * (n + k) + 100;
    let mut steps = 0;
    let mut run = |t: &mut Vec<Vec<f64>>, basis: &mut Vec<usize>, cost: &[f64], allowed: usize| -> Option<bool> {
        loop {
            steps += 1;
            if steps > limit {
                return None;
            }
            let mut z: Vec<f64> = cost.to_vec();
            for (row, &b) in t.iter().zip(basis.iter()) {
                if cost[b] != 0.0 {
                    for (x, y) in z.iter_mut().zip(row) {
                        *x -= cost[b] * y;
                    }
                }
            }
            let Some(col) = (0..allowed)
                .filter(|&j| z[j] < -EPS)
                .min_by(|&a, &b| z[a].total_cmp(&z[b]))
            else {
                return Some(true);
            };
            let row = (0..t.len())
                .filter(|&i| t[i][col] > EPS)
                .min_by(|&a, &b| (t[a][rhs] / t[a][col]).total_cmp(&(t[b][rhs] / t[b][col])))?;
            let p = t[row][col];
            for x in t[row].iter_mut() {
                *x /= p;
            }
            let prow = t[row].clone();
            for (i, r) in t.iter_mut().enumerate() {
                if i != row && r[col] != 0.0 {
                    let c = r[col];
                    for (x, y) in r.iter_mut().zip(&prow) {
                        *x -= c * y;
                    }
                }
            }
            basis[row] = col;
        }
    };
    let mut cost: Vec<f64> = vec![0.0; n + k + 1];
    for c in cost.iter_mut().skip(n).take(k) {
        *c = 1.0;
    }
    run(&mut t, &mut basis, &cost, n + k)?;
    let mut cost: Vec<f64> = g.iter().map(f).collect();
    cost.extend(std::iter::repeat_n(0.0, k + 1));
    // artificials stay out of phase 2
    run(&mut t, &mut basis, &cost, n)?;
    Some(basis.into_iter().filter(|&b| b < n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::rational::int;

    fn hrep(dim: usize, rows: &[(&[i64], i64)]) -> HRep {
        HRep::new(
            dim,
            rows.iter()
                .map(|(a, b)| HalfSpace::new(RatVector::from_ints(a), int(*b)))
                .collect(),
        )
    }

    #[test]
    fn box_vertex_optimum() {
        let h = hrep(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)]);
        let c = RatVector::from_ints(&[1, 1]);
        let out = lp_solve(&c, Sense::Max, &h).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value, Some(int(2)));
        assert_eq!(out.point, Some(RatVector::from_ints(&[1, 1])));
        assert!(out.verify(&c, Sense::Max, &h));
    }

    #[test]
    fn contradictory_constraints_are_infeasible() {
        let h = hrep(1, &[(&[1], -1), (&[-1], 0)]);
        let c = RatVector::from_ints(&[1]);
        let out = lp_solve(&c, Sense::Max, &h).unwrap();
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.verify(&c, Sense::Max, &h));
    }

    #[test]
    fn half_line_is_unbounded() {
        let h = hrep(1, &[(&[-1], 0)]);
        let c = RatVector::from_ints(&[1]);
        let out = lp_solve(&c, Sense::Max, &h).unwrap();
        assert_eq!(out.status, LpStatus::Unbounded);
        assert_eq!(out.certificate, RatVector::from_ints(&[1]));
        assert!(out.verify(&c, Sense::Max, &h));
    }

    #[test]
    fn minimisation_and_free_space() {
        let h = hrep(2, &[]);
        let zero = RatVector::from_ints(&[0, 0]);
        let out = lp_solve(&zero, Sense::Min, &h).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!(out.verify(&zero, Sense::Min, &h));
        let c = RatVector::from_ints(&[0, -1]);
        let out = lp_solve(&c, Sense::Min, &h).unwrap();
        assert_eq!(out.status, LpStatus::Unbounded);
        assert!(out.verify(&c, Sense::Min, &h));

        let h = hrep(2, &[(&[-1, 0], -1), (&[0, -1], -2), (&[1, 1], 10)]);
        let c = RatVector::from_ints(&[1, 1]);
        let out = lp_solve(&c, Sense::Min, &h).unwrap();
        assert_eq!(out.value, Some(int(3)));
        assert!(out.verify(&c, Sense::Min, &h));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let h = hrep(2, &[]);
        assert!(lp_solve(&RatVector::from_ints(&[1]), Sense::Max, &h).is_err());
    }
}
