//! Randomised verification suites over every module. Each suite reports
//! the number of instances it ran and a description of every failure. The
//! acceptance tests and `conedual selftest` share them with different
//! instance counts.

use std::time::Instant;

use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use crate::banach_sums::{
    ando_decompose, check_block_polars, conormality_constant, normality_constant, verify_normality_duality,
    verify_additivity_duality, DirectSumInstance, Exponent,
};
use crate::cstar_checks::{
    check_cone_polars, check_order_inequality, jordan_decompose, random_hermitian, HermFunctional,
    IDENTITY_TOL, INEQUALITY_TOL,
};
use crate::duality_props::{verify_general_duality, DualityKind};
use crate::polar_calc::{bipolar, check_polar_identity};
use crate::polyrat::{
    int, lp_solve, Extended, HRep, HalfSpace, LpStatus, Polyhedron, RatVector, Rational, Sense,
    VRep,
};
use crate::random::{self, int_vector};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Run {
    name: String,
    instances: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Run {
    fn new(name: impl Into<String>) -> Self {
        Run {
            name: name.into(),
            instances: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            instances: self.instances,
            failures: self.failures,
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

/// Items 1–9 of the polar calculus, `per_item` instances each, dimensions
/// cycling through 2, 3, 4.
pub fn polar_identities(per_item: usize, seed: u64) -> Vec<SuiteOutcome> {
    (1..=9u8)
        .map(|item| {
            let mut run = Run::new(format!("polar identity {item}"));
            let mut rng = random::rng(seed ^ u64::from(item));
            for i in 0..per_item {
                let dim = 2 + i % 3;
                let (id, inputs) = random::identity_inputs(&mut rng, item, dim);
                run.instances += 1;
                match check_polar_identity(id, &inputs) {
                    Ok(r) => run.check(r.holds, || format!("instance {i} (dim {dim}): {r:?}")),
                    Err(e) => run.failures.push(format!("instance {i} (dim {dim}): {e}")),
                }
            }
            run.finish()
        })
        .collect()
}

/// `A°° = A` for closed convex `A ∋ 0`, and `p°° = conv(p ∪ {0})` for an
/// arbitrary polyhedron, against a direct hull construction.
pub fn bipolars(count: usize, seed: u64) -> SuiteOutcome {
    let mut run = Run::new("bipolar");
    let mut rng = random::rng(seed);
    for i in 0..count {
        let dim = 1 + i % 4;
        let a = random::body(&mut rng, dim);
        run.instances += 1;
        run.check(bipolar(&a).is_ok_and(|b| b == a), || format!("body {i}: {a:?}"));
        let p = random::polyhedron(&mut rng, dim);
        let mut points = p.vertices().to_vec();
        points.push(RatVector::zeros(dim));
        let hull = Polyhedron::from_v(VRep::new(dim, points, p.rays().to_vec())).expect("dims");
        run.check(bipolar(&p).is_ok_and(|b| b == hull), || format!("polyhedron {i}: {p:?}"));
    }
    run.finish()
}

/// Polar duality of the four properties on random quadruples, predicates and constants.
pub fn general_duality(count: usize, seed: u64) -> SuiteOutcome {
    let mut run = Run::new("general duality");
    let mut rng = random::rng(seed);
    for i in 0..count {
        let dim = 1 + i % 3;
        let q = random::quadruple(&mut rng, dim);
        run.instances += 1;
        for kind in [DualityKind::Normality, DualityKind::Additivity] {
            let r = verify_general_duality(kind, &q);
            run.check(r.all_hold, || format!("quadruple {i} (dim {dim}): {r:?}"));
        }
    }
    run.finish()
}

fn orthant(d: usize) -> Polyhedron {
    Polyhedron::cone(d, (0..d).map(|k| RatVector::unit(d, k)).collect()).expect("dims")
}

/// `a ≤ x ≤ b` in `ℝ²` ordered by the orthant with the `ℓ∞` norm:
/// `‖x‖ ≤ max(‖a‖, ‖b‖)`, and dually every functional splits as
/// `ρ − ψ` with `‖ρ‖ + ‖ψ‖ = ‖φ‖`. Both constants are 1.
pub fn orthant_interval_instance() -> DirectSumInstance {
    let plus = orthant(2);
    DirectSumInstance::new(
        Polyhedron::cube(2, int(-1), int(1)).expect("box"),
        vec![plus.clone(), plus.neg()],
        Exponent::Infinity,
    )
    .expect("valid instance")
}

pub fn orthant_interval() -> SuiteOutcome {
    let mut run = Run::new("orthant interval");
    let inst = orthant_interval_instance();
    run.instances = 1;
    let one = Extended::Finite(int(1));
    match (normality_constant(&inst), conormality_constant(&inst.dual())) {
        (Ok(n), Ok(c)) => {
            run.check(n.alpha_star == one, || format!("normality constant {}", n.alpha_star));
            run.check(c.alpha_star == one, || format!("dual decomposition constant {}", c.alpha_star));
        }
        (a, b) => run.failures.push(format!("{a:?} / {b:?}")),
    }
    run.finish()
}

fn random_sum(rng: &mut impl Rng, i: usize) -> DirectSumInstance {
    const SHAPES: [(usize, usize); 8] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (2, 2), (1, 3), (3, 3)];
    let (d, m) = SHAPES[i % SHAPES.len()];
    let p = if rng.random_bool(0.5) { Exponent::One } else { Exponent::Infinity };
    random::direct_sum(rng, d, m, p)
}

/// The six block-set polars plus both constant dualities of direct sums,
/// `d ≤ 3`, `m ≤ 3`, `p ∈ {1, ∞}`.
pub fn direct_sums(count: usize, seed: u64) -> SuiteOutcome {
    let mut run = Run::new("direct sums");
    let mut rng = random::rng(seed);
    for i in 0..count {
        let inst = random_sum(&mut rng, i);
        run.instances += 1;
        let tag = || format!("instance {i} (d {}, m {}, p {})", inst.d(), inst.m(), inst.p);
        match check_block_polars(&inst) {
            Ok(r) => run.check(r.all_hold, || format!("{}: polars {r:?}", tag())),
            Err(e) => run.failures.push(format!("{}: {e}", tag())),
        }
        for r in [verify_normality_duality(&inst), verify_additivity_duality(&inst)] {
            match r {
                Ok(r) => run.check(r.all_hold, || format!("{}: {r:?}", tag())),
                Err(e) => run.failures.push(format!("{}: {e}", tag())),
            }
        }
    }
    run.finish()
}

/// Minimum-norm decompositions on instances whose cones generate `ℝ^d`:
/// every random `x` splits within `α‖x‖`, and `α` is reached at a vertex
/// of the base ball.
pub fn ando(instances: usize, points: usize, seed: u64) -> SuiteOutcome {
    let mut run = Run::new("ando decomposition");
    let mut rng = random::rng(seed);
    let mut i = 0;
    while run.instances < instances {
        let inst = random_sum(&mut rng, i);
        i += 1;
        if !inst.cones_generate() {
            continue;
        }
        run.instances += 1;
        let alpha = match conormality_constant(&inst).map(|r| r.alpha_star) {
            Ok(Extended::Finite(a)) => a,
            other => {
                run.failures.push(format!("generating cones but constant {other:?}"));
                continue;
            }
        };
        for _ in 0..points {
            let x = int_vector(&mut rng, inst.d(), 5).scaled(&Rational::new(1.into(), rng.random_range(1..=3).into()));
            let gx = inst.base_ball().gauge(&x).expect("ball contains 0").finite().cloned().expect("bounded");
            match ando_decompose(&inst, &x) {
                Ok(a) => {
                    let sums = a.xi.iter().fold(RatVector::zeros(inst.d()), |s, v| s.add(v)) == x;
                    let inside = a.xi.iter().zip(inst.cones()).all(|(v, c)| c.contains(v));
                    run.check(sums && inside && a.norm <= &alpha * &gx, || {
                        format!("x = {x}: {a:?} against alpha {alpha}")
                    });
                }
                Err(e) => run.failures.push(format!("x = {x}: {e}")),
            }
        }
        let best = inst
            .base_ball()
            .vertices()
            .iter()
            .filter_map(|v| ando_decompose(&inst, v).ok())
            .map(|a| a.norm)
            .max();
        run.check(best.as_ref() == Some(&alpha), || format!("vertex maximum {best:?} != alpha {alpha}"));
    }
    run.finish()
}

/// Order-interval inequalities in `M_n` and its dual, the polar formulas,
/// and Jordan decompositions of random hermitian functionals.
pub fn cstar(samples: usize, jordan: usize, seed: u64) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    let mut run = Run::new("order-interval inequalities");
    for item in 1..=8 {
        for n in [2, 3] {
            run.instances += samples;
            match check_order_inequality(item, n, samples, seed, INEQUALITY_TOL) {
                Ok(r) => run.check(r.ok, || format!("item {item}, n {n}: max violation {}", r.max_violation)),
                Err(e) => run.failures.push(e.to_string()),
            }
        }
    }
    out.push(run.finish());
    let mut run = Run::new("cone polars in M_n");
    for item in 1..=4 {
        for n in [2, 3] {
            run.instances += samples;
            match check_cone_polars(item, n, samples, seed, INEQUALITY_TOL) {
                Ok(r) => run.check(r.ok, || format!("item {item}, n {n}: max violation {}", r.max_violation)),
                Err(e) => run.failures.push(e.to_string()),
            }
        }
    }
    out.push(run.finish());
    let mut run = Run::new("jordan decomposition");
    let mut rng = random::rng(seed);
    for i in 0..jordan {
        let n = 1 + i % 6;
        let phi = HermFunctional::new(random_hermitian(&mut rng, n), IDENTITY_TOL).expect("hermitian");
        let j = jordan_decompose(&phi);
        run.instances += 1;
        run.check(j.holds(IDENTITY_TOL), || format!("functional {i} (n {n}): {j:?}"));
    }
    out.push(run.finish());
    out
}

/// Strong duality with exact certificates on feasible random LPs, and
/// Farkas certificates on infeasible ones.
pub fn lp(feasible: usize, infeasible: usize, seed: u64) -> Vec<SuiteOutcome> {
    let mut rng = random::rng(seed);
    let mut run = Run::new("lp strong duality");
    for i in 0..feasible {
        let dim = 1 + i % 5;
        let x0 = int_vector(&mut rng, dim, 4);
        let rows: Vec<HalfSpace> = (0..dim + rng.random_range(0..=4))
            .map(|_| {
                let a = int_vector(&mut rng, dim, 5);
                let rhs = a.dot(&x0) + int(rng.random_range(0..=3));
                HalfSpace::new(a, rhs)
            })
            .collect();
        let h = HRep::new(dim, rows);
        let c = int_vector(&mut rng, dim, 5);
        let sense = if rng.random_bool(0.5) { Sense::Max } else { Sense::Min };
        let out = lp_solve(&c, sense, &h).expect("dims");
        run.instances += 1;
        let ok = out.verify(&c, sense, &h)
            && match out.status {
                LpStatus::Optimal => {
                    // the dual objective at the certificate equals the primal value
                    let y = &out.certificate;
                    let by: Rational = h.rows.iter().zip(y.iter()).map(|(r, yi)| &r.rhs * yi).sum();
                    let value = out.value.clone().expect("optimal");
                    let primal = c.dot(out.point.as_ref().expect("optimal"));
                    y.iter().all(|v| !v.is_negative())
                        && primal == value
                        && by == if sense == Sense::Max { value } else { -value }
                }
                LpStatus::Unbounded => true,
                LpStatus::Infeasible => false,
            };
        run.check(ok, || format!("lp {i}: {h:?} {c} {sense:?} -> {out:?}"));
    }
    let mut runs = vec![run.finish()];
    let mut run = Run::new("lp farkas certificates");
    for i in 0..infeasible {
        let dim = 1 + i % 5;
        let mut rows: Vec<HalfSpace> = (0..dim + 1)
            .map(|_| HalfSpace::new(int_vector(&mut rng, dim, 5), int(rng.random_range(-2..=5))))
            .collect();
        // a slab of negative width hidden among the rows
        let a = loop {
            let a = int_vector(&mut rng, dim, 4);
            if !a.is_zero() {
                break a;
            }
        };
        let w = int(rng.random_range(1..=3));
        rows.push(HalfSpace::new(a.clone(), int(rng.random_range(-3..=3))));
        let lo = &rows.last().expect("pushed").rhs + w;
        rows.push(HalfSpace::new(a.neg(), -lo));
        let at = rng.random_range(0..rows.len());
        let last = rows.len() - 1;
        rows.swap(at, last);
        let h = HRep::new(dim, rows);
        let c = int_vector(&mut rng, dim, 5);
        let out = lp_solve(&c, Sense::Max, &h).expect("dims");
        run.instances += 1;
        run.check(out.status == LpStatus::Infeasible && out.verify(&c, Sense::Max, &h), || {
            format!("lp {i}: {h:?} -> {out:?}")
        });
    }
    runs.push(run.finish());
    runs
}

/// Every suite at reduced size.
pub fn selftest(seed: u64) -> Vec<SuiteOutcome> {
    let mut out = polar_identities(8, seed);
    out.push(bipolars(10, seed));
    out.push(general_duality(10, seed));
    out.push(orthant_interval());
    out.push(direct_sums(6, seed));
    out.push(ando(3, 5, seed));
    out.extend(cstar(200, 60, seed));
    out.extend(lp(60, 30, seed));
    out
}
