//! Normality, additivity, conormality and coadditivity of a quadruple
//! `(C, D, B1, B2)` of two cones and two convex sets containing zero:
//!
//! | property    | inclusion               |
//! |-------------|-------------------------|
//! | normal      | `(B2 + C) ∩ D ⊆ B1`     |
//! | additive    | `(B2 ∩ C) + D ⊆ B1`     |
//! | conormal    | `B1 ⊆ (B2 ∩ C) + D`     |
//! | coadditive  | `B1 ⊆ (B2 + C) ∩ D`     |
//!
//! Optimal constants follow one scaling convention: for normal and additive
//! the property holds for `(C, D, αB1, B2)` iff `α >= α*`; for conormal and
//! coadditive it holds for `(C, D, B1, αB2)` iff `α >= α*`. With this
//! convention the normal constant of `q` equals the conormal constant of the
//! polar quadruple, and likewise for additive and coadditive. A zero
//! dilation `0·B` is read as the recession cone of `B`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::polar_calc::one_sided_polar;
use crate::polyrat::{
    lp_solve, Extended, HRep, HalfSpace, LpStatus, Polyhedron, PolyhedronJson, RatVector,
    Rational, Sense,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Normal,
    Additive,
    Conormal,
    Coadditive,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Normal,
        Property::Additive,
        Property::Conormal,
        Property::Coadditive,
    ];

    /// The property exchanged with this one under polarity.
    pub fn dual(self) -> Property {
        match self {
            Property::Normal => Property::Conormal,
            Property::Conormal => Property::Normal,
            Property::Additive => Property::Coadditive,
            Property::Coadditive => Property::Additive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Normal => "normal",
            Property::Additive => "additive",
            Property::Conormal => "conormal",
            Property::Coadditive => "coadditive",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "normality" => Ok(Property::Normal),
            "additive" | "additivity" => Ok(Property::Additive),
            "conormal" | "conormality" => Ok(Property::Conormal),
            "coadditive" | "coadditivity" => Ok(Property::Coadditive),
            _ => Err(Error::Parse(format!("unknown property {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadruple {
    dim: usize,
    pub c: Polyhedron,
    pub d: Polyhedron,
    pub b1: Polyhedron,
    pub b2: Polyhedron,
}

impl Quadruple {
    pub fn new(c: Polyhedron, d: Polyhedron, b1: Polyhedron, b2: Polyhedron) -> Result<Self> {
        let dim = c.dim();
        for p in [&d, &b1, &b2] {
            check_dim(dim, p.dim())?;
        }
        if !c.is_cone() || !d.is_cone() {
            return Err(Error::InvalidInstance("C and D must be cones".into()));
        }
        if !b1.contains_origin() || !b2.contains_origin() {
            return Err(Error::InvalidInstance("B1 and B2 must contain the origin".into()));
        }
        Ok(Quadruple { dim, c, d, b1, b2 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(C°, D°, B1°, B2°)`.
    pub fn polar(&self) -> Quadruple {
        let pol = |p: &Polyhedron| one_sided_polar(p).expect("components are nonempty");
        Quadruple {
            dim: self.dim,
            c: pol(&self.c),
            d: pol(&self.d),
            b1: pol(&self.b1),
            b2: pol(&self.b2),
        }
    }

    /// Replaces `B1` by `α·B1` (normal, additive) or `B2` by `α·B2`
    /// (conormal, coadditive): the dilation the optimal constant refers to.
    pub fn rescaled(&self, property: Property, alpha: &Rational) -> Result<Quadruple> {
        let mut q = self.clone();
        match property {
            Property::Normal | Property::Additive => q.b1 = self.b1.dilate(alpha)?,
            Property::Conormal | Property::Coadditive => q.b2 = self.b2.dilate(alpha)?,
        }
        Ok(q)
    }

    /// The two sides `(inner, outer)` of the defining inclusion.
    pub fn sides(&self, property: Property) -> (Polyhedron, Polyhedron) {
        let sum = |a: &Polyhedron, b: &Polyhedron| a.minkowski_sum(b).expect("same dimension");
        let meet = |a: &Polyhedron, b: &Polyhedron| a.intersect(b).expect("same dimension");
        match property {
            Property::Normal => (meet(&sum(&self.b2, &self.c), &self.d), self.b1.clone()),
            Property::Additive => (sum(&meet(&self.b2, &self.c), &self.d), self.b1.clone()),
            Property::Conormal => (self.b1.clone(), sum(&meet(&self.b2, &self.c), &self.d)),
            Property::Coadditive => (self.b1.clone(), meet(&sum(&self.b2, &self.c), &self.d)),
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadrupleJson {
    dim: usize,
    #[serde(rename = "C")]
    c: PolyhedronJson,
    #[serde(rename = "D")]
    d: PolyhedronJson,
    #[serde(rename = "B1")]
    b1: PolyhedronJson,
    #[serde(rename = "B2")]
    b2: PolyhedronJson,
}

impl Serialize for Quadruple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadrupleJson {
            dim: self.dim,
            c: (&self.c).into(),
            d: (&self.d).into(),
            b1: (&self.b1).into(),
            b2: (&self.b2).into(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quadruple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = QuadrupleJson::deserialize(d)?;
        let part = |mut p: PolyhedronJson| {
            p.dim.get_or_insert(w.dim);
            p.into_polyhedron()
        };
        let build = || -> Result<Quadruple> {
            let q = Quadruple::new(part(w.c.clone())?, part(w.d.clone())?, part(w.b1.clone())?, part(w.b2.clone())?)?;
            check_dim(w.dim, q.dim)?;
            Ok(q)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: Property,
    pub holds: bool,
    /// A point of the inner side outside the outer side.
    pub witness: Option<RatVector>,
}

pub fn check_property(property: Property, q: &Quadruple) -> PropertyCheck {
    let (inner, outer) = q.sides(property);
    let witness = outer.escape_witness(&inner);
    PropertyCheck {
        property,
        holds: witness.is_none(),
        witness,
    }
}

pub fn is_normal(q: &Quadruple) -> bool {
    check_property(Property::Normal, q).holds
}

pub fn is_additive(q: &Quadruple) -> bool {
    check_property(Property::Additive, q).holds
}

pub fn is_conormal(q: &Quadruple) -> bool {
    check_property(Property::Conormal, q).holds
}

pub fn is_coadditive(q: &Quadruple) -> bool {
    check_property(Property::Coadditive, q).holds
}

pub fn polar_quadruple(q: &Quadruple) -> Quadruple {
    q.polar()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Point,
    Ray,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantReport {
    pub property: Property,
    pub alpha_star: Extended,
    /// Whether the property holds at `α*` itself.
    pub attained: bool,
    /// Finite `α*`: a point realising it. Infinite `α*`: a point or a
    /// direction along which the required dilation grows without bound.
    pub witness: RatVector,
    pub witness_kind: WitnessKind,
}

/// Linear map `z ↦ x` from lifted LP variables to ambient coordinates,
/// stored as `x = Σ_k z[blocks[k]..]` blockwise sums of `n`-vectors.
struct Lift {
    n: usize,
    nvars: usize,
    rows: Vec<HalfSpace>,
}

impl Lift {
    fn new(n: usize, nvars: usize) -> Self {
        Lift {
            n,
            nvars,
            rows: Vec::new(),
        }
    }

    /// Adds `a·(Σ_{k in blocks} z_k) <= rhs` over `n`-blocks of variables.
    fn add(&mut self, a: &[Rational], blocks: &[usize], rhs: Rational) {
        let mut v = vec![Rational::zero(); self.nvars];
        for &b in blocks {
            for (k, x) in a.iter().enumerate() {
                v[b * self.n + k] += x;
            }
        }
        self.rows.push(HalfSpace::new(RatVector(v), rhs));
    }

    fn add_set(&mut self, p: &Polyhedron, blocks: &[usize]) {
        for r in p.rows() {
            self.add(&r.normal, blocks, r.rhs.clone());
        }
    }

    fn objective(&self, a: &[Rational], blocks: &[usize]) -> RatVector {
        let mut v = vec![Rational::zero(); self.nvars];
        for &b in blocks {
            for (k, x) in a.iter().enumerate() {
                v[b * self.n + k] += x;
            }
        }
        RatVector(v)
    }

    fn hrep(&self) -> HRep {
        HRep::new(self.nvars, self.rows.clone())
    }
}

fn sum_blocks(z: &[Rational], n: usize, blocks: &[usize]) -> RatVector {
    let mut x = RatVector::zeros(n);
    for &b in blocks {
        for k in 0..n {
            x[k] += &z[b * n + k];
        }
    }
    x
}

/// Lifted description of the left-hand side of normality or additivity as
/// `{y + w : (y, w) feasible}`.
fn lhs_lift(property: Property, q: &Quadruple) -> Lift {
    let n = q.dim;
    let mut lift = Lift::new(n, 2 * n);
    match property {
        Property::Normal => {
            // y ∈ B2, w ∈ C, y + w ∈ D
            lift.add_set(&q.b2, &[0]);
            lift.add_set(&q.c, &[1]);
            lift.add_set(&q.d, &[0, 1]);
        }
        Property::Additive => {
            // y ∈ B2 ∩ C, w ∈ D
            lift.add_set(&q.b2, &[0]);
            lift.add_set(&q.c, &[0]);
            lift.add_set(&q.d, &[1]);
        }
        _ => unreachable!("only sup-type properties have a lifted left side"),
    }
    lift
}

/// Lexicographically least point `x = y + w` of the lifted set subject to
/// `a·x >= v`; stops refining at the first unbounded coordinate.
fn lexmin_point(lift: &Lift, a: &[Rational], v: &Rational, start: RatVector) -> RatVector {
    let n = lift.n;
    let mut sub = Lift {
        n,
        nvars: lift.nvars,
        rows: lift.rows.clone(),
    };
    let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
    sub.add(&neg, &[0, 1], -v.clone());
    let mut best = start;
    for k in 0..n {
        let e = RatVector::unit(n, k);
        let obj = sub.objective(&e, &[0, 1]);
        let out = lp_solve(&obj, Sense::Min, &sub.hrep()).expect("dimensions agree");
        if out.status != LpStatus::Optimal {
            break;
        }
        let val = out.value.expect("optimal");
        best = sum_blocks(&out.point.expect("optimal"), n, &[0, 1]);
        sub.add(&e, &[0, 1], val.clone());
        sub.add(&e.neg(), &[0, 1], -val);
    }
    best
}

fn sup_constant(property: Property, q: &Quadruple) -> ConstantReport {
    let n = q.dim;
    let lift = lhs_lift(property, q);
    let h = lift.hrep();
    let mut alpha = Rational::zero();
    let mut attaining: Vec<(usize, Rational)> = Vec::new();
    for (i, row) in q.b1.rows().iter().enumerate() {
        let obj = lift.objective(&row.normal, &[0, 1]);
        let out = lp_solve(&obj, Sense::Max, &h).expect("dimensions agree");
        match out.status {
            LpStatus::Infeasible => unreachable!("the origin is always feasible"),
            LpStatus::Unbounded => {
                let ray = sum_blocks(&out.certificate, n, &[0, 1]);
                return ConstantReport {
                    property,
                    alpha_star: Extended::Infinite,
                    attained: false,
                    witness: ray,
                    witness_kind: WitnessKind::Ray,
                };
            }
            LpStatus::Optimal => {
                let value = out.value.expect("optimal");
                if row.rhs.is_zero() {
                    if value.is_positive() {
                        return ConstantReport {
                            property,
                            alpha_star: Extended::Infinite,
                            attained: false,
                            witness: sum_blocks(&out.point.expect("optimal"), n, &[0, 1]),
                            witness_kind: WitnessKind::Point,
                        };
                    }
                    continue;
                }
                let t = &value / &row.rhs;
                if t > alpha {
                    alpha = t.clone();
                    attaining.clear();
                }
                if t == alpha && t.is_positive() {
                    attaining.push((i, value));
                }
            }
        }
    }
    // lexmin on the first attaining row only; one lexmin costs n LPs
    let witness = attaining
        .first()
        .map(|(i, value)| {
            lexmin_point(&lift, &q.b1.rows()[*i].normal, value, RatVector::zeros(n))
        })
        .unwrap_or_else(|| RatVector::zeros(n));
    ConstantReport {
        property,
        alpha_star: Extended::Finite(alpha),
        attained: true,
        witness,
        witness_kind: WitnessKind::Point,
    }
}

/// Minimal `t` with `b ∈ (tB2 ∩ C) + D` (conormal) or `b ∈ tB2 + C`
/// (coadditive), for a point `b`; `None` if no `t` works.
fn min_dilation(property: Property, q: &Quadruple, b: &RatVector) -> Option<Rational> {
    let n = q.dim;
    // variables (u, t): u is the B2-part, t the dilation
    let mut rows = Vec::new();
    let mut push = |a: Vec<Rational>, t: Rational, rhs: Rational| {
        let mut v = a;
        v.push(t);
        rows.push(HalfSpace::new(RatVector(v), rhs));
    };
    for r in q.b2.rows() {
        push(r.normal.0.clone(), -r.rhs.clone(), Rational::zero());
    }
    let neg = |a: &RatVector| a.iter().map(|x| -x).collect::<Vec<_>>();
    match property {
        Property::Conormal => {
            // u ∈ C, b - u ∈ D
            for r in q.c.rows() {
                push(r.normal.0.clone(), Rational::zero(), r.rhs.clone());
            }
            for r in q.d.rows() {
                push(neg(&r.normal), Rational::zero(), &r.rhs - r.normal.dot(b));
            }
        }
        Property::Coadditive => {
            // b - u ∈ C
            for r in q.c.rows() {
                push(neg(&r.normal), Rational::zero(), &r.rhs - r.normal.dot(b));
            }
        }
        _ => unreachable!("only inf-type properties decompose points"),
    }
    let mut t_ge_0 = vec![Rational::zero(); n];
    t_ge_0.push(-Rational::one());
    rows.push(HalfSpace::new(RatVector(t_ge_0), Rational::zero()));
    let obj = RatVector::unit(n + 1, n);
    let out = lp_solve(&obj, Sense::Min, &HRep::new(n + 1, rows)).expect("dimensions agree");
    match out.status {
        LpStatus::Optimal => out.value,
        LpStatus::Infeasible => None,
        LpStatus::Unbounded => unreachable!("t is bounded below by zero"),
    }
}

/// Whether a ray of `B1` stays inside the recession cone of the right side.
fn ray_decomposes(property: Property, q: &Quadruple, r: &RatVector) -> bool {
    let n = q.dim;
    let mut lift = Lift::new(n, n);
    for row in q.b2.rows() {
        lift.add(&row.normal, &[0], Rational::zero());
    }
    match property {
        Property::Conormal => {
            lift.add_set(&q.c, &[0]);
            for row in q.d.rows() {
                let a: Vec<Rational> = row.normal.iter().map(|x| -x).collect();
                lift.add(&a, &[0], -row.normal.dot(r));
            }
        }
        Property::Coadditive => {
            for row in q.c.rows() {
                let a: Vec<Rational> = row.normal.iter().map(|x| -x).collect();
                lift.add(&a, &[0], -row.normal.dot(r));
            }
        }
        _ => unreachable!(),
    }
    let out = lp_solve(&RatVector::zeros(n), Sense::Min, &lift.hrep()).expect("dimensions agree");
    out.status == LpStatus::Optimal
}

fn inf_constant(property: Property, q: &Quadruple) -> ConstantReport {
    let n = q.dim;
    let infinite = |witness: RatVector, kind| ConstantReport {
        property,
        alpha_star: Extended::Infinite,
        attained: false,
        witness,
        witness_kind: kind,
    };
    if property == Property::Coadditive {
        if let Some(b) = q.b1.vertices().iter().find(|b| !q.d.contains(b)) {
            return infinite(b.clone(), WitnessKind::Point);
        }
        if let Some(r) = q.b1.rays().iter().find(|r| !q.d.h().recedes(r)) {
            return infinite(r.clone(), WitnessKind::Ray);
        }
    }
    for r in q.b1.rays() {
        if !ray_decomposes(property, q, r) {
            return infinite(r.clone(), WitnessKind::Ray);
        }
    }
    let mut alpha = Rational::zero();
    let mut witness = RatVector::zeros(n);
    for b in q.b1.vertices() {
        match min_dilation(property, q, b) {
            None => return infinite(b.clone(), WitnessKind::Point),
            Some(t) => {
                if t > alpha {
                    alpha = t;
                    witness = b.clone();
                }
            }
        }
    }
    if alpha.is_zero() {
        witness = q.b1.vertices()[0].clone();
    }
    ConstantReport {
        property,
        alpha_star: Extended::Finite(alpha),
        attained: true,
        witness,
        witness_kind: WitnessKind::Point,
    }
}

/// Exact optimal constant of a property, by linear programming.
pub fn optimal_constant(property: Property, q: &Quadruple) -> ConstantReport {
    match property {
        Property::Normal | Property::Additive => sup_constant(property, q),
        Property::Conormal | Property::Coadditive => inf_constant(property, q),
    }
}

/// Same constant computed from polyhedra only: the largest gauge of the
/// outer side over generators of the inner side. Cones make the scaling pass
/// through the sums, e.g. `(αB2 ∩ C) + D = α((B2 ∩ C) + D)`.
pub fn optimal_constant_by_gauges(property: Property, q: &Quadruple) -> Extended {
    let (inner, outer) = q.sides(property);
    if inner.rays().iter().any(|r| !outer.h().recedes(r)) {
        return Extended::Infinite;
    }
    inner
        .vertices()
        .iter()
        .map(|v| outer.gauge(v).expect("outer side contains the origin"))
        .max()
        .unwrap_or(Extended::Finite(Rational::zero()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DualityKind {
    Normality,
    Additivity,
}

impl DualityKind {
    fn pair(&self) -> (Property, Property) {
        match self {
            DualityKind::Normality => (Property::Normal, Property::Conormal),
            DualityKind::Additivity => (Property::Additive, Property::Coadditive),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Direction {
    /// Property on the primal quadruple.
    pub primal: Property,
    /// Property on the polar quadruple.
    pub dual: Property,
    pub primal_holds: bool,
    pub dual_holds: bool,
    pub equivalent: bool,
    pub witness: Option<RatVector>,
    pub primal_alpha: Extended,
    pub dual_alpha: Extended,
    pub constants_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub kind: DualityKind,
    pub directions: Vec<Direction>,
    pub all_hold: bool,
}

/// Checks `P(q) ⟺ P*(q°)` in both directions of the pair, together with
/// equality of the optimal constants across the polar.
pub fn verify_general_duality(kind: DualityKind, q: &Quadruple) -> DualityReport {
    let polar = q.polar();
    let (a, b) = kind.pair();
    let directions: Vec<Direction> = [(a, b), (b, a)]
        .into_iter()
        .map(|(p, d)| {
            let lhs = check_property(p, q);
            let rhs = check_property(d, &polar);
            let primal_alpha = optimal_constant(p, q).alpha_star;
            let dual_alpha = optimal_constant(d, &polar).alpha_star;
            Direction {
                primal: p,
                dual: d,
                primal_holds: lhs.holds,
                dual_holds: rhs.holds,
                equivalent: lhs.holds == rhs.holds,
                witness: lhs.witness.or(rhs.witness),
                constants_agree: primal_alpha == dual_alpha,
                primal_alpha,
                dual_alpha,
            }
        })
        .collect();
    let all_hold = directions.iter().all(|d| d.equivalent && d.constants_agree);
    DualityReport {
        kind,
        directions,
        all_hold,
    }
}

/// One-way implications between a quadruple and its polar. Items 1–4 pass
/// from `q` to inclusions among polars, items 5–8 from the polar quadruple
/// back to `q`. A false hypothesis makes the item hold vacuously.
pub fn check_implication(item: u8, q: &Quadruple) -> Result<bool> {
    let polar = q.polar();
    let (hyp, concl) = match item {
        1 => (check_property(Property::Normal, q), check_property(Property::Conormal, &polar)),
        2 => (check_property(Property::Additive, q), check_property(Property::Coadditive, &polar)),
        3 => (check_property(Property::Conormal, q), check_property(Property::Normal, &polar)),
        4 => (check_property(Property::Coadditive, q), check_property(Property::Additive, &polar)),
        5 => (check_property(Property::Normal, &polar), check_property(Property::Conormal, q)),
        6 => (check_property(Property::Additive, &polar), check_property(Property::Coadditive, q)),
        7 => (check_property(Property::Conormal, &polar), check_property(Property::Normal, q)),
        8 => (check_property(Property::Coadditive, &polar), check_property(Property::Additive, q)),
        _ => return Err(Error::InvalidInstance(format!("item {item} is not in 1..=8"))),
    };
    Ok(!hyp.holds || concl.holds)
}
