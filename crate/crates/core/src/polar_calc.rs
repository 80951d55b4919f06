//! One-sided polars `A° = {z : ⟨a, z⟩ <= 1 for all a ∈ A}` and their calculus.
//!
//! Polars are computed from generators: a vertex `v` contributes the row
//! `⟨v, z⟩ <= 1` and a ray `r` the row `⟨r, z⟩ <= 0`. When `0 ∈ A` the
//! generators of `A°` are read off the rows of `A` directly, so no vertex
//! enumeration is needed.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyrat::{HRep, HalfSpace, Polyhedron, RatVector, Rational, VRep};

/// A polyhedron together with its polar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarPair {
    pub primal: Polyhedron,
    pub polar: Polyhedron,
}

impl PolarPair {
    pub fn new(primal: Polyhedron) -> Result<Self> {
        let polar = one_sided_polar(&primal)?;
        Ok(PolarPair { primal, polar })
    }
}

fn generator_rows(dim: usize, vertices: &[RatVector], rays: &[RatVector]) -> HRep {
    let rows = vertices
        .iter()
        .map(|v| HalfSpace::new(v.clone(), Rational::from_integer(1.into())))
        .chain(rays.iter().map(|r| HalfSpace::new(r.clone(), Rational::zero())))
        .collect();
    HRep::new(dim, rows)
}

pub fn one_sided_polar(p: &Polyhedron) -> Result<Polyhedron> {
    if p.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = p.dim();
    let h = generator_rows(dim, p.vertices(), p.rays());
    if !p.contains_origin() {
        return Polyhedron::from_h(h);
    }
    let mut points = vec![RatVector::zeros(dim)];
    let mut rays = Vec::new();
    for row in p.rows() {
        if row.rhs.is_zero() {
            rays.push(row.normal.clone());
        } else {
            points.push(row.normal.scaled(&row.rhs.recip()));
        }
    }
    Ok(Polyhedron::from_parts(&h, &VRep::new(dim, points, rays)))
}

/// `A°°`, which equals the closed convex hull of `A ∪ {0}`.
pub fn bipolar(p: &Polyhedron) -> Result<Polyhedron> {
    one_sided_polar(&one_sided_polar(p)?)
}

/// `C' = {z : ⟨c, z⟩ >= 0 for all c ∈ C}`.
pub fn dual_cone(c: &Polyhedron) -> Result<Polyhedron> {
    if !c.is_cone() {
        return Err(Error::NotACone);
    }
    Ok(one_sided_polar(c)?.neg())
}

/// Polar of the union of several sets, via the union of their generators.
pub fn polar_of_union(sets: &[Polyhedron]) -> Result<Polyhedron> {
    let hull = closed_hull_of_union(sets)?;
    one_sided_polar(&hull)
}

/// Closed convex hull of a finite union of nonempty polyhedra.
pub fn closed_hull_of_union(sets: &[Polyhedron]) -> Result<Polyhedron> {
    let first = sets.first().ok_or(Error::EmptySet)?;
    let dim = first.dim();
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for s in sets {
        crate::error::check_dim(dim, s.dim())?;
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        vertices.extend(s.vertices().iter().cloned());
        rays.extend(s.rays().iter().cloned());
    }
    Polyhedron::from_v(VRep::new(dim, vertices, rays))
}

/// Items of the elementary polar calculus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PolarIdentity {
    /// `A°` is closed, convex and contains zero.
    P1,
    /// `A ⊆ B` implies `B° ⊆ A°`.
    P2,
    /// `(λA)° = λ⁻¹ A°`.
    P3 { lambda: String },
    /// `(∪ Aᵢ)° = ∩ Aᵢ°`.
    P4,
    /// `A°° = conv(A ∪ {0})`.
    P5,
    /// `(∩ Aᵢ)° = conv(∪ Aᵢ°)` for closed convex `Aᵢ ∋ 0`.
    P6,
    /// `C°` is a closed cone and `C° = -C'`.
    P7,
    /// `(A ∩ C)° = A° + C°` for closed convex `A ∋ 0` and a cone `C`.
    P8,
    /// `(A + C)° = A° ∩ C°` for convex `A ∋ 0` and a cone `C`.
    P9,
}

impl PolarIdentity {
    pub fn p3(lambda: &Rational) -> Self {
        PolarIdentity::P3 {
            lambda: crate::polyrat::format_rational(lambda),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolarIdentity::P1 => "P1",
            PolarIdentity::P2 => "P2",
            PolarIdentity::P3 { .. } => "P3",
            PolarIdentity::P4 => "P4",
            PolarIdentity::P5 => "P5",
            PolarIdentity::P6 => "P6",
            PolarIdentity::P7 => "P7",
            PolarIdentity::P8 => "P8",
            PolarIdentity::P9 => "P9",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: PolarIdentity,
    pub holds: bool,
    /// A point in the symmetric difference of the two sides.
    pub witness: Option<RatVector>,
}

fn compare(identity: PolarIdentity, lhs: &Polyhedron, rhs: &Polyhedron) -> IdentityReport {
    let witness = rhs
        .escape_witness(lhs)
        .or_else(|| lhs.escape_witness(rhs));
    IdentityReport {
        identity,
        holds: lhs == rhs,
        witness,
    }
}

fn arity(inputs: &[Polyhedron], n: usize) -> Result<()> {
    if inputs.len() == n {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("expected {n} input sets, got {}", inputs.len())))
    }
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis(what.to_string()))
    }
}

/// Evaluates both sides of an identity exactly.
pub fn check_polar_identity(id: PolarIdentity, inputs: &[Polyhedron]) -> Result<IdentityReport> {
    if inputs.is_empty() {
        return Err(Error::Hypothesis("at least one input set is required".into()));
    }
    let dim = inputs[0].dim();
    for p in inputs {
        crate::error::check_dim(dim, p.dim())?;
        need(!p.is_empty(), "input sets must be nonempty")?;
    }
    match id {
        PolarIdentity::P1 => {
            arity(inputs, 1)?;
            let polar = one_sided_polar(&inputs[0])?;
            let holds = polar.contains_origin() && polar.is_consistent();
            Ok(IdentityReport {
                identity: id,
                holds,
                witness: None,
            })
        }
        PolarIdentity::P2 => {
            arity(inputs, 2)?;
            let (a, b) = (&inputs[0], &inputs[1]);
            need(b.includes(a)?, "first set must be contained in the second")?;
            let pa = one_sided_polar(a)?;
            let pb = one_sided_polar(b)?;
            Ok(IdentityReport {
                identity: id,
                holds: pa.includes(&pb)?,
                witness: pa.escape_witness(&pb),
            })
        }
        PolarIdentity::P3 { ref lambda } => {
            arity(inputs, 1)?;
            let lambda = crate::polyrat::parse_rational(lambda)?;
            need(lambda.is_positive(), "scaling factor must be positive")?;
            let lhs = one_sided_polar(&inputs[0].scale(&lambda)?)?;
            let rhs = one_sided_polar(&inputs[0])?.scale(&lambda.recip())?;
            Ok(compare(id, &lhs, &rhs))
        }
        PolarIdentity::P4 => {
            let lhs = polar_of_union(inputs)?;
            let mut rhs = one_sided_polar(&inputs[0])?;
            for p in &inputs[1..] {
                rhs = rhs.intersect(&one_sided_polar(p)?)?;
            }
            Ok(compare(id, &lhs, &rhs))
        }
        PolarIdentity::P5 => {
            arity(inputs, 1)?;
            let a = &inputs[0];
            let lhs = bipolar(a)?;
            let mut points = a.vertices().to_vec();
            points.push(RatVector::zeros(dim));
            let rhs = Polyhedron::from_v(VRep::new(dim, points, a.rays().to_vec()))?;
            Ok(compare(id, &lhs, &rhs))
        }
        PolarIdentity::P6 => {
            for a in inputs {
                need(a.contains_origin(), "every set must contain the origin")?;
            }
            let mut meet = inputs[0].clone();
            for p in &inputs[1..] {
                meet = meet.intersect(p)?;
            }
            let lhs = one_sided_polar(&meet)?;
            let polars = inputs
                .iter()
                .map(one_sided_polar)
                .collect::<Result<Vec<_>>>()?;
            let rhs = closed_hull_of_union(&polars)?;
            Ok(compare(id, &lhs, &rhs))
        }
        PolarIdentity::P7 => {
            arity(inputs, 1)?;
            let c = &inputs[0];
            need(c.is_cone(), "input must be a cone")?;
            let lhs = one_sided_polar(c)?;
            // C' straight from its definition: ⟨r, z⟩ >= 0 for each ray r
            let rows = c
                .rays()
                .iter()
                .map(|r| HalfSpace::new(r.neg(), Rational::zero()))
                .collect();
            let dual = Polyhedron::from_h(HRep::new(dim, rows))?;
            let mut report = compare(id, &lhs, &dual.neg());
            report.holds &= lhs.is_cone();
            Ok(report)
        }
        PolarIdentity::P8 | PolarIdentity::P9 => {
            arity(inputs, 2)?;
            let (a, c) = (&inputs[0], &inputs[1]);
            need(a.contains_origin(), "first set must contain the origin")?;
            need(c.is_cone(), "second set must be a cone")?;
            let pa = one_sided_polar(a)?;
            let pc = one_sided_polar(c)?;
            let (lhs, rhs) = if id == PolarIdentity::P8 {
                (one_sided_polar(&a.intersect(c)?)?, pa.minkowski_sum(&pc)?)
            } else {
                (one_sided_polar(&a.minkowski_sum(c)?)?, pa.intersect(&pc)?)
            };
            Ok(compare(id, &lhs, &rhs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::{frac, int};

    fn pts(ps: &[&[i64]]) -> Vec<RatVector> {
        ps.iter().map(|p| RatVector::from_ints(p)).collect()
    }

    fn orthant() -> Polyhedron {
        Polyhedron::cone(2, pts(&[&[1, 0], &[0, 1]])).unwrap()
    }

    fn l1() -> Polyhedron {
        Polyhedron::hull(2, pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap()
    }

    fn linf() -> Polyhedron {
        Polyhedron::cube(2, int(-1), int(1)).unwrap()
    }

    #[test]
    fn polar_of_orthant_is_negative_orthant() {
        assert_eq!(one_sided_polar(&orthant()).unwrap(), orthant().neg());
    }

    #[test]
    fn polar_of_cross_polytope_is_cube() {
        assert_eq!(one_sided_polar(&l1()).unwrap(), linf());
        assert_eq!(one_sided_polar(&linf()).unwrap(), l1());
    }

    #[test]
    fn polar_of_segment_is_halfplane() {
        let seg = Polyhedron::hull(2, pts(&[&[0, 0], &[2, 0]])).unwrap();
        // rows from the two generators: 0·z <= 1 and 2 z1 <= 1
        let oracle = Polyhedron::from_h(HRep::new(
            2,
            vec![
                HalfSpace::new(RatVector::from_ints(&[0, 0]), int(1)),
                HalfSpace::new(RatVector::from_ints(&[2, 0]), int(1)),
            ],
        ))
        .unwrap();
        assert_eq!(one_sided_polar(&seg).unwrap(), oracle);
    }

    #[test]
    fn polar_without_origin_uses_generators() {
        let p = Polyhedron::hull(1, pts(&[&[1], &[2]])).unwrap();
        let expect = Polyhedron::from_h(HRep::new(
            1,
            vec![HalfSpace::new(RatVector::from_ints(&[2]), int(1))],
        ))
        .unwrap();
        assert_eq!(one_sided_polar(&p).unwrap(), expect);
        assert_eq!(one_sided_polar(&Polyhedron::empty(2)), Err(Error::EmptySet));
    }

    #[test]
    fn bipolars() {
        assert_eq!(bipolar(&l1()).unwrap(), l1());
        let point = Polyhedron::hull(2, pts(&[&[1, 1]])).unwrap();
        let seg = Polyhedron::hull(2, pts(&[&[0, 0], &[1, 1]])).unwrap();
        assert_eq!(bipolar(&point).unwrap(), seg);
        let two = Polyhedron::hull(2, pts(&[&[1, 0], &[0, 1]])).unwrap();
        let tri = Polyhedron::hull(2, pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(bipolar(&two).unwrap(), tri);
    }

    #[test]
    fn dual_cones() {
        assert_eq!(dual_cone(&orthant()).unwrap(), orthant());
        let wedge = Polyhedron::cone(2, pts(&[&[1, 1], &[1, -1]])).unwrap();
        // ⟨(1,1),z⟩ >= 0 and ⟨(1,-1),z⟩ >= 0 by hand: z1 >= |z2|
        let by_hand = Polyhedron::from_h(HRep::new(
            2,
            vec![
                HalfSpace::new(RatVector::from_ints(&[-1, -1]), int(0)),
                HalfSpace::new(RatVector::from_ints(&[-1, 1]), int(0)),
            ],
        ))
        .unwrap();
        assert_eq!(by_hand, wedge);
        assert_eq!(dual_cone(&wedge).unwrap(), by_hand);
        assert_eq!(dual_cone(&Polyhedron::whole_space(2)).unwrap(), Polyhedron::origin(2));
        assert_eq!(dual_cone(&l1()), Err(Error::NotACone));
    }

    #[test]
    fn desk_identities() {
        let r = check_polar_identity(PolarIdentity::P8, &[linf(), orthant()]).unwrap();
        assert!(r.holds && r.witness.is_none());
        let r = check_polar_identity(PolarIdentity::P9, &[linf(), orthant()]).unwrap();
        assert!(r.holds);
        let r = check_polar_identity(PolarIdentity::p3(&int(2)), &[l1()]).unwrap();
        assert!(r.holds);
        let r = check_polar_identity(PolarIdentity::p3(&frac(2, 7)), &[orthant()]).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let off = Polyhedron::cube(2, int(1), int(2)).unwrap();
        let e = check_polar_identity(PolarIdentity::P8, &[off, orthant()]).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(ref m) if m.contains("origin")));
        let e = check_polar_identity(PolarIdentity::P9, &[linf(), l1()]).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(ref m) if m.contains("cone")));
        let e = check_polar_identity(PolarIdentity::P2, &[linf(), l1()]).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
    }

    #[test]
    fn mismatched_sides_yield_witness() {
        let r = compare(PolarIdentity::P4, &l1(), &linf());
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert!(linf().contains(&w) && !l1().contains(&w));
    }
}
