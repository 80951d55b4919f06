//! The four optimal constants of a direct sum and their duality.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{build_sets, sigma, DirectSumInstance, Exponent};
use crate::duality_props::{optimal_constant, ConstantReport, Property, Quadruple};
use crate::error::{check_dim, Error, Result};
use crate::polyrat::{lp_solve, Extended, HRep, HalfSpace, LpStatus, Polyhedron, RatVector, Rational, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumProperty {
    /// `‖x‖ ≤ α‖ξ‖_p` whenever `x ∈ ∩(ξ_ω + C_ω)`.
    Normality,
    /// Every `x` splits as `Σξ`, `ξ ∈ ⊕C`, with `‖ξ‖_p ≤ β‖x‖`.
    Conormality,
    /// `‖ξ‖_p ≤ α‖Σξ‖` for `ξ ∈ ⊕C`.
    Additivity,
    /// Some `x ∈ ∩(ξ_ω − C_ω)` has `‖x‖ ≤ β‖ξ‖_p`.
    Coadditivity,
}

impl SumProperty {
    pub const ALL: [SumProperty; 4] = [
        SumProperty::Normality,
        SumProperty::Conormality,
        SumProperty::Additivity,
        SumProperty::Coadditivity,
    ];

    /// The property of the dual sum carrying the same constant.
    pub fn dual(self) -> SumProperty {
        match self {
            SumProperty::Normality => SumProperty::Conormality,
            SumProperty::Conormality => SumProperty::Normality,
            SumProperty::Additivity => SumProperty::Coadditivity,
            SumProperty::Coadditivity => SumProperty::Additivity,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SumProperty::Normality => "normality",
            SumProperty::Conormality => "conormality",
            SumProperty::Additivity => "additivity",
            SumProperty::Coadditivity => "coadditivity",
        }
    }

    fn generic(self) -> Property {
        match self {
            SumProperty::Normality => Property::Normal,
            SumProperty::Conormality => Property::Conormal,
            SumProperty::Additivity => Property::Additive,
            SumProperty::Coadditivity => Property::Coadditive,
        }
    }
}

impl fmt::Display for SumProperty {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SumProperty {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "normality" | "normal" => Ok(SumProperty::Normality),
            "conormality" | "conormal" => Ok(SumProperty::Conormality),
            "additivity" | "additive" => Ok(SumProperty::Additivity),
            "coadditivity" | "coadditive" => Ok(SumProperty::Coadditivity),
            other => Err(Error::Parse(format!("unknown property {other:?}"))),
        }
    }
}

/// The quadruple in `ℝ^{m·d}` whose optimal constant is the constant of
/// `property`, together with the generic property to evaluate on it.
pub fn quadruple_for(inst: &DirectSumInstance, property: SumProperty) -> Result<(Quadruple, Property)> {
    let s = build_sets(inst)?;
    let n = inst.ambient_dim();
    let q = match property {
        SumProperty::Normality => Quadruple::new(s.oplus_c, s.kinf, s.k1, s.ball_p),
        SumProperty::Conormality => Quadruple::new(s.oplus_c, s.s0, s.s1, s.ball_p),
        SumProperty::Additivity => Quadruple::new(s.oplus_c, Polyhedron::origin(n), s.ball_p, s.s1),
        SumProperty::Coadditivity => Quadruple::new(s.oplus_c, Polyhedron::whole_space(n), s.ball_p, s.k1),
    }?;
    Ok((q, property.generic()))
}

pub fn sum_constant(inst: &DirectSumInstance, property: SumProperty) -> Result<ConstantReport> {
    let (q, prop) = quadruple_for(inst, property)?;
    Ok(optimal_constant(prop, &q))
}

pub fn normality_constant(inst: &DirectSumInstance) -> Result<ConstantReport> {
    sum_constant(inst, SumProperty::Normality)
}

pub fn conormality_constant(inst: &DirectSumInstance) -> Result<ConstantReport> {
    sum_constant(inst, SumProperty::Conormality)
}

pub fn additivity_constant(inst: &DirectSumInstance) -> Result<ConstantReport> {
    sum_constant(inst, SumProperty::Additivity)
}

pub fn coadditivity_constant(inst: &DirectSumInstance) -> Result<ConstantReport> {
    sum_constant(inst, SumProperty::Coadditivity)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantPair {
    pub primal_property: SumProperty,
    pub dual_property: SumProperty,
    pub primal: Extended,
    pub dual: Extended,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualConstantsReport {
    pub p: Exponent,
    pub q: Exponent,
    pub pairs: Vec<ConstantPair>,
    pub all_hold: bool,
}

fn compare(inst: &DirectSumInstance, props: [SumProperty; 2]) -> Result<DualConstantsReport> {
    let dual = inst.dual();
    let mut pairs = Vec::new();
    for prop in props {
        let primal = sum_constant(inst, prop)?.alpha_star;
        let dual_value = sum_constant(&dual, prop.dual())?.alpha_star;
        pairs.push(ConstantPair {
            primal_property: prop,
            dual_property: prop.dual(),
            agree: primal == dual_value,
            primal,
            dual: dual_value,
        });
    }
    Ok(DualConstantsReport {
        p: inst.p.clone(),
        q: dual.p.clone(),
        all_hold: pairs.iter().all(|p| p.agree),
        pairs,
    })
}

/// Normality of `ℓp` against conormality of the dual `ℓq`, both ways.
pub fn verify_normality_duality(inst: &DirectSumInstance) -> Result<DualConstantsReport> {
    compare(inst, [SumProperty::Normality, SumProperty::Conormality])
}

/// Additivity of `ℓp` against coadditivity of the dual `ℓq`, both ways.
pub fn verify_additivity_duality(inst: &DirectSumInstance) -> Result<DualConstantsReport> {
    compare(inst, [SumProperty::Additivity, SumProperty::Coadditivity])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AndoDecomposition {
    pub x: RatVector,
    /// `ξ_ω ∈ C_ω`, one per index, summing to `x`.
    pub xi: Vec<RatVector>,
    /// `‖ξ‖_p`, minimal over all such decompositions.
    #[serde(with = "crate::polyrat::json::rational_str")]
    pub norm: Rational,
}

/// Minimum-norm decomposition `x = Σ ξ_ω` with `ξ_ω ∈ C_ω`.
///
/// LP over `(ξ, t)`: `t_ω ≥ ‖ξ_ω‖` per block for `p = 1`, a single `t` for
/// `p = ∞`, minimising the sum of the `t`.
pub fn ando_decompose(inst: &DirectSumInstance, x: &[Rational]) -> Result<AndoDecomposition> {
    inst.require_exact()?;
    let (d, m) = (inst.d(), inst.m());
    check_dim(d, x.len())?;
    let n = d * m;
    let nt = if inst.p == Exponent::One { m } else { 1 };
    let nvars = n + nt;
    let row = |entries: &[(usize, Rational)], rhs: Rational| {
        let mut v = RatVector::zeros(nvars);
        for (i, a) in entries {
            v[*i] += a;
        }
        HalfSpace::new(v, rhs)
    };
    let mut rows = Vec::new();
    for (w, c) in inst.cones().iter().enumerate() {
        for r in c.rows() {
            let e: Vec<_> = (0..d).map(|k| (w * d + k, r.normal[k].clone())).collect();
            rows.push(row(&e, r.rhs.clone()));
        }
        let t = n + if nt == m { w } else { 0 };
        for r in inst.base_ball().rows() {
            let mut e: Vec<_> = (0..d).map(|k| (w * d + k, r.normal[k].clone())).collect();
            e.push((t, -r.rhs.clone()));
            rows.push(row(&e, Rational::zero()));
        }
    }
    for (k, xk) in x.iter().enumerate() {
        let e: Vec<_> = (0..m).map(|w| (w * d + k, Rational::one())).collect();
        let ne: Vec<_> = e.iter().map(|(i, a)| (*i, -a.clone())).collect();
        rows.push(row(&e, xk.clone()));
        rows.push(row(&ne, -xk.clone()));
    }
    let mut objective = RatVector::zeros(nvars);
    for i in n..nvars {
        objective[i] = Rational::one();
    }
    let out = lp_solve(&objective, Sense::Min, &HRep::new(nvars, rows))?;
    match out.status {
        LpStatus::Optimal => {
            let z = out.point.expect("optimal point");
            let xi: Vec<RatVector> = z[..n].chunks(d).map(|c| RatVector(c.to_vec())).collect();
            debug_assert_eq!(sigma(&z[..n], d).unwrap().0, x);
            Ok(AndoDecomposition {
                x: RatVector(x.to_vec()),
                xi,
                norm: out.value.expect("optimal value"),
            })
        }
        LpStatus::Infeasible => Err(Error::NotGenerated(format!(
            "{} is not in the sum of the cones",
            RatVector(x.to_vec())
        ))),
        LpStatus::Unbounded => unreachable!("norms are bounded below"),
    }
}
