//! Direct sums `ℓp(Ω, X)` over a finite index set with a polyhedral norm
//! on `X = ℝ^d`.
//!
//! A tuple `ξ = (ξ_0, …, ξ_{m-1})` lives in `ℝ^{m·d}` in ω-major order:
//! coordinates `ω·d .. ω·d + d` hold `ξ_ω`. The pairing of the sum with its
//! dual is then the plain dot product.

mod constants;
mod sampled;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::polar_calc::one_sided_polar;
use crate::polyrat::{
    format_rational, parse_rational, HRep, HalfSpace, Polyhedron, PolyhedronJson, RatVector,
    Rational, VRep,
};

pub use constants::{
    additivity_constant, ando_decompose, coadditivity_constant, conormality_constant,
    normality_constant, quadruple_for, sum_constant, verify_normality_duality, verify_additivity_duality, AndoDecomposition,
    ConstantPair, DualConstantsReport, SumProperty,
};
pub use sampled::{sampled_lp_mode, SampledRatio, SampledReport};

/// Largest number of rows or generators a direct-sum set may carry.
pub const MAX_SUM_GENERATORS: usize = 4096;

/// The exponent of the direct sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    One,
    Infinity,
    /// `1 < p < ∞`, floating-point sampled mode only.
    Sampled(Rational),
}

impl Exponent {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Exponent::Sampled(_))
    }

    /// Hölder conjugate.
    pub fn conjugate(&self) -> Exponent {
        match self {
            Exponent::One => Exponent::Infinity,
            Exponent::Infinity => Exponent::One,
            Exponent::Sampled(p) => Exponent::Sampled(p / (p - Rational::one())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Infinity => f64::INFINITY,
            Exponent::Sampled(p) => crate::polyrat::to_f64(p),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Exponent::One => f.write_str("1"),
            Exponent::Infinity => f.write_str("inf"),
            Exponent::Sampled(p) => f.write_str(&format_rational(p)),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        let p = if s.contains('.') || s.contains('e') || s.contains('E') {
            let f: f64 = s.parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
            Rational::from_float(f).ok_or_else(|| Error::Parse(format!("bad exponent {s:?}")))?
        } else {
            parse_rational(s)?
        };
        if p == Rational::one() {
            Ok(Exponent::One)
        } else if p > Rational::one() {
            Ok(Exponent::Sampled(p))
        } else {
            Err(Error::Parse(format!("exponent must be >= 1, got {s}")))
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            _ => return Err(serde::de::Error::custom("exponent must be a string or number")),
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumInstance {
    d: usize,
    m: usize,
    pub p: Exponent,
    base_ball: Polyhedron,
    cones: Vec<Polyhedron>,
}

impl DirectSumInstance {
    pub fn new(base_ball: Polyhedron, cones: Vec<Polyhedron>, p: Exponent) -> Result<Self> {
        let d = base_ball.dim();
        let m = cones.len();
        if d == 0 || m == 0 {
            return Err(Error::InvalidInstance("need d >= 1 and at least one cone".into()));
        }
        for c in &cones {
            check_dim(d, c.dim())?;
            if !c.is_cone() {
                return Err(Error::InvalidInstance("every C_ω must be a cone".into()));
            }
        }
        if !base_ball.is_bounded() || base_ball.affine_dim() != d as isize {
            return Err(Error::InvalidInstance(
                "base ball must be bounded and full-dimensional".into(),
            ));
        }
        if !base_ball.is_symmetric() {
            return Err(Error::InvalidInstance("base ball must be symmetric".into()));
        }
        Ok(DirectSumInstance {
            d,
            m,
            p,
            base_ball,
            cones,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient_dim(&self) -> usize {
        self.m * self.d
    }

    pub fn base_ball(&self) -> &Polyhedron {
        &self.base_ball
    }

    pub fn cones(&self) -> &[Polyhedron] {
        &self.cones
    }

    pub fn with_exponent(&self, p: Exponent) -> Self {
        DirectSumInstance { p, ..self.clone() }
    }

    /// Polar base ball, polar cones `C_ω°`, conjugate exponent.
    pub fn dual(&self) -> DirectSumInstance {
        let pol = |p: &Polyhedron| one_sided_polar(p).expect("nonempty");
        DirectSumInstance {
            d: self.d,
            m: self.m,
            p: self.p.conjugate(),
            base_ball: pol(&self.base_ball),
            cones: self.cones.iter().map(pol).collect(),
        }
    }

    /// Whether `Σ_ω C_ω = ℝ^d`.
    pub fn cones_generate(&self) -> bool {
        let rays: Vec<RatVector> = self.cones.iter().flat_map(|c| c.rays().to_vec()).collect();
        Polyhedron::cone(self.d, rays).expect("dimensions agree") == Polyhedron::whole_space(self.d)
    }

    pub fn norm_f64(&self, x: &[f64]) -> f64 {
        gauge_f64(&self.base_ball, x)
    }

    pub(crate) fn require_exact(&self) -> Result<()> {
        if self.p.is_exact() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(format!(
                "exact mode needs p in {{1, inf}}, got {}",
                self.p
            )))
        }
    }
}

/// Gauge of a polytope containing 0 in its interior, in floating point.
pub(crate) fn gauge_f64(ball: &Polyhedron, x: &[f64]) -> f64 {
    ball.rows()
        .iter()
        .map(|r| {
            let ax: f64 = r.normal.to_f64().iter().zip(x).map(|(a, b)| a * b).sum();
            ax / crate::polyrat::to_f64(&r.rhs)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectSumJson {
    pub d: usize,
    pub m: usize,
    pub p: Exponent,
    pub base_ball: PolyhedronJson,
    pub cones: Vec<PolyhedronJson>,
}

impl DirectSumJson {
    pub fn into_instance(self) -> Result<DirectSumInstance> {
        let with_dim = |mut p: PolyhedronJson| {
            p.dim.get_or_insert(self.d);
            p.into_polyhedron()
        };
        let base = with_dim(self.base_ball.clone())?;
        check_dim(self.d, base.dim())?;
        let cones = self
            .cones
            .iter()
            .cloned()
            .map(with_dim)
            .collect::<Result<Vec<_>>>()?;
        if cones.len() != self.m {
            return Err(Error::InvalidInstance(format!(
                "m = {} but {} cones given",
                self.m,
                cones.len()
            )));
        }
        DirectSumInstance::new(base, cones, self.p)
    }
}

impl Serialize for DirectSumInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DirectSumJson {
            d: self.d,
            m: self.m,
            p: self.p.clone(),
            base_ball: (&self.base_ball).into(),
            cones: self.cones.iter().map(PolyhedronJson::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirectSumInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DirectSumJson::deserialize(d)?
            .into_instance()
            .map_err(serde::de::Error::custom)
    }
}

/// Block-wise sum `Σξ`.
pub fn sigma(xi: &[Rational], d: usize) -> Result<RatVector> {
    if d == 0 || !xi.len().is_multiple_of(d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: xi.len(),
        });
    }
    let mut out = RatVector::zeros(d);
    for block in xi.chunks(d) {
        for (o, x) in out.iter_mut().zip(block) {
            *o += x;
        }
    }
    Ok(out)
}

/// Average of the blocks, the constant part for finite `Ω`.
pub fn const_part(xi: &[Rational], d: usize) -> Result<RatVector> {
    let m = Rational::from_integer(((xi.len() / d.max(1)) as i64).into());
    Ok(sigma(xi, d)?.scaled(&m.recip()))
}

/// `δ_ω ⊗ x`.
pub fn embed_delta(omega: usize, x: &[Rational], m: usize) -> Result<RatVector> {
    if omega >= m {
        return Err(Error::InvalidInstance(format!("index {omega} out of range 0..{m}")));
    }
    let d = x.len();
    let mut out = RatVector::zeros(m * d);
    out[omega * d..(omega + 1) * d].clone_from_slice(x);
    Ok(out)
}

/// `χ_Ω ⊗ x`.
pub fn embed_const(x: &[Rational], m: usize) -> RatVector {
    RatVector(x.iter().cloned().cycle().take(m * x.len()).collect())
}

/// The sets of the direct-sum construction, all in `ℝ^{m·d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub struct SumSets {
    #[serde(rename = "oplusC")]
    pub oplus_c: Polyhedron,
    #[serde(rename = "S0")]
    pub s0: Polyhedron,
    #[serde(rename = "S1")]
    pub s1: Polyhedron,
    #[serde(rename = "Kinf")]
    pub kinf: Polyhedron,
    #[serde(rename = "K1")]
    pub k1: Polyhedron,
    pub ball_p: Polyhedron,
}

struct Blocks {
    d: usize,
    m: usize,
}

impl Blocks {
    fn n(&self) -> usize {
        self.d * self.m
    }

    fn row_on(&self, omega: usize, a: &[Rational], rhs: Rational) -> HalfSpace {
        let mut v = RatVector::zeros(self.n());
        v[omega * self.d..(omega + 1) * self.d].clone_from_slice(a);
        HalfSpace::new(v, rhs)
    }

    fn row_all(&self, a: &[Rational], rhs: Rational) -> HalfSpace {
        HalfSpace::new(embed_const(a, self.m), rhs)
    }

    fn delta(&self, omega: usize, x: &[Rational]) -> RatVector {
        embed_delta(omega, x, self.m).expect("index in range")
    }

    /// `±(δ_ω − δ_0) ⊗ e_k`: spans the kernel of `Σ`.
    fn kernel_lines(&self) -> Vec<RatVector> {
        let mut out = Vec::new();
        for omega in 1..self.m {
            for k in 0..self.d {
                let e = RatVector::unit(self.d, k);
                let v = self.delta(omega, &e).sub(&self.delta(0, &e));
                out.push(v.neg());
                out.push(v);
            }
        }
        out
    }

    /// Rows forcing `ξ_ω = ξ_0` for every ω.
    fn constant_rows(&self) -> Vec<HalfSpace> {
        let mut out = Vec::new();
        for omega in 1..self.m {
            for k in 0..self.d {
                let e = RatVector::unit(self.d, k);
                let v = self.delta(omega, &e).sub(&self.delta(0, &e));
                out.push(HalfSpace::new(v.neg(), Rational::zero()));
                out.push(HalfSpace::new(v, Rational::zero()));
            }
        }
        out
    }
}

fn tuples(m: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    let count = (k as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if count > MAX_SUM_GENERATORS as u128 {
        return Err(Error::TooLarge(format!(
            "{k}^{m} = {count} block combinations exceeds {MAX_SUM_GENERATORS}"
        )));
    }
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Unit ball of `ℓ1(Ω, X)`: hull of the block-embedded base balls. Its
/// facets pair one normalised base facet per block.
fn l1_ball(b: &Blocks, base: &Polyhedron) -> Result<Polyhedron> {
    let n = b.n();
    let vertices: Vec<RatVector> = (0..b.m)
        .flat_map(|w| base.vertices().iter().map(move |v| (w, v)))
        .map(|(w, v)| b.delta(w, v))
        .collect();
    let facets: Vec<RatVector> = base
        .rows()
        .iter()
        .map(|r| r.normal.scaled(&r.rhs.recip()))
        .collect();
    let rows = tuples(b.m, facets.len())?
        .into_iter()
        .map(|t| {
            let v: Vec<Rational> = t.iter().flat_map(|&i| facets[i].0.clone()).collect();
            HalfSpace::new(RatVector(v), Rational::one())
        })
        .collect();
    Ok(Polyhedron::from_parts(&HRep::new(n, rows), &VRep::new(n, vertices, vec![])))
}

/// Unit ball of `ℓ∞(Ω, X)`: product of the base balls.
fn linf_ball(b: &Blocks, base: &Polyhedron) -> Result<Polyhedron> {
    let n = b.n();
    let rows = (0..b.m)
        .flat_map(|w| base.rows().iter().map(move |r| b.row_on(w, &r.normal, r.rhs.clone())))
        .collect();
    let vertices = tuples(b.m, base.vertices().len())?
        .into_iter()
        .map(|t| RatVector(t.iter().flat_map(|&i| base.vertices()[i].0.clone()).collect()))
        .collect();
    Ok(Polyhedron::from_parts(&HRep::new(n, rows), &VRep::new(n, vertices, vec![])))
}

pub fn unit_ball(inst: &DirectSumInstance) -> Result<Polyhedron> {
    let b = Blocks {
        d: inst.d,
        m: inst.m,
    };
    match inst.p {
        Exponent::One => l1_ball(&b, &inst.base_ball),
        Exponent::Infinity => linf_ball(&b, &inst.base_ball),
        Exponent::Sampled(_) => Err(Error::InvalidInstance(
            "the unit ball is polyhedral only for p in {1, inf}".into(),
        )),
    }
}

pub fn build_sets(inst: &DirectSumInstance) -> Result<SumSets> {
    inst.require_exact()?;
    let b = Blocks {
        d: inst.d,
        m: inst.m,
    };
    let n = b.n();
    let zero = RatVector::zeros(n);
    let base = &inst.base_ball;

    let oplus_c = {
        let rows = inst
            .cones
            .iter()
            .enumerate()
            .flat_map(|(w, c)| c.rows().iter().map(move |r| (w, r)))
            .map(|(w, r)| b.row_on(w, &r.normal, r.rhs.clone()))
            .collect();
        let rays = inst
            .cones
            .iter()
            .enumerate()
            .flat_map(|(w, c)| c.rays().iter().map(move |r| (w, r)))
            .map(|(w, r)| b.delta(w, r))
            .collect();
        Polyhedron::from_parts(&HRep::new(n, rows), &VRep::new(n, vec![zero.clone()], rays))
    };

    let sum_rows = |extra: Vec<HalfSpace>| -> Vec<HalfSpace> {
        let mut rows = extra;
        for k in 0..b.d {
            let e = RatVector::unit(b.d, k);
            rows.push(b.row_all(&e, Rational::zero()));
            rows.push(b.row_all(&e.neg(), Rational::zero()));
        }
        rows
    };
    let s0 = Polyhedron::from_parts(
        &HRep::new(n, sum_rows(vec![])),
        &VRep::new(n, vec![zero.clone()], b.kernel_lines()),
    );
    let s1 = {
        let rows = base
            .rows()
            .iter()
            .map(|r| b.row_all(&r.normal, r.rhs.clone()))
            .collect();
        let vertices = base.vertices().iter().map(|v| b.delta(0, v)).collect();
        Polyhedron::from_parts(&HRep::new(n, rows), &VRep::new(n, vertices, b.kernel_lines()))
    };

    let const_lines: Vec<RatVector> = (0..b.d)
        .flat_map(|k| {
            let v = embed_const(&RatVector::unit(b.d, k), b.m);
            [v.neg(), v]
        })
        .collect();
    let kinf = Polyhedron::from_parts(
        &HRep::new(n, b.constant_rows()),
        &VRep::new(n, vec![zero], const_lines),
    );
    let k1 = {
        let mut rows = b.constant_rows();
        rows.extend(base.rows().iter().map(|r| b.row_on(0, &r.normal, r.rhs.clone())));
        let vertices = base.vertices().iter().map(|v| embed_const(v, b.m)).collect();
        Polyhedron::from_parts(&HRep::new(n, rows), &VRep::new(n, vertices, vec![]))
    };

    Ok(SumSets {
        oplus_c,
        s0,
        s1,
        kinf,
        k1,
        ball_p: unit_ball(inst)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarCheck {
    pub set: &'static str,
    pub predicted: &'static str,
    pub holds: bool,
    pub witness: Option<RatVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPolarReport {
    pub checks: Vec<PolarCheck>,
    pub all_hold: bool,
}

/// Polars of the six sets against the sets of the dual instance:
/// `⊕C ↦ ⊕C°`, `K∞ ↦ S0`, `K1 ↦ S1`, `S1 ↦ K1`, `S0 ↦ K∞`, `ball_p ↦ ball_q`.
pub fn check_block_polars(inst: &DirectSumInstance) -> Result<BlockPolarReport> {
    let primal = build_sets(inst)?;
    let dual = build_sets(&inst.dual())?;
    let pairs: [(&'static str, &Polyhedron, &'static str, &Polyhedron); 6] = [
        ("oplusC", &primal.oplus_c, "oplusC°", &dual.oplus_c),
        ("Kinf", &primal.kinf, "S0", &dual.s0),
        ("K1", &primal.k1, "S1", &dual.s1),
        ("S1", &primal.s1, "K1", &dual.k1),
        ("S0", &primal.s0, "Kinf", &dual.kinf),
        ("ball_p", &primal.ball_p, "ball_q", &dual.ball_p),
    ];
    let mut checks = Vec::new();
    for (set, p, predicted, q) in pairs {
        let polar = one_sided_polar(p)?;
        checks.push(PolarCheck {
            set,
            predicted,
            holds: polar == *q,
            witness: q.escape_witness(&polar).or_else(|| polar.escape_witness(q)),
        });
    }
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(BlockPolarReport { checks, all_hold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::{frac, int};

    fn seg() -> Polyhedron {
        Polyhedron::cube(1, int(-1), int(1)).unwrap()
    }

    fn half_line() -> Polyhedron {
        Polyhedron::cone(1, vec![RatVector::from_ints(&[1])]).unwrap()
    }

    fn two_half_lines(p: Exponent) -> DirectSumInstance {
        DirectSumInstance::new(seg(), vec![half_line(), half_line()], p).unwrap()
    }

    fn hull(ps: &[&[i64]]) -> Polyhedron {
        Polyhedron::hull(2, ps.iter().map(|p| RatVector::from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn sets_of_the_one_dimensional_instance() {
        let s = build_sets(&two_half_lines(Exponent::One)).unwrap();
        let orthant = Polyhedron::cone(2, vec![RatVector::from_ints(&[1, 0]), RatVector::from_ints(&[0, 1])]).unwrap();
        assert_eq!(s.oplus_c, orthant);
        let line = Polyhedron::from_h(HRep::new(
            2,
            vec![
                HalfSpace::new(RatVector::from_ints(&[1, 1]), int(0)),
                HalfSpace::new(RatVector::from_ints(&[-1, -1]), int(0)),
            ],
        ))
        .unwrap();
        assert_eq!(s.s0, line);
        assert_eq!(s.k1, hull(&[&[1, 1], &[-1, -1]]));
        let strip = Polyhedron::from_h(HRep::new(
            2,
            vec![
                HalfSpace::new(RatVector::from_ints(&[1, 1]), int(1)),
                HalfSpace::new(RatVector::from_ints(&[-1, -1]), int(1)),
            ],
        ))
        .unwrap();
        assert_eq!(s.s1, strip);
        assert_eq!(s.ball_p, hull(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        let s = build_sets(&two_half_lines(Exponent::Infinity)).unwrap();
        assert_eq!(s.ball_p, Polyhedron::cube(2, int(-1), int(1)).unwrap());
        for set in [&s.oplus_c, &s.s0, &s.s1, &s.kinf, &s.k1, &s.ball_p] {
            assert!(set.is_consistent());
        }
    }

    #[test]
    fn block_operators() {
        let xi = RatVector::from_ints(&[1, 0, 0, 1]);
        assert_eq!(sigma(&xi, 2).unwrap(), RatVector::from_ints(&[1, 1]));
        assert_eq!(sigma(&RatVector::zeros(4), 2).unwrap(), RatVector::zeros(2));
        assert_eq!(sigma(&RatVector::from_ints(&[2, 3]), 2).unwrap(), RatVector::from_ints(&[2, 3]));
        assert_eq!(
            const_part(&RatVector::from_ints(&[2, 3, 2, 3]), 2).unwrap(),
            RatVector::from_ints(&[2, 3])
        );
        assert_eq!(const_part(&xi, 2).unwrap(), RatVector(vec![frac(1, 2), frac(1, 2)]));
        assert_eq!(
            embed_delta(1, &RatVector::from_ints(&[1, 0]), 2).unwrap(),
            RatVector::from_ints(&[0, 0, 1, 0])
        );
        assert_eq!(
            embed_const(&RatVector::from_ints(&[1, 0]), 2),
            RatVector::from_ints(&[1, 0, 1, 0])
        );
        let x = RatVector::from_ints(&[3, -2]);
        assert_eq!(sigma(&embed_const(&x, 3), 2).unwrap(), x.scaled(&int(3)));
        assert!(embed_delta(2, &x, 2).is_err());
    }

    #[test]
    fn six_polars_of_the_one_dimensional_instance() {
        for p in [Exponent::One, Exponent::Infinity] {
            let r = check_block_polars(&two_half_lines(p)).unwrap();
            assert!(r.all_hold, "{r:?}");
        }
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("1".parse::<Exponent>().unwrap(), Exponent::One);
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Sampled(int(2)));
        assert_eq!("1.5".parse::<Exponent>().unwrap(), Exponent::Sampled(frac(3, 2)));
        assert_eq!(Exponent::Sampled(int(3)).conjugate(), Exponent::Sampled(frac(3, 2)));
        assert!("1/2".parse::<Exponent>().is_err());
    }

    #[test]
    fn instance_validation_and_json() {
        let wedge = Polyhedron::cube(1, int(0), int(1)).unwrap();
        assert!(DirectSumInstance::new(seg(), vec![wedge], Exponent::One).is_err());
        let lopsided = Polyhedron::cube(1, int(-1), int(2)).unwrap();
        assert!(DirectSumInstance::new(lopsided, vec![half_line()], Exponent::One).is_err());
        let inst = two_half_lines(Exponent::Infinity);
        let s = serde_json::to_string(&inst).unwrap();
        let back: DirectSumInstance = serde_json::from_str(&s).unwrap();
        assert_eq!(back, inst);
        let raw = r#"{"d": 1, "m": 2, "p": "inf", "base_ball": {"h": [[1, 1], [-1, 1]]},
                      "cones": [{"h": [[-1, 0]]}, {"v": {"vertices": [[0]], "rays": [[1]]}}]}"#;
        let parsed: DirectSumInstance = serde_json::from_str(raw).unwrap();
        assert_eq!(parsed, inst);
    }
}
