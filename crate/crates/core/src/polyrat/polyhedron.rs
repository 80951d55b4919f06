//! Closed convex polyhedra carried in both representations.
//!
//! A [`Polyhedron`] is always canonical: equality rows come first as
//! reduced-echelon `±` pairs folded into the sorted row list, facet rows are
//! reduced modulo the equalities and made primitive, vertices live in the
//! orthogonal complement of the lineality space, and every list is sorted.
//! Two polyhedra describe the same set iff they compare equal.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::cone_generators;
use super::linalg::{nullspace, orthogonal_basis, project_out, rank, rref};
use super::rational::{int, lex_cmp, primitive, primitive_ints, Extended, RatVector, Rational};
use crate::error::{check_dim, Error, Result};

/// One inequality `normal · x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: RatVector,
    pub rhs: Rational,
}

impl HalfSpace {
    pub fn new(normal: RatVector, rhs: Rational) -> Self {
        HalfSpace { normal, rhs }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.normal.dot(x) <= self.rhs
    }

    fn augmented(&self) -> Vec<Rational> {
        let mut v = self.normal.0.clone();
        v.push(self.rhs.clone());
        v
    }

    fn from_augmented(mut v: Vec<Rational>) -> Self {
        let rhs = v.pop().expect("augmented row is never empty");
        HalfSpace::new(RatVector(v), rhs)
    }

    fn primitive(&self) -> Self {
        HalfSpace::from_augmented(primitive(&self.augmented()))
    }
}

impl PartialOrd for HalfSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfSpace {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.normal, &other.normal).then_with(|| self.rhs.cmp(&other.rhs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HRep {
    pub dim: usize,
    pub rows: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(dim: usize, rows: Vec<HalfSpace>) -> Self {
        HRep { dim, rows }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.contains(x))
    }

    /// Whether `r` lies in the recession cone.
    pub fn recedes(&self, r: &[Rational]) -> bool {
        self.rows.iter().all(|row| !row.normal.dot(r).is_positive())
    }

    fn check(&self) -> Result<()> {
        for r in &self.rows {
            check_dim(self.dim, r.normal.dim())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<RatVector>,
    pub rays: Vec<RatVector>,
}

impl VRep {
    pub fn new(dim: usize, vertices: Vec<RatVector>, rays: Vec<RatVector>) -> Self {
        VRep { dim, vertices, rays }
    }

    fn check(&self) -> Result<()> {
        for g in self.vertices.iter().chain(&self.rays) {
            check_dim(self.dim, g.dim())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    h: HRep,
    v: VRep,
}

fn ints_to_rats(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Generators of `{x : A x <= b}`, not necessarily minimal modulo lineality.
/// `None` when the system is infeasible.
fn raw_h_to_v(h: &HRep) -> Option<VRep> {
    let n = h.dim;
    let mut rows: Vec<Vec<BigInt>> = h
        .rows
        .iter()
        .map(|r| {
            let mut a = r.normal.0.clone();
            a.push(-&r.rhs);
            primitive_ints(&a)
        })
        .collect();
    let mut t = vec![BigInt::zero(); n + 1];
    t[n] = BigInt::from(-1);
    rows.push(t);
    let g = cone_generators(&rows, n + 1);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in g.rays {
        let q = ints_to_rats(&r);
        if q[n].is_positive() {
            vertices.push(RatVector(q[..n].iter().map(|x| x / &q[n]).collect()));
        } else {
            rays.push(RatVector(q[..n].to_vec()));
        }
    }
    for l in g.lineality {
        let q = RatVector(ints_to_rats(&l[..n]));
        rays.push(q.neg());
        rays.push(q);
    }
    if vertices.is_empty() {
        None
    } else {
        Some(VRep::new(n, vertices, rays))
    }
}

/// Valid inequalities generating the polar cone of a nonempty V-rep.
fn raw_v_to_h(v: &VRep) -> HRep {
    let n = v.dim;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for p in &v.vertices {
        let mut a = p.0.clone();
        a.push(-Rational::one());
        rows.push(primitive_ints(&a));
    }
    for r in &v.rays {
        let mut a = r.0.clone();
        a.push(Rational::zero());
        rows.push(primitive_ints(&a));
    }
    let g = cone_generators(&rows, n + 1);
    let mut out = Vec::new();
    let to_row = |w: &[BigInt]| HalfSpace::from_augmented(ints_to_rats(w));
    for r in &g.rays {
        let row = to_row(r);
        if !row.normal.is_zero() {
            out.push(row);
        }
    }
    for l in &g.lineality {
        let row = to_row(l);
        if !row.normal.is_zero() {
            out.push(HalfSpace::new(row.normal.neg(), -&row.rhs));
            out.push(row);
        }
    }
    HRep::new(n, out)
}

fn empty_hrep(dim: usize) -> HRep {
    HRep::new(dim, vec![HalfSpace::new(RatVector::zeros(dim), int(-1))])
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            h: empty_hrep(dim),
            v: VRep::new(dim, Vec::new(), Vec::new()),
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::from_h(HRep::new(dim, Vec::new())).expect("no rows to mismatch")
    }

    pub fn origin(dim: usize) -> Self {
        Self::from_v(VRep::new(dim, vec![RatVector::zeros(dim)], Vec::new()))
            .expect("dimension is consistent")
    }

    pub fn from_h(h: HRep) -> Result<Self> {
        h.check()?;
        Ok(match raw_h_to_v(&h) {
            None => Self::empty(h.dim),
            Some(v) => canonicalize(&h, &v),
        })
    }

    pub fn from_v(v: VRep) -> Result<Self> {
        v.check()?;
        if v.vertices.is_empty() {
            return Ok(Self::empty(v.dim));
        }
        let h = raw_v_to_h(&v);
        Ok(canonicalize(&h, &v))
    }

    /// Builds from two complete, possibly redundant, descriptions of the
    /// same nonempty set. Skips the double description step.
    pub(crate) fn from_parts(h: &HRep, v: &VRep) -> Self {
        if v.vertices.is_empty() {
            return Self::empty(h.dim);
        }
        canonicalize(h, v)
    }

    /// Box `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: Rational, hi: Rational) -> Result<Self> {
        let mut rows = Vec::new();
        for k in 0..dim {
            rows.push(HalfSpace::new(RatVector::unit(dim, k), hi.clone()));
            rows.push(HalfSpace::new(RatVector::unit(dim, k).neg(), -&lo));
        }
        Self::from_h(HRep::new(dim, rows))
    }

    /// Conic hull of the given rays (with apex 0).
    pub fn cone(dim: usize, rays: Vec<RatVector>) -> Result<Self> {
        Self::from_v(VRep::new(dim, vec![RatVector::zeros(dim)], rays))
    }

    /// Convex hull of points.
    pub fn hull(dim: usize, points: Vec<RatVector>) -> Result<Self> {
        Self::from_v(VRep::new(dim, points, Vec::new()))
    }

    pub fn dim(&self) -> usize {
        self.h.dim
    }

    pub fn h(&self) -> &HRep {
        &self.h
    }

    pub fn v(&self) -> &VRep {
        &self.v
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.v.vertices
    }

    pub fn rays(&self) -> &[RatVector] {
        &self.v.rays
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.h.rows
    }

    pub fn is_empty(&self) -> bool {
        self.v.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.v.rays.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.h.contains(x)
    }

    pub fn contains_origin(&self) -> bool {
        !self.is_empty() && self.h.rows.iter().all(|r| !r.rhs.is_negative())
    }

    /// Nonempty and closed under nonnegative scaling.
    pub fn is_cone(&self) -> bool {
        self.v.vertices.len() == 1 && self.v.vertices[0].is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.neg() == *self
    }

    /// Cross-membership check of the two representations.
    pub fn is_consistent(&self) -> bool {
        self.v.vertices.iter().all(|p| self.h.contains(p))
            && self.v.rays.iter().all(|r| self.h.recedes(r))
            && self == &canonicalize(&self.h, &self.v)
    }

    pub fn neg(&self) -> Polyhedron {
        if self.is_empty() {
            return self.clone();
        }
        let h = HRep::new(
            self.dim(),
            self.h
                .rows
                .iter()
                .map(|r| HalfSpace::new(r.normal.neg(), r.rhs.clone()))
                .collect(),
        );
        let v = VRep::new(
            self.dim(),
            self.v.vertices.iter().map(RatVector::neg).collect(),
            self.v.rays.iter().map(RatVector::neg).collect(),
        );
        canonicalize(&h, &v)
    }

    pub fn scale(&self, lambda: &Rational) -> Result<Polyhedron> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveScale(lambda.to_string()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let mut rows: Vec<HalfSpace> = self
            .h
            .rows
            .iter()
            .map(|r| HalfSpace::new(r.normal.clone(), &r.rhs * lambda).primitive())
            .collect();
        rows.sort();
        let vertices = self.v.vertices.iter().map(|p| p.scaled(lambda)).collect();
        Ok(Polyhedron {
            h: HRep::new(self.dim(), rows),
            v: VRep::new(self.dim(), vertices, self.v.rays.clone()),
        })
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.dim()));
        }
        let mut vertices = Vec::new();
        for p in self.vertices() {
            for q in other.vertices() {
                vertices.push(p.add(q));
            }
        }
        let mut rays = self.v.rays.clone();
        rays.extend(other.v.rays.iter().cloned());
        Self::from_v(VRep::new(self.dim(), vertices, rays))
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.dim()));
        }
        let mut rows = self.h.rows.clone();
        rows.extend(other.h.rows.iter().cloned());
        Self::from_h(HRep::new(self.dim(), rows))
    }

    /// Whether `inner ⊆ self`.
    pub fn includes(&self, inner: &Polyhedron) -> Result<bool> {
        check_dim(self.dim(), inner.dim())?;
        Ok(inner.vertices().iter().all(|p| self.h.contains(p))
            && inner.rays().iter().all(|r| self.h.recedes(r)))
    }

    /// A generator of `inner` outside `self`, if any. Rays are reported as
    /// `vertex + ray` so the witness is always a point of `inner`.
    pub fn escape_witness(&self, inner: &Polyhedron) -> Option<RatVector> {
        if let Some(p) = inner.vertices().iter().find(|p| !self.h.contains(p)) {
            return Some(p.clone());
        }
        let r = inner.rays().iter().find(|r| !self.h.recedes(r))?;
        let base = inner.vertices()[0].clone();
        // walk far enough along r to leave every violated halfspace
        let mut t = Rational::one();
        for row in &self.h.rows {
            let ar = row.normal.dot(r);
            if ar.is_positive() {
                let need = (&row.rhs - row.normal.dot(&base)) / &ar + Rational::one();
                if need > t {
                    t = need;
                }
            }
        }
        Some(base.add(&r.scaled(&t)))
    }

    /// Minkowski functional `min{t >= 0 : x ∈ t·self}`; requires `0 ∈ self`.
    pub fn gauge(&self, x: &[Rational]) -> Result<Extended> {
        check_dim(self.dim(), x.len())?;
        if !self.contains_origin() {
            return Err(Error::MissingOrigin);
        }
        let mut best = Rational::zero();
        for row in &self.h.rows {
            let ax = row.normal.dot(x);
            if row.rhs.is_zero() {
                if ax.is_positive() {
                    return Ok(Extended::Infinite);
                }
            } else {
                let t = ax / &row.rhs;
                if t > best {
                    best = t;
                }
            }
        }
        Ok(Extended::Finite(best))
    }

    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Polyhedron::cone(self.dim(), self.v.rays.clone())
    }

    /// `α·self` for `α > 0`; `0·self` is read as the recession cone, which is
    /// `∩_{α>0} α·self` when `0 ∈ self`.
    pub fn dilate(&self, alpha: &Rational) -> Result<Polyhedron> {
        if alpha.is_zero() {
            self.recession_cone()
        } else {
            self.scale(alpha)
        }
    }

    /// Dimension of the affine hull; `-1` for the empty set.
    pub fn affine_dim(&self) -> isize {
        if self.is_empty() {
            return -1;
        }
        let gens = homogenized(&self.v.vertices, &self.v.rays);
        rank(&gens) as isize - 1
    }

    /// Basis of the lineality space, reduced and primitive.
    pub fn lineality(&self) -> Vec<RatVector> {
        lineality_basis(&self.h.rows, self.dim())
    }
}

fn homogenized(points: &[RatVector], rays: &[RatVector]) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(points.len() + rays.len());
    for p in points {
        let mut v = p.0.clone();
        v.push(Rational::one());
        out.push(v);
    }
    for r in rays {
        let mut v = r.0.clone();
        v.push(Rational::zero());
        out.push(v);
    }
    out
}

fn lineality_basis(rows: &[HalfSpace], dim: usize) -> Vec<RatVector> {
    let normals: Vec<Vec<Rational>> = rows.iter().map(|r| r.normal.0.clone()).collect();
    let (red, _) = rref(&nullspace(&normals, dim));
    red.iter().map(|v| RatVector(primitive(v))).collect()
}

fn canonicalize(h: &HRep, v: &VRep) -> Polyhedron {
    let n = h.dim;
    let tight_everywhere = |row: &HalfSpace| {
        v.vertices.iter().all(|p| row.normal.dot(p) == row.rhs)
            && v.rays.iter().all(|r| row.normal.dot(r).is_zero())
    };

    let (eq_rows, other): (Vec<&HalfSpace>, Vec<&HalfSpace>) =
        h.rows.iter().partition(|r| tight_everywhere(r));
    let (eqs, eq_pivots) = rref(&eq_rows.iter().map(|r| r.augmented()).collect::<Vec<_>>());

    let mut rows: Vec<HalfSpace> = Vec::new();
    for e in &eqs {
        let row = HalfSpace::from_augmented(primitive(e));
        rows.push(HalfSpace::new(row.normal.neg(), -&row.rhs));
        rows.push(row);
    }

    let full_dim = rank(&homogenized(&v.vertices, &v.rays));
    let mut facets: Vec<HalfSpace> = Vec::new();
    for r in other {
        let mut aug = r.augmented();
        for (e, &c) in eqs.iter().zip(&eq_pivots) {
            if !aug[c].is_zero() {
                let f = aug[c].clone();
                for (x, y) in aug.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        let row = HalfSpace::from_augmented(primitive(&aug));
        if row.normal.is_zero() || facets.contains(&row) {
            continue;
        }
        let tp: Vec<RatVector> = v
            .vertices
            .iter()
            .filter(|p| row.normal.dot(p) == row.rhs)
            .cloned()
            .collect();
        let tr: Vec<RatVector> = v
            .rays
            .iter()
            .filter(|d| row.normal.dot(d).is_zero())
            .cloned()
            .collect();
        if !tp.is_empty() && rank(&homogenized(&tp, &tr)) + 1 == full_dim {
            facets.push(row);
        }
    }
    rows.extend(facets);
    rows.sort();

    let lin = lineality_basis(&rows, n);
    let ortho = orthogonal_basis(&lin.iter().map(|l| l.0.clone()).collect::<Vec<_>>());
    let pointed_rank = n - lin.len();
    let normals_tight = |pred: &dyn Fn(&HalfSpace) -> bool| -> usize {
        rank(
            &rows
                .iter()
                .filter(|r| pred(r))
                .map(|r| r.normal.0.clone())
                .collect::<Vec<_>>(),
        )
    };

    let mut vertices: Vec<RatVector> = Vec::new();
    for p in &v.vertices {
        let q = RatVector(project_out(p, &ortho));
        if vertices.contains(&q) {
            continue;
        }
        if normals_tight(&|r: &HalfSpace| r.normal.dot(&q) == r.rhs) == pointed_rank {
            vertices.push(q);
        }
    }
    vertices.sort();

    let mut rays: Vec<RatVector> = Vec::new();
    for d in &v.rays {
        let q = project_out(d, &ortho);
        if q.iter().all(Zero::is_zero) {
            continue;
        }
        let q = RatVector(primitive(&q));
        if rays.contains(&q) {
            continue;
        }
        if pointed_rank >= 1
            && normals_tight(&|r: &HalfSpace| r.normal.dot(&q).is_zero()) + 1 == pointed_rank
        {
            rays.push(q);
        }
    }
    for l in lin {
        rays.push(l.neg());
        rays.push(l);
    }
    rays.sort();
    rays.dedup();

    Polyhedron {
        h: HRep::new(n, rows),
        v: VRep::new(n, vertices, rays),
    }
}

pub fn h_to_v(h: &HRep) -> Result<VRep> {
    Ok(Polyhedron::from_h(h.clone())?.v)
}

pub fn v_to_h(v: &VRep) -> Result<HRep> {
    Ok(Polyhedron::from_v(v.clone())?.h)
}
