//! Seeded generators for randomized instances.
//!
//! Generator entries are small integers in `[-5, 5]`; hypotheses are met by
//! rejection sampling. Everything is driven by a ChaCha stream so a seed
//! fixes the instance sequence on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyrat::{int, HRep, HalfSpace, Polyhedron, RatVector, VRep};

pub type InstanceRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_vector(rng: &mut impl Rng, dim: usize, bound: i64) -> RatVector {
    RatVector((0..dim).map(|_| int(rng.random_range(-bound..=bound))).collect())
}

fn nonzero_vector(rng: &mut impl Rng, dim: usize, bound: i64) -> RatVector {
    loop {
        let v = int_vector(rng, dim, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Arbitrary nonempty polyhedron, possibly unbounded, possibly missing 0.
pub fn polyhedron(rng: &mut impl Rng, dim: usize) -> Polyhedron {
    let k = rng.random_range(1..=dim + 2);
    let points = (0..k).map(|_| int_vector(rng, dim, 5)).collect();
    let r = if rng.random_bool(0.3) { rng.random_range(1..=2) } else { 0 };
    let rays = (0..r).map(|_| nonzero_vector(rng, dim, 5)).collect();
    Polyhedron::from_v(VRep::new(dim, points, rays)).expect("dimensions agree")
}

/// Closed convex polyhedron containing the origin.
pub fn body(rng: &mut impl Rng, dim: usize) -> Polyhedron {
    if rng.random_bool(0.25) {
        // inequality-described, possibly unbounded
        let k = rng.random_range(1..=dim + 2);
        let rows = (0..k)
            .map(|_| HalfSpace::new(nonzero_vector(rng, dim, 5), int(rng.random_range(0..=5))))
            .collect();
        return Polyhedron::from_h(HRep::new(dim, rows)).expect("dimensions agree");
    }
    let k = rng.random_range(1..=dim + 2);
    let mut points: Vec<RatVector> = (0..k).map(|_| int_vector(rng, dim, 5)).collect();
    points.push(RatVector::zeros(dim));
    let r = if rng.random_bool(0.2) { 1 } else { 0 };
    let rays = (0..r).map(|_| nonzero_vector(rng, dim, 5)).collect();
    Polyhedron::from_v(VRep::new(dim, points, rays)).expect("dimensions agree")
}

/// Bounded body containing 0 in its interior.
pub fn full_body(rng: &mut impl Rng, dim: usize) -> Polyhedron {
    loop {
        let k = rng.random_range(dim + 1..=dim + 3);
        let points: Vec<RatVector> = (0..k).map(|_| int_vector(rng, dim, 5)).collect();
        let p = Polyhedron::hull(dim, points).expect("dimensions agree");
        if p.rows().iter().all(|r| r.rhs > num_traits::Zero::zero()) {
            return p;
        }
    }
}

/// Polyhedral cone; may be `{0}`, a subspace, or the whole space.
pub fn cone(rng: &mut impl Rng, dim: usize) -> Polyhedron {
    let k = rng.random_range(0..=dim + 1);
    let rays = (0..k).map(|_| nonzero_vector(rng, dim, 3)).collect();
    Polyhedron::cone(dim, rays).expect("dimensions agree")
}

/// Symmetric, bounded, full-dimensional polytope: the unit ball of a
/// polyhedral norm. Kept small so direct sums stay tractable.
pub fn symmetric_ball(rng: &mut impl Rng, dim: usize) -> Polyhedron {
    if dim == 1 {
        let b = int(rng.random_range(1..=3));
        return Polyhedron::cube(1, -b.clone(), b).expect("valid box");
    }
    if rng.random_bool(0.3) {
        let rows = (0..dim)
            .flat_map(|k| {
                let w = int(rng.random_range(1..=3));
                [
                    HalfSpace::new(RatVector::unit(dim, k), w.clone()),
                    HalfSpace::new(RatVector::unit(dim, k).neg(), w),
                ]
            })
            .collect();
        return Polyhedron::from_h(HRep::new(dim, rows)).expect("dimensions agree");
    }
    let k = if dim >= 3 { dim } else { rng.random_range(dim..=dim + 1) };
    loop {
        let gens: Vec<RatVector> = (0..k).map(|_| nonzero_vector(rng, dim, 3)).collect();
        let points: Vec<RatVector> = gens.iter().flat_map(|g| [g.clone(), g.neg()]).collect();
        let p = Polyhedron::hull(dim, points).expect("dimensions agree");
        if p.affine_dim() == dim as isize {
            return p;
        }
    }
}

/// Quadruple of two random cones and two random bodies containing 0.
pub fn quadruple(rng: &mut impl Rng, dim: usize) -> crate::duality_props::Quadruple {
    let c = cone(rng, dim);
    let d = cone(rng, dim);
    let b1 = body(rng, dim);
    let b2 = body(rng, dim);
    crate::duality_props::Quadruple::new(c, d, b1, b2).expect("samplers meet the hypotheses")
}

/// Inputs meeting the hypotheses of a polar-calculus identity, `item` in 1..=9.
pub fn identity_inputs(
    rng: &mut impl Rng,
    item: u8,
    dim: usize,
) -> (crate::polar_calc::PolarIdentity, Vec<Polyhedron>) {
    use crate::polar_calc::PolarIdentity as P;
    match item {
        1 => (P::P1, vec![polyhedron(rng, dim)]),
        2 => {
            let a = polyhedron(rng, dim);
            let extra = rng.random_range(1..=2);
            let mut points = a.vertices().to_vec();
            points.extend((0..extra).map(|_| int_vector(rng, dim, 5)));
            let mut rays = a.rays().to_vec();
            if rng.random_bool(0.2) {
                rays.push(nonzero_vector(rng, dim, 3));
            }
            let b = Polyhedron::from_v(VRep::new(dim, points, rays)).expect("dimensions agree");
            (P::P2, vec![a, b])
        }
        3 => {
            let lambda = crate::polyrat::frac(rng.random_range(1..=7), rng.random_range(1..=4));
            (P::p3(&lambda), vec![polyhedron(rng, dim)])
        }
        4 => {
            let k = rng.random_range(2..=3);
            (P::P4, (0..k).map(|_| polyhedron(rng, dim)).collect())
        }
        5 => (P::P5, vec![polyhedron(rng, dim)]),
        6 => {
            let k = rng.random_range(2..=3);
            (P::P6, (0..k).map(|_| body(rng, dim)).collect())
        }
        7 => (P::P7, vec![cone(rng, dim)]),
        8 => (P::P8, vec![body(rng, dim), cone(rng, dim)]),
        9 => (P::P9, vec![body(rng, dim), cone(rng, dim)]),
        _ => panic!("identity item {item} is not in 1..=9"),
    }
}

/// Direct-sum instance with a random symmetric base ball and random cones.
pub fn direct_sum(
    rng: &mut impl Rng,
    d: usize,
    m: usize,
    p: crate::banach_sums::Exponent,
) -> crate::banach_sums::DirectSumInstance {
    let base = symmetric_ball(rng, d);
    let cones = (0..m).map(|_| cone(rng, d)).collect();
    crate::banach_sums::DirectSumInstance::new(base, cones, p).expect("samplers meet the hypotheses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = polyhedron(&mut rng(7), 3);
        let b = polyhedron(&mut rng(7), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn samplers_meet_their_hypotheses() {
        let mut r = rng(11);
        for d in 1..=3 {
            for _ in 0..20 {
                assert!(body(&mut r, d).contains_origin());
                assert!(cone(&mut r, d).is_cone());
                let ball = symmetric_ball(&mut r, d);
                assert!(ball.is_symmetric() && ball.is_bounded());
                assert_eq!(ball.affine_dim(), d as isize);
                let fb = full_body(&mut r, d);
                assert!(fb.is_bounded() && fb.contains_origin());
            }
        }
    }
}
