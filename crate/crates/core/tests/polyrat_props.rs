use conedual_core::polyrat::{frac, int, lp_solve, HRep, HalfSpace, LpStatus, Sense};
use conedual_core::random::{self, int_vector};
use conedual_core::{Extended, Polyhedron, RatVector, Rational, VRep};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    let cases = std::env::var("PROPTEST_CASES").ok().and_then(|s| s.parse().ok());
    ProptestConfig::with_cases(cases.unwrap_or(64))
}

/// Max of `c·x` over a polyhedron by enumerating its generators.
fn brute_force_max(p: &Polyhedron, c: &RatVector) -> Option<Extended> {
    if p.is_empty() {
        return None;
    }
    if p.rays().iter().any(|r| c.dot(r).is_positive()) {
        return Some(Extended::Infinite);
    }
    p.vertices().iter().map(|v| c.dot(v)).max().map(Extended::Finite)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn representations_round_trip(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = random::rng(seed);
        let p = random::polyhedron(&mut rng, dim.min(4));
        prop_assert!(p.is_consistent());
        prop_assert_eq!(Polyhedron::from_h(p.h().clone()).unwrap(), p.clone());
        prop_assert_eq!(Polyhedron::from_v(p.v().clone()).unwrap(), p);
    }

    #[test]
    fn h_round_trip_of_random_systems(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = random::rng(seed);
        let rows = (0..dim + 3)
            .map(|_| HalfSpace::new(int_vector(&mut rng, dim, 4), int(rand::Rng::random_range(&mut rng, -3..=6))))
            .collect();
        let h = HRep::new(dim, rows);
        let p = Polyhedron::from_h(h.clone()).unwrap();
        let q = Polyhedron::from_v(p.v().clone()).unwrap();
        prop_assert_eq!(&q, &p);
        // every original row stays valid on the generators
        for row in &h.rows {
            for v in p.vertices() {
                prop_assert!(row.contains(v));
            }
        }
    }

    #[test]
    fn mutual_inclusion_is_equality(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = random::rng(seed);
        let p = random::polyhedron(&mut rng, dim);
        let q = random::polyhedron(&mut rng, dim);
        let both = p.includes(&q).unwrap() && q.includes(&p).unwrap();
        prop_assert_eq!(both, p == q);
        // a redundant description of p still compares equal
        let mut rows = p.rows().to_vec();
        rows.reverse();
        if let Some(r) = rows.first().cloned() {
            rows.push(HalfSpace::new(r.normal.scaled(&int(3)), &r.rhs * int(3) + int(1)));
        }
        let p2 = Polyhedron::from_h(HRep::new(dim, rows)).unwrap();
        prop_assert!(p2.includes(&p).unwrap() && p.includes(&p2).unwrap());
        prop_assert_eq!(p2, p);
    }

    #[test]
    fn gauge_is_sublinear(seed in any::<u64>(), dim in 1usize..=3, num in 0i64..6, den in 1i64..4) {
        let mut rng = random::rng(seed);
        let b = random::body(&mut rng, dim);
        let x = int_vector(&mut rng, dim, 5);
        let y = int_vector(&mut rng, dim, 5);
        let lambda = frac(num, den);
        let gx = b.gauge(&x).unwrap();
        let gy = b.gauge(&y).unwrap();
        let glx = b.gauge(&x.scaled(&lambda)).unwrap();
        match &gx {
            Extended::Finite(g) => prop_assert_eq!(glx, Extended::Finite(g * &lambda)),
            Extended::Infinite if lambda.is_zero() => prop_assert_eq!(glx, Extended::Finite(int(0))),
            Extended::Infinite => prop_assert_eq!(glx, Extended::Infinite),
        }
        let gxy = b.gauge(&x.add(&y)).unwrap();
        if let (Extended::Finite(a), Extended::Finite(c)) = (&gx, &gy) {
            prop_assert!(gxy <= Extended::Finite(a + c));
        }
    }

    #[test]
    fn membership_matches_gauge_and_dilations(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = random::rng(seed);
        let b = random::body(&mut rng, dim);
        let x = int_vector(&mut rng, dim, 3).scaled(&frac(1, 2));
        let inside = b.contains(&x);
        prop_assert_eq!(inside, b.gauge(&x).unwrap() <= Extended::Finite(int(1)));
        // membership in every λB for λ on a sequence decreasing to 1
        let mut all = true;
        for k in [1i64, 2, 10, 100, 10_000] {
            let lambda = int(1) + frac(1, k);
            all &= b.scale(&lambda).unwrap().contains(&x);
        }
        if inside {
            prop_assert!(all);
        }
        if !inside {
            // halfway between 1 and the gauge
            let g = b.gauge(&x).unwrap();
            if let Extended::Finite(g) = g {
                let lambda = (g + int(1)) / int(2);
                prop_assert!(!b.scale(&lambda).unwrap().contains(&x));
            }
        }
    }

    #[test]
    fn lp_matches_vertex_enumeration(seed in any::<u64>(), dim in 1usize..=4, sense_max in any::<bool>()) {
        let mut rng = random::rng(seed);
        let p = random::polyhedron(&mut rng, dim);
        let c = int_vector(&mut rng, dim, 5);
        let sense = if sense_max { Sense::Max } else { Sense::Min };
        // shuffle in a redundant row so the solver sees a non-canonical system
        let mut rows = p.rows().to_vec();
        rows.push(HalfSpace::new(RatVector::zeros(dim), int(1)));
        let h = HRep::new(dim, rows);
        let out = lp_solve(&c, sense, &h).unwrap();
        prop_assert!(out.verify(&c, sense, &h));
        let oracle = match sense {
            Sense::Max => brute_force_max(&p, &c),
            Sense::Min => brute_force_max(&p, &c.neg()).map(|e| match e {
                Extended::Finite(v) => Extended::Finite(-v),
                e => e,
            }),
        };
        match out.status {
            LpStatus::Optimal => prop_assert_eq!(Some(Extended::Finite(out.value.clone().unwrap())), oracle),
            LpStatus::Unbounded => prop_assert_eq!(oracle, Some(Extended::Infinite)),
            LpStatus::Infeasible => prop_assert!(oracle.is_none()),
        }
    }

    #[test]
    fn infeasible_lps_carry_farkas_certificates(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = random::rng(seed);
        let p = random::polyhedron(&mut rng, dim);
        let c = int_vector(&mut rng, dim, 5);
        // a row strictly beyond the maximum of c over p
        let cut = match brute_force_max(&p, &c).unwrap() {
            Extended::Finite(v) => v,
            Extended::Infinite => return Ok(()),
        };
        let mut rows = p.rows().to_vec();
        rows.push(HalfSpace::new(c.neg(), -(cut + frac(1, 3))));
        let h = HRep::new(dim, rows);
        let out = lp_solve(&c, Sense::Max, &h).unwrap();
        prop_assert_eq!(out.status, LpStatus::Infeasible);
        prop_assert!(out.verify(&c, Sense::Max, &h));
    }
}

#[test]
fn empty_generator_lists_give_the_empty_set() {
    let p = Polyhedron::from_v(VRep::new(2, vec![], vec![RatVector::from_ints(&[1, 0])])).unwrap();
    assert!(p.is_empty());
    let whole: Rational = int(1);
    assert!(Polyhedron::empty(2).includes(&Polyhedron::empty(2)).unwrap());
    assert!(Polyhedron::whole_space(2).gauge(&RatVector::from_ints(&[3, 4])).unwrap() <= Extended::Finite(whole));
}
