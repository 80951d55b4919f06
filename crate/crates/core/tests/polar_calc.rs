use conedual_core::polar_calc::{bipolar, check_polar_identity, dual_cone, one_sided_polar, PolarPair};
use conedual_core::random;
use conedual_core::Polyhedron;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    let cases = std::env::var("PROPTEST_CASES").ok().and_then(|s| s.parse().ok());
    ProptestConfig::with_cases(cases.unwrap_or(64))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn every_identity_holds(seed in any::<u64>(), item in 1u8..=9, dim in 1usize..=3) {
        let (id, inputs) = random::identity_inputs(&mut random::rng(seed), item, dim);
        let r = check_polar_identity(id, &inputs).unwrap();
        prop_assert!(r.holds, "{:?}", r);
        prop_assert!(r.witness.is_none());
    }

    #[test]
    fn polar_pairs_satisfy_the_defining_inequality(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = random::rng(seed);
        let p = random::polyhedron(&mut rng, dim);
        let pair = PolarPair::new(p.clone()).unwrap();
        // ⟨v, z⟩ <= 1 for generators v of P and vertices z of P°
        for z in pair.polar.vertices() {
            for v in p.vertices() {
                prop_assert!(v.dot(z) <= conedual_core::polyrat::int(1));
            }
            for r in p.rays() {
                prop_assert!(r.dot(z) <= conedual_core::polyrat::int(0));
            }
        }
        prop_assert_eq!(bipolar(&p).unwrap(), one_sided_polar(&pair.polar).unwrap());
    }

    #[test]
    fn dual_cone_pairs_nonnegatively(seed in any::<u64>(), dim in 1usize..=4) {
        let c = random::cone(&mut random::rng(seed), dim);
        let d = dual_cone(&c).unwrap();
        for r in c.rays() {
            for s in d.rays() {
                prop_assert!(r.dot(s) >= conedual_core::polyrat::int(0));
            }
        }
        prop_assert_eq!(dual_cone(&d).unwrap(), c);
    }
}

#[test]
fn empty_set_has_no_one_sided_polar() {
    assert!(one_sided_polar(&Polyhedron::empty(2)).is_err());
    assert!(dual_cone(&Polyhedron::cube(1, conedual_core::polyrat::int(0), conedual_core::polyrat::int(1)).unwrap()).is_err());
}
