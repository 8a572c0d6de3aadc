use lts_core::samples::{affine_line_lts, random_graded_cochain, random_invertible, sl2_lts};
use lts_core::tensor::cochain_constraint_violation;
use lts_core::yamaguti::{coboundary, cohomology, YamagutiCochain};
use lts_core::{FieldSpec, Representation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus(f: FieldSpec, k: usize) -> Representation {
    match k {
        0 => Representation::regular(sl2_lts(f)),
        1 => Representation::regular(affine_line_lts(f)),
        2 => Representation::zero(affine_line_lts(f), 2),
        _ => Representation::zero(sl2_lts(f), 1),
    }
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::prime(3).unwrap()), Just(FieldSpec::prime(5).unwrap())]
}

/// A random cochain of the given level with values in the representation space.
fn random_cochain(rep: &Representation, level: usize, rng: &mut ChaCha8Rng) -> YamagutiCochain {
    let f = rep.field();
    let basis = lts_core::yamaguti::cochain_space_basis(level, rep);
    let mut t = YamagutiCochain::zero(f, level, rep.lts().dim(), rep.vdim()).into_table();
    for b in basis {
        let c = lts_core::samples::random_scalar(f, rng);
        t = t.add(&b.table().scale(&c));
    }
    YamagutiCochain::new(level, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_squares_to_zero(f in field(), k in 0usize..4, level in 0usize..2, seed in any::<u64>()) {
        let rep = corpus(f, k);
        prop_assert!(rep.verify().passed());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cochain(&rep, level, &mut rng);
        let d1 = coboundary(&c, &rep).unwrap();
        prop_assert!(cochain_constraint_violation(d1.table()).is_none());
        prop_assert_eq!(d1.level(), level + 1);
        let d2 = coboundary(&d1, &rep).unwrap();
        prop_assert!(d2.is_zero());
    }

    #[test]
    fn cohomology_is_basis_independent(f in field(), k in 0usize..4, seed in any::<u64>()) {
        let rep = corpus(f, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_invertible(f, rep.lts().dim(), &mut rng);
        let q = random_invertible(f, rep.vdim(), &mut rng);
        let moved = rep.change_basis(&p, &q).unwrap();
        prop_assert!(moved.verify().passed());
        for n in 1..=2 {
            let (a, b) = (cohomology(n, &rep).unwrap(), cohomology(n, &moved).unwrap());
            prop_assert_eq!((a.dim_c, a.dim_z, a.dim_b, a.dim_h), (b.dim_c, b.dim_z, b.dim_b, b.dim_h));
        }
    }
}

#[test]
fn graded_and_yamaguti_spaces_agree() {
    let f = FieldSpec::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for level in 0..3 {
        let g = random_graded_cochain(f, level, 2, &mut rng);
        assert!(YamagutiCochain::new(level, g.table().clone()).is_ok());
    }
}
