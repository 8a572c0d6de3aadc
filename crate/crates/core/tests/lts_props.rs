use lts_core::lts::{is_automorphism, lts_from_lie_algebra, verify_lts};
use lts_core::samples::{heisenberg, random_invertible, random_scalar, sl2};
use lts_core::{FieldSpec, LieTripleSystem, Multilinear, Representation, Vector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::prime(3).unwrap())]
}

fn conjugated_lts(f: FieldSpec, which: bool, seed: u64) -> LieTripleSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = if which { sl2(f) } else { heisenberg(f) };
    let p = random_invertible(f, 3, &mut rng);
    lts_from_lie_algebra(&l.change_basis(&p).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn lie_algebras_give_lts(f in field(), which in any::<bool>(), seed in any::<u64>()) {
        let t = conjugated_lts(f, which, seed);
        prop_assert!(verify_lts(&t).passed());
    }

    #[test]
    fn verified_tables_are_alternating(f in field(), which in any::<bool>(), seed in any::<u64>(), noise in any::<bool>()) {
        let mut t = conjugated_lts(f, which, seed).bracket().clone();
        if noise {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
            let mut data = t.coefficients().to_vec();
            let k = (seed as usize) % data.len();
            data[k] += &random_scalar(f, &mut rng);
            t = Multilinear::from_coefficients(f, vec![3; 3], 3, data).unwrap();
        }
        let t = LieTripleSystem::new(t).unwrap();
        if verify_lts(&t).passed() {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        prop_assert!((t.br_basis(i, j, k) + t.br_basis(j, i, k)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn d_theta_acts_as_a_derivation(f in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = conjugated_lts(f, true, seed);
        let q = random_invertible(f, 3, &mut rng);
        let rep = Representation::regular(t.clone()).change_basis(&lts_core::Matrix::identity(f, 3), &q).unwrap();
        prop_assert!(rep.verify().passed());
        let e = |i: usize| Vector::basis(f, 3, i);
        for w in lts_core::tensor::indices(&[3; 4]) {
            let (x1, x2, x3, x4) = (e(w[0]), e(w[1]), e(w[2]), e(w[3]));
            let d = rep.theta_matrix(&x2, &x1).sub(&rep.theta_matrix(&x1, &x2));
            let th = rep.theta_matrix(&x3, &x4);
            let lhs = d.mul(&th).sub(&th.mul(&d));
            let rhs = rep.theta_matrix(&t.br(&x1, &x2, &x3), &x4).add(&rep.theta_matrix(&x3, &t.br(&x1, &x2, &x4)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn automorphism_test_respects_inverses(f in field(), which in any::<bool>(), seed in any::<u64>()) {
        let t = conjugated_lts(f, which, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        let g = random_invertible(f, 3, &mut rng);
        let inv = g.inverse().unwrap();
        prop_assert_eq!(is_automorphism(&g, &t), is_automorphism(&inv, &t));
        prop_assert!(is_automorphism(&lts_core::Matrix::identity(f, 3), &t));
    }
}
