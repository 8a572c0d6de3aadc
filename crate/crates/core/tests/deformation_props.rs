use lts_core::deformation::{
    ad_divided, gauge_transform, graded_bracket, in_positive_subcomplex, lift_cocycle_to_mc, DgLie, GradedCochain,
};
use lts_core::enumerate::{matrices, DEFAULT_BUDGET};
use lts_core::lts::verify_lts;
use lts_core::nonabelian::enumerate_cocycles;
use lts_core::samples::{affine_line_lts, random_graded_cochain, random_matrix, random_valid_cocycle, sl2_lts};
use lts_core::{FieldSpec, LieTripleSystem, Multilinear};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

fn sign(f: FieldSpec, odd: bool) -> lts_core::Scalar {
    if odd {
        -f.one()
    } else {
        f.one()
    }
}

/// Zeroes the outputs in the first `m` coordinates and the values on pure-`h` tuples.
fn project_positive(c: &GradedCochain, m: usize) -> GradedCochain {
    let (f, d) = (c.field(), c.dim());
    let t = c.table();
    let table = Multilinear::from_fn(f, t.dims().to_vec(), d, |idx| {
        let mut v = t.value_vec(idx);
        if idx.iter().all(|&i| i >= m) {
            return lts_core::Vector::zeros(f, d);
        }
        for l in 0..m {
            v.0[l] = f.zero();
        }
        v
    });
    GradedCochain::new(c.degree(), table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bracket_is_graded_antisymmetric(n in 0usize..3, m in 0usize..3, d in 1usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_graded_cochain(f3(), n, d, &mut rng);
        let g = random_graded_cochain(f3(), m, d, &mut rng);
        let fg = graded_bracket(&f, &g).unwrap();
        let gf = graded_bracket(&g, &f).unwrap();
        prop_assert_eq!(fg.degree(), n + m);
        prop_assert_eq!(fg, gf.scale(&sign(f3(), n * m % 2 == 0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bracket_satisfies_graded_jacobi(shape in 0usize..3, d in 1usize..3, seed in any::<u64>()) {
        let degrees = [[0, 0, 1], [0, 1, 1], [1, 1, 1]][shape];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = degrees.map(|k| random_graded_cochain(f3(), k, d, &mut rng));
        let lhs = graded_bracket(&a, &graded_bracket(&b, &c).unwrap()).unwrap();
        let rhs = graded_bracket(&graded_bracket(&a, &b).unwrap(), &c).unwrap().add(
            &graded_bracket(&b, &graded_bracket(&a, &c).unwrap()).unwrap().scale(&sign(f3(), degrees[0] * degrees[1] % 2 == 1)),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn maurer_cartan_iff_lts(kind in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi = match kind {
            0 => random_graded_cochain(f3(), 1, 2, &mut rng),
            1 => GradedCochain::from_bracket(&affine_line_lts(f3())).unwrap(),
            _ => GradedCochain::from_bracket(&sl2_lts(f3())).unwrap()
                .add(&random_graded_cochain(f3(), 1, 3, &mut rng).scale(&f3().from_i64((seed % 2) as i64))),
        };
        let lts = LieTripleSystem::new(pi.table().clone()).unwrap();
        let squares_to_zero = graded_bracket(&pi, &pi).unwrap().is_zero();
        prop_assert_eq!(squares_to_zero, verify_lts(&lts).passed());
        prop_assert_eq!(DgLie::new(pi).is_ok(), squares_to_zero);
    }

    #[test]
    fn positive_subcomplex_is_closed(n in 0usize..2, k in 0usize..2, seed in any::<u64>()) {
        let (g, h) = (affine_line_lts(f3()), LieTripleSystem::zero(f3(), 1));
        let m = g.dim();
        let dg = DgLie::direct_sum(&g, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = project_positive(&random_graded_cochain(f3(), n, 3, &mut rng), m);
        let b = project_positive(&random_graded_cochain(f3(), k, 3, &mut rng), m);
        prop_assert!(in_positive_subcomplex(&a, m));
        prop_assert!(in_positive_subcomplex(&graded_bracket(&a, &b).unwrap(), m));
        prop_assert!(in_positive_subcomplex(&dg.differential(&a).unwrap(), m));
    }

    #[test]
    fn adjoint_cube_kills_lifts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (affine_line_lts(f3()), affine_line_lts(f3()));
        let eta = lift_cocycle_to_mc(&random_valid_cocycle(&g, &h, &mut rng));
        let phi = GradedCochain::extend_by_zero(&random_matrix(f3(), 2, 2, &mut rng));
        prop_assert!(ad_divided(&phi, &eta, 3, 2).unwrap().is_zero());
        // The three-fold bracket itself, not only its divided form.
        let cube = graded_bracket(&phi, &graded_bracket(&phi, &graded_bracket(&phi, &eta).unwrap()).unwrap()).unwrap();
        prop_assert!(cube.is_zero());
    }
}

#[test]
fn gauge_orbits_are_shift_orbits_over_f2() {
    let f = FieldSpec::prime(2).unwrap();
    let (g, h) = (LieTripleSystem::zero(f, 1), LieTripleSystem::zero(f, 1));
    let dg = DgLie::direct_sum(&g, &h).unwrap();
    let all = enumerate_cocycles(&g, &h, DEFAULT_BUDGET).unwrap();
    assert!(!all.is_empty());
    let phis: Vec<_> = matrices(f, 1, 1, DEFAULT_BUDGET).unwrap().collect();
    assert_eq!(phis.len(), 2);
    for c in &all {
        for phi in &phis {
            let moved = gauge_transform(&dg, 1, &GradedCochain::extend_by_zero(phi), &lift_cocycle_to_mc(c)).unwrap();
            assert_eq!(moved, lift_cocycle_to_mc(&c.shifted_by(phi).unwrap()));
        }
    }
}
