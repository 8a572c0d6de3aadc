use lts_core::deformation::{gauge_transform, lift_cocycle_to_mc, DgLie, GradedCochain};
use lts_core::enumerate::{matrices, DEFAULT_BUDGET};
use lts_core::lts::verify_lts;
use lts_core::nonabelian::{
    build_extension, cocycles_equivalent_via, enumerate_cocycles, equivalence_classes, extract_cocycle,
    find_equivalence, verify_cocycle,
};
use lts_core::samples::{affine_line_lts, corrupt_cocycle, random_matrix, random_valid_cocycle};
use lts_core::{FieldSpec, LieTripleSystem, NonAbelianCocycle};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_lts(f: FieldSpec, k: usize) -> LieTripleSystem {
    match k {
        0 => LieTripleSystem::zero(f, 1),
        1 => LieTripleSystem::zero(f, 2),
        _ => affine_line_lts(f),
    }
}

fn finite_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::prime(2).unwrap()), Just(FieldSpec::prime(3).unwrap())]
}

fn triple(f: FieldSpec, kg: usize, kh: usize, seed: u64) -> NonAbelianCocycle {
    random_valid_cocycle(&small_lts(f, kg), &small_lts(f, kh), &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extension_is_lts_iff_cocycle(f in finite_field(), kg in 0usize..3, kh in 0usize..3, seed in any::<u64>(), corrupt in any::<bool>()) {
        let mut c = triple(f, kg, kh, seed);
        if corrupt {
            c = corrupt_cocycle(&c, &mut ChaCha8Rng::seed_from_u64(!seed));
        }
        let e = build_extension(&c).unwrap();
        prop_assert_eq!(verify_lts(e.hat()).passed(), verify_cocycle(&c).passed());
        if !corrupt {
            prop_assert!(verify_cocycle(&c).passed());
        }
    }

    #[test]
    fn extraction_inverts_construction(f in finite_field(), kg in 0usize..3, kh in 0usize..3, seed in any::<u64>()) {
        let c = triple(f, kg, kh, seed);
        let e = build_extension(&c).unwrap();
        prop_assert_eq!(extract_cocycle(&e).unwrap().cocycle, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn sections_give_equivalent_cocycles(f in finite_field(), kg in 0usize..3, kh in 0usize..3, seed in any::<u64>()) {
        let c = triple(f, kg, kh, seed);
        let e = build_extension(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let (m, n) = (c.dim_g(), c.dim_h());
        let shifts: Vec<_> = (0..20).map(|_| random_matrix(f, n, m, &mut rng)).collect();
        let extracted: Vec<_> = shifts
            .iter()
            .map(|phi| extract_cocycle(&e.with_section(e.s().add(&e.i().mul(phi))).unwrap()).unwrap().cocycle)
            .collect();
        for a in 0..shifts.len() {
            prop_assert!(verify_cocycle(&extracted[a]).passed());
            for b in 0..shifts.len() {
                // s_b − s_a read in h
                let diff = shifts[b].sub(&shifts[a]);
                prop_assert!(cocycles_equivalent_via(&diff, &extracted[a], &extracted[b]).unwrap());
            }
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(f in finite_field(), kg in 0usize..3, kh in 0usize..2, seed in any::<u64>()) {
        let c = triple(f, kg, kh, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        let zero = lts_core::Matrix::zeros(f, c.dim_h(), c.dim_g());
        prop_assert!(cocycles_equivalent_via(&zero, &c, &c).unwrap());
        let phi = random_matrix(f, c.dim_h(), c.dim_g(), &mut rng);
        let moved = c.shifted_by(&phi).unwrap();
        let forward = find_equivalence(&moved, &c, DEFAULT_BUDGET).unwrap();
        prop_assert!(forward.is_some());
        let back = find_equivalence(&c, &moved, DEFAULT_BUDGET).unwrap();
        prop_assert!(back.is_some());
        prop_assert!(cocycles_equivalent_via(&back.unwrap(), &c, &moved).unwrap());
    }
}

/// Orbits of the lifted cocycles under the gauge action of every `φ: g → h`.
fn gauge_classes(cs: &[NonAbelianCocycle]) -> usize {
    let (g, h) = (cs[0].g(), cs[0].h());
    let f = g.field();
    let dg = DgLie::direct_sum(g, h).unwrap();
    let lifts: Vec<GradedCochain> = cs.iter().map(lift_cocycle_to_mc).collect();
    let mut class = vec![usize::MAX; cs.len()];
    let mut count = 0;
    for i in 0..cs.len() {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = count;
        for phi in matrices(f, h.dim(), g.dim(), DEFAULT_BUDGET).unwrap() {
            let moved = gauge_transform(&dg, g.dim(), &GradedCochain::extend_by_zero(&phi), &lifts[i]).unwrap();
            let j = lifts.iter().position(|l| *l == moved).expect("gauge orbit stays among cocycles");
            class[j] = count;
        }
        count += 1;
    }
    count
}

#[test]
fn classification_matches_gauge_orbits_over_f2() {
    let f = FieldSpec::prime(2).unwrap();
    for (g, h) in [
        (LieTripleSystem::zero(f, 1), LieTripleSystem::zero(f, 1)),
        (LieTripleSystem::zero(f, 2), LieTripleSystem::zero(f, 1)),
        (affine_line_lts(f), LieTripleSystem::zero(f, 1)),
    ] {
        let all = enumerate_cocycles(&g, &h, DEFAULT_BUDGET).unwrap();
        let classes = equivalence_classes(&all, DEFAULT_BUDGET).unwrap();
        assert_eq!(classes.len(), gauge_classes(&all));
    }
}
