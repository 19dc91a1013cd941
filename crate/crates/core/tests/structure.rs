use proptest::prelude::*;
use quadfact_core::invariants::{fitting, nilpotent_structure};
use quadfact_core::oracle::{random_instance, random_invertible, random_target, SeededRng};
use quadfact_core::{invariant_report, FieldDescriptor, Matrix};

fn field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(FieldDescriptor::rationals()),
        proptest::sample::select(&[2u64, 3, 5, 7][..]).prop_map(|p| FieldDescriptor::prime(p).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn report_matches_target(f in field(), n in 0usize..8, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let target = random_target(&mut rng, n);
        let inst = random_instance(seed, f, n, &target).unwrap();
        let r = invariant_report(&inst.g).unwrap();
        let m = target.jordan_blocks.len();
        prop_assert_eq!(r.n, n);
        prop_assert_eq!(r.nullity, target.zero_blocks + m);
        prop_assert_eq!(r.n0, target.zero_blocks);
        prop_assert_eq!(r.dim_cap, m);
        prop_assert_eq!(r.rank + r.nullity, n);
        prop_assert_eq!(r.dim_cap + r.dim_sum, r.rank + r.nullity);
    }

    #[test]
    fn report_is_similarity_invariant(f in field(), n in 1usize..7, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let target = random_target(&mut rng, n);
        let g = random_instance(seed, f, n, &target).unwrap().g;
        let s = random_invertible(&mut rng, f, n);
        let c = rng.nonzero_scalar(f);
        let base = invariant_report(&g).unwrap();
        prop_assert_eq!(invariant_report(&Matrix::conjugate(&s, &g).unwrap()).unwrap(), base);
        prop_assert_eq!(invariant_report(&g.scale(&c).unwrap()).unwrap(), base);
    }

    #[test]
    fn fitting_round_trip(f in field(), n in 0usize..7, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let target = random_target(&mut rng, n);
        let g = random_instance(seed, f, n, &target).unwrap().g;
        let fd = fitting(&g).unwrap();
        prop_assert_eq!(Matrix::conjugate(&fd.transform, &fd.block_form()).unwrap(), g);
        prop_assert_eq!(fd.nil_dim, n - target.invertible.order());
        prop_assert!(fd.nilpotent.is_nilpotent());
        prop_assert_eq!(fd.invertible.rank(), fd.invertible.rows());
    }

    #[test]
    fn jordan_structure_recovers_blocks(f in field(), n in 0usize..8, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let mut target = random_target(&mut rng, n);
        // move the invertible part into zero blocks so the matrix is nilpotent
        target.zero_blocks += target.invertible.order();
        target.invertible = quadfact_core::oracle::InvertiblePart::Random(0);
        let inst = random_instance(seed, f, n, &target).unwrap();
        let ns = nilpotent_structure(&inst.g).unwrap();
        prop_assert_eq!(&ns.block_sizes, &target.jordan_blocks);
        prop_assert_eq!(ns.zero_block_count, target.zero_blocks);
        prop_assert_eq!(ns.m, target.jordan_blocks.len());
        prop_assert_eq!(Matrix::conjugate(&ns.transform, &ns.canonical()).unwrap(), inst.g);
    }
}

#[test]
fn non_nilpotent_is_rejected() {
    let q = FieldDescriptor::rationals();
    assert!(nilpotent_structure(&Matrix::identity(q, 2)).is_err());
}
