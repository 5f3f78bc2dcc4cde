use proptest::prelude::*;
use zfsolve::format::{
    parse_board, parse_core, parse_matrix, parse_vector, parse_zfs, write_board, write_core, write_matrix,
    write_vector, write_zfs,
};
use zfsolve::{BoardState, CoreMatrix, DenseMatrix, FieldSpec, GridSpec, SparseMatrix, Vector};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(2u32), Just(5), Just(257), Just(65537), Just(2_147_483_647)]
        .prop_map(|p| FieldSpec::prime(p).unwrap())
}

fn sparse() -> impl Strategy<Value = SparseMatrix> {
    (field(), 1usize..12, 1usize..12).prop_flat_map(|(spec, r, c)| {
        let p = spec.modulus();
        proptest::collection::btree_map((0..r, 0..c), 0..p, 0..=r * c).prop_map(move |entries| {
            SparseMatrix::from_triplets(spec, r, c, entries.into_iter().map(|((i, j), v)| (i, j, v))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matrix_round_trip(a in sparse()) {
        let text = write_matrix(&a);
        prop_assert_eq!(parse_matrix(&text).unwrap(), a);
    }

    #[test]
    fn vector_round_trip((spec, xs) in field().prop_flat_map(|s| (Just(s), proptest::collection::vec(0..s.modulus(), 0..40)))) {
        let v = Vector::new(spec, xs).unwrap();
        prop_assert_eq!(parse_vector(&write_vector(&v), spec).unwrap(), v);
    }

    #[test]
    fn zfs_round_trip(z in Just((0..50usize).collect::<Vec<_>>()).prop_shuffle(), len in 0usize..50) {
        let z = &z[..len];
        prop_assert_eq!(parse_zfs(&write_zfs(z), 50).unwrap(), z);
    }

    #[test]
    fn board_round_trip((r, c, cells) in (1usize..20, 1usize..20).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(0u32..2, r * c)))) {
        let b = BoardState::new(GridSpec::new(r, c).unwrap(), Vector::new(FieldSpec::GF2, cells).unwrap()).unwrap();
        prop_assert_eq!(parse_board(&write_board(&b)).unwrap(), b);
    }

    #[test]
    fn core_round_trip((spec, k, data, labels) in (field(), 0usize..10).prop_flat_map(|(s, k)| {
        (Just(s), Just(k), proptest::collection::vec(0..s.modulus(), k * k), Just((0..30usize).collect::<Vec<_>>()).prop_shuffle())
    })) {
        let rows: Vec<Vec<u32>> = data.chunks(k.max(1)).take(k).map(<[u32]>::to_vec).collect();
        let b = if k == 0 { DenseMatrix::zeros(spec, 0, 0) } else { DenseMatrix::from_rows(spec, &rows).unwrap() };
        let core = CoreMatrix::new(b, labels[..k].to_vec(), labels[k..2 * k].to_vec()).unwrap();
        let text = write_core(&core, 30);
        let back = parse_core(&text).unwrap();
        prop_assert_eq!(back.n, 30);
        prop_assert_eq!(&back.core, &core);
        prop_assert_eq!(write_core(&back.core, 30), text);
    }
}
