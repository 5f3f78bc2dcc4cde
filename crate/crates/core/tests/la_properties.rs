//! Factorization and dense kernels against the Gaussian elimination oracle.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zfsolve::{dense_gaussian_solve, factorize, DenseMatrix, FieldSpec, SparseMatrix, Vector};

fn fields() -> Vec<FieldSpec> {
    vec![FieldSpec::GF2, FieldSpec::prime(5).unwrap(), FieldSpec::prime(257).unwrap()]
}

/// Random matrix of a chosen rank: product of random `k x r` and `r x k`
/// factors, which keeps singular cases common.
fn random_low_rank(rng: &mut ChaCha8Rng, spec: FieldSpec, k: usize) -> DenseMatrix {
    let p = spec.modulus();
    let r = rng.random_range(0..=k);
    let mut left = DenseMatrix::zeros(spec, k, r);
    let mut right = DenseMatrix::zeros(spec, r, k);
    for i in 0..k {
        for j in 0..r {
            left.set(i, j, rng.random_range(0..p)).unwrap();
            right.set(j, i, rng.random_range(0..p)).unwrap();
        }
    }
    left.mul(&right).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, spec: FieldSpec, n: usize) -> Vector {
    Vector::new(spec, (0..n).map(|_| rng.random_range(0..spec.modulus())).collect()).unwrap()
}

#[test]
fn fact_solve_verdict_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in fields() {
        let mut solvable = 0;
        for trial in 0..1000 {
            let k = rng.random_range(1..=32);
            let b = random_low_rank(&mut rng, spec, k);
            let f = factorize(&b).unwrap();
            let c = if trial % 2 == 0 {
                b.mul_vec(&random_vector(&mut rng, spec, k)).unwrap()
            } else {
                random_vector(&mut rng, spec, k)
            };
            let ours = f.solve(&c).unwrap();
            let oracle = dense_gaussian_solve(&b, &c).unwrap();
            assert_eq!(ours.is_some(), oracle.is_some(), "{spec} trial {trial}");
            if let Some(y) = ours {
                assert_eq!(b.mul_vec(&y).unwrap(), c);
                let pivots = f.pivot_columns();
                for j in (0..k).filter(|j| !pivots.contains(j)) {
                    assert_eq!(y.get(j), 0, "free variable {j} not zeroed");
                }
                solvable += 1;
            }
        }
        assert!(solvable >= 500, "{spec}: consistent half must solve");
    }
}

#[test]
fn factorization_reconstructs_and_stays_quadratic() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in fields() {
        for _ in 0..200 {
            let k = rng.random_range(0..=8);
            let b = random_low_rank(&mut rng, spec, k);
            let f = factorize(&b).unwrap();
            assert_eq!(f.reconstruct(), b);
            assert_eq!(f.rank(), zfsolve::rank(&b));
            assert!(f.stored_elements() <= k * k + k);
        }
    }
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = (u32, usize, Vec<u32>)> {
    (prop_oneof![Just(2u32), Just(5), Just(257)], 1..=max)
        .prop_flat_map(|(p, n)| (Just(p), Just(n), proptest::collection::vec(0..p, n * n)))
}

fn build(p: u32, rows: usize, cols: usize, data: &[u32]) -> DenseMatrix {
    let spec = FieldSpec::prime(p).unwrap();
    let rows: Vec<Vec<u32>> = data.chunks(cols).take(rows).map(<[u32]>::to_vec).collect();
    DenseMatrix::from_rows(spec, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matpow_equals_repeated_product((p, n, data) in matrix_strategy(16), e in 0u64..=8) {
        let x = build(p, n, n, &data);
        let mut expected = DenseMatrix::identity(x.spec(), n);
        for _ in 0..e {
            expected = expected.mul(&x).unwrap();
        }
        let (got, products) = x.pow_counted(e).unwrap();
        prop_assert_eq!(got, expected);
        prop_assert!(products <= 2 * (64 - e.leading_zeros()) as usize);
    }

    #[test]
    fn spmv_matches_dense((p, n, data) in matrix_strategy(12), mask in proptest::collection::vec(0u8..4, 144), xs in proptest::collection::vec(0u32..257, 12)) {
        let spec = FieldSpec::prime(p).unwrap();
        // Sparsify: keep roughly a quarter of the entries.
        let triplets = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| mask[i * n + j] == 0)
            .map(|(i, j)| (i, j, data[i * n + j]));
        let a = SparseMatrix::from_triplets(spec, n, n, triplets).unwrap();
        let x = Vector::new(spec, xs[..n].iter().map(|&v| v % p).collect()).unwrap();
        prop_assert_eq!(a.spmv(&x).unwrap(), a.to_dense().mul_vec(&x).unwrap());
        prop_assert_eq!(SparseMatrix::from_dense(&a.to_dense()), a);
    }

    #[test]
    fn gf2_packed_product_matches_word_product(n in 1usize..80, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gf2 = FieldSpec::GF2;
        let x = DenseMatrix::from_rows(gf2, &(0..n).map(|_| (0..n).map(|_| rng.random_range(0..2)).collect()).collect::<Vec<_>>()).unwrap();
        let y = DenseMatrix::from_rows(gf2, &(0..n).map(|_| (0..n).map(|_| rng.random_range(0..2)).collect()).collect::<Vec<_>>()).unwrap();
        let got = x.mul(&y).unwrap();
        for i in 0..n {
            for j in 0..n {
                let dot = (0..n).map(|t| x.get(i, t) * y.get(t, j)).sum::<u32>() % 2;
                prop_assert_eq!(got.get(i, j), dot);
            }
        }
    }
}
