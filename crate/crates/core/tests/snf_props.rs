//! Soundness of the Smith normal form engine on random integer matrices:
//! exact transformation certificates, unimodularity, the divisibility chain,
//! and rank agreement with an independent fraction-free elimination oracle.

use mhi_core::{smith_normal_form, IntMat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_matrix() -> impl Strategy<Value = IntMat> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |data| {
            let mut m = IntMat::zeros(rows, cols);
            for (k, v) in data.into_iter().enumerate() {
                m[(k / cols, k % cols)] = BigInt::from(v);
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn snf_certificate_and_invariants(a in arb_matrix()) {
        let snf = smith_normal_form(&a);

        // certificate: u * a * v = s, exactly
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());

        // unimodularity
        prop_assert_eq!(snf.u.determinant().abs(), BigInt::from(1));
        prop_assert_eq!(snf.v.determinant().abs(), BigInt::from(1));

        // s is diagonal with nonnegative entries
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        for d in &snf.divisors {
            prop_assert!(!d.is_negative());
        }

        // divisibility chain, zeros last
        for w in snf.divisors.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }

        // rank agreement with the fraction-free elimination oracle
        prop_assert_eq!(snf.rank(), a.rank());

        // cokernel bookkeeping
        let (free, torsion) = mhi_core::cokernel(&a);
        prop_assert_eq!(free + snf.rank(), a.rows());
        prop_assert_eq!(torsion.len(), snf.divisors.iter().filter(|d| **d > BigInt::from(1)).count());
        prop_assert_eq!(mhi_core::kernel_rank(&a) + snf.rank(), a.cols());
    }
}
