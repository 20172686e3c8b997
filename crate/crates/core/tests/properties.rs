use filiform::group::{is_quotient_of, FGAbelianGroup};
use filiform::linalg::{RatMatrix, Rational};
use filiform::snf::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..=12, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

fn rat_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |v| {
            RatMatrix::from_fn(r, c, |i, j| {
                let (p, q) = v[i * c + j];
                Rational::new(BigInt::from(p), BigInt::from(q))
            })
        })
    })
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in int_matrix()) {
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).mul(&f.v), f.s.clone());
        prop_assert!(f.s.is_diagonal());
        prop_assert!(f.u.determinant().abs().is_one());
        prop_assert!(f.v.determinant().abs().is_one());
        let d = f.diagonal();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn smith_form_is_deterministic(m in int_matrix()) {
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
    }

    #[test]
    fn kernel_obeys_rank_nullity(m in rat_matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(RatMatrix::from_rows_with_cols(&k, m.cols()).rank(), k.len());
        prop_assert_eq!(k, m.kernel_basis());
    }

    #[test]
    fn group_canonical_form_ignores_factor_order(a in 1i64..30, b in 1i64..30, free in 0usize..3) {
        let g = FGAbelianGroup::from_factors(&[a, b], free);
        prop_assert_eq!(&g, &FGAbelianGroup::from_factors(&[b, a], free));
        prop_assert_eq!(g.order(), if free == 0 { Some(a * b) } else { None });
        for w in g.torsion.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // Z_a x Z_b x Z^f maps onto Z_lcm(a,b) and onto itself
        prop_assert!(is_quotient_of(&g, &FGAbelianGroup::cyclic(a.lcm(&b))));
        prop_assert!(is_quotient_of(&g, &g));
        if free == 0 {
            prop_assert!(!is_quotient_of(&g, &FGAbelianGroup::free(1)));
        }
    }
}
