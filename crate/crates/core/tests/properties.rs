use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use swf_core::applications::LaurentPolynomial;
use swf_core::cells::dual_cell;
use swf_core::zlinalg::{quotient, smith_normal_form};
use swf_core::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(-9i64..=9, n), m))
}

fn cell() -> impl Strategy<Value = Cell> {
    prop_oneof![
        (-6i64..=6, -12i64..=12, 1i64..=12)
            .prop_map(|(m, a, b)| Cell::trivial(m, Rational::new(a, b))),
        (-6i64..=6).prop_map(Cell::free),
    ]
}

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-8i64..=8, -5i64..=5), 0..6).prop_map(|terms| {
        LaurentPolynomial::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_reconstructs(rows in matrix()) {
        let a = IntegerMatrix::from_rows(&rows);
        let (u, d, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
        prop_assert!(d.is_diagonal());
    }

    #[test]
    fn cokernel_order_is_determinant(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
        let a = IntegerMatrix::from_rows(&rows);
        let det = a.determinant();
        let q = quotient(&[BigInt::zero(), BigInt::zero(), BigInt::zero()], &a.transpose());
        if det.is_zero() {
            prop_assert!(q.group.rank() > 0);
        } else {
            let order: BigInt = q.group.torsion().iter().product();
            prop_assert_eq!(q.group.rank(), 0);
            prop_assert_eq!(order, det.magnitude().clone().into());
        }
    }
}

proptest! {
    #[test]
    fn dual_cell_is_an_involution(c in cell()) {
        prop_assert_eq!(dual_cell(&dual_cell(&c)), c);
    }

    #[test]
    fn dualize_is_an_involution(cells in prop::collection::vec(cell(), 1..5)) {
        let named = cells.into_iter().enumerate().map(|(i, c)| (c, format!("c{i}"))).collect();
        let p = SpectrumPresentation::wedge(true, named).unwrap();
        prop_assert_eq!(p.dualize().unwrap().dualize().unwrap(), p.clone());
        prop_assert_eq!(SpectrumPresentation::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn sphere_wedges_sum(dims in prop::collection::vec(-3i64..=3, 1..5), k in -3i64..=0) {
        let named = dims.iter().enumerate().map(|(i, &d)| (Cell::sphere(d), format!("s{i}"))).collect();
        let p = SpectrumPresentation::wedge(false, named).unwrap();
        let g = homotopy_group(&p, k, false).unwrap();
        let mut rank = 0;
        let mut torsion = Vec::new();
        for &d in &dims {
            let s = swf_core::stems::stable_stem(k - d).unwrap();
            rank += s.rank();
            torsion.extend(s.torsion().iter().cloned());
        }
        prop_assert!(g.group().is_isomorphic(&FGAbelianGroup::new(rank, torsion).unwrap()));
    }

    #[test]
    fn laurent_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
    }

    #[test]
    fn series_invariants(p in 1i64..=15, q in 1i64..=15) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let s = relative_sw_series(NucleusParams::new(p, q).unwrap()).unwrap();
        prop_assert!(s.is_symmetric());
        prop_assert_eq!(s.coefficient_sum(), BigInt::from(p * q));
        prop_assert_eq!(s.coeff(2 * p * q - p - q), BigInt::from(1));
    }
}
