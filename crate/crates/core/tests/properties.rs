//! Randomized algebraic invariants over the residue and ring arithmetic.

use cycloprime::{CycBasis, CycElem, Residue, TestParams};
use num_bigint::BigUint;
use proptest::prelude::*;
use std::sync::Arc;

fn modulus() -> Arc<BigUint> {
    // M for p=5, n=2: composite, so the ring has zero divisors too
    Arc::new(TestParams::new(5, 2).unwrap().m)
}

fn residue(v: u128, m: &Arc<BigUint>) -> Residue {
    Residue::new(BigUint::from(v), m)
}

proptest! {
    #[test]
    fn residue_ring_axioms(a in any::<u128>(), b in any::<u128>(), c in any::<u128>()) {
        let m = modulus();
        let (a, b, c) = (residue(a, &m), residue(b, &m), residue(c, &m));
        // associativity of addition
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        // commutativity of multiplication
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        // distributivity
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn pow_is_additive_in_the_exponent(a in any::<u128>(), e1 in any::<u64>(), e2 in any::<u64>()) {
        let m = modulus();
        let a = residue(a, &m);
        let lhs = a.pow(&(BigUint::from(e1) + BigUint::from(e2)));
        let rhs = a.pow_u64(e1).mul(&a.pow_u64(e2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_multiplies_to_one(a in 1u128..u128::MAX) {
        let m = modulus();
        let a = residue(a, &m);
        if let Ok(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).unwrap().is_one());
        }
    }

    #[test]
    fn galois_commutes_with_multiplication(
        coeffs_a in prop::collection::vec(-50i64..50, 4),
        coeffs_b in prop::collection::vec(-50i64..50, 4),
        c_index in 0usize..4,
    ) {
        let m = Arc::new(TestParams::new(5, 1).unwrap().m);
        let basis = CycBasis::new(5).unwrap();
        let to_elem = |coeffs: &[i64]| {
            let terms: Vec<(i64, u32)> =
                coeffs.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
            CycElem::from_zeta_p_terms(&basis, &m, &terms)
        };
        let (a, b) = (to_elem(&coeffs_a), to_elem(&coeffs_b));
        let c = [1i64, 3, 7, 9][c_index];
        let lhs = a.mul(&b).unwrap().galois(c).unwrap();
        let rhs = a.galois(c).unwrap().mul(&b.galois(c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_multiplication_is_associative(
        coeffs in prop::collection::vec(-30i64..30, 6),
        shift in 1u32..7,
    ) {
        let m = Arc::new(TestParams::new(7, 1).unwrap().m);
        let basis = CycBasis::new(7).unwrap();
        let terms: Vec<(i64, u32)> =
            coeffs.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
        let a = CycElem::from_zeta_p_terms(&basis, &m, &terms);
        let b = CycElem::from_zeta_p_terms(&basis, &m, &[(1, 0), (-2, shift % 7)]);
        let c = CycElem::from_zeta_p_terms(&basis, &m, &[(3, shift % 7), (1, 2)]);
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }
}
