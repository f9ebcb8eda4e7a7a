//! The tested numbers M = (2p)^(2^n) + 1 and canonical arithmetic in Z/MZ.
//!
//! `Residue` keeps the least nonnegative representative at all times and
//! shares its modulus behind an `Arc`, so values are cheap to clone and safe
//! to use from multiple threads. All reductions are eager: equality against
//! small table constants is a plain comparison.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Odd primes with a tabulated seed.
pub const SUPPORTED_PRIMES: [u32; 7] = [3, 5, 7, 11, 13, 17, 19];

/// Largest accepted `n`; beyond this the iteration count 2^n - 1 and the
/// size of M stop being meaningful on a single machine.
pub const MAX_N: u32 = 30;

/// Parameters of one test target M = (2p)^(2^n) + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestParams {
    /// Odd prime in {3, 5, 7, 11, 13, 17, 19}.
    pub p: u32,
    /// Exponent index, n >= 1.
    pub n: u32,
    /// r = 2^n.
    pub r: u64,
    /// M = (2p)^r + 1, exact.
    pub m: BigUint,
}

impl TestParams {
    /// Build the exact big-integer target for a supported `(p, n)` pair.
    pub fn new(p: u32, n: u32) -> Result<TestParams> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedP(p));
        }
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::BadN(n));
        }
        let r = 1u64 << n;
        let m = BigUint::from(2 * p).pow(r as u32) + 1u32;
        Ok(TestParams { p, n, r, m })
    }

    /// Shared modulus handle for building residues mod M.
    pub fn modulus(&self) -> Arc<BigUint> {
        Arc::new(self.m.clone())
    }

    /// Decimal digit count of M.
    pub fn digits(&self) -> u64 {
        // floor(bits * log10(2)) + 1 is exact for our sizes away from powers of 10
        self.m.to_str_radix(10).len() as u64
    }
}

/// A canonical residue: `0 <= value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    value: BigUint,
    modulus: Arc<BigUint>,
}

impl Residue {
    /// Reduce `value` into canonical range. The modulus must exceed 1.
    pub fn new(value: BigUint, modulus: &Arc<BigUint>) -> Residue {
        debug_assert!(**modulus > BigUint::one());
        Residue {
            value: value % modulus.as_ref(),
            modulus: Arc::clone(modulus),
        }
    }

    /// Build from a signed integer; negatives land in canonical range,
    /// so `from_i64(-1, m)` is `m - 1`.
    pub fn from_i64(value: i64, modulus: &Arc<BigUint>) -> Residue {
        Self::from_bigint(&BigInt::from(value), modulus)
    }

    /// Build from a signed big integer, reducing into canonical range.
    pub fn from_bigint(value: &BigInt, modulus: &Arc<BigUint>) -> Residue {
        let m = BigInt::from_biguint(Sign::Plus, modulus.as_ref().clone());
        let v = value.mod_floor(&m);
        Residue {
            value: v.to_biguint().expect("mod_floor of positive modulus is nonnegative"),
            modulus: Arc::clone(modulus),
        }
    }

    pub fn zero(modulus: &Arc<BigUint>) -> Residue {
        Residue { value: BigUint::zero(), modulus: Arc::clone(modulus) }
    }

    pub fn one(modulus: &Arc<BigUint>) -> Residue {
        Self::new(BigUint::one(), modulus)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &Arc<BigUint> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    fn check_same_modulus(&self, other: &Residue) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check_same_modulus(other)?;
        let mut v = &self.value + &other.value;
        if v >= *self.modulus {
            v -= self.modulus.as_ref();
        }
        Ok(Residue { value: v, modulus: Arc::clone(&self.modulus) })
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.check_same_modulus(other)?;
        let v = if self.value >= other.value {
            &self.value - &other.value
        } else {
            self.modulus.as_ref() - &other.value + &self.value
        };
        Ok(Residue { value: v, modulus: Arc::clone(&self.modulus) })
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.check_same_modulus(other)?;
        Ok(Residue {
            value: (&self.value * &other.value) % self.modulus.as_ref(),
            modulus: Arc::clone(&self.modulus),
        })
    }

    pub fn neg(&self) -> Residue {
        if self.value.is_zero() {
            self.clone()
        } else {
            Residue {
                value: self.modulus.as_ref() - &self.value,
                modulus: Arc::clone(&self.modulus),
            }
        }
    }

    pub fn square(&self) -> Residue {
        Residue {
            value: (&self.value * &self.value) % self.modulus.as_ref(),
            modulus: Arc::clone(&self.modulus),
        }
    }

    /// `self^e` by square-and-multiply, O(log e) multiplications.
    pub fn pow(&self, e: &BigUint) -> Residue {
        Residue {
            value: self.value.modpow(e, self.modulus.as_ref()),
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn pow_u64(&self, e: u64) -> Residue {
        self.pow(&BigUint::from(e))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    ///
    /// Fails with `NotInvertible` carrying g = gcd(value, modulus) when
    /// g > 1; a proper divisor g is a factor witness for the modulus.
    pub fn inverse(&self) -> Result<Residue> {
        let a = BigInt::from_biguint(Sign::Plus, self.value.clone());
        let m = BigInt::from_biguint(Sign::Plus, self.modulus.as_ref().clone());
        let ext = a.extended_gcd(&m);
        if !ext.gcd.is_one() {
            let gcd = ext.gcd.to_biguint().unwrap_or_default();
            return Err(Error::NotInvertible { gcd });
        }
        Ok(Residue::from_bigint(&ext.x, &self.modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(m: u64) -> Arc<BigUint> {
        Arc::new(BigUint::from(m))
    }

    #[test]
    fn params_small_targets() {
        assert_eq!(TestParams::new(3, 1).unwrap().m, BigUint::from(37u32));
        assert_eq!(TestParams::new(3, 2).unwrap().m, BigUint::from(1297u32));
        assert_eq!(TestParams::new(5, 1).unwrap().m, BigUint::from(101u32));
        assert_eq!(TestParams::new(7, 1).unwrap().m, BigUint::from(197u32));
    }

    #[test]
    fn params_rejects_bad_input() {
        assert_eq!(TestParams::new(9, 1), Err(Error::UnsupportedP(9)));
        assert_eq!(TestParams::new(2, 1), Err(Error::UnsupportedP(2)));
        assert_eq!(TestParams::new(3, 0), Err(Error::BadN(0)));
        assert_eq!(TestParams::new(3, MAX_N + 1), Err(Error::BadN(MAX_N + 1)));
    }

    #[test]
    fn params_r_and_m_are_consistent() {
        for p in SUPPORTED_PRIMES {
            for n in 1..=6 {
                let params = TestParams::new(p, n).unwrap();
                assert_eq!(params.r, 1u64 << n);
                let expect = BigUint::from(2 * p).pow(params.r as u32) + 1u32;
                assert_eq!(params.m, expect);
            }
        }
    }

    #[test]
    fn m_is_one_mod_four_p_squared() {
        // precondition of the reciprocity step: M = 1 (mod 4p^2)
        for p in SUPPORTED_PRIMES {
            for n in 1..=8 {
                let params = TestParams::new(p, n).unwrap();
                let modulus = BigUint::from(4 * p * p);
                assert!(
                    (&params.m % &modulus).is_one(),
                    "M for p={p}, n={n} is not 1 mod 4p^2"
                );
            }
        }
    }

    #[test]
    fn mul_known_value() {
        // 14 * 14 = 196 = 5*37 + 11
        let m = modulus(37);
        let a = Residue::new(BigUint::from(14u32), &m);
        assert_eq!(a.mul(&a).unwrap().value(), &BigUint::from(11u32));
    }

    #[test]
    fn add_sub_identities() {
        let m = modulus(37);
        let x = Residue::new(BigUint::from(23u32), &m);
        let zero = Residue::zero(&m);
        assert_eq!(x.add(&zero).unwrap(), x);
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn negative_input_is_canonicalized() {
        let m = modulus(37);
        assert_eq!(Residue::from_i64(-1, &m).value(), &BigUint::from(36u32));
        assert_eq!(Residue::from_i64(-38, &m).value(), &BigUint::from(36u32));
        assert_eq!(Residue::from_i64(37, &m).value(), &BigUint::from(0u32));
    }

    #[test]
    fn modulus_mismatch_is_rejected() {
        let a = Residue::one(&modulus(37));
        let b = Residue::one(&modulus(41));
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch));
        assert_eq!(a.mul(&b), Err(Error::ModulusMismatch));
    }

    #[test]
    fn pow_known_values() {
        // Fermat number check at its smallest case: 3^2 = 4 = -1 (mod 5)
        let m5 = modulus(5);
        let three = Residue::new(BigUint::from(3u32), &m5);
        assert_eq!(three.pow_u64(2).value(), &BigUint::from(4u32));

        let m11 = modulus(11);
        let eight = Residue::new(BigUint::from(8u32), &m11);
        assert_eq!(eight.pow_u64(7).value(), &BigUint::from(2u32));

        let x = Residue::new(BigUint::from(29u32), &modulus(37));
        assert!(x.pow_u64(0).is_one());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        // independent route: naive product loop
        let m = modulus(1297);
        for base in [2u64, 14, 100, 1296] {
            let b = Residue::new(BigUint::from(base), &m);
            let mut acc = Residue::one(&m);
            for e in 0..40u64 {
                assert_eq!(b.pow_u64(e), acc, "base {base}, exponent {e}");
                acc = acc.mul(&b).unwrap();
            }
        }
    }

    #[test]
    fn inverse_known_values() {
        let m = modulus(37);
        let seven = Residue::new(BigUint::from(7u32), &m);
        assert_eq!(seven.inverse().unwrap().value(), &BigUint::from(16u32));
        assert!(Residue::one(&m).inverse().unwrap().is_one());

        let m = modulus(1297);
        let six = Residue::new(BigUint::from(6u32), &m);
        let inv = six.inverse().unwrap();
        assert!(six.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inverse_of_zero_divisor_carries_factor() {
        let m = modulus(15);
        let six = Residue::new(BigUint::from(6u32), &m);
        assert_eq!(
            six.inverse(),
            Err(Error::NotInvertible { gcd: BigUint::from(3u32) })
        );
    }
}
