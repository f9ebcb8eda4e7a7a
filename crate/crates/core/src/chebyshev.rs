//! The polynomial family G_n with G_0 = 1, G_1 = x and
//!
//!   G_n = G_{n/2}^2 - 2               (n even)
//!   G_n = G_{(n-1)/2} G_{(n+1)/2} - x (n odd)
//!
//! satisfying G_n(x + 1/x) = x^n + 1/x^n, together with the sums
//! F(x) = G_0 + ... + G_{(p-1)/2} whose signed coefficients a_j are the
//! congruence targets of the sequence test.

use crate::error::{Error, Result};
use crate::residue::{Residue, SUPPORTED_PRIMES};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> IntPoly {
        IntPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        let mut v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        while v.last().map(Zero::is_zero).unwrap_or(false) {
            v.pop();
        }
        IntPoly { coeffs: v }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(BigInt::is_one).unwrap_or(false)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(len);
        for i in 0..len {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Self::trimmed(v)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(len);
        for i in 0..len {
            v.push(self.coeff(i) - other.coeff(i));
        }
        Self::trimmed(v)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    /// Horner evaluation with coefficients reduced mod M.
    pub fn eval_mod(&self, x: &Residue) -> Residue {
        let modulus = x.modulus();
        let mut acc = Residue::zero(modulus);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x)
                .and_then(|t| t.add(&Residue::from_bigint(c, modulus)))
                .expect("same modulus throughout");
        }
        acc
    }

    fn trimmed(mut v: Vec<BigInt>) -> IntPoly {
        while v.last().map(Zero::is_zero).unwrap_or(false) {
            v.pop();
        }
        IntPoly { coeffs: v }
    }
}

/// G_n by the halving recursion, memoized across the intermediate indices.
pub fn g_poly(n: u64) -> IntPoly {
    fn rec(n: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
        if let Some(hit) = memo.get(&n) {
            return hit.clone();
        }
        let result = match n {
            0 => IntPoly::one(),
            1 => IntPoly::x(),
            _ if n.is_multiple_of(2) => {
                let half = rec(n / 2, memo);
                half.mul(&half).sub(&IntPoly::from_i64(&[2]))
            }
            _ => {
                let lo = rec((n - 1) / 2, memo);
                let hi = rec(n.div_ceil(2), memo);
                lo.mul(&hi).sub(&IntPoly::x())
            }
        };
        memo.insert(n, result.clone());
        result
    }
    rec(n, &mut HashMap::new())
}

/// F(x) = sum of G_k for k = 0 ..= (p-1)/2, the minimal polynomial of
/// zeta_p + 1/zeta_p; monic of degree (p-1)/2.
pub fn f_poly(p: u32) -> Result<IntPoly> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(Error::UnsupportedP(p));
    }
    let mut acc = IntPoly::zero();
    for k in 0..=(p as u64 - 1) / 2 {
        acc = acc.add(&g_poly(k));
    }
    Ok(acc)
}

/// The signed constants a_1 ..= a_{(p-1)/2} read off F by the alternating
/// convention: the coefficient of x^((p-1)/2 - j) is (-1)^j a_j, a_0 = 1.
pub fn acceptance_constants(p: u32) -> Result<Vec<i64>> {
    let f = f_poly(p)?;
    let half = ((p - 1) / 2) as usize;
    let mut out = Vec::with_capacity(half);
    for j in 1..=half {
        let c = f.coeff(half - j);
        let a = if j % 2 == 0 { c } else { -c };
        out.push(a.to_i64().ok_or_else(|| {
            Error::Internal(format!("constant a_{j} for p={p} exceeds i64"))
        })?);
    }
    Ok(out)
}
