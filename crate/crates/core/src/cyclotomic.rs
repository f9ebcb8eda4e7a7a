//! Arithmetic in Z\[zeta\]/(M) where zeta is a primitive 2p-th root of unity.
//!
//! Elements are coefficient vectors of length p-1 over the power basis
//! {1, zeta, ..., zeta^(p-2)}, reduced modulo the 2p-th cyclotomic polynomial
//! x^(p-1) - x^(p-2) + ... - x + 1. Two coefficient domains are provided:
//! exact signed integers (`ExactCycElem`, used to validate seed norms) and
//! canonical residues mod M (`CycElem`, used by the sequence engine).
//!
//! The exponent identities used throughout: zeta^p = -1, zeta^(2p) = 1, and
//! zeta^(p-1) = zeta^(p-2) - zeta^(p-3) + ... + zeta - 1.

use crate::error::{Error, Result};
use crate::residue::{Residue, SUPPORTED_PRIMES};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::sync::Arc;

/// The power basis of Z\[zeta_2p\]: prime p, degree p-1, and the coefficients
/// of the reduction polynomial (lowest degree first, alternating signs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycBasis {
    p: u32,
    degree: usize,
    reduction_poly: Vec<i64>,
}

impl CycBasis {
    pub fn new(p: u32) -> Result<CycBasis> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedP(p));
        }
        let degree = (p - 1) as usize;
        let reduction_poly = (0..=degree)
            .map(|k| if k % 2 == 0 { 1 } else { -1 })
            .collect();
        Ok(CycBasis { p, degree, reduction_poly })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// p - 1, the rank of the power basis.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of the degree-(p-1) reduction polynomial, lowest first.
    pub fn reduction_poly(&self) -> &[i64] {
        &self.reduction_poly
    }

    fn two_p(&self) -> usize {
        2 * self.p as usize
    }
}

/// Scatter `c * zeta^e` (0 <= e < 2p) onto the power basis, exact domain.
fn add_zeta_power_exact(acc: &mut [BigInt], e: usize, c: &BigInt, p: usize) {
    if c.is_zero() {
        return;
    }
    if e >= p {
        // zeta^p = -1
        return add_zeta_power_exact(acc, e - p, &-c, p);
    }
    if e == p - 1 {
        // zeta^(p-1) = sum_{k<p-1} (-1)^(k+1) zeta^k
        for (k, slot) in acc.iter_mut().enumerate() {
            if k % 2 == 1 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        return;
    }
    acc[e] += c;
}

/// Same scatter over residues mod M.
fn add_zeta_power_mod(acc: &mut [Residue], e: usize, c: &Residue, p: usize) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    if e >= p {
        return add_zeta_power_mod(acc, e - p, &c.neg(), p);
    }
    if e == p - 1 {
        for (k, slot) in acc.iter_mut().enumerate() {
            *slot = if k % 2 == 1 { slot.add(c)? } else { slot.sub(c)? };
        }
        return Ok(());
    }
    acc[e] = acc[e].add(c)?;
    Ok(())
}

/// An element with exact integer coefficients; no modulus attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCycElem {
    basis: CycBasis,
    coeffs: Vec<BigInt>,
}

impl ExactCycElem {
    pub fn zero(basis: &CycBasis) -> ExactCycElem {
        ExactCycElem {
            basis: basis.clone(),
            coeffs: vec![BigInt::zero(); basis.degree()],
        }
    }

    /// Encode `sum coeff * zeta_p^k` using zeta_p = zeta^2.
    pub fn from_zeta_p_terms(basis: &CycBasis, terms: &[(i64, u32)]) -> ExactCycElem {
        let mut out = Self::zero(basis);
        let two_p = basis.two_p();
        let p = basis.p() as usize;
        for &(coeff, k) in terms {
            let e = (2 * k as usize) % two_p;
            add_zeta_power_exact(&mut out.coeffs, e, &BigInt::from(coeff), p);
        }
        out
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn basis(&self) -> &CycBasis {
        &self.basis
    }

    /// Substitute zeta -> zeta^c for c coprime to 2p.
    pub fn galois(&self, c: i64) -> Result<ExactCycElem> {
        let two_p = self.basis.two_p() as i64;
        let cc = c.rem_euclid(two_p) as usize;
        if gcd_u64(cc as u64, two_p as u64) != 1 {
            return Err(Error::BadAutomorphismIndex(c));
        }
        let mut out = Self::zero(&self.basis);
        let p = self.basis.p() as usize;
        for (i, coeff) in self.coeffs.iter().enumerate() {
            let e = (i * cc) % self.basis.two_p();
            add_zeta_power_exact(&mut out.coeffs, e, coeff, p);
        }
        Ok(out)
    }

    pub fn conj(&self) -> ExactCycElem {
        self.galois(-1).expect("-1 is always coprime to 2p")
    }

    /// True when complex conjugation fixes the element.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn mul(&self, other: &ExactCycElem) -> Result<ExactCycElem> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let deg = self.basis.degree();
        let mut tmp = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    tmp[i + j] += a * b;
                }
            }
        }
        // fold x^d for d >= p-1 down using x^(p-1) = x^(p-2) - ... - 1
        for d in (deg..tmp.len()).rev() {
            let c = std::mem::take(&mut tmp[d]);
            if c.is_zero() {
                continue;
            }
            let base = d - deg;
            for k in 0..deg {
                if k % 2 == 1 {
                    tmp[base + k] += &c;
                } else {
                    tmp[base + k] -= &c;
                }
            }
        }
        tmp.truncate(deg);
        Ok(ExactCycElem { basis: self.basis.clone(), coeffs: tmp })
    }

    /// Product of all conjugates; a rational integer for any element.
    pub fn norm(&self) -> Result<BigInt> {
        let two_p = self.basis.two_p() as u64;
        let mut acc: Option<ExactCycElem> = None;
        for c in (1..two_p).step_by(2) {
            if gcd_u64(c, two_p) != 1 {
                continue;
            }
            let conj = self.galois(c as i64)?;
            acc = Some(match acc {
                None => conj,
                Some(prev) => prev.mul(&conj)?,
            });
        }
        let product = acc.expect("2p has at least one unit");
        if product.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonRationalNorm);
        }
        Ok(product.coeffs[0].clone())
    }

    /// Reduce every coefficient mod M.
    pub fn to_mod(&self, modulus: &Arc<BigUint>) -> CycElem {
        CycElem {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Residue::from_bigint(c, modulus))
                .collect(),
        }
    }
}

/// An element of Z\[zeta\]/(M): p-1 canonical residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycElem {
    basis: CycBasis,
    coeffs: Vec<Residue>,
}

impl CycElem {
    pub fn zero(basis: &CycBasis, modulus: &Arc<BigUint>) -> CycElem {
        CycElem {
            basis: basis.clone(),
            coeffs: vec![Residue::zero(modulus); basis.degree()],
        }
    }

    pub fn one(basis: &CycBasis, modulus: &Arc<BigUint>) -> CycElem {
        let mut out = Self::zero(basis, modulus);
        out.coeffs[0] = Residue::one(modulus);
        out
    }

    /// The basis generator zeta itself.
    pub fn zeta(basis: &CycBasis, modulus: &Arc<BigUint>) -> CycElem {
        let mut out = Self::zero(basis, modulus);
        out.coeffs[1] = Residue::one(modulus);
        out
    }

    /// Encode `sum coeff * zeta_p^k` with zeta_p = zeta^2, reduced mod M.
    pub fn from_zeta_p_terms(
        basis: &CycBasis,
        modulus: &Arc<BigUint>,
        terms: &[(i64, u32)],
    ) -> CycElem {
        ExactCycElem::from_zeta_p_terms(basis, terms).to_mod(modulus)
    }

    pub fn basis(&self) -> &CycBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &Arc<BigUint> {
        self.coeffs[0].modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &CycElem) -> Result<()> {
        if self.basis != other.basis || self.modulus() != other.modulus() {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &CycElem) -> Result<CycElem> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(CycElem { basis: self.basis.clone(), coeffs })
    }

    pub fn sub(&self, other: &CycElem) -> Result<CycElem> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(CycElem { basis: self.basis.clone(), coeffs })
    }

    pub fn neg(&self) -> CycElem {
        CycElem {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(Residue::neg).collect(),
        }
    }

    /// Polynomial product reduced modulo the basis polynomial and mod M.
    pub fn mul(&self, other: &CycElem) -> Result<CycElem> {
        self.check_compatible(other)?;
        let deg = self.basis.degree();
        let modulus = self.modulus();
        let mut tmp = vec![Residue::zero(modulus); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    tmp[i + j] = tmp[i + j].add(&a.mul(b)?)?;
                }
            }
        }
        for d in (deg..tmp.len()).rev() {
            let c = tmp[d].clone();
            if c.is_zero() {
                continue;
            }
            tmp[d] = Residue::zero(modulus);
            let base = d - deg;
            for k in 0..deg {
                tmp[base + k] = if k % 2 == 1 {
                    tmp[base + k].add(&c)?
                } else {
                    tmp[base + k].sub(&c)?
                };
            }
        }
        tmp.truncate(deg);
        Ok(CycElem { basis: self.basis.clone(), coeffs: tmp })
    }

    pub fn square(&self) -> Result<CycElem> {
        self.mul(self)
    }

    /// Substitute zeta -> zeta^c; c must be coprime to 2p.
    pub fn galois(&self, c: i64) -> Result<CycElem> {
        let two_p = self.basis.two_p() as i64;
        let cc = c.rem_euclid(two_p) as usize;
        if gcd_u64(cc as u64, two_p as u64) != 1 {
            return Err(Error::BadAutomorphismIndex(c));
        }
        let mut out = Self::zero(&self.basis, self.modulus());
        let p = self.basis.p() as usize;
        for (i, coeff) in self.coeffs.iter().enumerate() {
            let e = (i * cc) % self.basis.two_p();
            add_zeta_power_mod(&mut out.coeffs, e, coeff, p)?;
        }
        Ok(out)
    }

    /// Complex conjugation, zeta -> zeta^(2p-1).
    pub fn conj(&self) -> CycElem {
        self.galois(-1).expect("-1 is always coprime to 2p")
    }

    /// Binary exponentiation in the ring.
    pub fn pow_u64(&self, e: u64) -> Result<CycElem> {
        if e == 0 {
            return Ok(Self::one(&self.basis, self.modulus()));
        }
        let mut result = self.clone();
        let bits = 64 - e.leading_zeros();
        for i in (0..bits - 1).rev() {
            result = result.square()?;
            if (e >> i) & 1 == 1 {
                result = result.mul(self)?;
            }
        }
        Ok(result)
    }

    /// Inverse by the extended Euclidean algorithm over (Z/M)\[x\].
    ///
    /// When a leading-coefficient inversion meets a zero divisor the error
    /// is `FactorFound(g)` with g a nontrivial factor of M: for composite M
    /// the quotient ring is not a field and the failure itself proves
    /// compositeness.
    pub fn inverse(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::DegenerateElement);
        }
        let modulus = self.modulus().clone();
        let deg = self.basis.degree();

        // r0 = reduction polynomial, r1 = self; maintain u_i with
        // u_i * self = r_i (mod reduction polynomial)
        let mut r0: Vec<Residue> = self
            .basis
            .reduction_poly()
            .iter()
            .map(|&c| Residue::from_i64(c, &modulus))
            .collect();
        let mut r1 = poly_trim(self.coeffs.clone());
        let mut u0 = vec![Residue::zero(&modulus)];
        let mut u1 = vec![Residue::one(&modulus)];

        while poly_deg(&r1) > 0 {
            let (q, rem) = poly_divmod(&r0, &r1, &modulus)?;
            let u_next = poly_sub(&u0, &poly_mul(&q, &u1, &modulus)?, &modulus)?;
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = u_next;
        }

        if r1.is_empty() {
            // gcd of self with the basis polynomial has positive degree but
            // no factor of M surfaced; the element is a zero divisor that
            // the seeds used by the engine can never produce.
            return Err(Error::Internal(
                "zero divisor without factor witness in ring inversion".into(),
            ));
        }
        let scale = match r1[0].inverse() {
            Ok(inv) => inv,
            Err(Error::NotInvertible { gcd }) => return Err(Error::FactorFound(gcd)),
            Err(e) => return Err(e),
        };
        let mut coeffs: Vec<Residue> = u1.iter().map(|c| c.mul(&scale)).collect::<Result<_>>()?;
        coeffs.resize(deg, Residue::zero(&modulus));
        Ok(CycElem { basis: self.basis.clone(), coeffs })
    }

    /// Apply a formal sum of automorphisms: product of galois(self, c)^k.
    pub fn apply_group_ring(&self, exponent: &GroupRingExponent) -> Result<CycElem> {
        let mut acc = Self::one(&self.basis, self.modulus());
        for &(weight, c) in exponent.terms() {
            let image = self.galois(c as i64)?;
            acc = acc.mul(&image.pow_u64(weight)?)?;
        }
        Ok(acc)
    }

    /// The constant coefficient, provided every other coefficient vanishes.
    pub fn rational_value(&self) -> Result<Residue> {
        for (index, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                return Err(Error::NotRational { index });
            }
        }
        Ok(self.coeffs[0].clone())
    }
}

/// A formal nonnegative-integer combination of automorphisms, with indices
/// normalized into (Z/2pZ)* and sorted for canonical comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingExponent {
    p: u32,
    terms: Vec<(u64, u64)>,
}

impl GroupRingExponent {
    /// Build from raw `(weight, automorphism index)` pairs; indices may be
    /// negative and are reduced mod 2p. Duplicate indices are merged.
    pub fn new(p: u32, raw: &[(u64, i64)]) -> Result<GroupRingExponent> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedP(p));
        }
        let two_p = 2 * p as i64;
        let mut terms: Vec<(u64, u64)> = Vec::new();
        for &(weight, c) in raw {
            if weight == 0 {
                continue;
            }
            let cc = c.rem_euclid(two_p) as u64;
            if gcd_u64(cc, two_p as u64) != 1 {
                return Err(Error::BadAutomorphismIndex(c));
            }
            match terms.iter_mut().find(|(_, existing)| *existing == cc) {
                Some(term) => term.0 += weight,
                None => terms.push((weight, cc)),
            }
        }
        terms.sort_by_key(|&(_, c)| c);
        Ok(GroupRingExponent { p, terms })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `(weight, automorphism index)` pairs, index-sorted.
    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }
}

/// The canonical exponent sum: term (2i-1) on the automorphism inverse to
/// 2i-1 in (Z/2pZ)*, for i = 1 ..= (p-1)/2.
pub fn compute_gamma(p: u32) -> Result<GroupRingExponent> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(Error::UnsupportedP(p));
    }
    let two_p = 2 * p as u64;
    let raw: Vec<(u64, i64)> = (1..=(p - 1) / 2)
        .map(|i| {
            let k = (2 * i - 1) as u64;
            let inv = invert_mod_u64(k, two_p).expect("odd k < 2p is a unit mod 2p");
            (k, inv as i64)
        })
        .collect();
    GroupRingExponent::new(p, &raw)
}

// ---- small polynomial helpers over residues (lowest degree first) ----

fn poly_trim(mut v: Vec<Residue>) -> Vec<Residue> {
    while v.last().map(Residue::is_zero).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_deg(v: &[Residue]) -> isize {
    v.len() as isize - 1
}

fn poly_sub(a: &[Residue], b: &[Residue], modulus: &Arc<BigUint>) -> Result<Vec<Residue>> {
    let len = a.len().max(b.len());
    let zero = Residue::zero(modulus);
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y)?);
    }
    Ok(poly_trim(out))
}

fn poly_mul(a: &[Residue], b: &[Residue], modulus: &Arc<BigUint>) -> Result<Vec<Residue>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![Residue::zero(modulus); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y)?)?;
            }
        }
    }
    Ok(poly_trim(out))
}

/// Division with remainder; the divisor's leading coefficient must be a
/// unit. A zero divisor surfaces as `FactorFound`.
fn poly_divmod(
    num: &[Residue],
    den: &[Residue],
    modulus: &Arc<BigUint>,
) -> Result<(Vec<Residue>, Vec<Residue>)> {
    debug_assert!(!den.is_empty());
    let lead_inv = match den.last().expect("nonzero divisor").inverse() {
        Ok(inv) => inv,
        Err(Error::NotInvertible { gcd }) => return Err(Error::FactorFound(gcd)),
        Err(e) => return Err(e),
    };
    let mut rem: Vec<Residue> = num.to_vec();
    let mut quot = vec![Residue::zero(modulus); num.len().saturating_sub(den.len()) + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap().mul(&lead_inv)?;
        quot[shift] = factor.clone();
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] = rem[shift + i].sub(&factor.mul(d)?)?;
        }
        rem = poly_trim(rem);
    }
    Ok((poly_trim(quot), rem))
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` in (Z/mZ)*, if it exists.
pub(crate) fn invert_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
