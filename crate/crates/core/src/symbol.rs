//! The 2p-th power residue symbol of M at the tabulated seeds.
//!
//! Each supported p has a fixed seed pi of small prime norm q with
//! q = 1 (mod 2p), so the quotient by pi is the field F_q and the symbol is
//! an ordinary exponentiation there: embed zeta as the root t of the basis
//! polynomial killed by pi, raise M to (q-1)/(2p), and read off which power
//! of t came out. The result +-zeta_p^l picks one of the two congruence
//! cases of the sequence test.
//!
//! Computed mode is authoritative; the fixed residue-class tables duplicate
//! it for the classes each family actually reaches and serve as a
//! cross-check.

use crate::cyclotomic::{CycBasis, CycElem, ExactCycElem, GroupRingExponent};
use crate::error::{Error, Result};
use crate::residue::TestParams;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::sync::Arc;

/// A root of unity +-zeta_p^l, encoded as a sign and the exponent l mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolValue {
    /// +1 or -1.
    pub sign: i8,
    /// Exponent of zeta_p, reduced mod p.
    pub l: u32,
}

impl SymbolValue {
    pub const fn new(sign: i8, l: u32) -> SymbolValue {
        SymbolValue { sign, l }
    }

    /// Which congruence pattern the final sequence values must match.
    pub fn congruence_case(&self) -> CongruenceCase {
        if self.sign >= 0 {
            CongruenceCase::Direct
        } else {
            CongruenceCase::Alternating
        }
    }

    /// True when the symbol is +-1, which the sequence test cannot use.
    pub fn is_degenerate(&self, p: u32) -> bool {
        self.l.is_multiple_of(p)
    }
}

/// Case selector for the final congruence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceCase {
    /// Symbol is +zeta_p^l: expect S^(j) = a_j.
    Direct,
    /// Symbol is -zeta_p^l: expect S^(j) = (-1)^j a_j.
    Alternating,
}

/// Map an exponent of zeta (0 <= i < 2p) to +-zeta_p^l form.
pub fn decode_exponent(i: u64, p: u32) -> SymbolValue {
    let p64 = p as u64;
    debug_assert!(i < 2 * p64);
    if i.is_multiple_of(2) {
        SymbolValue::new(1, ((i / 2) % p64) as u32)
    } else {
        // zeta^i = -zeta^(i+p) and i+p is even
        SymbolValue::new(-1, (((i + p64) / 2) % p64) as u32)
    }
}

/// Inverse of `decode_exponent`.
pub fn encode_exponent(v: SymbolValue, p: u32) -> u64 {
    let p64 = p as u64;
    let l = (v.l as u64) % p64;
    if v.sign >= 0 {
        (2 * l) % (2 * p64)
    } else {
        (2 * l + p64) % (2 * p64)
    }
}

/// One tabulated seed: the element pi (given by its zeta_p coefficients),
/// the exponent sum tau written out in the fixed tables, the norm q, and
/// the least n the residue-class table covers.
#[derive(Debug, Clone)]
pub struct SeedRecord {
    pub p: u32,
    pub q: u64,
    pub n_min: u32,
    pi_terms: &'static [(i64, u32)],
    tau_terms: &'static [(u64, i64)],
}

impl SeedRecord {
    pub fn for_p(p: u32) -> Result<&'static SeedRecord> {
        SEEDS.iter().find(|s| s.p == p).ok_or(Error::UnsupportedP(p))
    }

    pub fn all() -> &'static [SeedRecord] {
        &SEEDS
    }

    /// The seed as an exact-integer element (for norm validation).
    pub fn pi_exact(&self) -> ExactCycElem {
        let basis = CycBasis::new(self.p).expect("seed table only holds supported p");
        ExactCycElem::from_zeta_p_terms(&basis, self.pi_terms)
    }

    /// The seed reduced mod M.
    pub fn pi_mod(&self, basis: &CycBasis, modulus: &Arc<BigUint>) -> CycElem {
        CycElem::from_zeta_p_terms(basis, modulus, self.pi_terms)
    }

    /// The tabulated exponent sum, normalized.
    pub fn tau(&self) -> GroupRingExponent {
        GroupRingExponent::new(self.p, self.tau_terms)
            .expect("seed table tau indices are units mod 2p")
    }
}

const SEEDS: [SeedRecord; 7] = [
    SeedRecord { p: 3, q: 7, n_min: 1, pi_terms: &[(2, 0), (3, 1)], tau_terms: &[(1, 1)] },
    SeedRecord {
        p: 5,
        q: 11,
        n_min: 1,
        pi_terms: &[(1, 0), (-1, 1), (-1, 3)],
        tau_terms: &[(1, 1), (3, -3)],
    },
    SeedRecord {
        p: 7,
        q: 29,
        n_min: 2,
        pi_terms: &[(1, 0), (-1, 1), (1, 4)],
        tau_terms: &[(1, 1), (3, 5), (5, 3)],
    },
    SeedRecord {
        p: 11,
        q: 23,
        n_min: 1,
        pi_terms: &[(1, 0), (1, 7), (1, 8)],
        tau_terms: &[(1, 1), (3, -7), (5, 9), (7, -3), (9, 5)],
    },
    SeedRecord {
        p: 13,
        q: 53,
        n_min: 2,
        pi_terms: &[(1, 0), (1, 2), (1, 5)],
        tau_terms: &[(1, 1), (3, 9), (5, -5), (7, -11), (9, 3), (11, -7)],
    },
    SeedRecord {
        p: 17,
        q: 103,
        n_min: 1,
        pi_terms: &[(1, 0), (1, 2), (1, 9)],
        tau_terms: &[
            (1, 1),
            (3, -11),
            (5, 7),
            (7, 5),
            (9, -15),
            (11, -3),
            (13, -13),
            (15, -9),
        ],
    },
    SeedRecord {
        p: 19,
        q: 229,
        n_min: 2,
        pi_terms: &[(-1, 0), (-1, 2), (1, 15)],
        tau_terms: &[
            (1, 1),
            (3, 13),
            (5, -15),
            (7, 11),
            (9, 17),
            (11, 7),
            (13, 3),
            (15, -5),
            (17, 9),
        ],
    },
];

fn pow_mod_u64(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// M mod q straight from the parameters: (2p)^(2^n) + 1 reduced mod q.
pub fn m_mod_q(params: &TestParams, q: u64) -> u64 {
    let mut u = (2 * params.p as u64) % q;
    for _ in 0..params.n {
        u = (u as u128 * u as u128 % q as u128) as u64;
    }
    (u + 1) % q
}

/// The residue t of zeta in F_q: the unique root of the basis polynomial
/// that the seed evaluates to zero on.
pub fn embed_root(seed: &SeedRecord) -> Result<u64> {
    let q = seed.q;
    let two_p = 2 * seed.p as u64;
    for t in 1..q {
        // basis polynomial at t: alternating sum of t^k, k = 0..p-1
        let mut phi: u64 = 0;
        let mut power: u64 = 1;
        for k in 0..seed.p {
            phi = if k % 2 == 0 { (phi + power) % q } else { (phi + q - power) % q };
            power = (power as u128 * t as u128 % q as u128) as u64;
        }
        if phi != 0 {
            continue;
        }
        // seed at zeta -> t, i.e. zeta_p -> t^2
        let t_sq = (t as u128 * t as u128 % q as u128) as u64;
        let mut val: i128 = 0;
        for &(coeff, k) in seed.pi_terms {
            let term = pow_mod_u64(t_sq, k as u64, q) as i128;
            val = (val + coeff as i128 * term).rem_euclid(q as i128);
        }
        if val == 0 {
            debug_assert_eq!(pow_mod_u64(t, two_p, q), 1);
            debug_assert_eq!(pow_mod_u64(t, seed.p as u64, q), q - 1);
            return Ok(t);
        }
    }
    Err(Error::NoEmbedding { p: seed.p })
}

/// Symbol of a residue class mod q (the class of M), without degeneracy
/// filtering: 0 <= result < 2p as an exponent of t.
fn raw_symbol_exponent(seed: &SeedRecord, class: u64) -> Result<u64> {
    let q = seed.q;
    let two_p = 2 * seed.p as u64;
    let t = embed_root(seed)?;
    let v = pow_mod_u64(class % q, (q - 1) / two_p, q);
    let mut power: u64 = 1;
    for i in 0..two_p {
        if power == v {
            return Ok(i);
        }
        power = (power as u128 * t as u128 % q as u128) as u64;
    }
    Err(Error::Internal(format!(
        "symbol value {v} outside the group generated by the embedding root (p={})",
        seed.p
    )))
}

/// Symbol for a residue class of M mod q.
pub fn symbol_from_class(seed: &SeedRecord, class: u64) -> Result<SymbolValue> {
    if class.is_multiple_of(seed.q) {
        return Err(Error::SeedDividesM { q: seed.q });
    }
    let value = decode_exponent(raw_symbol_exponent(seed, class)?, seed.p);
    if value.is_degenerate(seed.p) {
        return Err(Error::SymbolIsPlusMinusOne);
    }
    Ok(value)
}

/// The symbol of M at the seed, computed in F_q.
pub fn compute_symbol(params: &TestParams, seed: &SeedRecord) -> Result<SymbolValue> {
    symbol_from_class(seed, m_mod_q(params, seed.q))
}

/// Fixed residue-class table for one p: every class of M mod q the family
/// reaches for n >= n_min, with its symbol.
#[derive(Debug, Clone)]
pub struct CaseTable {
    pub p: u32,
    pub q: u64,
    entries: &'static [(u64, SymbolValue)],
}

impl CaseTable {
    pub fn for_p(p: u32) -> Result<&'static CaseTable> {
        CASE_TABLES.iter().find(|t| t.p == p).ok_or(Error::UnsupportedP(p))
    }

    pub fn entries(&self) -> &'static [(u64, SymbolValue)] {
        self.entries
    }

    pub fn lookup(&self, class: u64) -> Option<SymbolValue> {
        self.entries
            .iter()
            .find(|(c, _)| *c == class % self.q)
            .map(|&(_, v)| v)
    }
}

const CASE_TABLES: [CaseTable; 7] = [
    CaseTable { p: 3, q: 7, entries: &[(2, SymbolValue::new(1, 2))] },
    CaseTable { p: 5, q: 11, entries: &[(2, SymbolValue::new(-1, 1))] },
    CaseTable {
        p: 7,
        q: 29,
        entries: &[
            (8, SymbolValue::new(-1, 3)),
            (21, SymbolValue::new(-1, 3)),
            (24, SymbolValue::new(1, 1)),
        ],
    },
    CaseTable { p: 11, q: 23, entries: &[(2, SymbolValue::new(1, 2))] },
    CaseTable {
        p: 13,
        q: 53,
        entries: &[
            (25, SymbolValue::new(1, 3)),
            (16, SymbolValue::new(1, 4)),
            (37, SymbolValue::new(1, 4)),
            (47, SymbolValue::new(1, 5)),
            (11, SymbolValue::new(1, 6)),
            (29, SymbolValue::new(1, 7)),
            (48, SymbolValue::new(-1, 8)),
            (43, SymbolValue::new(1, 9)),
            (17, SymbolValue::new(1, 10)),
            (14, SymbolValue::new(-1, 2)),
            (45, SymbolValue::new(-1, 3)),
            (50, SymbolValue::new(-1, 4)),
        ],
    },
    CaseTable {
        p: 17,
        q: 103,
        entries: &[
            (82, SymbolValue::new(1, 2)),
            (15, SymbolValue::new(1, 7)),
            (35, SymbolValue::new(-1, 3)),
            (24, SymbolValue::new(-1, 4)),
            (101, SymbolValue::new(-1, 6)),
            (94, SymbolValue::new(-1, 6)),
            (10, SymbolValue::new(-1, 10)),
            (73, SymbolValue::new(-1, 13)),
        ],
    },
    CaseTable {
        p: 19,
        q: 229,
        entries: &[
            (181, SymbolValue::new(1, 1)),
            (185, SymbolValue::new(1, 2)),
            (15, SymbolValue::new(1, 3)),
            (225, SymbolValue::new(1, 6)),
            (56, SymbolValue::new(1, 8)),
            (174, SymbolValue::new(1, 10)),
            (184, SymbolValue::new(1, 11)),
            (168, SymbolValue::new(1, 16)),
            (26, SymbolValue::new(1, 17)),
            (49, SymbolValue::new(1, 17)),
            (131, SymbolValue::new(-1, 1)),
            (38, SymbolValue::new(-1, 8)),
            (92, SymbolValue::new(-1, 8)),
            (160, SymbolValue::new(-1, 10)),
            (112, SymbolValue::new(-1, 11)),
            (194, SymbolValue::new(-1, 13)),
            (152, SymbolValue::new(-1, 14)),
            (197, SymbolValue::new(-1, 15)),
        ],
    },
];

/// Tabulated symbol for M, when its class mod q is covered.
pub fn table_lookup(p: u32, m: &BigUint) -> Result<SymbolValue> {
    let table = CaseTable::for_p(p)?;
    let class = (m % table.q).to_u64().expect("residue below a small q");
    table
        .lookup(class)
        .ok_or(Error::UnlistedResidue { p, class })
}
