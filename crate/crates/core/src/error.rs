use num_bigint::BigUint;
use std::fmt;

/// Errors shared across the crate.
///
/// `FactorFound` and `NotInvertible` are special: they carry a nontrivial
/// divisor of the working modulus, so callers running a primality test can
/// convert them into a composite verdict instead of failing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not one of the supported odd primes 3..=19.
    UnsupportedP(u32),
    /// Sequence index `n` outside the supported range (`n >= 1` required).
    BadN(u32),
    /// Invalid baseline index (e.g. a non-prime Mersenne exponent).
    BadIndex(u64),
    /// Two residues with different moduli were combined.
    ModulusMismatch,
    /// Inversion failed; carries `gcd(a, modulus) > 1`. When the gcd is a
    /// proper divisor it is a factor witness for the modulus.
    NotInvertible { gcd: BigUint },
    /// Two ring elements over different bases or moduli were combined.
    BasisMismatch,
    /// Automorphism index not coprime to 2p.
    BadAutomorphismIndex(i64),
    /// A ring inversion met a zero divisor; carries a nontrivial factor of
    /// the modulus. The tested number is composite.
    FactorFound(BigUint),
    /// Attempted to invert the zero element.
    DegenerateElement,
    /// The conjugate product of an exact element was not a rational integer.
    NonRationalNorm,
    /// A value expected to be rational had a nonzero coefficient at `index`.
    NotRational { index: usize },
    /// No residue embeds the seed into its norm field (corrupted seed data).
    NoEmbedding { p: u32 },
    /// The seed norm `q` divides the tested number, which is therefore
    /// composite with factor `q`.
    SeedDividesM { q: u64 },
    /// The residue symbol degenerated to +-1, so the sequence test does not
    /// apply to this number.
    SymbolIsPlusMinusOne,
    /// The residue class of M is not covered by the fixed case table.
    UnlistedResidue { p: u32, class: u64 },
    /// Internal invariant violation; indicates a bug, never a verdict.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedP(p) => write!(f, "unsupported prime p = {p} (need one of 3, 5, 7, 11, 13, 17, 19)"),
            Error::BadN(n) => write!(f, "invalid exponent index n = {n} (need 1 <= n <= 30)"),
            Error::BadIndex(i) => write!(f, "invalid baseline index {i}"),
            Error::ModulusMismatch => write!(f, "residues have different moduli"),
            Error::NotInvertible { gcd } => write!(f, "value not invertible: gcd with modulus is {gcd}"),
            Error::BasisMismatch => write!(f, "ring elements have different bases or moduli"),
            Error::BadAutomorphismIndex(c) => write!(f, "automorphism index {c} is not coprime to 2p"),
            Error::FactorFound(g) => write!(f, "zero divisor met during inversion: {g} divides the modulus"),
            Error::DegenerateElement => write!(f, "cannot invert the zero element"),
            Error::NonRationalNorm => write!(f, "conjugate product is not a rational integer"),
            Error::NotRational { index } => write!(f, "nonzero coefficient at index {index} in a value expected to be rational"),
            Error::NoEmbedding { p } => write!(f, "no embedding root found for the p = {p} seed"),
            Error::SeedDividesM { q } => write!(f, "seed norm {q} divides the tested number"),
            Error::SymbolIsPlusMinusOne => write!(f, "residue symbol is +-1; the sequence test does not apply"),
            Error::UnlistedResidue { p, class } => write!(f, "residue class {class} for p = {p} is not in the case table"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
