//! Primality proving for M = (2p)^(2^n) + 1 with odd prime p <= 19.
//!
//! The verdict comes from a cyclotomic sequence test: a fixed seed element
//! pi of small prime norm q determines a residue symbol of M, the symbol
//! picks one of two congruence cases, and M is prime exactly when the final
//! values of (p-1)/2 companion sequences hit the signed coefficients of the
//! minimal polynomial of zeta_p + 1/zeta_p. Everything reduces to
//! arithmetic in Z/MZ.
//!
//! Module map:
//! - [`residue`] — the targets M and canonical arithmetic mod M
//! - [`cyclotomic`] — the ring Z\[zeta_2p\]/(M): Galois action, inversion,
//!   group-ring exponentiation, exact seed norms
//! - [`chebyshev`] — the polynomial family G_n and the constants a_j
//! - [`symbol`] — residue symbols over the seed norm fields, seed and
//!   case tables
//! - [`engine`] — the test pipeline, fast recurrence paths for p = 3 and
//!   p = 5, the divisor precondition, cross-mode agreement checks
//! - [`baselines`] — Lucas-Lehmer, Pepin, strong probable-prime oracle,
//!   trial division
//!
//! ```
//! use cycloprime::{run_auto, Outcome, TestParams};
//!
//! let params = TestParams::new(3, 2)?; // M = 6^(2^2) + 1 = 1297
//! assert_eq!(run_auto(&params)?.outcome, Outcome::Prime);
//! # Ok::<(), cycloprime::Error>(())
//! ```

pub mod baselines;
pub mod chebyshev;
pub mod cyclotomic;
pub mod engine;
mod error;
pub mod residue;
pub mod symbol;

pub use error::{Error, Result};

pub use baselines::OracleConfig;
pub use cyclotomic::{compute_gamma, CycBasis, CycElem, ExactCycElem, GroupRingExponent};
pub use engine::{
    baseline_correction_check, run_auto, run_general, run_recurrence_p3, run_recurrence_p5,
    EngineMode, Outcome, SequenceState, Verdict, Witness,
};
pub use residue::{Residue, TestParams, MAX_N, SUPPORTED_PRIMES};
pub use symbol::{CaseTable, CongruenceCase, SeedRecord, SymbolValue};
