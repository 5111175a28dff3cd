//! Subgroups, subrings, unital subrings and ideals of the ring `Z_m × Z_n`.
//!
//! Every additive subgroup of `Z_m × Z_n` is described by a quintuple
//! `(a, b, c, d, ℓ)` (see [`goursat`]). On top of that parametrization this
//! crate provides:
//!
//! * closed-form counters for subgroups, subrings, unital subrings and ideals
//!   ([`counting`]), including their prime-power local factors,
//! * a brute-force ground truth that knows nothing about the parametrization
//!   ([`oracle`]) and a cross-check driver tying both together ([`verify`]),
//! * exact truncated two-variable Dirichlet series and the summatory function
//!   `Σ_{m,n≤x} N(m,n)` with its leading asymptotic constant ([`dirichlet`]).
//!
//! Counting is done in exact `u64` arithmetic with overflow reported as
//! [`Error::Overflow`]. Series coefficients are generic over the integer ring
//! they live in; [`Series`] and [`WideSeries`] are the two instantiations used
//! in practice.

pub mod arith;
pub mod counting;
pub mod dirichlet;
pub mod error;
pub mod goursat;
pub mod oracle;
pub mod verify;

pub use arith::{classical, divisors, factorize, ArithTable, Classical, Factorization, PrimeSieve};
pub use counting::{
    count_ideals, count_subgroups, count_subrings, count_unital_subrings, eval_multiplicative, h,
    h_prime_power, ns_prime_power, s_prime_power, LocalRule,
};
pub use dirichlet::{BivariateSeries, Coefficient, ZetaBlock, ZetaQuotient};
pub use error::{Error, Result};
pub use goursat::{
    count_coprime_congruence, enumerate_tuples, Ambient, ClassificationReport, GoursatTuple, Point,
    RingCounts, SubgroupPoints,
};
pub use oracle::OracleConfig;

/// Truncated series with `i64` coefficients; enough for every identity at the
/// default bounds.
pub type Series = BivariateSeries<i64>;

/// Truncated series with `i128` coefficients, for larger bounds or products
/// of many blocks.
pub type WideSeries = BivariateSeries<i128>;
