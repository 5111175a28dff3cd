//! Exact truncated Dirichlet series in two variables.
//!
//! A [`BivariateSeries`] holds the coefficients `F(m, n)` of
//! `Σ F(m, n) m^{-z} n^{-w}` for `1 ≤ m, n ≤ X`. Multiplication is the
//! two-variable Dirichlet convolution, and truncation commutes with it, so
//! every identity between zeta products can be checked coefficient by
//! coefficient up to the bound.

mod series;
mod summatory;
mod zeta;

pub use series::{BivariateSeries, Coefficient};
pub use summatory::{
    asymptotic_compare, fit_lower_order, leading_constant, partial_sum_subrings,
    partial_sum_subrings_naive, partial_sum_unital, partial_sum_unital_naive, reports_for, zeta2,
    AsymptoticReport, FitWeighting, LowerOrderFit, DIVISOR_EXPONENT_LOWER, DIVISOR_EXPONENT_UPPER,
    ZETA3,
};
pub use zeta::{
    check_identity, f_coefficients, zeta_block, Identity, IdentityCheck, Mismatch, ZetaBlock,
    ZetaQuotient,
};
