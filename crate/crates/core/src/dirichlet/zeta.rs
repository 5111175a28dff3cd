use std::fmt;

use serde::Serialize;

use super::series::{BivariateSeries, Coefficient};
use crate::arith;
use crate::counting;
use crate::error::{Error, Result};

/// `ζ(z·z_coeff + w·w_coeff − shift)`: coefficient `k^shift` at
/// `(k^z_coeff, k^w_coeff)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZetaBlock {
    pub z: u32,
    pub w: u32,
    pub shift: u32,
}

impl ZetaBlock {
    pub const fn new(z: u32, w: u32, shift: u32) -> Self {
        ZetaBlock { z, w, shift }
    }

    pub fn series<T: Coefficient>(&self, bound: usize) -> Result<BivariateSeries<T>> {
        if self.z == 0 && self.w == 0 {
            return Err(Error::DegenerateBlock);
        }
        let limit = bound as u64;
        let mut out = BivariateSeries::zero(bound);
        for k in 1u64.. {
            let (Some(m), Some(n)) = (k.checked_pow(self.z), k.checked_pow(self.w)) else {
                break;
            };
            if m > limit || n > limit {
                break;
            }
            let value = k
                .checked_pow(self.shift)
                .and_then(T::from_u64)
                .ok_or(Error::Overflow("zeta block coefficient"))?;
            out.set(m, n, value);
        }
        Ok(out)
    }
}

impl fmt::Display for ZetaBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: u32, v: &str| match c {
            0 => String::new(),
            1 => v.to_string(),
            c => format!("{c}{v}"),
        };
        let parts: Vec<String> = [term(self.z, "z"), term(self.w, "w")]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        write!(f, "zeta({}", parts.join("+"))?;
        if self.shift > 0 {
            write!(f, "-{}", self.shift)?;
        }
        write!(f, ")")
    }
}

pub fn zeta_block<T: Coefficient>(
    z: u32,
    w: u32,
    shift: u32,
    bound: usize,
) -> Result<BivariateSeries<T>> {
    ZetaBlock::new(z, w, shift).series(bound)
}

const ZETA_Z: ZetaBlock = ZetaBlock::new(1, 0, 0);
const ZETA_W: ZetaBlock = ZetaBlock::new(0, 1, 0);
const ZETA_ZW: ZetaBlock = ZetaBlock::new(1, 1, 0);
const ZETA_ZW_SHIFTED: ZetaBlock = ZetaBlock::new(1, 1, 1);
const ZETA_2Z2W_SHIFTED: ZetaBlock = ZetaBlock::new(2, 2, 1);
const ZETA_Z2W: ZetaBlock = ZetaBlock::new(1, 2, 0);
const ZETA_2ZW: ZetaBlock = ZetaBlock::new(2, 1, 0);

/// A product of zeta blocks divided by another product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaQuotient {
    pub numerator: Vec<ZetaBlock>,
    pub denominator: Vec<ZetaBlock>,
}

impl ZetaQuotient {
    /// Generating series of `h(m, n)`:
    /// `ζ(z)ζ(w)ζ(z+w)ζ(2z+2w−1) / (ζ(z+2w)ζ(2z+w))`.
    pub fn h() -> Self {
        ZetaQuotient {
            numerator: vec![ZETA_Z, ZETA_W, ZETA_ZW, ZETA_2Z2W_SHIFTED],
            denominator: vec![ZETA_Z2W, ZETA_2ZW],
        }
    }

    /// Generating series of the subring count: the `h` series times
    /// `ζ(z)ζ(w)`.
    pub fn subrings() -> Self {
        ZetaQuotient {
            numerator: vec![ZETA_Z, ZETA_Z, ZETA_W, ZETA_W, ZETA_ZW, ZETA_2Z2W_SHIFTED],
            denominator: vec![ZETA_Z2W, ZETA_2ZW],
        }
    }

    /// `ζ(z)ζ(w)ζ(z+w)`, generating `τ(gcd(m, n))`.
    pub fn unital() -> Self {
        ZetaQuotient {
            numerator: vec![ZETA_Z, ZETA_W, ZETA_ZW],
            denominator: vec![],
        }
    }

    /// `ζ²(z)ζ²(w)ζ(z+w−1) / ζ(z+w)`, generating the subgroup count.
    pub fn subgroups() -> Self {
        ZetaQuotient {
            numerator: vec![ZETA_Z, ZETA_Z, ZETA_W, ZETA_W, ZETA_ZW_SHIFTED],
            denominator: vec![ZETA_ZW],
        }
    }

    /// `ζ(z+w)ζ(2z+2w−1) / (ζ(z+2w)ζ(2z+w))`; the subring series is this
    /// times `ζ²(z)ζ²(w)`.
    pub fn f() -> Self {
        ZetaQuotient {
            numerator: vec![ZETA_ZW, ZETA_2Z2W_SHIFTED],
            denominator: vec![ZETA_Z2W, ZETA_2ZW],
        }
    }

    pub fn expand<T: Coefficient>(&self, bound: usize) -> Result<BivariateSeries<T>> {
        let mut acc = BivariateSeries::identity(bound);
        for block in &self.numerator {
            acc = acc.multiply(&block.series(bound)?)?;
        }
        for block in &self.denominator {
            acc = acc.divide(&block.series(bound)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ZetaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |blocks: &[ZetaBlock]| {
            if blocks.is_empty() {
                "1".to_string()
            } else {
                blocks
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("")
            }
        };
        write!(f, "{}", join(&self.numerator))?;
        if !self.denominator.is_empty() {
            write!(f, " / {}", join(&self.denominator))?;
        }
        Ok(())
    }
}

/// Truncated coefficients `f(m, n)` of [`ZetaQuotient::f`].
pub fn f_coefficients(bound: usize) -> Result<BivariateSeries<i64>> {
    ZetaQuotient::f().expand(bound)
}

/// The coefficient identities that can be checked against closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// `ZetaQuotient::h()` has coefficients `h(m, n)`.
    H,
    /// `ZetaQuotient::subrings()` has coefficients `N^(s)(m, n)`.
    Ns,
    /// `ZetaQuotient::unital()` has coefficients `τ(gcd(m, n))`.
    Us,
    /// `ZetaQuotient::subgroups()` has coefficients `s(m, n)`.
    S,
    /// `N^(s)(m, n) = Σ_{ab=m, cd=n} f(a, c) τ(b) τ(d)`.
    Convo,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::H,
        Identity::Ns,
        Identity::Us,
        Identity::S,
        Identity::Convo,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::H => "h",
            Identity::Ns => "ns",
            Identity::Us => "us",
            Identity::S => "s",
            Identity::Convo => "convo",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == name)
    }

    fn series(&self, bound: usize) -> Result<BivariateSeries<i64>> {
        match self {
            Identity::H => ZetaQuotient::h().expand(bound),
            Identity::Ns => ZetaQuotient::subrings().expand(bound),
            Identity::Us => ZetaQuotient::unital().expand(bound),
            Identity::S => ZetaQuotient::subgroups().expand(bound),
            Identity::Convo => {
                let divisor_weights = BivariateSeries::try_from_fn(bound, |b, d| {
                    Ok((arith::tau(b)? * arith::tau(d)?) as i64)
                })?;
                f_coefficients(bound)?.multiply(&divisor_weights)
            }
        }
    }

    fn expected(&self, m: u64, n: u64) -> Result<u64> {
        match self {
            Identity::H => counting::h(m, n),
            Identity::Ns | Identity::Convo => counting::count_subrings(m, n),
            Identity::Us => counting::count_unital_subrings(m, n),
            Identity::S => counting::count_subgroups(m, n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub m: u64,
    pub n: u64,
    pub series: i64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub bound: usize,
    /// Coefficients compared, `bound²`.
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Expands the series side of `identity` and compares every coefficient up
/// to `bound` with the closed form.
pub fn check_identity(identity: Identity, bound: usize) -> Result<IdentityCheck> {
    let series = identity.series(bound)?;
    let mut mismatches = 0;
    let mut first_mismatch = None;
    for m in 1..=bound as u64 {
        for n in 1..=bound as u64 {
            let got = series.coeff(m, n);
            let expected = identity.expected(m, n)?;
            if i128::from(got) != i128::from(expected) {
                mismatches += 1;
                first_mismatch.get_or_insert(Mismatch {
                    m,
                    n,
                    series: got,
                    expected,
                });
            }
        }
    }
    Ok(IdentityCheck {
        identity,
        bound,
        checked: (bound * bound) as u64,
        mismatches,
        first_mismatch,
    })
}
