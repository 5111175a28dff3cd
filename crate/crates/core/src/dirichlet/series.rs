use std::fmt::Debug;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Zero};

use crate::error::{Error, Result};

/// Integer-like coefficient ring for series arithmetic. All arithmetic is
/// checked; overflow surfaces as [`Error::Overflow`].
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + Send
    + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + Send
        + Sync
{
}

/// Coefficients `F(m, n)` for `1 ≤ m, n ≤ bound`; absent entries are zero.
///
/// Stored row by row: `rows[m - 1]` lists the nonzero `(n, F(m, n))` in
/// increasing `n`. Zeros are never stored, so derived equality is
/// coefficient equality.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateSeries<T> {
    bound: usize,
    rows: Vec<Vec<(u32, T)>>,
}

fn add_mul<T: Coefficient>(acc: &mut T, a: &T, b: &T) -> Result<()> {
    let term = a.checked_mul(b).ok_or(Error::Overflow("series product"))?;
    *acc = acc
        .checked_add(&term)
        .ok_or(Error::Overflow("series sum"))?;
    Ok(())
}

impl<T: Coefficient> BivariateSeries<T> {
    /// The zero series.
    ///
    /// # Panics
    /// If `bound` is 0.
    pub fn zero(bound: usize) -> Self {
        assert!(bound >= 1, "series bound must be positive");
        BivariateSeries {
            bound,
            rows: vec![Vec::new(); bound],
        }
    }

    /// `1` at `(1, 1)`, the multiplicative identity.
    pub fn identity(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.rows[0].push((1, T::one()));
        s
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(u64, u64) -> T) -> Self {
        let mut s = Self::zero(bound);
        for m in 1..=bound {
            for n in 1..=bound {
                let v = f(m as u64, n as u64);
                if !v.is_zero() {
                    s.rows[m - 1].push((n as u32, v));
                }
            }
        }
        s
    }

    /// Fallible variant of [`BivariateSeries::from_fn`].
    pub fn try_from_fn(bound: usize, mut f: impl FnMut(u64, u64) -> Result<T>) -> Result<Self> {
        let mut s = Self::zero(bound);
        for m in 1..=bound {
            for n in 1..=bound {
                let v = f(m as u64, n as u64)?;
                if !v.is_zero() {
                    s.rows[m - 1].push((n as u32, v));
                }
            }
        }
        Ok(s)
    }

    fn from_dense(bound: usize, dense: Vec<T>) -> Self {
        let mut s = Self::zero(bound);
        for (idx, v) in dense.into_iter().enumerate() {
            if !v.is_zero() {
                s.rows[idx / bound].push(((idx % bound + 1) as u32, v));
            }
        }
        s
    }

    fn to_dense(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); self.bound * self.bound];
        for (m, n, v) in self.iter() {
            dense[self.index(m, n)] = v.clone();
        }
        dense
    }

    fn index(&self, m: u64, n: u64) -> usize {
        (m as usize - 1) * self.bound + (n as usize - 1)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Coefficient at `(m, n)`; zero outside `1..=bound`.
    pub fn coeff(&self, m: u64, n: u64) -> T {
        if m == 0 || n == 0 || m > self.bound as u64 || n > self.bound as u64 {
            return T::zero();
        }
        let row = &self.rows[m as usize - 1];
        match row.binary_search_by_key(&(n as u32), |&(k, _)| k) {
            Ok(i) => row[i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Sets one coefficient; setting zero removes the entry.
    pub fn set(&mut self, m: u64, n: u64, value: T) {
        assert!(
            (1..=self.bound as u64).contains(&m) && (1..=self.bound as u64).contains(&n),
            "({m}, {n}) outside bound {}",
            self.bound
        );
        let row = &mut self.rows[m as usize - 1];
        match row.binary_search_by_key(&(n as u32), |&(k, _)| k) {
            Ok(i) if value.is_zero() => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = value,
            Err(_) if value.is_zero() => {}
            Err(i) => row.insert(i, (n as u32, value)),
        }
    }

    /// Nonzero coefficients as `(m, n, value)`, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, &T)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .map(move |(n, v)| (i as u64 + 1, u64::from(*n), v))
        })
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn same_bound(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch {
                left: self.bound,
                right: other.bound,
            });
        }
        Ok(())
    }

    /// Dirichlet convolution `Σ_{a|m, c|n} F(a, c) G(m/a, n/c)`, truncated.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_bound(other)?;
        let x = self.bound;
        let mut acc = vec![T::zero(); x * x];
        for (a, c, f) in self.iter() {
            let (a, c) = (a as usize, c as usize);
            let col_limit = (x / c) as u32;
            for b in 1..=x / a {
                for (d, g) in &other.rows[b - 1] {
                    if *d > col_limit {
                        break;
                    }
                    let idx = (a * b - 1) * x + (c * *d as usize - 1);
                    add_mul(&mut acc[idx], f, g)?;
                }
            }
        }
        Ok(Self::from_dense(x, acc))
    }

    /// The unique `H` with `G·H = F` up to the bound, where `F = self` and
    /// `G = divisor`. Needs `G(1, 1) = 1`.
    ///
    /// Coefficients are eliminated in row-major order: when `(m, n)` is
    /// reached every proper divisor pair has already been pushed forward.
    pub fn divide(&self, divisor: &Self) -> Result<Self> {
        self.same_bound(divisor)?;
        if !divisor.coeff(1, 1).is_one() {
            return Err(Error::NonUnitLeading);
        }
        let x = self.bound;
        let mut rest = self.to_dense();
        let mut quotient = vec![T::zero(); x * x];
        for m in 1..=x {
            for n in 1..=x {
                let idx = (m - 1) * x + (n - 1);
                if rest[idx].is_zero() {
                    continue;
                }
                let q = std::mem::replace(&mut rest[idx], T::zero());
                let col_limit = (x / n) as u32;
                for a in 1..=x / m {
                    for (c, g) in &divisor.rows[a - 1] {
                        if *c > col_limit {
                            break;
                        }
                        if a == 1 && *c == 1 {
                            continue;
                        }
                        let target = (a * m - 1) * x + (*c as usize * n - 1);
                        let term = g
                            .checked_mul(&q)
                            .ok_or(Error::Overflow("series quotient"))?;
                        rest[target] = rest[target]
                            .checked_sub(&term)
                            .ok_or(Error::Overflow("series quotient"))?;
                    }
                }
                quotient[idx] = q;
            }
        }
        Ok(Self::from_dense(x, quotient))
    }
}
