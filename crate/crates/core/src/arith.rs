//! Exact integer kernel: factorization, divisors, `τ`, `φ`, `μ`.
//!
//! Single values go through a [`PrimeSieve`] (trial division by sieved
//! primes). Bulk work over `1..=x` goes through [`ArithTable`], a linear
//! sieve that stores the smallest prime factor of every entry.

use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Primes are sieved up to this bound for the process-wide default sieve.
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// `n = ∏ p^e`, primes strictly increasing, exponents at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` in the value (`ν_p`), 0 if `p` does not divide it.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Multiplies the prime powers back together.
    pub fn expand(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow("factorization expansion"))
        })
    }

    pub fn tau(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    pub fn phi(&self) -> u64 {
        // p^(e-1) (p-1) per factor; never exceeds the value, so no overflow.
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.tau() as usize);
        out.push(1u64);
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Primes up to a fixed bound, used for trial division.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(bound: u64) -> Self {
        let limit = bound.max(2) as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
        PrimeSieve {
            bound: limit as u64,
            primes,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Zero { what: "n" });
        }
        let mut rest = n;
        let mut factors = Vec::new();
        let mut take = |p: u64, rest: &mut u64| {
            let mut e = 0;
            while (*rest).is_multiple_of(p) {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        let mut exhausted = true;
        for &p in &self.primes {
            if p.saturating_mul(p) > rest {
                exhausted = false;
                break;
            }
            take(p, &mut rest);
        }
        if exhausted {
            // Past the sieve: plain trial division by odd candidates.
            let mut p = self.bound + 1 + self.bound % 2;
            while p.saturating_mul(p) <= rest {
                take(p, &mut rest);
                p += 2;
            }
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { value: n, factors })
    }
}

fn default_sieve() -> &'static PrimeSieve {
    static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
    SIEVE.get_or_init(|| PrimeSieve::new(DEFAULT_SIEVE_BOUND))
}

pub fn factorize(n: u64) -> Result<Factorization> {
    default_sieve().factorize(n)
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classical {
    pub tau: u64,
    pub phi: u64,
    pub mobius: i8,
}

pub fn classical(n: u64) -> Result<Classical> {
    let f = factorize(n)?;
    Ok(Classical {
        tau: f.tau(),
        phi: f.phi(),
        mobius: f.mobius(),
    })
}

pub fn tau(n: u64) -> Result<u64> {
    Ok(factorize(n)?.tau())
}

pub fn phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.phi())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// Smallest-prime-factor, `φ`, `τ` and `μ` tables for every `n ≤ limit`,
/// built in one linear-sieve pass. Read-only after construction.
#[derive(Debug, Clone)]
pub struct ArithTable {
    spf: Vec<u32>,
    phi: Vec<u32>,
    tau: Vec<u32>,
    mobius: Vec<i8>,
}

impl ArithTable {
    pub fn new(limit: u32) -> Self {
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        let mut phi = vec![0u32; len];
        let mut tau = vec![0u32; len];
        let mut mobius = vec![0i8; len];
        // exponent of spf in n, needed to update tau
        let mut spf_exp = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        if len > 1 {
            phi[1] = 1;
            tau[1] = 1;
            mobius[1] = 1;
        }
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                phi[i] = i as u32 - 1;
                tau[i] = 2;
                mobius[i] = -1;
                spf_exp[i] = 1;
            }
            for &p in &primes {
                let j = i * p as usize;
                if p > spf[i] || j >= len {
                    break;
                }
                spf[j] = p;
                if p == spf[i] {
                    phi[j] = phi[i] * p;
                    spf_exp[j] = spf_exp[i] + 1;
                    tau[j] = tau[i] / (spf_exp[i] + 1) * (spf_exp[j] + 1);
                    mobius[j] = 0;
                } else {
                    phi[j] = phi[i] * (p - 1);
                    spf_exp[j] = 1;
                    tau[j] = tau[i] * 2;
                    mobius[j] = -mobius[i];
                }
            }
        }
        ArithTable {
            spf,
            phi,
            tau,
            mobius,
        }
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    fn check(&self, n: u32) {
        assert!(
            n >= 1 && (n as usize) < self.spf.len(),
            "{n} outside table range 1..={}",
            self.limit()
        );
    }

    /// Smallest prime factor; `spf(1) == 1` by convention.
    pub fn spf(&self, n: u32) -> u32 {
        self.check(n);
        if n == 1 {
            1
        } else {
            self.spf[n as usize]
        }
    }

    pub fn phi(&self, n: u32) -> u64 {
        self.check(n);
        u64::from(self.phi[n as usize])
    }

    pub fn tau(&self, n: u32) -> u64 {
        self.check(n);
        u64::from(self.tau[n as usize])
    }

    pub fn mobius(&self, n: u32) -> i8 {
        self.check(n);
        self.mobius[n as usize]
    }

    pub fn factorize(&self, n: u32) -> Factorization {
        self.check(n);
        let mut rest = n;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest as usize];
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((u64::from(p), e));
        }
        Factorization {
            value: u64::from(n),
            factors,
        }
    }

    /// Prime divisors of `n` in increasing order.
    pub fn prime_divisors(&self, n: u32) -> impl Iterator<Item = u32> + '_ {
        self.check(n);
        let mut rest = n;
        std::iter::from_fn(move || {
            if rest <= 1 {
                return None;
            }
            let p = self.spf[rest as usize];
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            Some(p)
        })
    }
}
