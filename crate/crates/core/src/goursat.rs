//! The quintuple parametrization of subgroups of `Z_m × Z_n`.
//!
//! A tuple `(a, b, c, d, ℓ)` with `a | m`, `b | a`, `c | n`, `d | c`,
//! `a/b = c/d = e`, `1 ≤ ℓ ≤ e` and `gcd(ℓ, e) = 1` names the subgroup
//!
//! ```text
//! K = { (i·m/a, i·ℓ·n/c + j·n/d) : 0 ≤ i < a, 0 ≤ j < d }
//! ```
//!
//! and every subgroup arises from exactly one tuple. Whether `K` is a
//! subring, a unital subring or an ideal is decided from the tuple alone.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{self, checked_lcm};
use crate::error::{Error, Result};

/// A point `(x mod m, y mod n)`, stored with `0 ≤ x < m`, `0 ≤ y < n`.
pub type Point = (u64, u64);

/// The ring `Z_m × Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ambient {
    m: u64,
    n: u64,
}

impl Ambient {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Zero { what: "m" });
        }
        if n == 0 {
            return Err(Error::Zero { what: "n" });
        }
        Ok(Ambient { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `m·n`, the number of elements.
    pub fn order(&self) -> Result<u64> {
        self.m
            .checked_mul(self.n)
            .ok_or(Error::Overflow("ambient order"))
    }

    pub fn reduce(&self, x: u64, y: u64) -> Point {
        (x % self.m, y % self.n)
    }

    pub fn add(&self, u: Point, v: Point) -> Point {
        (
            ((u128::from(u.0) + u128::from(v.0)) % u128::from(self.m)) as u64,
            ((u128::from(u.1) + u128::from(v.1)) % u128::from(self.n)) as u64,
        )
    }

    pub fn mul(&self, u: Point, v: Point) -> Point {
        (
            ((u128::from(u.0) * u128::from(v.0)) % u128::from(self.m)) as u64,
            ((u128::from(u.1) * u128::from(v.1)) % u128::from(self.n)) as u64,
        )
    }

    /// The multiplicative identity `(1, 1)`, reduced (it is `(0, 0)` in `Z_1`).
    pub fn unity(&self) -> Point {
        self.reduce(1, 1)
    }

    /// Additive order of a point: `lcm(m / gcd(x, m), n / gcd(y, n))`.
    pub fn additive_order(&self, p: Point) -> u64 {
        let ox = self.m / p.0.gcd(&self.m);
        let oy = self.n / p.1.gcd(&self.n);
        ox.lcm(&oy)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{} x Z_{}", self.m, self.n)
    }
}

/// The first membership condition a candidate quintuple breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    ZeroComponent,
    ADividesM { a: u64, m: u64 },
    BDividesA { b: u64, a: u64 },
    CDividesN { c: u64, n: u64 },
    DDividesC { d: u64, c: u64 },
    RatioMismatch { a_over_b: u64, c_over_d: u64 },
    EllOutOfRange { ell: u64, e: u64 },
    EllNotCoprime { ell: u64, e: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ZeroComponent => write!(f, "all of a, b, c, d, ell must be positive"),
            Violation::ADividesM { a, m } => write!(f, "a | m fails: {a} does not divide {m}"),
            Violation::BDividesA { b, a } => write!(f, "b | a fails: {b} does not divide {a}"),
            Violation::CDividesN { c, n } => write!(f, "c | n fails: {c} does not divide {n}"),
            Violation::DDividesC { d, c } => write!(f, "d | c fails: {d} does not divide {c}"),
            Violation::RatioMismatch { a_over_b, c_over_d } => {
                write!(f, "a/b = c/d fails: a/b = {a_over_b} but c/d = {c_over_d}")
            }
            Violation::EllOutOfRange { ell, e } => {
                write!(f, "1 <= ell <= a/b fails: ell = {ell}, a/b = {e}")
            }
            Violation::EllNotCoprime { ell, e } => {
                write!(
                    f,
                    "gcd(ell, a/b) = 1 fails: gcd({ell}, {e}) = {}",
                    ell.gcd(&e)
                )
            }
        }
    }
}

/// A member of the parameter set `J_{m,n}`, carried with its ambient ring.
///
/// Field order gives the derived ordering: lexicographic in `(a, b, c, d, ℓ)`
/// within one ambient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoursatTuple {
    ambient: Ambient,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    ell: u64,
}

impl GoursatTuple {
    /// Validates the membership conditions in the order they are usually
    /// written and reports the first one that fails.
    pub fn new(ambient: Ambient, a: u64, b: u64, c: u64, d: u64, ell: u64) -> Result<Self> {
        let (m, n) = (ambient.m, ambient.n);
        let violation = if [a, b, c, d, ell].contains(&0) {
            Some(Violation::ZeroComponent)
        } else if m % a != 0 {
            Some(Violation::ADividesM { a, m })
        } else if !a.is_multiple_of(b) {
            Some(Violation::BDividesA { b, a })
        } else if n % c != 0 {
            Some(Violation::CDividesN { c, n })
        } else if !c.is_multiple_of(d) {
            Some(Violation::DDividesC { d, c })
        } else if a / b != c / d {
            Some(Violation::RatioMismatch {
                a_over_b: a / b,
                c_over_d: c / d,
            })
        } else if ell > a / b {
            Some(Violation::EllOutOfRange { ell, e: a / b })
        } else if ell.gcd(&(a / b)) != 1 {
            Some(Violation::EllNotCoprime { ell, e: a / b })
        } else {
            None
        };
        match violation {
            Some(v) => Err(Error::InvalidTuple(v)),
            None => Ok(GoursatTuple {
                ambient,
                a,
                b,
                c,
                d,
                ell,
            }),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn c(&self) -> u64 {
        self.c
    }
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The common ratio `a/b = c/d`.
    pub fn e(&self) -> u64 {
        self.a / self.b
    }

    pub fn as_quintuple(&self) -> [u64; 5] {
        [self.a, self.b, self.c, self.d, self.ell]
    }

    /// Subgroup order `a·d`.
    pub fn order(&self) -> Result<u64> {
        self.a
            .checked_mul(self.d)
            .ok_or(Error::Overflow("subgroup order"))
    }

    /// The explicit point set. Its size is `a·d`, so callers should keep the
    /// ambient small.
    pub fn materialize(&self) -> SubgroupPoints {
        let (m, n) = (u128::from(self.ambient.m), u128::from(self.ambient.n));
        let x_step = m / u128::from(self.a);
        let diag_step = u128::from(self.ell) * (n / u128::from(self.c)) % n;
        let y_step = n / u128::from(self.d);
        let mut points = Vec::with_capacity((self.a * self.d) as usize);
        for i in 0..u128::from(self.a) {
            let x = (i * x_step) as u64;
            let base = i * diag_step % n;
            for j in 0..u128::from(self.d) {
                points.push((x, ((base + j * y_step) % n) as u64));
            }
        }
        SubgroupPoints::from_points(self.ambient, points)
    }

    /// Closed under multiplication iff `c/d | ℓ·n/c − m/a`, the difference
    /// taken over the signed integers.
    pub fn is_subring(&self) -> bool {
        let e = i128::from(self.e());
        let diff = i128::from(self.ell) * i128::from(self.ambient.n / self.c)
            - i128::from(self.ambient.m / self.a);
        diff % e == 0
    }

    /// Contains `(1, 1)` iff `a = m`, `c = n`, `ℓ = 1`.
    pub fn is_unital(&self) -> bool {
        self.a == self.ambient.m && self.c == self.ambient.n && self.ell == 1
    }

    /// A subproduct `I × J` iff `a = b`, `c = d`, `ℓ = 1`.
    pub fn is_ideal(&self) -> bool {
        self.a == self.b && self.c == self.d && self.ell == 1
    }

    pub fn classify(&self) -> Result<ClassificationReport> {
        let small = self.b.gcd(&self.d);
        let exponent = checked_lcm(self.a, self.c)?;
        let order = self.order()?;
        debug_assert_eq!(small.checked_mul(exponent), Some(order));
        Ok(ClassificationReport {
            is_subring: self.is_subring(),
            is_unital: self.is_unital(),
            is_ideal: self.is_ideal(),
            is_cyclic: small == 1,
            order,
            exponent,
            invariant_factors: (small, exponent),
        })
    }
}

impl fmt::Display for GoursatTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.a, self.b, self.c, self.d, self.ell
        )
    }
}

/// Every tuple of `J_{m,n}`, sorted lexicographically in `(a, b, c, d, ℓ)`.
pub fn enumerate_tuples(ambient: Ambient) -> Result<Vec<GoursatTuple>> {
    let divisors_n = arith::divisors(ambient.n)?;
    let mut out = Vec::new();
    for a in arith::divisors(ambient.m)? {
        for e in arith::divisors(a)? {
            let b = a / e;
            for &c in divisors_n.iter().filter(|&&c| c % e == 0) {
                let d = c / e;
                for ell in (1..=e).filter(|ell| ell.gcd(&e) == 1) {
                    out.push(GoursatTuple {
                        ambient,
                        a,
                        b,
                        c,
                        d,
                        ell,
                    });
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Flags and structural data of one subgroup, computed from its tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub is_subring: bool,
    pub is_unital: bool,
    pub is_ideal: bool,
    pub is_cyclic: bool,
    pub order: u64,
    pub exponent: u64,
    /// `(gcd(b, d), lcm(a, c))`: the subgroup is `Z_first × Z_second`.
    pub invariant_factors: (u64, u64),
}

/// A finite point set in `Z_m × Z_n`, kept sorted and duplicate-free so that
/// equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupPoints {
    ambient: Ambient,
    points: Vec<Point>,
}

impl SubgroupPoints {
    /// Reduces every point into range and canonicalizes. Does not check that
    /// the result is a subgroup; see [`SubgroupPoints::is_additive_subgroup`].
    pub fn from_points(ambient: Ambient, points: impl IntoIterator<Item = Point>) -> Self {
        let mut points: Vec<Point> = points
            .into_iter()
            .map(|(x, y)| ambient.reduce(x, y))
            .collect();
        points.sort_unstable();
        points.dedup();
        SubgroupPoints { ambient, points }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    /// Contains zero and is closed under addition.
    pub fn is_additive_subgroup(&self) -> bool {
        self.contains((0, 0))
            && self.points.iter().all(|&u| {
                self.points
                    .iter()
                    .all(|&v| self.contains(self.ambient.add(u, v)))
            })
    }
}

/// Tallies of the four kinds of substructure of one ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RingCounts {
    pub subgroups: u64,
    pub subrings: u64,
    pub unital: u64,
    pub ideals: u64,
}

/// Counts tuples by the three criteria above.
pub fn tally_tuples(tuples: &[GoursatTuple]) -> RingCounts {
    let mut counts = RingCounts::default();
    for t in tuples {
        counts.subgroups += 1;
        counts.subrings += u64::from(t.is_subring());
        counts.unital += u64::from(t.is_unital());
        counts.ideals += u64::from(t.is_ideal());
    }
    counts
}

/// Number of `x mod n` with `a·x ≡ b (mod n)` and `gcd(x, n) = 1`.
///
/// Solutions exist iff `gcd(a, n) = gcd(b, n) = d`, and then there are
/// `φ(n)/φ(n/d)` of them.
pub fn count_coprime_congruence(a: i64, b: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Zero { what: "n" });
    }
    let residue = |v: i64| (i128::from(v).rem_euclid(i128::from(n))) as u64;
    let ga = residue(a).gcd(&n);
    let gb = residue(b).gcd(&n);
    if ga != gb {
        return Ok(0);
    }
    let whole = arith::phi(n)?;
    let part = arith::phi(n / ga)?;
    debug_assert_eq!(whole % part, 0);
    Ok(whole / part)
}
