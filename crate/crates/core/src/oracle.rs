//! Brute-force ground truth for subgroups of `Z_m × Z_n`.
//!
//! Subgroups are found by closing generator sets under addition and
//! deduplicating the resulting point sets; ring properties are decided by
//! exhaustive multiplication. Nothing here consults the tuple
//! parametrization or any counting formula.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::goursat::{Ambient, Point, RingCounts, SubgroupPoints};

/// Default cap on `m·n` for brute-force enumeration.
pub const DEFAULT_MAX_ORDER: u64 = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `m·n` accepted.
    pub max_order: u64,
    /// Also close every triple of generators. Every subgroup of a rank-2
    /// group is 2-generated, so this only re-finds known subgroups.
    pub three_generator_sweep: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_order: DEFAULT_MAX_ORDER,
            three_generator_sweep: false,
        }
    }
}

/// Elements indexed as `x·n + y`.
struct Grid {
    m: usize,
    n: usize,
}

impl Grid {
    fn len(&self) -> usize {
        self.m * self.n
    }

    fn add(&self, u: usize, v: usize) -> usize {
        let x = (u / self.n + v / self.n) % self.m;
        let y = (u % self.n + v % self.n) % self.n;
        x * self.n + y
    }

    /// Smallest set containing 0 and closed under adding any generator.
    /// In a finite group that is the generated subgroup.
    fn close(&self, generators: &[usize]) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &g in generators {
                let w = self.add(v, g);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i as u32))
            .collect()
    }

    fn to_points(&self, ambient: Ambient, set: &[u32]) -> SubgroupPoints {
        let n = self.n as u32;
        SubgroupPoints::from_points(
            ambient,
            set.iter().map(|&i| (u64::from(i / n), u64::from(i % n))),
        )
    }
}

fn guard(ambient: Ambient, config: &OracleConfig) -> Result<Grid> {
    let order = ambient.order()?;
    if order > config.max_order {
        return Err(Error::BudgetExceeded {
            what: "m*n",
            requested: order,
            limit: config.max_order,
        });
    }
    Ok(Grid {
        m: ambient.m() as usize,
        n: ambient.n() as usize,
    })
}

/// Every additive subgroup, each exactly once, ordered by size and then by
/// point list.
///
/// `⟨g, g'⟩` depends only on the cyclic subgroups `⟨g⟩` and `⟨g'⟩`, so the
/// pair sweep runs over one generator per cyclic subgroup; that visits the
/// same subgroups as a sweep over all element pairs.
pub fn brute_subgroups(ambient: Ambient, config: &OracleConfig) -> Result<Vec<SubgroupPoints>> {
    let grid = guard(ambient, config)?;
    let mut cyclic_seen: HashSet<Vec<u32>> = HashSet::new();
    let mut generators = Vec::new();
    for g in 0..grid.len() {
        if cyclic_seen.insert(grid.close(&[g])) {
            generators.push(g);
        }
    }

    let mut found: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    for (i, &g) in generators.iter().enumerate() {
        for &h in &generators[i..] {
            let s = grid.close(&[g, h]);
            found.insert((s.len(), s));
        }
    }
    if config.three_generator_sweep {
        for (i, &g) in generators.iter().enumerate() {
            for (j, &h) in generators.iter().enumerate().skip(i) {
                for &k in &generators[j..] {
                    let s = grid.close(&[g, h, k]);
                    found.insert((s.len(), s));
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, s)| grid.to_points(ambient, &s))
        .collect())
}

fn membership(s: &SubgroupPoints) -> impl Fn(Point) -> bool {
    let n = s.ambient().n();
    let mut mask = vec![false; (s.ambient().m() * n) as usize];
    for (x, y) in s.iter() {
        mask[(x * n + y) as usize] = true;
    }
    move |(x, y)| mask[(x * n + y) as usize]
}

/// First `(u, v, u·v)` with `u, v ∈ s` and `u·v ∉ s`, if any.
pub fn closure_witness(s: &SubgroupPoints) -> Option<(Point, Point, Point)> {
    let ambient = s.ambient();
    let member = membership(s);
    s.iter().find_map(|u| {
        s.iter().find_map(|v| {
            let uv = ambient.mul(u, v);
            (!member(uv)).then_some((u, v, uv))
        })
    })
}

pub fn check_multiplicative_closure(s: &SubgroupPoints) -> bool {
    closure_witness(s).is_none()
}

pub fn check_unity(s: &SubgroupPoints) -> bool {
    s.contains(s.ambient().unity())
}

/// First `(u, r, u·r)` with `u ∈ s`, `r` anywhere in the ring and `u·r ∉ s`.
pub fn ideal_witness(s: &SubgroupPoints) -> Option<(Point, Point, Point)> {
    let ambient = s.ambient();
    let member = membership(s);
    let ring: Vec<Point> = (0..ambient.m())
        .flat_map(|x| (0..ambient.n()).map(move |y| (x, y)))
        .collect();
    s.iter().find_map(|u| {
        ring.iter().find_map(|&r| {
            let ur = ambient.mul(u, r);
            (!member(ur)).then_some((u, r, ur))
        })
    })
}

pub fn check_ideal(s: &SubgroupPoints) -> bool {
    ideal_witness(s).is_none()
}

/// Tallies the three checks over [`brute_subgroups`].
pub fn brute_counts(ambient: Ambient, config: &OracleConfig) -> Result<RingCounts> {
    let subgroups = brute_subgroups(ambient, config)?;
    Ok(tally(&subgroups))
}

pub(crate) fn tally(subgroups: &[SubgroupPoints]) -> RingCounts {
    let mut counts = RingCounts::default();
    for s in subgroups {
        counts.subgroups += 1;
        if check_multiplicative_closure(s) {
            counts.subrings += 1;
            counts.unital += u64::from(check_unity(s));
        }
        counts.ideals += u64::from(check_ideal(s));
    }
    counts
}
