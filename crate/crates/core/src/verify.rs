//! Cross-checks the parametrization and the closed forms against the oracle
//! for one ring at a time.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::counting;
use crate::error::Result;
use crate::goursat::{self, Ambient, GoursatTuple, RingCounts, SubgroupPoints};
use crate::oracle::{self, OracleConfig};

/// Outcome of comparing three routes to the same four counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbientVerification {
    pub m: u64,
    pub n: u64,
    pub brute: RingCounts,
    pub closed_form: RingCounts,
    pub tuples: RingCounts,
    /// The materialized tuples and the brute-force subgroups are the same
    /// set of point sets, and no two tuples give the same points.
    pub point_sets_equal: bool,
    /// Tuples whose criterion flags disagree with the exhaustive checks on
    /// their own point set.
    pub flag_mismatches: Vec<[u64; 5]>,
}

impl AmbientVerification {
    pub fn passed(&self) -> bool {
        self.brute == self.closed_form
            && self.brute == self.tuples
            && self.point_sets_equal
            && self.flag_mismatches.is_empty()
    }

    /// A one-line description of the first failed comparison.
    pub fn first_failure(&self) -> Option<String> {
        let (m, n) = (self.m, self.n);
        if self.brute != self.closed_form {
            Some(format!(
                "({m}, {n}): brute {:?} vs closed form {:?}",
                self.brute, self.closed_form
            ))
        } else if self.brute != self.tuples {
            Some(format!(
                "({m}, {n}): brute {:?} vs tuple tally {:?}",
                self.brute, self.tuples
            ))
        } else if !self.point_sets_equal {
            Some(format!(
                "({m}, {n}): materialized point sets differ from brute subgroups"
            ))
        } else {
            self.flag_mismatches
                .first()
                .map(|t| format!("({m}, {n}): tuple {t:?} flags disagree with exhaustive checks"))
        }
    }
}

fn flags_agree(t: &GoursatTuple, points: &SubgroupPoints) -> bool {
    let closed = oracle::check_multiplicative_closure(points);
    t.is_subring() == closed
        && t.is_unital() == (closed && oracle::check_unity(points))
        && t.is_ideal() == oracle::check_ideal(points)
}

pub fn verify_ambient(ambient: Ambient, config: &OracleConfig) -> Result<AmbientVerification> {
    let brute_subgroups = oracle::brute_subgroups(ambient, config)?;
    let brute = oracle::tally(&brute_subgroups);
    let closed_form = counting::all_counts(ambient.m(), ambient.n())?;
    let tuples = goursat::enumerate_tuples(ambient)?;
    let tally = goursat::tally_tuples(&tuples);

    let mut flag_mismatches = Vec::new();
    let mut materialized = BTreeSet::new();
    for t in &tuples {
        let points = t.materialize();
        if !flags_agree(t, &points) {
            flag_mismatches.push(t.as_quintuple());
        }
        materialized.insert(points);
    }
    let brute_set: BTreeSet<SubgroupPoints> = brute_subgroups.into_iter().collect();
    let point_sets_equal = materialized.len() == tuples.len() && materialized == brute_set;

    Ok(AmbientVerification {
        m: ambient.m(),
        n: ambient.n(),
        brute,
        closed_form,
        tuples: tally,
        point_sets_equal,
        flag_mismatches,
    })
}

/// All `(m, n)` with `m·n ≤ max_mn`, in row-major order.
pub fn pairs_up_to(max_mn: u64) -> Vec<(u64, u64)> {
    (1..=max_mn)
        .flat_map(|m| (1..=max_mn / m).map(move |n| (m, n)))
        .collect()
}
