use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use zmzn::dirichlet::{
    asymptotic_compare, check_identity, leading_constant, partial_sum_subrings, FitWeighting,
    Identity,
};
use zmzn::verify::{pairs_up_to, verify_ambient, AmbientVerification};
use zmzn::{
    count_ideals, count_subgroups, count_subrings, count_unital_subrings, enumerate_tuples,
    Ambient, ClassificationReport, Error, GoursatTuple, OracleConfig,
};

use crate::output::{sig15, Format, Output};
use crate::CliError;

/// Whether every check a command ran came out clean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
}

fn within(what: &'static str, requested: u64, limit: u64) -> Result<(), CliError> {
    if requested > limit {
        return Err(Error::BudgetExceeded {
            what,
            requested,
            limit,
        }
        .into());
    }
    Ok(())
}

#[derive(Serialize)]
struct Pair {
    m: u64,
    n: u64,
}

#[derive(Serialize)]
struct Counts {
    s: u64,
    #[serde(rename = "N_s")]
    n_s: u64,
    #[serde(rename = "N_us")]
    n_us: u64,
    ideals: u64,
}

#[derive(Serialize)]
struct CountRow {
    m: u64,
    n: u64,
    s: u64,
    #[serde(rename = "N_s")]
    n_s: u64,
    #[serde(rename = "N_us")]
    n_us: u64,
    ideals: u64,
}

pub fn count<W: Write>(out: &mut Output<W>, m: u64, n: u64) -> Result<Status, CliError> {
    Ambient::new(m, n)?;
    let c = Counts {
        s: count_subgroups(m, n)?,
        n_s: count_subrings(m, n)?,
        n_us: count_unital_subrings(m, n)?,
        ideals: count_ideals(m, n)?,
    };
    match out.format() {
        Format::Plain => {
            out.line(format!("Z_{m} x Z_{n}"))?;
            out.line(format!("subgroups        s = {}", c.s))?;
            out.line(format!("subrings       N_s = {}", c.n_s))?;
            out.line(format!("unital subrings N_us = {}", c.n_us))?;
            out.line(format!("ideals             = {}", c.ideals))?;
        }
        Format::Json => out.json("count", &Pair { m, n }, &c)?,
        Format::Csv => out.csv(&[CountRow {
            m,
            n,
            s: c.s,
            n_s: c.n_s,
            n_us: c.n_us,
            ideals: c.ideals,
        }])?,
    }
    Ok(Status::Passed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    Subring,
    Unital,
    Ideal,
    Cyclic,
}

impl Filter {
    fn keeps(&self, report: &ClassificationReport) -> bool {
        match self {
            Filter::All => true,
            Filter::Subring => report.is_subring,
            Filter::Unital => report.is_unital,
            Filter::Ideal => report.is_ideal,
            Filter::Cyclic => report.is_cyclic,
        }
    }
}

#[derive(Serialize)]
struct EnumerateInputs {
    m: u64,
    n: u64,
    filter: Filter,
}

#[derive(Serialize)]
struct TupleRecord {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    ell: u64,
    #[serde(flatten)]
    report: ClassificationReport,
}

#[derive(Serialize)]
struct TupleRow {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    ell: u64,
    is_subring: bool,
    is_unital: bool,
    is_ideal: bool,
    is_cyclic: bool,
    order: u64,
    exponent: u64,
    invariant_small: u64,
    invariant_large: u64,
}

fn flag_words(r: &ClassificationReport) -> String {
    let words: Vec<&str> = [
        (r.is_subring, "subring"),
        (r.is_unital, "unital"),
        (r.is_ideal, "ideal"),
        (r.is_cyclic, "cyclic"),
    ]
    .iter()
    .filter(|f| f.0)
    .map(|f| f.1)
    .collect();
    words.join(" ")
}

fn structure(r: &ClassificationReport) -> String {
    match r.invariant_factors {
        (1, big) => format!("Z_{big}"),
        (small, big) => format!("Z_{small} x Z_{big}"),
    }
}

pub fn enumerate<W: Write>(
    out: &mut Output<W>,
    m: u64,
    n: u64,
    filter: Filter,
    max_records: u64,
) -> Result<Status, CliError> {
    let ambient = Ambient::new(m, n)?;
    within("subgroup count", count_subgroups(m, n)?, max_records)?;
    let mut kept = Vec::new();
    for t in enumerate_tuples(ambient)? {
        let report = t.classify()?;
        if filter.keeps(&report) {
            kept.push((t, report));
        }
    }
    match out.format() {
        Format::Plain => {
            for (t, r) in &kept {
                out.line(format!(
                    "{t}  order {}  {}  {}",
                    r.order,
                    structure(r),
                    flag_words(r)
                ))?;
            }
            out.line(format!("{} tuples", kept.len()))?;
        }
        Format::Json => {
            let inputs = EnumerateInputs { m, n, filter };
            for (t, r) in &kept {
                let [a, b, c, d, ell] = t.as_quintuple();
                let record = TupleRecord {
                    a,
                    b,
                    c,
                    d,
                    ell,
                    report: *r,
                };
                out.json("enumerate", &inputs, &record)?;
            }
        }
        Format::Csv => {
            let rows: Vec<TupleRow> = kept
                .iter()
                .map(|(t, r)| {
                    let [a, b, c, d, ell] = t.as_quintuple();
                    TupleRow {
                        a,
                        b,
                        c,
                        d,
                        ell,
                        is_subring: r.is_subring,
                        is_unital: r.is_unital,
                        is_ideal: r.is_ideal,
                        is_cyclic: r.is_cyclic,
                        order: r.order,
                        exponent: r.exponent,
                        invariant_small: r.invariant_factors.0,
                        invariant_large: r.invariant_factors.1,
                    }
                })
                .collect();
            out.csv(&rows)?;
        }
    }
    Ok(Status::Passed)
}

#[derive(Serialize)]
struct ShowInputs {
    m: u64,
    n: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    ell: u64,
}

#[derive(Serialize)]
struct ShowResults {
    #[serde(flatten)]
    report: ClassificationReport,
    points: Vec<(u64, u64)>,
}

#[derive(Serialize)]
struct ShowRow {
    m: u64,
    n: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    ell: u64,
    is_subring: bool,
    is_unital: bool,
    is_ideal: bool,
    is_cyclic: bool,
    order: u64,
    exponent: u64,
    invariant_small: u64,
    invariant_large: u64,
}

/// Character grid with `m` columns and `n` rows, row `n − 1` on top.
pub fn render_grid(t: &GoursatTuple, mark: char, blank: char) -> Vec<String> {
    let ambient = t.ambient();
    let (m, n) = (ambient.m(), ambient.n());
    let points = t.materialize();
    let row_w = (n - 1).to_string().len();
    let col_w = (m - 1).to_string().len();
    let mut lines = Vec::with_capacity(n as usize + 1);
    for y in (0..n).rev() {
        let mut line = format!("{y:>row_w$}");
        for x in 0..m {
            let cell = if points.contains((x, y)) { mark } else { blank };
            line.push_str(&format!(" {cell:>col_w$}"));
        }
        lines.push(line);
    }
    let mut axis = " ".repeat(row_w);
    for x in 0..m {
        axis.push_str(&format!(" {x:>col_w$}"));
    }
    lines.push(axis);
    lines
}

fn classification_line(r: &ClassificationReport) -> String {
    format!(
        "order: {}, exponent: {}, structure: {}, subring: {}, unital: {}, ideal: {}, cyclic: {}",
        r.order,
        r.exponent,
        structure(r),
        r.is_subring,
        r.is_unital,
        r.is_ideal,
        r.is_cyclic
    )
}

pub struct ShowArgs {
    pub m: u64,
    pub n: u64,
    pub quintuple: [u64; 5],
    pub unicode: bool,
    pub max_cells: u64,
}

pub fn show<W: Write>(out: &mut Output<W>, args: ShowArgs) -> Result<Status, CliError> {
    let ShowArgs {
        m,
        n,
        quintuple: [a, b, c, d, ell],
        unicode,
        max_cells,
    } = args;
    let ambient = Ambient::new(m, n)?;
    within("m*n", ambient.order()?, max_cells)?;
    let t = GoursatTuple::new(ambient, a, b, c, d, ell).map_err(|e| {
        CliError::Usage(format!(
            "({a}, {b}, {c}, {d}, {ell}) is not a valid tuple for {ambient}: {e}"
        ))
    })?;
    let report = t.classify()?;
    match out.format() {
        Format::Plain => {
            let (mark, blank) = if unicode { ('■', '·') } else { ('#', '.') };
            out.line(format!("K_{{{a},{b},{c},{d},{ell}}} in {ambient}"))?;
            for line in render_grid(&t, mark, blank) {
                out.line(line)?;
            }
            out.line(classification_line(&report))?;
        }
        Format::Json => {
            let inputs = ShowInputs {
                m,
                n,
                a,
                b,
                c,
                d,
                ell,
            };
            let results = ShowResults {
                report,
                points: t.materialize().points().to_vec(),
            };
            out.json("show", &inputs, &results)?;
        }
        Format::Csv => out.csv(&[ShowRow {
            m,
            n,
            a,
            b,
            c,
            d,
            ell,
            is_subring: report.is_subring,
            is_unital: report.is_unital,
            is_ideal: report.is_ideal,
            is_cyclic: report.is_cyclic,
            order: report.order,
            exponent: report.exponent,
            invariant_small: report.invariant_factors.0,
            invariant_large: report.invariant_factors.1,
        }])?,
    }
    Ok(Status::Passed)
}

#[derive(Serialize)]
struct VerifyInputs {
    max_mn: u64,
}

#[derive(Serialize)]
struct VerifySummary {
    rings: usize,
    passed: usize,
    failed: usize,
    first_failure: Option<String>,
}

#[derive(Serialize)]
struct VerifyRow {
    m: u64,
    n: u64,
    s: u64,
    #[serde(rename = "N_s")]
    n_s: u64,
    #[serde(rename = "N_us")]
    n_us: u64,
    ideals: u64,
    point_sets_equal: bool,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    m: u64,
    n: u64,
    passed: bool,
    brute: &'a zmzn::RingCounts,
    closed_form: &'a zmzn::RingCounts,
    tuples: &'a zmzn::RingCounts,
    point_sets_equal: bool,
    flag_mismatches: &'a [[u64; 5]],
}

/// Pass/fail matrix over the square `m, n ≤ ⌊√max_mn⌋`, `+` for agreement
/// and `x` for a mismatch, plus a tally of the rings outside the square.
fn verify_matrix(results: &[AmbientVerification], max_mn: u64) -> Vec<String> {
    let side = (1..=max_mn)
        .take_while(|k| k * k <= max_mn)
        .last()
        .unwrap_or(1);
    let width = side.to_string().len();
    let mut lines = Vec::new();
    let mut header = format!("{:<width$} ", "m");
    for n in 1..=side {
        header.push_str(&format!(" {:>width$}", n));
    }
    lines.push(header);
    for m in 1..=side {
        let mut line = format!("{m:>width$} ");
        for n in 1..=side {
            let passed = results
                .iter()
                .find(|v| v.m == m && v.n == n)
                .is_some_and(AmbientVerification::passed);
            let mark = if passed { '+' } else { 'x' };
            line.push_str(&format!(" {mark:>width$}"));
        }
        lines.push(line);
    }
    let outside: Vec<&AmbientVerification> = results
        .iter()
        .filter(|v| v.m > side || v.n > side)
        .collect();
    if !outside.is_empty() {
        let failed = outside.iter().filter(|v| !v.passed()).count();
        lines.push(format!(
            "outside the {side}x{side} square: {} rings, {failed} failed",
            outside.len()
        ));
    }
    lines
}

pub fn verify<W: Write>(out: &mut Output<W>, max_mn: u64, budget: u64) -> Result<Status, CliError> {
    if max_mn == 0 {
        return Err(CliError::Usage("MAX_MN must be positive".into()));
    }
    within("max m*n", max_mn, budget)?;
    let config = OracleConfig {
        max_order: budget,
        ..OracleConfig::default()
    };
    let results: Vec<AmbientVerification> = pairs_up_to(max_mn)
        .into_par_iter()
        .map(|(m, n)| verify_ambient(Ambient::new(m, n)?, &config))
        .collect::<zmzn::Result<_>>()?;
    let failed = results.iter().filter(|v| !v.passed()).count();
    let summary = VerifySummary {
        rings: results.len(),
        passed: results.len() - failed,
        failed,
        first_failure: results.iter().find_map(|v| v.first_failure()),
    };
    match out.format() {
        Format::Plain => {
            for line in verify_matrix(&results, max_mn) {
                out.line(line)?;
            }
            for v in results.iter().filter(|v| !v.passed()) {
                out.line(format!("FAIL {}", v.first_failure().unwrap_or_default()))?;
            }
            out.line(format!(
                "{} of {} rings with m*n <= {max_mn} agree",
                summary.passed, summary.rings
            ))?;
        }
        Format::Json => {
            let inputs = VerifyInputs { max_mn };
            for v in &results {
                let record = VerifyRecord {
                    m: v.m,
                    n: v.n,
                    passed: v.passed(),
                    brute: &v.brute,
                    closed_form: &v.closed_form,
                    tuples: &v.tuples,
                    point_sets_equal: v.point_sets_equal,
                    flag_mismatches: &v.flag_mismatches,
                };
                out.json("verify", &inputs, &record)?;
            }
            out.json("verify", &inputs, &summary)?;
        }
        Format::Csv => {
            let rows: Vec<VerifyRow> = results
                .iter()
                .map(|v| VerifyRow {
                    m: v.m,
                    n: v.n,
                    s: v.brute.subgroups,
                    n_s: v.brute.subrings,
                    n_us: v.brute.unital,
                    ideals: v.brute.ideals,
                    point_sets_equal: v.point_sets_equal,
                    passed: v.passed(),
                })
                .collect();
            out.csv(&rows)?;
        }
    }
    Ok(if failed == 0 {
        Status::Passed
    } else {
        Status::Failed
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    H,
    Ns,
    Us,
    S,
    Convo,
}

impl Check {
    fn identities(&self) -> Vec<Identity> {
        match self {
            Check::All => Identity::ALL.to_vec(),
            Check::H => vec![Identity::H],
            Check::Ns => vec![Identity::Ns],
            Check::Us => vec![Identity::Us],
            Check::S => vec![Identity::S],
            Check::Convo => vec![Identity::Convo],
        }
    }
}

#[derive(Serialize)]
struct SeriesInputs {
    bound: u64,
}

#[derive(Serialize)]
struct SeriesRow {
    identity: &'static str,
    bound: usize,
    checked: u64,
    mismatches: u64,
    passed: bool,
}

pub fn series<W: Write>(
    out: &mut Output<W>,
    bound: u64,
    check: Check,
    max_bound: u64,
) -> Result<Status, CliError> {
    if bound == 0 {
        return Err(CliError::Usage("X must be positive".into()));
    }
    within("series bound", bound, max_bound)?;
    let checks = check
        .identities()
        .into_par_iter()
        .map(|identity| check_identity(identity, bound as usize))
        .collect::<zmzn::Result<Vec<_>>>()?;
    let all_passed = checks.iter().all(|c| c.passed());
    match out.format() {
        Format::Plain => {
            for c in &checks {
                let verdict = if c.passed() { "pass" } else { "FAIL" };
                let mut line = format!(
                    "{:<6} X={:<5} {} coefficients  {verdict}",
                    c.identity.name(),
                    c.bound,
                    c.checked
                );
                if let Some(mm) = &c.first_mismatch {
                    line.push_str(&format!(
                        "  ({} mismatches; first at ({}, {}): series {} vs {})",
                        c.mismatches, mm.m, mm.n, mm.series, mm.expected
                    ));
                }
                out.line(line)?;
            }
        }
        Format::Json => {
            for c in &checks {
                out.json("series", &SeriesInputs { bound }, c)?;
            }
        }
        Format::Csv => {
            let rows: Vec<SeriesRow> = checks
                .iter()
                .map(|c| SeriesRow {
                    identity: c.identity.name(),
                    bound: c.bound,
                    checked: c.checked,
                    mismatches: c.mismatches,
                    passed: c.passed(),
                })
                .collect();
            out.csv(&rows)?;
        }
    }
    Ok(if all_passed {
        Status::Passed
    } else {
        Status::Failed
    })
}

#[derive(Serialize)]
struct SumInputs<'a> {
    xs: &'a [u64],
    weighting: Option<FitWeighting>,
}

/// One row of `sum` output; the fit columns are empty without a fit.
#[derive(Serialize)]
struct SumRow {
    x: u64,
    exact_sum: u64,
    a1: f64,
    fitted_a2: Option<f64>,
    fitted_a3: Option<f64>,
    a2_stderr: Option<f64>,
    a3_stderr: Option<f64>,
    residual: Option<f64>,
    normalized_residual: Option<f64>,
}

pub fn sum<W: Write>(
    out: &mut Output<W>,
    xs: &[u64],
    weighting: FitWeighting,
    max_x: u64,
) -> Result<Status, CliError> {
    if xs.is_empty() {
        return Err(CliError::Usage("at least one x is required".into()));
    }
    if xs.contains(&0) {
        return Err(CliError::Usage("every x must be positive".into()));
    }
    within("x", *xs.iter().max().expect("nonempty"), max_x)?;
    let fitting = xs.len() >= 3;
    if fitting && xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "fitting needs strictly ascending x values".into(),
        ));
    }
    let a1 = sig15(leading_constant());
    let rows: Vec<SumRow> = if fitting {
        asymptotic_compare(xs, weighting)?
            .into_iter()
            .map(|r| SumRow {
                x: r.x,
                exact_sum: r.exact_sum,
                a1,
                fitted_a2: Some(sig15(r.fitted_a2)),
                fitted_a3: Some(sig15(r.fitted_a3)),
                a2_stderr: Some(sig15(r.a2_stderr)),
                a3_stderr: Some(sig15(r.a3_stderr)),
                residual: Some(sig15(r.residual)),
                normalized_residual: Some(sig15(r.normalized_residual)),
            })
            .collect()
    } else {
        xs.iter()
            .map(|&x| {
                Ok(SumRow {
                    x,
                    exact_sum: partial_sum_subrings(x)?,
                    a1,
                    fitted_a2: None,
                    fitted_a3: None,
                    a2_stderr: None,
                    a3_stderr: None,
                    residual: None,
                    normalized_residual: None,
                })
            })
            .collect::<zmzn::Result<_>>()?
    };
    match out.format() {
        Format::Plain => {
            out.line(format!("A1 = zeta(2)/zeta(3) = {a1}"))?;
            if let Some(first) = rows.first().filter(|_| fitting) {
                out.line(format!(
                    "A2 = {} +/- {}, A3 = {} +/- {} ({} fit)",
                    first.fitted_a2.unwrap_or_default(),
                    first.a2_stderr.unwrap_or_default(),
                    first.fitted_a3.unwrap_or_default(),
                    first.a3_stderr.unwrap_or_default(),
                    weighting.name()
                ))?;
            }
            for r in &rows {
                let mut line = format!("x = {:<8} S(x) = {}", r.x, r.exact_sum);
                if let (Some(res), Some(norm)) = (r.residual, r.normalized_residual) {
                    line.push_str(&format!("  residual = {res}  residual/x^2 = {norm}"));
                }
                out.line(line)?;
            }
        }
        Format::Json => {
            let inputs = SumInputs {
                xs,
                weighting: fitting.then_some(weighting),
            };
            for r in &rows {
                out.json("sum", &inputs, r)?;
            }
        }
        Format::Csv => out.csv(&rows)?,
    }
    Ok(Status::Passed)
}
