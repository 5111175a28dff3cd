//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use zmzn::arith;
use zmzn::counting::{self, ns_prime_power_rational};
use zmzn::dirichlet::{
    check_identity, leading_constant, partial_sum_subrings, partial_sum_subrings_naive,
    partial_sum_unital, partial_sum_unital_naive, Identity,
};
use zmzn::dirichlet::{fit_lower_order, reports_for, AsymptoticReport, FitWeighting};
use zmzn::oracle::{self, OracleConfig};
use zmzn::verify::verify_ambient;
use zmzn::{
    count_coprime_congruence, count_ideals, count_subgroups, count_subrings, count_unital_subrings,
    h, h_prime_power, ns_prime_power, s_prime_power, Ambient, GoursatTuple,
};

/// Upper end of the oracle sweep in each coordinate.
const SWEEP_MAX: u64 = 24;
const IDENTITY_BOUND: usize = 128;
const CONVO_BOUND: usize = 200;
const NAIVE_SUM_MAX: u64 = 60;
const UNITAL_SUM_MAX: u64 = 500;
const FIT_POINTS: [u64; 5] = [256, 512, 1024, 2048, 4096];
const RESIDUAL_TOLERANCE: f64 = 0.05;
const ALLOWED_INVERSIONS: usize = 1;
const PROPERTY_MAX: u64 = 100;
const SYMMETRY_MAX: u64 = 200;
const MULTIPLICATIVITY_CASES: usize = 2000;
const RNG_SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: zmzn::Error) -> String {
    e.to_string()
}

fn worked_example() -> Outcome {
    let got = [
        count_subgroups(12, 18).map_err(err)?,
        count_subrings(12, 18).map_err(err)?,
        count_unital_subrings(12, 18).map_err(err)?,
        count_ideals(12, 18).map_err(err)?,
    ];
    ensure(got == [80, 49, 4, 36], || format!("(12, 18) gave {got:?}"))?;
    Ok("s=80 N_s=49 N_us=4 ideals=36".into())
}

fn local_factors() -> Outcome {
    let got = [
        ns_prime_power(2, 1, 2).map_err(err)?,
        ns_prime_power(3, 1, 2).map_err(err)?,
        s_prime_power(2, 1, 2).map_err(err)?,
        s_prime_power(3, 1, 2).map_err(err)?,
    ];
    ensure(got == [7, 7, 8, 10], || format!("got {got:?}"))?;
    Ok("ns(2;1,2)=7 ns(3;1,2)=7 s(2;1,2)=8 s(3;1,2)=10".into())
}

fn oracle_sweep() -> Outcome {
    let config = OracleConfig::default();
    let mut rings = 0;
    for m in 1..=SWEEP_MAX {
        for n in 1..=SWEEP_MAX {
            let v = verify_ambient(Ambient::new(m, n).map_err(err)?, &config).map_err(err)?;
            if let Some(why) = v.first_failure() {
                return Err(why);
            }
            rings += 1;
        }
    }
    Ok(format!("{rings} rings, counts and point sets agree"))
}

fn prime_power_cross_check() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for alpha in 0..=6u32 {
            for beta in alpha..=6u32 {
                let (pa, pb) = (p.pow(alpha), p.pow(beta));
                let local = h_prime_power(p, alpha, beta).map_err(err)?;
                let direct = counting::h_by_definition(pa, pb).map_err(err)?;
                ensure(local == direct, || {
                    format!("h p={p} ({alpha},{beta}): {local} vs {direct}")
                })?;
                let mut grid = 0;
                for j in 0..=alpha {
                    for k in 0..=beta {
                        grid += h_prime_power(p, j, k).map_err(err)?;
                    }
                }
                let sum_form = ns_prime_power(p, alpha, beta).map_err(err)?;
                let rational = ns_prime_power_rational(p, alpha, beta).map_err(err)?;
                ensure(sum_form == grid && rational == grid, || {
                    format!("N_s p={p} ({alpha},{beta}): sum {sum_form}, rational {rational}, grid {grid}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (p, a, b) cases; rational form uses constant 2(b+3g) for a=2g<b"
    ))
}

fn section_one_examples() -> Outcome {
    let ambient = Ambient::new(12, 18).map_err(err)?;
    let k = GoursatTuple::new(ambient, 6, 2, 18, 6, 1).map_err(err)?;
    let l = GoursatTuple::new(ambient, 6, 2, 18, 6, 2).map_err(err)?;
    let kp = k.materialize();
    let lp = l.materialize();

    let (u, v) = ((2, 7), (4, 5));
    ensure(kp.contains(u) && kp.contains(v), || {
        "K misses (2,7) or (4,5)".into()
    })?;
    ensure(
        ambient.mul(u, v) == (8, 17) && !kp.contains((8, 17)),
        || "(2,7)(4,5)=(8,17) is not a closure witness for K".into(),
    )?;
    ensure(
        !k.is_subring() && oracle::closure_witness(&kp).is_some(),
        || "K reported closed".into(),
    )?;

    ensure(
        l.is_subring() && oracle::check_multiplicative_closure(&lp),
        || "L not closed".into(),
    )?;
    ensure(
        lp.contains((2, 5)) && ambient.mul((2, 5), (1, 3)) == (2, 15),
        || "(2,5)(1,3) != (2,15) or (2,5) not in L".into(),
    )?;
    ensure(
        !lp.contains((2, 15)) && !l.is_ideal() && !oracle::check_ideal(&lp),
        || "L reported an ideal".into(),
    )?;

    let report = l.classify().map_err(err)?;
    ensure(
        report.order == 36 && report.invariant_factors == (2, 18),
        || format!("L classified as {report:?}"),
    )?;
    Ok("K witness (2,7)(4,5)=(8,17); L witness (2,5)(1,3)=(2,15); L ~ Z_2 x Z_18".into())
}

fn series_identities() -> Outcome {
    let mut parts = Vec::new();
    for identity in Identity::ALL {
        let bound = if identity == Identity::Convo {
            CONVO_BOUND
        } else {
            IDENTITY_BOUND
        };
        let check = check_identity(identity, bound).map_err(err)?;
        ensure(check.passed(), || {
            format!(
                "{} at X={bound}: {} mismatches, first {:?}",
                identity.name(),
                check.mismatches,
                check.first_mismatch
            )
        })?;
        parts.push(format!("{}@{bound}", identity.name()));
    }
    Ok(parts.join(" "))
}

fn summatory_consistency() -> Outcome {
    for x in 1..=NAIVE_SUM_MAX {
        let fast = partial_sum_subrings(x).map_err(err)?;
        let naive = partial_sum_subrings_naive(x).map_err(err)?;
        ensure(fast == naive, || format!("x={x}: {fast} vs {naive}"))?;
    }
    for x in 1..=UNITAL_SUM_MAX {
        let floor = partial_sum_unital(x).map_err(err)?;
        let naive = partial_sum_unital_naive(x).map_err(err)?;
        ensure(floor == naive, || {
            format!("unital x={x}: {floor} vs {naive}")
        })?;
    }
    Ok(format!(
        "subring sums x<={NAIVE_SUM_MAX}, unital identity x<={UNITAL_SUM_MAX}"
    ))
}

fn inversions(reports: &[AsymptoticReport]) -> usize {
    reports
        .windows(2)
        .filter(|w| w[1].normalized_residual.abs() > w[0].normalized_residual.abs())
        .count()
}

fn residual_list(reports: &[AsymptoticReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{:.2e}", r.normalized_residual.abs()))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Judged on the ordinary least-squares fit of `S(x)`. The equal-weight fit
/// of `S(x)/x²` is printed alongside for comparison only.
fn asymptotic_fit() -> Outcome {
    let samples = FIT_POINTS
        .iter()
        .map(|&x| Ok((x, partial_sum_subrings(x).map_err(err)?)))
        .collect::<Result<Vec<_>, String>>()?;
    let fit = fit_lower_order(&samples, FitWeighting::Absolute).map_err(err)?;
    let reports = reports_for(&samples, &fit);
    let equal = reports_for(
        &samples,
        &fit_lower_order(&samples, FitWeighting::Normalized).map_err(err)?,
    );
    let last = reports.last().expect("five fit points");
    let inv = inversions(&reports);
    ensure(inv <= ALLOWED_INVERSIONS, || {
        format!(
            "{inv} inversions in |residual|/x^2: [{}]",
            residual_list(&reports)
        )
    })?;
    ensure(last.normalized_residual.abs() < RESIDUAL_TOLERANCE, || {
        format!(
            "|residual|/x^2 at x={} is {}",
            last.x, last.normalized_residual
        )
    })?;
    Ok(format!(
        "A1={:.10} A2~{:.4}({:.1e}) A3~{:.4}({:.1e}); |r|/x^2 = [{}]; equal-weight fit |r|/x^2 = [{}]",
        leading_constant(),
        fit.a2,
        fit.a2_stderr,
        fit.a3,
        fit.a3_stderr,
        residual_list(&reports),
        residual_list(&equal)
    ))
}

fn property_suites() -> Outcome {
    for i in 1..=SYMMETRY_MAX {
        for j in 1..i {
            ensure(h(i, j).map_err(err)? == h(j, i).map_err(err)?, || {
                format!("h({i},{j})")
            })?;
            ensure(
                count_subrings(i, j).map_err(err)? == count_subrings(j, i).map_err(err)?,
                || format!("N_s({i},{j})"),
            )?;
        }
    }

    let mut rng = StdRng::seed_from_u64(RNG_SEED);
    let mut tested = 0;
    while tested < MULTIPLICATIVITY_CASES {
        let (m1, m2, n1, n2): (u64, u64, u64, u64) = (
            rng.gen_range(1..300),
            rng.gen_range(1..300),
            rng.gen_range(1..300),
            rng.gen_range(1..300),
        );
        if (m1 * m2).gcd(&(n1 * n2)) != 1 {
            continue;
        }
        let (m, n) = (m1 * n1, m2 * n2);
        ensure(
            h(m, n).map_err(err)? == h(m1, m2).map_err(err)? * h(n1, n2).map_err(err)?,
            || format!("h multiplicativity at ({m1},{m2}),({n1},{n2})"),
        )?;
        ensure(
            count_subrings(m, n).map_err(err)?
                == count_subrings(m1, m2).map_err(err)? * count_subrings(n1, n2).map_err(err)?,
            || format!("N_s multiplicativity at ({m1},{m2}),({n1},{n2})"),
        )?;
        tested += 1;
    }

    for m in 1..=PROPERTY_MAX {
        for n in 1..=PROPERTY_MAX {
            let chain = [
                count_unital_subrings(m, n).map_err(err)?,
                arith::tau(m * n).map_err(err)?,
                count_ideals(m, n).map_err(err)?,
                count_subrings(m, n).map_err(err)?,
                count_subgroups(m, n).map_err(err)?,
            ];
            ensure(chain.windows(2).all(|w| w[0] <= w[1]), || {
                format!("count chain ({m},{n}): {chain:?}")
            })?;
        }
    }

    for n in 1..=PROPERTY_MAX {
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                let exhaustive = (0..n as i64)
                    .filter(|&x| (x as u64).gcd(&n) == 1 && (a * x - b).rem_euclid(n as i64) == 0)
                    .count() as u64;
                let formula = count_coprime_congruence(a, b, n).map_err(err)?;
                ensure(formula == exhaustive, || {
                    format!("{a}x = {b} mod {n}: {formula} vs {exhaustive}")
                })?;
            }
        }
    }
    Ok(format!(
        "symmetry<={SYMMETRY_MAX}, {MULTIPLICATIVITY_CASES} coprime splittings, chain<={PROPERTY_MAX}, congruences n<={PROPERTY_MAX}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked example (12, 18)", worked_example),
        ("prime-power local factors", local_factors),
        ("oracle sweep m, n <= 24", oracle_sweep),
        ("prime-power formula cross-check", prime_power_cross_check),
        ("K and L examples", section_one_examples),
        ("Dirichlet coefficient identities", series_identities),
        ("summatory consistency", summatory_consistency),
        ("asymptotic fit", asymptotic_fit),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
