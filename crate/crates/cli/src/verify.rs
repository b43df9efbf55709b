//! Exact verification suites behind `lds verify`.
//!
//! Every check is an exact-arithmetic assertion; a suite passes only if all
//! of its checks do. The random cases use a fixed seed, so runs are
//! reproducible byte for byte.

use std::cmp::Ordering;

use lds_core::{
    beta, beta_power_coords, first_return, fls, kronecker_point, n3_certificate, n3_from_gamma,
    n3_standard, orbit_matches_jls, pair_enumeration_2_2, restrict, rotation, star_disc_interval,
    star_disc_unit, Interval1D, PointStream, QuadReal, Rational,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::opts::{SuiteArg, VerifyArgs};

const SCALING_CASES: usize = 200;
const SEED: u64 = 0x1d5_0f_5eed;

#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    fn from_result<T: std::fmt::Debug>(name: impl Into<String>, r: Result<T, impl std::fmt::Display>) -> Self {
        match r {
            Ok(v) => Check::new(name, true, format!("{v:?}")),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub first_failure: Option<String>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
        SuiteReport { suite: suite.into(), passed: first_failure.is_none(), first_failure, checks }
    }
}

fn rand_rational(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Affine scaling leaves the star discrepancy unchanged, exactly.
pub fn suite_scaling(cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0usize;
    let mut first_detail = String::new();
    for case in 0..cases {
        let n = rng.gen_range(1..=50);
        let unit_points: Vec<QuadReal> = (0..n)
            .map(|_| QuadReal::from_rational(rand_rational(&mut rng, 240)))
            .collect();
        let left = QuadReal::from_rational(rand_rational(&mut rng, 12))
            - QuadReal::from_ratio(rng.gen_range(0..6), 1);
        let len = QuadReal::from_rational(rand_rational(&mut rng, 12)) + QuadReal::from_ratio(1, 7);
        let interval = Interval1D::new(left.clone(), &left + &len).expect("positive length");
        let moved: Vec<QuadReal> = unit_points
            .iter()
            .map(|p| &left + &p.checked_mul(&len).expect("rational product"))
            .collect();
        let direct = star_disc_unit(&unit_points).expect("unit points");
        let scaled = star_disc_interval(&moved, &interval).expect("interval points");
        if direct.value != scaled.value {
            failures += 1;
            if first_detail.is_empty() {
                first_detail = format!("case {case}: {} != {}", direct.value, scaled.value);
            }
        }
    }
    let checks = vec![Check::new(
        "affine-scaling-invariance",
        failures == 0,
        if failures == 0 {
            format!("{cases} random (point set, interval) pairs agree exactly")
        } else {
            format!("{failures}/{cases} mismatches; first: {first_detail}")
        },
    )];
    SuiteReport::new("scaling", checks)
}

/// Restriction to a subinterval: identity on the full domain, composition,
/// the filtered-enumeration oracle, and orbit recovery from the ambient
/// rotation.
pub fn suite_restriction() -> SuiteReport {
    let mut checks = Vec::new();
    let g = beta(1, 1).expect("golden");

    let stream = PointStream::kronecker(g.clone());
    let full = restrict(&stream, Interval1D::unit(), 40);
    let direct = stream.take(40);
    checks.push(Check::new(
        "full-interval-identity",
        matches!((&full, &direct), (Ok(a), Ok(b)) if a == b),
        "restriction to the whole domain returns the sequence unchanged",
    ));

    let half = Interval1D::new(QuadReal::zero(), QuadReal::from_ratio(1, 2)).expect("half");
    let restricted = restrict(&stream, half.clone(), 20);
    let oracle: Vec<QuadReal> = (0..200u64)
        .map(|i| kronecker_point(&g, i))
        .filter(|p| half.contains(p).expect("same field"))
        .take(20)
        .collect();
    checks.push(Check::new(
        "golden-to-half-matches-filter-oracle",
        matches!(&restricted, Ok(r) if r == &oracle),
        "first 20 members below 1/2 equal the filtered enumeration",
    ));

    let outer = Interval1D::new(QuadReal::zero(), QuadReal::from_ratio(3, 4)).expect("outer");
    let inner_iv = Interval1D::new(QuadReal::from_ratio(1, 4), QuadReal::from_ratio(3, 4)).expect("inner");
    let twice = PointStream::restriction(stream.clone(), outer)
        .and_then(|s| PointStream::restriction(s, inner_iv.clone()))
        .and_then(|s| s.take(30));
    let once = PointStream::restriction(stream.clone(), inner_iv).and_then(|s| s.take(30));
    checks.push(Check::new(
        "composition-equals-intersection",
        matches!((&twice, &once), (Ok(a), Ok(b)) if a == b),
        "restricting twice equals restricting to the intersection",
    ));

    let (la, lb, lc) = (QuadReal::from_ratio(1, 2), QuadReal::from_ratio(1, 3), QuadReal::from_ratio(1, 6));
    let total = &QuadReal::one() + &lb;
    let angle = &lb + &lc;
    let y0 = QuadReal::from_ratio(1, 10);
    let ambient = rotation(&total - &angle, angle).expect("rotation");
    let inner_stream = PointStream::iet_orbit(ambient, y0.clone()).expect("ambient orbit");
    let sub = Interval1D::new(QuadReal::zero(), QuadReal::one()).expect("unit");
    let recovered = restrict(&inner_stream, sub, 25);
    let exchange = n3_standard(la, lb, lc).expect("exchange");
    let direct_orbit = PointStream::iet_orbit(exchange, y0).and_then(|s| s.take(25));
    checks.push(Check::new(
        "rotation-restriction-recovers-exchange-orbit",
        matches!((&recovered, &direct_orbit), (Ok(a), Ok(b)) if a == b),
        "restriction of the ambient rotation reproduces the 3-interval orbit pointwise",
    ));

    SuiteReport::new("restriction", checks)
}

/// The 3-interval exchange agrees pointwise with the first-return map of the
/// ambient rotation, with the expected step counts.
fn n3_cross_check(la: &QuadReal, lb: &QuadReal, lc: &QuadReal, samples: u32) -> Result<String, String> {
    let f = n3_standard(la.clone(), lb.clone(), lc.clone()).map_err(|e| e.to_string())?;
    let total = f.total().clone();
    let ambient_total = total.checked_add(lb).map_err(|e| e.to_string())?;
    let angle = lb.checked_add(lc).map_err(|e| e.to_string())?;
    let two_step_left = la.clone();
    let two_step_right = la.checked_add(lb).map_err(|e| e.to_string())?;
    for k in 0..samples {
        let y = total.scale(&Rational::new(BigInt::from(k), BigInt::from(samples)));
        let via_exchange = f.evaluate(&y).map_err(|e| e.to_string())?;
        let (via_return, steps) =
            first_return(&ambient_total, &angle, &total, &y, 8).map_err(|e| e.to_string())?;
        if via_exchange != via_return {
            return Err(format!("value mismatch at sample {k}: {via_exchange} vs {via_return}"));
        }
        let in_middle = two_step_left.compare(&y).map_err(|e| e.to_string())? != Ordering::Greater
            && y.compare(&two_step_right).map_err(|e| e.to_string())? == Ordering::Less;
        let expected_steps = if in_middle { 2 } else { 1 };
        if steps != expected_steps {
            return Err(format!("step count {steps} at sample {k}, expected {expected_steps}"));
        }
    }
    Ok(format!("{samples} sample points agree, step counts 1/2 as expected"))
}

pub fn suite_n3(samples: u32) -> SuiteReport {
    let mut checks = Vec::new();
    let (ra, rb, rc) = (QuadReal::from_ratio(1, 2), QuadReal::from_ratio(1, 3), QuadReal::from_ratio(1, 6));
    checks.push(Check::from_result(
        "first-return-cross-check-rational",
        n3_cross_check(&ra, &rb, &rc, samples),
    ));
    let g = beta(1, 1).expect("golden");
    match n3_from_gamma(&g, &QuadReal::from_ratio(1, 2)) {
        Ok((la, lb, lc)) => {
            checks.push(Check::from_result(
                "first-return-cross-check-golden",
                n3_cross_check(&la, &lb, &lc, samples),
            ));
            match n3_certificate(&la, &lb, &lc) {
                Ok(cert) => checks.push(Check::new(
                    "golden-rotation-number-certificate",
                    cert.low_discrepancy && cert.rho == g,
                    format!("rho = {}, cf = {}", cert.rho, cert.cf),
                )),
                Err(e) => checks.push(Check::new("golden-rotation-number-certificate", false, e.to_string())),
            }
        }
        Err(e) => checks.push(Check::new("first-return-cross-check-golden", false, e.to_string())),
    }
    match n3_certificate(&QuadReal::from_ratio(1, 3), &QuadReal::from_ratio(1, 3), &QuadReal::from_ratio(1, 3)) {
        Ok(cert) => checks.push(Check::new(
            "rational-rotation-number-is-rejected",
            !cert.low_discrepancy && !cert.irrational && cert.rho == QuadReal::from_ratio(1, 2),
            format!("rho = {}", cert.rho),
        )),
        Err(e) => checks.push(Check::new("rational-rotation-number-is-rejected", false, e.to_string())),
    }
    SuiteReport::new("n3", checks)
}

/// Translation vector and pair enumeration of the (2, 2) exchange.
pub fn suite_example35(window: u64) -> SuiteReport {
    let mut checks = Vec::new();
    let b = beta(2, 2).expect("beta(2,2)");
    let b2 = &b * &b;
    match fls(2, 2) {
        Ok(f) => {
            let expected = [&b + &b2, -&b, b2.clone(), -&(&b + &b2)];
            let got = f.translation_vector();
            checks.push(Check::new(
                "translation-vector",
                got == expected,
                format!("w = ({}, {}, {}, {})", got[0], got[1], got[2], got[3]),
            ));
        }
        Err(e) => checks.push(Check::new("translation-vector", false, e.to_string())),
    }
    let k = window as i64;
    checks.push(Check::from_result(
        "orbit-pair-enumeration",
        pair_enumeration_2_2(-k, k).map(|r| format!("pairs verified for k in [{}, {}]", r.k_min, r.k_max)),
    ));
    SuiteReport::new("example35", checks)
}

pub fn suite_orbit_jls(l: u32, s: u32, r: i64, window: Option<u64>) -> SuiteReport {
    let cycle = (l as u64) * (l as u64) + (l as u64) + (s as u64);
    let window = window.unwrap_or(2 * (cycle + 1));
    let check = Check::from_result(
        format!("orbit-membership-and-super-cycle-L{l}-S{s}"),
        orbit_matches_jls(l, s, r, window).map(|rep| {
            format!(
                "x0 = {}, q0 = {}, super-cycle {} steps, {} points checked",
                rep.x0, rep.q0, rep.super_cycle_len, rep.points_checked
            )
        }),
    );
    SuiteReport::new("orbit-jls", vec![check])
}

/// Denominator structure of `β^l = a + b·β`: integral for S = 1, strictly
/// fractional (and growing) for S >= 2 — the obstruction to realizing the
/// refinement sequence as an exchange orbit.
pub fn suite_ls_noncoincidence(l: u32, s: u32, lmax: u32) -> SuiteReport {
    let mut denominators = Vec::new();
    let mut pass = true;
    let mut detail = String::new();
    for e in 2..=lmax {
        match beta_power_coords(l, s, e) {
            Ok((a, b)) => {
                let den = a.denom().max(b.denom()).clone();
                if s == 1 && den > BigInt::from(1) {
                    pass = false;
                }
                if s >= 2 && den <= BigInt::from(1) {
                    pass = false;
                }
                denominators.push(den.to_string());
            }
            Err(e2) => {
                pass = false;
                detail = e2.to_string();
            }
        }
    }
    if detail.is_empty() {
        detail = if s == 1 {
            format!("all coordinates integral for l = 2..{lmax} (denominators {})", denominators.join(","))
        } else {
            format!("denominators {} all exceed 1 for l = 2..{lmax}", denominators.join(","))
        };
    }
    let check = Check::new(format!("beta-power-denominators-L{l}-S{s}"), pass, detail);
    SuiteReport::new("ls-noncoincidence", vec![check])
}

pub fn run_suites(args: &VerifyArgs) -> Vec<SuiteReport> {
    match args.suite {
        SuiteArg::Scaling => vec![suite_scaling(SCALING_CASES)],
        SuiteArg::Restriction => vec![suite_restriction()],
        SuiteArg::N3 => vec![suite_n3(100)],
        SuiteArg::Example35 => vec![suite_example35(args.window.unwrap_or(50))],
        SuiteArg::OrbitJls => vec![suite_orbit_jls(args.l, args.s, args.r, args.window)],
        SuiteArg::LsNoncoincidence => vec![suite_ls_noncoincidence(args.l, args.s, args.lmax)],
        SuiteArg::All => vec![
            suite_scaling(SCALING_CASES),
            suite_restriction(),
            suite_n3(100),
            suite_example35(50),
            suite_orbit_jls(args.l, args.s, args.r, None),
            suite_ls_noncoincidence(args.l, args.s, args.lmax),
        ],
    }
}
