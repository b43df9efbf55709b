//! Star-discrepancy comparison: the circle rotation against two 3-interval
//! exchanges with the same rotation number.
//!
//! The exchange lengths are solved from `(λ_B+λ_C)/(1+λ_B) = γ` given a
//! requested `λ_C`. That solve does not always produce positive lengths
//! (positivity needs `λ_C` strictly between `2 - 1/γ` and `γ`); when a
//! request fails, the run substitutes the first positive solution on the
//! rational grid `k/16` not already taken, and records the substitution in
//! the CSV header.

use std::io::Write;

use lds_core::{
    bound_monitor, curve, n3_from_gamma, n3_standard, normalized_max, BoundReport,
    DiscrepancyCurve, IetError, PointStream, QuadReal, Rational,
};
use num_bigint::BigInt;

use crate::literal::parse_literal;
use crate::opts::Figure2Args;
use crate::{output_writer, CliError};

/// Grid denominator for fallback `λ_C` candidates.
const FALLBACK_GRID: i64 = 16;

/// `C_up` is taken over grid entries with `N >= C_UP_MIN_N`.
pub const C_UP_MIN_N: usize = 10;

#[derive(Debug, Clone)]
pub struct ExchangeCurve {
    pub requested_lc: QuadReal,
    pub used_lc: QuadReal,
    pub fallback: bool,
    pub lengths: (QuadReal, QuadReal, QuadReal),
    pub curve: DiscrepancyCurve,
    pub c_up: f64,
    pub monitor: BoundReport,
}

#[derive(Debug, Clone)]
pub struct Figure2Output {
    pub gamma: QuadReal,
    pub n_max: usize,
    pub step: usize,
    pub rotation: DiscrepancyCurve,
    pub rotation_c_up: f64,
    pub rotation_monitor: BoundReport,
    pub exchange_a: ExchangeCurve,
    pub exchange_b: ExchangeCurve,
}

/// Solves the lengths for a requested `λ_C`, falling back to the rational
/// grid when positivity fails.
fn resolve_lengths(
    gamma: &QuadReal,
    requested: &QuadReal,
    taken: &[QuadReal],
) -> Result<(QuadReal, QuadReal, QuadReal, bool), CliError> {
    match n3_from_gamma(gamma, requested) {
        Ok((la, lb, lc)) => return Ok((la, lb, lc, false)),
        Err(IetError::NonPositiveResult { .. }) => {}
        Err(e) => return Err(CliError::usage_from(e)),
    }
    for k in 1..FALLBACK_GRID {
        let lc = QuadReal::from_rational(Rational::new(BigInt::from(k), BigInt::from(FALLBACK_GRID)));
        if taken.contains(&lc) {
            continue;
        }
        if let Ok((la, lb, lc)) = n3_from_gamma(gamma, &lc) {
            return Ok((la, lb, lc, true));
        }
    }
    Err(CliError::Usage(format!(
        "no positive 3-interval lengths with rotation number {gamma} on the k/{FALLBACK_GRID} grid"
    )))
}

fn exchange_curve(
    gamma: &QuadReal,
    requested: &QuadReal,
    taken: &[QuadReal],
    n_max: usize,
    step: usize,
) -> Result<ExchangeCurve, CliError> {
    let (la, lb, lc, fallback) = resolve_lengths(gamma, requested, taken)?;
    let iet = n3_standard(la.clone(), lb.clone(), lc.clone()).map_err(CliError::usage_from)?;
    let stream = PointStream::iet_orbit(iet, QuadReal::zero()).map_err(CliError::usage_from)?;
    let curve = curve(&stream, n_max, step).map_err(CliError::usage_from)?;
    let c_up = normalized_max(&curve, C_UP_MIN_N)
        .ok_or_else(|| CliError::Usage("curve has no entries with N >= 10".into()))?;
    let monitor = bound_monitor(&curve).map_err(CliError::usage_from)?;
    Ok(ExchangeCurve {
        requested_lc: requested.clone(),
        used_lc: lc.clone(),
        fallback,
        lengths: (la, lb, lc),
        curve,
        c_up,
        monitor,
    })
}

pub fn figure2(
    gamma: QuadReal,
    lc_a: Option<QuadReal>,
    lc_b: Option<QuadReal>,
    n_max: usize,
    step: usize,
) -> Result<Figure2Output, CliError> {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let quarter = Rational::new(BigInt::from(1), BigInt::from(4));
    let lc_a = lc_a.unwrap_or_else(|| gamma.scale(&half));
    let lc_b = lc_b.unwrap_or_else(|| gamma.scale(&quarter));

    let rotation_stream = PointStream::kronecker(gamma.clone());
    let rotation = curve(&rotation_stream, n_max, step).map_err(CliError::usage_from)?;
    let rotation_c_up = normalized_max(&rotation, C_UP_MIN_N)
        .ok_or_else(|| CliError::Usage("curve has no entries with N >= 10".into()))?;
    let rotation_monitor = bound_monitor(&rotation).map_err(CliError::usage_from)?;

    let exchange_a = exchange_curve(&gamma, &lc_a, &[], n_max, step)?;
    let exchange_b = exchange_curve(&gamma, &lc_b, &[exchange_a.used_lc.clone()], n_max, step)?;

    Ok(Figure2Output {
        gamma,
        n_max,
        step,
        rotation,
        rotation_c_up,
        rotation_monitor,
        exchange_a,
        exchange_b,
    })
}

pub fn header_comments(fig: &Figure2Output, precision: usize) -> Vec<String> {
    let mut lines = vec![
        format!("star-discrepancy comparison to N = {} (step {})", fig.n_max, fig.step),
        format!("gamma = {} (~{})", fig.gamma, fig.gamma.to_decimal(precision.min(12))),
        "rotation: fractional-part orbit of gamma on [0, 1)".to_string(),
    ];
    for (name, ex) in [("iet_a", &fig.exchange_a), ("iet_b", &fig.exchange_b)] {
        if ex.fallback {
            lines.push(format!(
                "{name}: requested lambda_c = {} fails positivity; using lambda_c = {}",
                ex.requested_lc, ex.used_lc
            ));
        } else {
            lines.push(format!("{name}: lambda_c = {}", ex.used_lc));
        }
        let (la, lb, lc) = &ex.lengths;
        lines.push(format!("{name} lengths: lambda_a = {la}, lambda_b = {lb}, lambda_c = {lc}"));
    }
    lines.push(format!(
        "C_up over N in [{}, {}]: rotation = {:.12e}, iet_a = {:.12e}, iet_b = {:.12e}",
        C_UP_MIN_N, fig.n_max, fig.rotation_c_up, fig.exchange_a.c_up, fig.exchange_b.c_up
    ));
    lines
}

pub fn write_csv(out: &mut dyn Write, fig: &Figure2Output, precision: usize) -> Result<(), CliError> {
    for line in header_comments(fig, precision) {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "N,Dstar_rotation,Dstar_iet_a,Dstar_iet_b,logN_over_N")?;
    let rows = fig.rotation.entries.len();
    assert_eq!(rows, fig.exchange_a.curve.entries.len());
    assert_eq!(rows, fig.exchange_b.curve.entries.len());
    for i in 0..rows {
        let n = fig.rotation.entries[i].n;
        writeln!(
            out,
            "{},{},{},{},{:.*}",
            n,
            fig.rotation.entries[i].dstar.to_decimal(precision),
            fig.exchange_a.curve.entries[i].dstar.to_decimal(precision),
            fig.exchange_b.curve.entries[i].dstar.to_decimal(precision),
            precision,
            (n as f64).ln() / n as f64
        )?;
    }
    Ok(())
}

pub fn run_figure2(args: &Figure2Args) -> Result<(), CliError> {
    let gamma = parse_literal(&args.gamma)?;
    let lc_a = args.lc_a.as_deref().map(parse_literal).transpose()?;
    let lc_b = args.lc_b.as_deref().map(parse_literal).transpose()?;
    let fig = figure2(gamma, lc_a, lc_b, args.n, args.step)?;
    let mut out = output_writer(&args.out)?;
    write_csv(&mut out, &fig, args.precision)
}
