//! Stream construction and the gen/disc/curve/cf commands.

use std::io::Write;

use lds_core::{
    bound_monitor, cf_expand, curve, extreme_disc_unit, fls, fls_start, moving_average,
    n3_from_gamma, n3_standard, star_disc_unit, Interval1D, PointStream, QuadError, QuadReal,
};
use serde_json::json;

use crate::literal::parse_literal;
use crate::opts::{CfArgs, CurveArgs, DiscArgs, GenArgs, OutputFormat, StreamArgs, StreamKindArg};
use crate::{output_writer, CliError};

fn require<'a>(opt: &'a Option<String>, flag: &str, kind: &str) -> Result<&'a str, CliError> {
    opt.as_deref()
        .ok_or_else(|| CliError::Usage(format!("--{flag} is required for --kind {kind}")))
}

fn reject(opt: &Option<u32>, flag: &str, kind: &str) -> Result<u32, CliError> {
    opt.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --kind {kind}")))
}

/// Builds the stream a command operates on, plus provenance lines for CSV
/// headers.
pub fn build_stream(args: &StreamArgs) -> Result<(PointStream, Vec<String>), CliError> {
    let mut notes = Vec::new();
    let stream = match args.kind {
        StreamKindArg::Kronecker => {
            let z = parse_literal(require(&args.z, "z", "kronecker")?)?;
            notes.push(format!("kronecker orbit of z = {z}"));
            PointStream::kronecker(z)
        }
        StreamKindArg::Ls => {
            let (l, s) = (reject(&args.l, "L", "ls")?, reject(&args.s, "S", "ls")?);
            notes.push(format!("refinement-ordered points, L = {l}, S = {s}"));
            PointStream::ls_points(l, s).map_err(CliError::usage_from)?
        }
        StreamKindArg::Jls => {
            let (l, s) = (reject(&args.l, "L", "jls")?, reject(&args.s, "S", "jls")?);
            notes.push(format!("index-formula points, L = {l}, S = {s}"));
            PointStream::jls(l, s).map_err(CliError::usage_from)?
        }
        StreamKindArg::Fls => {
            let (l, s) = (reject(&args.l, "L", "fls")?, reject(&args.s, "S", "fls")?);
            let (x0, q0) = fls_start(l, s, args.r).map_err(CliError::usage_from)?;
            notes.push(format!(
                "orbit of the ({l}, {s}) exchange from x0 = {x0} (r = {}, q0 = {q0})",
                args.r
            ));
            PointStream::iet_orbit(fls(l, s).map_err(CliError::usage_from)?, x0)
                .map_err(CliError::usage_from)?
        }
        StreamKindArg::N3 => {
            let la = parse_literal(require(&args.lambda_a, "lambda-a", "n3")?)?;
            let lb = parse_literal(require(&args.lambda_b, "lambda-b", "n3")?)?;
            let lc = parse_literal(require(&args.lambda_c, "lambda-c", "n3")?)?;
            let x0 = parse_literal(&args.x0)?;
            notes.push(format!(
                "3-interval exchange, lambda = ({la}, {lb}, {lc}), x0 = {x0}"
            ));
            PointStream::iet_orbit(n3_standard(la, lb, lc).map_err(CliError::usage_from)?, x0)
                .map_err(CliError::usage_from)?
        }
        StreamKindArg::N3Gamma => {
            let gamma = parse_literal(require(&args.gamma, "gamma", "n3-gamma")?)?;
            let lc = parse_literal(require(&args.lc, "lc", "n3-gamma")?)?;
            let (la, lb, lc) = n3_from_gamma(&gamma, &lc).map_err(CliError::usage_from)?;
            let x0 = parse_literal(&args.x0)?;
            notes.push(format!(
                "3-interval exchange with rotation number {gamma}: lambda = ({la}, {lb}, {lc}), x0 = {x0}"
            ));
            PointStream::iet_orbit(n3_standard(la, lb, lc).map_err(CliError::usage_from)?, x0)
                .map_err(CliError::usage_from)?
        }
    };
    let stream = match (&args.restrict_left, &args.restrict_right) {
        (Some(left), Some(right)) => {
            let sub = Interval1D::new(parse_literal(left)?, parse_literal(right)?)
                .map_err(CliError::usage_from)?;
            notes.push(format!("restricted to [{}, {})", sub.left(), sub.right()));
            PointStream::restriction(stream, sub).map_err(CliError::usage_from)?
        }
        _ => stream,
    };
    Ok((stream, notes))
}

pub fn run_gen(args: &GenArgs) -> Result<(), CliError> {
    if args.n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let (stream, notes) = build_stream(&args.stream)?;
    let points = stream.take(args.n)?;
    let mut out = output_writer(&args.out)?;
    match args.format {
        OutputFormat::Csv => {
            for note in &notes {
                writeln!(out, "# {note}")?;
            }
            writeln!(out, "i,exact,decimal")?;
            for (i, p) in points.iter().enumerate() {
                writeln!(out, "{i},{p},{}", p.to_decimal(args.precision))?;
            }
        }
        OutputFormat::Json => {
            let decimals: Vec<String> = points.iter().map(|p| p.to_decimal(args.precision)).collect();
            let doc = json!({
                "stream": stream,
                "n": args.n,
                "points": points,
                "decimals": decimals,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

pub fn run_disc(args: &DiscArgs) -> Result<(), CliError> {
    if args.n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let (stream, notes) = build_stream(&args.stream)?;
    let raw = stream.take(args.n)?;
    let scaled = lds_core::discrepancy::scale_to_unit(&raw, stream.domain())?;
    let star = star_disc_unit(&scaled)?;
    let extreme = extreme_disc_unit(&scaled)?;
    let mut out = output_writer(&args.out)?;
    match args.format {
        OutputFormat::Csv => {
            for note in &notes {
                writeln!(out, "# {note}")?;
            }
            writeln!(out, "N,Dstar,Dextreme")?;
            writeln!(
                out,
                "{},{},{}",
                args.n,
                star.value.to_decimal(args.precision),
                extreme.value.to_decimal(args.precision)
            )?;
        }
        OutputFormat::Json => {
            let render = |r: &lds_core::DiscrepancyResult| {
                json!({
                    "value_exact": r.value,
                    "value_decimal": r.value.to_decimal(args.precision),
                    "witness_left": r.witness_left,
                    "witness_right": r.witness_right,
                    "attained": r.attained,
                })
            };
            let doc = json!({
                "stream": stream,
                "n": args.n,
                "star": render(&star),
                "extreme": render(&extreme),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

/// Normalized statistic `N·D*_N / log N`, rendered blank for `N = 1` where it
/// is undefined.
fn scaled_column(n: usize, dstar: &QuadReal, precision: usize) -> String {
    if n < 2 {
        return String::new();
    }
    format!("{:.*}", precision, n as f64 * dstar.to_f64() / (n as f64).ln())
}

pub fn run_curve(args: &CurveArgs) -> Result<(), CliError> {
    let (stream, notes) = build_stream(&args.stream)?;
    let curve_data = curve(&stream, args.n, args.step).map_err(CliError::usage_from)?;
    let mut out = output_writer(&args.out)?;
    match args.format {
        OutputFormat::Csv => {
            for note in &notes {
                writeln!(out, "# {note}")?;
            }
            writeln!(out, "# Dstar exact values at precision {}", args.precision)?;
            writeln!(out, "N,Dstar,scaled")?;
            for e in &curve_data.entries {
                writeln!(
                    out,
                    "{},{},{}",
                    e.n,
                    e.dstar.to_decimal(args.precision),
                    scaled_column(e.n, &e.dstar, args.precision)
                )?;
            }
        }
        OutputFormat::Json => {
            let monitor = bound_monitor(&curve_data).ok();
            let doc = json!({
                "stream": stream,
                "curve": curve_data,
                "monitor": monitor,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

pub fn run_cf(args: &CfArgs) -> Result<(), CliError> {
    if args.max_terms < 1 || args.average_terms < 1 {
        return Err(CliError::Usage("--max-terms and --m must be at least 1".into()));
    }
    let z = parse_literal(&args.z)?;
    let cf = cf_expand(&z, args.max_terms).map_err(CliError::usage_from)?;
    let (ma, note) = match moving_average(&cf, args.average_terms) {
        Ok(ma) => (Some(ma), None),
        Err(QuadError::RationalInput) => (
            None,
            Some("rational input: the moving-average criterion applies to irrationals only".to_string()),
        ),
        Err(e) => return Err(CliError::usage_from(e)),
    };
    let mut out = output_writer(&args.out)?;
    match args.format {
        OutputFormat::Csv => {
            writeln!(out, "# input = {z}")?;
            writeln!(out, "# cf = {cf}")?;
            if let Some(note) = &note {
                writeln!(out, "# {note}")?;
            }
            if let Some(ma) = &ma {
                if let Some(limit) = &ma.limit {
                    writeln!(out, "# limit = {}/{}", limit.numer(), limit.denom())?;
                }
                writeln!(out, "# bounded = {}", ma.bounded)?;
                writeln!(out, "m,average")?;
                for (i, v) in ma.values.iter().enumerate() {
                    writeln!(out, "{},{}/{}", i + 1, v.numer(), v.denom())?;
                }
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "input": z,
                "decimal": z.to_decimal(12),
                "cf": cf,
                "moving_average": ma,
                "note": note,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}
