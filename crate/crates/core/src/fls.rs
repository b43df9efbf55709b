//! The family of interval exchanges built from the relation
//! `L·β + S·β² = 1`.
//!
//! For parameters `L, S >= 1` the exchange acts on `n = L+S` intervals:
//! `L` of length `β` followed by `S` of length `β²`, with `π₀ = Id` and an
//! image order that cycles the long block through the short block. Its
//! translation vector is
//!
//! ```text
//! w_1 = (L-1)β + β²,   w_i = -β (2 <= i <= L),
//! w_i = β² (L+1 <= i <= L+S-1),   w_{L+S} = -(S-1)β² - β.
//! ```
//!
//! Orbits of suitable start points enumerate the set
//! `J = { {m·β + n·β²} : m, n ∈ ℤ }`; this module both generates the orbit
//! and verifies, in exact arithmetic, that it stays inside `J` and follows
//! the expected interval schedule.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::iet::{CombinatorialData, Iet, IetError};
use crate::quadratic::{beta, QuadReal, Rational};

/// Initial search span for start points; widened geometrically up to
/// [`START_SEARCH_CAP`] before giving up.
fn start_search_window(l: u32, s: u32) -> i64 {
    let n = (l + s) as i64;
    2 * n * n
}

const START_SEARCH_CAP: i64 = 1 << 22;

fn validate_params(l: u32, s: u32) -> Result<(), IetError> {
    if l < 1 || s < 1 {
        return Err(IetError::InvalidParams(format!(
            "requires L >= 1 and S >= 1, got L={l}, S={s}"
        )));
    }
    Ok(())
}

/// Image order of the exchange: positions `1..=L+S` hold the labels
/// `(2, 3, .., L, L+S, 1, L+1, .., L+S-1)`.
fn image_order(l: usize, s: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(l + s);
    order.extend(2..=l);
    order.push(l + s);
    order.push(1);
    order.extend(l + 1..l + s);
    order
}

/// Builds the `(L, S)` exchange on `[0, 1)`.
pub fn fls(l: u32, s: u32) -> Result<Iet, IetError> {
    validate_params(l, s)?;
    let b = beta(l, s)?;
    let b2 = b.checked_mul(&b)?;
    let mut lengths = vec![b; l as usize];
    lengths.extend(std::iter::repeat_n(b2, s as usize));
    let n = (l + s) as usize;
    let domain_order: Vec<usize> = (1..=n).collect();
    let comb = CombinatorialData::from_image_orders(&domain_order, &image_order(l as usize, s as usize))?;
    Iet::new(comb, lengths)
}

/// Start point for the orbit enumeration: the least `q0 >= 0` with
/// `{-r·β - q0·β²}` in `I_1 = [0, β)` but `{-r·β - (q0+1)·β²}` outside,
/// returned together with `q0`.
pub fn fls_start(l: u32, s: u32, r: i64) -> Result<(QuadReal, i64), IetError> {
    validate_params(l, s)?;
    let b = beta(l, s)?;
    let b2 = b.checked_mul(&b)?;
    let base = b.scale(&Rational::from_integer(BigInt::from(-r)));
    let mut current = base.frac();
    let in_i1 = |x: &QuadReal| -> Result<bool, IetError> { Ok(x.compare(&b)? == Ordering::Less) };
    let mut window = start_search_window(l, s);
    let mut q: i64 = 0;
    loop {
        let next = current.checked_sub(&b2)?.frac();
        if in_i1(&current)? && !in_i1(&next)? {
            return Ok((current, q));
        }
        q += 1;
        current = next;
        if q >= window {
            if window >= START_SEARCH_CAP {
                return Err(IetError::NotFoundWithinWindow { last_q: q });
            }
            window *= 2;
        }
    }
}

/// Exact rationals `(a, b)` with `β^exponent = a + b·β`, obtained by folding
/// `β² = (1 - L·β)/S` into the power.
pub fn beta_power_coords(l: u32, s: u32, exponent: u32) -> Result<(Rational, Rational), IetError> {
    validate_params(l, s)?;
    let mut a = Rational::one();
    let mut b = Rational::zero();
    let l_over_s = Rational::new(BigInt::from(l), BigInt::from(s));
    let inv_s = Rational::new(BigInt::one(), BigInt::from(s));
    for _ in 0..exponent {
        // (a + b·β)·β = a·β + b·(1 - L·β)/S
        let next_a = &b * &inv_s;
        let next_b = &a - &(&b * &l_over_s);
        a = next_a;
        b = next_b;
    }
    Ok((a, b))
}

/// Integer coordinates of a point of `J`: `point = {m·β + n·β²}` with
/// `0 <= n < S`, extracted exactly in the basis `(1, β)`.
///
/// Returns `None` when the point is not of this form. Requires an irrational
/// `β` (the basis degenerates otherwise).
pub fn jls_coordinates(point: &QuadReal, l: u32, s: u32) -> Result<Option<(BigInt, u32)>, IetError> {
    validate_params(l, s)?;
    let b = beta(l, s)?;
    if b.is_rational() {
        return Err(IetError::InvalidParams(format!(
            "beta({l},{s}) is rational; coordinates in (1, beta) are not unique"
        )));
    }
    if point.radicand() != 1 && point.radicand() != b.radicand() {
        return Ok(None);
    }
    // point = u + v·β, and m·β + n·β² = n/S + (m - n·L/S)·β
    let v = point.radical_part() / b.radical_part();
    let u = point.rational_part() - &v * b.rational_part();
    for n in 0..s {
        let shift = &u - Rational::new(BigInt::from(n), BigInt::from(s));
        let m = &v + Rational::new(BigInt::from(n as u64 * l as u64), BigInt::from(s));
        if shift.is_integer() && m.is_integer() {
            return Ok(Some((m.to_integer(), n)));
        }
    }
    Ok(None)
}

/// Expected interval itinerary (0-based labels) over one super-cycle of
/// length `L² + L + S`, starting from a point of `I_1`:
/// `L` blocks stepping down `I_L, .., I_1`, then `I_{L+1}, .., I_{L+S}`,
/// then one more descent `I_L, .., I_1`.
pub fn super_cycle_schedule(l: u32, s: u32) -> Vec<usize> {
    let (l, s) = (l as usize, s as usize);
    let mut sched = Vec::with_capacity(l * l + l + s + 1);
    sched.push(0);
    for _block in 0..l {
        sched.extend((0..l).rev());
    }
    sched.extend(l..l + s);
    sched.extend((0..l).rev());
    sched
}

/// Outcome of [`orbit_matches_jls`]: the exact checks that passed and the
/// data they were run on.
#[derive(Debug, Clone, serde::Serialize)]
pub struct JlsOrbitReport {
    pub l: u32,
    pub s: u32,
    pub r: i64,
    pub x0: QuadReal,
    pub q0: i64,
    pub window: u64,
    pub points_checked: u64,
    pub super_cycle_len: u64,
}

/// Verifies over `|k| <= window` that the orbit of the `(L, S)` exchange from
/// [`fls_start`] (i) consists of points `{m·β + n·β²}` with exact integer
/// coordinates, and (ii) runs through one full super-cycle: the itinerary
/// over the first `L² + L + S` steps matches [`super_cycle_schedule`], the
/// renewal point `[0, β²)` is not hit earlier, and the step-`L²+L+S` point
/// equals `{-(r+1)·β - (q0-L-1)·β²}` inside `[0, β²)`.
///
/// Only the first super-cycle is pinned to the schedule: a renewed start may
/// land higher in `[0, β²)`, where the block pattern genuinely differs (the
/// descent from `I_1` can overshoot into `I_{L+1}`), while set membership is
/// unaffected. Membership is therefore checked over the whole window.
///
/// Requires `L >= S` (which also forces `β` irrational).
pub fn orbit_matches_jls(l: u32, s: u32, r: i64, window: u64) -> Result<JlsOrbitReport, IetError> {
    validate_params(l, s)?;
    if l < s {
        return Err(IetError::HypothesisViolated { l, s });
    }
    let cycle = (l as u64) * (l as u64) + (l as u64) + (s as u64);
    if window < cycle + 1 {
        return Err(IetError::InvalidParams(format!(
            "window must be at least L^2+L+S+1 = {}",
            cycle + 1
        )));
    }
    let f = fls(l, s)?;
    let (x0, q0) = fls_start(l, s, r)?;
    let seg = f.orbit(&x0, -(window as i64), window as i64)?;
    for k in -(window as i64)..=(window as i64) {
        if jls_coordinates(seg.at(k), l, s)?.is_none() {
            return Err(IetError::MismatchAt {
                index: k,
                detail: format!("orbit point {} has no exact (m, n) coordinates", seg.at(k)),
            });
        }
    }
    let sched = super_cycle_schedule(l, s);
    let b = beta(l, s)?;
    let b2 = b.checked_mul(&b)?;
    for (offset, &expected) in sched.iter().enumerate() {
        let got = seg.label_at(offset as i64);
        if got != expected {
            return Err(IetError::MismatchAt {
                index: offset as i64,
                detail: format!(
                    "itinerary visits interval {} where the schedule expects {}",
                    got + 1,
                    expected + 1
                ),
            });
        }
    }
    // the renewal configuration is reached at cycle length exactly, not earlier
    for i in 1..cycle {
        let point = seg.at(i as i64);
        if point.compare(&b2)? == Ordering::Less {
            return Err(IetError::MismatchAt {
                index: i as i64,
                detail: format!("early renewal: {point} lies in [0, beta^2) before the cycle ends"),
            });
        }
    }
    let end = seg.at(cycle as i64);
    if end.compare(&b2)? != Ordering::Less {
        return Err(IetError::MismatchAt {
            index: cycle as i64,
            detail: format!("cycle end {end} is not inside [0, beta^2)"),
        });
    }
    let renewed = b
        .scale(&Rational::from_integer(BigInt::from(-(r + 1))))
        .checked_sub(&b2.scale(&Rational::from_integer(BigInt::from(q0 - l as i64 - 1))))?
        .frac();
    if end != &renewed {
        return Err(IetError::MismatchAt {
            index: cycle as i64,
            detail: format!("cycle end {end} differs from the renewed form {renewed}"),
        });
    }
    Ok(JlsOrbitReport {
        l,
        s,
        r,
        x0,
        q0,
        window,
        points_checked: 2 * window + 1,
        super_cycle_len: cycle,
    })
}

/// Pair report from [`pair_enumeration_2_2`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct PairEnumerationReport {
    pub k_min: i64,
    pub k_max: i64,
    pub start: QuadReal,
}

/// For the `(2, 2)` exchange, checks that consecutive orbit pairs starting
/// from `fls_start(2, 2, 0)` enumerate `J` two points at a time: as sets,
///
/// ```text
/// { y_{2k}, y_{2k+1} } = { {-k·β}, {(1-k)·β + β²} }   for k_min <= k <= k_max.
/// ```
pub fn pair_enumeration_2_2(k_min: i64, k_max: i64) -> Result<PairEnumerationReport, IetError> {
    if k_min > k_max {
        return Err(IetError::InvalidParams("empty pair range".into()));
    }
    let f = fls(2, 2)?;
    let (x0, _) = fls_start(2, 2, 0)?;
    let b = beta(2, 2)?;
    let b2 = b.checked_mul(&b)?;
    let seg = f.orbit(&x0, 2 * k_min, 2 * k_max + 1)?;
    for k in k_min..=k_max {
        let first = b.scale(&Rational::from_integer(BigInt::from(-k))).frac();
        let second = b
            .scale(&Rational::from_integer(BigInt::from(1 - k)))
            .checked_add(&b2)?
            .frac();
        let (y0, y1) = (seg.at(2 * k), seg.at(2 * k + 1));
        let matches = (y0 == &first && y1 == &second) || (y0 == &second && y1 == &first);
        if !matches {
            return Err(IetError::MismatchAt {
                index: 2 * k,
                detail: format!("pair ({y0}, {y1}) is not {{{first}, {second}}}"),
            });
        }
    }
    Ok(PairEnumerationReport { k_min, k_max, start: x0 })
}
