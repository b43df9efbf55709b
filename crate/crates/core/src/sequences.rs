//! Point-sequence generators over exact arithmetic.
//!
//! All sequences are deterministic in `(descriptor, index)` and every emitted
//! point lies in the stream's stated domain. Supported kinds: fractional-part
//! (Kronecker) orbits, the refinement-ordered point sequences built from
//! `L·β + S·β² = 1`, the index formula `{⌊i/S⌋·β + (i mod S)·β²}`, exact
//! orbits of interval exchanges, and restriction to a subinterval.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;

use crate::iet::{Iet, IetError};
use crate::quadratic::{beta, QuadError, QuadReal, Rational};

/// Inner points a restriction scans between two emitted members before
/// giving up.
pub const DEFAULT_SCAN_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("restriction scanned {scanned} inner points without finding a member (cap {cap})")]
    BudgetExhausted { scanned: u64, cap: u64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Iet(#[from] IetError),
}

/// Half-open interval `[left, right)` with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Interval1D {
    left: QuadReal,
    right: QuadReal,
}

impl Interval1D {
    pub fn new(left: QuadReal, right: QuadReal) -> Result<Self, SeqError> {
        if left.compare(&right)? != Ordering::Less {
            return Err(SeqError::InvalidParams(format!(
                "interval needs left < right, got [{left}, {right})"
            )));
        }
        Ok(Interval1D { left, right })
    }

    /// `[0, 1)`.
    pub fn unit() -> Self {
        Interval1D { left: QuadReal::zero(), right: QuadReal::one() }
    }

    pub fn left(&self) -> &QuadReal {
        &self.left
    }

    pub fn right(&self) -> &QuadReal {
        &self.right
    }

    pub fn length(&self) -> QuadReal {
        self.right.checked_sub(&self.left).expect("validated endpoints")
    }

    /// Exact membership `left <= x < right`.
    pub fn contains(&self, x: &QuadReal) -> Result<bool, QuadError> {
        Ok(self.left.compare(x)? != Ordering::Greater && x.compare(&self.right)? == Ordering::Less)
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_interval(&self, other: &Interval1D) -> Result<bool, QuadError> {
        Ok(self.left.compare(&other.left)? != Ordering::Greater
            && other.right.compare(&self.right)? != Ordering::Greater)
    }
}

/// `{n·z}`, the `n`-th term of the fractional-part orbit of `z`.
pub fn kronecker_point(z: &QuadReal, n: u64) -> QuadReal {
    z.scale(&Rational::from_integer(BigInt::from(n))).frac()
}

/// `{⌊i/S⌋·β + (i - ⌊i/S⌋·S)·β²}`; the index may be negative (floor
/// division), which is how the `m < 0` half of the point set is reached.
pub fn jls_point(l: u32, s: u32, i: i64) -> Result<QuadReal, SeqError> {
    let b = beta(l, s).map_err(SeqError::Quad)?;
    let b2 = b.checked_mul(&b)?;
    let k = i.div_euclid(s as i64);
    let rem = i.rem_euclid(s as i64);
    let val = b
        .scale(&Rational::from_integer(BigInt::from(k)))
        .checked_add(&b2.scale(&Rational::from_integer(BigInt::from(rem))))?;
    Ok(val.frac())
}

/// Interval length class within a level-`n` partition: `β^n` (long) or
/// `β^(n+1)` (short).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PartitionLength {
    Long,
    Short,
}

/// Counts `(t_n, l_n, s_n)` of a level-`n` partition: totals, long intervals,
/// short intervals. They satisfy `l_{n+1} = L·l_n + s_n`, `s_{n+1} = S·l_n`
/// with `l_1 = L`, `s_1 = S`.
pub fn ls_counts(l: u32, s: u32, level: u32) -> Result<(u64, u64, u64), SeqError> {
    if l < 1 || s < 1 || level < 1 {
        return Err(SeqError::InvalidParams(
            "counts need L >= 1, S >= 1, level >= 1".into(),
        ));
    }
    let mut long = l as u64;
    let mut short = s as u64;
    for _ in 1..level {
        let next_long = (l as u64)
            .checked_mul(long)
            .and_then(|v| v.checked_add(short))
            .ok_or_else(|| SeqError::InvalidParams("partition counts overflow u64".into()))?;
        let next_short = (s as u64)
            .checked_mul(long)
            .ok_or_else(|| SeqError::InvalidParams("partition counts overflow u64".into()))?;
        long = next_long;
        short = next_short;
    }
    let total = long
        .checked_add(short)
        .ok_or_else(|| SeqError::InvalidParams("partition counts overflow u64".into()))?;
    Ok((total, long, short))
}

/// A level of the refinement sequence: ordered left endpoints with their
/// length class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LsPartition {
    pub level: u32,
    /// `(left endpoint, length class)`, ascending.
    pub intervals: Vec<(QuadReal, PartitionLength)>,
    pub total: u64,
    pub long: u64,
    pub short: u64,
}

/// Level-`level` partition of `[0, 1)`: each refinement splits every maximal
/// (long) interval into `L` longs and `S` shorts, homothetically.
pub fn ls_partition(l: u32, s: u32, level: u32) -> Result<LsPartition, SeqError> {
    let (total, long, short) = ls_counts(l, s, level)?;
    let b = beta(l, s).map_err(SeqError::Quad)?;
    let b2 = b.checked_mul(&b)?;
    let mut intervals: Vec<(QuadReal, PartitionLength)> = Vec::new();
    for i in 0..l {
        intervals.push((b.scale(&Rational::from_integer(BigInt::from(i))), PartitionLength::Long));
    }
    let l_beta = b.scale(&Rational::from_integer(BigInt::from(l)));
    for j in 0..s {
        let left = l_beta.checked_add(&b2.scale(&Rational::from_integer(BigInt::from(j))))?;
        intervals.push((left, PartitionLength::Short));
    }
    // p_long = beta^{n+1}: sublength of a long interval at the next level
    let mut p_long = b2.clone();
    for _ in 1..level {
        let p_short = p_long.checked_mul(&b)?;
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (left, tag) in &intervals {
            match tag {
                PartitionLength::Long => {
                    for i in 0..l {
                        let sub = left.checked_add(&p_long.scale(&Rational::from_integer(BigInt::from(i))))?;
                        next.push((sub, PartitionLength::Long));
                    }
                    let base = left.checked_add(&p_long.scale(&Rational::from_integer(BigInt::from(l))))?;
                    for j in 0..s {
                        let sub = base.checked_add(&p_short.scale(&Rational::from_integer(BigInt::from(j))))?;
                        next.push((sub, PartitionLength::Short));
                    }
                }
                PartitionLength::Short => next.push((left.clone(), PartitionLength::Long)),
            }
        }
        intervals = next;
        p_long = p_short;
    }
    debug_assert_eq!(intervals.len() as u64, total);
    Ok(LsPartition { level, intervals, total, long, short })
}

/// Shared generator state for the refinement-ordered point sequence.
struct LsGenerator {
    l: u32,
    s: u32,
    b: QuadReal,
    /// All points generated so far (a prefix of the full sequence).
    points: Vec<QuadReal>,
    /// Long-interval count of the level currently held in `points`.
    long: u64,
    short: u64,
    /// `β^{n+1}` for the current level `n`.
    p_high: QuadReal,
}

impl LsGenerator {
    fn new(l: u32, s: u32) -> Result<Self, SeqError> {
        let b = beta(l, s).map_err(SeqError::Quad)?;
        let b2 = b.checked_mul(&b)?;
        let mut points = Vec::with_capacity((l + s) as usize);
        for i in 0..l {
            points.push(b.scale(&Rational::from_integer(BigInt::from(i))));
        }
        let l_beta = b.scale(&Rational::from_integer(BigInt::from(l)));
        for j in 0..s {
            points.push(l_beta.checked_add(&b2.scale(&Rational::from_integer(BigInt::from(j))))?);
        }
        Ok(LsGenerator { l, s, b, points, long: l as u64, short: s as u64, p_high: b2 })
    }

    /// Appends the next level: images of the first `l_n` points under
    /// `x + i·β^{n+1}` for `i = 1..=L`, then `x + L·β^{n+1} + j·β^{n+2}` for
    /// `j = 1..=S-1`.
    fn extend_level(&mut self) -> Result<(), SeqError> {
        let p_next = self.p_high.checked_mul(&self.b)?;
        let long = self.long as usize;
        for i in 1..=self.l {
            let offset = self.p_high.scale(&Rational::from_integer(BigInt::from(i)));
            for k in 0..long {
                let img = self.points[k].checked_add(&offset)?;
                self.points.push(img);
            }
        }
        let l_offset = self.p_high.scale(&Rational::from_integer(BigInt::from(self.l)));
        for j in 1..self.s {
            let offset = l_offset.checked_add(&p_next.scale(&Rational::from_integer(BigInt::from(j))))?;
            for k in 0..long {
                let img = self.points[k].checked_add(&offset)?;
                self.points.push(img);
            }
        }
        let next_long = (self.l as u64) * self.long + self.short;
        self.short = (self.s as u64) * self.long;
        self.long = next_long;
        self.p_high = p_next;
        Ok(())
    }

    fn ensure(&mut self, count: usize) -> Result<(), SeqError> {
        while self.points.len() < count {
            self.extend_level()?;
        }
        Ok(())
    }
}

/// First `count` terms of the refinement-ordered point sequence.
pub fn ls_points(l: u32, s: u32, count: usize) -> Result<Vec<QuadReal>, SeqError> {
    if count < 1 {
        return Err(SeqError::InvalidParams("count must be >= 1".into()));
    }
    let mut gen = LsGenerator::new(l, s)?;
    gen.ensure(count)?;
    gen.points.truncate(count);
    Ok(gen.points)
}

/// A lazily enumerable deterministic sequence of exact points in a stated
/// interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointStream {
    kind: StreamKind,
    domain: Interval1D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamKind {
    /// `({n·z})_{n >= 0}` on `[0, 1)`.
    Kronecker { z: QuadReal },
    /// Refinement-ordered points on `[0, 1)`.
    LsPoints { l: u32, s: u32 },
    /// `(x_i)_{i >= 0}` from the index formula on `[0, 1)`.
    Jls { l: u32, s: u32 },
    /// `(f^n(x0))_{n >= 0}` on `[0, total)`.
    IetOrbit { iet: Box<Iet>, x0: QuadReal },
    /// The subsequence of `inner` lying in `sub`, in order of first passage.
    Restriction { inner: Box<PointStream>, sub: Interval1D, scan_cap: u64 },
}

impl PointStream {
    pub fn kronecker(z: QuadReal) -> Self {
        PointStream { kind: StreamKind::Kronecker { z }, domain: Interval1D::unit() }
    }

    pub fn ls_points(l: u32, s: u32) -> Result<Self, SeqError> {
        beta(l, s).map_err(SeqError::Quad)?;
        Ok(PointStream { kind: StreamKind::LsPoints { l, s }, domain: Interval1D::unit() })
    }

    pub fn jls(l: u32, s: u32) -> Result<Self, SeqError> {
        beta(l, s).map_err(SeqError::Quad)?;
        Ok(PointStream { kind: StreamKind::Jls { l, s }, domain: Interval1D::unit() })
    }

    pub fn iet_orbit(iet: Iet, x0: QuadReal) -> Result<Self, SeqError> {
        let domain = Interval1D::new(QuadReal::zero(), iet.total().clone())?;
        if !domain.contains(&x0)? {
            return Err(SeqError::InvalidParams(format!(
                "orbit start {x0} outside [0, {})",
                iet.total()
            )));
        }
        Ok(PointStream { kind: StreamKind::IetOrbit { iet: Box::new(iet), x0 }, domain })
    }

    /// Restriction of `inner` to `sub ⊆ inner.domain`, with the default scan
    /// budget.
    pub fn restriction(inner: PointStream, sub: Interval1D) -> Result<Self, SeqError> {
        Self::restriction_with_cap(inner, sub, DEFAULT_SCAN_CAP)
    }

    pub fn restriction_with_cap(inner: PointStream, sub: Interval1D, scan_cap: u64) -> Result<Self, SeqError> {
        if !inner.domain.contains_interval(&sub)? {
            return Err(SeqError::InvalidParams(format!(
                "restriction target [{}, {}) is not inside the stream domain",
                sub.left(),
                sub.right()
            )));
        }
        Ok(PointStream {
            kind: StreamKind::Restriction { inner: Box::new(inner), sub: sub.clone(), scan_cap },
            domain: sub,
        })
    }

    pub fn kind(&self) -> &StreamKind {
        &self.kind
    }

    pub fn domain(&self) -> &Interval1D {
        &self.domain
    }

    /// Short human-readable descriptor.
    pub fn describe(&self) -> String {
        match &self.kind {
            StreamKind::Kronecker { z } => format!("kronecker(z = {z})"),
            StreamKind::LsPoints { l, s } => format!("ls({l}, {s})"),
            StreamKind::Jls { l, s } => format!("jls({l}, {s})"),
            StreamKind::IetOrbit { iet, x0 } => {
                format!("iet_orbit(n = {}, x0 = {x0})", iet.n())
            }
            StreamKind::Restriction { inner, sub, .. } => {
                format!("restrict({} to [{}, {}))", inner.describe(), sub.left(), sub.right())
            }
        }
    }

    pub fn iter(&self) -> PointIter<'_> {
        PointIter { state: IterState::new(self) }
    }

    /// First `n` points.
    pub fn take(&self, n: usize) -> Result<Vec<QuadReal>, SeqError> {
        self.iter().take(n).collect()
    }

    /// The `k`-th point (0-based).
    pub fn point(&self, k: usize) -> Result<QuadReal, SeqError> {
        self.iter()
            .nth(k)
            .unwrap_or_else(|| Err(SeqError::InvalidParams(format!("no point at index {k}"))))
    }
}

impl serde::Serialize for PointStream {
    /// `{kind, params, domain}` with exact strings for all numbers.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PointStream", 3)?;
        match &self.kind {
            StreamKind::Kronecker { z } => {
                st.serialize_field("kind", "kronecker")?;
                st.serialize_field("params", &serde_json_like::Params::Z { z })?;
            }
            StreamKind::LsPoints { l, s } => {
                st.serialize_field("kind", "ls")?;
                st.serialize_field("params", &serde_json_like::Params::Ls { l: *l, s: *s })?;
            }
            StreamKind::Jls { l, s } => {
                st.serialize_field("kind", "jls")?;
                st.serialize_field("params", &serde_json_like::Params::Ls { l: *l, s: *s })?;
            }
            StreamKind::IetOrbit { iet, x0 } => {
                st.serialize_field("kind", "iet_orbit")?;
                st.serialize_field("params", &serde_json_like::Params::Orbit { iet, x0 })?;
            }
            StreamKind::Restriction { inner, sub, .. } => {
                st.serialize_field("kind", "restriction")?;
                st.serialize_field("params", &serde_json_like::Params::Restrict { inner, sub })?;
            }
        }
        st.serialize_field("domain", &self.domain)?;
        st.end()
    }
}

mod serde_json_like {
    use super::{Interval1D, PointStream};
    use crate::iet::Iet;
    use crate::quadratic::QuadReal;

    #[derive(serde::Serialize)]
    #[serde(untagged)]
    pub enum Params<'a> {
        Z { z: &'a QuadReal },
        Ls { l: u32, s: u32 },
        Orbit { iet: &'a Iet, x0: &'a QuadReal },
        Restrict { inner: &'a PointStream, sub: &'a Interval1D },
    }
}

pub struct PointIter<'a> {
    state: IterState<'a>,
}

enum IterState<'a> {
    Kronecker { z: &'a QuadReal, next: QuadReal },
    Ls { gen: Result<LsGenerator, Option<SeqError>>, next_idx: usize },
    Jls { l: u32, s: u32, i: i64 },
    IetOrbit { iet: &'a Iet, next: QuadReal },
    Restriction { inner: Box<PointIter<'a>>, sub: &'a Interval1D, cap: u64, scanned: u64 },
}

impl<'a> IterState<'a> {
    fn new(stream: &'a PointStream) -> Self {
        match &stream.kind {
            StreamKind::Kronecker { z } => IterState::Kronecker { z, next: QuadReal::zero() },
            StreamKind::LsPoints { l, s } => {
                IterState::Ls { gen: LsGenerator::new(*l, *s).map_err(Some), next_idx: 0 }
            }
            StreamKind::Jls { l, s } => IterState::Jls { l: *l, s: *s, i: 0 },
            StreamKind::IetOrbit { iet, x0 } => IterState::IetOrbit { iet, next: x0.clone() },
            StreamKind::Restriction { inner, sub, scan_cap } => IterState::Restriction {
                inner: Box::new(inner.iter()),
                sub,
                cap: *scan_cap,
                scanned: 0,
            },
        }
    }
}

impl Iterator for PointIter<'_> {
    type Item = Result<QuadReal, SeqError>;

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.state {
            IterState::Kronecker { z, next } => {
                let out = next.clone();
                match next.checked_add(z) {
                    Ok(stepped) => *next = stepped.frac(),
                    Err(e) => return Some(Err(e.into())),
                }
                Some(Ok(out))
            }
            IterState::Ls { gen, next_idx } => {
                let g = match gen {
                    Ok(g) => g,
                    Err(e) => return e.take().map(Err),
                };
                if let Err(e) = g.ensure(*next_idx + 1) {
                    return Some(Err(e));
                }
                let out = g.points[*next_idx].clone();
                *next_idx += 1;
                Some(Ok(out))
            }
            IterState::Jls { l, s, i } => {
                let out = jls_point(*l, *s, *i);
                *i += 1;
                Some(out)
            }
            IterState::IetOrbit { iet, next } => {
                let out = next.clone();
                match iet.evaluate(next) {
                    Ok(stepped) => *next = stepped,
                    Err(e) => return Some(Err(e.into())),
                }
                Some(Ok(out))
            }
            IterState::Restriction { inner, sub, cap, scanned } => loop {
                if *scanned >= *cap {
                    return Some(Err(SeqError::BudgetExhausted { scanned: *scanned, cap: *cap }));
                }
                let candidate = match inner.next()? {
                    Ok(p) => p,
                    Err(e) => return Some(Err(e)),
                };
                *scanned += 1;
                match sub.contains(&candidate) {
                    Ok(true) => {
                        *scanned = 0;
                        return Some(Ok(candidate));
                    }
                    Ok(false) => continue,
                    Err(e) => return Some(Err(e.into())),
                }
            },
        }
    }
}

/// First `count` members of `inner` lying in `sub`, in passage order.
pub fn restrict(inner: &PointStream, sub: Interval1D, count: usize) -> Result<Vec<QuadReal>, SeqError> {
    PointStream::restriction(inner.clone(), sub)?.take(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fls::{fls, fls_start};
    use crate::iet::{n3_standard, rotation};

    fn golden() -> QuadReal {
        beta(1, 1).unwrap()
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn kronecker_examples() {
        let g = golden();
        assert_eq!(kronecker_point(&g, 0), QuadReal::zero());
        let expected = g.scale(&int(2)) - QuadReal::one();
        assert_eq!(kronecker_point(&g, 2), expected);
        assert_eq!(kronecker_point(&QuadReal::from_ratio(1, 3), 5), QuadReal::from_ratio(2, 3));
    }

    #[test]
    fn counts_follow_fibonacci_for_1_1() {
        let t: Vec<u64> = (1..=4).map(|n| ls_counts(1, 1, n).unwrap().0).collect();
        assert_eq!(t, vec![2, 3, 5, 8]);
    }

    #[test]
    fn count_identities_hold_on_the_grid() {
        for l in 1..=5u32 {
            for s in 1..=5u32 {
                let mut prev = ls_counts(l, s, 1).unwrap();
                assert_eq!((prev.1, prev.2), (l as u64, s as u64));
                for level in 2..=20u32 {
                    let cur = ls_counts(l, s, level).unwrap();
                    assert_eq!(cur.0, cur.1 + cur.2);
                    assert_eq!(cur.1, l as u64 * prev.1 + prev.2, "L={l} S={s} level={level}");
                    assert_eq!(cur.2, s as u64 * prev.1);
                    prev = cur;
                }
            }
        }
    }

    /// `l_n·β^n + s_n·β^(n+1) = 1` exactly: the partition tiles `[0, 1)`.
    #[test]
    fn counts_weighted_by_lengths_tile_the_interval() {
        for (l, s) in [(1u32, 1u32), (2, 2), (3, 2), (5, 5), (1, 2)] {
            let b = beta(l, s).unwrap();
            let mut power = b.clone(); // beta^n for n = 1
            for level in 1..=20u32 {
                let (_, long, short) = ls_counts(l, s, level).unwrap();
                let next_power = &power * &b;
                let sum = power.scale(&int(long as i64)) + next_power.scale(&int(short as i64));
                assert_eq!(sum, QuadReal::one(), "L={l} S={s} level={level}");
                power = next_power;
            }
        }
    }

    #[test]
    fn partition_level_one_for_2_2() {
        let b = beta(2, 2).unwrap();
        let b2 = &b * &b;
        let p = ls_partition(2, 2, 1).unwrap();
        assert_eq!(p.total, 4);
        let expected = vec![
            (QuadReal::zero(), PartitionLength::Long),
            (b.clone(), PartitionLength::Long),
            (b.scale(&int(2)), PartitionLength::Short),
            (&b.scale(&int(2)) + &b2, PartitionLength::Short),
        ];
        assert_eq!(p.intervals, expected);
    }

    #[test]
    fn partition_lengths_tile_exactly() {
        for (l, s, level) in [(1u32, 1u32, 6u32), (2, 2, 4), (3, 2, 3), (2, 1, 5)] {
            let b = beta(l, s).unwrap();
            let p = ls_partition(l, s, level).unwrap();
            let mut long_len = QuadReal::one();
            for _ in 0..level {
                long_len = &long_len * &b;
            }
            let short_len = &long_len * &b;
            let mut acc = QuadReal::zero();
            for (left, tag) in &p.intervals {
                assert_eq!(left, &acc, "L={l} S={s} level={level}");
                acc = match tag {
                    PartitionLength::Long => &acc + &long_len,
                    PartitionLength::Short => &acc + &short_len,
                };
            }
            assert_eq!(acc, QuadReal::one());
        }
    }

    #[test]
    fn ls_points_kakutani_fibonacci_prefix() {
        let b = golden();
        let b2 = &b * &b;
        let b3 = &b2 * &b;
        let b4 = &b3 * &b;
        let got = ls_points(1, 1, 8).unwrap();
        let expected = vec![
            QuadReal::zero(),
            b.clone(),
            b2.clone(),
            b3.clone(),
            &b + &b3,
            b4.clone(),
            &b + &b4,
            &b2 + &b4,
        ];
        assert_eq!(got, expected);
        assert_eq!(ls_points(1, 1, 3).unwrap(), expected[..3].to_vec());
    }

    /// The first `t_n` points are exactly the level-`n` left endpoints.
    #[test]
    fn ls_points_prefix_matches_partition_endpoints() {
        for (l, s, max_level) in [(1u32, 1u32, 8u32), (2, 2, 5), (2, 1, 6), (1, 2, 5), (3, 2, 4)] {
            for level in 1..=max_level {
                let (t, _, _) = ls_counts(l, s, level).unwrap();
                let mut pts = ls_points(l, s, t as usize).unwrap();
                let mut endpoints: Vec<QuadReal> =
                    ls_partition(l, s, level).unwrap().intervals.into_iter().map(|(p, _)| p).collect();
                let key = |a: &QuadReal, b: &QuadReal| a.partial_cmp(b).unwrap();
                pts.sort_by(key);
                endpoints.sort_by(key);
                assert_eq!(pts, endpoints, "L={l} S={s} level={level}");
            }
        }
    }

    #[test]
    fn jls_point_examples() {
        let b = beta(2, 2).unwrap();
        let b2 = &b * &b;
        assert_eq!(jls_point(2, 2, 0).unwrap(), QuadReal::zero());
        assert_eq!(jls_point(2, 2, 1).unwrap(), b2);
        assert_eq!(jls_point(2, 2, 2).unwrap(), b);
        assert_eq!(jls_point(2, 2, 3).unwrap(), &b + &b2);
        // S = 1 degenerates to the fractional-part orbit
        let g = golden();
        for i in 0..20u64 {
            assert_eq!(jls_point(1, 1, i as i64).unwrap(), kronecker_point(&g, i));
        }
    }

    #[test]
    fn jls_points_are_pairwise_distinct() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..50 {
            assert!(seen.insert(jls_point(2, 2, i).unwrap()), "duplicate at {i}");
        }
    }

    /// Index shifts reach the whole set: `{ {m·β + n·β²} : |m| <= M, 0 <= n < S }`
    /// equals the points at indices `-S·M .. S·(M+1)`.
    #[test]
    fn jls_window_covers_the_two_parameter_set() {
        let (l, s, m_max) = (2u32, 2u32, 10i64);
        let b = beta(l, s).unwrap();
        let b2 = &b * &b;
        let mut brute = std::collections::HashSet::new();
        for m in -m_max..=m_max {
            for n in 0..s as i64 {
                brute.insert((b.scale(&int(m)) + b2.scale(&int(n))).frac());
            }
        }
        let mut enumerated = std::collections::HashSet::new();
        for i in -(s as i64) * m_max..(s as i64) * (m_max + 1) {
            enumerated.insert(jls_point(l, s, i).unwrap());
        }
        assert_eq!(enumerated, brute);
        assert_eq!(enumerated.len(), (s as usize) * (2 * m_max as usize + 1));
    }

    #[test]
    fn stream_take_examples() {
        let g = golden();
        assert_eq!(PointStream::kronecker(g.clone()).take(1).unwrap(), vec![QuadReal::zero()]);
        let b = beta(2, 2).unwrap();
        let b2 = &b * &b;
        assert_eq!(
            PointStream::jls(2, 2).unwrap().take(4).unwrap(),
            vec![QuadReal::zero(), b2.clone(), b.clone(), &b + &b2]
        );
        let f = fls(2, 2).unwrap();
        let (x0, _) = fls_start(2, 2, 0).unwrap();
        let seg = f.orbit(&x0, 0, 2).unwrap();
        let stream = PointStream::iet_orbit(f, x0).unwrap();
        assert_eq!(stream.take(3).unwrap(), seg.points);
    }

    #[test]
    fn restriction_to_full_domain_is_identity() {
        let stream = PointStream::kronecker(golden());
        let full = restrict(&stream, Interval1D::unit(), 40).unwrap();
        assert_eq!(full, stream.take(40).unwrap());
    }

    /// Brute-force oracle: enumerate `{n·γ}` exactly and filter. The first
    /// three members below 1/2 sit at indices 0, 2, 4.
    #[test]
    fn restriction_of_golden_kronecker_to_half() {
        let g = golden();
        let sub = Interval1D::new(QuadReal::zero(), QuadReal::from_ratio(1, 2)).unwrap();
        let mut oracle = Vec::new();
        let mut oracle_indices = Vec::new();
        for n in 0..30u64 {
            let p = kronecker_point(&g, n);
            if sub.contains(&p).unwrap() {
                oracle.push(p);
                oracle_indices.push(n);
            }
        }
        let got = restrict(&PointStream::kronecker(g.clone()), sub, 3).unwrap();
        assert_eq!(got, oracle[..3].to_vec());
        assert_eq!(&oracle_indices[..3], &[0, 2, 4]);
        // the values are {0}, {2γ}, {4γ}
        assert_eq!(got[1], g.scale(&int(2)).frac());
        assert_eq!(got[2], g.scale(&int(4)).frac());
    }

    /// Restricting the ambient rotation to `[0, λ*)` reproduces the
    /// three-interval exchange orbit pointwise.
    #[test]
    fn rotation_restriction_reproduces_three_interval_orbit() {
        let (la, lb, lc) = (QuadReal::from_ratio(1, 2), QuadReal::from_ratio(1, 3), QuadReal::from_ratio(1, 6));
        let total = &QuadReal::one() + &lb;
        let angle = &lb + &lc;
        let ambient = rotation(&total - &angle, angle).unwrap();
        let y0 = QuadReal::from_ratio(1, 10);
        let inner = PointStream::iet_orbit(ambient, y0.clone()).unwrap();
        let sub = Interval1D::new(QuadReal::zero(), QuadReal::one()).unwrap();
        let restricted = restrict(&inner, sub, 25).unwrap();
        let f = n3_standard(la, lb, lc).unwrap();
        let direct = PointStream::iet_orbit(f, y0).unwrap().take(25).unwrap();
        assert_eq!(restricted, direct);
    }

    #[test]
    fn double_restriction_equals_intersection() {
        let g = golden();
        let outer = Interval1D::new(QuadReal::zero(), QuadReal::from_ratio(3, 4)).unwrap();
        let inner_iv = Interval1D::new(QuadReal::from_ratio(1, 4), QuadReal::from_ratio(3, 4)).unwrap();
        let once = PointStream::restriction(PointStream::kronecker(g.clone()), outer).unwrap();
        let twice = PointStream::restriction(once, inner_iv.clone()).unwrap();
        let direct = PointStream::restriction(PointStream::kronecker(g), inner_iv).unwrap();
        assert_eq!(twice.take(30).unwrap(), direct.take(30).unwrap());
    }

    #[test]
    fn restriction_budget_is_reported() {
        // the rational rotation {n/3} never enters [1/10, 3/10)
        let inner = PointStream::kronecker(QuadReal::from_ratio(1, 3));
        let sub = Interval1D::new(QuadReal::from_ratio(1, 10), QuadReal::from_ratio(3, 10)).unwrap();
        let stream = PointStream::restriction_with_cap(inner, sub, 1000).unwrap();
        match stream.take(1) {
            Err(SeqError::BudgetExhausted { scanned, cap }) => {
                assert_eq!(scanned, 1000);
                assert_eq!(cap, 1000);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn restriction_outside_domain_is_rejected() {
        let inner = PointStream::kronecker(golden());
        let sub = Interval1D::new(QuadReal::from_ratio(1, 2), QuadReal::from_ratio(3, 2)).unwrap();
        assert!(matches!(
            PointStream::restriction(inner, sub),
            Err(SeqError::InvalidParams(_))
        ));
    }

    /// Every emitted point lies in the stream's domain, checked exactly.
    #[test]
    fn emitted_points_stay_in_domain() {
        let n = 10_000;
        let g = golden();
        let streams = vec![
            PointStream::kronecker(g.clone()),
            PointStream::ls_points(2, 2).unwrap(),
            PointStream::jls(3, 2).unwrap(),
            PointStream::iet_orbit(fls(2, 2).unwrap(), QuadReal::zero()).unwrap(),
        ];
        for stream in &streams {
            let pts = stream.take(n).unwrap();
            assert_eq!(pts.len(), n);
            for p in &pts {
                assert!(stream.domain().contains(p).unwrap(), "{} escaped {}", p, stream.describe());
            }
        }
        let sub = Interval1D::new(QuadReal::from_ratio(1, 4), QuadReal::from_ratio(1, 2)).unwrap();
        let restricted = PointStream::restriction(PointStream::kronecker(g), sub).unwrap();
        for p in restricted.take(2000).unwrap() {
            assert!(restricted.domain().contains(&p).unwrap());
        }
    }

    #[test]
    fn stream_descriptor_serializes() {
        let stream = PointStream::jls(2, 2).unwrap();
        let v = serde_json::to_value(&stream).unwrap();
        assert_eq!(v["kind"], "jls");
        assert_eq!(v["params"]["l"], 2);
        assert_eq!(v["domain"]["left"], "0/1");
        let r = PointStream::restriction(
            PointStream::kronecker(golden()),
            Interval1D::new(QuadReal::zero(), QuadReal::from_ratio(1, 2)).unwrap(),
        )
        .unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "restriction");
        assert_eq!(v["params"]["inner"]["kind"], "kronecker");
    }

    #[test]
    fn point_indexing_matches_take() {
        let stream = PointStream::ls_points(1, 1).unwrap();
        let pts = stream.take(10).unwrap();
        assert_eq!(stream.point(7).unwrap(), pts[7]);
    }
}
