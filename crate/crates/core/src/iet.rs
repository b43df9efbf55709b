//! Interval exchange transformations with exact length data.
//!
//! An [`Iet`] is determined by combinatorial data — two bijections mapping
//! interval labels to their positions before and after the exchange — and
//! positive [`QuadReal`] lengths. The map sends `x` in the interval labelled
//! `α` to `x + w_α`, where the translation vector is
//! `w_α = Σ_{π₁(β)<π₁(α)} λ_β − Σ_{π₀(β)<π₀(α)} λ_β`.
//!
//! Intervals are half-open `[left, right)` throughout; a breakpoint belongs
//! to the interval on its right.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;

use crate::cf::{cf_expand, moving_average, ContinuedFraction, MovingAverageReport};
use crate::quadratic::{QuadError, QuadReal};

const CERTIFICATE_CF_TERMS: usize = 256;
const CERTIFICATE_MA_TERMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IetError {
    #[error("length {0} is not positive")]
    NonPositiveLength(usize),
    #[error("point lies outside [0, total)")]
    OutOfDomain,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("derived quantity `{which}` is not positive")]
    NonPositiveResult { which: &'static str },
    #[error("no return to the subinterval within {max_steps} steps")]
    NoReturnWithinBudget { max_steps: u64 },
    #[error("no admissible start point within the search window (last q = {last_q})")]
    NotFoundWithinWindow { last_q: i64 },
    #[error("theorem hypothesis violated: requires L >= S >= 1, got L={l}, S={s}")]
    HypothesisViolated { l: u32, s: u32 },
    #[error("orbit mismatch at index {index}: {detail}")]
    MismatchAt { index: i64, detail: String },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// A bijection of `{0, .., n-1}` interpreted as label → position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Reversal: label `i` goes to position `n-1-i`.
    pub fn reversal(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    /// Builds from 0-based positions, validating bijectivity.
    pub fn from_positions(positions: Vec<usize>) -> Result<Self, IetError> {
        let n = positions.len();
        let mut seen = vec![false; n];
        for &p in &positions {
            if p >= n || seen[p] {
                return Err(IetError::InvalidParams(format!(
                    "{positions:?} is not a bijection on 0..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(Permutation(positions))
    }

    /// Builds from the customary 1-based listing `π(1), π(2), ...`.
    pub fn from_one_based(positions: &[usize]) -> Result<Self, IetError> {
        if positions.iter().any(|&p| p == 0) {
            return Err(IetError::InvalidParams("positions are 1-based".into()));
        }
        Self::from_positions(positions.iter().map(|&p| p - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position of `label`.
    pub fn position(&self, label: usize) -> usize {
        self.0[label]
    }

    /// Labels listed by position.
    pub fn labels_in_order(&self) -> Vec<usize> {
        let mut inv = vec![0; self.0.len()];
        for (label, &pos) in self.0.iter().enumerate() {
            inv[pos] = label;
        }
        inv
    }

    fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&p| p + 1).collect()
    }
}

/// The pair `(π₀, π₁)` of label → position bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialData {
    pi0: Permutation,
    pi1: Permutation,
}

impl CombinatorialData {
    pub fn new(pi0: Permutation, pi1: Permutation) -> Result<Self, IetError> {
        if pi0.len() != pi1.len() || pi0.is_empty() {
            return Err(IetError::InvalidParams(
                "pi0 and pi1 must be nonempty bijections of the same size".into(),
            ));
        }
        Ok(CombinatorialData { pi0, pi1 })
    }

    /// Builds from 1-based *orderings*: `order[k]` is the label occupying
    /// position `k+1` in the domain (resp. image). This is the listing
    /// convention of diagrams that write the intervals left to right; it is
    /// the inverse of the position maps.
    pub fn from_image_orders(order0: &[usize], order1: &[usize]) -> Result<Self, IetError> {
        let invert = |order: &[usize]| -> Result<Permutation, IetError> {
            let n = order.len();
            let mut positions = vec![usize::MAX; n];
            for (pos, &label) in order.iter().enumerate() {
                if label == 0 || label > n || positions[label - 1] != usize::MAX {
                    return Err(IetError::InvalidParams(format!(
                        "{order:?} is not an ordering of 1..={n}"
                    )));
                }
                positions[label - 1] = pos;
            }
            Permutation::from_positions(positions)
        };
        CombinatorialData::new(invert(order0)?, invert(order1)?)
    }

    pub fn n(&self) -> usize {
        self.pi0.len()
    }

    pub fn pi0(&self) -> &Permutation {
        &self.pi0
    }

    pub fn pi1(&self) -> &Permutation {
        &self.pi1
    }

    /// Admissible combinatorial data: no proper prefix of positions is
    /// occupied by the same label set before and after the exchange.
    pub fn is_admissible(&self) -> bool {
        let in0 = self.pi0.labels_in_order();
        let in1 = self.pi1.labels_in_order();
        let n = self.n();
        for k in 1..n {
            let mut s0: Vec<usize> = in0[..k].to_vec();
            let mut s1: Vec<usize> = in1[..k].to_vec();
            s0.sort_unstable();
            s1.sort_unstable();
            if s0 == s1 {
                return false;
            }
        }
        true
    }
}

/// An interval exchange transformation on `[0, total)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iet {
    comb: CombinatorialData,
    lengths: Vec<QuadReal>,
    total: QuadReal,
    w: Vec<QuadReal>,
    /// Left endpoints of the intervals in domain order (`breakpoints0[k]` is
    /// the left end of the interval at position `k`).
    breakpoints0: Vec<QuadReal>,
    /// Left endpoints in image order.
    breakpoints1: Vec<QuadReal>,
}

fn left_endpoints(perm: &Permutation, lengths: &[QuadReal]) -> Result<Vec<QuadReal>, IetError> {
    let mut out = Vec::with_capacity(lengths.len());
    let mut acc = QuadReal::zero();
    for label in perm.labels_in_order() {
        out.push(acc.clone());
        acc = acc.checked_add(&lengths[label])?;
    }
    Ok(out)
}

impl Iet {
    pub fn new(comb: CombinatorialData, lengths: Vec<QuadReal>) -> Result<Self, IetError> {
        if lengths.len() != comb.n() {
            return Err(IetError::InvalidParams(format!(
                "expected {} lengths, got {}",
                comb.n(),
                lengths.len()
            )));
        }
        for (i, len) in lengths.iter().enumerate() {
            if len.sign() != Ordering::Greater {
                return Err(IetError::NonPositiveLength(i));
            }
        }
        let mut total = QuadReal::zero();
        for len in &lengths {
            total = total.checked_add(len)?;
        }
        let breakpoints0 = left_endpoints(&comb.pi0, &lengths)?;
        let breakpoints1 = left_endpoints(&comb.pi1, &lengths)?;
        let mut w = Vec::with_capacity(lengths.len());
        for label in 0..lengths.len() {
            let left0 = &breakpoints0[comb.pi0.position(label)];
            let left1 = &breakpoints1[comb.pi1.position(label)];
            w.push(left1.checked_sub(left0)?);
        }
        Ok(Iet { comb, lengths, total, w, breakpoints0, breakpoints1 })
    }

    pub fn comb(&self) -> &CombinatorialData {
        &self.comb
    }

    pub fn n(&self) -> usize {
        self.comb.n()
    }

    pub fn lengths(&self) -> &[QuadReal] {
        &self.lengths
    }

    pub fn total(&self) -> &QuadReal {
        &self.total
    }

    /// Translation vector, indexed by label.
    pub fn translation_vector(&self) -> &[QuadReal] {
        &self.w
    }

    fn contains(&self, x: &QuadReal) -> Result<bool, QuadError> {
        Ok(x.sign() != Ordering::Less && x.compare(&self.total)? == Ordering::Less)
    }

    fn locate_in(&self, breakpoints: &[QuadReal], x: &QuadReal) -> Result<usize, IetError> {
        if !self.contains(x)? {
            return Err(IetError::OutOfDomain);
        }
        // last position whose left endpoint is <= x; n is small
        let mut pos = 0;
        for (k, left) in breakpoints.iter().enumerate().skip(1) {
            if left.compare(x)? != Ordering::Greater {
                pos = k;
            } else {
                break;
            }
        }
        Ok(pos)
    }

    /// Label of the interval containing `x`.
    pub fn locate(&self, x: &QuadReal) -> Result<usize, IetError> {
        let pos = self.locate_in(&self.breakpoints0, x)?;
        Ok(self.comb.pi0.labels_in_order()[pos])
    }

    /// `f(x) = x + w_α` for the unique interval `I_α` containing `x`.
    pub fn evaluate(&self, x: &QuadReal) -> Result<QuadReal, IetError> {
        let label = self.locate(x)?;
        Ok(x.checked_add(&self.w[label])?)
    }

    /// The unique `x` with `evaluate(x) = y`.
    pub fn evaluate_inverse(&self, y: &QuadReal) -> Result<QuadReal, IetError> {
        let pos = self.locate_in(&self.breakpoints1, y)?;
        let label = self.comb.pi1.labels_in_order()[pos];
        Ok(y.checked_sub(&self.w[label])?)
    }

    /// Exact orbit segment `f^k(x0)` for `k = from..=to`, with the interval
    /// itinerary (label containing each point).
    pub fn orbit(&self, x0: &QuadReal, from: i64, to: i64) -> Result<OrbitSegment, IetError> {
        if from > to {
            return Err(IetError::InvalidParams(format!("empty index range {from}..={to}")));
        }
        if !self.contains(x0)? {
            return Err(IetError::OutOfDomain);
        }
        let mut current = x0.clone();
        match from.cmp(&0) {
            Ordering::Greater => {
                for _ in 0..from {
                    current = self.evaluate(&current)?;
                }
            }
            Ordering::Less => {
                for _ in 0..(-from) {
                    current = self.evaluate_inverse(&current)?;
                }
            }
            Ordering::Equal => {}
        }
        let count = (to - from) as usize + 1;
        let mut points = Vec::with_capacity(count);
        let mut itinerary = Vec::with_capacity(count);
        for step in 0..count {
            itinerary.push(self.locate(&current)?);
            points.push(current.clone());
            if step + 1 < count {
                current = self.evaluate(&current)?;
            }
        }
        Ok(OrbitSegment { base_point: x0.clone(), first_index: from, points, itinerary })
    }
}

impl serde::Serialize for Iet {
    /// `{n, pi0, pi1, lengths, w}` with 1-based position maps and exact
    /// strings for the lengths and translation vector.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Iet", 5)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("pi0", &self.comb.pi0.one_based())?;
        st.serialize_field("pi1", &self.comb.pi1.one_based())?;
        st.serialize_field("lengths", &self.lengths)?;
        st.serialize_field("w", &self.w)?;
        st.end()
    }
}

/// A finite stretch of an orbit, possibly starting at a negative index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSegment {
    pub base_point: QuadReal,
    pub first_index: i64,
    pub points: Vec<QuadReal>,
    /// 0-based label of the interval containing each point.
    pub itinerary: Vec<usize>,
}

impl OrbitSegment {
    /// Point at orbit index `k` (must lie in the covered range).
    pub fn at(&self, k: i64) -> &QuadReal {
        &self.points[(k - self.first_index) as usize]
    }

    pub fn label_at(&self, k: i64) -> usize {
        self.itinerary[(k - self.first_index) as usize]
    }
}

impl serde::Serialize for OrbitSegment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("OrbitSegment", 4)?;
        st.serialize_field("base_point", &self.base_point)?;
        st.serialize_field("first_index", &self.first_index)?;
        st.serialize_field("points", &self.points)?;
        let one_based: Vec<usize> = self.itinerary.iter().map(|&l| l + 1).collect();
        st.serialize_field("itinerary", &one_based)?;
        st.end()
    }
}

/// The three-interval exchange with `π₀ = Id` and reversing `π₁`
/// (labels A, B, C at positions 1, 2, 3 before and 3, 2, 1 after).
/// Its translation vector is `(λ_B+λ_C, λ_C−λ_A, −λ_A−λ_B)`.
pub fn n3_standard(la: QuadReal, lb: QuadReal, lc: QuadReal) -> Result<Iet, IetError> {
    let comb = CombinatorialData::new(Permutation::identity(3), Permutation::reversal(3))?;
    Iet::new(comb, vec![la, lb, lc])
}

/// The two-interval exchange, i.e. the rotation of `[0, λ_A+λ_B)` by `λ_B`.
pub fn rotation(la: QuadReal, lb: QuadReal) -> Result<Iet, IetError> {
    let comb = CombinatorialData::new(Permutation::identity(2), Permutation::reversal(2))?;
    Iet::new(comb, vec![la, lb])
}

/// Low-discrepancy certificate for the `n = 3` exchange: the orbit is
/// low-discrepancy iff `ρ = (λ_B+λ_C)/(λ*+λ_B)` is irrational with bounded
/// moving average of its continued-fraction partial quotients.
#[derive(Debug, Clone, serde::Serialize)]
pub struct N3Certificate {
    pub rho: QuadReal,
    pub irrational: bool,
    pub cf: ContinuedFraction,
    /// Present only for irrational `ρ`.
    pub moving_average: Option<MovingAverageReport>,
    pub bounded: bool,
    pub low_discrepancy: bool,
}

pub fn n3_certificate(la: &QuadReal, lb: &QuadReal, lc: &QuadReal) -> Result<N3Certificate, IetError> {
    for (i, len) in [la, lb, lc].iter().enumerate() {
        if len.sign() != Ordering::Greater {
            return Err(IetError::NonPositiveLength(i));
        }
    }
    let total = la.checked_add(lb)?.checked_add(lc)?;
    let rho = lb.checked_add(lc)?.checked_div(&total.checked_add(lb)?)?;
    let irrational = !rho.is_rational();
    let cf = cf_expand(&rho, CERTIFICATE_CF_TERMS)?;
    let ma = if irrational {
        Some(moving_average(&cf, CERTIFICATE_MA_TERMS)?)
    } else {
        None
    };
    let bounded = ma.as_ref().map(|m| m.bounded).unwrap_or(false);
    Ok(N3Certificate {
        rho,
        irrational,
        cf,
        moving_average: ma,
        bounded,
        low_discrepancy: irrational && bounded,
    })
}

/// Solves for three-interval lengths with `λ* = 1` and rotation number
/// `(λ_B+λ_C)/(1+λ_B) = γ`, given `λ_C`:
/// `λ_B = (γ−λ_C)/(1−γ)`, `λ_A = 1−λ_B−λ_C`.
///
/// Positivity of the derived lengths is *not* automatic; failures are
/// reported per length.
pub fn n3_from_gamma(gamma: &QuadReal, lc: &QuadReal) -> Result<(QuadReal, QuadReal, QuadReal), IetError> {
    let one = QuadReal::one();
    if gamma.sign() != Ordering::Greater || gamma.compare(&one)? != Ordering::Less {
        return Err(IetError::InvalidParams("gamma must lie in (0, 1)".into()));
    }
    if lc.sign() != Ordering::Greater {
        return Err(IetError::InvalidParams("lambda_c must be positive".into()));
    }
    let lb = gamma.checked_sub(lc)?.checked_div(&one.checked_sub(gamma)?)?;
    if lb.sign() != Ordering::Greater {
        return Err(IetError::NonPositiveResult { which: "lambda_b" });
    }
    let la = one.checked_sub(&lb)?.checked_sub(lc)?;
    if la.sign() != Ordering::Greater {
        return Err(IetError::NonPositiveResult { which: "lambda_a" });
    }
    Ok((la, lb, lc.clone()))
}

/// Iterates the rotation `T(y) = y + angle (mod total)` from `x` until the
/// image lies in `[0, sub_right)`, returning that image and the step count.
pub fn first_return(
    total: &QuadReal,
    angle: &QuadReal,
    sub_right: &QuadReal,
    x: &QuadReal,
    max_steps: u64,
) -> Result<(QuadReal, u64), IetError> {
    if angle.sign() != Ordering::Greater || angle.compare(total)? != Ordering::Less {
        return Err(IetError::InvalidParams("angle must lie in (0, total)".into()));
    }
    if sub_right.compare(total)? == Ordering::Greater
        || x.sign() == Ordering::Less
        || x.compare(sub_right)? != Ordering::Less
    {
        return Err(IetError::OutOfDomain);
    }
    let mut y = x.clone();
    for step in 1..=max_steps {
        y = y.checked_add(angle)?;
        if y.compare(total)? != Ordering::Less {
            y = y.checked_sub(total)?;
        }
        if y.compare(sub_right)? == Ordering::Less {
            return Ok((y, step));
        }
    }
    Err(IetError::NoReturnWithinBudget { max_steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{beta, Rational};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(p: i64, den: i64) -> QuadReal {
        QuadReal::from_ratio(p, den)
    }

    fn thirds() -> Iet {
        n3_standard(q(1, 3), q(1, 3), q(1, 3)).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let rot = CombinatorialData::new(Permutation::identity(2), Permutation::reversal(2)).unwrap();
        assert!(rot.is_admissible());
        let id3 = CombinatorialData::new(Permutation::identity(3), Permutation::identity(3)).unwrap();
        assert!(!id3.is_admissible());
        let rev3 = CombinatorialData::new(Permutation::identity(3), Permutation::reversal(3)).unwrap();
        assert!(rev3.is_admissible());
    }

    #[test]
    fn translation_vector_of_thirds() {
        let f = thirds();
        assert_eq!(f.translation_vector(), &[q(2, 3), q(0, 1), q(-2, 3)]);
        assert_eq!(f.total(), &QuadReal::one());
    }

    #[test]
    fn translation_vector_of_rotation() {
        let la = q(2, 5);
        let lb = q(3, 5);
        let f = rotation(la.clone(), lb.clone()).unwrap();
        assert_eq!(f.translation_vector(), &[lb, -la]);
    }

    /// The four-interval example over `2β + 2β² = 1`, image order (2,4,1,3).
    #[test]
    fn translation_vector_of_four_interval_example() {
        let b = beta(2, 2).unwrap();
        let b2 = &b * &b;
        let comb = CombinatorialData::from_image_orders(&[1, 2, 3, 4], &[2, 4, 1, 3]).unwrap();
        let f = Iet::new(comb, vec![b.clone(), b.clone(), b2.clone(), b2.clone()]).unwrap();
        let expected = [&b + &b2, -&b, b2.clone(), -&(&b + &b2)];
        assert_eq!(f.translation_vector(), &expected);
        assert!(f.comb().is_admissible());
        assert_eq!(f.total(), &QuadReal::one());
    }

    #[test]
    fn evaluate_thirds() {
        let f = thirds();
        assert_eq!(f.evaluate(&q(0, 1)).unwrap(), q(2, 3));
        assert_eq!(f.evaluate_inverse(&q(2, 3)).unwrap(), q(0, 1));
        assert!(matches!(f.evaluate(&q(1, 1)), Err(IetError::OutOfDomain)));
        assert!(matches!(f.evaluate(&q(-1, 3)), Err(IetError::OutOfDomain)));
    }

    /// A breakpoint belongs to the interval on its right.
    #[test]
    fn breakpoints_map_with_their_right_interval() {
        let b = beta(2, 2).unwrap();
        let b2 = &b * &b;
        let comb = CombinatorialData::from_image_orders(&[1, 2, 3, 4], &[2, 4, 1, 3]).unwrap();
        let f = Iet::new(comb, vec![b.clone(), b.clone(), b2.clone(), b2.clone()]).unwrap();
        // beta is the left endpoint of I_2, so it moves by w_2 = -beta
        assert_eq!(f.locate(&b).unwrap(), 1);
        assert_eq!(f.evaluate(&b).unwrap(), QuadReal::zero());
        // strictly inside I_1 the map adds beta + beta^2
        let half_b = b.scale(&Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(f.evaluate(&half_b).unwrap(), &half_b + &(&b + &b2));
    }

    #[test]
    fn rotation_half_inverse() {
        let f = rotation(q(1, 2), q(1, 2)).unwrap();
        assert_eq!(f.evaluate_inverse(&q(0, 1)).unwrap(), q(1, 2));
    }

    #[test]
    fn orbit_zeroth_iterate() {
        let f = thirds();
        let seg = f.orbit(&q(1, 6), 0, 0).unwrap();
        assert_eq!(seg.points, vec![q(1, 6)]);
        assert_eq!(seg.itinerary, vec![0]);
    }

    #[test]
    fn golden_rotation_orbit_is_kronecker() {
        let g = beta(1, 1).unwrap();
        let f = rotation(&QuadReal::one() - &g, g.clone()).unwrap();
        let seg = f.orbit(&QuadReal::zero(), 0, 2).unwrap();
        let two_g_minus_one = &g.scale(&Rational::new(BigInt::from(2), BigInt::from(1))) - &QuadReal::one();
        assert_eq!(seg.points, vec![QuadReal::zero(), g.clone(), two_g_minus_one]);
    }

    #[test]
    fn orbit_supports_negative_indices() {
        let f = thirds();
        let seg = f.orbit(&q(1, 6), -3, 3).unwrap();
        assert_eq!(seg.first_index, -3);
        assert_eq!(seg.points.len(), 7);
        for k in -3..3 {
            assert_eq!(&f.evaluate(seg.at(k)).unwrap(), seg.at(k + 1));
        }
        assert_eq!(seg.at(0), &q(1, 6));
    }

    #[test]
    fn n3_standard_translation() {
        let la = q(1, 2);
        let lb = q(1, 3);
        let lc = q(1, 6);
        let f = n3_standard(la.clone(), lb.clone(), lc.clone()).unwrap();
        assert_eq!(
            f.translation_vector(),
            &[&lb + &lc, &lc - &la, -&(&la + &lb)]
        );
        // lb + lc = la here, so f(0) = la
        assert_eq!(f.evaluate(&QuadReal::zero()).unwrap(), la);
    }

    #[test]
    fn n3_certificate_rational_is_negative() {
        let cert = n3_certificate(&q(1, 3), &q(1, 3), &q(1, 3)).unwrap();
        assert_eq!(cert.rho, q(1, 2));
        assert!(!cert.irrational);
        assert!(cert.cf.terminated());
        assert!(!cert.low_discrepancy);
    }

    #[test]
    fn n3_certificate_beta_powers_is_positive() {
        let b = beta(1, 1).unwrap();
        let b2 = &b * &b;
        let b3 = &b2 * &b;
        let cert = n3_certificate(&b, &b2, &b3).unwrap();
        assert!(cert.irrational);
        assert!(cert.bounded);
        assert!(cert.low_discrepancy);
    }

    #[test]
    fn n3_certificate_golden_rotation_number() {
        // lengths realizing rho = gamma exactly: lambda_c = 1/2 in Q(sqrt 5)
        let g = beta(1, 1).unwrap();
        let (la, lb, lc) = n3_from_gamma(&g, &q(1, 2)).unwrap();
        let cert = n3_certificate(&la, &lb, &lc).unwrap();
        assert_eq!(cert.rho, g);
        assert!(cert.low_discrepancy);
        assert!(cert.cf.preperiod().is_empty());
        assert_eq!(cert.cf.period().len(), 1);
    }

    #[test]
    fn n3_from_gamma_rational_stub() {
        let (la, lb, lc) = n3_from_gamma(&q(3, 5), &q(1, 2)).unwrap();
        assert_eq!((la.clone(), lb.clone(), lc.clone()), (q(1, 4), q(1, 4), q(1, 2)));
        // the ratio identity holds exactly
        let total = &la + &(&lb + &lc);
        assert_eq!(total, QuadReal::one());
        let rho = (&lb + &lc) / (&QuadReal::one() + &lb);
        assert_eq!(rho, q(3, 5));
    }

    #[test]
    fn n3_from_gamma_paper_parameters_fail_positivity() {
        let g = beta(1, 1).unwrap();
        let half_g = g.scale(&Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(
            n3_from_gamma(&g, &half_g),
            Err(IetError::NonPositiveResult { which: "lambda_a" })
        );
    }

    #[test]
    fn n3_from_gamma_large_lc_fails() {
        assert_eq!(
            n3_from_gamma(&q(3, 5), &q(4, 5)),
            Err(IetError::NonPositiveResult { which: "lambda_b" })
        );
    }

    #[test]
    fn first_return_steps_match_the_three_interval_picture() {
        let (la, lb, lc) = (q(1, 2), q(1, 3), q(1, 6));
        let total = &QuadReal::one() + &lb; // lambda* + lambda_B
        let angle = &lb + &lc;
        // x in [0, lambda_A): one step
        let (y, steps) = first_return(&total, &angle, &QuadReal::one(), &q(1, 4), 10).unwrap();
        assert_eq!(steps, 1);
        assert_eq!(y, &q(1, 4) + &angle);
        // x in [lambda_A, lambda_A + lambda_B): two steps
        let x = &la + &q(1, 12);
        let (y2, steps2) = first_return(&total, &angle, &QuadReal::one(), &x, 10).unwrap();
        assert_eq!(steps2, 2);
        let t1 = &x + &angle;
        let t2 = &(&t1 + &angle) - &total;
        assert_eq!(y2, t2);
        // x in [lambda_A + lambda_B, lambda*): one step again
        let x3 = &(&la + &lb) + &q(1, 12);
        let (_, steps3) = first_return(&total, &angle, &QuadReal::one(), &x3, 10).unwrap();
        assert_eq!(steps3, 1);
    }

    #[test]
    fn first_return_trivial_subinterval() {
        let total = q(1, 1);
        let (y, steps) = first_return(&total, &q(1, 2), &total, &q(1, 3), 10).unwrap();
        assert_eq!(steps, 1);
        assert_eq!(y, q(5, 6));
    }

    #[test]
    fn first_return_budget() {
        // angle 1/2, subinterval [0, 1/4): from 0 the rotation alternates 1/2, 0, ...
        let r = first_return(&q(1, 1), &q(1, 2), &q(1, 4), &q(1, 8), 1);
        assert!(matches!(r, Err(IetError::NoReturnWithinBudget { .. })));
    }

    #[test]
    fn iet_json_shape() {
        let f = thirds();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["pi0"], serde_json::json!([1, 2, 3]));
        assert_eq!(v["pi1"], serde_json::json!([3, 2, 1]));
        assert_eq!(v["lengths"][0], "1/3");
        assert_eq!(v["w"][0], "2/3");
    }

    fn arb_lengths(n: usize) -> impl Strategy<Value = Vec<QuadReal>> {
        proptest::collection::vec((1i64..12, 1i64..12), n)
            .prop_map(|v| v.into_iter().map(|(p, den)| q(p, den)).collect())
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u64() as usize) % (i + 1);
                v.swap(i, j);
            }
            Permutation::from_positions(v).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evaluate_roundtrips_through_inverse(
            lengths in arb_lengths(4),
            pi0 in arb_perm(4),
            pi1 in arb_perm(4),
            num in 0i64..100,
        ) {
            let comb = CombinatorialData::new(pi0, pi1).unwrap();
            let f = Iet::new(comb, lengths).unwrap();
            let x = f.total().scale(&Rational::new(BigInt::from(num), BigInt::from(100)));
            let y = f.evaluate(&x).unwrap();
            prop_assert!(y.sign() != Ordering::Less);
            prop_assert_eq!(y.compare(f.total()).unwrap(), Ordering::Less);
            prop_assert_eq!(f.evaluate_inverse(&y).unwrap(), x.clone());
            // translation-vector consistency
            let label = f.locate(&x).unwrap();
            prop_assert_eq!(&x + &f.translation_vector()[label], y);
        }

        /// Image intervals tile `[0, total)`: sorted image breakpoints carry
        /// the same multiset of lengths as the domain partition.
        #[test]
        fn image_partition_preserves_lengths(
            lengths in arb_lengths(5),
            pi1 in arb_perm(5),
        ) {
            let comb = CombinatorialData::new(Permutation::identity(5), pi1).unwrap();
            let f = Iet::new(comb.clone(), lengths.clone()).unwrap();
            let order = comb.pi1().labels_in_order();
            let mut image_lengths: Vec<QuadReal> =
                order.iter().map(|&l| f.lengths()[l].clone()).collect();
            let mut domain_lengths = lengths;
            let key = |a: &QuadReal, b: &QuadReal| a.partial_cmp(b).unwrap();
            image_lengths.sort_by(key);
            domain_lengths.sort_by(key);
            prop_assert_eq!(image_lengths, domain_lengths);
        }
    }

    #[test]
    fn zero_length_is_rejected() {
        assert_eq!(
            n3_standard(q(1, 2), q(0, 1), q(1, 2)),
            Err(IetError::NonPositiveLength(1))
        );
    }
}
