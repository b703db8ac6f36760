//! MAC sum rates and the three sum-capacity upper bounds attached to each receiver.
//!
//! Side One (region R1, `a² ≥ 1, b² ≤ 1`) uses the MAC at receiver 1 as its
//! baseline:
//!
//! * `A`: genie `S₁ = X₂ + ηW`, valid for `b² ≤ 1` and `a² > (P₁+1)²`,
//!   gap `½log₂((1 − (P₁+1)/a²) / (1 − (P₁+1)²/a²))`.
//! * `B`: genie `S₁ = bX₁ + ηW`, valid for `a² ≥ 1` and `b² < 1/(a²P₂+1)²`,
//!   gap `½log₂((1 − b²(a²P₂+1)) / (1 − b²(a²P₂+1)²))`.
//! * `C`: Z-channel bound, valid for `a² ≥ 1`, gap `½log₂(1 + b²P₁)`.
//!
//! Side Two is the same family evaluated on the mirrored channel
//! (`a² ↔ b²`, `P₁ ↔ P₂`).

use std::fmt;

use crate::params::{ChannelParams, Receiver, BOUNDARY_TOL};

/// Achievable sum rate of optimal Gaussian MAC coding towards one receiver, in bits.
pub fn mac_sum_rate(params: &ChannelParams, receiver: Receiver) -> f64 {
    let snr = match receiver {
        Receiver::One => params.p1() + params.a2() * params.p2(),
        Receiver::Two => params.b2() * params.p1() + params.p2(),
    };
    0.5 * (1.0 + snr).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundTag {
    A,
    B,
    C,
}

impl BoundTag {
    pub const ALL: [BoundTag; 3] = [BoundTag::A, BoundTag::B, BoundTag::C];
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundTag::A => "A",
            BoundTag::B => "B",
            BoundTag::C => "C",
        };
        f.write_str(s)
    }
}

/// One of the six bounds: a tag plus the receiver whose MAC rate it sits above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundKind {
    pub side: Receiver,
    pub tag: BoundTag,
}

impl BoundKind {
    pub const fn new(tag: BoundTag, side: Receiver) -> Self {
        Self { side, tag }
    }

    /// All six kinds, side One first, each side in `A, B, C` order.
    pub fn all() -> [BoundKind; 6] {
        let mut out = [BoundKind::new(BoundTag::A, Receiver::One); 6];
        for (i, side) in Receiver::BOTH.into_iter().enumerate() {
            for (j, tag) in BoundTag::ALL.into_iter().enumerate() {
                out[3 * i + j] = BoundKind::new(tag, side);
            }
        }
        out
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag, self.side)
    }
}

/// Why a bound does not apply at a point. Phrased in side-One coordinates and
/// rendered with the user roles swapped for side Two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inapplicable {
    /// `a² < 1`.
    StrongGainBelowOne,
    /// `b² > 1`.
    WeakGainAboveOne,
    /// `a² ≤ (P₁+1)²`.
    StrongGainNotAboveThreshold,
    /// `b² ≥ 1/(a²P₂+1)²`.
    WeakGainNotBelowThreshold,
    /// Within [`BOUNDARY_TOL`] (relative) of a strict validity boundary, where
    /// the bound diverges.
    Boundary,
    /// Suppressed by a grid sweep because the point is not in the side's
    /// mixed region.
    OutsideRegion,
}

impl Inapplicable {
    pub fn describe(self, side: Receiver) -> &'static str {
        use Inapplicable::*;
        match (self, side) {
            (StrongGainBelowOne, Receiver::One) => "a² < 1",
            (StrongGainBelowOne, Receiver::Two) => "b² < 1",
            (WeakGainAboveOne, Receiver::One) => "b² > 1",
            (WeakGainAboveOne, Receiver::Two) => "a² > 1",
            (StrongGainNotAboveThreshold, Receiver::One) => "a² not strictly greater than (P₁+1)²",
            (StrongGainNotAboveThreshold, Receiver::Two) => "b² not strictly greater than (P₂+1)²",
            (WeakGainNotBelowThreshold, Receiver::One) => "b² ≥ 1/(a²P₂+1)²",
            (WeakGainNotBelowThreshold, Receiver::Two) => "a² ≥ 1/(b²P₁+1)²",
            (Boundary, _) => "boundary",
            (OutsideRegion, Receiver::One) => "outside R1",
            (OutsideRegion, Receiver::Two) => "outside R2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Applicable { value_bits: f64, gap_bits: f64 },
    Inapplicable(Inapplicable),
}

/// Verdict of one bound at one channel instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEvaluation {
    pub kind: BoundKind,
    pub outcome: Outcome,
}

impl BoundEvaluation {
    fn applicable(kind: BoundKind, mac_bits: f64, gap_bits: f64) -> Self {
        Self {
            kind,
            outcome: Outcome::Applicable {
                value_bits: mac_bits + gap_bits,
                gap_bits,
            },
        }
    }

    pub(crate) fn inapplicable(kind: BoundKind, reason: Inapplicable) -> Self {
        Self {
            kind,
            outcome: Outcome::Inapplicable(reason),
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self.outcome, Outcome::Applicable { .. })
    }

    pub fn value_bits(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Applicable { value_bits, .. } => Some(value_bits),
            Outcome::Inapplicable(_) => None,
        }
    }

    pub fn gap_bits(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Applicable { gap_bits, .. } => Some(gap_bits),
            Outcome::Inapplicable(_) => None,
        }
    }

    pub fn reason(&self) -> Option<Inapplicable> {
        match self.outcome {
            Outcome::Applicable { .. } => None,
            Outcome::Inapplicable(r) => Some(r),
        }
    }

    pub fn reason_text(&self) -> Option<&'static str> {
        self.reason().map(|r| r.describe(self.kind.side))
    }

    fn relabel(self, side: Receiver) -> Self {
        Self {
            kind: BoundKind::new(self.kind.tag, side),
            ..self
        }
    }
}

/// `lhs > rhs` with the rule that a hair above `rhs` counts as the boundary.
fn strictly_above(lhs: f64, rhs: f64, fail: Inapplicable) -> Result<(), Inapplicable> {
    if lhs <= rhs {
        Err(fail)
    } else if lhs - rhs <= BOUNDARY_TOL * lhs.abs().max(rhs.abs()) {
        Err(Inapplicable::Boundary)
    } else {
        Ok(())
    }
}

fn gap_a(params: &ChannelParams) -> Result<f64, Inapplicable> {
    if params.b2() > 1.0 {
        return Err(Inapplicable::WeakGainAboveOne);
    }
    let s = params.p1() + 1.0;
    strictly_above(
        params.a2(),
        s * s,
        Inapplicable::StrongGainNotAboveThreshold,
    )?;
    let u = s / params.a2();
    let x = s * s / params.a2();
    Ok(0.5 * ((1.0 - u) / (1.0 - x)).log2())
}

fn gap_b(params: &ChannelParams) -> Result<f64, Inapplicable> {
    if params.a2() < 1.0 {
        return Err(Inapplicable::StrongGainBelowOne);
    }
    let c = params.a2() * params.p2() + 1.0;
    let limit = 1.0 / (c * c);
    // b² < limit, stated as limit > b².
    strictly_above(limit, params.b2(), Inapplicable::WeakGainNotBelowThreshold)?;
    let t = params.b2() * c;
    Ok(0.5 * ((1.0 - t) / (1.0 - t * c)).log2())
}

fn gap_c(params: &ChannelParams) -> Result<f64, Inapplicable> {
    if params.a2() < 1.0 {
        return Err(Inapplicable::StrongGainBelowOne);
    }
    Ok(0.5 * (1.0 + params.b2() * params.p1()).log2())
}

fn evaluate_tag(params: &ChannelParams, tag: BoundTag) -> BoundEvaluation {
    let kind = BoundKind::new(tag, Receiver::One);
    let gap = match tag {
        BoundTag::A => gap_a(params),
        BoundTag::B => gap_b(params),
        BoundTag::C => gap_c(params),
    };
    match gap {
        Ok(gap) => BoundEvaluation::applicable(kind, mac_sum_rate(params, Receiver::One), gap),
        Err(reason) => BoundEvaluation::inapplicable(kind, reason),
    }
}

/// Genie-aided bound with side information `X₂ + ηW` at receiver 1.
pub fn bound_a(params: &ChannelParams) -> BoundEvaluation {
    evaluate_tag(params, BoundTag::A)
}

/// Genie-aided bound with side information `bX₁ + ηW` at receiver 1.
pub fn bound_b(params: &ChannelParams) -> BoundEvaluation {
    evaluate_tag(params, BoundTag::B)
}

/// Z-channel sum capacity plus the single-user rate of the `W₂₁` link.
pub fn bound_c(params: &ChannelParams) -> BoundEvaluation {
    evaluate_tag(params, BoundTag::C)
}

pub fn mirror(params: &ChannelParams) -> ChannelParams {
    params.mirror()
}

/// Evaluations of bounds `A, B, C` for one side, in that order.
pub fn evaluate_side(params: &ChannelParams, side: Receiver) -> [BoundEvaluation; 3] {
    let oriented = match side {
        Receiver::One => *params,
        Receiver::Two => params.mirror(),
    };
    BoundTag::ALL.map(|tag| evaluate_tag(&oriented, tag).relabel(side))
}

/// Smallest applicable bound of a side. Ties resolve to the earliest of `A, B, C`.
pub fn best_bound(params: &ChannelParams, side: Receiver) -> Option<(BoundKind, f64)> {
    min_applicable(evaluate_side(params, side).iter())
}

/// Minimum value over the applicable evaluations; the first one wins ties.
pub fn min_applicable<'a>(
    evals: impl IntoIterator<Item = &'a BoundEvaluation>,
) -> Option<(BoundKind, f64)> {
    evals
        .into_iter()
        .filter_map(|e| e.value_bits().map(|v| (e.kind, v)))
        .fold(None, |best, (kind, v)| match best {
            Some((_, bv)) if bv <= v => best,
            _ => Some((kind, v)),
        })
}

/// Lower and upper bounds sandwiching `ln((1 − x/(v+1)) / (1 − x))`, the
/// bound-A gap in nats with `v = P₁` and `x = (P₁+1)²/a²`.
///
/// Returns `(lower, middle, upper)` with `lower = v/(1+v) · ln(1/(1−x))` and
/// `upper = ln(1/(1−x))`.
pub fn taylor_sandwich(v: f64, x: f64) -> (f64, f64, f64) {
    let upper = -(-x).ln_1p();
    let middle = (-x / (v + 1.0)).ln_1p() + upper;
    let lower = v / (1.0 + v) * upper;
    (lower, middle, upper)
}
