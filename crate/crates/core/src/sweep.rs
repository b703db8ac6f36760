//! Grid evaluations: the `(a², b²)` plane, bound
//! curves against `a²`, and bound-A δ-thresholds against `P₁`.
//!
//! Plane rows are computed in parallel one `a²` line at a time and yielded in
//! row-major order (`a²` outer, `b²` inner), so output is identical however
//! the work is scheduled.

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{
    bound_a, bound_c, evaluate_side, mac_sum_rate, min_applicable, BoundEvaluation, BoundKind,
    Inapplicable,
};
use crate::delta::{delta_threshold_a, in_r_delta, DeltaError};
use crate::params::{ChannelParams, ParamError, Receiver, RegionLabel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("{axis} range: {reason}")]
    InvalidAxis { axis: &'static str, reason: String },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error("curves against a² need b² ≤ 1, got {0}")]
    WeakGainAboveOne(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridAxis {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            spacing: Spacing::Log,
        }
    }

    pub fn single(value: f64) -> Self {
        Self::linear(value, value, 1)
    }

    /// Checks the axis; `nonnegative` additionally requires `min ≥ 0`.
    pub fn validate(&self, axis: &'static str, nonnegative: bool) -> Result<(), SweepError> {
        let bad = |reason: String| Err(SweepError::InvalidAxis { axis, reason });
        if !self.min.is_finite() || !self.max.is_finite() {
            return bad(format!(
                "bounds must be finite, got {}:{}",
                self.min, self.max
            ));
        }
        if self.count == 0 {
            return bad("count must be at least 1".into());
        }
        if self.min > self.max {
            return bad(format!("min {} exceeds max {}", self.min, self.max));
        }
        if nonnegative && self.min < 0.0 {
            return bad(format!("values must be nonnegative, got min {}", self.min));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return bad(format!("log spacing needs min > 0, got {}", self.min));
        }
        Ok(())
    }

    /// Grid values; the endpoints are exactly `min` and `max`.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub a2: GridAxis,
    pub b2: GridAxis,
    pub p1: f64,
    pub p2: f64,
    pub delta: Option<f64>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        self.a2.validate("a2", true)?;
        self.b2.validate("b2", true)?;
        ChannelParams::new(self.a2.min, self.b2.min, self.p1, self.p2)?;
        if let Some(delta) = self.delta {
            delta_threshold_a(self.p1, delta)?;
        }
        Ok(())
    }
}

/// Full evaluation of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub a2: f64,
    pub b2: f64,
    pub region: RegionLabel,
    /// All six kinds in [`BoundKind::all`] order. Sides whose mixed region
    /// does not contain the point carry [`Inapplicable::OutsideRegion`].
    pub bounds: [BoundEvaluation; 6],
    pub best: Option<(BoundKind, f64)>,
    /// Present iff the sweep has a δ; union over the in-region sides.
    pub certifying_bounds: Option<Vec<BoundKind>>,
}

impl SweepRow {
    pub fn r_delta_member(&self) -> Option<bool> {
        self.certifying_bounds.as_ref().map(|c| !c.is_empty())
    }

    pub fn bound(&self, kind: BoundKind) -> &BoundEvaluation {
        self.bounds
            .iter()
            .find(|e| e.kind == kind)
            .expect("every kind is present")
    }
}

/// Evaluates one point the way a plane sweep does.
pub fn sweep_point(params: &ChannelParams, delta: Option<f64>) -> Result<SweepRow, DeltaError> {
    let mut bounds =
        [BoundEvaluation::inapplicable(BoundKind::all()[0], Inapplicable::OutsideRegion); 6];
    let mut certifying_bounds = delta.map(|_| Vec::new());
    for (i, side) in Receiver::BOTH.into_iter().enumerate() {
        let evals = if params.in_region_of(side) {
            if let (Some(delta), Some(cert)) = (delta, certifying_bounds.as_mut()) {
                cert.extend(in_r_delta(params, delta, side)?.certifying_bounds);
            }
            evaluate_side(params, side)
        } else {
            BoundKind::all()[3 * i..3 * i + 3]
                .iter()
                .map(|&k| BoundEvaluation::inapplicable(k, Inapplicable::OutsideRegion))
                .collect::<Vec<_>>()
                .try_into()
                .expect("three kinds per side")
        };
        bounds[3 * i..3 * i + 3].copy_from_slice(&evals);
    }
    Ok(SweepRow {
        a2: params.a2(),
        b2: params.b2(),
        region: params.region(),
        best: min_applicable(bounds.iter()),
        bounds,
        certifying_bounds,
    })
}

/// Rows of the `(a², b²)` grid in row-major order (`b²` varies fastest).
///
/// The configuration is validated before anything is produced.
pub fn sweep_plane(config: &SweepConfig) -> Result<impl Iterator<Item = SweepRow>, SweepError> {
    config.validate()?;
    let a2s = config.a2.values();
    let b2s = config.b2.values();
    let SweepConfig { p1, p2, delta, .. } = *config;
    Ok(a2s.into_iter().flat_map(move |a2| {
        b2s.par_iter()
            .map(|&b2| {
                let params = ChannelParams::new(a2, b2, p1, p2).expect("validated grid");
                sweep_point(&params, delta).expect("validated delta")
            })
            .collect::<Vec<_>>()
    }))
}

/// Receiver-1 MAC rate and bounds A and C at one `a²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub a2: f64,
    pub mac_bits: f64,
    pub value_a: Option<f64>,
    pub value_c: Option<f64>,
    pub gap_a: Option<f64>,
    pub gap_c: Option<f64>,
    /// Side-One δ-membership, present iff a δ was given.
    pub r_delta_member: Option<bool>,
}

/// Bound curves against `a²` at fixed `b² ≤ 1`.
pub fn sweep_curve_vs_a2(
    p1: f64,
    p2: f64,
    b2: f64,
    delta: Option<f64>,
    a2_axis: &GridAxis,
) -> Result<impl Iterator<Item = CurvePoint>, SweepError> {
    a2_axis.validate("a2", true)?;
    ChannelParams::new(a2_axis.min, b2, p1, p2)?;
    if b2 > 1.0 {
        return Err(SweepError::WeakGainAboveOne(b2));
    }
    if let Some(delta) = delta {
        delta_threshold_a(p1, delta)?;
    }
    Ok(a2_axis.values().into_iter().map(move |a2| {
        let params = ChannelParams::new(a2, b2, p1, p2).expect("validated axis");
        let (a, c) = (bound_a(&params), bound_c(&params));
        CurvePoint {
            a2,
            mac_bits: mac_sum_rate(&params, Receiver::One),
            value_a: a.value_bits(),
            value_c: c.value_bits(),
            gap_a: a.gap_bits(),
            gap_c: c.gap_bits(),
            r_delta_member: delta.map(|d| {
                in_r_delta(&params, d, Receiver::One)
                    .expect("validated delta")
                    .member()
            }),
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPoint {
    pub p1: f64,
    pub delta: f64,
    pub a2_threshold: f64,
}

/// Bound-A δ-threshold on `a²` against `P₁`, one curve per δ (δ outer, `P₁` inner).
pub fn threshold_curve_vs_p1(
    deltas: &[f64],
    p1_axis: &GridAxis,
) -> Result<Vec<ThresholdPoint>, SweepError> {
    p1_axis.validate("p1", true)?;
    let p1s = p1_axis.values();
    let mut out = Vec::with_capacity(deltas.len() * p1s.len());
    for &delta in deltas {
        for &p1 in &p1s {
            out.push(ThresholdPoint {
                p1,
                delta,
                a2_threshold: delta_threshold_a(p1, delta)?,
            });
        }
    }
    Ok(out)
}
