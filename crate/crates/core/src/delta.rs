//! Closed-form δ-thresholds and membership in the region where the MAC rate is
//! within δ bits of the sum capacity.
//!
//! Each threshold inverts "gap < δ" for one bound. With `q = 2^{2δ}`:
//!
//! * A: `a² > (P₁+1)((P₁+1)q − 1)/(q − 1)` (together with `b² ≤ 1`)
//! * B: `b² < (q − 1)/(((a²P₂+1)q − 1)(a²P₂+1))` (together with `a² ≥ 1`)
//! * C: `b² < (q − 1)/P₁` (together with `a² ≥ 1`)

use thiserror::Error;

use crate::bounds::{BoundKind, BoundTag};
use crate::params::{ChannelParams, Receiver};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeltaError {
    #[error("delta must be a positive finite number of bits, got {0}")]
    InvalidDelta(f64),
    #[error("{name} must be finite and nonnegative, got {value}")]
    InvalidPower { name: &'static str, value: f64 },
    #[error("bound B thresholds need a² ≥ 1, got {0}")]
    StrongGainBelowOne(f64),
}

fn check_delta(delta: f64) -> Result<f64, DeltaError> {
    if delta.is_finite() && delta > 0.0 {
        Ok((2.0 * delta).exp2())
    } else {
        Err(DeltaError::InvalidDelta(delta))
    }
}

fn check_power(name: &'static str, value: f64) -> Result<(), DeltaError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(DeltaError::InvalidPower { name, value })
    }
}

/// Smallest `a²` above which bound A certifies a gap below `delta`.
///
/// Equals 1 for `P₁ = 0` and always sits at or above `(P₁+1)²`.
pub fn delta_threshold_a(p1: f64, delta: f64) -> Result<f64, DeltaError> {
    let q = check_delta(delta)?;
    check_power("p1", p1)?;
    let s = p1 + 1.0;
    Ok(s * (s * q - 1.0) / (q - 1.0))
}

/// Largest `b²` below which bound B certifies a gap below `delta`.
pub fn delta_threshold_b(a2: f64, p2: f64, delta: f64) -> Result<f64, DeltaError> {
    let q = check_delta(delta)?;
    check_power("p2", p2)?;
    if !(a2.is_finite() && a2 >= 1.0) {
        return Err(DeltaError::StrongGainBelowOne(a2));
    }
    let c = a2 * p2 + 1.0;
    Ok((q - 1.0) / ((c * q - 1.0) * c))
}

/// Largest `b²` below which bound C certifies a gap below `delta`.
///
/// `P₁ = 0` gives `f64::INFINITY`: the gap is identically zero.
pub fn delta_threshold_c(p1: f64, delta: f64) -> Result<f64, DeltaError> {
    let q = check_delta(delta)?;
    check_power("p1", p1)?;
    if p1 == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((q - 1.0) / p1)
}

/// Outcome of the δ-region membership test for one side.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCertificate {
    pub delta: f64,
    pub side: Receiver,
    /// Bounds whose δ-condition holds, in `A, B, C` order.
    pub certifying_bounds: Vec<BoundKind>,
}

impl DeltaCertificate {
    pub fn member(&self) -> bool {
        !self.certifying_bounds.is_empty()
    }
}

/// Tests the three δ-conditions of one side at `params` (mirrored for side Two).
pub fn in_r_delta(
    params: &ChannelParams,
    delta: f64,
    side: Receiver,
) -> Result<DeltaCertificate, DeltaError> {
    check_delta(delta)?;
    let p = match side {
        Receiver::One => *params,
        Receiver::Two => params.mirror(),
    };
    let mut certifying_bounds = Vec::with_capacity(3);
    if p.b2() <= 1.0 && p.a2() > delta_threshold_a(p.p1(), delta)? {
        certifying_bounds.push(BoundKind::new(BoundTag::A, side));
    }
    if p.a2() >= 1.0 {
        if p.b2() < delta_threshold_b(p.a2(), p.p2(), delta)? {
            certifying_bounds.push(BoundKind::new(BoundTag::B, side));
        }
        if p.b2() < delta_threshold_c(p.p1(), delta)? {
            certifying_bounds.push(BoundKind::new(BoundTag::C, side));
        }
    }
    Ok(DeltaCertificate {
        delta,
        side,
        certifying_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{bound_a, bound_b, bound_c};
    use approx::assert_relative_eq;

    // 40-digit mpmath evaluations of the closed forms at P = 0.5, δ = 0.2.
    const THR_A: f64 = 4.597_359_720_095_002;
    const THR_B_A2_1: f64 = 0.217_516_152_940_787_4;
    const THR_C: f64 = 0.639_015_821_545_788_5;

    fn params(a2: f64, b2: f64, p1: f64, p2: f64) -> ChannelParams {
        ChannelParams::new(a2, b2, p1, p2).unwrap()
    }

    #[test]
    fn threshold_a_values() {
        assert_relative_eq!(
            delta_threshold_a(0.5, 0.2).unwrap(),
            THR_A,
            max_relative = 1e-13
        );
        for delta in [1e-3, 0.2, 1.0, 7.5] {
            assert_eq!(delta_threshold_a(0.0, delta).unwrap(), 1.0);
        }
        assert!(matches!(
            delta_threshold_a(0.5, 0.0),
            Err(DeltaError::InvalidDelta(_))
        ));
        assert!(matches!(
            delta_threshold_a(0.5, -1.0),
            Err(DeltaError::InvalidDelta(_))
        ));
    }

    #[test]
    fn threshold_a_brackets_delta() {
        let thr = delta_threshold_a(0.5, 0.2).unwrap();
        assert!(thr > 2.25);
        let above = bound_a(&params(thr * (1.0 + 1e-9), 0.5, 0.5, 0.5))
            .gap_bits()
            .unwrap();
        let below = bound_a(&params(thr * (1.0 - 1e-9), 0.5, 0.5, 0.5))
            .gap_bits()
            .unwrap();
        assert!(above < 0.2, "{above}");
        assert!(below >= 0.2, "{below}");
    }

    #[test]
    fn threshold_b_values() {
        assert_relative_eq!(
            delta_threshold_b(1.0, 0.5, 0.2).unwrap(),
            THR_B_A2_1,
            max_relative = 1e-13
        );
        for a2 in [1.0, 3.0, 1e4] {
            assert_relative_eq!(
                delta_threshold_b(a2, 0.0, 0.2).unwrap(),
                1.0,
                max_relative = 1e-15
            );
        }
        assert!(matches!(
            delta_threshold_b(0.5, 0.5, 0.2),
            Err(DeltaError::StrongGainBelowOne(_))
        ));
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let t = delta_threshold_b(1.0 + i as f64 * 0.25, 0.5, 0.2).unwrap();
            assert!(t < last);
            last = t;
        }
    }

    #[test]
    fn threshold_b_brackets_delta() {
        let thr = delta_threshold_b(3.0, 0.5, 0.2).unwrap();
        let above = bound_b(&params(3.0, thr * (1.0 + 1e-9), 1.0, 0.5))
            .gap_bits()
            .unwrap();
        let below = bound_b(&params(3.0, thr * (1.0 - 1e-9), 1.0, 0.5))
            .gap_bits()
            .unwrap();
        assert!(above >= 0.2 && below < 0.2);
    }

    #[test]
    fn threshold_c_values() {
        assert_relative_eq!(
            delta_threshold_c(0.5, 0.2).unwrap(),
            THR_C,
            max_relative = 1e-13
        );
        assert_eq!(delta_threshold_c(1.0, 0.5).unwrap(), 1.0);
        assert_eq!(delta_threshold_c(0.0, 0.3).unwrap(), f64::INFINITY);
        let gap = bound_c(&params(2.0, 1.0, 1.0, 0.5)).gap_bits().unwrap();
        assert_eq!(gap, 0.5);
    }

    #[test]
    fn membership_examples() {
        let cert = in_r_delta(&params(10.0, 0.5, 0.5, 0.5), 0.2, Receiver::One).unwrap();
        assert!(cert.member());
        let tags: Vec<_> = cert.certifying_bounds.iter().map(|k| k.tag).collect();
        assert_eq!(tags, [BoundTag::A, BoundTag::C]);

        let cert = in_r_delta(&params(1.5, 0.9, 0.5, 0.5), 0.2, Receiver::One).unwrap();
        assert!(!cert.member());

        let cert = in_r_delta(&params(0.5, 10.0, 0.5, 0.5), 0.2, Receiver::Two).unwrap();
        assert_eq!(
            cert.certifying_bounds,
            [
                BoundKind::new(BoundTag::A, Receiver::Two),
                BoundKind::new(BoundTag::C, Receiver::Two)
            ]
        );

        assert!(in_r_delta(&params(10.0, 0.5, 0.5, 0.5), 0.0, Receiver::One).is_err());
    }
}
