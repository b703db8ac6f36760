//! Channel instances in standard form and the mixed-interference region map.

use std::fmt;

use thiserror::Error;

/// Relative tolerance used to flag points lying on a region or validity boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },
}

/// One standard-form Gaussian X channel: `Y1 = X1 + a X2 + Z1`, `Y2 = b X1 + X2 + Z2`
/// with unit-variance noise.
///
/// Cross gains are stored squared; nothing downstream depends on their sign.
/// Powers are linear and noise-normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    a2: f64,
    b2: f64,
    p1: f64,
    p2: f64,
}

impl ChannelParams {
    pub fn new(a2: f64, b2: f64, p1: f64, p2: f64) -> Result<Self, ParamError> {
        for (name, value) in [("a2", a2), ("b2", b2), ("p1", p1), ("p2", p2)] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { name, value });
            }
            if value < 0.0 {
                return Err(ParamError::Negative { name, value });
            }
        }
        Ok(Self { a2, b2, p1, p2 })
    }

    /// Squared cross gain from transmitter 2 into receiver 1.
    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// Squared cross gain from transmitter 1 into receiver 2.
    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// Swaps the roles of the two users: `(a², b², P₁, P₂) -> (b², a², P₂, P₁)`.
    pub fn mirror(&self) -> Self {
        Self {
            a2: self.b2,
            b2: self.a2,
            p1: self.p2,
            p2: self.p1,
        }
    }

    pub fn region(&self) -> RegionLabel {
        RegionLabel::classify(self)
    }

    /// Whether the bounds of the given side are meaningful here, i.e. the point
    /// lies in the closed mixed region attached to that receiver.
    pub fn in_region_of(&self, side: Receiver) -> bool {
        match side {
            Receiver::One => self.a2 >= 1.0 && self.b2 <= 1.0,
            Receiver::Two => self.a2 <= 1.0 && self.b2 >= 1.0,
        }
    }
}

impl fmt::Display for ChannelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a2={} b2={} p1={} p2={}",
            self.a2, self.b2, self.p1, self.p2
        )
    }
}

/// Receiver whose MAC sum rate is the baseline; also selects the family of bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Receiver {
    One,
    Two,
}

impl Receiver {
    pub const BOTH: [Receiver; 2] = [Receiver::One, Receiver::Two];

    pub fn index(self) -> u8 {
        match self {
            Receiver::One => 1,
            Receiver::Two => 2,
        }
    }
}

impl fmt::Display for Receiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `a² ≥ 1, b² ≤ 1`
    MixedR1,
    /// `a² ≤ 1, b² ≥ 1`
    MixedR2,
    Outside,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::MixedR1 => "R1",
            Region::MixedR2 => "R2",
            Region::Outside => "outside",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionLabel {
    pub region: Region,
    /// `a²` or `b²` equals 1 up to [`BOUNDARY_TOL`].
    pub boundary: bool,
}

impl RegionLabel {
    /// Membership uses exact comparisons; `a² = b² = 1` lands in R1 and is
    /// flagged as a boundary point.
    pub fn classify(params: &ChannelParams) -> Self {
        let region = if params.in_region_of(Receiver::One) {
            Region::MixedR1
        } else if params.in_region_of(Receiver::Two) {
            Region::MixedR2
        } else {
            Region::Outside
        };
        let near_one = |v: f64| (v - 1.0).abs() <= BOUNDARY_TOL;
        Self {
            region,
            boundary: near_one(params.a2) || near_one(params.b2),
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.region.as_str())?;
        if self.boundary {
            f.write_str(" (boundary)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_and_non_finite() {
        assert!(matches!(
            ChannelParams::new(-1.0, 0.5, 1.0, 1.0),
            Err(ParamError::Negative { name: "a2", .. })
        ));
        assert!(matches!(
            ChannelParams::new(1.0, 0.5, f64::NAN, 1.0),
            Err(ParamError::NotFinite { name: "p1", .. })
        ));
        assert!(ChannelParams::new(1.0, 0.5, f64::INFINITY, 1.0).is_err());
        assert!(ChannelParams::new(0.0, 0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn mirror_swaps_users() {
        let p = ChannelParams::new(10.0, 0.5, 1.0, 2.0).unwrap();
        let m = p.mirror();
        assert_eq!(m, ChannelParams::new(0.5, 10.0, 2.0, 1.0).unwrap());
        assert_eq!(m.mirror(), p);
    }

    #[test]
    fn region_labels() {
        let label = |a2, b2| ChannelParams::new(a2, b2, 1.0, 1.0).unwrap().region();
        assert_eq!(label(10.0, 0.5).region, Region::MixedR1);
        assert!(!label(10.0, 0.5).boundary);
        assert_eq!(label(0.5, 10.0).region, Region::MixedR2);
        assert_eq!(label(0.5, 0.5).region, Region::Outside);
        assert_eq!(label(2.0, 2.0).region, Region::Outside);

        let corner = label(1.0, 1.0);
        assert_eq!(corner.region, Region::MixedR1);
        assert!(corner.boundary);
        assert!(label(1.0, 0.3).boundary);
        assert!(label(0.3, 1.0).boundary);
        assert_eq!(label(0.3, 1.0).region, Region::MixedR2);
    }
}
