//! Sum-capacity upper bounds for the two-user Gaussian X channel in the mixed
//! interference regime, the MAC sum rates they are measured against, and an
//! independent covariance-determinant oracle for the genie-aided bounds.

pub mod bounds;
pub mod delta;
pub mod dominance;
pub mod oracle;
pub mod params;
pub mod sweep;
pub mod verify;

pub use bounds::{
    best_bound, bound_a, bound_b, bound_c, evaluate_side, mac_sum_rate, mirror, BoundEvaluation,
    BoundKind, BoundTag, Inapplicable, Outcome,
};
pub use delta::{
    delta_threshold_a, delta_threshold_b, delta_threshold_c, in_r_delta, DeltaCertificate,
    DeltaError,
};
pub use dominance::{dominance_predicates, Dominance, Predicate};
pub use params::{ChannelParams, ParamError, Receiver, Region, RegionLabel};
pub use sweep::{
    sweep_curve_vs_a2, sweep_plane, sweep_point, threshold_curve_vs_p1, CurvePoint, GridAxis,
    Spacing, SweepConfig, SweepError, SweepRow, ThresholdPoint,
};
