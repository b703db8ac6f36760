use nalgebra::{DMatrix, Matrix4, SMatrix};

use super::system::{conditional_mi, GaussianSystem};
use super::{var, OracleError};
use crate::bounds::BoundTag;
use crate::params::{ChannelParams, BOUNDARY_TOL};

/// Slack allowed on `η² ≤ 1` so that the optimal genie (`η = 1` up to
/// rounding) counts as admissible.
pub const ADMISSIBLE_SLACK: f64 = 1e-12;

/// Which signal the genie hands to receiver 1, in noise `ηW`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenieFlavor {
    /// `S₁ = X₂ + ηW`; behind bound A.
    InterfererSignal,
    /// `S₁ = bX₁ + ηW`; behind bound B.
    CrossLinkSignal,
}

impl GenieFlavor {
    pub const ALL: [GenieFlavor; 2] = [GenieFlavor::InterfererSignal, GenieFlavor::CrossLinkSignal];

    pub fn bound_tag(self) -> BoundTag {
        match self {
            GenieFlavor::InterfererSignal => BoundTag::A,
            GenieFlavor::CrossLinkSignal => BoundTag::B,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenieFlavor::InterfererSignal => "interferer",
            GenieFlavor::CrossLinkSignal => "cross-link",
        }
    }
}

/// Side information `S₁` with noise `W ~ N(0, 1)`, `corr(W, Z₁) = ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenieConfig {
    rho: f64,
    eta: f64,
    flavor: GenieFlavor,
}

impl GenieConfig {
    /// Any `|ρ| ≤ 1` and finite `η` is accepted; see [`Self::is_admissible`].
    pub fn new(rho: f64, eta: f64, flavor: GenieFlavor) -> Result<Self, OracleError> {
        if rho.is_nan() || rho.abs() > 1.0 {
            return Err(OracleError::InvalidRho(rho));
        }
        if !eta.is_finite() {
            return Err(OracleError::InvalidEta(eta));
        }
        Ok(Self { rho, eta, flavor })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn flavor(&self) -> GenieFlavor {
        self.flavor
    }

    /// The converse needs `η² ≤ 1` for the genie signal to be no noisier than
    /// what receiver 2 sees.
    pub fn is_admissible(&self) -> bool {
        self.eta * self.eta <= 1.0 + ADMISSIBLE_SLACK
    }
}

/// Covariance of `(X1, X2, Z1, W, Y1, S1)` for the genie-aided receiver 1.
///
/// `Y1 = X1 + aX2 + Z1` with `a = +√a²`; `S1` per the genie flavor with
/// `b = +√b²`.
pub fn build_system(
    params: &ChannelParams,
    genie: &GenieConfig,
) -> Result<GaussianSystem, OracleError> {
    let a = params.a2().sqrt();
    let b = params.b2().sqrt();
    #[rustfmt::skip]
    let base = Matrix4::new(
        params.p1(), 0.0, 0.0, 0.0,
        0.0, params.p2(), 0.0, 0.0,
        0.0, 0.0, 1.0, genie.rho,
        0.0, 0.0, genie.rho, 1.0,
    );
    let s1 = match genie.flavor {
        GenieFlavor::InterfererSignal => [0.0, 1.0, 0.0, genie.eta],
        GenieFlavor::CrossLinkSignal => [b, 0.0, 0.0, genie.eta],
    };
    #[rustfmt::skip]
    let loadings = SMatrix::<f64, 6, 4>::from_row_slice(&[
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        1.0, a, 1.0, 0.0,
        s1[0], s1[1], s1[2], s1[3],
    ]);
    let full = loadings * base * loadings.transpose();
    // Symmetrize explicitly; the product is symmetric only up to rounding.
    let cov = DMatrix::from_fn(6, 6, |i, j| 0.5 * (full[(i, j)] + full[(j, i)]));
    let names = [var::X1, var::X2, var::Z1, var::W, var::Y1, var::S1]
        .iter()
        .map(|s| s.to_string())
        .collect();
    GaussianSystem::new(names, cov)
}

/// The genie with the smallest admissible `ρ²`, which minimises the gap.
///
/// Interferer flavor: `ρ² = (P₁+1)²/a²`, `ηρ = (P₁+1)/a`.
/// Cross-link flavor: `ρ² = b²(a²P₂+1)²`, `ηρ = b(a²P₂+1)`.
/// Both give `η = 1`. At `b = 0` the cross-link genie has `ρ = 0` and `η = 1`
/// is kept by convention.
pub fn optimal_genie(
    params: &ChannelParams,
    flavor: GenieFlavor,
) -> Result<GenieConfig, OracleError> {
    let (rho_sq, eta_rho) = match flavor {
        GenieFlavor::InterfererSignal => {
            let s = params.p1() + 1.0;
            let limit = s * s;
            if params.a2() <= limit || params.a2() - limit <= BOUNDARY_TOL * limit {
                return Err(OracleError::OutsideValidity(
                    "a² not strictly greater than (P₁+1)²",
                ));
            }
            (limit / params.a2(), s / params.a2().sqrt())
        }
        GenieFlavor::CrossLinkSignal => {
            let c = params.a2() * params.p2() + 1.0;
            let limit = 1.0 / (c * c);
            if params.b2() >= limit || limit - params.b2() <= BOUNDARY_TOL * limit {
                return Err(OracleError::OutsideValidity("b² ≥ 1/(a²P₂+1)²"));
            }
            (params.b2() * c * c, params.b2().sqrt() * c)
        }
    };
    let rho = rho_sq.sqrt();
    let eta = if rho == 0.0 { 1.0 } else { eta_rho / rho };
    GenieConfig::new(rho, eta, flavor)
}

/// The term the `ηρ` condition is meant to cancel: `I(X₂; S₁ | Y₁)` for the
/// interferer genie, `I(X₁; S₁ | Y₁)` for the cross-link genie.
pub fn verify_zero_term(params: &ChannelParams, genie: &GenieConfig) -> Result<f64, OracleError> {
    let system = build_system(params, genie)?;
    let target = match genie.flavor {
        GenieFlavor::InterfererSignal => var::X2,
        GenieFlavor::CrossLinkSignal => var::X1,
    };
    conditional_mi(&system, &[target], &[var::S1], &[var::Y1])
}

/// Closed-form residual gap for a genie with squared correlation `rho_sq`:
/// `½log₂((1 − ρ²/m)/(1 − ρ²))` with `m = P₁+1` (interferer) or `m = a²P₂+1`
/// (cross-link).
pub fn gap_closed_form(params: &ChannelParams, flavor: GenieFlavor, rho_sq: f64) -> f64 {
    let m = match flavor {
        GenieFlavor::InterfererSignal => params.p1() + 1.0,
        GenieFlavor::CrossLinkSignal => params.a2() * params.p2() + 1.0,
    };
    0.5 * ((1.0 - rho_sq / m) / (1.0 - rho_sq)).log2()
}

/// Returns `(oracle, closed_form)` for the gap term: `I(X₁; S₁ | Y₁, X₂)`
/// (interferer) or `I(X₂; S₁ | Y₁, X₁)` (cross-link) against
/// [`gap_closed_form`].
pub fn verify_gap_formula(
    params: &ChannelParams,
    genie: &GenieConfig,
) -> Result<(f64, f64), OracleError> {
    let rho_sq = genie.rho * genie.rho;
    if rho_sq >= 1.0 {
        return Err(OracleError::UnitCorrelation);
    }
    let system = build_system(params, genie)?;
    let (target, known) = match genie.flavor {
        GenieFlavor::InterfererSignal => (var::X1, var::X2),
        GenieFlavor::CrossLinkSignal => (var::X2, var::X1),
    };
    let oracle = conditional_mi(&system, &[target], &[var::S1], &[var::Y1, known])?;
    Ok((oracle, gap_closed_form(params, genie.flavor, rho_sq)))
}

/// Whether the closed-form gap is nondecreasing along the sorted `ρ²` grid.
pub fn gap_monotone_in_rho(
    params: &ChannelParams,
    flavor: GenieFlavor,
    rho_sq_grid: &[f64],
) -> Result<bool, OracleError> {
    if let Some(&bad) = rho_sq_grid.iter().find(|r| !(0.0..1.0).contains(*r)) {
        return Err(OracleError::InvalidRhoGrid(bad));
    }
    let mut grid = rho_sq_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = grid
        .iter()
        .map(|&r| gap_closed_form(params, flavor, r))
        .collect();
    Ok(gaps.windows(2).all(|w| w[0] <= w[1]))
}

/// `I(X₁, X₂; Y₁)` computed from the covariance, which should equal the MAC
/// sum rate at receiver 1.
pub fn mac_rate_oracle(system: &GaussianSystem) -> Result<f64, OracleError> {
    conditional_mi(system, &[var::X1, var::X2], &[var::Y1], &[])
}
