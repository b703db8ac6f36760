//! Seeded randomized checks of the oracle identities.
//!
//! Each trial draws one admissible channel per genie flavor, builds the
//! optimal genie and checks:
//!
//! * `oracle-equivalence`: determinant MI of the gap term against the closed
//!   form and against the bound's own gap
//! * `zero-term`: the term the `ηρ` condition cancels
//! * `mac-identity`: `I(X₁,X₂;Y₁)` against the MAC sum rate (relative)
//! * `chain-rule`: `I(X;Y₁,S₁) = I(X;Y₁) + I(X;S₁|Y₁)`
//! * `gap-nonnegative`: every applicable bound gap on both sides
//! * `taylor-sandwich`: the logarithmic sandwich around the bound-A gap

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{evaluate_side, taylor_sandwich, BoundKind};
use crate::oracle::{
    build_system, conditional_mi, mac_rate_oracle, optimal_genie, var, verify_gap_formula,
    verify_zero_term, GenieConfig, GenieFlavor, OracleError,
};
use crate::params::{ChannelParams, Receiver};

/// Relative tolerance of the MAC identity.
pub const MAC_REL_TOL: f64 = 1e-12;
/// Absolute slack (nats) for the Taylor sandwich inequalities.
pub const SANDWICH_SLACK: f64 = 1e-14;

/// Powers are drawn log-uniformly from this range (about −13 dB to 7 dB).
pub const POWER_RANGE: (f64, f64) = (0.05, 5.0);
/// Squared genie correlation of the optimal genie is drawn uniformly from
/// this range; it fixes `a²` (interferer) or `b²` (cross-link).
///
/// The covariance of `Y₁` carries a rounding error of about `ε·(1+P₁+a²P₂)`,
/// which bounds how closely any determinant identity can hold. The ranges
/// keep `a²P₂` below about 10⁴.
pub const RHO_SQ_RANGE: (f64, f64) = (0.02, 0.98);
/// `a²` for cross-link draws is log-uniform in this range.
pub const CROSS_LINK_A2_RANGE: (f64, f64) = (1.0, 1e2);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Absolute tolerance in bits for the oracle, zero-term and chain-rule checks.
    pub tolerance: f64,
    /// Added to `ηρ` before building the genie; nonzero values should break
    /// the zero-term check.
    pub perturb_etarho: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            tolerance: 1e-9,
            perturb_etarho: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub trial: usize,
    pub params: ChannelParams,
    pub genie: Option<GenieConfig>,
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub tolerance: f64,
    pub cases: usize,
    pub max_residual: f64,
    pub first_failure: Option<Failure>,
}

impl CheckSummary {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            cases: 0,
            max_residual: 0.0,
            first_failure: None,
        }
    }

    fn record(&mut self, residual: f64, failure: impl FnOnce() -> Failure) {
        self.cases += 1;
        // NaN residuals count as failures.
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
        }
        if (residual.is_nan() || residual > self.tolerance) && self.first_failure.is_none() {
            self.first_failure = Some(failure());
        }
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn log_uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

/// One admissible channel for the given genie flavor.
///
/// Interferer: `b² ~ U[0, 1]`, `a² = (P₁+1)²/ρ²` with `ρ²` from
/// [`RHO_SQ_RANGE`]. Cross-link: `a²` log-uniform, `b² = ρ²/(a²P₂+1)²` with
/// `ρ² ~ U[0, 0.98)`.
pub fn draw_params(rng: &mut impl Rng, flavor: GenieFlavor) -> ChannelParams {
    let p1 = log_uniform(rng, POWER_RANGE);
    let p2 = log_uniform(rng, POWER_RANGE);
    let (a2, b2) = match flavor {
        GenieFlavor::InterfererSignal => {
            let rho_sq = rng.gen_range(RHO_SQ_RANGE.0..RHO_SQ_RANGE.1);
            let s = p1 + 1.0;
            (s * s / rho_sq, rng.gen_range(0.0..=1.0))
        }
        GenieFlavor::CrossLinkSignal => {
            let a2 = log_uniform(rng, CROSS_LINK_A2_RANGE);
            let c = a2 * p2 + 1.0;
            // b = 0 is a legitimate cross-link draw; include it below the range.
            let rho_sq = rng.gen_range(0.0..RHO_SQ_RANGE.1);
            (a2, rho_sq / (c * c))
        }
    };
    ChannelParams::new(a2, b2, p1, p2).expect("drawn parameters are finite and nonnegative")
}

fn perturbed(genie: GenieConfig, delta: f64) -> Result<GenieConfig, OracleError> {
    if delta == 0.0 || genie.rho() == 0.0 {
        return Ok(genie);
    }
    let eta = (genie.eta() * genie.rho() + delta) / genie.rho();
    GenieConfig::new(genie.rho(), eta, genie.flavor())
}

pub fn run_suite(config: SuiteConfig) -> SuiteReport {
    let tol = config.tolerance;
    let mut oracle_eq = CheckSummary::new("oracle-equivalence", tol);
    let mut zero_term = CheckSummary::new("zero-term", tol);
    let mut mac = CheckSummary::new("mac-identity", MAC_REL_TOL);
    let mut chain = CheckSummary::new("chain-rule", tol);
    let mut nonneg = CheckSummary::new("gap-nonnegative", 0.0);
    let mut sandwich = CheckSummary::new("taylor-sandwich", SANDWICH_SLACK);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for trial in 0..config.trials {
        for flavor in GenieFlavor::ALL {
            let params = draw_params(&mut rng, flavor);
            let fail = |genie: Option<GenieConfig>, residual: f64, detail: String| Failure {
                trial,
                params,
                genie,
                residual,
                detail,
            };
            let genie = match optimal_genie(&params, flavor)
                .and_then(|g| perturbed(g, config.perturb_etarho))
            {
                Ok(g) => g,
                Err(e) => {
                    oracle_eq.record(f64::NAN, || fail(None, f64::NAN, e.to_string()));
                    continue;
                }
            };
            let kind = BoundKind::new(flavor.bound_tag(), Receiver::One);
            let bound_gap = evaluate_side(&params, Receiver::One)
                .into_iter()
                .find(|e| e.kind == kind)
                .and_then(|e| e.gap_bits());

            match verify_gap_formula(&params, &genie) {
                Ok((oracle, closed)) => {
                    // f64::max would swallow the NaN of a missing bound gap.
                    let r = match bound_gap {
                        Some(g) => (oracle - closed).abs().max((oracle - g).abs()),
                        None => f64::NAN,
                    };
                    oracle_eq.record(r, || {
                        fail(
                            Some(genie),
                            r,
                            format!(
                                "{}: oracle {oracle:.15e}, closed form {closed:.15e}, bound gap {bound_gap:?}",
                                flavor.name()
                            ),
                        )
                    });
                }
                Err(e) => oracle_eq.record(f64::NAN, || fail(Some(genie), f64::NAN, e.to_string())),
            }

            match verify_zero_term(&params, &genie) {
                Ok(r) => zero_term.record(r, || {
                    fail(
                        Some(genie),
                        r,
                        format!("{}: residual {r:.6e} bits", flavor.name()),
                    )
                }),
                Err(e) => zero_term.record(f64::NAN, || fail(Some(genie), f64::NAN, e.to_string())),
            }

            match chain_and_mac(&params, &genie) {
                Ok((mac_rel, chain_abs)) => {
                    mac.record(mac_rel, || {
                        fail(
                            Some(genie),
                            mac_rel,
                            format!("relative MAC mismatch {mac_rel:.3e}"),
                        )
                    });
                    chain.record(chain_abs, || {
                        fail(
                            Some(genie),
                            chain_abs,
                            format!("chain-rule mismatch {chain_abs:.3e} bits"),
                        )
                    });
                }
                Err(e) => {
                    mac.record(f64::NAN, || fail(Some(genie), f64::NAN, e.to_string()));
                    chain.record(f64::NAN, || fail(Some(genie), f64::NAN, e.to_string()));
                }
            }

            for side in Receiver::BOTH {
                for e in evaluate_side(&params, side) {
                    if let Some(g) = e.gap_bits() {
                        let r = (-g).max(0.0);
                        nonneg.record(r, || fail(None, r, format!("{} gap {g:e}", e.kind)));
                    }
                }
            }
        }

        let v = rng.gen_range(0.0..=10.0);
        let x = rng.gen_range(0.0..=0.99);
        let (lo, mid, hi) = taylor_sandwich(v, x);
        let r = (lo - mid).max(mid - hi).max(0.0);
        let params = ChannelParams::new(1.0, 0.0, v, 0.0).expect("v is finite");
        sandwich.record(r, || Failure {
            trial,
            params,
            genie: None,
            residual: r,
            detail: format!("v={v} x={x}: {lo} <= {mid} <= {hi} violated"),
        });
    }

    SuiteReport {
        config,
        checks: vec![oracle_eq, zero_term, mac, chain, nonneg, sandwich],
    }
}

/// `(relative MAC error, absolute chain-rule error)` for one genie system.
fn chain_and_mac(params: &ChannelParams, genie: &GenieConfig) -> Result<(f64, f64), OracleError> {
    let system = build_system(params, genie)?;
    let inputs = [var::X1, var::X2];
    let direct = mac_rate_oracle(&system)?;
    let mac = crate::bounds::mac_sum_rate(params, Receiver::One);
    let mac_rel = if mac == 0.0 {
        direct.abs()
    } else {
        (direct - mac).abs() / mac
    };
    let joint = conditional_mi(&system, &inputs, &[var::Y1, var::S1], &[])?;
    let side = conditional_mi(&system, &inputs, &[var::S1], &[var::Y1])?;
    Ok((mac_rel, (joint - direct - side).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = run_suite(SuiteConfig {
            trials: 50,
            seed: 3,
            ..SuiteConfig::default()
        });
        for c in &report.checks {
            assert!(c.passed(), "{} failed: {:?}", c.name, c.first_failure);
        }
        assert_eq!(report.check("oracle-equivalence").unwrap().cases, 100);
        assert_eq!(report.check("taylor-sandwich").unwrap().cases, 50);
    }

    #[test]
    fn deterministic_in_seed() {
        let cfg = SuiteConfig {
            trials: 20,
            seed: 11,
            ..SuiteConfig::default()
        };
        assert_eq!(run_suite(cfg), run_suite(cfg));
    }

    #[test]
    fn perturbation_breaks_zero_term() {
        let report = run_suite(SuiteConfig {
            trials: 5,
            seed: 1,
            perturb_etarho: 0.1,
            ..SuiteConfig::default()
        });
        assert!(!report.passed());
        let zero = report.check("zero-term").unwrap();
        assert!(zero.first_failure.is_some());
        assert!(zero.max_residual > 1e-4);
    }

    #[test]
    fn draws_stay_in_validity_regions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let p = draw_params(&mut rng, GenieFlavor::InterfererSignal);
            assert!(crate::bounds::bound_a(&p).is_applicable(), "{p}");
            let p = draw_params(&mut rng, GenieFlavor::CrossLinkSignal);
            assert!(crate::bounds::bound_b(&p).is_applicable(), "{p}");
        }
    }

    #[test]
    fn nan_residual_sticks() {
        let failure = || Failure {
            trial: 0,
            params: ChannelParams::new(1.0, 0.0, 1.0, 1.0).unwrap(),
            genie: None,
            residual: f64::NAN,
            detail: String::new(),
        };
        let mut c = CheckSummary::new("t", 1e-9);
        c.record(1e-12, failure);
        c.record(f64::NAN, failure);
        c.record(1e-10, failure);
        assert!(c.max_residual.is_nan());
        assert!(!c.passed());
        assert_eq!(c.cases, 3);
    }
}
