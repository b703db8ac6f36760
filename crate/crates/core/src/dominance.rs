//! Closed-form conditions for which bound of side One is the tightest.
//!
//! With `s = P₁+1` and `c = a²P₂+1`:
//!
//! 1. `A < C` when `a² > s² + s/b²`
//! 2. `B < C` when `b² < (1/c)(1/c − a²P₂/P₁)`
//! 3. `B < A` when `b² < (1/c) / (1 + a²P₂(a² − s)/(P₁s))`
//!
//! Each condition is derived after dividing by `b²` and `P₁`, and only means
//! something where both compared bounds are applicable. Callers gate on that.

use crate::params::ChannelParams;

/// One closed-form comparison `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Predicate {
    pub holds: bool,
    /// `(rhs − lhs) / max(|lhs|, |rhs|)`: positive iff the predicate holds,
    /// its magnitude is the relative distance from the predicate's boundary.
    pub margin: f64,
}

impl Predicate {
    fn less_than(lhs: f64, rhs: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        let margin = if lhs == rhs {
            0.0
        } else if scale.is_infinite() {
            if lhs < rhs {
                1.0
            } else {
                -1.0
            }
        } else {
            (rhs - lhs) / scale
        };
        Self {
            holds: lhs < rhs,
            margin,
        }
    }

    fn vacuous() -> Self {
        Self {
            holds: false,
            margin: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dominance {
    pub a_below_c: Predicate,
    pub b_below_c: Predicate,
    pub b_below_a: Predicate,
    /// Set when `b² = 0` or `P₁ = 0`. The conditions are not defined there
    /// (the threshold in condition 1 is infinite for `b² = 0`) and the compared
    /// gaps tie wherever both exist. Every predicate is then reported false
    /// with zero margin.
    pub vacuous: bool,
}

pub fn dominance_predicates(params: &ChannelParams) -> Dominance {
    let (a2, b2, p1, p2) = (params.a2(), params.b2(), params.p1(), params.p2());
    if b2 == 0.0 || p1 == 0.0 {
        return Dominance {
            a_below_c: Predicate::vacuous(),
            b_below_c: Predicate::vacuous(),
            b_below_a: Predicate::vacuous(),
            vacuous: true,
        };
    }
    let s = p1 + 1.0;
    let c = a2 * p2 + 1.0;

    let a_below_c = Predicate::less_than(s * s + s / b2, a2);
    let b_below_c = Predicate::less_than(b2, (1.0 / c) * (1.0 / c - a2 * p2 / p1));
    let b_below_a = Predicate::less_than(b2, (1.0 / c) / (1.0 + a2 * p2 * (a2 - s) / (p1 * s)));
    Dominance {
        a_below_c,
        b_below_c,
        b_below_a,
        vacuous: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a2: f64, b2: f64, p1: f64, p2: f64) -> ChannelParams {
        ChannelParams::new(a2, b2, p1, p2).unwrap()
    }

    #[test]
    fn a_below_c_examples() {
        let d = dominance_predicates(&params(10.0, 0.5, 0.5, 0.5));
        assert!(d.a_below_c.holds);
        assert!(d.a_below_c.margin > 0.0);

        let d = dominance_predicates(&params(5.25, 0.5, 0.5, 0.5));
        assert!(!d.a_below_c.holds);
        assert_eq!(d.a_below_c.margin, 0.0);
    }

    #[test]
    fn zero_cross_gain_is_vacuous() {
        let d = dominance_predicates(&params(1e6, 0.0, 0.5, 0.5));
        assert!(d.vacuous);
        assert!(!d.a_below_c.holds && !d.b_below_c.holds && !d.b_below_a.holds);
    }

    #[test]
    fn b_below_c_needs_small_second_power() {
        // a²P₂/P₁ larger than 1/c makes the right-hand side negative.
        let d = dominance_predicates(&params(4.0, 0.01, 1.0, 0.5));
        assert!(!d.b_below_c.holds);
        let d = dominance_predicates(&params(1.5, 0.01, 1.0, 0.01));
        assert!(d.b_below_c.holds);
    }
}
