//! δ-thresholds checked against bisection on the forward gap.

use xbounds_core::{
    bound_a, bound_b, bound_c, delta_threshold_a, delta_threshold_b, delta_threshold_c,
    ChannelParams,
};

/// Root of a decreasing (or increasing) `f(x) = target` on `[lo, hi]`.
fn bisect(mut lo: f64, mut hi: f64, target: f64, f: impl Fn(f64) -> f64) -> f64 {
    let increasing = f(hi) > f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn threshold_a_matches_bisection() {
    for (p1, delta) in [(0.5, 0.2), (1.0, 0.1), (3.0, 0.5), (0.1, 0.05), (10.0, 1.0)] {
        let s: f64 = p1 + 1.0;
        let gap = |a2: f64| {
            bound_a(&ChannelParams::new(a2, 0.5, p1, 1.0).unwrap())
                .gap_bits()
                .unwrap()
        };
        let root = bisect(s * s * (1.0 + 1e-9), 1e9, delta, gap);
        let thr = delta_threshold_a(p1, delta).unwrap();
        assert!(
            ((root - thr) / thr).abs() < 1e-6,
            "p1={p1} delta={delta}: {root} vs {thr}"
        );
    }
}

#[test]
fn threshold_b_matches_bisection() {
    for (a2, p2, delta) in [
        (1.0, 0.5, 0.2),
        (4.0, 0.5, 0.1),
        (2.0, 3.0, 0.5),
        (10.0, 0.1, 0.05),
    ] {
        let c: f64 = a2 * p2 + 1.0;
        let gap = |b2: f64| {
            bound_b(&ChannelParams::new(a2, b2, 1.0, p2).unwrap())
                .gap_bits()
                .unwrap()
        };
        let root = bisect(0.0, (1.0 - 1e-9) / (c * c), delta, gap);
        let thr = delta_threshold_b(a2, p2, delta).unwrap();
        assert!(
            ((root - thr) / thr).abs() < 1e-6,
            "a2={a2}: {root} vs {thr}"
        );
    }
}

#[test]
fn threshold_c_inverts_gap() {
    for (p1, delta) in [(0.5, 0.2), (1.0, 0.5), (4.0, 0.05)] {
        let thr = delta_threshold_c(p1, delta).unwrap();
        let gap = bound_c(&ChannelParams::new(2.0, thr, p1, 1.0).unwrap())
            .gap_bits()
            .unwrap();
        assert!((gap - delta).abs() < 1e-14, "{gap} vs {delta}");
    }
}

#[test]
fn threshold_a_is_monotone() {
    for delta in [0.05, 0.1, 0.2, 0.5, 1.0] {
        let mut last = 0.0;
        for i in 0..=100 {
            let t = delta_threshold_a(i as f64 * 0.1, delta).unwrap();
            assert!(t > last);
            last = t;
        }
    }
    for i in 0..=100 {
        let p1 = i as f64 * 0.1;
        let mut last = f64::INFINITY;
        for delta in [0.05, 0.1, 0.2, 0.5, 1.0] {
            let t = delta_threshold_a(p1, delta).unwrap();
            assert!(t < last || (p1 == 0.0 && t == 1.0));
            last = t;
        }
    }
}
