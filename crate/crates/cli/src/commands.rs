use std::fmt::Write as _;

use anyhow::{Context, Result};
use xbounds_core::verify::{run_suite, SuiteConfig};
use xbounds_core::{
    delta_threshold_a, delta_threshold_b, delta_threshold_c, in_r_delta, mac_sum_rate,
    sweep_curve_vs_a2, sweep_plane, sweep_point, threshold_curve_vs_p1, BoundKind, ChannelParams,
    DeltaError, Receiver, SweepConfig, SweepRow,
};

use crate::args::{CurveArgs, DeltaArgs, EvalArgs, SweepArgs, ThresholdsArgs, VerifyArgs};
use crate::number::{format_bool, format_float, format_opt, format_opt_bool};

/// Rendered command output. `passed` is false only for a failed verification.
pub struct Output {
    pub bytes: Vec<u8>,
    pub passed: bool,
}

impl Output {
    fn ok(bytes: Vec<u8>) -> Self {
        Output {
            bytes,
            passed: true,
        }
    }
}

fn join_kinds(kinds: &[BoundKind]) -> String {
    kinds
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn eval(args: &EvalArgs) -> Result<Output> {
    let (p1, p2) = args.powers.linear();
    let params = ChannelParams::new(args.a2, args.b2, p1, p2)?;
    let row = sweep_point(&params, args.delta)?;

    let mut out = String::new();
    writeln!(
        out,
        "params a2={} b2={} p1={} p2={}",
        format_float(params.a2()),
        format_float(params.b2()),
        format_float(p1),
        format_float(p2)
    )?;
    writeln!(out, "region {}", row.region)?;
    for side in Receiver::BOTH {
        writeln!(
            out,
            "r_mac {side} {}",
            format_float(mac_sum_rate(&params, side))
        )?;
    }
    writeln!(out, "kind side applicable value gap reason")?;
    for e in &row.bounds {
        writeln!(
            out,
            "{} {} {} {} {} {}",
            e.kind.tag,
            e.kind.side,
            format_bool(e.is_applicable()),
            e.value_bits()
                .map(format_float)
                .unwrap_or_else(|| "-".into()),
            e.gap_bits().map(format_float).unwrap_or_else(|| "-".into()),
            e.reason_text().unwrap_or("-"),
        )?;
    }
    match row.best {
        Some((kind, value)) => writeln!(out, "best {kind} {}", format_float(value))?,
        None => writeln!(out, "best none")?,
    }
    if let Some(delta) = args.delta {
        for side in Receiver::BOTH {
            if !params.in_region_of(side) {
                writeln!(
                    out,
                    "certificate {side} delta={} outside",
                    format_float(delta)
                )?;
                continue;
            }
            let cert = in_r_delta(&params, delta, side)?;
            writeln!(
                out,
                "certificate {side} delta={} member={} via {}",
                format_float(delta),
                format_bool(cert.member()),
                if cert.member() {
                    join_kinds(&cert.certifying_bounds)
                } else {
                    "-".into()
                },
            )?;
        }
    }
    Ok(Output::ok(out.into_bytes()))
}

pub fn delta(args: &DeltaArgs) -> Result<Output> {
    let (p1, p2) = args.powers.linear();
    let params = ChannelParams::new(args.a2, args.b2, p1, p2)?;
    let certs = [
        in_r_delta(&params, args.delta, Receiver::One)?,
        in_r_delta(&params, args.delta, Receiver::Two)?,
    ];

    let mut out = String::new();
    writeln!(out, "delta {}", format_float(args.delta))?;
    writeln!(out, "side bound condition threshold satisfied")?;
    for cert in &certs {
        let p = match cert.side {
            Receiver::One => params,
            Receiver::Two => params.mirror(),
        };
        let (strong, weak) = match cert.side {
            Receiver::One => ("a2", "b2"),
            Receiver::Two => ("b2", "a2"),
        };
        let thr_b = match delta_threshold_b(p.a2(), p.p2(), args.delta) {
            Ok(t) => Some(t),
            Err(DeltaError::StrongGainBelowOne(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let rows = [
            (strong, ">", Some(delta_threshold_a(p.p1(), args.delta)?)),
            (weak, "<", thr_b),
            (weak, "<", Some(delta_threshold_c(p.p1(), args.delta)?)),
        ];
        for (kind, (var, op, thr)) in BoundKind::all()
            .into_iter()
            .filter(|k| k.side == cert.side)
            .zip(rows)
        {
            writeln!(
                out,
                "{} {} {var}{op} {} {}",
                cert.side,
                kind.tag,
                thr.map(format_float).unwrap_or_else(|| "-".into()),
                format_bool(cert.certifying_bounds.contains(&kind)),
            )?;
        }
    }
    for cert in &certs {
        writeln!(
            out,
            "member {} {} via {}",
            cert.side,
            format_bool(cert.member()),
            if cert.member() {
                join_kinds(&cert.certifying_bounds)
            } else {
                "-".into()
            },
        )?;
    }
    Ok(Output::ok(out.into_bytes()))
}

/// Header of the sweep CSV.
pub fn sweep_header() -> Vec<String> {
    let mut cols: Vec<String> = ["a2", "b2", "region", "boundary"]
        .map(String::from)
        .to_vec();
    for kind in BoundKind::all() {
        for field in ["applicable", "value", "gap", "reason"] {
            cols.push(format!("{kind}_{field}"));
        }
    }
    cols.extend(
        [
            "best_kind",
            "best_value",
            "r_delta_member",
            "certifying_bounds",
        ]
        .map(String::from),
    );
    cols
}

fn sweep_record(row: &SweepRow) -> Vec<String> {
    let mut rec = vec![
        format_float(row.a2),
        format_float(row.b2),
        row.region.region.as_str().to_string(),
        format_bool(row.region.boundary).to_string(),
    ];
    for e in &row.bounds {
        rec.push(format_bool(e.is_applicable()).to_string());
        rec.push(format_opt(e.value_bits()));
        rec.push(format_opt(e.gap_bits()));
        rec.push(e.reason_text().unwrap_or_default().to_string());
    }
    rec.push(row.best.map(|(k, _)| k.to_string()).unwrap_or_default());
    rec.push(format_opt(row.best.map(|(_, v)| v)));
    rec.push(format_opt_bool(row.r_delta_member()).to_string());
    rec.push(
        row.certifying_bounds
            .as_deref()
            .map(join_kinds)
            .unwrap_or_default(),
    );
    rec
}

fn csv_bytes(header: &[String], records: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for rec in records {
        w.write_record(&rec)?;
    }
    w.into_inner().context("flushing CSV")
}

pub fn sweep(args: &SweepArgs) -> Result<Output> {
    let (p1, p2) = args.powers.linear();
    let config = SweepConfig {
        a2: args.a2.axis(args.log),
        b2: args.b2.axis(args.log),
        p1,
        p2,
        delta: args.delta,
    };
    let rows = sweep_plane(&config)?;
    Ok(Output::ok(csv_bytes(
        &sweep_header(),
        rows.map(|r| sweep_record(&r)),
    )?))
}

pub const CURVE_HEADER: [&str; 7] = [
    "a2",
    "mac_bits",
    "value_a",
    "value_c",
    "gap_a",
    "gap_c",
    "r_delta_member",
];

pub fn curve(args: &CurveArgs) -> Result<Output> {
    let (p1, p2) = args.powers.linear();
    let points = sweep_curve_vs_a2(p1, p2, args.b2, args.delta, &args.a2.axis(args.log))?;
    let records = points.map(|p| {
        vec![
            format_float(p.a2),
            format_float(p.mac_bits),
            format_opt(p.value_a),
            format_opt(p.value_c),
            format_opt(p.gap_a),
            format_opt(p.gap_c),
            format_opt_bool(p.r_delta_member).to_string(),
        ]
    });
    let header = CURVE_HEADER.map(String::from);
    Ok(Output::ok(csv_bytes(&header, records)?))
}

pub const THRESHOLDS_HEADER: [&str; 3] = ["p1", "delta", "a2_threshold"];

pub fn thresholds(args: &ThresholdsArgs) -> Result<Output> {
    let points = threshold_curve_vs_p1(&args.delta, &args.p1.axis(args.log))?;
    let records = points.iter().map(|p| {
        vec![
            format_float(p.p1),
            format_float(p.delta),
            format_float(p.a2_threshold),
        ]
    });
    let header = THRESHOLDS_HEADER.map(String::from);
    Ok(Output::ok(csv_bytes(&header, records)?))
}

pub fn verify(args: &VerifyArgs) -> Result<Output> {
    anyhow::ensure!(
        args.tolerance.is_finite() && args.tolerance > 0.0,
        "tolerance must be positive, got {}",
        args.tolerance
    );
    anyhow::ensure!(
        args.perturb_etarho.is_finite(),
        "perturbation must be finite, got {}",
        args.perturb_etarho
    );
    let report = run_suite(SuiteConfig {
        trials: usize::try_from(args.trials).context("trial count")?,
        seed: args.seed,
        tolerance: args.tolerance,
        perturb_etarho: args.perturb_etarho,
    });

    let mut out = String::new();
    writeln!(
        out,
        "verify trials={} seed={} tolerance={} perturb_etarho={}",
        args.trials,
        args.seed,
        format_float(args.tolerance),
        format_float(args.perturb_etarho)
    )?;
    writeln!(out, "check cases tolerance max_residual status")?;
    for c in &report.checks {
        writeln!(
            out,
            "{} {} {} {} {}",
            c.name,
            c.cases,
            format_float(c.tolerance),
            format_float(c.max_residual),
            if c.passed() { "PASS" } else { "FAIL" },
        )?;
    }
    for c in &report.checks {
        if let Some(f) = &c.first_failure {
            write!(
                out,
                "first failure {}: trial {} {}",
                c.name, f.trial, f.params
            )?;
            if let Some(g) = f.genie {
                write!(
                    out,
                    " flavor={} rho={} eta={}",
                    g.flavor().name(),
                    g.rho(),
                    g.eta()
                )?;
            }
            writeln!(out, " residual={} {}", f.residual, f.detail)?;
        }
    }
    let passed = report.passed();
    writeln!(out, "result {}", if passed { "PASS" } else { "FAIL" })?;
    Ok(Output {
        bytes: out.into_bytes(),
        passed,
    })
}
