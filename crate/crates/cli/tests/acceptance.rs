//! Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary (`harness = false`).

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coulomb_zeros::refine::{self, MinN};
use coulomb_zeros::{mcmahon, oracle, Kind, Params};
use coulomb_zeros_cli::{compute_rows, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Published refined zeros and 2-digit relative errors at (λ, η) = (1.3, 2.1).
const TABLES: [(Kind, [(f64, f64); 10]); 4] = [
    (
        Kind::F,
        [
            (9.276226087098264, 6.8e-4),
            (13.32061436693835, 5.3e-5),
            (17.04925305758087, 9.0e-6),
            (20.63316305105047, 2.3e-6),
            (24.13196399208639, 7.5e-7),
            (27.57414717920683, 2.9e-7),
            (30.97572598757761, 1.3e-7),
            (34.34666006955555, 6.1e-8),
            (37.69359261174668, 3.2e-8),
            (41.02118854245900, 1.7e-8),
        ],
    ),
    (
        Kind::G,
        [
            (6.925107084382577, 4.9e-3),
            (11.35971565567721, 1.6e-4),
            (15.20913702648054, 2.0e-5),
            (18.85445602183751, 4.3e-6),
            (22.39100849194709, 1.2e-6),
            (25.85894221100473, 4.6e-7),
            (29.27928968958546, 1.9e-7),
            (32.66455053595783, 8.7e-8),
            (36.02279903910762, 4.3e-8),
            (39.35957112638164, 2.3e-8),
        ],
    ),
    (
        Kind::DF,
        [
            (6.740012285516214, 2.0e-2),
            (11.33586159146655, 4.5e-4),
            (15.19947063325694, 5.3e-5),
            (18.84912765706333, 1.1e-5),
            (22.38760195810186, 3.2e-6),
            (25.85656409550572, 1.1e-6),
            (29.27752955366132, 4.6e-7),
            (32.66319220425298, 2.1e-7),
            (36.02171734983164, 1.0e-7),
            (39.35868838281058, 5.5e-8),
        ],
    ),
    (
        Kind::DG,
        [
            (9.226939712774167, 2.0e-3),
            (13.30627800305222, 1.4e-4),
            (17.04225058479286, 2.3e-5),
            (20.62896049608348, 5.7e-6),
            (24.12914248690917, 1.8e-6),
            (27.57211363372210, 7.0e-7),
            (30.97418664616960, 3.1e-7),
            (34.34545207910902, 1.4e-7),
            (37.69261810059473, 7.5e-8),
            (41.02038500317911, 4.1e-8),
        ],
    ),
];

/// Refined zeros of F₀(η, ρ) as printed, which cut digits off rather than
/// rounding: (η, n, printed).
const F0_ZEROS: [(f64, u32, &str); 8] = [
    (1.5, 2, "10.97335"),
    (1.5, 3, "14.566335"),
    (2.0, 2, "12.4052"),
    (2.0, 3, "16.11044"),
    (2.5, 2, "13.7879"),
    (2.5, 3, "17.5953"),
    (3.0, 2, "15.1335"),
    (3.0, 3, "19.0352"),
];

type Criterion = fn() -> Result<String, String>;

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, id: &str, title: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => println!("PASS {id} {title}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL {id} {title}: {detail}");
            }
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// True when `a` and `b` agree to `digits` significant digits, meaning
/// within half a unit of the last such digit of `b`.
fn agrees_to_digits(a: f64, b: f64, digits: i32) -> bool {
    let e = b.abs().log10().floor() as i32;
    (a - b).abs() <= 0.5 * 10f64.powi(e - digits + 1)
}

fn params(lambda: f64, eta: f64) -> Params {
    Params::new(lambda, eta).expect("valid parameters")
}

fn table_check(kind: Kind, table: &[(f64, f64); 10]) -> Result<String, String> {
    let mut cfg = RunConfig::new(kind, 1.3, 2.1, 1, 10);
    cfg.refine = true;
    let start = Instant::now();
    let rows = compute_rows(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut worst_digits = 0.0f64;
    let mut worst_ratio = 1.0f64;
    for (row, &(refined, err)) in rows.iter().zip(table) {
        let n = row.n;
        let got = row
            .rho_refined
            .ok_or_else(|| format!("n={n} flagged: {:?}", row.flag))?;
        let rel_err = row.rel_error.expect("refined rows carry an error");
        check(agrees_to_digits(got, refined, 14), || {
            format!("n={n}: refined {got} vs printed {refined}")
        })?;
        let ratio = rel_err / err;
        check((1.0 / 1.5..=1.5).contains(&ratio), || {
            format!("n={n}: rel error {rel_err:.2e} vs printed {err:.1e}")
        })?;
        worst_digits = worst_digits.max((got - refined).abs() / refined);
        worst_ratio = worst_ratio.max(ratio.max(1.0 / ratio));
    }
    check(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "10 zeros, max rel deviation {worst_digits:.1e}, worst error ratio {worst_ratio:.2}, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn ac1() -> Result<String, String> {
    table_check(TABLES[0].0, &TABLES[0].1)
}

fn ac2() -> Result<String, String> {
    let mut parts = Vec::new();
    for (kind, table) in &TABLES[1..] {
        let detail = table_check(*kind, table).map_err(|e| format!("{kind}: {e}"))?;
        parts.push(format!("{kind} [{detail}]"));
    }
    Ok(parts.join("; "))
}

fn truncate(x: f64, decimals: usize) -> String {
    let s = format!("{x:.12}");
    let dot = s.find('.').expect("has a decimal point");
    s[..dot + 1 + decimals].to_string()
}

fn ac3() -> Result<String, String> {
    let mut worst = 0.0f64;
    for &(eta, n, printed) in &F0_ZEROS {
        let p = params(0.0, eta);
        let rec = refine::zero_record(p, Kind::F, n, 6).map_err(|e| e.to_string())?;
        let decimals = printed.split_once('.').unwrap().1.len();
        let ours = truncate(rec.rho_refined, decimals);
        check(ours == printed, || {
            format!(
                "eta={eta} n={n}: {} prints as {ours}, table has {printed}",
                rec.rho_refined
            )
        })?;
        let start = mcmahon::rho0(p, Kind::F, n).map_err(|e| e.to_string())?;
        let ab = mcmahon::abramowitz_iterate(p, n, start, 8).map_err(|e| e.to_string())?;
        check(agrees_to_digits(ab, rec.rho_refined, 6), || {
            format!(
                "eta={eta} n={n}: iteration {ab} vs refined {}",
                rec.rho_refined
            )
        })?;
        worst = worst.max((ab - rec.rho_refined).abs() / rec.rho_refined);
    }
    Ok(format!(
        "8 zeros match printed digits; 8-sweep iteration within {worst:.1e} relative"
    ))
}

fn ac4() -> Result<String, String> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let lambda = -0.5 + 5.5 * i as f64 / 9.0;
            let eta = -5.0 + 10.0 * j as f64 / 9.0;
            let p = params(lambda, eta);
            for (kind, partner) in [(Kind::F, Kind::G), (Kind::DF, Kind::DG)] {
                let eps = mcmahon::derive_eps(p, kind, 6).map_err(|e| e.to_string())?;
                let other = mcmahon::derive_eps(p, partner, 6).map_err(|e| e.to_string())?;
                check(eps == other, || {
                    format!("lambda={lambda} eta={eta}: {kind} and {partner} coefficients differ")
                })?;
                let closed = mcmahon::closed_form_eps(p, kind);
                for k in 0..3 {
                    let rel = (eps[k] - closed[k]).abs() / closed[k].abs();
                    worst = worst.max(rel);
                    check(rel <= 1e-12, || {
                        format!(
                            "lambda={lambda} eta={eta} {kind} k={}: {} vs {}",
                            k + 1,
                            eps[k],
                            closed[k]
                        )
                    })?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "100 grid points, max rel difference {worst:.1e}, {:.3} s",
        elapsed.as_secs_f64()
    ))
}

fn ac5() -> Result<String, String> {
    let p = params(2.0, 1.5);
    let first = mcmahon::expansion(p, Kind::F, 1, 12).map_err(|e| e.to_string())?;
    let tenth = mcmahon::expansion(p, Kind::F, 10, 12).map_err(|e| e.to_string())?;
    let f_at = |exp: &mcmahon::Expansion| -> Result<f64, String> {
        let rho = exp.value(3).map_err(|e| e.to_string())?;
        oracle::eval_f(p, rho)
            .map(|(f, _)| f)
            .map_err(|e| e.to_string())
    };
    let (f1, f10) = (f_at(&first)?, f_at(&tenth)?);
    check((first.rho0 - 9.186).abs() <= 1e-3, || {
        format!("rho0(n=1) = {}", first.rho0)
    })?;
    check((f1 + 0.0269).abs() <= 5e-4, || format!("F(rho_1) = {f1}"))?;
    check((tenth.rho0 - 39.65).abs() <= 1e-2, || {
        format!("rho0(n=10) = {}", tenth.rho0)
    })?;
    check((f10 - 5.30e-5).abs() <= 2e-6, || {
        format!("F(rho_10) = {f10}")
    })?;
    Ok(format!(
        "rho0 = {:.6}, F = {f1:.6}; rho0 = {:.6}, F = {f10:.4e}",
        first.rho0, tenth.rho0
    ))
}

fn ac6() -> Result<String, String> {
    let p = params(0.0, 0.0);
    let mut worst_zero = 0.0f64;
    for n in 1..=20u32 {
        for (kind, want) in [(Kind::F, n as f64 * PI), (Kind::G, (n as f64 - 0.5) * PI)] {
            let z = mcmahon::mcmahon_zero(p, kind, n, 6).map_err(|e| e.to_string())?;
            let rel = (z - want).abs() / want;
            worst_zero = worst_zero.max(rel);
            check(rel <= 1e-13, || format!("{kind} n={n}: {z} vs {want}"))?;
        }
    }
    let mut worst_eval = 0.0f64;
    let mut rho = 1e-3;
    while rho <= 60.0 {
        let s = oracle::eval(p, rho).map_err(|e| e.to_string())?;
        let (sn, cs) = rho.sin_cos();
        let dev = (s.f - sn)
            .abs()
            .max((s.df - cs).abs())
            .max((s.g - cs).abs())
            .max((s.dg + sn).abs());
        worst_eval = worst_eval.max(dev);
        check(dev <= 1e-13, || format!("rho={rho}: deviation {dev:e}"))?;
        rho += 0.0997;
    }
    Ok(format!(
        "zeros within {worst_zero:.1e}, oracle within {worst_eval:.1e} on (0, 60]"
    ))
}

fn ac7() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1948);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let lambda: f64 = rng.gen_range(-0.5..5.0);
        let p = params(lambda, 0.0);
        for n in [1u32, 5, 12] {
            let rho0 = mcmahon::rho0(p, Kind::F, n).map_err(|e| e.to_string())?;
            let want = (0.5 * lambda + n as f64) * PI;
            let rel = (rho0 - want).abs() / want;
            worst = worst.max(rel);
            check(rel <= 1e-13, || {
                format!("lambda={lambda} n={n}: rho0 {rho0} vs {want}")
            })?;
        }
        let eps1 = mcmahon::derive_eps(p, Kind::F, 3).map_err(|e| e.to_string())?[0];
        let want = -(lambda * lambda + lambda) / 2.0;
        check((eps1 - want).abs() <= 1e-13 * want.abs().max(1.0), || {
            format!("lambda={lambda}: eps1 {eps1} vs {want}")
        })?;
    }
    Ok(format!(
        "20 random orders, rho0 within {worst:.1e}, eps1 exact"
    ))
}

fn ac8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2010);
    let mut worst_w = 0.0f64;
    for _ in 0..20 {
        let p = params(rng.gen_range(-0.9..50.0), rng.gen_range(-50.0..50.0));
        for rho in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0] {
            let s = oracle::eval(p, rho).map_err(|e| e.to_string())?;
            let dev = (s.wronskian() - 1.0).abs();
            worst_w = worst_w.max(dev);
            check(dev <= 1e-10, || {
                format!(
                    "lambda={} eta={} rho={rho}: |W-1| = {dev:e}",
                    p.lambda(),
                    p.eta()
                )
            })?;
        }
    }
    let mut worst_rt = 0.0f64;
    for _ in 0..10 {
        let p = params(rng.gen_range(-0.5..5.0), rng.gen_range(-5.0..5.0));
        let start = oracle::eval_f(p, 5.0).map_err(|e| e.to_string())?;
        let out = oracle::integrate_ode(p, 5.0, start, 40.0).map_err(|e| e.to_string())?;
        let back = oracle::integrate_ode(p, 40.0, out, 5.0).map_err(|e| e.to_string())?;
        let scale = start.0.abs().max(start.1.abs());
        let dev = (back.0 - start.0).abs().max((back.1 - start.1).abs()) / scale;
        worst_rt = worst_rt.max(dev);
        check(dev <= 1e-12, || {
            format!(
                "lambda={} eta={}: round trip off by {dev:e}",
                p.lambda(),
                p.eta()
            )
        })?;
    }
    let p = params(1.3, 2.1);
    for kind in Kind::ALL {
        refine::verify_index(p, kind, 10).map_err(|e| format!("{kind}: {e}"))?;
    }
    Ok(format!(
        "max |W-1| {worst_w:.1e} over 160 points, round trip {worst_rt:.1e}, indices verified for F, G, dF, dG"
    ))
}

fn ac9() -> Result<String, String> {
    let p = params(1.3, 2.1);
    let f = refine::min_n_for_accuracy(p, Kind::F, 1e-6, 6, 40).map_err(|e| e.to_string())?;
    let g = refine::min_n_for_accuracy(p, Kind::G, 1e-6, 6, 40).map_err(|e| e.to_string())?;
    check(f == MinN::Found(5), || format!("F gives {f:?}"))?;
    check(g == MinN::Found(6), || format!("G gives {g:?}"))?;
    Ok("min n = 5 for F and 6 for G".into())
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let criteria: [(&str, &str, Criterion); 9] = [
        ("AC1", "zeros of F at (1.3, 2.1)", ac1),
        ("AC2", "zeros of G, F', G' at (1.3, 2.1)", ac2),
        ("AC3", "zeros of F_0 and the Abramowitz iteration", ac3),
        ("AC4", "closed-form coefficients", ac4),
        ("AC5", "spot values at (2, 1.5)", ac5),
        ("AC6", "trivial parameters", ac6),
        ("AC7", "uncharged (Bessel) limit", ac7),
        ("AC8", "oracle integrity", ac8),
        ("AC9", "minimum index for 1e-6 accuracy", ac9),
    ];
    for (id, title, run) in criteria {
        report.record(id, title, run());
    }
    if report.failures == 0 {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 9 criteria fail", report.failures);
        ExitCode::FAILURE
    }
}
