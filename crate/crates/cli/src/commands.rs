use rayon::prelude::*;

use coulomb_zeros::refine::{self, MinN};
use coulomb_zeros::{mcmahon, Kind, Params};

use crate::config::{validate_params, CliError, Method, RunConfig, ABRAMOWITZ_SWEEPS};
use crate::render::{fmt_err, render_rows, simple_table, Row};

/// Rendered output of a command, and whether any row was flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub flagged: bool,
    /// One line per flagged row, for stderr.
    pub warnings: Vec<String>,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.flagged {
            2
        } else {
            0
        }
    }
}

fn row_for(cfg: &RunConfig, params: Params, n: u32) -> Row {
    let mut row = Row {
        kind: cfg.kind.to_string(),
        lambda: cfg.lambda,
        eta: cfg.eta,
        n,
        terms: cfg.terms,
        rho_mc: None,
        rho_refined: None,
        residual: None,
        rel_error: None,
        flag: None,
    };
    let approx = match cfg.method {
        Method::Mcmahon => mcmahon::mcmahon_zero(params, cfg.kind, n, cfg.terms),
        Method::Abramowitz => mcmahon::rho0(params, Kind::F, n)
            .and_then(|start| mcmahon::abramowitz_iterate(params, n, start, ABRAMOWITZ_SWEEPS)),
    };
    let rho_mc = match approx {
        Ok(x) => x,
        Err(e) => {
            row.flag = Some(e.to_string());
            return row;
        }
    };
    row.rho_mc = Some(rho_mc);
    if cfg.refine {
        match refine::refine(params, cfg.kind, rho_mc) {
            Ok(z) => {
                row.rho_refined = Some(z.rho);
                row.residual = Some(z.residual);
                row.rel_error = Some((rho_mc - z.rho).abs() / z.rho);
            }
            Err(e) => row.flag = Some(format!("refinement failed: {e}")),
        }
    }
    row
}

/// Rows for `cfg`, computed in parallel and returned in n order.
pub fn compute_rows(cfg: &RunConfig) -> Result<Vec<Row>, CliError> {
    let params = cfg.validate()?;
    Ok((cfg.n_start..=cfg.n_end)
        .into_par_iter()
        .map(|n| row_for(cfg, params, n))
        .collect())
}

pub fn cmd_zeros(cfg: &RunConfig) -> Result<Output, CliError> {
    let rows = compute_rows(cfg)?;
    let warnings: Vec<String> = rows
        .iter()
        .filter_map(|r| r.flag.as_ref().map(|f| format!("n = {}: {f}", r.n)))
        .collect();
    Ok(Output {
        text: render_rows(&rows, cfg.format, cfg.refine),
        flagged: !warnings.is_empty(),
        warnings,
    })
}

/// ε₁..ε_order beside the closed forms for k ≤ 3.
pub fn cmd_eps(lambda: f64, eta: f64, kind: Kind, order: usize) -> Result<Output, CliError> {
    let params = validate_params(lambda, eta)?;
    if !(1..=mcmahon::MAX_ORDER).contains(&order) {
        return Err(CliError::Validation(format!(
            "order must lie in 1..={} (got {order})",
            mcmahon::MAX_ORDER
        )));
    }
    let eps =
        mcmahon::derive_eps(params, kind, order).map_err(|e| CliError::Numerical(e.to_string()))?;
    let closed = mcmahon::closed_form_eps(params, kind);
    let rows: Vec<Vec<String>> = eps
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let (c, d) = match closed.get(i) {
                Some(&c) => (format!("{c:.16e}"), format!("{:.1e}", e - c)),
                None => ("-".into(), "-".into()),
            };
            vec![(i + 1).to_string(), format!("{e:.16e}"), c, d]
        })
        .collect();
    Ok(Output {
        text: simple_table(&["k", "eps_k", "closed_form", "difference"], &rows),
        flagged: false,
        warnings: Vec::new(),
    })
}

/// CSV of the smallest accurate n for each η of the grid.
pub fn cmd_study_min_n(
    lambda: f64,
    etas: &[f64],
    kind: Kind,
    tol: f64,
    terms: usize,
    n_cap: u32,
) -> Result<Output, CliError> {
    if etas.is_empty() {
        return Err(CliError::Validation("empty eta grid".into()));
    }
    let params: Vec<Params> = etas
        .iter()
        .map(|&eta| validate_params(lambda, eta))
        .collect::<Result<_, _>>()?;
    if !(tol > 0.0) {
        return Err(CliError::Validation(format!(
            "tolerance must be positive (got {tol})"
        )));
    }
    if !(1..=crate::config::MAX_TERMS).contains(&terms) {
        return Err(CliError::Validation(format!(
            "terms must lie in 1..=12 (got {terms})"
        )));
    }
    let results: Vec<Result<MinN, String>> = params
        .par_iter()
        .map(|&p| refine::min_n_for_accuracy(p, kind, tol, terms, n_cap).map_err(|e| e.to_string()))
        .collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["eta", "min_n", "flag"])
        .expect("writing to memory");
    let mut warnings = Vec::new();
    for (&eta, res) in etas.iter().zip(&results) {
        let (min_n, flag) = match res {
            Ok(MinN::Found(n)) => (n.to_string(), String::new()),
            Ok(MinN::CapReached) => (String::new(), format!("cap {n_cap} reached")),
            Err(e) => (String::new(), e.clone()),
        };
        if !flag.is_empty() {
            warnings.push(format!("eta = {eta}: {flag}"));
        }
        w.write_record([eta.to_string(), min_n, flag])
            .expect("writing to memory");
    }
    let body = String::from_utf8(w.into_inner().expect("flush to memory")).expect("UTF-8");
    Ok(Output {
        text: format!(
            "# lambda = {lambda}, kind = {kind}, tol = {}, terms = {terms}\n{body}",
            fmt_err(tol)
        ),
        flagged: !warnings.is_empty(),
        warnings,
    })
}

/// Zeros of F₀(η, ρ) from Abramowitz's 1948 table of Coulomb function
/// zeros, as (η, n, printed value). Some last digits are off.
pub const ABRAMOWITZ_1948: [(f64, u32, &str); 8] = [
    (1.5, 2, "10.974"),
    (1.5, 3, "14.567"),
    (2.0, 2, "12.403"),
    (2.0, 3, "16.110"),
    (2.5, 2, "13.786"),
    (2.5, 3, "17.596"),
    (3.0, 2, "15.130"),
    (3.0, 3, "19.033"),
];

/// Number of decimals written in a printed value.
fn decimals(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, d)| d.len())
}

/// Difference in units of the last printed digit between `printed` and
/// `value` rounded to the same number of decimals.
pub fn last_digit_difference(printed: &str, value: f64) -> i64 {
    let d = decimals(printed) as i32;
    let scale = 10f64.powi(d);
    let p: f64 = printed.parse().expect("reference values are numbers");
    ((value * scale).round() - (p * scale).round()) as i64
}

/// Three rows per (η, n): the 1948 value, our McMahon value and our
/// refined value, with a note where the 1948 digits disagree.
pub fn cmd_abramowitz_table() -> Result<Output, CliError> {
    let computed: Vec<Result<(f64, f64), String>> = ABRAMOWITZ_1948
        .par_iter()
        .map(|&(eta, n, _)| {
            let p = Params::new(0.0, eta).map_err(|e| e.to_string())?;
            let rec = refine::zero_record(p, Kind::F, n, coulomb_zeros::DEFAULT_TERMS)
                .map_err(|e| e.to_string())?;
            Ok((rec.rho_mc, rec.rho_refined))
        })
        .collect();

    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for (&(eta, n, printed), res) in ABRAMOWITZ_1948.iter().zip(&computed) {
        let (eta_s, n_s) = (eta.to_string(), n.to_string());
        match res {
            Ok((mc, refined)) => {
                let diff = last_digit_difference(printed, *refined);
                let note = match diff {
                    0 => String::new(),
                    d => format!("last digit off by {d:+}"),
                };
                rows.push(vec![
                    eta_s.clone(),
                    n_s.clone(),
                    "(1)".into(),
                    printed.into(),
                    note,
                ]);
                rows.push(vec![
                    eta_s.clone(),
                    n_s.clone(),
                    "(2)".into(),
                    format!("{mc:.8}"),
                    String::new(),
                ]);
                rows.push(vec![
                    eta_s,
                    n_s,
                    "(3)".into(),
                    format!("{refined:.8}"),
                    String::new(),
                ]);
            }
            Err(e) => {
                warnings.push(format!("eta = {eta}, n = {n}: {e}"));
                rows.push(vec![eta_s, n_s, "-".into(), String::new(), e.clone()]);
            }
        }
    }
    Ok(Output {
        text: simple_table(&["eta", "n", "row", "value", "note"], &rows),
        flagged: !warnings.is_empty(),
        warnings,
    })
}
