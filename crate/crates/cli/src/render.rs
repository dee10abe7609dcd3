use serde::{Deserialize, Serialize};

use crate::config::Format;

/// One output row of `zeros`. The JSON form carries exactly these nine
/// fields; `flag` only shows up in table and CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub kind: String,
    pub lambda: f64,
    pub eta: f64,
    pub n: u32,
    pub terms: usize,
    pub rho_mc: Option<f64>,
    pub rho_refined: Option<f64>,
    pub residual: Option<f64>,
    pub rel_error: Option<f64>,
    #[serde(skip)]
    pub flag: Option<String>,
}

/// `x` with `digits` significant digits in positional notation.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Two significant digits in scientific notation, as in `6.8e-4`.
pub fn fmt_err(x: f64) -> String {
    format!("{x:.1e}")
}

fn opt(x: Option<f64>, f: impl Fn(f64) -> String) -> String {
    x.map(f).unwrap_or_default()
}

pub fn render_rows(rows: &[Row], format: Format, refined: bool) -> String {
    match format {
        Format::Table => render_table(rows, refined),
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
    }
}

fn render_table(rows: &[Row], refined: bool) -> String {
    let mut header = vec!["n", "rho_mc"];
    if refined {
        header.extend(["rho_refined", "rel_error"]);
    }
    let mut cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut line = vec![r.n.to_string(), opt(r.rho_mc, |x| fmt_sig(x, 16))];
            if refined {
                line.push(opt(r.rho_refined, |x| fmt_sig(x, 16)));
                line.push(opt(r.rel_error, fmt_err));
            }
            if let Some(flag) = &r.flag {
                line.push(format!("! {flag}"));
            }
            line
        })
        .collect();
    cells.insert(0, header.iter().map(|s| s.to_string()).collect());

    let columns = header.len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            cells
                .iter()
                .filter_map(|l| l.get(c))
                .map(|s| s.len())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in &cells {
        let mut parts = Vec::new();
        for (c, cell) in line.iter().enumerate() {
            if c == 0 {
                parts.push(format!("{cell:>w$}", w = widths[0]));
            } else if c < columns {
                parts.push(format!("{cell:<w$}", w = widths[c]));
            } else {
                parts.push(cell.clone());
            }
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "kind",
        "lambda",
        "eta",
        "n",
        "terms",
        "rho_mc",
        "rho_refined",
        "residual",
        "rel_error",
        "flag",
    ])
    .expect("writing to memory");
    for r in rows {
        w.write_record([
            r.kind.clone(),
            r.lambda.to_string(),
            r.eta.to_string(),
            r.n.to_string(),
            r.terms.to_string(),
            opt(r.rho_mc, |x| fmt_sig(x, 16)),
            opt(r.rho_refined, |x| fmt_sig(x, 16)),
            opt(r.residual, fmt_err),
            opt(r.rel_error, fmt_err),
            r.flag.clone().unwrap_or_default(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

fn render_json(rows: &[Row]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn parse_json_rows(text: &str) -> serde_json::Result<Vec<Row>> {
    serde_json::from_str(text)
}

/// Left-aligned text table with a header row.
pub fn simple_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let mut s = parts.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
