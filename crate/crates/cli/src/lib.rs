//! Output assembly for the `berger-eta` binary: table rows, the markdown,
//! CSV, and JSON renderings, the verify report text, and the golden-fixture
//! format. Kept in a library target so the integration tests exercise the
//! exact same serialization the binary ships.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use berger_eta::{GoldenTables, Rational, VerificationReport};

/// One output row of the coefficient table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub dim: u32,
    pub n: u32,
    pub c: Rational,
    pub eta: Rational,
    pub zeta: Option<Rational>,
}

/// Rows for the given report, with eta evaluated at `rho`. Odd orders carry
/// identically zero coefficients and are skipped unless requested.
pub fn table_rows(report: &VerificationReport, rho: &Rational, include_odd: bool) -> Vec<TableRow> {
    report
        .coefficients
        .iter()
        .filter(|c| include_odd || c.n % 2 == 0)
        .map(|c| {
            let power = rho.pow_int(i64::from(c.n)).expect("positive exponent");
            TableRow {
                dim: c.dim,
                n: c.n,
                c: c.c_weingart.clone(),
                eta: &c.c_weingart * &power,
                zeta: c.anomaly.clone(),
            }
        })
        .collect()
}

fn optional(value: &Option<Rational>) -> String {
    value.as_ref().map(Rational::to_string).unwrap_or_default()
}

/// The fixed markdown layout; snapshot tests compare it byte for byte.
pub fn render_markdown(rows: &[TableRow]) -> String {
    let mut out = String::from("| dim | n | c | eta | zeta |\n|---|---|---|---|---|\n");
    for row in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            row.dim,
            row.n,
            row.c,
            row.eta,
            optional(&row.zeta)
        ));
    }
    out
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("dim,n,c,eta,zeta\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.dim,
            row.n,
            row.c,
            row.eta,
            optional(&row.zeta)
        ));
    }
    out
}

/// The machine-readable document. Field order here fixes the JSON key
/// order, which makes the output byte-stable under a parse/re-serialize
/// round trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDocument {
    pub max_n: u32,
    pub rho: String,
    pub rows: Vec<JsonRow>,
    pub verification: JsonVerification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub dim: u32,
    pub n: u32,
    pub c: String,
    pub eta: String,
    pub zeta: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVerification {
    pub routes_ok: bool,
    pub homogeneity_ok: bool,
    pub golden_c_ok: bool,
    pub golden_zeta_ok: bool,
    pub golden_c_matched: usize,
    pub golden_c_checked: usize,
    pub golden_zeta_matched: usize,
    pub golden_zeta_checked: usize,
    pub first_failure: Option<String>,
}

pub fn document(
    max_n: u32,
    rho: &Rational,
    rows: &[TableRow],
    report: &VerificationReport,
) -> JsonDocument {
    JsonDocument {
        max_n,
        rho: rho.to_string(),
        rows: rows
            .iter()
            .map(|row| JsonRow {
                dim: row.dim,
                n: row.n,
                c: row.c.to_string(),
                eta: row.eta.to_string(),
                zeta: row.zeta.as_ref().map(Rational::to_string),
            })
            .collect(),
        verification: JsonVerification {
            routes_ok: report.routes_ok,
            homogeneity_ok: report.homogeneity_ok,
            golden_c_ok: report.golden_c_ok,
            golden_zeta_ok: report.golden_zeta_ok,
            golden_c_matched: report.golden_c_matched,
            golden_c_checked: report.golden_c_checked,
            golden_zeta_matched: report.golden_zeta_matched,
            golden_zeta_checked: report.golden_zeta_checked,
            first_failure: report.first_failure.clone(),
        },
    }
}

pub fn render_json<T: Serialize>(document: &T) -> String {
    serde_json::to_string_pretty(document).expect("documents always serialize")
}

/// The anomaly listing restricted to the zeta column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAnomalyDocument {
    pub max_n: u32,
    pub rows: Vec<JsonAnomalyRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAnomalyRow {
    pub n: u32,
    pub zeta: String,
}

pub fn render_anomaly_markdown(rows: &[(u32, Rational)]) -> String {
    let mut out = String::from("| n | zeta |\n|---|---|\n");
    for (n, zeta) in rows {
        out.push_str(&format!("| {n} | {zeta} |\n"));
    }
    out
}

pub fn render_anomaly_csv(rows: &[(u32, Rational)]) -> String {
    let mut out = String::from("n,zeta\n");
    for (n, zeta) in rows {
        out.push_str(&format!("{n},{zeta}\n"));
    }
    out
}

/// The plain-text verify report. The summary lines are part of the CLI
/// contract; tests match on them.
pub fn render_verify_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.coefficients {
        let status = if c.agreed {
            "routes agree"
        } else {
            "ROUTES DISAGREE"
        };
        out.push_str(&format!(
            "n = {} (dim {}): c = {}, {}\n",
            c.n, c.dim, c.c_weingart, status
        ));
    }
    if report.routes_ok {
        out.push_str(&format!("routes agree for all n <= {}\n", report.max_n));
    }
    out.push_str(&format!(
        "{}/{} golden c-values match, {}/{} zeta values match\n",
        report.golden_c_matched,
        report.golden_c_checked,
        report.golden_zeta_matched,
        report.golden_zeta_checked
    ));
    if report.homogeneity_ok {
        let samples: Vec<String> = report.rho_samples.iter().map(Rational::to_string).collect();
        out.push_str(&format!(
            "homogeneity holds at rho in {{{}}}\n",
            samples.join(", ")
        ));
    }
    if report.is_success() {
        out.push_str("verification passed\n");
    } else {
        if let Some(failure) = &report.first_failure {
            out.push_str(&format!("first failure: {failure}\n"));
        }
        out.push_str("verification failed\n");
    }
    out
}

#[derive(Debug, Deserialize)]
struct GoldenFile {
    #[serde(default)]
    c: BTreeMap<String, String>,
    #[serde(default)]
    zeta: BTreeMap<String, String>,
}

/// Parses a golden fixture: a JSON object with "c" and "zeta" maps from the
/// order n to a "p/q" value.
pub fn parse_golden_tables(text: &str) -> Result<GoldenTables, String> {
    let file: GoldenFile =
        serde_json::from_str(text).map_err(|e| format!("invalid golden file: {e}"))?;
    let parse_map = |map: &BTreeMap<String, String>, what: &str| {
        let mut rows = Vec::with_capacity(map.len());
        for (key, value) in map {
            let n: u32 = key
                .parse()
                .map_err(|_| format!("invalid {what} order {key:?} in golden file"))?;
            let value: Rational = value
                .parse()
                .map_err(|_| format!("invalid {what} value {value:?} in golden file"))?;
            rows.push((n, value));
        }
        rows.sort_by_key(|(n, _)| *n);
        Ok::<_, String>(rows)
    };
    Ok(GoldenTables {
        c: parse_map(&file.c, "c")?,
        zeta: parse_map(&file.zeta, "zeta")?,
    })
}
