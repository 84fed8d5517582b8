//! CSV (RFC 4180) and Markdown renderings of reports, tables and fuzz summaries.

use crate::error::{LinalgError, Result};
use crate::harness::fuzz::FuzzSummary;
use crate::harness::tables::{matrix_label, Table};
use crate::inequalities::report::BoundReport;

fn csv_string(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| LinalgError::InvalidConfig(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| LinalgError::InvalidConfig(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| LinalgError::InvalidConfig(e.to_string()))
}

fn markdown(header: &[String], rows: &[Vec<String>]) -> String {
    let escape = |s: &str| s.replace('|', "\\|");
    let line = |cells: &[String]| {
        let cells: Vec<String> = cells.iter().map(|c| escape(c)).collect();
        format!("| {} |\n", cells.join(" | "))
    };
    let mut out = line(header);
    out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

/// Six decimals, the precision the tables are compared at.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.6}")
}

/// Shortest round-trip representation, switching to exponent form for tiny or huge values.
pub fn fmt_full(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn report_rows(reports: &[BoundReport]) -> (Vec<String>, Vec<Vec<String>>) {
    let header = ["name", "lhs", "rhs", "slack", "holds"].map(String::from).to_vec();
    let rows = reports
        .iter()
        .map(|r| {
            let holds = if r.vacuous { "vacuous".to_string() } else { r.holds.to_string() };
            vec![r.name.clone(), fmt_full(r.lhs), fmt_full(r.rhs), fmt_full(r.slack), holds]
        })
        .collect();
    (header, rows)
}

pub fn reports_csv(reports: &[BoundReport]) -> Result<String> {
    let (h, rows) = report_rows(reports);
    csv_string(&h, &rows)
}

pub fn reports_markdown(reports: &[BoundReport]) -> String {
    let (h, rows) = report_rows(reports);
    markdown(&h, &rows)
}

fn table_rows(table: &Table) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = vec!["row".to_string(), "T".to_string()];
    for c in &table.columns {
        header.push(c.clone());
        header.push(format!("{c} (published)"));
    }
    header.push("max deviation".into());
    header.push("match".into());
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let mut cells = vec![r.label.clone(), matrix_label(&r.matrix)];
            for (v, p) in r.values.iter().zip(&r.published) {
                cells.push(fmt_value(*v));
                cells.push(p.map(|p| p.to_string()).unwrap_or_default());
            }
            cells.push(fmt_value(r.max_deviation()));
            cells.push(r.matches().to_string());
            cells
        })
        .collect();
    (header, rows)
}

pub fn table_csv(table: &Table) -> Result<String> {
    let (h, rows) = table_rows(table);
    csv_string(&h, &rows)
}

pub fn table_markdown(table: &Table) -> String {
    let (h, rows) = table_rows(table);
    format!("### {}\n\n{}", table.name, markdown(&h, &rows))
}

fn summary_rows(summary: &FuzzSummary) -> (Vec<String>, Vec<Vec<String>>) {
    let header = [
        "suite",
        "trials",
        "reports",
        "violations",
        "vacuous",
        "hypothesis unmet",
        "worst relative slack",
        "worst report",
    ]
    .map(String::from)
    .to_vec();
    let rows = summary
        .suites
        .iter()
        .map(|s| {
            vec![
                s.suite.to_string(),
                s.trials.to_string(),
                s.reports.to_string(),
                s.violations.to_string(),
                s.vacuous.to_string(),
                s.hypothesis_unmet.to_string(),
                if s.worst_relative_slack.is_finite() {
                    format!("{:.3e}", s.worst_relative_slack)
                } else {
                    String::new()
                },
                s.worst_report.clone().unwrap_or_default(),
            ]
        })
        .collect();
    (header, rows)
}

pub fn summary_csv(summary: &FuzzSummary) -> Result<String> {
    let (h, rows) = summary_rows(summary);
    csv_string(&h, &rows)
}

pub fn summary_markdown(summary: &FuzzSummary) -> String {
    let (h, rows) = summary_rows(summary);
    markdown(&h, &rows)
}
