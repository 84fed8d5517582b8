//! The published comparison tables, recomputed from their printed matrices.

use serde::Serialize;

use crate::error::Result;
use crate::inequalities::bounds::{aluthge_reports, newbound_reports, Derived};
use crate::linalg::io::format_complex;
use crate::linalg::matrix::{c64, ComplexMatrix};
use crate::radius::SweepConfig;

/// Absolute tolerance against printed values (printed with at most six significant digits).
pub const TABLE_TOL: f64 = 5e-3;

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub label: String,
    pub matrix: ComplexMatrix,
    pub values: Vec<f64>,
    /// Printed value per column, where one is printed.
    pub published: Vec<Option<f64>>,
}

impl TableRow {
    /// Largest absolute deviation from the printed values.
    pub fn max_deviation(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.published)
            .filter_map(|(v, p)| p.map(|p| (v - p).abs()))
            .fold(0.0, f64::max)
    }

    pub fn matches(&self) -> bool {
        self.values.iter().all(|v| v.is_finite()) && self.max_deviation() <= TABLE_TOL
    }

    pub fn published_count(&self) -> usize {
        self.published.iter().flatten().count()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn mismatches(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.matches())
    }
}

/// Compact text form of a matrix, e.g. `[[5+7i, 9+6i], [5i, 10+3i]]`.
pub fn matrix_label(m: &ComplexMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = m.row(i).iter().map(|&z| format_complex(z)).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn complex2(rows: [[(f64, f64); 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| c64(rows[i][j].0, rows[i][j].1))
}

/// The five matrices comparing `omega((|T|-|T*|)/2 + i Re T)` with `omega(T)`, with
/// their printed values.
pub fn comparison_matrices() -> Vec<(ComplexMatrix, [f64; 2])> {
    vec![
        (complex2([[(5.0, 7.0), (9.0, 6.0)], [(0.0, 5.0), (10.0, 3.0)]]), [12.672, 16.4629]),
        (complex2([[(8.0, 8.0), (10.0, 6.0)], [(0.0, 1.0), (4.0, 6.0)]]), [11.9372, 15.8452]),
        (complex2([[(6.0, 3.0), (6.0, 9.0)], [(9.0, 0.0), (7.0, 1.0)]]), [15.2607, 16.6345]),
        (complex2([[(2.0, 0.0), (2.0, 10.0)], [(4.0, 5.0), (7.0, 2.0)]]), [9.13681, 12.0998]),
        (complex2([[(8.0, 9.0), (6.0, 4.0)], [(3.0, 1.0), (8.0, 0.0)]]), [12.7434, 14.8809]),
    ]
}

fn comparison_table(cfg: &SweepConfig) -> Result<Table> {
    let mut rows = Vec::new();
    for (k, (t, printed)) in comparison_matrices().into_iter().enumerate() {
        let d = Derived::new(&t, cfg)?;
        rows.push(TableRow {
            label: (k + 1).to_string(),
            values: vec![d.mixed_radius(false, 1.0)?, d.omega_t()?],
            published: printed.iter().copied().map(Some).collect(),
            matrix: t,
        });
    }
    Ok(Table {
        name: "radius-comparison".into(),
        columns: vec!["w((|T|-|T*|)/2 + i Re T)".into(), "w(T)".into()],
        rows,
    })
}

fn newbound_table(name: &str, entries: &[(&str, [[f64; 2]; 2], [f64; 3])], cfg: &SweepConfig) -> Result<Table> {
    let mut rows = Vec::new();
    for (label, m, printed) in entries {
        let t = ComplexMatrix::from_real_rows(m);
        let d = Derived::new(&t, cfg)?;
        let (new, kittaneh) = newbound_reports(&d)?;
        rows.push(TableRow {
            label: label.to_string(),
            values: vec![new.lhs, new.rhs, kittaneh.rhs],
            published: printed.iter().copied().map(Some).collect(),
            matrix: t,
        });
    }
    Ok(Table {
        name: name.into(),
        columns: vec!["w(T)".into(), "new bound".into(), "|| |T|+|T*| ||/2".into()],
        rows,
    })
}

fn aluthge_table(cfg: &SweepConfig) -> Result<Table> {
    // Printed columns: L1, L2, || |T|+|T*| ||/2, (||T|| + w(T~))/2, (||T|| + w(T))/2.
    // The last printed value of the third matrix agrees with (||T|| + w(T))/2.
    let entries: [(&str, [[f64; 2]; 2], [Option<f64>; 5]); 3] = [
        ("1", [[1.0, -2.0], [2.0, -3.0]], [Some(3.11788), Some(3.06525), Some(3.1305), None, None]),
        ("2", [[10.0, 10.0], [5.0, 0.0]], [Some(14.0272), Some(14.0287), Some(14.0139), None, None]),
        ("3", [[6.0, 7.0], [10.0, 7.0]], [Some(15.0159), Some(15.0164), None, None, Some(15.1001)]),
    ];
    let mut rows = Vec::new();
    for (label, m, printed) in entries {
        let t = ComplexMatrix::from_real_rows(&m);
        let d = Derived::new(&t, cfg)?;
        let b = aluthge_reports(&d)?;
        rows.push(TableRow {
            label: label.to_string(),
            values: vec![b.l1, b.l2, b.kittaneh, b.yamazaki, b.beta2],
            published: printed.to_vec(),
            matrix: t,
        });
    }
    Ok(Table {
        name: "aluthge-bounds".into(),
        columns: vec![
            "L1".into(),
            "L2".into(),
            "|| |T|+|T*| ||/2".into(),
            "(||T|| + w(T~))/2".into(),
            "(||T|| + w(T))/2".into(),
        ],
        rows,
    })
}

/// All four tables.
pub fn reproduce_tables(cfg: &SweepConfig) -> Result<Vec<Table>> {
    Ok(vec![
        comparison_table(cfg)?,
        newbound_table(
            "newbound-first",
            &[
                ("1", [[2.0, 1.0], [2.0, 9.0]], [9.30789, 9.3146, 9.31493]),
                ("9", [[5.0, 7.0], [0.0, 6.0]], [9.03553, 9.36738, 9.502]),
            ],
            cfg,
        )?,
        newbound_table(
            "newbound-second",
            &[
                ("2", [[0.0, 0.0], [9.0, 10.0]], [11.7268, 12.1437, 11.7268]),
                ("6", [[0.0, 2.0], [6.0, 0.0]], [4.0, 4.23607, 4.0]),
            ],
            cfg,
        )?,
        aluthge_table(cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_match() {
        let tables = reproduce_tables(&SweepConfig::default()).unwrap();
        assert_eq!(tables.len(), 4);
        let rows: usize = tables.iter().map(|t| t.rows.len()).sum();
        assert_eq!(rows, 12);
        for t in &tables {
            for r in &t.rows {
                assert!(r.matches(), "{} row {}: {:?} vs {:?}", t.name, r.label, r.values, r.published);
                assert_eq!(r.values.len(), t.columns.len());
            }
        }
    }

    #[test]
    fn labels() {
        let (t, _) = &comparison_matrices()[0];
        assert_eq!(matrix_label(t), "[[5+7i, 9+6i], [5i, 10+3i]]");
    }

    #[test]
    fn deviation_ignores_unprinted_columns() {
        let row = TableRow {
            label: "x".into(),
            matrix: ComplexMatrix::identity(1),
            values: vec![1.0, 100.0],
            published: vec![Some(1.004), None],
        };
        assert!((row.max_deviation() - 0.004).abs() < 1e-12);
        assert!(row.matches());
        assert_eq!(row.published_count(), 1);
    }
}
