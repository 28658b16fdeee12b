use std::collections::BTreeMap;
use std::io::Write;

use super::checks::Params;
use super::registry::Entry;
use super::Format;
use crate::diagrams::{enumerate_sym_tl, Matching, DEFAULT_DIAGRAM_BOUND};
use crate::error::{Error, Result};
use crate::immanants::{quadratic_relation_table, QUADRATIC_LABELS};
use crate::pfaffian_core::SkewArray;
use crate::pfaffinants::{transition_matrix, PfaffinantFunctional};
use crate::uncross::f_coefficient;

/// A header and string rows, written as CSV, JSON objects or aligned text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TableData {
    pub fn new(header: &[&str], rows: Vec<Vec<String>>) -> TableData {
        TableData { header: header.iter().map(|s| s.to_string()).collect(), rows }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
                w.write_record(&self.header).map_err(csv_err)?;
                for r in &self.rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let objects: Vec<BTreeMap<&str, &str>> = self
                    .rows
                    .iter()
                    .map(|r| self.header.iter().map(String::as_str).zip(r.iter().map(String::as_str)).collect())
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&objects)?)?;
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| self.rows.iter().map(|r| r[c].chars().count()).chain([self.header[c].chars().count()]).max().unwrap_or(0))
                    .collect();
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = r.iter().zip(&widths).map(|(s, &w)| format!("{s:w$}")).collect();
                    writeln!(out, "{}", cells.join("  ").trim_end())?;
                }
            }
        }
        Ok(())
    }
}

pub fn build_table(entry: &Entry, p: &Params) -> Result<TableData> {
    let a = || SkewArray::symbolic(p.n);
    match entry.name {
        "diagram-pfaffinants" | "tl-pfaffinants" => {
            let tl = entry.name == "tl-pfaffinants";
            let mut rows = Vec::new();
            for d in enumerate_sym_tl(p.n, DEFAULT_DIAGRAM_BOUND)? {
                if tl && !d.is_even() {
                    continue;
                }
                let f = if tl {
                    PfaffinantFunctional::of_tl_diagram_with(&d, p.seed, p.cache.as_deref())?
                } else {
                    PfaffinantFunctional::of_diagram_with(&d, p.seed, p.cache.as_deref())?
                };
                rows.push(vec![d.key(), f.evaluate(&a())?.to_string()]);
            }
            Ok(TableData::new(&["diagram", "pfaffinant"], rows))
        }
        "nested-pair-coefficients" => {
            let pi = Matching::new(2, vec![(1, 4), (2, 3)])?;
            let rows = f_coefficient(&pi, p.seed)?.into_iter().map(|(d, w)| vec![d.key(), w.to_string()]).collect();
            Ok(TableData::new(&["diagram", "coefficient"], rows))
        }
        "transition-matrix" => {
            let m = transition_matrix(p.n)?;
            let mut header = vec!["I".to_string()];
            header.extend(m.cols.iter().map(|d| d.key()));
            let rows = m
                .rows
                .iter()
                .zip(&m.entries)
                .map(|((i, _), row)| {
                    let set: Vec<String> = i.iter().map(|x| x.to_string()).collect();
                    std::iter::once(format!("{{{}}}", set.join(","))).chain(row.iter().map(|v| v.to_string())).collect()
                })
                .collect();
            Ok(TableData { header, rows })
        }
        _ => {
            let mut header = vec!["diagram".to_string(), "basis".to_string()];
            header.extend(QUADRATIC_LABELS.iter().map(|s| s.to_string()));
            let mut rows = Vec::new();
            for row in quadratic_relation_table()? {
                for (basis, coeffs) in [("computed", &row.computed), ("printed", &row.printed)] {
                    let mut r = vec![row.diagram.clone(), basis.to_string()];
                    match coeffs {
                        Some(c) => r.extend(c.iter().cloned()),
                        None => r.extend(std::iter::repeat_n("-".to_string(), QUADRATIC_LABELS.len())),
                    }
                    rows.push(r);
                }
            }
            Ok(TableData { header, rows })
        }
    }
}
