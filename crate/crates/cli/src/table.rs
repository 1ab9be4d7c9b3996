//! CSV and Markdown rendering of study tables.
//!
//! Numbers are written with six significant digits (`{:.5e}`), so parsing
//! an emitted CSV reproduces the table values rounded to that precision.

use std::fmt::Write as _;

use dgtime::{Eoc, EocTable};

use crate::config::NormName;
use crate::CliError;

pub const CSV_HEADER: [&str; 8] = ["N", "k", "err_energy", "eoc_energy", "err_nodal", "eoc_nodal", "err_p", "eoc_p"];

pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

fn err_cell(v: Option<f64>) -> String {
    v.map(sig6).unwrap_or_default()
}

fn eoc_cell(v: Option<Eoc>) -> String {
    match v {
        Some(Eoc::Order(o)) => sig6(o),
        Some(Eoc::AtFloor) => "at-floor".into(),
        None => String::new(),
    }
}

pub fn to_csv(table: &EocTable) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::io(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in &table.rows {
        w.write_record([
            r.n.to_string(),
            sig6(r.k),
            err_cell(r.err_energy),
            eoc_cell(r.eoc_energy),
            err_cell(r.err_nodal),
            eoc_cell(r.eoc_nodal),
            err_cell(r.err_multiplier),
            eoc_cell(r.eoc_multiplier),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::io(e.to_string()))
}

/// One parsed CSV line.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub n: usize,
    pub k: f64,
    pub err_energy: Option<f64>,
    pub eoc_energy: Option<Eoc>,
    pub err_nodal: Option<f64>,
    pub eoc_nodal: Option<Eoc>,
    pub err_p: Option<f64>,
    pub eoc_p: Option<Eoc>,
}

fn parse_opt(s: &str) -> Result<Option<f64>, String> {
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(|e| format!("{s:?}: {e}"))
    }
}

fn parse_eoc(s: &str) -> Result<Option<Eoc>, String> {
    if s == "at-floor" {
        Ok(Some(Eoc::AtFloor))
    } else {
        Ok(parse_opt(s)?.map(Eoc::Order))
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected header {header:?}"));
    }
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            Ok(CsvRow {
                n: rec[0].parse().map_err(|e| format!("N: {e}"))?,
                k: rec[1].parse().map_err(|e| format!("k: {e}"))?,
                err_energy: parse_opt(&rec[2])?,
                eoc_energy: parse_eoc(&rec[3])?,
                err_nodal: parse_opt(&rec[4])?,
                eoc_nodal: parse_eoc(&rec[5])?,
                err_p: parse_opt(&rec[6])?,
                eoc_p: parse_eoc(&rec[7])?,
            })
        })
        .collect()
}

fn md_eoc(v: Option<Eoc>) -> String {
    match v {
        Some(e) => e.to_string(),
        None => "".into(),
    }
}

/// Pipe table: one row per `N`, an error and an order column per selected
/// norm, closed by an `EOC_T` row holding the finest-mesh orders.
pub fn to_markdown(table: &EocTable, norms: &[NormName]) -> String {
    let mut out = String::new();
    let proj = if table.use_projection { "on" } else { "off" };
    let _ = writeln!(out, "### {} (q = {}, projection {proj})\n", table.problem, table.q);
    let mut head = String::from("| N | k |");
    let mut rule = String::from("|---:|---:|");
    for n in norms {
        let label = match n {
            NormName::Energy => "energy error",
            NormName::Nodal => "nodal error",
            NormName::Multiplier => "multiplier error",
        };
        let _ = write!(head, " {label} | EOC |");
        rule.push_str("---:|---:|");
    }
    let _ = writeln!(out, "{head}\n{rule}");
    for r in &table.rows {
        let _ = write!(out, "| {} | {} |", r.n, sig6(r.k));
        for n in norms {
            let (e, o) = match n {
                NormName::Energy => (r.err_energy, r.eoc_energy),
                NormName::Nodal => (r.err_nodal, r.eoc_nodal),
                NormName::Multiplier => (r.err_multiplier, r.eoc_multiplier),
            };
            let _ = write!(out, " {} | {} |", err_cell(e), md_eoc(o));
        }
        out.push('\n');
    }
    if let Some(last) = table.rows.last() {
        out.push_str("| EOC_T | |");
        for n in norms {
            let o = match n {
                NormName::Energy => last.eoc_energy,
                NormName::Nodal => last.eoc_nodal,
                NormName::Multiplier => last.eoc_multiplier,
            };
            let _ = write!(out, " | {} |", md_eoc(o));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "\n{}", table.note);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgtime::EocRow;

    fn table() -> EocTable {
        let row = |n: usize, e: f64, o: Option<Eoc>| EocRow {
            n,
            k: 1.0 / n as f64,
            err_energy: Some(e),
            err_nodal: None,
            err_multiplier: None,
            eoc_energy: o,
            eoc_nodal: None,
            eoc_multiplier: None,
        };
        EocTable {
            problem: "demo".into(),
            q: 2,
            use_projection: true,
            rows: vec![row(4, 0.123456789, None), row(8, 0.0, Some(Eoc::AtFloor))],
            note: "note".into(),
        }
    }

    #[test]
    fn csv_layout() {
        let text = to_csv(&table()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "N,k,err_energy,eoc_energy,err_nodal,eoc_nodal,err_p,eoc_p");
        assert_eq!(lines[1], "4,2.50000e-1,1.23457e-1,,,,,");
        assert_eq!(lines[2], "8,1.25000e-1,0.00000e0,at-floor,,,,");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn markdown_has_eoc_row() {
        let md = to_markdown(&table(), &[NormName::Energy]);
        assert!(md.contains("| N | k | energy error | EOC |"));
        assert!(md.contains("| EOC_T | | | at-floor |"));
    }
}
