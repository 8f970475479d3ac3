//! Output formats for simulation results and latency reports.

use std::io::Write;

use pac_core::TimeStepReport;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::harness::FerRecord;

/// CSV columns, in order. Timing is left out so that reruns compare equal.
#[derive(Serialize)]
struct CsvRow<'a> {
    ebn0_db: f64,
    frames: u64,
    errors: u64,
    fer: f64,
    variant: &'a str,
    n: usize,
    k: usize,
    list_size: usize,
    seed: u64,
}

pub fn write_csv(out: impl Write, records: &[FerRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow {
            ebn0_db: r.ebn0_db,
            frames: r.frames,
            errors: r.errors,
            fer: r.fer,
            variant: &r.variant,
            n: r.n,
            k: r.k,
            list_size: r.list_size,
            seed: r.seed,
        })?;
    }
    if records.is_empty() {
        w.write_record(["ebn0_db", "frames", "errors", "fer", "variant", "n", "k", "list_size", "seed"])?;
    }
    w.flush().map_err(crate::error::SimError::Output)?;
    Ok(())
}

pub fn write_json(mut out: impl Write, records: &[FerRecord]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out).map_err(crate::error::SimError::Output)?;
    Ok(())
}

pub fn latency_json(report: &TimeStepReport) -> Value {
    let per_kind: Map<String, Value> = report
        .per_kind
        .iter()
        .map(|k| (k.kind.name().to_owned(), json!({ "nodes": k.nodes, "steps": k.steps })))
        .collect();
    json!({
        "variant": report.variant.name(),
        "N": report.n,
        "K": report.k,
        "L": report.list_size,
        "traversal": report.traversal,
        "splits": report.splits,
        "perKind": per_kind,
        "total": report.total,
    })
}

/// One aligned row per report; node columns show `steps/nodes`.
pub fn latency_table(reports: &[TimeStepReport]) -> String {
    let mut rows = vec![vec![
        "variant".to_owned(),
        "N".into(),
        "K".into(),
        "L".into(),
        "traversal".into(),
        "splits".into(),
    ]];
    if let Some(r) = reports.first() {
        rows[0].extend(r.per_kind.iter().map(|k| k.kind.name().to_owned()));
    }
    rows[0].push("total".into());
    for r in reports {
        let mut row = vec![
            r.variant.name().to_owned(),
            r.n.to_string(),
            r.k.to_string(),
            r.list_size.to_string(),
            r.traversal.to_string(),
            r.splits.to_string(),
        ];
        row.extend(r.per_kind.iter().map(|k| format!("{}/{}", k.steps, k.nodes)));
        row.push(r.total.to_string());
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut text = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, &w))| if i == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        text.push_str(cells.join("  ").trim_end());
        text.push('\n');
    }
    text
}
