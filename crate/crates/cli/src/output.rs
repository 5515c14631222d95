//! Text, JSON and CSV rendering. Counts are always decimal strings.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use multisum::verify::Report;
use multisum::{Count, CountTable, ExcludedSet, GroupElement, GroupSpec, Quantity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// JSON shape of a single count.
#[derive(Serialize)]
pub struct CountRecord {
    group: Vec<u64>,
    quantity: String,
    size: u64,
    target: Vec<u64>,
    exclude: Vec<Vec<u64>>,
    count: String,
}

impl CountRecord {
    pub fn new(
        group: &GroupSpec,
        quantity: Quantity,
        size: u64,
        target: &GroupElement,
        excluded: &ExcludedSet,
        count: &Count,
    ) -> Self {
        CountRecord {
            group: group.orders().to_vec(),
            quantity: quantity.to_string(),
            size,
            target: target.residues().to_vec(),
            exclude: excluded.elements().map(|e| e.residues().to_vec()).collect(),
            count: count.to_string(),
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    size: u64,
    target: Vec<u64>,
    count: String,
}

#[derive(Serialize)]
struct TableRecord {
    group: Vec<u64>,
    quantity: String,
    max_size: u64,
    rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct MismatchRecord {
    check: &'static str,
    group: Vec<u64>,
    exclude: String,
    size: u64,
    target: Vec<u64>,
    expected: String,
    got: String,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    passed: bool,
    groups: usize,
    checks: u64,
    checks_by_kind: &'a std::collections::BTreeMap<&'static str, u64>,
    mismatches: Vec<MismatchRecord>,
}

fn json_line(out: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn csv_rows<'a>(
    out: &mut impl Write,
    rows: impl Iterator<Item = (u64, String, String)> + 'a,
) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["size", "target", "count"])?;
    for (size, target, count) in rows {
        w.write_record([size.to_string(), target, count])?;
    }
    w.flush()
}

pub fn write_count(out: &mut impl Write, format: Format, record: &CountRecord) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{}", record.count),
        Format::Json => json_line(out, record),
        Format::Csv => {
            let target = record
                .target
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            csv_rows(
                out,
                std::iter::once((record.size, target, record.count.clone())),
            )
        }
    }
}

pub fn write_table(out: &mut impl Write, format: Format, table: &CountTable) -> io::Result<()> {
    match format {
        Format::Text => {
            for (i, g, c) in table.entries() {
                writeln!(out, "{i} {g} {c}")?;
            }
            Ok(())
        }
        Format::Json => {
            let record = TableRecord {
                group: table.group().orders().to_vec(),
                quantity: table.quantity().to_string(),
                max_size: table.max_size(),
                rows: table
                    .entries()
                    .map(|(size, g, c)| TableRow {
                        size,
                        target: g.residues().to_vec(),
                        count: c.to_string(),
                    })
                    .collect(),
            };
            json_line(out, &record)
        }
        Format::Csv => csv_rows(
            out,
            table
                .entries()
                .map(|(i, g, c)| (i, g.to_string(), c.to_string())),
        ),
    }
}

pub fn write_report(out: &mut impl Write, format: Format, report: &Report) -> io::Result<()> {
    match format {
        Format::Json => {
            let record = ReportRecord {
                passed: report.passed(),
                groups: report.groups,
                checks: report.checks,
                checks_by_kind: &report.checks_by_kind,
                mismatches: report
                    .mismatches
                    .iter()
                    .map(|m| MismatchRecord {
                        check: m.check,
                        group: m.group.orders().to_vec(),
                        exclude: m.exclude.clone(),
                        size: m.size,
                        target: m.target.residues().to_vec(),
                        expected: m.expected.clone(),
                        got: m.got.clone(),
                    })
                    .collect(),
            };
            json_line(out, &record)
        }
        Format::Text | Format::Csv => {
            writeln!(
                out,
                "checked {} comparisons over {} groups",
                report.checks, report.groups
            )?;
            for (kind, n) in &report.checks_by_kind {
                writeln!(out, "  {kind}: {n}")?;
            }
            for m in &report.mismatches {
                writeln!(out, "MISMATCH {m}")?;
            }
            writeln!(
                out,
                "{}",
                if report.passed() {
                    "all checks passed"
                } else {
                    "FAILED"
                }
            )
        }
    }
}
