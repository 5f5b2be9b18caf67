use std::io::{self, Write};

use clap::ValueEnum;
use confighom::bounds::BoundResult;
use confighom::corpus::VerifyReport;
use confighom::GradedGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

/// Homology tables print as `H_q`, cohomology tables as `H^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Homology,
    Cohomology,
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().from_writer(out)
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn table(out: &mut dyn Write, t: &GradedGroup, grading: Grading, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(t)?),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["degree", "rank", "torsion"]).map_err(csv_err)?;
            for (q, e) in t.entries() {
                let torsion: Vec<String> = e.torsion.iter().map(u64::to_string).collect();
                w.write_record([q.to_string(), e.rank.to_string(), torsion.join(";")])
                    .map_err(csv_err)?;
            }
            w.flush()
        }
        Format::Pretty => {
            let sym = match grading {
                Grading::Homology if t.is_reduced() => "H̃_",
                Grading::Homology => "H_",
                Grading::Cohomology => "H^",
            };
            writeln!(out, "coefficients {}", t.coefficients())?;
            if t.is_zero() {
                return writeln!(out, "all groups zero");
            }
            for (q, e) in t.entries() {
                let single = GradedGroup::zero(t.coefficients());
                let mut single = single.with_reduced(t.is_reduced());
                single
                    .set(q, e.rank, &e.torsion)
                    .expect("entry copied from a valid table");
                let text = single.to_string();
                let body = text.split_once(": ").map_or(text.as_str(), |(_, b)| b);
                writeln!(out, "{sym}{q} = {body}")?;
            }
            Ok(())
        }
    }
}

pub fn bounds(out: &mut dyn Write, items: &[BoundResult], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            let text = if items.len() == 1 {
                serde_json::to_string_pretty(&items[0])?
            } else {
                serde_json::to_string_pretty(items)?
            };
            writeln!(out, "{text}")
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["value", "kind", "source", "hypotheses"]).map_err(csv_err)?;
            for b in items {
                let kind = serde_json::to_value(b.kind)?;
                w.write_record([
                    b.value.to_string(),
                    kind.as_str().unwrap_or_default().to_string(),
                    b.source.clone(),
                    b.hypotheses.join("; "),
                ])
                .map_err(csv_err)?;
            }
            w.flush()
        }
        Format::Pretty => {
            for b in items {
                let kind = serde_json::to_value(b.kind)?;
                writeln!(
                    out,
                    "{} ({}, anchor {})",
                    b.value,
                    kind.as_str().unwrap_or_default().replace('_', " "),
                    b.source
                )?;
                for h in &b.hypotheses {
                    writeln!(out, "  - {h}")?;
                }
            }
            Ok(())
        }
    }
}

pub fn report(out: &mut dyn Write, r: &VerifyReport, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(r)?),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["group", "id", "provenance", "pass", "detail"]).map_err(csv_err)?;
            for c in &r.checks {
                w.write_record([&c.group, &c.id, &c.provenance, &c.pass.to_string(), &c.detail])
                    .map_err(csv_err)?;
            }
            w.flush()
        }
        Format::Pretty => write!(out, "{}", r.summary()),
    }
}
