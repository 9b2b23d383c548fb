//! Deterministic report serialization: JSON mirrors the record structs,
//! CSV uses the fixed column set
//! shape,q,basis,count0,total,prob,predicted,rule,verdict,ms.

use crate::error::{Error, Result};
use crate::harness::ScanReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_emit(report: &ScanReport, format: Format) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(report).expect("report serialization cannot fail")
        }
        Format::Csv => {
            let mut out = String::from("shape,q,basis,count0,total,prob,predicted,rule,verdict,ms\n");
            for r in &report.records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    csv_field(&r.shape),
                    r.q,
                    r.basis,
                    csv_field(&r.count0),
                    csv_field(&r.total),
                    csv_field(&r.prob),
                    csv_field(&r.predicted),
                    csv_field(&r.rule),
                    r.verdict,
                    r.ms
                ));
            }
            out
        }
    }
}
