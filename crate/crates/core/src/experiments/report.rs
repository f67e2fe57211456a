//! Report envelope shared by all experiments.

use serde::Serialize;

use crate::error::{Error, Result};

pub const REPORT_VERSION: u32 = 1;

/// `{"config": .., "records": [..], "summary": .., "version": 1}`.
#[derive(Clone, Debug, Serialize)]
pub struct Report<C, R, S> {
    pub config: C,
    pub records: Vec<R>,
    pub summary: S,
    pub version: u32,
}

impl<C: Serialize, R: Serialize + CsvRow, S: Serialize> Report<C, R, S> {
    pub fn new(config: C, records: Vec<R>, summary: S) -> Self {
        Report {
            config,
            records,
            summary,
            version: REPORT_VERSION,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// One row per record under a fixed header.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(R::HEADER).map_err(csv_err)?;
        for r in &self.records {
            w.write_record(r.csv_fields()).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Flat CSV view of a record.
pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn csv_fields(&self) -> Vec<String>;
}

/// Empty cell for `None`.
pub(crate) fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
