//! Deterministic result documents.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::spectral::Page;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A named dimension table indexed by degree, with the predicted values when there are any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageTable {
    pub name: String,
    pub r: usize,
    /// Nonzero cells `(p, q, dim)`.
    pub cells: Vec<(usize, i64, usize)>,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    /// The headline table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pages: Vec<PageTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    /// Facts about the input that are neither tables nor pass/fail checks.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub properties: BTreeMap<String, serde_json::Value>,
    pub warnings: Vec<String>,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl ResultReport {
    pub fn new(kind: &str, input: &[u8]) -> Self {
        ResultReport {
            kind: kind.to_string(),
            example: None,
            dims: None,
            tables: Vec::new(),
            pages: Vec::new(),
            checks: Vec::new(),
            properties: BTreeMap::new(),
            warnings: Vec::new(),
            input_digest: digest(input),
            timing_ms: None,
        }
    }

    pub fn table(&mut self, name: impl Into<String>, dims: Vec<usize>, predicted: Option<Vec<usize>>) -> &mut Self {
        self.tables.push(Table { name: name.into(), dims, predicted });
        self
    }

    pub fn page(&mut self, name: impl Into<String>, page: &Page) -> &mut Self {
        let r = page.report();
        self.pages.push(PageTable { name: name.into(), r: r.r, cells: r.cells, stable: r.stable });
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed, detail: None });
        self
    }

    pub fn check_with(&mut self, name: impl Into<String>, passed: bool, detail: serde_json::Value) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed, detail: Some(detail) });
        self
    }

    pub fn property(&mut self, name: impl Into<String>, value: impl Into<serde_json::Value>) -> &mut Self {
        self.properties.insert(name.into(), value.into());
        self
    }

    pub fn warn(&mut self, w: impl Into<String>) -> &mut Self {
        self.warnings.push(w.into());
        self
    }

    /// Adds the standard warning when a reported table reaches past the validity band.
    pub fn band_warning(&mut self, what: &str, reported_top: usize, band: usize) -> &mut Self {
        if reported_top > band {
            self.warn(format!(
                "{what}: degrees {}..={reported_top} lie outside the validity band 0..={band} of the truncation",
                band + 1
            ));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }

    /// One row per table cell: `table,r,p,q,dim`. Degree tables put the degree in `p`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["table", "r", "p", "q", "dim"]).expect("in-memory write");
        let mut degree_rows = |name: &str, dims: &[usize]| {
            for (n, d) in dims.iter().enumerate() {
                w.write_record([name, "", &n.to_string(), "", &d.to_string()]).expect("in-memory write");
            }
        };
        if let Some(d) = &self.dims {
            degree_rows("dims", d);
        }
        for t in &self.tables {
            degree_rows(&t.name, &t.dims);
            if let Some(p) = &t.predicted {
                degree_rows(&format!("{}:predicted", t.name), p);
            }
        }
        for pg in &self.pages {
            for (p, q, d) in &pg.cells {
                w.write_record([pg.name.as_str(), &pg.r.to_string(), &p.to_string(), &q.to_string(), &d.to_string()])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
    }
}
