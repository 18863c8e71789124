//! Persistent L-value cache: one JSON object per line.
//!
//! The file has a single writer. New records are appended in canonical
//! family order; replacing an existing key rewrites the whole file through a
//! temporary sibling and a rename.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use eisenstein_cubic::characters::FamilyElement;
use eisenstein_cubic::lfunction::LValueRecord;
use eisenstein_cubic::{Complex64, Eisenstein};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub type CacheKey = (i64, i64, i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheRecord {
    pub c1_a: i64,
    pub c1_b: i64,
    pub c2_a: i64,
    pub c2_b: i64,
    pub cond_norm: u64,
    pub l_re: f64,
    pub l_im: f64,
    pub w_re: f64,
    pub w_im: f64,
    pub y_param: f64,
    pub trunc_bound: f64,
    pub schema_version: u32,
}

impl CacheRecord {
    pub fn from_lvalue(r: &LValueRecord) -> Self {
        let e = &r.elem;
        CacheRecord {
            c1_a: e.c1.a as i64,
            c1_b: e.c1.b as i64,
            c2_a: e.c2.a as i64,
            c2_b: e.c2.b as i64,
            cond_norm: e.cond_norm,
            l_re: r.l_half.re,
            l_im: r.l_half.im,
            w_re: r.root_number.re,
            w_im: r.root_number.im,
            y_param: r.y_param,
            trunc_bound: r.truncation_bound,
            schema_version: SCHEMA_VERSION,
        }
    }

    pub fn key(&self) -> CacheKey {
        (self.c1_a, self.c1_b, self.c2_a, self.c2_b)
    }

    pub fn sort_key(&self) -> (u64, CacheKey) {
        (self.cond_norm, self.key())
    }

    pub fn element(&self) -> Option<FamilyElement> {
        let c1 = Eisenstein::new(self.c1_a as i128, self.c1_b as i128);
        let c2 = Eisenstein::new(self.c2_a as i128, self.c2_b as i128);
        FamilyElement::new(c1, c2).filter(|e| e.cond_norm == self.cond_norm)
    }

    /// The L-value record; the cutoff norm is not persisted and reads as 0.
    pub fn to_lvalue(&self) -> Option<LValueRecord> {
        Some(LValueRecord {
            elem: self.element()?,
            l_half: Complex64::new(self.l_re, self.l_im),
            root_number: Complex64::new(self.w_re, self.w_im),
            y_param: self.y_param,
            truncation_bound: self.trunc_bound,
            cutoff_norm: 0,
        })
    }

    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn parse_line(line: &str) -> std::result::Result<Self, LineError> {
        let value: serde_json::Value = serde_json::from_str(line).map_err(|e| LineError::Format(e.to_string()))?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => return Err(LineError::Schema(v.min(u32::MAX as u64) as u32)),
            None => return Err(LineError::Format("missing schema_version".into())),
        }
        serde_json::from_value(value).map_err(|e| LineError::Format(e.to_string()))
    }
}

pub fn key_of(e: &FamilyElement) -> CacheKey {
    (e.c1.a as i64, e.c1.b as i64, e.c2.a as i64, e.c2.b as i64)
}

#[derive(Debug)]
pub enum LineError {
    Schema(u32),
    Format(String),
}

#[derive(Debug)]
pub struct LCache {
    path: PathBuf,
    records: BTreeMap<CacheKey, CacheRecord>,
}

impl LCache {
    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut records = BTreeMap::new();
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(LCache { path, records }),
            Err(e) => return Err(CliError::Io { path, source: e }),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(CliError::io_error(&path))?;
            if line.trim().is_empty() {
                continue;
            }
            let lineno = i + 1;
            let rec = CacheRecord::parse_line(&line).map_err(|e| match e {
                LineError::Schema(found) => {
                    CliError::SchemaMismatch { path: path.clone(), line: lineno, found, expected: SCHEMA_VERSION }
                }
                LineError::Format(reason) => CliError::CacheFormat { path: path.clone(), line: lineno, reason },
            })?;
            if rec.element().is_none() {
                return Err(CliError::CacheFormat {
                    path: path.clone(),
                    line: lineno,
                    reason: "record is not a family member with the stated conductor norm".into(),
                });
            }
            if let Some(old) = records.insert(rec.key(), rec) {
                if old != rec {
                    return Err(CliError::CacheFormat { path: path.clone(), line: lineno, reason: "conflicting duplicate key".into() });
                }
            }
        }
        Ok(LCache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, e: &FamilyElement) -> Option<&CacheRecord> {
        self.records.get(&key_of(e))
    }

    /// Records in canonical family order.
    pub fn records(&self) -> Vec<CacheRecord> {
        let mut v: Vec<_> = self.records.values().copied().collect();
        v.sort_by_key(|r| r.sort_key());
        v
    }

    /// Stores `new` and persists it.
    pub fn store(&mut self, new: &[CacheRecord]) -> Result<()> {
        if new.is_empty() {
            return Ok(());
        }
        let mut sorted = new.to_vec();
        sorted.sort_by_key(|r| r.sort_key());
        let replaces = sorted.iter().any(|r| self.records.contains_key(&r.key()));
        for r in &sorted {
            self.records.insert(r.key(), *r);
        }
        if replaces {
            self.rewrite()
        } else {
            self.append(&sorted)
        }
    }

    fn append(&self, recs: &[CacheRecord]) -> Result<()> {
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(CliError::io_error(dir))?;
        }
        let file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(CliError::io_error(&self.path))?;
        let mut w = BufWriter::new(file);
        for r in recs {
            writeln!(w, "{}", r.to_json_line()?).map_err(CliError::io_error(&self.path))?;
        }
        w.flush().map_err(CliError::io_error(&self.path))
    }

    fn rewrite(&self) -> Result<()> {
        let mut tmp = self.path.clone().into_os_string();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut w = BufWriter::new(File::create(&tmp).map_err(CliError::io_error(&tmp))?);
            for r in self.records() {
                writeln!(w, "{}", r.to_json_line()?).map_err(CliError::io_error(&tmp))?;
            }
            w.flush().map_err(CliError::io_error(&tmp))?;
        }
        std::fs::rename(&tmp, &self.path).map_err(CliError::io_error(&self.path))
    }
}
