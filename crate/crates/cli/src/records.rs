//! Self-describing result rows with deterministic byte-level output.
//!
//! Every floating value is serialized with 17 significant digits
//! (`{:.16e}`), which round-trips f64 exactly; keys are emitted in sorted
//! order; no wall-clock data enters a row. JSONL and CSV carry the same
//! fields, so converting between them preserves every numeric bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    UInt(u64),
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::UInt(v) => v.to_string(),
            Value::Int(v) => v.to_string(),
            Value::Float(v) => fmt_f64(*v),
            Value::Bool(v) => v.to_string(),
            Value::Str(v) => v.clone(),
        }
    }
}

/// 17 significant digits: enough to reproduce any f64 bit for bit.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One experiment row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    pub fields: BTreeMap<String, Value>,
}

impl Record {
    pub fn new() -> Self {
        Record { fields: BTreeMap::new() }
    }

    pub fn set_u64(&mut self, key: &str, v: u64) -> &mut Self {
        self.fields.insert(key.into(), Value::UInt(v));
        self
    }

    pub fn set_f64(&mut self, key: &str, v: f64) -> &mut Self {
        self.fields.insert(key.into(), Value::Float(v));
        self
    }

    pub fn set_bool(&mut self, key: &str, v: bool) -> &mut Self {
        self.fields.insert(key.into(), Value::Bool(v));
        self
    }

    pub fn set_str(&mut self, key: &str, v: &str) -> &mut Self {
        self.fields.insert(key.into(), Value::Str(v.into()));
        self
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        match self.fields.get(key) {
            Some(Value::Float(v)) => Some(*v),
            Some(Value::UInt(v)) => Some(*v as f64),
            Some(Value::Int(v)) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn get_bool(&self, key: &str) -> Option<bool> {
        match self.fields.get(key) {
            Some(Value::Bool(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.get_bool("verified").unwrap_or(false)
    }

    /// One JSON object per line, keys sorted, floats at 17 digits.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::from("{");
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\"{}\":", escape_json(k));
            match v {
                Value::Str(s) => {
                    let _ = write!(out, "\"{}\"", escape_json(s));
                }
                other => out.push_str(&other.render()),
            }
        }
        out.push('}');
        out
    }

    pub fn from_jsonl(line: &str) -> Result<Self> {
        let parsed: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(line).context("bad jsonl row")?;
        let mut rec = Record::new();
        for (k, v) in parsed {
            let value = match v {
                serde_json::Value::Bool(b) => Value::Bool(b),
                serde_json::Value::String(s) => Value::Str(s),
                serde_json::Value::Number(n) => {
                    if let Some(u) = n.as_u64() {
                        Value::UInt(u)
                    } else if let Some(i) = n.as_i64() {
                        Value::Int(i)
                    } else {
                        Value::Float(n.as_f64().context("non-finite number")?)
                    }
                }
                other => bail!("unsupported jsonl value {other}"),
            };
            rec.fields.insert(k, value);
        }
        Ok(rec)
    }

    fn csv_cell(&self, key: &str) -> String {
        match self.fields.get(key) {
            None => String::new(),
            Some(Value::Str(s)) => escape_csv(s),
            Some(other) => other.render(),
        }
    }

    /// Typed CSV parse: cells keep their JSONL types through the tagged
    /// float format (mantissa`e`exponent), bools, and unsigned/signed ints.
    pub fn from_csv(header: &[String], line: &str) -> Result<Self> {
        let cells = split_csv(line);
        if cells.len() != header.len() {
            bail!("csv row has {} cells, header has {}", cells.len(), header.len());
        }
        let mut rec = Record::new();
        for (k, cell) in header.iter().zip(cells) {
            if cell.is_empty() {
                continue;
            }
            let value = if cell == "true" {
                Value::Bool(true)
            } else if cell == "false" {
                Value::Bool(false)
            } else if cell.contains('e') || cell.contains('.') {
                match cell.parse::<f64>() {
                    Ok(f) => Value::Float(f),
                    Err(_) => Value::Str(cell),
                }
            } else if let Ok(u) = cell.parse::<u64>() {
                Value::UInt(u)
            } else if let Ok(i) = cell.parse::<i64>() {
                Value::Int(i)
            } else {
                Value::Str(cell)
            };
            rec.fields.insert(k.clone(), value);
        }
        Ok(rec)
    }
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn escape_csv(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn split_csv(line: &str) -> Vec<String> {
    let mut cells = Vec::new();
    let mut cur = String::new();
    let mut in_quotes = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if in_quotes => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    cur.push('"');
                } else {
                    in_quotes = false;
                }
            }
            '"' => in_quotes = true,
            ',' if !in_quotes => {
                cells.push(std::mem::take(&mut cur));
            }
            c => cur.push(c),
        }
    }
    cells.push(cur);
    cells
}

/// Column set of a run: the sorted union of keys over all records.
pub fn csv_columns(records: &[Record]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for r in records {
        for k in r.fields.keys() {
            if seen.insert(k.clone()) {
                cols.push(k.clone());
            }
        }
    }
    cols.sort();
    cols
}

pub fn write_jsonl(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_jsonl());
        out.push('\n');
    }
    out
}

pub fn write_csv(records: &[Record]) -> String {
    let cols = csv_columns(records);
    let mut out = cols.join(",");
    out.push('\n');
    for r in records {
        let row: Vec<String> = cols.iter().map(|c| r.csv_cell(c)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn read_jsonl(data: &str) -> Result<Vec<Record>> {
    data.lines().filter(|l| !l.trim().is_empty()).map(Record::from_jsonl).collect()
}

pub fn read_csv(data: &str) -> Result<Vec<Record>> {
    let mut lines = data.lines();
    let header: Vec<String> = match lines.next() {
        Some(h) => split_csv(h),
        None => return Ok(Vec::new()),
    };
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| Record::from_csv(&header, l))
        .collect()
}
