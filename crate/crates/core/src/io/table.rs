use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::scenario::SimulationOutput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Json,
}

impl DataFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            DataFormat::Csv => "csv",
            DataFormat::Json => "json",
        }
    }
}

impl FromStr for DataFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(DataFormat::Csv),
            "json" => Ok(DataFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

/// A time column plus named value columns of equal length.
///
/// JSON form: `{"times": [...], "<label>": [...], ...}` in column order.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesTable {
    pub times: Vec<f64>,
    pub labels: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl TimeSeriesTable {
    pub fn new(times: Vec<f64>) -> Self {
        TimeSeriesTable {
            times,
            labels: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn from_trajectory<const N: usize>(tr: &Trajectory<N>, labels: &[&str; N]) -> Self {
        TimeSeriesTable {
            times: tr.times.clone(),
            labels: labels.iter().map(|l| l.to_string()).collect(),
            columns: (0..N).map(|i| tr.component(i)).collect(),
        }
    }

    pub fn push_column(&mut self, label: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let label = label.into();
        if values.len() != self.times.len() {
            return Err(Error::Precondition(format!(
                "column '{label}' has {} rows, table has {}",
                values.len(),
                self.times.len()
            )));
        }
        if label == "t" || label == "times" || self.labels.contains(&label) {
            return Err(Error::Precondition(format!("duplicate column '{label}'")));
        }
        self.labels.push(label);
        self.columns.push(values);
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.times.len()
    }

    pub fn column(&self, label: &str) -> Option<&[f64]> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(&self.columns[i])
    }

    /// A copy keeping only the named columns, in the given order.
    pub fn select(&self, labels: &[&str]) -> Result<Self> {
        let mut out = TimeSeriesTable::new(self.times.clone());
        for l in labels {
            let col = self
                .column(l)
                .ok_or_else(|| Error::Precondition(format!("no column '{l}'")))?;
            out.push_column(*l, col.to_vec())?;
        }
        Ok(out)
    }

    /// CSV with header `t,<labels>` and every value in 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let ser = |e: csv::Error| Error::Serialization(e.to_string());
        wr.write_record(std::iter::once("t").chain(self.labels.iter().map(String::as_str)))
            .map_err(ser)?;
        for r in 0..self.rows() {
            let row = std::iter::once(self.times[r])
                .chain(self.columns.iter().map(|c| c[r]))
                .map(|v| format!("{v:.16e}"));
            wr.write_record(row).map_err(ser)?;
        }
        wr.flush().map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn read_csv<R: std::io::Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let ser = |e: csv::Error| Error::Serialization(e.to_string());
        let header = rd.headers().map_err(ser)?.clone();
        if header.get(0) != Some("t") {
            return Err(Error::Serialization("first CSV column must be 't'".into()));
        }
        let labels: Vec<String> = header.iter().skip(1).map(String::from).collect();
        let mut table = TimeSeriesTable {
            times: Vec::new(),
            columns: vec![Vec::new(); labels.len()],
            labels,
        };
        for rec in rd.records() {
            let rec = rec.map_err(ser)?;
            let mut values = rec.iter().map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Serialization(format!("bad number '{f}': {e}")))
            });
            table.times.push(values.next().transpose()?.unwrap_or(f64::NAN));
            for col in table.columns.iter_mut() {
                col.push(values.next().transpose()?.unwrap_or(f64::NAN));
            }
        }
        Ok(table)
    }

    pub fn write(&self, path: &Path, format: DataFormat) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        match format {
            DataFormat::Csv => self.write_csv(&mut w)?,
            DataFormat::Json => serde_json::to_writer(&mut w, self).map_err(|e| Error::Serialization(e.to_string()))?,
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path, format: DataFormat) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let r = std::io::BufReader::new(file);
        match format {
            DataFormat::Csv => Self::read_csv(r),
            DataFormat::Json => serde_json::from_reader(r).map_err(|e| Error::Serialization(e.to_string())),
        }
    }
}

impl Serialize for TimeSeriesTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1 + self.labels.len()))?;
        map.serialize_entry("times", &self.times)?;
        for (l, c) in self.labels.iter().zip(&self.columns) {
            map.serialize_entry(l, c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for TimeSeriesTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = serde_json::Map::<String, serde_json::Value>::deserialize(d)?;
        let mut times = None;
        let mut table = TimeSeriesTable::new(Vec::new());
        for (k, v) in map {
            let values: Vec<f64> = serde_json::from_value(v).map_err(D::Error::custom)?;
            if k == "times" {
                times = Some(values);
            } else {
                table.labels.push(k);
                table.columns.push(values);
            }
        }
        table.times = times.ok_or_else(|| D::Error::missing_field("times"))?;
        if table.columns.iter().any(|c| c.len() != table.times.len()) {
            return Err(D::Error::custom("column length differs from times"));
        }
        Ok(table)
    }
}

/// Writes a simulation's samples, one column per compartment.
pub fn write_timeseries(out: &SimulationOutput, path: &Path, format: DataFormat) -> Result<()> {
    if out.is_empty() {
        return Err(Error::Precondition("empty trajectory".into()));
    }
    out.to_table().write(path, format)
}
