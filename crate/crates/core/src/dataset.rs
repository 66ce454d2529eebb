//! CSV ingestion: one binary label column, every other column an attribute.

use std::io::Read;
use std::path::Path;

use crate::encoding::{
    fuzzify, minterm_transform, FuzzifierSpec, LabeledSample, MintermVector, RawObject,
};
use crate::error::{file_error, Error, Result};

/// A labeled tabular dataset with attribute names in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub names: Vec<String>,
    pub samples: Vec<LabeledSample>,
}

/// Minterm-encoded sample, the network's training and evaluation unit.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedSample {
    pub minterms: MintermVector,
    pub label: bool,
}

impl Dataset {
    pub fn from_csv_path(path: impl AsRef<Path>, label_column: &str) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref()).map_err(file_error(path.as_ref()))?;
        Self::from_csv_reader(file, label_column, true)
    }

    /// Reads CSV data. Without a header, columns are named `a1 .. a(n)` in file
    /// order and `label_column` must be a 1-based column number.
    pub fn from_csv_reader<R: Read>(
        reader: R,
        label_column: &str,
        has_header: bool,
    ) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(has_header)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let header_row: Option<Vec<String>> = if has_header {
            Some(rdr.headers()?.iter().map(str::to_string).collect())
        } else {
            None
        };
        let mut records = rdr.records();
        let mut first = None;
        let header: Vec<String> = if let Some(h) = header_row {
            h
        } else {
            match records.next() {
                Some(rec) => {
                    let rec = rec?;
                    let names = (1..=rec.len()).map(|i| format!("a{i}")).collect();
                    first = Some(rec);
                    names
                }
                None => Vec::new(),
            }
        };
        if header.is_empty() {
            return Ok(Self {
                names: Vec::new(),
                samples: Vec::new(),
            });
        }

        let label_idx = header
            .iter()
            .position(|h| h == label_column)
            .or_else(|| {
                label_column
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1 && i <= header.len())
                    .map(|i| i - 1)
            })
            .ok_or_else(|| {
                Error::InvalidArgument(format!("label column `{label_column}` not found"))
            })?;
        if header.len() < 2 {
            return Err(Error::InvalidArgument(
                "dataset needs at least one attribute column".into(),
            ));
        }
        let names: Vec<String> = header
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != label_idx)
            .map(|(_, h)| h.clone())
            .collect();

        let mut samples = Vec::new();
        for (row, rec) in first.into_iter().map(Ok).chain(records).enumerate() {
            let rec = rec?;
            let row = row + 1;
            if rec.len() != header.len() {
                return Err(Error::ArityMismatch {
                    expected: header.len(),
                    got: rec.len(),
                });
            }
            let raw_label = &rec[label_idx];
            let label = match raw_label.parse::<f64>() {
                Ok(0.0) => false,
                Ok(1.0) => true,
                _ => {
                    return Err(Error::InvalidLabel {
                        row,
                        value: raw_label.to_string(),
                    })
                }
            };
            let mut values = Vec::with_capacity(names.len());
            for (i, field) in rec.iter().enumerate() {
                if i == label_idx {
                    continue;
                }
                let v = field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::InvalidValue {
                        row,
                        column: header[i].clone(),
                        value: field.to_string(),
                    })?;
                values.push(v);
            }
            samples.push(LabeledSample {
                object: RawObject { values },
                label,
            });
        }
        Ok(Self { names, samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Fuzzifies and minterm-transforms every sample.
    pub fn encode(&self, spec: &FuzzifierSpec) -> Result<Vec<EncodedSample>> {
        self.samples
            .iter()
            .map(|s| {
                let f = fuzzify(&s.object, spec)?;
                Ok(EncodedSample {
                    minterms: minterm_transform(&f)?,
                    label: s.label,
                })
            })
            .collect()
    }
}

/// Reads the named columns of a headed CSV file, in the order given. Other
/// columns are ignored.
pub fn read_objects<R: Read>(reader: R, names: &[String]) -> Result<Vec<RawObject>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let columns = names
        .iter()
        .map(|n| {
            header
                .iter()
                .position(|h| h == n)
                .ok_or_else(|| Error::InvalidArgument(format!("column `{n}` not found")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut out = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let values = columns
            .iter()
            .map(|&c| {
                let field = rec.get(c).unwrap_or("");
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::InvalidValue {
                        row: row + 1,
                        column: header[c].clone(),
                        value: field.to_string(),
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        out.push(RawObject { values });
    }
    Ok(out)
}
