//! Fuzzification of raw tabular attributes and the minterm transform.
//!
//! Every raw attribute value is mapped by a monotone function onto a degree in
//! `[0, 1]`. The `n` degrees of one object are then expanded into `2^n`
//! minterm values: minterm `k` is the product over all attributes of either
//! the degree (bit set in `k`) or its complement (bit clear). Attribute 1 is
//! the most significant bit of `k`, so for two attributes `a, b` the order is
//! `(!a!b, !ab, a!b, ab)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the attribute count; `2^12 = 4096` minterms.
pub const DEFAULT_MAX_ATTRIBUTES: usize = 12;

/// Numeric slack used when checking that minterm values sum to one.
pub const MINTERM_SUM_TOLERANCE: f64 = 1e-9;

/// One object with `n` raw attribute values in application units.
#[derive(Debug, Clone, PartialEq)]
pub struct RawObject {
    pub values: Vec<f64>,
}

impl RawObject {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { values })
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }
}

/// A raw object together with its binary class.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub object: RawObject,
    pub label: bool,
}

/// Which family of monotone maps `fit_fuzzifier` produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FuzzifierKind {
    #[default]
    MinMax,
    Logistic,
}

/// Monotone map of one raw attribute onto `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AttributeMap {
    /// Affine map sending `lo` to 0 and `hi` to 1, clamped outside.
    MinMax { lo: f64, hi: f64 },
    /// `1 / (1 + exp(-steepness * (x - midpoint)))`.
    Logistic { midpoint: f64, steepness: f64 },
}

impl AttributeMap {
    /// A degenerate map (constant attribute) sends every value to 1.
    pub fn is_degenerate(&self) -> bool {
        match *self {
            AttributeMap::MinMax { lo, hi } => hi <= lo,
            AttributeMap::Logistic { steepness, .. } => steepness <= 0.0,
        }
    }

    pub fn apply(&self, x: f64) -> f64 {
        if self.is_degenerate() {
            return 1.0;
        }
        let degree = match *self {
            AttributeMap::MinMax { lo, hi } => (x - lo) / (hi - lo),
            AttributeMap::Logistic {
                midpoint,
                steepness,
            } => 1.0 / (1.0 + (-steepness * (x - midpoint)).exp()),
        };
        degree.clamp(0.0, 1.0)
    }
}

/// Per-attribute fuzzification parameters plus the attribute names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzifierSpec {
    pub names: Vec<String>,
    pub maps: Vec<AttributeMap>,
}

impl FuzzifierSpec {
    pub fn new(names: Vec<String>, maps: Vec<AttributeMap>) -> Result<Self> {
        if names.len() != maps.len() {
            return Err(Error::ArityMismatch {
                expected: maps.len(),
                got: names.len(),
            });
        }
        Ok(Self { names, maps })
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.maps.len() {
            return Err(Error::ArityMismatch {
                expected: self.maps.len(),
                got: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    /// Indices of attributes whose map is constant.
    pub fn degenerate_attributes(&self) -> Vec<usize> {
        self.maps
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_degenerate())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Default attribute names `a1 .. an`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

/// Degrees in `[0, 1]` of one object.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzifiedObject {
    degrees: Vec<f64>,
}

impl FuzzifiedObject {
    pub fn new(degrees: Vec<f64>) -> Result<Self> {
        for (index, &value) in degrees.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::DegreeOutOfRange { index, value });
            }
        }
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn arity(&self) -> usize {
        self.degrees.len()
    }
}

/// The `2^n` minterm values of one object.
#[derive(Debug, Clone, PartialEq)]
pub struct MintermVector {
    values: Vec<f64>,
    n: usize,
}

impl MintermVector {
    /// Wraps externally computed minterm values, checking range and unit sum.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let n = log2_exact(values.len())?;
        for (k, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::DegreeOutOfRange { index: k, value: v });
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > MINTERM_SUM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "minterm values sum to {sum}, expected 1"
            )));
        }
        Ok(Self { values, n })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn attribute_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl AsRef<[f64]> for MintermVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Returns `n` when `len == 2^n`.
pub fn log2_exact(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Fits per-attribute maps on a dataset.
///
/// Min-max uses the column minimum and maximum. Logistic centres on the
/// column mean with steepness `1 / std`. Constant columns produce degenerate
/// maps (constant 1) and are logged as warnings.
pub fn fit_fuzzifier(samples: &[LabeledSample], kind: FuzzifierKind) -> Result<FuzzifierSpec> {
    let first = samples.first().ok_or(Error::EmptyDataset)?;
    let n = first.object.arity();
    for s in samples {
        if s.object.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: s.object.arity(),
            });
        }
    }
    let count = samples.len() as f64;
    let maps = (0..n)
        .map(|j| {
            let column = samples.iter().map(|s| s.object.values[j]);
            match kind {
                FuzzifierKind::MinMax => {
                    let (lo, hi) = column
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                            (lo.min(x), hi.max(x))
                        });
                    AttributeMap::MinMax { lo, hi }
                }
                FuzzifierKind::Logistic => {
                    let mean = column.clone().sum::<f64>() / count;
                    let var = column.map(|x| (x - mean).powi(2)).sum::<f64>() / count;
                    let steepness = if var > 0.0 { 1.0 / var.sqrt() } else { 0.0 };
                    AttributeMap::Logistic {
                        midpoint: mean,
                        steepness,
                    }
                }
            }
        })
        .collect::<Vec<_>>();
    let spec = FuzzifierSpec {
        names: default_names(n),
        maps,
    };
    for j in spec.degenerate_attributes() {
        log::warn!("attribute {} is constant; its degree is fixed to 1", j + 1);
    }
    Ok(spec)
}

pub fn fuzzify(x: &RawObject, spec: &FuzzifierSpec) -> Result<FuzzifiedObject> {
    if x.arity() != spec.arity() {
        return Err(Error::ArityMismatch {
            expected: spec.arity(),
            got: x.arity(),
        });
    }
    let degrees = x
        .values
        .iter()
        .zip(&spec.maps)
        .map(|(&v, m)| m.apply(v))
        .collect();
    Ok(FuzzifiedObject { degrees })
}

/// Minterm transform with the default attribute cap.
pub fn minterm_transform(f: &FuzzifiedObject) -> Result<MintermVector> {
    minterm_transform_capped(f, DEFAULT_MAX_ATTRIBUTES)
}

pub fn minterm_transform_capped(
    f: &FuzzifiedObject,
    max_attributes: usize,
) -> Result<MintermVector> {
    let n = f.arity();
    if n > max_attributes {
        return Err(Error::TooManyAttributes {
            n,
            max: max_attributes,
        });
    }
    let mut values = Vec::with_capacity(1 << n);
    values.push(1.0);
    // Each attribute doubles the vector; earlier attributes end up on higher bits.
    for (index, &m) in f.degrees.iter().enumerate() {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::DegreeOutOfRange { index, value: m });
        }
        values = values
            .iter()
            .flat_map(|&v| [v * (1.0 - m), v * m])
            .collect();
    }
    Ok(MintermVector { values, n })
}

/// Bits of minterm `k`, attribute 1 first (most significant bit first).
pub fn minterm_bits(k: usize, n: usize) -> Result<Vec<bool>> {
    if n >= usize::BITS as usize || k >= 1usize << n {
        return Err(Error::MintermOutOfRange { k, n });
    }
    Ok((0..n).map(|j| (k >> (n - 1 - j)) & 1 == 1).collect())
}

/// Bit mask of attribute `j` (0-based) inside a minterm index over `n` attributes.
pub fn attribute_mask(j: usize, n: usize) -> usize {
    1 << (n - 1 - j)
}
