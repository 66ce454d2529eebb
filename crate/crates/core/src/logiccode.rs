//! From real minterm weights to weighted logic expressions.
//!
//! Weights are mapped affinely onto `[0, 1]`, rounded to the nearest multiple
//! of `2^-bcl_max` and split into binary digits. The digits at one level form
//! a bit vector over minterms, i.e. a logic expression in complete
//! disjunctive normal form, weighted by `2^-level`.

use crate::dataset::EncodedSample;
use crate::encoding::{log2_exact, minterm_bits, MintermVector};
use crate::error::{Error, Result};
use crate::partition::{CellId, CellWeights};

pub const DEFAULT_BCL_MAX: usize = 3;

/// Whether scaling bounds are taken over all given cells or each cell alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalingScope {
    #[default]
    Joint,
    PerCell,
}

/// The affine map `f(x) = (x - min) / (max - min)`; constant 1 when `max == min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingParams {
    pub min: f64,
    pub max: f64,
    pub scaled_threshold: f64,
}

impl ScalingParams {
    pub fn new(min: f64, max: f64, threshold: f64) -> Self {
        let mut p = Self {
            min,
            max,
            scaled_threshold: 0.0,
        };
        p.scaled_threshold = p.apply(threshold);
        p
    }

    pub fn is_degenerate(&self) -> bool {
        self.max <= self.min
    }

    /// Not clamped: the threshold may fall outside the weight range.
    pub fn apply(&self, x: f64) -> f64 {
        if self.is_degenerate() {
            1.0
        } else {
            (x - self.min) / (self.max - self.min)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledCellWeights {
    pub weights: Vec<f64>,
    pub params: ScalingParams,
    pub cell: Option<CellId>,
}

impl ScaledCellWeights {
    /// The identically-zero map of a cell without active ReLU nodes. It is
    /// kept at zero instead of being scaled so its energy report stays
    /// degenerate.
    pub fn zero_map(len: usize, cell: Option<CellId>, threshold: f64) -> Self {
        Self {
            weights: vec![0.0; len],
            params: ScalingParams {
                min: 0.0,
                max: 0.0,
                scaled_threshold: threshold,
            },
            cell,
        }
    }

    pub fn dot(&self, input: &[f64]) -> f64 {
        self.weights.iter().zip(input).map(|(w, x)| w * x).sum()
    }
}

pub fn scale_weights(
    cells: &[CellWeights],
    scope: ScalingScope,
    threshold: f64,
) -> Result<Vec<ScaledCellWeights>> {
    if cells.is_empty() {
        return Err(Error::InvalidArgument("no cells to scale".into()));
    }
    let bounds = |ws: &mut dyn Iterator<Item = f64>| {
        ws.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| {
            (lo.min(w), hi.max(w))
        })
    };
    let joint = bounds(&mut cells.iter().flat_map(|c| c.weights.iter().copied()));
    Ok(cells
        .iter()
        .map(|c| {
            let (min, max) = match scope {
                ScalingScope::Joint => joint,
                ScalingScope::PerCell => bounds(&mut c.weights.iter().copied()),
            };
            let params = ScalingParams::new(min, max, threshold);
            ScaledCellWeights {
                weights: c
                    .weights
                    .iter()
                    .map(|&w| params.apply(w).clamp(0.0, 1.0))
                    .collect(),
                params,
                cell: c.cell,
            }
        })
        .collect())
}

/// `bits[level][k]` for levels `0..=bcl_max`; level `b` carries value `2^-b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitTensor {
    bits: Vec<Vec<bool>>,
}

impl BitTensor {
    /// Builds a tensor from explicit level slices (all of equal power-of-two length).
    pub fn from_levels(bits: Vec<Vec<bool>>) -> Result<Self> {
        let len = bits.first().map(Vec::len).ok_or(Error::EmptySelection)?;
        log2_exact(len)?;
        if let Some(bad) = bits.iter().find(|l| l.len() != len) {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: bad.len(),
            });
        }
        Ok(Self { bits })
    }

    pub fn bcl_max(&self) -> usize {
        self.bits.len() - 1
    }

    pub fn level_count(&self) -> usize {
        self.bits.len()
    }

    pub fn minterm_count(&self) -> usize {
        self.bits[0].len()
    }

    pub fn attribute_count(&self) -> usize {
        self.minterm_count().trailing_zeros() as usize
    }

    pub fn bit(&self, level: usize, k: usize) -> bool {
        self.bits[level][k]
    }

    pub fn level(&self, level: usize) -> &[bool] {
        &self.bits[level]
    }

    pub fn reconstructed(&self, k: usize) -> f64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, l)| l[k])
            .fold(0.0, |acc, (b, _)| acc + level_factor(b))
    }

    pub fn reconstruct(&self) -> Vec<f64> {
        (0..self.minterm_count())
            .map(|k| self.reconstructed(k))
            .collect()
    }

    pub fn check_levels(&self, levels: &[usize]) -> Result<()> {
        match levels.iter().find(|&&l| l > self.bcl_max()) {
            Some(&level) => Err(Error::LevelOutOfRange {
                level,
                max: self.bcl_max(),
            }),
            None => Ok(()),
        }
    }

    pub fn all_levels(&self) -> Vec<usize> {
        (0..self.level_count()).collect()
    }
}

/// `2^-level`.
pub fn level_factor(level: usize) -> f64 {
    (-(level as f64)).exp2()
}

/// Rounds each weight to the nearest multiple of `2^-bcl_max` (ties up) and
/// expands it into binary digits, most significant level first. A weight of
/// exactly 1 sets only the `2^0` digit.
pub fn bitcode(weights: &[f64], bcl_max: usize) -> Result<BitTensor> {
    if bcl_max > 52 {
        return Err(Error::InvalidArgument(
            "bcl_max above 52 exceeds f64 precision".into(),
        ));
    }
    log2_exact(weights.len())?;
    let steps = (1u64 << bcl_max) as f64;
    let mut bits = vec![vec![false; weights.len()]; bcl_max + 1];
    for (k, &w) in weights.iter().enumerate() {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::WeightOutOfRange { k, value: w });
        }
        let q = (w * steps + 0.5).floor() as u64;
        for (level, slice) in bits.iter_mut().enumerate() {
            slice[k] = (q >> (bcl_max - level)) & 1 == 1;
        }
    }
    Ok(BitTensor { bits })
}

/// A logic expression as its set of active minterms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicExpressionBits {
    active: Vec<bool>,
}

impl LogicExpressionBits {
    pub fn new(active: Vec<bool>) -> Result<Self> {
        log2_exact(active.len())?;
        Ok(Self { active })
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut active = vec![false; 1 << n];
        for &k in indices {
            *active.get_mut(k).ok_or(Error::MintermOutOfRange { k, n })? = true;
        }
        Ok(Self { active })
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn attribute_count(&self) -> usize {
        self.active.len().trailing_zeros() as usize
    }

    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&k| self.active[k]).collect()
    }

    pub fn complement(&self) -> Self {
        Self {
            active: self.active.iter().map(|b| !b).collect(),
        }
    }

    /// Active minterms written as conjunctions, e.g. `~a & b | a & ~b`.
    pub fn to_dnf(&self, names: &[String]) -> String {
        let n = self.attribute_count();
        let terms: Vec<String> = self
            .active_indices()
            .into_iter()
            .map(|k| {
                minterm_bits(k, n)
                    .expect("index below 2^n")
                    .iter()
                    .zip(names)
                    .map(|(&b, name)| if b { name.clone() } else { format!("~{name}") })
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        if terms.is_empty() {
            "false".into()
        } else if terms.len() == self.active.len() {
            "true".into()
        } else {
            terms.join(" | ")
        }
    }
}

pub fn level_expression(bt: &BitTensor, level: usize) -> Result<LogicExpressionBits> {
    bt.check_levels(&[level])?;
    Ok(LogicExpressionBits {
        active: bt.level(level).to_vec(),
    })
}

/// Sum of the minterm values at the expression's active positions.
pub fn eval_expression(e: &LogicExpressionBits, mt: &MintermVector) -> Result<f64> {
    if e.len() != mt.len() {
        return Err(Error::DimensionMismatch {
            expected: e.len(),
            got: mt.len(),
        });
    }
    Ok(e.active
        .iter()
        .zip(mt.values())
        .filter(|(a, _)| **a)
        .fold(0.0, |acc, (_, v)| acc + v))
}

/// `sum over levels of 2^-level * [e_level]`.
pub fn approx_forward(bt: &BitTensor, mt: &MintermVector, levels: &[usize]) -> Result<f64> {
    bt.check_levels(levels)?;
    if bt.minterm_count() != mt.len() {
        return Err(Error::DimensionMismatch {
            expected: bt.minterm_count(),
            got: mt.len(),
        });
    }
    Ok(levels
        .iter()
        .map(|&level| {
            let value: f64 = bt
                .level(level)
                .iter()
                .zip(mt.values())
                .filter(|(b, _)| **b)
                .fold(0.0, |acc, (_, v)| acc + v);
            level_factor(level) * value
        })
        .fold(0.0, |acc, v| acc + v))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelEnergy {
    pub level: usize,
    pub set_bits: usize,
    pub absolute: f64,
    pub relative_percent: f64,
}

/// Contribution of each bit level relative to the total scaled weight.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub weight_sum: f64,
    pub levels: Vec<LevelEnergy>,
    pub bitcode_sum: f64,
    pub bitcode_relative_percent: f64,
    /// Set when the weight sum is zero; relative energies are then reported as 0.
    pub degenerate: bool,
}

impl EnergyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,factor,set_bits,absolute,relative_percent\n");
        for l in &self.levels {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                l.level,
                level_factor(l.level),
                l.set_bits,
                l.absolute,
                l.relative_percent
            ));
        }
        out.push_str(&format!(
            "sum,,,{},{}\nweights,,,{},100\n",
            self.bitcode_sum, self.bitcode_relative_percent, self.weight_sum
        ));
        out
    }
}

pub fn energy_report(weights: &[f64], bt: &BitTensor) -> Result<EnergyReport> {
    if weights.len() != bt.minterm_count() {
        return Err(Error::DimensionMismatch {
            expected: bt.minterm_count(),
            got: weights.len(),
        });
    }
    let weight_sum: f64 = weights.iter().sum();
    let degenerate = weight_sum == 0.0;
    let relative = |x: f64| {
        if degenerate {
            0.0
        } else {
            x / weight_sum * 100.0
        }
    };
    let levels: Vec<LevelEnergy> = (0..bt.level_count())
        .map(|level| {
            let set_bits = bt.level(level).iter().filter(|b| **b).count();
            let absolute = level_factor(level) * set_bits as f64;
            LevelEnergy {
                level,
                set_bits,
                absolute,
                relative_percent: relative(absolute),
            }
        })
        .collect();
    let bitcode_sum = levels.iter().map(|l| l.absolute).sum();
    Ok(EnergyReport {
        weight_sum,
        levels,
        bitcode_sum,
        bitcode_relative_percent: relative(bitcode_sum),
        degenerate,
    })
}

/// Share of samples where `approx_forward(levels) > scaled threshold` matches the label.
pub fn level_accuracy(
    bt: &BitTensor,
    params: &ScalingParams,
    samples: &[&EncodedSample],
    levels: &[usize],
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut correct = 0usize;
    for s in samples {
        let predicted = approx_forward(bt, &s.minterms, levels)? > params.scaled_threshold;
        if predicted == s.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / samples.len() as f64)
}

/// Accuracy of the exact scaled cell map `th(f(mw) . mt)` on the samples.
pub fn scaled_accuracy(sw: &ScaledCellWeights, samples: &[&EncodedSample]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let correct = samples
        .iter()
        .filter(|s| (sw.dot(s.minterms.values()) > sw.params.scaled_threshold) == s.label)
        .count();
    Ok(correct as f64 / samples.len() as f64)
}

/// Marginalizes minterm weights onto the kept attributes (0-based indices)
/// by summing over every bit combination of the dropped ones. Kept
/// attributes retain their relative order.
pub fn project(cw: &CellWeights, keep: &[usize]) -> Result<CellWeights> {
    let n = log2_exact(cw.weights.len())?;
    if keep.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&index) = keep.iter().find(|&&j| j >= n) {
        return Err(Error::AttributeOutOfRange { index, n });
    }
    let m = keep.len();
    let mut out = vec![0.0; 1 << m];
    for (k, &w) in cw.weights.iter().enumerate() {
        let reduced = keep
            .iter()
            .fold(0usize, |acc, &j| (acc << 1) | ((k >> (n - 1 - j)) & 1));
        out[reduced] += w;
    }
    CellWeights::new(out, cw.cell)
}

/// Table with one row per minterm: attribute bits, raw and scaled weight,
/// level bits and the reconstructed value.
pub fn bit_table_csv(names: &[String], raw: &[f64], scaled: &[f64], bt: &BitTensor) -> String {
    let n = bt.attribute_count();
    let mut out = String::from("k");
    for name in names {
        out.push(',');
        out.push_str(name);
    }
    out.push_str(",weight,scaled");
    for level in 0..bt.level_count() {
        out.push_str(&format!(",level{level}"));
    }
    out.push_str(",reconstructed\n");
    for k in 0..bt.minterm_count() {
        out.push_str(&k.to_string());
        for b in minterm_bits(k, n).expect("index below 2^n") {
            out.push_str(if b { ",1" } else { ",0" });
        }
        out.push_str(&format!(",{},{}", raw[k], scaled[k]));
        for level in 0..bt.level_count() {
            out.push_str(if bt.bit(level, k) { ",1" } else { ",0" });
        }
        out.push_str(&format!(",{}\n", bt.reconstructed(k)));
    }
    out
}

/// Aligned text version of [`bit_table_csv`] with energy rows at the bottom.
pub fn bit_table_text(
    names: &[String],
    raw: &[f64],
    scaled: &[f64],
    bt: &BitTensor,
    energy: &EnergyReport,
) -> String {
    let n = bt.attribute_count();
    let name_w = names.iter().map(String::len).max().unwrap_or(1).max(1);
    let mut out = format!("{:>4} ", "k");
    for name in names {
        out.push_str(&format!(" {name:>name_w$}"));
    }
    out.push_str(&format!(" | {:>9} {:>7} |", "weight", "scaled"));
    for level in 0..bt.level_count() {
        out.push_str(&format!(" {:>5}", format!("2^-{level}")));
    }
    out.push_str(&format!(" | {:>6}\n", "sum"));
    for k in 0..bt.minterm_count() {
        out.push_str(&format!("{k:>4} "));
        for b in minterm_bits(k, n).expect("index below 2^n") {
            out.push_str(&format!(" {:>name_w$}", u8::from(b)));
        }
        out.push_str(&format!(" | {:>9.3} {:>7.3} |", raw[k], scaled[k]));
        for level in 0..bt.level_count() {
            out.push_str(&format!(" {:>5}", u8::from(bt.bit(level, k))));
        }
        out.push_str(&format!(" | {:>6.3}\n", bt.reconstructed(k)));
    }
    let pad = 5 + names.len() * (name_w + 1);
    out.push_str(&format!(
        "{:>pad$} | {:>9} {:>7.3} |",
        "sum", "", energy.weight_sum
    ));
    for l in &energy.levels {
        out.push_str(&format!(
            " {:>5}",
            format!("{}/{}", l.set_bits, 1u64 << l.level)
        ));
    }
    out.push_str(&format!(" | {:>6.3}\n", energy.bitcode_sum));
    out.push_str(&format!("{:>pad$} | {:>9} {:>6.0}% |", "E", "", 100.0));
    for l in &energy.levels {
        out.push_str(&format!(" {:>4.0}%", l.relative_percent));
    }
    out.push_str(&format!(" | {:>5.0}%\n", energy.bitcode_relative_percent));
    if energy.degenerate {
        out.push_str("(degenerate: weight sum is zero)\n");
    }
    out
}
