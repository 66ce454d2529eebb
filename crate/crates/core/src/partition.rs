//! Partition cells of the input space by ReLU activation pattern, the exact
//! linear map of each cell over minterm inputs, and Shapley values of a map.

use std::collections::BTreeMap;
use std::fmt;

use crate::dataset::EncodedSample;
use crate::encoding::log2_exact;
use crate::error::{Error, Result};
use crate::network::{ReluStatus, SimpleAnn};

/// Partition cell number: bit `m` (most significant first) is the status of
/// ReLU node `m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    index: u64,
    width: usize,
}

impl CellId {
    pub fn new(index: u64, width: usize) -> Result<Self> {
        if width == 0 || width > 63 || index >= 1u64 << width {
            return Err(Error::InvalidCell { cell: index, width });
        }
        Ok(Self { index, width })
    }

    /// The cell in which exactly ReLU node `node` (0-based) is active.
    pub fn single(node: usize, width: usize) -> Result<Self> {
        if node >= width {
            return Err(Error::InvalidCell { cell: 0, width });
        }
        Self::new(1u64 << (width - 1 - node), width)
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_active(&self, node: usize) -> bool {
        node < self.width && (self.index >> (self.width - 1 - node)) & 1 == 1
    }

    pub fn active_nodes(&self) -> Vec<usize> {
        (0..self.width).filter(|&m| self.is_active(m)).collect()
    }

    pub fn status(&self) -> ReluStatus {
        ReluStatus {
            bits: (0..self.width).map(|m| self.is_active(m)).collect(),
        }
    }

    /// Status bits as a `0`/`1` string, node 1 first.
    pub fn bit_string(&self) -> String {
        (0..self.width)
            .map(|m| if self.is_active(m) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

pub fn cell_number(status: &ReluStatus) -> Result<CellId> {
    if status.bits.is_empty() {
        return Err(Error::EmptyStatus);
    }
    let index = status
        .bits
        .iter()
        .fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
    CellId::new(index, status.bits.len())
}

/// Cell of the given input under `ann`.
pub fn cell_of(ann: &SimpleAnn, input: &[f64]) -> Result<CellId> {
    cell_number(&ann.relu_status(input)?)
}

/// Minterm weights of one cell's linear map.
#[derive(Debug, Clone, PartialEq)]
pub struct CellWeights {
    pub weights: Vec<f64>,
    /// `None` for weights that do not come from a network cell (overrides,
    /// projections of external weights).
    pub cell: Option<CellId>,
}

impl CellWeights {
    pub fn new(weights: Vec<f64>, cell: Option<CellId>) -> Result<Self> {
        log2_exact(weights.len())?;
        if let Some((k, &v)) = weights.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index: k, value: v });
        }
        Ok(Self { weights, cell })
    }

    pub fn attribute_count(&self) -> usize {
        self.weights.len().trailing_zeros() as usize
    }

    pub fn dot(&self, input: &[f64]) -> f64 {
        self.weights.iter().zip(input).map(|(w, x)| w * x).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCount {
    pub cell: CellId,
    pub label1: usize,
    pub label0: usize,
}

impl CellCount {
    pub fn total(&self) -> usize {
        self.label1 + self.label0
    }

    /// Share of label-1 objects in this cell.
    pub fn purity(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            self.label1 as f64 / self.total() as f64
        }
    }
}

/// Non-empty cells of a dataset with class counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartitionReport {
    pub relu_count: usize,
    pub cells: Vec<CellCount>,
}

impl PartitionReport {
    pub fn total(&self) -> usize {
        self.cells.iter().map(CellCount::total).sum()
    }

    pub fn get(&self, cell: CellId) -> Option<&CellCount> {
        self.cells.iter().find(|c| c.cell == cell)
    }

    /// Cell with the highest label-1 share among cells holding any label-1
    /// objects; ties go to the larger label-1 count, then the lower index.
    pub fn most_class1_pure(&self) -> Option<&CellCount> {
        self.cells.iter().filter(|c| c.label1 > 0).max_by(|a, b| {
            a.purity()
                .total_cmp(&b.purity())
                .then(a.label1.cmp(&b.label1))
                .then(b.cell.cmp(&a.cell))
        })
    }

    /// `cell_id,relu_bits,count_label1,count_label0`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cell_id,relu_bits,count_label1,count_label0\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.cell.index(),
                c.cell.bit_string(),
                c.label1,
                c.label0
            ));
        }
        out
    }

    /// Aligned table with one column per ReLU node.
    pub fn to_table(&self) -> String {
        let mut out = String::from("cell    ");
        for m in 1..=self.relu_count {
            out.push_str(&format!("{:>4}", format!("r{m}")));
        }
        out.push_str(&format!(
            " {:>8} {:>8} {:>7}\n",
            "label1", "label0", "purity"
        ));
        for c in &self.cells {
            out.push_str(&format!("{:<8}", format!("ANN_{}", c.cell.index())));
            for m in 0..self.relu_count {
                out.push_str(&format!("{:>4}", u8::from(c.cell.is_active(m))));
            }
            out.push_str(&format!(
                " {:>8} {:>8} {:>7.3}\n",
                c.label1,
                c.label0,
                c.purity()
            ));
        }
        out
    }
}

/// Assigns every sample to its cell; cells sorted by descending size, then index.
pub fn partition_dataset(ann: &SimpleAnn, samples: &[EncodedSample]) -> Result<PartitionReport> {
    let mut counts: BTreeMap<CellId, (usize, usize)> = BTreeMap::new();
    for s in samples {
        let cell = cell_of(ann, s.minterms.values())?;
        let entry = counts.entry(cell).or_default();
        if s.label {
            entry.0 += 1;
        } else {
            entry.1 += 1;
        }
    }
    let mut cells: Vec<CellCount> = counts
        .into_iter()
        .map(|(cell, (label1, label0))| CellCount {
            cell,
            label1,
            label0,
        })
        .collect();
    cells.sort_by(|a, b| b.total().cmp(&a.total()).then(a.cell.cmp(&b.cell)));
    Ok(PartitionReport {
        relu_count: ann.relu_count(),
        cells,
    })
}

/// Samples whose cell is `cell`.
pub fn cell_members<'a>(
    ann: &SimpleAnn,
    samples: &'a [EncodedSample],
    cell: CellId,
) -> Result<Vec<&'a EncodedSample>> {
    let mut out = Vec::new();
    for s in samples {
        if cell_of(ann, s.minterms.values())? == cell {
            out.push(s);
        }
    }
    Ok(out)
}

/// Linear map of the reduced network in which every active ReLU node is the
/// identity and every inactive node the constant 0. Weight `k` is that
/// network's output on the `k`-th standard basis vector.
pub fn extract_cell_weights(ann: &SimpleAnn, cell: CellId) -> Result<CellWeights> {
    if cell.width() != ann.relu_count() {
        return Err(Error::CellWidthMismatch {
            expected: ann.relu_count(),
            got: cell.width(),
        });
    }
    let size = ann.input_size();
    let weights = (0..size)
        .map(|k| {
            let mut basis = vec![0.0; size];
            basis[k] = 1.0;
            let hidden = ann
                .pre_activations(&basis)?
                .into_iter()
                .enumerate()
                .map(|(m, z)| if cell.is_active(m) { z } else { 0.0 })
                .collect();
            Ok(ann.apply_post(hidden))
        })
        .collect::<Result<Vec<f64>>>()?;
    CellWeights::new(weights, Some(cell))
}

/// Weights of every single-active-node cell, node 1 first.
pub fn single_node_cells(ann: &SimpleAnn) -> Result<Vec<CellWeights>> {
    let l = ann.relu_count();
    (0..l)
        .map(|m| extract_cell_weights(ann, CellId::single(m, l)?))
        .collect()
}

/// Sums the single-active-node maps of every active node of `cell`.
pub fn compose_cell_weights(singles: &[CellWeights], cell: CellId) -> Result<CellWeights> {
    let size = singles
        .first()
        .map(|s| s.weights.len())
        .ok_or(Error::MissingSingleCell {
            cell: cell.index(),
            node: 0,
        })?;
    let mut weights = vec![0.0; size];
    for node in cell.active_nodes() {
        let single = CellId::single(node, cell.width())?;
        let cw =
            singles
                .iter()
                .find(|s| s.cell == Some(single))
                .ok_or(Error::MissingSingleCell {
                    cell: cell.index(),
                    node,
                })?;
        if cw.weights.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                got: cw.weights.len(),
            });
        }
        for (acc, w) in weights.iter_mut().zip(&cw.weights) {
            *acc += w;
        }
    }
    CellWeights::new(weights, Some(cell))
}

/// Per-attribute Shapley values where a coalition `S` is worth the weight of
/// the minterm whose non-negated attributes are exactly `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapleyResult {
    pub values: Vec<f64>,
}

impl ShapleyResult {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

pub fn shapley(weights: &[f64]) -> Result<ShapleyResult> {
    let n = log2_exact(weights.len())?;
    let factorial = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let n_fact = factorial(n);
    let coefficient: Vec<f64> = (0..n)
        .map(|s| factorial(s) * factorial(n - 1 - s) / n_fact)
        .collect();
    let values = (0..n)
        .map(|i| {
            let bit = 1usize << (n - 1 - i);
            (0..weights.len())
                .filter(|k| k & bit == 0)
                .map(|k| coefficient[k.count_ones() as usize] * (weights[k | bit] - weights[k]))
                .sum()
        })
        .collect();
    Ok(ShapleyResult { values })
}
