//! The simple network: bias-free linear layers around a single ReLU layer,
//! one output node and a strict output threshold.

use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::EncodedSample;
use crate::encoding::FuzzifierSpec;
use crate::error::{file_error, Error, Result};

/// Dense row-major matrix. Serialized as nested row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidNetwork(format!(
                "{} values cannot form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidNetwork(
                "matrix contains a non-finite weight".into(),
            ));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidNetwork("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    /// `self * x`; callers check `x.len() == cols`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(w, v)| w * v).sum())
            .collect()
    }

    /// `self^T * y`.
    fn mul_vec_transposed(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (r, &yr) in y.iter().enumerate() {
            for (o, w) in out.iter_mut().zip(self.row(r)) {
                *o += w * yr;
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

/// Active (1) / inactive (0) flag of every ReLU node, node 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReluStatus {
    pub bits: Vec<bool>,
}

/// Linear layers before the ReLU layer, linear layers after it.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleAnn {
    pre_layers: Vec<Matrix>,
    post_layers: Vec<Matrix>,
    threshold: f64,
}

impl SimpleAnn {
    pub fn new(pre_layers: Vec<Matrix>, post_layers: Vec<Matrix>, threshold: f64) -> Result<Self> {
        if pre_layers.is_empty() || post_layers.is_empty() {
            return Err(Error::InvalidNetwork(
                "need at least one layer before and one after the ReLU layer".into(),
            ));
        }
        if !threshold.is_finite() {
            return Err(Error::InvalidNetwork("threshold must be finite".into()));
        }
        let layers: Vec<&Matrix> = pre_layers.iter().chain(&post_layers).collect();
        for pair in layers.windows(2) {
            if pair[1].cols() != pair[0].rows() {
                return Err(Error::InvalidNetwork(format!(
                    "shape mismatch: a {}x{} layer cannot follow a {}x{} layer",
                    pair[1].rows(),
                    pair[1].cols(),
                    pair[0].rows(),
                    pair[0].cols()
                )));
            }
        }
        if layers.last().map(|m| m.rows()) != Some(1) {
            return Err(Error::InvalidNetwork(
                "final layer must have exactly one output row".into(),
            ));
        }
        Ok(Self {
            pre_layers,
            post_layers,
            threshold,
        })
    }

    pub fn pre_layers(&self) -> &[Matrix] {
        &self.pre_layers
    }

    pub fn post_layers(&self) -> &[Matrix] {
        &self.post_layers
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn input_size(&self) -> usize {
        self.pre_layers[0].cols()
    }

    pub fn relu_count(&self) -> usize {
        self.pre_layers.last().map(Matrix::rows).unwrap_or(0)
    }

    fn check_input(&self, input: &[f64]) -> Result<()> {
        if input.len() != self.input_size() {
            return Err(Error::DimensionMismatch {
                expected: self.input_size(),
                got: input.len(),
            });
        }
        Ok(())
    }

    /// Values entering the ReLU nodes.
    pub fn pre_activations(&self, input: &[f64]) -> Result<Vec<f64>> {
        self.check_input(input)?;
        Ok(self
            .pre_layers
            .iter()
            .fold(input.to_vec(), |h, m| m.mul_vec(&h)))
    }

    /// Runs the post-ReLU layers on the given hidden vector.
    pub(crate) fn apply_post(&self, hidden: Vec<f64>) -> f64 {
        self.post_layers.iter().fold(hidden, |h, m| m.mul_vec(&h))[0]
    }

    pub fn forward(&self, input: &[f64]) -> Result<f64> {
        let hidden = self
            .pre_activations(input)?
            .into_iter()
            .map(|z| z.max(0.0))
            .collect();
        Ok(self.apply_post(hidden))
    }

    /// 1 iff the output strictly exceeds the threshold.
    pub fn classify(&self, input: &[f64]) -> Result<bool> {
        Ok(self.forward(input)? > self.threshold)
    }

    /// A node is active when its pre-activation is non-negative.
    pub fn relu_status(&self, input: &[f64]) -> Result<ReluStatus> {
        Ok(ReluStatus {
            bits: self
                .pre_activations(input)?
                .into_iter()
                .map(|z| z >= 0.0)
                .collect(),
        })
    }
}

/// Layer sizes for training, e.g. `16-3-1` or `16-8-3r-2-1` where `r` marks
/// the ReLU layer. Without a marker a three-entry architecture puts the ReLU
/// layer in the middle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Architecture {
    pub sizes: Vec<usize>,
    pub relu_index: usize,
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid architecture `{s}`"));
        let mut sizes = Vec::new();
        let mut relu_index = None;
        for (i, part) in s.split('-').enumerate() {
            let part = part.trim();
            let (digits, marked) = match part.strip_suffix(['r', 'R']) {
                Some(d) => (d, true),
                None => (part, false),
            };
            let size: usize = digits.parse().map_err(|_| bad())?;
            if size == 0 {
                return Err(bad());
            }
            if marked {
                if relu_index.is_some() {
                    return Err(Error::InvalidArgument(
                        "only one ReLU layer is allowed".into(),
                    ));
                }
                relu_index = Some(i);
            }
            sizes.push(size);
        }
        let relu_index = match relu_index {
            Some(i) => i,
            None if sizes.len() == 3 => 1,
            None => {
                return Err(Error::InvalidArgument(format!(
                    "mark the ReLU layer in `{s}` with `r`"
                )))
            }
        };
        if relu_index == 0 || relu_index + 1 >= sizes.len() || *sizes.last().unwrap() != 1 {
            return Err(bad());
        }
        Ok(Self { sizes, relu_index })
    }
}

/// Full-batch gradient descent on mean squared error.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Initial weights are drawn uniformly from `[-init_scale, init_scale]`.
    pub init_scale: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 1.0,
            epochs: 20_000,
            seed: 7,
            init_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainReport {
    pub ann: SimpleAnn,
    pub final_loss: f64,
    pub accuracy: f64,
}

/// Random initial network for `arch`; threshold 0.
pub fn init_network(arch: &Architecture, seed: u64, init_scale: f64) -> Result<SimpleAnn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers: Vec<Matrix> = arch
        .sizes
        .windows(2)
        .map(|w| {
            let (cols, rows) = (w[0], w[1]);
            let data = (0..rows * cols)
                .map(|_| {
                    if init_scale > 0.0 {
                        rng.gen_range(-init_scale..=init_scale)
                    } else {
                        0.0
                    }
                })
                .collect();
            Matrix { rows, cols, data }
        })
        .collect();
    let post = layers.split_off(arch.relu_index);
    SimpleAnn::new(layers, post, 0.0)
}

pub fn train(
    samples: &[EncodedSample],
    arch: &Architecture,
    cfg: &TrainConfig,
) -> Result<TrainReport> {
    if !(cfg.learning_rate >= 0.0 && cfg.learning_rate.is_finite()) {
        return Err(Error::InvalidConfig(
            "learning rate must be a finite non-negative number".into(),
        ));
    }
    if cfg.epochs == 0 {
        return Err(Error::InvalidConfig("epochs must be at least 1".into()));
    }
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if !(samples.iter().any(|s| s.label) && samples.iter().any(|s| !s.label)) {
        return Err(Error::SingleClass);
    }
    for s in samples {
        if s.minterms.len() != arch.sizes[0] {
            return Err(Error::DimensionMismatch {
                expected: arch.sizes[0],
                got: s.minterms.len(),
            });
        }
    }

    let ann = init_network(arch, cfg.seed, cfg.init_scale)?;
    let n_pre = ann.pre_layers.len();
    let mut layers: Vec<Matrix> = ann.pre_layers.into_iter().chain(ann.post_layers).collect();
    let scale = 2.0 / samples.len() as f64;
    let mut loss = f64::NAN;

    for epoch in 0..cfg.epochs {
        let mut grads: Vec<Matrix> = layers
            .iter()
            .map(|m| Matrix::zeros(m.rows, m.cols))
            .collect();
        let mut total = 0.0;
        for s in samples {
            // inputs[i] is the vector fed into layer i
            let mut inputs: Vec<Vec<f64>> = Vec::with_capacity(layers.len());
            let mut h = s.minterms.values().to_vec();
            let mut relu_mask = Vec::new();
            for (i, m) in layers.iter().enumerate() {
                if i == n_pre {
                    relu_mask = h.iter().map(|&z| z >= 0.0).collect();
                    h.iter_mut().for_each(|z| *z = z.max(0.0));
                }
                let out = m.mul_vec(&h);
                inputs.push(h);
                h = out;
            }
            let err = h[0] - if s.label { 1.0 } else { 0.0 };
            total += err * err;

            let mut delta = vec![err * scale];
            for i in (0..layers.len()).rev() {
                let g = &mut grads[i];
                for (r, &d) in delta.iter().enumerate() {
                    for (c, &x) in inputs[i].iter().enumerate() {
                        g.data[r * g.cols + c] += d * x;
                    }
                }
                if i == 0 {
                    break;
                }
                delta = layers[i].mul_vec_transposed(&delta);
                if i == n_pre {
                    for (d, &active) in delta.iter_mut().zip(&relu_mask) {
                        if !active {
                            *d = 0.0;
                        }
                    }
                }
            }
        }
        loss = total / samples.len() as f64;
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch, loss });
        }
        for (m, g) in layers.iter_mut().zip(&grads) {
            for (w, dw) in m.data.iter_mut().zip(&g.data) {
                *w -= cfg.learning_rate * dw;
            }
        }
        if layers.iter().any(|m| m.data.iter().any(|w| !w.is_finite())) {
            return Err(Error::Diverged {
                epoch,
                loss: f64::NAN,
            });
        }
    }

    let post = layers.split_off(n_pre);
    let ann = SimpleAnn::new(layers, post, 0.0)?;
    let outputs: Vec<(f64, bool)> = samples
        .iter()
        .map(|s| Ok((ann.forward(s.minterms.values())?, s.label)))
        .collect::<Result<_>>()?;
    let (threshold, accuracy) = best_threshold(&outputs);
    log::info!(
        "training finished: loss {loss:.6}, accuracy {accuracy:.4}, threshold {threshold:.6}"
    );
    Ok(TrainReport {
        ann: ann.with_threshold(threshold),
        final_loss: loss,
        accuracy,
    })
}

/// Threshold maximizing accuracy of `output > threshold` against the labels.
///
/// Candidates are midpoints between consecutive distinct sorted outputs, plus
/// one value below the minimum and the maximum itself. Ties keep the lowest
/// candidate.
pub fn best_threshold(outputs: &[(f64, bool)]) -> (f64, f64) {
    if outputs.is_empty() {
        return (0.0, 0.0);
    }
    let mut sorted = outputs.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total = sorted.len();
    let positives = sorted.iter().filter(|s| s.1).count();

    // threshold below everything: all predicted 1
    let mut best = (sorted[0].0 - 1.0, positives);
    let mut correct = positives;
    let mut i = 0;
    while i < total {
        let v = sorted[i].0;
        while i < total && sorted[i].0 == v {
            correct = if sorted[i].1 {
                correct - 1
            } else {
                correct + 1
            };
            i += 1;
        }
        let candidate = if i < total {
            (v + sorted[i].0) / 2.0
        } else {
            v
        };
        if correct > best.1 {
            best = (candidate, correct);
        }
    }
    (best.0, best.1 as f64 / total as f64)
}

/// Classification accuracy of `ann` on encoded samples.
pub fn accuracy(ann: &SimpleAnn, samples: &[EncodedSample]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut correct = 0usize;
    for s in samples {
        if ann.classify(s.minterms.values())? == s.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / samples.len() as f64)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    input_size: usize,
    relu_count: usize,
    pre_layers: Vec<Matrix>,
    post_layers: Vec<Matrix>,
    threshold: f64,
    fuzzifier: FuzzifierSpec,
}

pub fn model_to_json(ann: &SimpleAnn, fuzzifier: &FuzzifierSpec) -> Result<String> {
    if fuzzifier.arity() >= usize::BITS as usize || 1usize << fuzzifier.arity() != ann.input_size()
    {
        return Err(Error::ModelFormat(format!(
            "fuzzifier has {} attributes but the network takes {} inputs",
            fuzzifier.arity(),
            ann.input_size()
        )));
    }
    let file = ModelFile {
        input_size: ann.input_size(),
        relu_count: ann.relu_count(),
        pre_layers: ann.pre_layers.clone(),
        post_layers: ann.post_layers.clone(),
        threshold: ann.threshold,
        fuzzifier: fuzzifier.clone(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn model_from_json(text: &str) -> Result<(SimpleAnn, FuzzifierSpec)> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::ModelFormat(e.to_string()))?;
    let ann = SimpleAnn::new(file.pre_layers, file.post_layers, file.threshold)
        .map_err(|e| Error::ModelFormat(e.to_string()))?;
    if ann.input_size() != file.input_size {
        return Err(Error::ModelFormat(format!(
            "shape mismatch: input_size is {} but the first layer takes {}",
            file.input_size,
            ann.input_size()
        )));
    }
    if ann.relu_count() != file.relu_count {
        return Err(Error::ModelFormat(format!(
            "shape mismatch: relu_count is {} but the ReLU layer has {} nodes",
            file.relu_count,
            ann.relu_count()
        )));
    }
    if file.fuzzifier.names.len() != file.fuzzifier.maps.len()
        || file.fuzzifier.arity() >= usize::BITS as usize
        || 1usize << file.fuzzifier.arity() != ann.input_size()
    {
        return Err(Error::ModelFormat(format!(
            "shape mismatch: fuzzifier has {} attributes but the network takes {} inputs",
            file.fuzzifier.arity(),
            ann.input_size()
        )));
    }
    Ok((ann, file.fuzzifier))
}

pub fn save_model(
    path: impl AsRef<Path>,
    ann: &SimpleAnn,
    fuzzifier: &FuzzifierSpec,
) -> Result<()> {
    std::fs::write(path.as_ref(), model_to_json(ann, fuzzifier)?)
        .map_err(file_error(path.as_ref()))?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<(SimpleAnn, FuzzifierSpec)> {
    model_from_json(&std::fs::read_to_string(path.as_ref()).map_err(file_error(path.as_ref()))?)
}
