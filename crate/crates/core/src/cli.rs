//! Command-line front end.
//!
//! Reports print numbers with three decimals; CSV files keep full precision.
//! Errors end the process with a one-line `error: ...` message, exit code 2
//! for file and usage problems and 1 for everything else.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    ast_to_minterms, compare, parse_hypothesis, trend_grid, TrendGrid, DEFAULT_FIXED_DEGREE,
    DEFAULT_RESOLUTION,
};
use crate::dataset::{read_objects, Dataset, EncodedSample};
use crate::encoding::{
    default_names, fit_fuzzifier, fuzzify, minterm_transform, FuzzifierKind, FuzzifierSpec,
};
use crate::error::{file_error, Error, Result};
use crate::logiccode::{
    bit_table_csv, bit_table_text, bitcode, energy_report, level_accuracy, level_expression,
    project, scale_weights, scaled_accuracy, BitTensor, EnergyReport, ScaledCellWeights,
    ScalingScope, DEFAULT_BCL_MAX,
};
use crate::network::{load_model, save_model, train, Architecture, SimpleAnn, TrainConfig};
use crate::partition::{
    cell_members, cell_of, extract_cell_weights, partition_dataset, shapley, single_node_cells,
    CellId, CellWeights,
};
use crate::qldt::{build_qldt, render, RenderFormat};

/// Threshold assumed for weight overrides when neither `--threshold` nor a model is given.
pub const DEFAULT_OVERRIDE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Parser)]
#[command(
    name = "relulogic",
    version,
    about = "Read a one-ReLU-layer network as weighted logic expressions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a fuzzifier and train a network on a labeled CSV file
    Train(TrainArgs),
    /// Count samples per ReLU activation cell
    Partition(PartitionArgs),
    /// Bit-code a cell's minterm weights and print its logic expressions
    Explain(ExplainArgs),
    /// Shapley values of a cell's attributes
    Shapley(ShapleyArgs),
    /// Marginalize a cell onto a subset of attributes and bit-code the result
    Project(ProjectArgs),
    /// Compare a hypothesis formula with an extracted expression
    Hypothesis(HypothesisArgs),
    /// Evaluate bit levels over a grid of one or two attributes
    Trend(TrendArgs),
    /// Classify the rows of a CSV file with a trained model
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FuzzifierArg {
    MinMax,
    Logistic,
}

impl From<FuzzifierArg> for FuzzifierKind {
    fn from(a: FuzzifierArg) -> Self {
        match a {
            FuzzifierArg::MinMax => FuzzifierKind::MinMax,
            FuzzifierArg::Logistic => FuzzifierKind::Logistic,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
pub enum ScopeArg {
    #[default]
    Joint,
    PerCell,
}

impl From<ScopeArg> for ScalingScope {
    fn from(a: ScopeArg) -> Self {
        match a {
            ScopeArg::Joint => ScalingScope::Joint,
            ScopeArg::PerCell => ScalingScope::PerCell,
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "class")]
    pub label: String,
    /// Layer sizes such as `16-3-1`; mark the ReLU layer with `r` when there are more than three
    #[arg(long)]
    pub arch: Option<String>,
    #[arg(long, default_value_t = TrainConfig::default().epochs)]
    pub epochs: usize,
    #[arg(long, default_value_t = TrainConfig::default().learning_rate)]
    pub lr: f64,
    #[arg(long, default_value_t = TrainConfig::default().seed)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "min-max")]
    pub fuzzifier: FuzzifierArg,
    /// Model file to write
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "class")]
    pub label: String,
    /// CSV file for the report
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where a cell's minterm weights come from.
#[derive(Debug, Args, Clone, Default)]
pub struct CellSource {
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Cell number, e.g. `3` or `ANN_3`
    #[arg(long)]
    pub cell: Option<String>,
    /// CSV file with a `weight` column, one row per minterm, used instead of the model's cell
    #[arg(long)]
    pub weights_override: Option<PathBuf>,
    /// Comma-separated attribute names
    #[arg(long)]
    pub names: Option<String>,
    /// Classification threshold in raw output units
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ExplainArgs {
    #[command(flatten)]
    pub source: CellSource,
    #[arg(long, default_value_t = DEFAULT_BCL_MAX)]
    pub bcl_max: usize,
    #[arg(long, value_enum, default_value = "joint")]
    pub scope: ScopeArg,
    /// Labeled CSV for level accuracies; needs --model
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, default_value = "class")]
    pub label: String,
    /// Directory for CSV and DOT files
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShapleyArgs {
    #[command(flatten)]
    pub source: CellSource,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub source: CellSource,
    /// Comma-separated attributes to keep
    #[arg(long)]
    pub keep: String,
    #[arg(long, default_value_t = DEFAULT_BCL_MAX)]
    pub bcl_max: usize,
    /// Directory for CSV files
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HypothesisArgs {
    #[command(flatten)]
    pub source: CellSource,
    #[arg(long)]
    pub hypothesis: String,
    /// Second formula to compare with instead of an extracted level expression
    #[arg(long)]
    pub against: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    #[arg(long, default_value_t = DEFAULT_BCL_MAX)]
    pub bcl_max: usize,
    #[arg(long, value_enum, default_value = "joint")]
    pub scope: ScopeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrendArgs {
    #[command(flatten)]
    pub source: CellSource,
    /// One or two comma-separated attributes
    #[arg(long)]
    pub vary: String,
    /// Degrees of other attributes, e.g. `c=0.2,e=0.9`; unspecified ones are 0.5
    #[arg(long)]
    pub fixed: Option<String>,
    /// Level set such as `0,1`; repeat for several sets. Defaults to all levels.
    #[arg(long)]
    pub levels: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, default_value_t = DEFAULT_BCL_MAX)]
    pub bcl_max: usize,
    #[arg(long, value_enum, default_value = "joint")]
    pub scope: ScopeArg,
    /// CSV file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Label column; enables an accuracy line
    #[arg(long)]
    pub label: Option<String>,
    /// CSV file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let mut stdout = String::new();
    match run(&cli.command, &mut stdout) {
        Ok(()) => {
            print!("{stdout}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

/// Runs one command, appending its report to `out`.
pub fn run(command: &Command, out: &mut String) -> Result<()> {
    match command {
        Command::Train(a) => cmd_train(a, out),
        Command::Partition(a) => cmd_partition(a, out),
        Command::Explain(a) => cmd_explain(a, out),
        Command::Shapley(a) => cmd_shapley(a, out),
        Command::Project(a) => cmd_project(a, out),
        Command::Hypothesis(a) => cmd_hypothesis(a, out),
        Command::Trend(a) => cmd_trend(a, out),
        Command::Classify(a) => cmd_classify(a, out),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(file_error(path))
}

fn ensure_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(file_error(path))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

fn attribute_index(name: &str, names: &[String]) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
}

fn parse_cell(text: &str, width: usize) -> Result<CellId> {
    let digits = text.trim().strip_prefix("ANN_").unwrap_or(text.trim());
    let index: u64 = digits
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("invalid cell `{text}`")))?;
    CellId::new(index, width)
}

fn parse_levels(text: &str) -> Result<Vec<usize>> {
    let levels = split_list(text)
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("invalid level `{p}`")))
        })
        .collect::<Result<Vec<usize>>>()?;
    if levels.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(levels)
}

/// Reads the `weight` column of a CSV file.
pub fn read_weight_file(path: &Path) -> Result<Vec<f64>> {
    let file = std::fs::File::open(path).map_err(file_error(path))?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let col = rdr
        .headers()?
        .iter()
        .position(|h| h == "weight")
        .ok_or_else(|| Error::InvalidArgument(format!("{}: no `weight` column", path.display())))?;
    let mut weights = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = rec.get(col).unwrap_or("");
        let w = field
            .parse::<f64>()
            .ok()
            .filter(|w| w.is_finite())
            .ok_or_else(|| Error::InvalidValue {
                row: row + 1,
                column: "weight".into(),
                value: field.to_string(),
            })?;
        weights.push(w);
    }
    Ok(weights)
}

/// A cell's weights, raw and scaled, with everything needed to report on them.
struct Target {
    names: Vec<String>,
    raw: CellWeights,
    scaled: ScaledCellWeights,
    model: Option<(SimpleAnn, FuzzifierSpec)>,
    cell: Option<CellId>,
}

impl Target {
    fn label(&self) -> String {
        match self.cell {
            Some(c) => format!("ANN_{} ({})", c.index(), c.bit_string()),
            None => "override".into(),
        }
    }
}

fn resolve_names(
    source: &CellSource,
    n: usize,
    model: Option<&FuzzifierSpec>,
) -> Result<Vec<String>> {
    let names = match (&source.names, model) {
        (Some(list), _) => split_list(list),
        (None, Some(spec)) if spec.arity() == n => spec.names.clone(),
        _ => default_names(n),
    };
    if names.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: names.len(),
        });
    }
    Ok(names)
}

fn resolve(source: &CellSource, scope: ScalingScope) -> Result<Target> {
    let model = source.model.as_deref().map(load_model).transpose()?;
    if let Some(path) = &source.weights_override {
        let raw = CellWeights::new(read_weight_file(path)?, None)?;
        let n = raw.attribute_count();
        let threshold = source
            .threshold
            .or(model.as_ref().map(|(ann, _)| ann.threshold()))
            .unwrap_or(DEFAULT_OVERRIDE_THRESHOLD);
        let scaled =
            scale_weights(std::slice::from_ref(&raw), ScalingScope::PerCell, threshold)?.remove(0);
        return Ok(Target {
            names: resolve_names(source, n, model.as_ref().map(|m| &m.1))?,
            raw,
            scaled,
            model,
            cell: None,
        });
    }
    let Some((ann, spec)) = model else {
        return Err(Error::InvalidArgument(
            "either --model with --cell or --weights-override is required".into(),
        ));
    };
    let text = source
        .cell
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--cell is required with --model".into()))?;
    let cell = parse_cell(text, ann.relu_count())?;
    let raw = extract_cell_weights(&ann, cell)?;
    let n = raw.attribute_count();
    let threshold = source.threshold.unwrap_or(ann.threshold());
    let scaled = if cell.active_nodes().is_empty() {
        ScaledCellWeights::zero_map(raw.weights.len(), Some(cell), threshold)
    } else {
        match scope {
            ScalingScope::Joint => {
                let mut cells = single_node_cells(&ann)?;
                cells.push(raw.clone());
                scale_weights(&cells, ScalingScope::Joint, threshold)?
                    .pop()
                    .expect("target cell is last")
            }
            ScalingScope::PerCell => {
                scale_weights(std::slice::from_ref(&raw), ScalingScope::PerCell, threshold)?
                    .remove(0)
            }
        }
    };
    Ok(Target {
        names: resolve_names(source, n, Some(&spec))?,
        raw,
        scaled,
        model: Some((ann, spec)),
        cell: Some(cell),
    })
}

fn load_encoded(path: &Path, label: &str, spec: &FuzzifierSpec) -> Result<Vec<EncodedSample>> {
    let ds = Dataset::from_csv_path(path, label)?;
    if !ds.is_empty() && ds.names.len() != spec.arity() {
        return Err(Error::ArityMismatch {
            expected: spec.arity(),
            got: ds.names.len(),
        });
    }
    ds.encode(spec)
}

fn cmd_train(a: &TrainArgs, out: &mut String) -> Result<()> {
    let ds = Dataset::from_csv_path(&a.data, &a.label)?;
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let spec = fit_fuzzifier(&ds.samples, a.fuzzifier.into())?.with_names(ds.names.clone())?;
    let samples = ds.encode(&spec)?;
    let arch: Architecture = match &a.arch {
        Some(s) => s.parse()?,
        None => format!("{}-3-1", 1usize << spec.arity()).parse()?,
    };
    let cfg = TrainConfig {
        learning_rate: a.lr,
        epochs: a.epochs,
        seed: a.seed,
        ..TrainConfig::default()
    };
    let report = train(&samples, &arch, &cfg)?;
    save_model(&a.out, &report.ann, &spec)?;
    let _ = writeln!(out, "samples={}", samples.len());
    let _ = writeln!(out, "accuracy={:.3}", report.accuracy);
    let _ = writeln!(out, "threshold={:.3}", report.ann.threshold());
    let _ = writeln!(out, "loss={:.3}", report.final_loss);
    let _ = writeln!(out, "model={}", a.out.display());
    Ok(())
}

fn cmd_partition(a: &PartitionArgs, out: &mut String) -> Result<()> {
    let (ann, spec) = load_model(&a.model)?;
    let samples = load_encoded(&a.data, &a.label, &spec)?;
    let report = partition_dataset(&ann, &samples)?;
    out.push_str(&report.to_table());
    if let Some(path) = &a.out {
        write_file(path, &report.to_csv())?;
    }
    Ok(())
}

fn push_levels(
    out: &mut String,
    bt: &BitTensor,
    names: &[String],
    dot_dir: Option<&Path>,
) -> Result<()> {
    for level in 0..bt.level_count() {
        let e = level_expression(bt, level)?;
        let tree = build_qldt(&e);
        let _ = writeln!(out, "\nlevel {level} (2^-{level}): {}", e.to_dnf(names));
        out.push_str(&render(&tree, names, RenderFormat::Ascii));
        if let Some(dir) = dot_dir {
            write_file(
                &dir.join(format!("level{level}.dot")),
                &render(&tree, names, RenderFormat::Dot),
            )?;
        }
    }
    Ok(())
}

fn push_energy_flag(out: &mut String, energy: &EnergyReport) {
    if energy.degenerate {
        out.push_str("energy: degenerate (weight sum is zero)\n");
    }
}

fn cmd_explain(a: &ExplainArgs, out: &mut String) -> Result<()> {
    let target = resolve(&a.source, a.scope.into())?;
    let bt = bitcode(&target.scaled.weights, a.bcl_max)?;
    let energy = energy_report(&target.scaled.weights, &bt)?;
    let p = target.scaled.params;
    let _ = writeln!(out, "cell={}", target.label());
    let _ = writeln!(
        out,
        "scale_min={:.3} scale_max={:.3} scaled_threshold={:.3}",
        p.min, p.max, p.scaled_threshold
    );
    out.push_str(&bit_table_text(
        &target.names,
        &target.raw.weights,
        &target.scaled.weights,
        &bt,
        &energy,
    ));
    push_energy_flag(out, &energy);
    if let Some(dir) = &a.out {
        ensure_dir(dir)?;
        write_file(
            &dir.join("bits.csv"),
            &bit_table_csv(
                &target.names,
                &target.raw.weights,
                &target.scaled.weights,
                &bt,
            ),
        )?;
        write_file(&dir.join("energy.csv"), &energy.to_csv())?;
    }
    push_levels(out, &bt, &target.names, a.out.as_deref())?;

    if let Some(data) = &a.data {
        let Some((ann, spec)) = &target.model else {
            return Err(Error::InvalidArgument(
                "--data needs --model to encode samples".into(),
            ));
        };
        let samples = load_encoded(data, &a.label, spec)?;
        let members: Vec<&EncodedSample> = match target.cell {
            Some(cell) => cell_members(ann, &samples, cell)?,
            None => samples.iter().collect(),
        };
        let _ = writeln!(out, "\nmembers={}", members.len());
        if members.is_empty() {
            out.push_str("no samples fall into this cell\n");
            return Ok(());
        }
        let mut csv = String::from("levels,accuracy\n");
        for top in 0..bt.level_count() {
            let levels: Vec<usize> = (0..=top).collect();
            let acc = level_accuracy(&bt, &target.scaled.params, &members, &levels)?;
            let label = levels
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join("+");
            let _ = writeln!(out, "accuracy levels {label}: {acc:.3}");
            let _ = writeln!(csv, "{label},{acc}");
        }
        let exact = scaled_accuracy(&target.scaled, &members)?;
        let _ = writeln!(out, "accuracy exact: {exact:.3}");
        let _ = writeln!(csv, "exact,{exact}");
        if let Some(dir) = &a.out {
            write_file(&dir.join("accuracy.csv"), &csv)?;
        }
    }
    Ok(())
}

fn cmd_shapley(a: &ShapleyArgs, out: &mut String) -> Result<()> {
    let target = resolve(&a.source, ScalingScope::Joint)?;
    let sh = shapley(&target.raw.weights)?;
    let mut csv = String::from("attribute,shapley\n");
    for (name, v) in target.names.iter().zip(&sh.values) {
        let _ = writeln!(out, "{name}={v:.3}");
        let _ = writeln!(csv, "{name},{v}");
    }
    let _ = writeln!(out, "sum={:.3}", sh.sum());
    if let Some(path) = &a.out {
        write_file(path, &csv)?;
    }
    Ok(())
}

fn cmd_project(a: &ProjectArgs, out: &mut String) -> Result<()> {
    let target = resolve(&a.source, ScalingScope::Joint)?;
    let keep = split_list(&a.keep)
        .iter()
        .map(|k| attribute_index(k, &target.names))
        .collect::<Result<Vec<usize>>>()?;
    let projected = project(&target.raw, &keep)?;
    let mut kept = keep.clone();
    kept.sort_unstable();
    kept.dedup();
    let names: Vec<String> = kept.iter().map(|&j| target.names[j].clone()).collect();
    let scaled = scale_weights(
        std::slice::from_ref(&projected),
        ScalingScope::PerCell,
        target.scaled.params.scaled_threshold,
    )?
    .remove(0);
    let bt = bitcode(&scaled.weights, a.bcl_max)?;
    let energy = energy_report(&scaled.weights, &bt)?;
    let _ = writeln!(out, "cell={} kept={}", target.label(), names.join(","));
    out.push_str(&bit_table_text(
        &names,
        &projected.weights,
        &scaled.weights,
        &bt,
        &energy,
    ));
    push_energy_flag(out, &energy);
    if let Some(dir) = &a.out {
        ensure_dir(dir)?;
        write_file(
            &dir.join("bits.csv"),
            &bit_table_csv(&names, &projected.weights, &scaled.weights, &bt),
        )?;
        write_file(&dir.join("energy.csv"), &energy.to_csv())?;
    }
    push_levels(out, &bt, &names, a.out.as_deref())
}

fn cmd_hypothesis(a: &HypothesisArgs, out: &mut String) -> Result<()> {
    let (e, names) = match &a.against {
        Some(formula) => {
            let model = a.source.model.as_deref().map(load_model).transpose()?;
            let names = match (&a.source.names, &model) {
                (Some(list), _) => split_list(list),
                (None, Some((_, spec))) => spec.names.clone(),
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "--against needs --names or --model".into(),
                    ))
                }
            };
            let e = ast_to_minterms(&parse_hypothesis(formula, &names)?, names.len())?;
            (e, names)
        }
        None => {
            let target = resolve(&a.source, a.scope.into())?;
            let bt = bitcode(&target.scaled.weights, a.bcl_max)?;
            (level_expression(&bt, a.level)?, target.names)
        }
    };
    let h = ast_to_minterms(&parse_hypothesis(&a.hypothesis, &names)?, names.len())?;
    let m = compare(&e, &h)?;
    out.push_str(&m.to_key_values());
    if let Some(path) = &a.out {
        write_file(path, &m.to_csv())?;
    }
    Ok(())
}

fn cmd_trend(a: &TrendArgs, out: &mut String) -> Result<()> {
    let target = resolve(&a.source, a.scope.into())?;
    let bt = bitcode(&target.scaled.weights, a.bcl_max)?;
    let vary = split_list(&a.vary)
        .iter()
        .map(|v| attribute_index(v, &target.names))
        .collect::<Result<Vec<usize>>>()?;
    let mut fixed = vec![DEFAULT_FIXED_DEGREE; target.names.len()];
    if let Some(spec) = &a.fixed {
        for pair in split_list(spec) {
            let (name, value) = pair.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("expected name=degree, got `{pair}`"))
            })?;
            let j = attribute_index(name.trim(), &target.names)?;
            fixed[j] = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("invalid degree `{value}`")))?;
        }
    }
    let level_sets = if a.levels.is_empty() {
        vec![bt.all_levels()]
    } else {
        a.levels
            .iter()
            .map(|s| parse_levels(s))
            .collect::<Result<Vec<_>>>()?
    };
    let mut csv = String::from(TrendGrid::CSV_HEADER);
    for levels in &level_sets {
        let grid = trend_grid(
            &bt,
            &target.scaled.params,
            &vary,
            &fixed,
            levels,
            a.resolution,
        )?;
        csv.push_str(&grid.csv_rows());
    }
    match &a.out {
        Some(path) => {
            write_file(path, &csv)?;
            let _ = writeln!(out, "rows={}", csv.lines().count() - 1);
            let _ = writeln!(
                out,
                "scaled_threshold={:.3}",
                target.scaled.params.scaled_threshold
            );
        }
        None => out.push_str(&csv),
    }
    Ok(())
}

fn cmd_classify(a: &ClassifyArgs, out: &mut String) -> Result<()> {
    let (ann, spec) = load_model(&a.model)?;
    let (objects, labels): (Vec<_>, Option<Vec<bool>>) = match &a.label {
        Some(label) => {
            let ds = Dataset::from_csv_path(&a.data, label)?;
            if !ds.is_empty() && ds.names != spec.names {
                return Err(Error::InvalidArgument(format!(
                    "dataset columns {:?} do not match model attributes {:?}",
                    ds.names, spec.names
                )));
            }
            let labels = ds.samples.iter().map(|s| s.label).collect();
            (
                ds.samples.into_iter().map(|s| s.object).collect(),
                Some(labels),
            )
        }
        None => {
            let file = std::fs::File::open(&a.data).map_err(file_error(&a.data))?;
            (read_objects(file, &spec.names)?, None)
        }
    };
    let mut csv = String::from("row,output,class,cell");
    csv.push_str(if labels.is_some() { ",label\n" } else { "\n" });
    let mut correct = 0usize;
    for (i, obj) in objects.iter().enumerate() {
        let mt = minterm_transform(&fuzzify(obj, &spec)?)?;
        let output = ann.forward(mt.values())?;
        let class = output > ann.threshold();
        let cell = cell_of(&ann, mt.values())?;
        let _ = write!(
            csv,
            "{},{output},{},{}",
            i + 1,
            u8::from(class),
            cell.index()
        );
        match &labels {
            Some(l) => {
                correct += usize::from(l[i] == class);
                let _ = writeln!(csv, ",{}", u8::from(l[i]));
            }
            None => csv.push('\n'),
        }
    }
    match &a.out {
        Some(path) => {
            write_file(path, &csv)?;
            let _ = writeln!(out, "rows={}", objects.len());
            if labels.is_some() && !objects.is_empty() {
                let _ = writeln!(out, "accuracy={:.3}", correct as f64 / objects.len() as f64);
            }
        }
        None => out.push_str(&csv),
    }
    Ok(())
}
