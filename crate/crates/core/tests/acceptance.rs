//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! The banknote check reads the UCI "banknote authentication" file from
//! `$BANKNOTE_CSV`, falling back to `tests/data/data_banknote_authentication.txt`.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relulogic::analysis::{ast_to_minterms, compare, parse_hypothesis};
use relulogic::dataset::{Dataset, EncodedSample};
use relulogic::encoding::{fit_fuzzifier, minterm_transform, FuzzifiedObject, FuzzifierKind};
use relulogic::logiccode::{
    approx_forward, bitcode, energy_report, eval_expression, level_accuracy, level_expression,
    project, scale_weights, scaled_accuracy, BitTensor, LogicExpressionBits, ScalingScope,
};
use relulogic::network::{train, Architecture, Matrix, SimpleAnn, TrainConfig};
use relulogic::partition::{
    cell_members, cell_of, compose_cell_weights, extract_cell_weights, partition_dataset, shapley,
    single_node_cells, CellId, CellWeights,
};
use relulogic::qldt::{build_qldt, eval_qldt};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const CELL_WEIGHTS: [f64; 16] = [
    1.0, 0.918, 0.688, 0.751, 0.625, 0.546, 0.660, 0.431, 0.783, 0.731, 0.291, 0.635, 0.525, 0.613,
    0.0, 0.259,
];
const CELL_BITS: [&str; 16] = [
    "1000", "0111", "0110", "0110", "0101", "0100", "0101", "0011", "0110", "0110", "0010", "0101",
    "0100", "0101", "0000", "0010",
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bits_of(bt: &BitTensor, k: usize) -> String {
    (0..bt.level_count())
        .map(|l| if bt.bit(l, k) { '1' } else { '0' })
        .collect()
}

fn tensor_from_rows(rows: &[&str]) -> BitTensor {
    let levels = rows[0].len();
    BitTensor::from_levels(
        (0..levels)
            .map(|l| rows.iter().map(|r| r.as_bytes()[l] == b'1').collect())
            .collect(),
    )
    .unwrap()
}

fn random_object(rng: &mut ChaCha8Rng, n: usize) -> FuzzifiedObject {
    FuzzifiedObject::new((0..n).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap()
}

fn cell_bit_codes() -> Check {
    let bt = bitcode(&CELL_WEIGHTS, 3).map_err(|e| e.to_string())?;
    for (k, want) in CELL_BITS.iter().enumerate() {
        let got = bits_of(&bt, k);
        ensure(got == *want, || {
            format!("k={k}: bits {got}, expected {want}")
        })?;
    }
    let e = energy_report(&CELL_WEIGHTS, &bt).map_err(|e| e.to_string())?;
    ensure((e.weight_sum - 9.46).abs() <= 0.005, || {
        format!("weight sum {}", e.weight_sum)
    })?;
    let counts: Vec<usize> = e.levels.iter().map(|l| l.set_bits).collect();
    ensure(counts == [1, 11, 8, 6], || {
        format!("set-bit counts {counts:?}")
    })?;
    ensure(e.bitcode_sum == 9.25, || {
        format!("bit-code sum {}", e.bitcode_sum)
    })?;
    let rel: Vec<f64> = e.levels.iter().map(|l| l.relative_percent).collect();
    for (got, want) in rel.iter().zip([11.0, 58.0, 21.0, 7.0]) {
        ensure((got - want).abs() <= 0.5, || {
            format!(
                "relative energies {rel:.2?}%, expected (11, 58, 21, 7)% each within 0.5 points"
            )
        })?;
    }
    Ok(format!(
        "64 bits, sum {:.3}, energies {rel:.2?}%",
        e.weight_sum
    ))
}

fn projection_vs() -> Check {
    let cw = CellWeights::new(CELL_WEIGHTS.to_vec(), None).map_err(|e| e.to_string())?;
    let projected = project(&cw, &[0, 1]).map_err(|e| e.to_string())?;
    let scaled = scale_weights(&[projected], ScalingScope::PerCell, 0.5)
        .map_err(|e| e.to_string())?
        .remove(0);
    for (got, want) in scaled.weights.iter().zip([1.0, 0.44, 0.53, 0.0]) {
        ensure((got - want).abs() <= 0.005, || {
            format!("scaled weights {:?}", scaled.weights)
        })?;
    }
    let bt = bitcode(&scaled.weights, 3).map_err(|e| e.to_string())?;
    for (k, want) in ["1000", "0100", "0100", "0000"].iter().enumerate() {
        let got = bits_of(&bt, k);
        ensure(got == *want, || {
            format!("k={k}: bits {got}, expected {want}")
        })?;
    }
    let e = energy_report(&scaled.weights, &bt).map_err(|e| e.to_string())?;
    let rel: Vec<f64> = e.levels.iter().map(|l| l.relative_percent).collect();
    for (got, want) in rel.iter().zip([51.0, 51.0, 0.0, 0.0]) {
        ensure((got - want).abs() <= 1.0, || format!("energies {rel:?}"))?;
    }
    Ok(format!(
        "weights {:.3?}, energies {rel:.1?}%",
        scaled.weights
    ))
}

fn two_attribute_levels() -> Check {
    let bt = bitcode(&[0.4, 0.8], 3).map_err(|e| e.to_string())?;
    ensure(bits_of(&bt, 0) == "0011", || {
        format!("0.4 -> {}", bits_of(&bt, 0))
    })?;
    ensure(bits_of(&bt, 1) == "0110", || {
        format!("0.8 -> {}", bits_of(&bt, 1))
    })?;

    let levels = tensor_from_rows(&["1000", "0011", "0101", "0110"]);
    let closed: [fn(f64, f64) -> f64; 4] = [
        |a, b| (1.0 - a) * (1.0 - b),
        |a, _| a,
        |_, b| b,
        |a, b| (1.0 - a) * b + a * (1.0 - b),
    ];
    for (level, f) in closed.iter().enumerate() {
        let e = level_expression(&levels, level).map_err(|e| e.to_string())?;
        for i in 0..5 {
            for j in 0..5 {
                let (a, b) = (i as f64 / 4.0, j as f64 / 4.0);
                let mt = minterm_transform(&FuzzifiedObject::new(vec![a, b]).unwrap()).unwrap();
                let got = eval_expression(&e, &mt).map_err(|e| e.to_string())?;
                ensure((got - f(a, b)).abs() <= 1e-9, || {
                    format!("level {level} at ({a}, {b}): {got}")
                })?;
            }
        }
    }
    Ok("rows 0.4/0.8 exact, four level evaluations match on 5x5 grid".into())
}

/// Average marginal contribution over all orderings of the attributes.
fn shapley_by_permutations(w: &[f64]) -> Vec<f64> {
    let n = w.len().trailing_zeros() as usize;
    let mut perms = vec![vec![]];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..n)
                    .filter(|j| !p.contains(j))
                    .map(|j| [p.clone(), vec![j]].concat())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = vec![0.0; n];
    for p in &perms {
        let mut mask = 0usize;
        for &j in p {
            let next = mask | (1 << (n - 1 - j));
            out[j] += w[next] - w[mask];
            mask = next;
        }
    }
    out.iter().map(|v| v / perms.len() as f64).collect()
}

fn shapley_check() -> Check {
    let sh = shapley(&[0.9, 0.4, 0.7, 0.8]).map_err(|e| e.to_string())?;
    ensure(
        (sh.values[0] - 0.1).abs() < 1e-12 && (sh.values[1] + 0.2).abs() < 1e-12,
        || format!("Sh = {:?}", sh.values),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let w: Vec<f64> = (0..8).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let s = shapley(&w).map_err(|e| e.to_string())?;
        ensure((s.sum() - (w[7] - w[0])).abs() <= 1e-9, || {
            format!("efficiency fails for {w:?}")
        })?;
    }
    for n in 1..=4 {
        for _ in 0..25 {
            let w: Vec<f64> = (0..1 << n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let s = shapley(&w).map_err(|e| e.to_string())?;
            let oracle = shapley_by_permutations(&w);
            for (a, b) in s.values.iter().zip(&oracle) {
                ensure((a - b).abs() <= 1e-9, || {
                    format!("n={n}: {:?} vs {oracle:?}", s.values)
                })?;
            }
        }
    }
    Ok(format!(
        "Sh_a={:.3}, Sh_b={:.3}",
        sh.values[0], sh.values[1]
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::new(
        rows,
        cols,
        (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    )
    .unwrap()
}

fn random_ann(rng: &mut ChaCha8Rng, n: usize, l: usize) -> SimpleAnn {
    let input = 1 << n;
    let mut pre = Vec::new();
    let mut width = input;
    if rng.gen_bool(0.5) {
        let h = rng.gen_range(2..6);
        pre.push(random_matrix(rng, h, width));
        width = h;
    }
    pre.push(random_matrix(rng, l, width));
    let mut post = Vec::new();
    let mut width = l;
    if rng.gen_bool(0.5) {
        let h = rng.gen_range(1..4);
        post.push(random_matrix(rng, h, width));
        width = h;
    }
    post.push(random_matrix(rng, 1, width));
    SimpleAnn::new(pre, post, rng.gen_range(-0.5..0.5)).unwrap()
}

fn cell_maps() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = 2 + i % 2;
        let l = 1 + i % 3;
        let ann = random_ann(&mut rng, n, l);
        for _ in 0..50 {
            let mt = minterm_transform(&random_object(&mut rng, n)).unwrap();
            let cell = cell_of(&ann, mt.values()).map_err(|e| e.to_string())?;
            let cw = extract_cell_weights(&ann, cell).map_err(|e| e.to_string())?;
            let diff = (ann.forward(mt.values()).unwrap() - cw.dot(mt.values())).abs();
            worst = worst.max(diff);
            ensure(diff < 1e-9, || {
                format!("net {i}: forward differs from cell map by {diff}")
            })?;
        }
        let singles = single_node_cells(&ann).map_err(|e| e.to_string())?;
        for index in 0..1u64 << l {
            let cell = CellId::new(index, l).unwrap();
            let a = extract_cell_weights(&ann, cell).map_err(|e| e.to_string())?;
            let b = compose_cell_weights(&singles, cell).map_err(|e| e.to_string())?;
            for (x, y) in a.weights.iter().zip(&b.weights) {
                ensure((x - y).abs() < 1e-9, || {
                    format!("net {i}, cell {index}: composition differs")
                })?;
            }
        }
        if l == 2 {
            let w = |idx| {
                extract_cell_weights(&ann, CellId::new(idx, 2).unwrap())
                    .unwrap()
                    .weights
            };
            let (p11, p10, p01) = (w(3), w(2), w(1));
            for k in 0..p11.len() {
                ensure((p11[k] - p10[k] - p01[k]).abs() < 1e-9, || {
                    format!("net {i}: p11 != p10 + p01")
                })?;
            }
        }
    }
    Ok(format!("worst |forward - cell map| = {worst:.1e}"))
}

fn minterm_sums() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let n = 1 + i % 6;
        let mt = minterm_transform(&random_object(&mut rng, n)).map_err(|e| e.to_string())?;
        worst = worst.max((mt.values().iter().sum::<f64>() - 1.0).abs());
    }
    ensure(worst <= 1e-9, || format!("worst deviation {worst}"))?;
    Ok(format!("worst |sum - 1| = {worst:.1e}"))
}

fn approximation_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_ratio: f64 = 0.0;
    for bcl in 1..=4usize {
        let bound = 2f64.powi(-(bcl as i32 + 1)) + 1e-9;
        for i in 0..1000 {
            let n = 1 + i % 4;
            let w: Vec<f64> = (0..1 << n).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let bt = bitcode(&w, bcl).map_err(|e| e.to_string())?;
            let mt = minterm_transform(&random_object(&mut rng, n)).unwrap();
            let approx = approx_forward(&bt, &mt, &bt.all_levels()).map_err(|e| e.to_string())?;
            let exact: f64 = w.iter().zip(mt.values()).map(|(a, b)| a * b).sum();
            let err = (approx - exact).abs();
            worst_ratio = worst_ratio.max(err / bound);
            ensure(err <= bound, || {
                format!("bcl_max {bcl}: error {err} exceeds {bound}")
            })?;
        }
    }
    Ok(format!("worst error / bound = {worst_ratio:.3}"))
}

fn degree_grid(n: usize, steps: usize) -> Vec<FuzzifiedObject> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|d: Vec<f64>| {
                (0..steps).map(move |s| [d.clone(), vec![s as f64 / (steps - 1) as f64]].concat())
            })
            .collect();
    }
    out.into_iter()
        .map(|d| FuzzifiedObject::new(d).unwrap())
        .collect()
}

fn qldt_equivalence(
    e: &LogicExpressionBits,
    grid: &[FuzzifiedObject],
) -> std::result::Result<(), String> {
    let t = build_qldt(e);
    for f in grid {
        let a = eval_qldt(&t, f).map_err(|e| e.to_string())?;
        let b = eval_expression(e, &minterm_transform(f).unwrap()).map_err(|e| e.to_string())?;
        ensure((a - b).abs() <= 1e-9, || {
            format!(
                "{:?} at {:?}: tree {a}, expression {b}",
                e.active(),
                f.degrees()
            )
        })?;
    }
    Ok(())
}

fn qldt_check() -> Check {
    let grid2 = degree_grid(2, 5);
    for code in 0..16usize {
        let e = LogicExpressionBits::new((0..4).map(|k| code >> k & 1 == 1).collect()).unwrap();
        qldt_equivalence(&e, &grid2)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grids = [degree_grid(3, 4), degree_grid(4, 3)];
    for i in 0..200 {
        let n = 3 + i % 2;
        let e = LogicExpressionBits::new((0..1 << n).map(|_| rng.gen_bool(0.5)).collect()).unwrap();
        qldt_equivalence(&e, &grids[n - 3])?;
    }
    let or = build_qldt(&LogicExpressionBits::new(vec![false, true, true, true]).unwrap());
    for f in &grid2 {
        let (m1, m2) = (f.degrees()[0], f.degrees()[1]);
        let v = eval_qldt(&or, f).unwrap();
        ensure((v - (m2 + (1.0 - m2) * m1)).abs() <= 1e-9, || {
            format!("or-tree at ({m1}, {m2}): {v}")
        })?;
    }
    Ok("16 + 200 expressions equivalent; or-tree = m2 + (1-m2)m1".into())
}

fn hypothesis_check() -> Check {
    let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
    let bits = |s: &str| ast_to_minterms(&parse_hypothesis(s, &names).unwrap(), 2).unwrap();
    let e = bits("a");
    let m = compare(&e, &bits("a or b")).map_err(|e| e.to_string())?;
    ensure((m.v11, m.v10, m.v01, m.v00) == (2, 0, 1, 1), || {
        format!("counts {:?}", (m.v11, m.v10, m.v01, m.v00))
    })?;
    ensure(m.accuracy == 0.75 && m.implies_forward, || {
        format!("accuracy {} forward {}", m.accuracy, m.implies_forward)
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let x = LogicExpressionBits::new((0..1 << n).map(|_| rng.gen_bool(0.5)).collect()).unwrap();
        let y = LogicExpressionBits::new((0..1 << n).map(|_| rng.gen_bool(0.5)).collect()).unwrap();
        let s = compare(&x, &x).unwrap();
        ensure(s.accuracy == 1.0, || "compare(e, e) below 1".into())?;
        let c = compare(&x, &y).unwrap();
        ensure(c.v11 + c.v10 + c.v01 + c.v00 == 1 << n, || {
            "counts do not sum to 2^n".into()
        })?;
    }
    Ok("(2,0,1,1), acc 0.750, a -> a or b".into())
}

fn banknote_path() -> PathBuf {
    std::env::var_os("BANKNOTE_CSV")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                .join("tests/data/data_banknote_authentication.txt")
        })
}

fn load_banknote(path: &PathBuf) -> std::result::Result<Dataset, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let first = text.split(',').next().unwrap_or("").trim();
    let mut ds = if first.parse::<f64>().is_ok() {
        Dataset::from_csv_reader(text.as_bytes(), "5", false)
    } else {
        Dataset::from_csv_reader(text.as_bytes(), "class", true)
    }
    .map_err(|e| e.to_string())?;
    if ds.names.len() == 4 && ds.names[0] == "a1" {
        ds.names = ["v", "s", "c", "e"].iter().map(|s| s.to_string()).collect();
    }
    Ok(ds)
}

fn banknote() -> Check {
    let path = banknote_path();
    if !path.exists() {
        return Err(format!(
            "dataset not found at {} (set BANKNOTE_CSV)",
            path.display()
        ));
    }
    let ds = load_banknote(&path)?;
    let spec = fit_fuzzifier(&ds.samples, FuzzifierKind::MinMax)
        .and_then(|s| s.with_names(ds.names.clone()))
        .map_err(|e| e.to_string())?;
    let samples: Vec<EncodedSample> = ds.encode(&spec).map_err(|e| e.to_string())?;
    let arch: Architecture = "16-3-1".parse().unwrap();
    let report = train(&samples, &arch, &TrainConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.accuracy >= 0.95, || {
        format!("training accuracy {:.3}", report.accuracy)
    })?;
    let ann = report.ann;
    let partition = partition_dataset(&ann, &samples).map_err(|e| e.to_string())?;
    println!("{}", partition.to_table());
    let cells = partition.cells.len();
    ensure((2..=8).contains(&cells), || {
        format!("{cells} non-empty cells")
    })?;
    let best = partition
        .most_class1_pure()
        .ok_or("no cell holds class 1")?
        .cell;
    let members = cell_members(&ann, &samples, best).map_err(|e| e.to_string())?;
    let raw = extract_cell_weights(&ann, best).map_err(|e| e.to_string())?;
    let mut all = single_node_cells(&ann).map_err(|e| e.to_string())?;
    all.push(raw);
    let scaled = scale_weights(&all, ScalingScope::Joint, ann.threshold())
        .map_err(|e| e.to_string())?
        .pop()
        .unwrap();
    let bt = bitcode(&scaled.weights, 3).map_err(|e| e.to_string())?;
    let mut ladder = Vec::new();
    for top in 0..bt.level_count() {
        let levels: Vec<usize> = (0..=top).collect();
        ladder.push(
            level_accuracy(&bt, &scaled.params, &members, &levels).map_err(|e| e.to_string())?,
        );
    }
    let exact = scaled_accuracy(&scaled, &members).map_err(|e| e.to_string())?;
    let cumulative = *ladder.last().unwrap();
    ensure((cumulative - exact).abs() <= 0.03, || {
        format!("levels 0..3 accuracy {cumulative:.3} vs exact {exact:.3}")
    })?;
    Ok(format!(
        "train acc {:.3}, {cells} cells, cell ANN_{} ladder {ladder:.3?} vs exact {exact:.3}",
        report.accuracy,
        best.index()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cell bit codes and energies", cell_bit_codes),
        ("projection onto v,s", projection_vs),
        (
            "two-attribute bit rows and level evaluations",
            two_attribute_levels,
        ),
        ("shapley values", shapley_check),
        ("cell-map equivalence", cell_maps),
        ("minterm normalization", minterm_sums),
        ("bit approximation bound", approximation_bound),
        ("decision tree equivalence", qldt_check),
        ("hypothesis metrics", hypothesis_check),
        ("banknote end-to-end", banknote),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
