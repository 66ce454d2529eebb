//! Train a 16-3-1 network on synthetic four-attribute data, then explain the
//! cell holding most of the positive class.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relulogic::dataset::Dataset;
use relulogic::encoding::{fit_fuzzifier, FuzzifierKind, LabeledSample, RawObject};
use relulogic::logiccode::{
    bitcode, level_accuracy, level_expression, scale_weights, scaled_accuracy, ScalingScope,
};
use relulogic::network::{train, TrainConfig};
use relulogic::partition::{
    cell_members, extract_cell_weights, partition_dataset, single_node_cells,
};

fn synthetic(n: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..n)
        .map(|_| {
            let v: f64 = rng.gen_range(-7.0..7.0);
            let s: f64 = rng.gen_range(-13.0..13.0);
            let c: f64 = rng.gen_range(-5.0..17.0);
            let e: f64 = rng.gen_range(-8.0..2.0);
            LabeledSample {
                label: v + 0.3 * s + 0.2 * c < 0.8,
                object: RawObject::new(vec![v, s, c, e]).unwrap(),
            }
        })
        .collect();
    Dataset {
        names: ["v", "s", "c", "e"].iter().map(|s| s.to_string()).collect(),
        samples,
    }
}

fn main() -> relulogic::Result<()> {
    env_logger::init();
    let ds = synthetic(600, 1);
    let spec = fit_fuzzifier(&ds.samples, FuzzifierKind::MinMax)?.with_names(ds.names.clone())?;
    let samples = ds.encode(&spec)?;
    let cfg = TrainConfig {
        epochs: 5000,
        ..TrainConfig::default()
    };
    let report = train(&samples, &"16-3-1".parse()?, &cfg)?;
    let ann = report.ann;
    println!(
        "training accuracy {:.3}, threshold {:.3}",
        report.accuracy,
        ann.threshold()
    );

    let partition = partition_dataset(&ann, &samples)?;
    print!("{}", partition.to_table());
    let Some(best) = partition.most_class1_pure() else {
        return Ok(());
    };
    let cell = best.cell;
    let members = cell_members(&ann, &samples, cell)?;

    let mut cells = single_node_cells(&ann)?;
    cells.push(extract_cell_weights(&ann, cell)?);
    let scaled = scale_weights(&cells, ScalingScope::Joint, ann.threshold())?
        .pop()
        .unwrap();
    let bt = bitcode(&scaled.weights, 3)?;
    println!(
        "\nANN_{} ({} samples), scaled threshold {:.3}",
        cell.index(),
        members.len(),
        scaled.params.scaled_threshold
    );
    for top in 0..bt.level_count() {
        let levels: Vec<usize> = (0..=top).collect();
        let e = level_expression(&bt, top)?;
        println!(
            "level {top}: accuracy up to here {:.3}  {}",
            level_accuracy(&bt, &scaled.params, &members, &levels)?,
            e.to_dnf(&ds.names)
        );
    }
    println!(
        "exact scaled map accuracy {:.3}",
        scaled_accuracy(&scaled, &members)?
    );
    Ok(())
}
