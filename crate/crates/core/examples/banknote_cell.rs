//! Reading the minterm weights of one cell of a banknote classifier: bit table,
//! energy per level, one decision tree per level, and the projection onto the
//! first two attributes.

use relulogic::logiccode::{
    bit_table_text, bitcode, energy_report, level_expression, project, scale_weights, ScalingScope,
};
use relulogic::partition::CellWeights;
use relulogic::qldt::{build_qldt, render, RenderFormat};

const WEIGHTS: [f64; 16] = [
    1.0, 0.918, 0.688, 0.751, 0.625, 0.546, 0.660, 0.431, 0.783, 0.731, 0.291, 0.635, 0.525, 0.613,
    0.0, 0.259,
];

fn main() -> relulogic::Result<()> {
    let names: Vec<String> = ["v", "s", "c", "e"].iter().map(|s| s.to_string()).collect();
    let bt = bitcode(&WEIGHTS, 3)?;
    let energy = energy_report(&WEIGHTS, &bt)?;
    print!(
        "{}",
        bit_table_text(&names, &WEIGHTS, &WEIGHTS, &bt, &energy)
    );

    for level in 0..bt.level_count() {
        let e = level_expression(&bt, level)?;
        let tree = build_qldt(&e);
        println!(
            "\nlevel {level}: {} nodes, depth {}",
            tree.node_count(),
            tree.depth()
        );
        print!("{}", render(&tree, &names, RenderFormat::Ascii));
    }

    let cw = CellWeights::new(WEIGHTS.to_vec(), None)?;
    let vs = project(&cw, &[0, 1])?;
    let scaled = scale_weights(std::slice::from_ref(&vs), ScalingScope::PerCell, 0.5)?.remove(0);
    let bt = bitcode(&scaled.weights, 3)?;
    let energy = energy_report(&scaled.weights, &bt)?;
    println!("\nprojected onto v, s");
    print!(
        "{}",
        bit_table_text(&names[..2], &vs.weights, &scaled.weights, &bt, &energy)
    );
    Ok(())
}
