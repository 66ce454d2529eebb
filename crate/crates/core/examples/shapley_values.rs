//! Shapley values read directly off minterm weights.

use relulogic::partition::shapley;

fn main() -> relulogic::Result<()> {
    let two = [0.9, 0.4, 0.7, 0.8];
    let sh = shapley(&two)?;
    println!("weights {two:?}");
    println!(
        "  Sh_a = {:.3}, Sh_b = {:.3}, sum {:.3} = w[ab] - w[~a~b]",
        sh.values[0],
        sh.values[1],
        sh.sum()
    );

    let four = [
        1.0, 0.918, 0.688, 0.751, 0.625, 0.546, 0.660, 0.431, 0.783, 0.731, 0.291, 0.635, 0.525,
        0.613, 0.0, 0.259,
    ];
    let sh = shapley(&four)?;
    for (name, v) in ["v", "s", "c", "e"].iter().zip(&sh.values) {
        println!("  Sh_{name} = {v:.3}");
    }
    Ok(())
}
