//! Splitting minterm weights into bit levels and evaluating each level.

use relulogic::encoding::{default_names, minterm_transform, FuzzifiedObject};
use relulogic::logiccode::{approx_forward, bitcode, eval_expression, level_expression};

fn main() -> relulogic::Result<()> {
    let weights = [0.9, 0.4, 0.7, 0.8];
    let bt = bitcode(&weights, 3)?;
    let names = default_names(2);
    for (k, w) in weights.iter().enumerate() {
        let bits: String = (0..bt.level_count())
            .map(|l| if bt.bit(l, k) { '1' } else { '0' })
            .collect();
        println!(
            "k={k} weight {w:.3} bits {bits} value {:.3}",
            bt.reconstructed(k)
        );
    }

    let point = FuzzifiedObject::new(vec![0.3, 0.8])?;
    let mt = minterm_transform(&point)?;
    for level in 0..bt.level_count() {
        let e = level_expression(&bt, level)?;
        println!(
            "2^-{level}: {:<12} at (0.3, 0.8) = {:.4}",
            e.to_dnf(&names),
            eval_expression(&e, &mt)?
        );
    }
    let exact: f64 = weights.iter().zip(mt.values()).map(|(w, m)| w * m).sum();
    println!(
        "all levels {:.4}, exact {exact:.4}",
        approx_forward(&bt, &mt, &bt.all_levels())?
    );
    Ok(())
}
