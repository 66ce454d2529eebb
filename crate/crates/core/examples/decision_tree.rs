//! Turning a truth table into a binary decision tree and evaluating it on
//! fuzzy degrees.

use relulogic::encoding::{default_names, minterm_transform, FuzzifiedObject};
use relulogic::logiccode::{eval_expression, LogicExpressionBits};
use relulogic::qldt::{build_qldt, eval_qldt, path_expression, render, RenderFormat};

fn main() -> relulogic::Result<()> {
    let names = default_names(2);
    let or = LogicExpressionBits::new(vec![false, true, true, true])?;
    let tree = build_qldt(&or);
    println!("{}", path_expression(&tree, &names));
    print!("{}", render(&tree, &names, RenderFormat::Ascii));
    println!("{}", render(&tree, &names, RenderFormat::Dot));

    for degrees in [[0.2, 0.7], [0.9, 0.1], [0.5, 0.5]] {
        let f = FuzzifiedObject::new(degrees.to_vec())?;
        println!(
            "{degrees:?}: tree {:.3}, minterm sum {:.3}",
            eval_qldt(&tree, &f)?,
            eval_expression(&or, &minterm_transform(&f)?)?
        );
    }

    // majority of three
    let names = default_names(3);
    let maj = LogicExpressionBits::new((0..8u32).map(|k| k.count_ones() >= 2).collect())?;
    print!("{}", render(&build_qldt(&maj), &names, RenderFormat::Ascii));
    Ok(())
}
