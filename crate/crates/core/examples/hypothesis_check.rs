//! Comparing a hypothesis with an extracted expression.

use relulogic::analysis::{ast_to_minterms, compare, parse_hypothesis};
use relulogic::logiccode::{bitcode, level_expression};

fn main() -> relulogic::Result<()> {
    let names: Vec<String> = ["v", "s", "c", "e"].iter().map(|s| s.to_string()).collect();
    let weights = [
        1.0, 0.918, 0.688, 0.751, 0.625, 0.546, 0.660, 0.431, 0.783, 0.731, 0.291, 0.635, 0.525,
        0.613, 0.0, 0.259,
    ];
    let bt = bitcode(&weights, 3)?;
    let e = level_expression(&bt, 1)?;
    println!("level 1: {}", e.to_dnf(&names));

    for text in ["not (v and s)", "not c or not e", "!v | !s & !c", "v xor s"] {
        let h = ast_to_minterms(&parse_hypothesis(text, &names)?, names.len())?;
        let m = compare(&e, &h)?;
        println!(
            "{text:<16} acc {:.3} precision {:.3} recall {:.3} e->h {} h->e {}",
            m.accuracy, m.precision, m.recall, m.implies_forward, m.implies_backward
        );
    }

    match parse_hypothesis("v and and s", &names) {
        Err(err) => println!("{err}"),
        Ok(ast) => println!("parsed {ast}"),
    }
    Ok(())
}
