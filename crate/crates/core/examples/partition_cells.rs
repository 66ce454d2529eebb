//! A hand-built 2-2-1 network: its cells, their linear maps and how they compose.

use relulogic::encoding::{minterm_transform, FuzzifiedObject};
use relulogic::network::{Matrix, SimpleAnn};
use relulogic::partition::{
    cell_of, compose_cell_weights, extract_cell_weights, single_node_cells, CellId,
};

fn main() -> relulogic::Result<()> {
    // two attributes, so four minterm inputs
    let pre = Matrix::from_rows(vec![vec![1.0, -0.5, 0.2, -1.0], vec![-0.3, 0.8, -0.6, 0.4]])?;
    let post = Matrix::from_rows(vec![vec![1.0, -1.5]])?;
    let ann = SimpleAnn::new(vec![pre], vec![post], 0.1)?;

    let singles = single_node_cells(&ann)?;
    for index in 0..4 {
        let cell = CellId::new(index, 2)?;
        let direct = extract_cell_weights(&ann, cell)?;
        let composed = compose_cell_weights(&singles, cell)?;
        println!(
            "ANN_{index} ({}) weights {:.3?} composed {:.3?}",
            cell.bit_string(),
            direct.weights,
            composed.weights
        );
    }

    for degrees in [[0.1, 0.2], [0.9, 0.1], [0.5, 0.9], [0.2, 0.95]] {
        let mt = minterm_transform(&FuzzifiedObject::new(degrees.to_vec())?)?;
        let cell = cell_of(&ann, mt.values())?;
        let cw = extract_cell_weights(&ann, cell)?;
        println!(
            "{degrees:?}: cell ANN_{} output {:.4} cell map {:.4} class {}",
            cell.index(),
            ann.forward(mt.values())?,
            cw.dot(mt.values()),
            ann.classify(mt.values())?
        );
    }
    Ok(())
}
