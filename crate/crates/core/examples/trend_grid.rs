//! Trend of each bit level over two attributes, written as long-format CSV.

use relulogic::analysis::{trend_grid, TrendGrid};
use relulogic::logiccode::{bitcode, ScalingParams};

fn main() -> relulogic::Result<()> {
    let weights = [0.9, 0.4, 0.7, 0.8];
    let bt = bitcode(&weights, 3)?;
    let params = ScalingParams::new(0.0, 1.0, 0.5);
    let mut csv = String::from(TrendGrid::CSV_HEADER);
    for levels in [vec![0], vec![1], vec![2], vec![3], bt.all_levels()] {
        let grid = trend_grid(&bt, &params, &[0, 1], &[0.5, 0.5], &levels, 11)?;
        eprintln!("levels {}: max {:.3}", grid.level_label(), grid.max_value());
        csv.push_str(&grid.csv_rows());
    }
    print!("{csv}");
    Ok(())
}
