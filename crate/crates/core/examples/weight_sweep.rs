// Prints a score grid as static and workload weights vary together, the
// kind of table a heatmap is drawn from.

use std::path::Path;

use edgescale::runner::{sweep_weights, RunOptions};
use edgescale::scenario::parse_scenario;

pub fn run_example() -> edgescale::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ipokemon-32.cfg"));
    let scenario = parse_scenario(path)?;
    let (grid, points) = sweep_weights(&scenario, &RunOptions::default())?;

    let n = grid.values.len();
    print!("{:>9}", format!("{}\\{}", grid.y.name(), grid.x.name()));
    for x in &grid.values {
        print!(" {x:>7.1}");
    }
    println!();
    for (row, y) in points.chunks(n).zip(&grid.values) {
        print!("{y:>9.1}");
        for p in row {
            print!(" {:>7.2}", p.score);
        }
        println!();
    }
    // The first row has every workload weight at zero: the score there is
    // the static score alone.
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
