//! Sweeps the second GHZ measurement angle over [0, pi] for one inequality
//! built from triple probabilities alone, then refines the grid
//! maximum by golden-section search. Writes the per-point CSV when a path is
//! given.

use corrpoly::geometry::Inequality;
use corrpoly::quantum::{refine_scan, scan, write_csv, GridSpec, RecordFilter, DEFAULT_GRID_POINTS};
use corrpoly::scenario::presets;

const EXPRESSION: &str = "-P(A1B1C1) - 2P(A2B1C1) - 3P(A1B2C1) - 3P(A1B1C2) - P(A2B2C1) - P(A2B1C2) - P(A1B2C2) + 4P(A2B2C2) <= 0";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = presets::ghz26();
    let ineq = Inequality::parse_expression(&scenario, EXPRESSION)?;
    let grid = GridSpec::fig1(DEFAULT_GRID_POINTS);
    let result = scan(&scenario, std::slice::from_ref(&ineq), &grid, RecordFilter::All)?;
    let violated = result.per_point.iter().filter(|p| p.violated > 0).count();
    println!("{violated} of {} grid points violate {EXPRESSION}", result.per_point.len());
    if let Some(r) = refine_scan(&scenario, std::slice::from_ref(&ineq), &grid, &result)? {
        println!("maximum value - bound {:.6} at phi2 = {:.6}", r.max_violation, r.param);
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(path, write_csv(&result))?;
    }
    Ok(())
}
