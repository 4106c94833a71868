//! Mirrored singlet sweep over all facets of the two-by-three polytope:
//! directions (0, x, 2x) for both parties. Prints a coarse text plot of the
//! number of violated facets and the largest violation, and writes the
//! envelope CSV when a path is given.

use corrpoly::geometry::{facet_enumeration_01, DdOptions};
use corrpoly::quantum::{scan, write_envelope_csv, GridSpec, RecordFilter};
use corrpoly::scenario::{presets, vertex_rows, DEFAULT_EVENT_LIMIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = presets::two_by_three();
    let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
    let (h, _) = facet_enumeration_01(&rows, &DdOptions::default())?;
    let result = scan(&scenario, &h.facets, &GridSpec::fig2(181), RecordFilter::None)?;

    for p in result.per_point.iter().step_by(6) {
        let bar = "#".repeat((p.max_violation.max(0.0) * 120.0).round() as usize);
        println!(
            "x = {:5.3}  {:>3} violated  {:+.4} {bar}",
            p.params[0], p.violated, p.max_violation + 0.0
        );
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(path, write_envelope_csv(&result))?;
    }
    Ok(())
}
