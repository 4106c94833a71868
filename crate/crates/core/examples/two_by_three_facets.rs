//! Two parties with three settings each: facet enumeration on the 0/1 fast
//! path, independent verification of the result and a comparison of the two
//! insertion orders.

use std::time::Instant;

use corrpoly::geometry::{
    facet_enumeration_01, verify_h_representation, DdOptions, InsertionOrder,
};
use corrpoly::scenario::{enumerate_vertices, presets, vertex_rows, DEFAULT_EVENT_LIMIT};

fn main() -> corrpoly::Result<()> {
    let scenario = presets::two_by_three();
    let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
    let mut lists = Vec::new();
    for order in [InsertionOrder::Lex, InsertionOrder::MaxCutoff] {
        let opts = DdOptions { order, ..Default::default() };
        let start = Instant::now();
        let (h, stats) = facet_enumeration_01(&rows, &opts)?;
        println!(
            "{order:?}: {} facets in {:.2?}, peak {} rays, {} adjacency tests",
            h.facets.len(),
            start.elapsed(),
            stats.max_rays,
            stats.pairs_tested
        );
        lists.push(h.facets);
    }
    println!("orders agree: {}", lists[0] == lists[1]);

    let report = verify_h_representation(&enumerate_vertices(&scenario)?, &lists[0])?;
    println!("verified {} facets, failures: {}", report.checked, report.failures.len());
    Ok(())
}
