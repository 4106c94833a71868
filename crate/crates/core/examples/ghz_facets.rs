//! Facets of the three-party polytope with all pairs and triples (26
//! dimensions, 64 vertices). This takes a few seconds in release mode; run
//! with `cargo run --release --example ghz_facets -- out.txt` to keep the
//! facet file for the other GHZ examples.

use std::time::Instant;

use corrpoly::geometry::{facet_enumeration_01, write_inequalities, DdOptions};
use corrpoly::scenario::{presets, vertex_rows, DEFAULT_EVENT_LIMIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = presets::ghz26();
    let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
    let opts = DdOptions { cross_check: false, ..Default::default() };
    let start = Instant::now();
    let (h, stats) = facet_enumeration_01(&rows, &opts)?;
    eprintln!(
        "{} facets in {:.1?} (peak {} rays)",
        h.facets.len(),
        start.elapsed(),
        stats.max_rays
    );
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, write_inequalities(&scenario, &h.facets))?,
        None => {
            let mut by_bound = std::collections::BTreeMap::new();
            for f in &h.facets {
                *by_bound.entry(f.bound).or_insert(0usize) += 1;
            }
            for (b, n) in by_bound {
                println!("bound {b}: {n} facets");
            }
        }
    }
    Ok(())
}
