//! Exact violation census of the GHZ facets at the perfectly correlated
//! setting: with angles that are multiples of pi/6 every probability is an
//! exact rational, so the count carries no floating tolerance.
//!
//! `cargo run --release --example ghz_census [-- facets.txt]`

use corrpoly::geometry::{facet_enumeration_01, parse_inequalities, DdOptions};
use corrpoly::quantum::{evaluate_exact, violated_exact, Model};
use corrpoly::scenario::{presets, vertex_rows, DEFAULT_EVENT_LIMIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = presets::ghz26();
    let facets = match std::env::args().nth(1) {
        Some(path) => parse_inequalities(&std::fs::read_to_string(path)?)?.inequalities,
        None => {
            let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
            let opts = DdOptions { cross_check: false, ..Default::default() };
            facet_enumeration_01(&rows, &opts)?.0.facets
        }
    };
    let a = Model::preset("ghz-pi2")?.assignment(&scenario)?;
    let ids = violated_exact(&scenario, &facets, &a)?;
    println!("violated: {} / {}", ids.len(), facets.len());

    let mut by_amount = std::collections::BTreeMap::new();
    for &id in &ids {
        let e = evaluate_exact(&scenario, id, &facets[id - 1], &a)?;
        *by_amount.entry(e.value - num_rational::BigRational::from_integer(e.bound.into())).or_insert(0usize) += 1;
    }
    for (amount, n) in by_amount.iter().rev() {
        println!("  exceeded by {amount}: {n}");
    }
    Ok(())
}
