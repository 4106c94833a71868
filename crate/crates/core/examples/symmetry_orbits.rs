//! Groups the facets of a preset into orbits under outcome complementation
//! and the relabelling symmetries, and checks that the facet list is closed
//! under the group.
//!
//! `cargo run --example symmetry_orbits -- two-by-three`

use corrpoly::geometry::{facet_enumeration_01, DdOptions};
use corrpoly::scenario::{presets, vertex_rows, DEFAULT_EVENT_LIMIT};
use corrpoly::symmetry::{
    default_generators, generate_group, orbit_reduce, orbit_size_histogram, write_orbit_report,
};

fn main() -> corrpoly::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "ch".into());
    let scenario = presets::by_name(&name)?;
    let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
    let (h, _) = facet_enumeration_01(&rows, &DdOptions::default())?;

    let group = generate_group(&scenario, &default_generators(&scenario), true)?;
    match group.closure_check(&h.facets) {
        Ok(()) => println!("facet list closed under all {} group elements", group.order()),
        Err((facet, op)) => println!("facet {facet} leaves the list under element {op}"),
    }
    let orbits = orbit_reduce(&h.facets, &group);
    println!("{} facets in {} orbits", h.facets.len(), orbits.len());
    for (size, count) in orbit_size_histogram(&orbits) {
        println!("  {count} orbit(s) of size {size}");
    }
    print!("{}", write_orbit_report(&scenario, &group, &orbits, false));
    Ok(())
}
