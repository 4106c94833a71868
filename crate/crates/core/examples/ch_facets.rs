//! The complete facet system of the two-party, two-setting polytope, in
//! readable form. Sixteen vertices in eight dimensions give 24 facets: the
//! trivial positivity bounds plus the eight CH-type inequalities.

use corrpoly::geometry::facet_enumeration;
use corrpoly::scenario::{enumerate_vertices, presets};

fn main() -> corrpoly::Result<()> {
    let scenario = presets::ch();
    let vertices = enumerate_vertices(&scenario)?;
    let h = facet_enumeration(&vertices)?;
    println!("{} vertices, {} facets", vertices.len(), h.facets.len());
    for f in &h.facets {
        println!("  {}", f.pretty(&scenario));
    }
    Ok(())
}
