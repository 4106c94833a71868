//! A scenario read from the text format instead of a preset: three events
//! of one party, all pairs jointly measurable. Its facets are the classic
//! Bell-Wigner-type triangle inequalities.

use corrpoly::geometry::facet_enumeration;
use corrpoly::scenario::{enumerate_vertices, Scenario};

const TEXT: &str = "
events: A1 A2 A3
joint: A1 A2
joint: A1 A3
joint: A2 A3
";

fn main() -> corrpoly::Result<()> {
    let scenario = Scenario::parse("triangle", TEXT)?;
    print!("{}", scenario.to_text());
    let h = facet_enumeration(&enumerate_vertices(&scenario)?)?;
    println!("{} facets:", h.facets.len());
    for f in &h.facets {
        println!("  {}", f.pretty(&scenario));
    }
    Ok(())
}
