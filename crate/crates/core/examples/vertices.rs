//! Prints the 0/1 vertex file of a preset scenario.
//!
//! `cargo run --example vertices -- two-by-three`

use corrpoly::scenario::{presets, vertex_rows, write_vertices, DEFAULT_EVENT_LIMIT};

fn main() -> corrpoly::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "ch".into());
    let scenario = presets::by_name(&name)?;
    let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
    print!("{}", write_vertices(&scenario, &rows));
    Ok(())
}
