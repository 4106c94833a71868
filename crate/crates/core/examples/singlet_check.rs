//! Evaluates every facet of the two-by-three polytope against the singlet
//! model in its symmetric and less symmetric configurations, for both
//! outcome parities.

use corrpoly::geometry::{facet_enumeration_01, DdOptions};
use corrpoly::quantum::{check_all, Model};
use corrpoly::scenario::{presets, vertex_rows, DEFAULT_EVENT_LIMIT};

fn main() -> corrpoly::Result<()> {
    let scenario = presets::two_by_three();
    let rows = vertex_rows(&scenario, DEFAULT_EVENT_LIMIT)?;
    let (h, _) = facet_enumeration_01(&rows, &DdOptions::default())?;

    for name in Model::PRESETS.iter().filter(|n| n.starts_with("singlet")) {
        let a = Model::preset(name)?.assignment(&scenario)?;
        let records = check_all(&scenario, &h.facets, &a)?;
        let violated: Vec<_> = records.iter().filter(|r| r.violated).collect();
        let worst = records
            .iter()
            .max_by(|x, y| x.violation.total_cmp(&y.violation))
            .expect("facets");
        println!(
            "{name:34} {:>3} / {} violated, largest {:.6} on #{} ({})",
            violated.len(),
            records.len(),
            worst.violation,
            worst.inequality_id,
            h.facets[worst.inequality_id - 1].pretty(&scenario)
        );
    }
    Ok(())
}
