//! Exact membership tests with certificates. An inside point comes with
//! convex weights over the vertices; an outside point comes with a
//! separating inequality valid on every vertex.

use corrpoly::geometry::{membership, MembershipCertificate};
use corrpoly::scenario::{enumerate_vertices, parse_points, presets};

fn main() -> corrpoly::Result<()> {
    let scenario = presets::ch();
    let vertices = enumerate_vertices(&scenario)?;
    println!("basis: {}", scenario.basis_line());

    // uniform mixture; a PR-box-like point; a singlet point at optimal CH angles
    let points = parse_points(
        "1/2 1/2 1/2 1/2 1/4 1/4 1/4 1/4
         1/2 1/2 1/2 1/2 1/2 1/2 1/2 0
         1/2 1/2 1/2 1/2 427/1000 427/1000 427/1000 73/1000",
    )?;
    for p in &points {
        println!("\npoint: {p}");
        let cert = membership(p, &vertices)?;
        match &cert {
            MembershipCertificate::Inside { weights } => {
                println!("inside, weights:");
                for (w, v) in weights.iter().zip(&vertices) {
                    if *w != num_rational::BigRational::from_integer(0.into()) {
                        println!("  {w} x ({v})");
                    }
                }
            }
            MembershipCertificate::Outside { separator } => {
                println!("outside, separated by {}", separator.pretty(&scenario));
                println!("lhs at point: {}", separator.lhs(&p.coords));
            }
        }
        println!("certificate checks: {}", cert.verify(p, &vertices));
    }
    Ok(())
}
