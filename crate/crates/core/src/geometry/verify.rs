use std::collections::HashMap;

use rayon::prelude::*;

use super::dd::homogenize;
use super::inequality::{canonicalize, Inequality};
use super::linalg;
use crate::error::{Error, Result};
use crate::scenario::Point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Facet `facet` is violated by vertex `vertex`.
    Invalid { facet: usize, vertex: usize },
    /// The tight vertices span only `rank` dimensions (affinely, homogenized),
    /// `needed` are required for a facet.
    NotFacetDefining { facet: usize, rank: usize, needed: usize },
    /// Tight on every vertex: an implicit equality rather than a facet.
    ImplicitEquality { facet: usize },
    Duplicate { first: usize, second: usize },
    ZeroInequality { facet: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every inequality is valid on all vertices, tight on an
/// affinely spanning vertex subset, and not a duplicate of another.
pub fn verify_h_representation(vertices: &[Point], facets: &[Inequality]) -> Result<VerifyReport> {
    let first = vertices.first().ok_or(Error::EmptyInput)?;
    let d = first.dim();
    for v in vertices {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
    }
    if let Some(f) = facets.iter().find(|f| f.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: f.dim(),
        });
    }
    let rows = vertices.iter().map(homogenize).collect::<Result<Vec<_>>>()?;
    let full_rank = linalg::rank(&rows);

    let mut failures: Vec<Failure> = facets
        .par_iter()
        .enumerate()
        .map(|(i, f)| check_one(i, f, vertices, &rows, full_rank))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let mut seen: HashMap<Inequality, usize> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        if let Ok(c) = canonicalize(f) {
            if let Some(&first) = seen.get(&c) {
                failures.push(Failure::Duplicate { first, second: i });
            } else {
                seen.insert(c, i);
            }
        }
    }
    Ok(VerifyReport {
        checked: facets.len(),
        failures,
    })
}

fn check_one(
    i: usize,
    f: &Inequality,
    vertices: &[Point],
    rows: &[Vec<i64>],
    full_rank: usize,
) -> Option<Failure> {
    if f.coeffs.iter().all(|&c| c == 0) {
        return Some(Failure::ZeroInequality { facet: i });
    }
    let mut tight = Vec::new();
    for (k, v) in vertices.iter().enumerate() {
        let s = f.slack(v);
        if s < num_rational::BigRational::from_integer(0.into()) {
            return Some(Failure::Invalid { facet: i, vertex: k });
        }
        if s == num_rational::BigRational::from_integer(0.into()) {
            tight.push(rows[k].clone());
        }
    }
    if tight.len() == vertices.len() {
        return Some(Failure::ImplicitEquality { facet: i });
    }
    let rank = linalg::rank(&tight);
    let needed = full_rank - 1;
    if rank < needed {
        return Some(Failure::NotFacetDefining {
            facet: i,
            rank,
            needed,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{enumerate_vertices, presets};

    #[test]
    fn sum_of_facets_flagged() {
        let v = enumerate_vertices(&presets::ch()).unwrap();
        // P(A1) + P(B1) <= 2
        let f = Inequality::new(vec![1, 0, 1, 0, 0, 0, 0, 0], 2);
        let r = verify_h_representation(&v, &[f]).unwrap();
        assert!(matches!(r.failures[..], [Failure::NotFacetDefining { facet: 0, .. }]));
    }

    #[test]
    fn invalid_flagged_at_violating_vertex() {
        let s = presets::ch();
        let v = enumerate_vertices(&s).unwrap();
        // P(A1B1) <= P(A1B2)
        let f = Inequality::new(vec![0, 0, 0, 0, 1, -1, 0, 0], 0);
        let r = verify_h_representation(&v, &[f]).unwrap();
        let Failure::Invalid { vertex, .. } = r.failures[0] else {
            panic!("{:?}", r.failures)
        };
        // t(A1) = t(B1) = 1, t(B2) = 0 violates it
        let x: Vec<i64> = v[vertex].coords.iter().map(|c| c.to_integer().try_into().unwrap()).collect();
        assert_eq!(x[0], 1);
        assert_eq!(x[2], 1);
        assert_eq!(x[3], 0);
    }

    #[test]
    fn duplicates_and_equalities() {
        let v = vec![Point::from_integers(&[0, 0]), Point::from_integers(&[1, 0])];
        let eq = Inequality::new(vec![0, 1], 0);
        let f = Inequality::new(vec![1, 0], 1);
        let f2 = Inequality::new(vec![2, 0], 2);
        let r = verify_h_representation(&v, &[eq, f, f2]).unwrap();
        assert_eq!(
            r.failures,
            vec![
                Failure::ImplicitEquality { facet: 0 },
                Failure::Duplicate { first: 1, second: 2 }
            ]
        );
    }
}
