//! Exact membership in `conv(vertices)` with a checkable certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::inequality::{canonicalize, Inequality};
use super::lp::{self, LpOutcome};
use crate::error::{Error, Result};
use crate::scenario::Point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipCertificate {
    /// Convex weights, one per vertex, reproducing the point.
    Inside { weights: Vec<BigRational> },
    /// Valid for every vertex, strictly violated by the point.
    Outside { separator: Inequality },
}

impl MembershipCertificate {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipCertificate::Inside { .. })
    }

    /// Re-checks the certificate from scratch in exact arithmetic.
    pub fn verify(&self, point: &Point, vertices: &[Point]) -> bool {
        match self {
            MembershipCertificate::Inside { weights } => {
                if weights.len() != vertices.len()
                    || weights.iter().any(|w| w.is_negative())
                    || weights.iter().sum::<BigRational>() != BigRational::one()
                {
                    return false;
                }
                (0..point.dim()).all(|c| {
                    let s: BigRational = weights
                        .iter()
                        .zip(vertices)
                        .map(|(w, v)| w * &v.coords[c])
                        .sum();
                    s == point.coords[c]
                })
            }
            MembershipCertificate::Outside { separator } => {
                vertices.iter().all(|v| separator.satisfied_by(v))
                    && !separator.satisfied_by(point)
            }
        }
    }
}

/// Decides whether `point` lies in the convex hull of `vertices`.
///
/// Inside, the weights maximize the smallest weight, so symmetric points such
/// as the centroid get symmetric weights. Outside, the separator comes from
/// the Farkas certificate of the infeasible weight system.
pub fn membership(point: &Point, vertices: &[Point]) -> Result<MembershipCertificate> {
    let first = vertices.first().ok_or(Error::EmptyInput)?;
    let d = first.dim();
    for v in vertices.iter().chain(std::iter::once(point)) {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
    }
    let m = vertices.len();
    // columns: t, then mu_1..mu_m with lambda_i = t + mu_i
    let mut a = Vec::with_capacity(d + 1);
    for c in 0..d {
        let mut row = Vec::with_capacity(m + 1);
        row.push(vertices.iter().map(|v| &v.coords[c]).sum::<BigRational>());
        row.extend(vertices.iter().map(|v| v.coords[c].clone()));
        a.push(row);
    }
    let mut last = vec![BigRational::from_integer(BigInt::from(m))];
    last.extend(std::iter::repeat_n(BigRational::one(), m));
    a.push(last);
    let mut b = point.coords.clone();
    b.push(BigRational::one());
    let mut cost = vec![BigRational::zero(); m + 1];
    cost[0] = -BigRational::one();

    match lp::solve(&a, &b, &cost) {
        LpOutcome::Optimal { x, .. } => {
            let t = &x[0];
            let weights = x[1..].iter().map(|mu| t + mu).collect();
            Ok(MembershipCertificate::Inside { weights })
        }
        LpOutcome::Infeasible { farkas } => {
            // u·v + u0 <= 0 on vertices, u·p + u0 > 0
            let l = farkas
                .iter()
                .fold(BigInt::one(), |acc, y| acc.lcm(y.denom()));
            let ints: Vec<BigInt> = farkas.iter().map(|y| (y * &l).to_integer()).collect();
            let to_i64 = |v: &BigInt| i64::try_from(v).map_err(|_| Error::Overflow("separator"));
            let coeffs = ints[..d].iter().map(to_i64).collect::<Result<Vec<_>>>()?;
            let bound = to_i64(&-&ints[d])?;
            let separator = canonicalize(&Inequality::new(coeffs, bound))?;
            Ok(MembershipCertificate::Outside { separator })
        }
        LpOutcome::Unbounded => unreachable!("the smallest weight is bounded by 1/m"),
    }
}
