//! Facet enumeration by the double description method.
//!
//! A vertex `v` becomes the homogeneous constraint `b - c·v >= 0` on the
//! unknown `(b, c)`. The cone cut out by all vertex constraints is the cone
//! of valid inequalities `c·p <= b`; its extreme rays are the facets and
//! its lineality space holds the implicit equalities.
//!
//! Constraints are inserted one at a time. Rays on the negative side of the
//! new constraint are dropped, and every adjacent (positive, negative) pair
//! produces one new ray on the constraint's hyperplane. Adjacency is decided
//! combinatorially from zero sets stored as bit masks.

use num_integer::Integer;
use rayon::prelude::*;

use super::inequality::{canonicalize, Inequality};
use super::linalg;
use crate::error::{Error, Result};
use crate::scenario::Point;

/// Default cap on the number of rays alive at any step.
pub const DEFAULT_RAY_CAP: usize = 1_000_000;

/// Coordinates and incidence bitset of a ray produced by one insertion step.
type NewRay = (Vec<i64>, Vec<u64>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InsertionOrder {
    /// Homogenized constraints sorted lexicographically.
    #[default]
    Lex,
    /// Greedily insert the constraint that removes the most rays.
    MaxCutoff,
}

#[derive(Clone, Debug)]
pub struct DdOptions {
    pub order: InsertionOrder,
    pub ray_cap: usize,
    /// Re-check every combinatorial adjacency decision with the rank test.
    pub cross_check: bool,
}

impl Default for DdOptions {
    fn default() -> Self {
        DdOptions {
            order: InsertionOrder::Lex,
            ray_cap: DEFAULT_RAY_CAP,
            cross_check: cfg!(debug_assertions),
        }
    }
}

/// H-representation of `conv(vertices)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRepresentation {
    pub dim: usize,
    /// Facet-defining inequalities, sorted by `(bound, coeffs)`.
    pub facets: Vec<Inequality>,
    /// `coeffs · p = bound` for every vertex; empty when full-dimensional.
    pub equalities: Vec<Inequality>,
}

impl HRepresentation {
    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DdStats {
    pub max_rays: usize,
    pub pairs_tested: u64,
    pub rays_created: u64,
}

/// Complete irredundant facet list of `conv(vertices)` with default options.
pub fn facet_enumeration(vertices: &[Point]) -> Result<HRepresentation> {
    facet_enumeration_with(vertices, &DdOptions::default()).map(|(h, _)| h)
}

pub fn facet_enumeration_with(
    vertices: &[Point],
    opts: &DdOptions,
) -> Result<(HRepresentation, DdStats)> {
    let first = vertices.first().ok_or(Error::EmptyInput)?;
    let d = first.dim();
    if let Some(bad) = vertices.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    let rows = vertices
        .iter()
        .map(homogenize)
        .collect::<Result<Vec<_>>>()?;
    run(rows, opts)
}

/// Same as [`facet_enumeration_with`] for 0/1 vertex rows.
pub fn facet_enumeration_01(rows: &[Vec<u8>], opts: &DdOptions) -> Result<(HRepresentation, DdStats)> {
    let first = rows.first().ok_or(Error::EmptyInput)?;
    if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
        return Err(Error::DimensionMismatch {
            expected: first.len(),
            found: bad.len(),
        });
    }
    let rows = rows
        .iter()
        .map(|r| std::iter::once(1).chain(r.iter().map(|&x| -(x as i64))).collect())
        .collect();
    run(rows, opts)
}

/// `(L, -L·v)` with `L` the lcm of the coordinate denominators.
pub(crate) fn homogenize(v: &Point) -> Result<Vec<i64>> {
    let l = v
        .coords
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let mut row = Vec::with_capacity(v.dim() + 1);
    row.push(i64::try_from(&l).map_err(|_| Error::Overflow("vertex denominator"))?);
    for c in &v.coords {
        let scaled = -(c.numer() * (&l / c.denom()));
        row.push(i64::try_from(&scaled).map_err(|_| Error::Overflow("vertex coordinate"))?);
    }
    Ok(row)
}

struct Cone {
    dim: usize,
    words: usize,
    rays: Vec<i64>,
    zeros: Vec<u64>,
    lineality: Vec<Vec<i64>>,
}

impl Cone {
    fn len(&self) -> usize {
        self.rays.len() / self.dim
    }

    fn ray(&self, k: usize) -> &[i64] {
        &self.rays[k * self.dim..(k + 1) * self.dim]
    }

    fn zero(&self, k: usize) -> &[u64] {
        &self.zeros[k * self.words..(k + 1) * self.words]
    }
}

fn dot(a: &[i64], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(&p, &q)| p as i128 * q as i128).sum()
}

fn set_bit(z: &mut [u64], j: usize) {
    z[j / 64] |= 1 << (j % 64);
}

/// `alpha * x + beta * y`, divided by the gcd of its entries.
fn combine(alpha: i128, x: &[i64], beta: i128, y: &[i64]) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(x.len());
    let mut g: i128 = 0;
    for (&p, &q) in x.iter().zip(y) {
        let v = alpha
            .checked_mul(p as i128)
            .and_then(|a| beta.checked_mul(q as i128).and_then(|b| a.checked_add(b)))
            .ok_or(Error::Overflow("ray combination"))?;
        g = g.gcd(&v);
        out.push(v);
    }
    if g == 0 {
        g = 1;
    }
    out.into_iter()
        .map(|v| i64::try_from(v / g).map_err(|_| Error::Overflow("ray entry")))
        .collect()
}

fn normalize(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

fn run(rows: Vec<Vec<i64>>, opts: &DdOptions) -> Result<(HRepresentation, DdStats)> {
    let m = rows.len();
    let dim = rows[0].len();
    let words = m.div_ceil(64);
    let mut cone = Cone {
        dim,
        words,
        rays: Vec::new(),
        zeros: Vec::new(),
        lineality: (0..dim)
            .map(|i| (0..dim).map(|j| (i == j) as i64).collect())
            .collect(),
    };
    let mut stats = DdStats::default();

    let mut pending: Vec<usize> = (0..m).collect();
    pending.sort_by(|&a, &b| rows[a].cmp(&rows[b]).then(a.cmp(&b)));
    let mut inserted: Vec<usize> = Vec::with_capacity(m);

    while !pending.is_empty() {
        let pick = match opts.order {
            InsertionOrder::Lex => 0,
            InsertionOrder::MaxCutoff => {
                let mut best = 0;
                let mut best_cut = None;
                for (pos, &j) in pending.iter().enumerate() {
                    let cut = (0..cone.len())
                        .filter(|&k| dot(&rows[j], cone.ray(k)) < 0)
                        .count();
                    if best_cut.is_none_or(|b| cut > b) {
                        best_cut = Some(cut);
                        best = pos;
                    }
                }
                best
            }
        };
        let j = pending.remove(pick);
        let a = &rows[j];

        if let Some(piv) = cone.lineality.iter().position(|l| dot(a, l) != 0) {
            shrink_lineality(&mut cone, a, j, &inserted, piv)?;
        } else {
            dd_step(&mut cone, a, j, &inserted, &rows, opts, &mut stats)?;
        }
        inserted.push(j);
        stats.max_rays = stats.max_rays.max(cone.len());
        if cone.len() > opts.ray_cap {
            return Err(Error::ResourceExhausted(format!(
                "{} intermediate rays exceed the cap of {}",
                cone.len(),
                opts.ray_cap
            )));
        }
    }

    let mut facets = Vec::with_capacity(cone.len());
    for k in 0..cone.len() {
        let r = cone.ray(k);
        if r[1..].iter().all(|&c| c == 0) {
            // 0 <= b: only arises when the polytope is a single point
            continue;
        }
        facets.push(canonicalize(&Inequality::new(r[1..].to_vec(), r[0]))?);
    }
    facets.sort();
    facets.dedup();
    let mut equalities: Vec<Inequality> = cone
        .lineality
        .iter()
        .map(|l| canonicalize(&Inequality::new(l[1..].to_vec(), l[0])))
        .collect::<Result<_>>()?;
    equalities.sort();
    Ok((
        HRepresentation {
            dim: dim - 1,
            facets,
            equalities,
        },
        stats,
    ))
}

/// Constraint `a` is nonzero on the lineality vector `piv`: that vector
/// becomes a ray and the rest of the description is projected onto `a = 0`.
fn shrink_lineality(
    cone: &mut Cone,
    a: &[i64],
    j: usize,
    inserted: &[usize],
    piv: usize,
) -> Result<()> {
    let mut l_star = cone.lineality.remove(piv);
    let s = dot(a, &l_star);
    let sign: i128 = if s > 0 { 1 } else { -1 };
    let s_abs = s.abs();
    for l in cone.lineality.iter_mut() {
        let t = dot(a, l);
        if t != 0 {
            *l = combine(s_abs, l, -sign * t, &l_star)?;
        }
    }
    let n = cone.len();
    let mut rays = Vec::with_capacity((n + 1) * cone.dim);
    for k in 0..n {
        let r = cone.ray(k);
        let t = dot(a, r);
        if t == 0 {
            rays.extend_from_slice(r);
        } else {
            rays.extend(combine(s_abs, r, -sign * t, &l_star)?);
        }
    }
    if sign < 0 {
        l_star.iter_mut().for_each(|x| *x = -*x);
    }
    normalize(&mut l_star);
    rays.extend_from_slice(&l_star);
    cone.rays = rays;

    // old rays now lie on the hyperplane of `a`; the new ray is zero on
    // everything inserted before it
    for k in 0..n {
        set_bit(&mut cone.zeros[k * cone.words..(k + 1) * cone.words], j);
    }
    let mut z = vec![0u64; cone.words];
    for &i in inserted {
        set_bit(&mut z, i);
    }
    cone.zeros.extend(z);
    Ok(())
}

fn dd_step(
    cone: &mut Cone,
    a: &[i64],
    j: usize,
    inserted: &[usize],
    rows: &[Vec<i64>],
    opts: &DdOptions,
    stats: &mut DdStats,
) -> Result<()> {
    let n = cone.len();
    let words = cone.words;
    let vals: Vec<i128> = (0..n).map(|k| dot(a, cone.ray(k))).collect();
    let pos: Vec<usize> = (0..n).filter(|&k| vals[k] > 0).collect();
    let neg: Vec<usize> = (0..n).filter(|&k| vals[k] < 0).collect();
    if neg.is_empty() {
        for k in 0..n {
            if vals[k] == 0 {
                set_bit(&mut cone.zeros[k * words..(k + 1) * words], j);
            }
        }
        return Ok(());
    }
    let need = (cone.dim - cone.lineality.len()).saturating_sub(2) as u32;
    let cone_ref = &*cone;

    let created: Vec<Result<Vec<NewRay>>> = pos
        .par_iter()
        .map(|&p| {
            let mut out = Vec::new();
            let zp = cone_ref.zero(p);
            let mut common = vec![0u64; words];
            for &q in &neg {
                let zq = cone_ref.zero(q);
                let mut count = 0;
                for w in 0..words {
                    common[w] = zp[w] & zq[w];
                    count += common[w].count_ones();
                }
                if count < need {
                    continue;
                }
                let adjacent = combinatorially_adjacent(cone_ref, &common, p, q);
                if opts.cross_check {
                    let tight: Vec<Vec<i64>> = inserted
                        .iter()
                        .filter(|&&i| common[i / 64] >> (i % 64) & 1 == 1)
                        .map(|&i| rows[i].clone())
                        .collect();
                    let algebraic = linalg::rank(&tight) == need as usize;
                    assert_eq!(adjacent, algebraic, "adjacency tests disagree");
                }
                if !adjacent {
                    continue;
                }
                let r = combine(vals[p], cone_ref.ray(q), -vals[q], cone_ref.ray(p))?;
                let mut z = common.clone();
                set_bit(&mut z, j);
                out.push((r, z));
            }
            Ok(out)
        })
        .collect();

    stats.pairs_tested += (pos.len() * neg.len()) as u64;
    let mut rays = Vec::with_capacity(cone.rays.len());
    let mut zeros = Vec::with_capacity(cone.zeros.len());
    for k in 0..n {
        if vals[k] >= 0 {
            rays.extend_from_slice(cone.ray(k));
            let start = zeros.len();
            zeros.extend_from_slice(cone.zero(k));
            if vals[k] == 0 {
                set_bit(&mut zeros[start..], j);
            }
        }
    }
    for batch in created {
        for (r, z) in batch? {
            stats.rays_created += 1;
            rays.extend(r);
            zeros.extend(z);
        }
    }
    cone.rays = rays;
    cone.zeros = zeros;
    Ok(())
}

/// True iff no ray other than `p` and `q` is zero on all of `common`.
fn combinatorially_adjacent(cone: &Cone, common: &[u64], p: usize, q: usize) -> bool {
    let words = cone.words;
    if words == 1 {
        let c = common[0];
        return !cone
            .zeros
            .iter()
            .enumerate()
            .any(|(k, &z)| z & c == c && k != p && k != q);
    }
    !(0..cone.len()).any(|k| {
        k != p
            && k != q
            && cone
                .zero(k)
                .iter()
                .zip(common)
                .all(|(&z, &c)| z & c == c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::from_integers(c)).collect()
    }

    #[test]
    fn interval() {
        let h = facet_enumeration(&pts(&[&[0], &[1]])).unwrap();
        assert_eq!(
            h.facets,
            vec![Inequality::new(vec![-1], 0), Inequality::new(vec![1], 1)]
        );
        assert!(h.is_full_dimensional());
    }

    #[test]
    fn unit_square() {
        let h = facet_enumeration(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(
            h.facets,
            vec![
                Inequality::new(vec![-1, 0], 0),
                Inequality::new(vec![0, -1], 0),
                Inequality::new(vec![0, 1], 1),
                Inequality::new(vec![1, 0], 1),
            ]
        );
    }

    #[test]
    fn redundant_interior_point_ignored() {
        let square = facet_enumeration(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])).unwrap();
        let with_mid =
            facet_enumeration(&pts(&[&[0, 0], &[2, 0], &[1, 1], &[0, 2], &[2, 2], &[1, 0]]))
                .unwrap();
        assert_eq!(square, with_mid);
    }

    #[test]
    fn segment_in_plane_reports_equality() {
        let h = facet_enumeration(&pts(&[&[0, 0], &[1, 1]])).unwrap();
        assert!(!h.is_full_dimensional());
        assert_eq!(h.equalities.len(), 1);
        let eq = &h.equalities[0];
        assert_eq!(eq.bound, 0);
        assert_eq!(eq.coeffs[0], -eq.coeffs[1]);
        assert_eq!(h.facets.len(), 2);
    }

    #[test]
    fn single_point() {
        let h = facet_enumeration(&pts(&[&[3, 1]])).unwrap();
        assert!(h.facets.is_empty());
        assert_eq!(h.equalities.len(), 2);
    }

    #[test]
    fn rational_vertices() {
        use num_rational::BigRational;
        let half = BigRational::new(1.into(), 2.into());
        let v = vec![
            Point::new(vec![BigRational::from_integer(0.into())]),
            Point::new(vec![half]),
        ];
        let h = facet_enumeration(&v).unwrap();
        assert_eq!(
            h.facets,
            vec![Inequality::new(vec![-1], 0), Inequality::new(vec![2], 1)]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(facet_enumeration(&[]), Err(Error::EmptyInput)));
        assert!(matches!(
            facet_enumeration(&pts(&[&[0], &[1, 1]])),
            Err(Error::DimensionMismatch { .. })
        ));
        let opts = DdOptions {
            ray_cap: 3,
            ..DdOptions::default()
        };
        let cube: Vec<Point> = (0..8)
            .map(|c| Point::from_integers(&[c & 1, c >> 1 & 1, c >> 2 & 1]))
            .collect();
        assert!(matches!(
            facet_enumeration_with(&cube, &opts),
            Err(Error::ResourceExhausted(_))
        ));
    }

    #[test]
    fn orders_agree() {
        let cube: Vec<Point> = (0..8)
            .map(|c| Point::from_integers(&[c & 1, c >> 1 & 1, c >> 2 & 1]))
            .collect();
        let lex = facet_enumeration(&cube).unwrap();
        let opts = DdOptions {
            order: InsertionOrder::MaxCutoff,
            cross_check: true,
            ..DdOptions::default()
        };
        let (cut, _) = facet_enumeration_with(&cube, &opts).unwrap();
        assert_eq!(lex, cut);
        assert_eq!(lex.facets.len(), 6);
    }
}
