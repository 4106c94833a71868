#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use corrpoly::geometry::{canonicalize, Inequality};
use corrpoly::scenario::{Point, Scenario};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture")
}

/// `label: expression` lines, in file order.
pub fn named(scenario: &Scenario, file: &str) -> Vec<(String, Inequality)> {
    fixture(file)
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (label, expr) = l.split_once(':').expect("label");
            let q = Inequality::parse_expression(scenario, expr).expect("expression");
            (label.trim().to_string(), q)
        })
        .collect()
}

pub fn get<'a>(list: &'a [(String, Inequality)], label: &str) -> &'a Inequality {
    &list.iter().find(|(l, _)| l == label).expect("label present").1
}

/// The hand-entered CH system, one expression per line, canonicalized.
pub fn hand_ch(scenario: &Scenario) -> BTreeSet<Inequality> {
    fixture("ch_hand.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| canonicalize(&Inequality::parse_expression(scenario, l).unwrap()).unwrap())
        .collect()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Rank by plain fraction-field Gaussian elimination.
pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] / &pivot[c];
            for k in c..cols {
                let v = &f * &pivot[k];
                rows[r][k] -= v;
            }
        }
        rank += 1;
    }
    rank
}

/// One nonzero solution of `M x = 0` when the null space is one-dimensional.
fn null_vector(m: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let cols = m[0].len();
    let mut rows: Vec<Vec<BigRational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for k in 0..cols {
            rows[r][k] = &rows[r][k] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let v = &f * &rows[r][k];
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if cols - pivots.len() != 1 {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).unwrap();
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = -rows[i][free].clone();
    }
    Some(x)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facets of a full-dimensional integer point set by trying the hyperplane
/// through every `d`-subset. `None` when the set is not full-dimensional.
pub fn brute_force_facets(points: &[Vec<i64>]) -> Option<BTreeSet<Inequality>> {
    let d = points[0].len();
    let lifted: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| {
            let mut r = vec![BigRational::one()];
            r.extend(p.iter().map(|&x| BigRational::from_integer(x.into())));
            r
        })
        .collect();
    if rank_q(lifted.clone()) != d + 1 {
        return None;
    }
    let mut out = BTreeSet::new();
    for subset in combinations(points.len(), d) {
        let m: Vec<Vec<BigRational>> = subset.iter().map(|&i| lifted[i].clone()).collect();
        // (h0, h) with h0 + h·p = 0 on the subset
        let Some(h) = null_vector(&m) else { continue };
        let vals: Vec<BigRational> = lifted
            .iter()
            .map(|r| r.iter().zip(&h).map(|(a, b)| a * b).sum())
            .collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        let sign = match (pos, neg) {
            (true, true) | (false, false) => continue,
            // all h0 + h·p <= 0  =>  h·p <= -h0
            (false, true) => BigRational::one(),
            (true, false) => -BigRational::one(),
        };
        let h: Vec<BigRational> = h.iter().map(|v| v * &sign).collect();
        let l = h.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<i64> = h
            .iter()
            .map(|v| i64::try_from((v * &l).to_integer()).unwrap())
            .collect();
        let ineq = Inequality::new(ints[1..].to_vec(), -ints[0]);
        out.insert(canonicalize(&ineq).unwrap());
    }
    Some(out)
}

pub fn satisfies_all(p: &Point, facets: &[Inequality]) -> bool {
    facets.iter().all(|f| f.satisfied_by(p))
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn cli(args: &[&str]) -> CliRun {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["corrpoly"];
    full.extend_from_slice(args);
    let code = corrpoly::cli::main_with_args(full, &mut out, &mut err);
    CliRun {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Mix of convex combinations (inside), their small perturbations (near the
/// boundary) and box points (mostly outside).
pub fn random_point(rng: &mut ChaCha8Rng, vertices: &[Point]) -> Point {
    let d = vertices[0].dim();
    match rng.gen_range(0..3) {
        0 | 1 => {
            let k = rng.gen_range(1..=4);
            let picks: Vec<usize> = (0..k).map(|_| rng.gen_range(0..vertices.len())).collect();
            let ws: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=5)).collect();
            let total: i64 = ws.iter().sum();
            let mut c = vec![BigRational::zero(); d];
            for (&i, &w) in picks.iter().zip(&ws) {
                for (x, v) in c.iter_mut().zip(&vertices[i].coords) {
                    *x += v * q(w, total);
                }
            }
            if rng.gen_bool(0.5) {
                let j = rng.gen_range(0..d);
                c[j] += q(rng.gen_range(-1..=1), rng.gen_range(4..=12));
            }
            Point::new(c)
        }
        _ => Point::new((0..d).map(|_| q(rng.gen_range(0..=6), 6)).collect()),
    }
}
