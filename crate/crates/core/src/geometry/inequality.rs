use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scenario::{Point, Scenario};

/// `coeffs · p <= bound` with integer data.
///
/// Field order makes the derived ordering `(bound, coeffs)` lexicographic,
/// which is the order facet files are written in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub bound: i64,
    pub coeffs: Vec<i64>,
}

impl Inequality {
    pub fn new(coeffs: Vec<i64>, bound: i64) -> Self {
        Inequality { bound, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `coeffs · x` over exact rationals.
    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| **c != 0)
            .fold(BigRational::zero(), |acc, (c, v)| acc + v * BigInt::from(*c))
    }

    /// `bound - coeffs · x`: nonnegative when the point satisfies it.
    pub fn slack(&self, p: &Point) -> BigRational {
        BigRational::from_integer(self.bound.into()) - self.lhs(&p.coords)
    }

    pub fn slack_int(&self, x: &[u8]) -> i64 {
        self.bound
            - self
                .coeffs
                .iter()
                .zip(x)
                .map(|(c, &v)| c * v as i64)
                .sum::<i64>()
    }

    pub fn satisfied_by(&self, p: &Point) -> bool {
        !self.slack(p).is_negative()
    }

    /// Coefficients followed by the bound; the key for orbit representatives.
    pub fn coeff_bound_key(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(self.bound);
        v
    }

    /// Human-readable form over a scenario basis, e.g.
    /// `P(A1) + P(B1) - P(A1B1) <= 1`.
    pub fn pretty(&self, scenario: &Scenario) -> String {
        let mut out = String::new();
        for (c, m) in self.coeffs.iter().zip(scenario.monomials()) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("P({m})"));
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{out} <= {}", self.bound)
    }
}

impl Inequality {
    /// Parses a linear inequality written over a scenario's monomials, such as
    /// `P(A1) + P(B1) - P(A1B1) <= 1` or `0 >= -P(A1) + 2P(A1B2)`. Both sides
    /// may mix integer constants and `cP(...)` terms.
    pub fn parse_expression(scenario: &Scenario, text: &str) -> Result<Inequality> {
        let (left, right, flip) = if let Some((l, r)) = text.split_once("<=") {
            (l, r, false)
        } else if let Some((l, r)) = text.split_once(">=") {
            (l, r, true)
        } else {
            return Err(Error::parse(0, format!("no `<=` or `>=` in `{text}`")));
        };
        let (lc, lk) = linear_form(scenario, left)?;
        let (rc, rk) = linear_form(scenario, right)?;
        let (mut coeffs, mut bound): (Vec<i64>, i64) =
            (lc.iter().zip(&rc).map(|(a, b)| a - b).collect(), rk - lk);
        if flip {
            coeffs.iter_mut().for_each(|c| *c = -*c);
            bound = -bound;
        }
        Ok(Inequality { bound, coeffs })
    }
}

fn linear_form(scenario: &Scenario, text: &str) -> Result<(Vec<i64>, i64)> {
    let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let bad = |msg: &str| Error::parse(0, format!("{msg} in `{}`", text.trim()));
    let mut coeffs = vec![0i64; scenario.dim()];
    let mut constant = 0i64;
    let b = t.as_bytes();
    let mut i = 0;
    if b.is_empty() {
        return Err(bad("empty side"));
    }
    while i < b.len() {
        let mut sign = 1;
        if b[i] == b'+' || b[i] == b'-' {
            sign = if b[i] == b'-' { -1 } else { 1 };
            i += 1;
        }
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let number: Option<i64> = if i > start {
            Some(t[start..i].parse().map_err(|_| bad("bad number"))?)
        } else {
            None
        };
        if t[i..].starts_with("P(") {
            let close = t[i..].find(')').ok_or_else(|| bad("unclosed `P(`"))? + i;
            let name = &t[i + 2..close];
            let m = name.parse().map_err(|_| bad("bad monomial"))?;
            let k = scenario
                .monomial_index(&m)
                .ok_or_else(|| bad(&format!("monomial {name} not in basis")))?;
            coeffs[k] += sign * number.unwrap_or(1);
            i = close + 1;
        } else if let Some(n) = number {
            constant += sign * n;
        } else {
            return Err(bad("expected a term"));
        }
    }
    Ok((coeffs, constant))
}

impl fmt::Display for Inequality {
    /// One facet-file row: `<bound> <c1> ... <cn>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bound)?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// Divides coefficients and bound by their common gcd. The orientation
/// (`<=` side) is never flipped, so the result is unique per half-space.
pub fn canonicalize(ineq: &Inequality) -> Result<Inequality> {
    if ineq.coeffs.iter().all(|&c| c == 0) {
        return Err(Error::ZeroInequality);
    }
    let g = ineq
        .coeffs
        .iter()
        .fold(ineq.bound.unsigned_abs(), |g, &c| g.gcd(&c.unsigned_abs())) as i64;
    Ok(Inequality {
        bound: ineq.bound / g,
        coeffs: ineq.coeffs.iter().map(|c| c / g).collect(),
    })
}

/// Writes a facet file: header comments with the scenario name and basis,
/// then one inequality per line.
pub fn write_inequalities(scenario: &Scenario, ineqs: &[Inequality]) -> String {
    let mut out = String::with_capacity(ineqs.len() * (2 * scenario.dim() + 4) + 128);
    out.push_str(&format!("# scenario: {}\n", scenario.name()));
    out.push_str(&format!("# basis: {}\n", scenario.basis_line()));
    out.push_str(&format!("# count: {}\n", ineqs.len()));
    out.push_str("# row: <bound> <coefficients>  meaning  coefficients . p <= bound\n");
    for ineq in ineqs {
        out.push_str(&ineq.to_string());
        out.push('\n');
    }
    out
}

/// A parsed facet file. `basis` is taken from the header if present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityFile {
    pub scenario_name: Option<String>,
    pub basis: Option<Vec<String>>,
    pub inequalities: Vec<Inequality>,
}

pub fn parse_inequalities(text: &str) -> Result<InequalityFile> {
    let mut file = InequalityFile {
        scenario_name: None,
        basis: None,
        inequalities: Vec::new(),
    };
    let mut width = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(name) = comment.strip_prefix("scenario:") {
                file.scenario_name = Some(name.trim().to_string());
            } else if let Some(basis) = comment.strip_prefix("basis:") {
                file.basis = Some(basis.split_whitespace().map(String::from).collect());
            }
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(lineno + 1, e.to_string()))?;
        if nums.len() < 2 {
            return Err(Error::parse(lineno + 1, "need a bound and at least one coefficient"));
        }
        match width {
            None => width = Some(nums.len()),
            Some(w) if w != nums.len() => {
                return Err(Error::parse(lineno + 1, format!("expected {w} fields")))
            }
            _ => {}
        }
        file.inequalities.push(Inequality {
            bound: nums[0],
            coeffs: nums[1..].to_vec(),
        });
    }
    if let (Some(basis), Some(w)) = (&file.basis, width) {
        if basis.len() + 1 != w {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: w - 1,
            });
        }
    }
    Ok(file)
}

impl InequalityFile {
    /// Checks the header basis (when present) against a scenario.
    pub fn check_basis(&self, scenario: &Scenario) -> Result<()> {
        if let Some(basis) = &self.basis {
            let expected: Vec<String> = scenario.monomials().iter().map(|m| m.to_string()).collect();
            if *basis != expected {
                return Err(Error::InvalidParameter(format!(
                    "facet file basis `{}` does not match scenario `{}`",
                    basis.join(" "),
                    expected.join(" ")
                )));
            }
        }
        if let Some(first) = self.inequalities.first() {
            if first.dim() != scenario.dim() {
                return Err(Error::DimensionMismatch {
                    expected: scenario.dim(),
                    found: first.dim(),
                });
            }
        }
        Ok(())
    }
}
