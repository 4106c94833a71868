//! Quantum probability models (three-particle GHZ interferometer and the
//! two-particle singlet), inequality evaluation and parameter sweeps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Inequality;
use crate::scenario::{EventId, Monomial, Point, Scenario};

/// Values above this count as violations; guards against float noise.
pub const VIOLATION_THRESHOLD: f64 = 1e-9;

/// Probabilities must lie in `[0, 1]` up to this tolerance.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// An angle, either an exact rational multiple of pi or plain radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    PiMultiple(Rational64),
    Radians(f64),
}

impl Angle {
    pub const ZERO: Angle = Angle::PiMultiple(Rational64::new_raw(0, 1));

    pub fn pi_frac(numer: i64, denom: i64) -> Angle {
        Angle::PiMultiple(Rational64::new(numer, denom))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(q) => std::f64::consts::PI * (*q.numer() as f64) / (*q.denom() as f64),
            Angle::Radians(r) => *r,
        }
    }

    pub fn pi_multiple(&self) -> Option<Rational64> {
        match self {
            Angle::PiMultiple(q) => Some(*q),
            Angle::Radians(_) => None,
        }
    }

    pub fn add(&self, other: &Angle) -> Angle {
        match (self, other) {
            (Angle::PiMultiple(a), Angle::PiMultiple(b)) => Angle::PiMultiple(a + b),
            _ => Angle::Radians(self.radians() + other.radians()),
        }
    }

    pub fn sub(&self, other: &Angle) -> Angle {
        match (self, other) {
            (Angle::PiMultiple(a), Angle::PiMultiple(b)) => Angle::PiMultiple(a - b),
            _ => Angle::Radians(self.radians() - other.radians()),
        }
    }

    /// `sin` when it is rational, which for rational multiples of pi means
    /// one of `0, ±1/2, ±1`.
    pub fn exact_sin(&self) -> Option<BigRational> {
        let q = self.pi_multiple()?;
        let six = q * 6;
        if !six.is_integer() {
            return None;
        }
        let k = six.to_integer().rem_euclid(12);
        let (n, d) = match k {
            0 | 6 => (0, 1),
            1 | 5 => (1, 2),
            3 => (1, 1),
            7 | 11 => (-1, 2),
            9 => (-1, 1),
            _ => return None,
        };
        Some(BigRational::new(n.into(), d.into()))
    }

    pub fn exact_cos(&self) -> Option<BigRational> {
        self.add(&Angle::pi_frac(1, 2)).exact_sin()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Radians(r) => write!(f, "{r}"),
            Angle::PiMultiple(q) => {
                let (n, d) = (*q.numer(), *q.denom());
                let num = match n {
                    0 => return write!(f, "0"),
                    1 => "pi".to_string(),
                    -1 => "-pi".to_string(),
                    n => format!("{n}pi"),
                };
                if d == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{d}")
                }
            }
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `0`, `pi`, `-pi/4`, `2pi/3`, `3*pi/4`, or decimal radians.
    fn from_str(s: &str) -> Result<Angle> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let bad = || Error::InvalidParameter(format!("cannot parse angle `{s}`"));
        if let Some(pos) = t.find("pi") {
            let (coef, rest) = t.split_at(pos);
            let rest = &rest[2..];
            let numer: i64 = match coef {
                "" | "+" => 1,
                "-" => -1,
                c => c.parse().map_err(|_| bad())?,
            };
            let denom: i64 = match rest {
                "" => 1,
                r => r
                    .strip_prefix('/')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            if denom == 0 {
                return Err(bad());
            }
            Ok(Angle::PiMultiple(Rational64::new(numer, denom)))
        } else {
            let r: f64 = t.parse().map_err(|_| bad())?;
            if !r.is_finite() {
                return Err(bad());
            }
            if r == 0.0 {
                return Ok(Angle::ZERO);
            }
            Ok(Angle::Radians(r))
        }
    }
}

/// Detector angles `phi_{l,i}` of the three-particle interferometer.
#[derive(Clone, Debug, PartialEq)]
pub struct GhzParams {
    pub angles: BTreeMap<EventId, Angle>,
}

impl GhzParams {
    /// `phi_{l,1} = first`, `phi_{l,2} = second` for every party `l` in A, B, C.
    pub fn uniform(first: Angle, second: Angle) -> Self {
        let mut angles = BTreeMap::new();
        for party in ["A", "B", "C"] {
            angles.insert(EventId::new(party, 1), first);
            angles.insert(EventId::new(party, 2), second);
        }
        GhzParams { angles }
    }

    fn angle(&self, e: &EventId) -> Result<Angle> {
        let a = self
            .angles
            .get(e)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("no angle for {e}")))?;
        if !a.radians().is_finite() {
            return Err(Error::InvalidParameter(format!("angle for {e} is not finite")));
        }
        Ok(a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Both up or both down: `(1/2) sin^2(theta/2)`.
    Parallel,
    /// One up, one down: `(1/2) cos^2(theta/2)`.
    Opposite,
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Parity> {
        match s {
            "parallel" => Ok(Parity::Parallel),
            "opposite" => Ok(Parity::Opposite),
            _ => Err(Error::InvalidParameter(format!("unknown parity `{s}`"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Parallel => "parallel",
            Parity::Opposite => "opposite",
        })
    }
}

/// Measurement directions of the two singlet particles.
#[derive(Clone, Debug, PartialEq)]
pub struct SingletParams {
    pub directions: BTreeMap<EventId, Angle>,
    pub parity: Parity,
}

impl SingletParams {
    /// `theta(A_i) = theta(B_i) = angles[i-1]`.
    pub fn mirrored(angles: &[Angle], parity: Parity) -> Self {
        let mut directions = BTreeMap::new();
        for (i, a) in angles.iter().enumerate() {
            directions.insert(EventId::new("A", i as u32 + 1), *a);
            directions.insert(EventId::new("B", i as u32 + 1), *a);
        }
        SingletParams { directions, parity }
    }

    /// `theta = 0, 2pi/3, 4pi/3` for both particles.
    pub fn symmetric(parity: Parity) -> Self {
        Self::mirrored(
            &[Angle::ZERO, Angle::pi_frac(2, 3), Angle::pi_frac(4, 3)],
            parity,
        )
    }

    /// `theta(A1)=0, theta(B1)=-pi/4, theta(A2)=pi/2, theta(B2)=pi/4,
    /// theta(A3)=2pi/3, theta(B3)=pi/3`.
    pub fn less_symmetric(parity: Parity) -> Self {
        let pairs = [
            ("A", 1, Angle::ZERO),
            ("B", 1, Angle::pi_frac(-1, 4)),
            ("A", 2, Angle::pi_frac(1, 2)),
            ("B", 2, Angle::pi_frac(1, 4)),
            ("A", 3, Angle::pi_frac(2, 3)),
            ("B", 3, Angle::pi_frac(1, 3)),
        ];
        SingletParams {
            directions: pairs
                .into_iter()
                .map(|(p, s, a)| (EventId::new(p, s), a))
                .collect(),
            parity,
        }
    }
}

/// Probabilities for basis monomials, with exact values where the model
/// yields rationals.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProbabilityAssignment {
    pub values: BTreeMap<Monomial, f64>,
    pub exact: BTreeMap<Monomial, BigRational>,
}

impl ProbabilityAssignment {
    fn insert(&mut self, m: Monomial, value: f64, exact: Option<BigRational>) {
        self.values.insert(m.clone(), value);
        if let Some(q) = exact {
            self.exact.insert(m, q);
        }
    }

    /// An assignment reading coordinates from a point (e.g. a classical mixture).
    pub fn from_point(scenario: &Scenario, point: &Point) -> Result<Self> {
        if point.dim() != scenario.dim() {
            return Err(Error::DimensionMismatch {
                expected: scenario.dim(),
                found: point.dim(),
            });
        }
        let mut out = ProbabilityAssignment::default();
        for (m, q) in point.labelled(scenario) {
            out.insert(m.clone(), rational_to_f64(q), Some(q.clone()));
        }
        Ok(out)
    }

    pub fn get(&self, m: &Monomial) -> Option<f64> {
        self.values.get(m).copied()
    }

    /// Values in basis order.
    pub fn vector(&self, scenario: &Scenario) -> Result<Vec<f64>> {
        scenario
            .monomials()
            .iter()
            .map(|m| self.get(m).ok_or_else(|| Error::MissingProbability(m.to_string())))
            .collect()
    }

    /// Exact values in basis order, if every one is known.
    pub fn exact_vector(&self, scenario: &Scenario) -> Option<Vec<BigRational>> {
        scenario
            .monomials()
            .iter()
            .map(|m| self.exact.get(m).cloned())
            .collect()
    }

    /// Range and monotonicity (`P(joint) <= P(sub-monomial)`) checks.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (m, &v) in &self.values {
            if !(-PROBABILITY_TOLERANCE..=1.0 + PROBABILITY_TOLERANCE).contains(&v) {
                return Err(format!("P({m}) = {v} outside [0, 1]"));
            }
            for e in m.events() {
                if let Some(sub) = m.without(e) {
                    if let Some(&w) = self.values.get(&sub) {
                        if v > w + PROBABILITY_TOLERANCE {
                            return Err(format!("P({m}) = {v} exceeds P({sub}) = {w}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `P(A_i) = 1/2`, cross pairs `1/4`, triples
/// `(1/8)(1 - sin(phi_{A,i} + phi_{B,j} + phi_{C,k}))`.
pub fn ghz_assignment(scenario: &Scenario, params: &GhzParams) -> Result<ProbabilityAssignment> {
    for m in scenario.monomials() {
        let parties: Vec<&str> = m.events().iter().map(|e| e.party.as_str()).collect();
        let distinct = parties.windows(2).all(|w| w[0] != w[1]);
        if !distinct || m.len() > 3 || parties.iter().any(|p| !["A", "B", "C"].contains(p)) {
            return Err(Error::UnsupportedMonomial(m.to_string()));
        }
    }
    let mut out = ProbabilityAssignment::default();
    for m in scenario.monomials() {
        match m.len() {
            1 => {
                params.angle(&m.events()[0])?;
                out.insert(m.clone(), 0.5, Some(half()));
            }
            2 => out.insert(m.clone(), 0.25, Some(frac(1, 4))),
            3 => {
                let sum = m
                    .events()
                    .iter()
                    .try_fold(Angle::ZERO, |acc, e| Ok::<_, Error>(acc.add(&params.angle(e)?)))?;
                let value = (1.0 - sum.radians().sin()) / 8.0;
                let exact = sum.exact_sin().map(|s| (BigRational::one() - s) * frac(1, 8));
                out.insert(m.clone(), value, exact);
            }
            _ => return Err(Error::UnsupportedMonomial(m.to_string())),
        }
    }
    Ok(out)
}

/// `P(X) = 1/2`; a cross pair gets `(1/2) sin^2(dtheta/2)` (parallel) or
/// `(1/2) cos^2(dtheta/2)` (opposite), `dtheta = theta(X) - theta(Y)`.
pub fn singlet_assignment(
    scenario: &Scenario,
    params: &SingletParams,
) -> Result<ProbabilityAssignment> {
    let dir = |e: &EventId| {
        params
            .directions
            .get(e)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("no direction for {e}")))
    };
    for m in scenario.monomials() {
        match m.events() {
            [_] => {}
            [x, y] if x.party != y.party => {}
            _ => return Err(Error::UnsupportedMonomial(m.to_string())),
        }
    }
    let mut out = ProbabilityAssignment::default();
    for m in scenario.monomials() {
        match m.events() {
            [e] => {
                dir(e)?;
                out.insert(m.clone(), 0.5, Some(half()));
            }
            [x, y] if x.party != y.party => {
                let delta = dir(x)?.sub(&dir(y)?);
                let c = delta.radians().cos();
                let exact_cos = delta.exact_cos();
                // sin^2(d/2) = (1 - cos d)/2, cos^2(d/2) = (1 + cos d)/2
                let (value, exact) = match params.parity {
                    Parity::Parallel => (
                        (1.0 - c) / 4.0,
                        exact_cos.map(|c| (BigRational::one() - c) * frac(1, 4)),
                    ),
                    Parity::Opposite => (
                        (1.0 + c) / 4.0,
                        exact_cos.map(|c| (BigRational::one() + c) * frac(1, 4)),
                    ),
                };
                out.insert(m.clone(), value, exact);
            }
            _ => return Err(Error::UnsupportedMonomial(m.to_string())),
        }
    }
    Ok(out)
}

/// A quantum model with fixed parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Ghz(GhzParams),
    Singlet(SingletParams),
}

impl Model {
    pub fn assignment(&self, scenario: &Scenario) -> Result<ProbabilityAssignment> {
        match self {
            Model::Ghz(p) => ghz_assignment(scenario, p),
            Model::Singlet(p) => singlet_assignment(scenario, p),
        }
    }

    /// Named configurations.
    pub fn preset(name: &str) -> Result<Model> {
        Ok(match name {
            "ghz-pi2" => Model::Ghz(GhzParams::uniform(Angle::ZERO, Angle::pi_frac(1, 2))),
            "ghz-zero" => Model::Ghz(GhzParams::uniform(Angle::ZERO, Angle::ZERO)),
            "singlet-symmetric-parallel" => Model::Singlet(SingletParams::symmetric(Parity::Parallel)),
            "singlet-symmetric-opposite" => Model::Singlet(SingletParams::symmetric(Parity::Opposite)),
            "singlet-less-symmetric-parallel" => {
                Model::Singlet(SingletParams::less_symmetric(Parity::Parallel))
            }
            "singlet-less-symmetric-opposite" => {
                Model::Singlet(SingletParams::less_symmetric(Parity::Opposite))
            }
            other => return Err(Error::UnknownPreset(other.to_string())),
        })
    }

    pub const PRESETS: &'static [&'static str] = &[
        "ghz-pi2",
        "ghz-zero",
        "singlet-symmetric-parallel",
        "singlet-symmetric-opposite",
        "singlet-less-symmetric-parallel",
        "singlet-less-symmetric-opposite",
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct ViolationRecord {
    /// 1-based position of the inequality in its file.
    pub inequality_id: usize,
    pub params: Vec<f64>,
    pub bound: i64,
    pub value: f64,
    /// `value - bound`; positive means the quantum value exceeds the bound.
    pub violation: f64,
    pub violated: bool,
}

/// Exact counterpart of [`ViolationRecord`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactEvaluation {
    pub inequality_id: usize,
    pub bound: i64,
    pub value: BigRational,
    pub violation: BigRational,
}

impl ExactEvaluation {
    pub fn violated(&self) -> bool {
        self.violation.is_positive()
    }
}

fn float_value(ineq: &Inequality, x: &[f64]) -> f64 {
    ineq.coeffs
        .iter()
        .zip(x)
        .filter(|(c, _)| **c != 0)
        .map(|(&c, &v)| c as f64 * v)
        .sum()
}

fn record(id: usize, ineq: &Inequality, x: &[f64], params: &[f64]) -> ViolationRecord {
    let value = float_value(ineq, x);
    let violation = value - ineq.bound as f64;
    ViolationRecord {
        inequality_id: id,
        params: params.to_vec(),
        bound: ineq.bound,
        value,
        violation,
        violated: violation > VIOLATION_THRESHOLD,
    }
}

/// Evaluates `coeffs · P` against the bound. Only monomials with a nonzero
/// coefficient need a probability.
pub fn evaluate(
    scenario: &Scenario,
    id: usize,
    ineq: &Inequality,
    assignment: &ProbabilityAssignment,
) -> Result<ViolationRecord> {
    if ineq.dim() != scenario.dim() {
        return Err(Error::DimensionMismatch {
            expected: scenario.dim(),
            found: ineq.dim(),
        });
    }
    let x = scenario
        .monomials()
        .iter()
        .zip(&ineq.coeffs)
        .map(|(m, &c)| match assignment.get(m) {
            Some(v) => Ok(v),
            None if c == 0 => Ok(0.0),
            None => Err(Error::MissingProbability(m.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(record(id, ineq, &x, &[]))
}

/// Exact evaluation; requires exact probabilities for every monomial with a
/// nonzero coefficient.
pub fn evaluate_exact(
    scenario: &Scenario,
    id: usize,
    ineq: &Inequality,
    assignment: &ProbabilityAssignment,
) -> Result<ExactEvaluation> {
    let mut value = BigRational::zero();
    for (m, &c) in scenario.monomials().iter().zip(&ineq.coeffs) {
        if c == 0 {
            continue;
        }
        let p = assignment
            .exact
            .get(m)
            .ok_or_else(|| Error::MissingProbability(format!("{m} (exact)")))?;
        value += p * BigInt::from(c);
    }
    let violation = &value - BigRational::from_integer(ineq.bound.into());
    Ok(ExactEvaluation {
        inequality_id: id,
        bound: ineq.bound,
        value,
        violation,
    })
}

/// Evaluates every inequality (ids are 1-based positions).
pub fn check_all(
    scenario: &Scenario,
    ineqs: &[Inequality],
    assignment: &ProbabilityAssignment,
) -> Result<Vec<ViolationRecord>> {
    let x = assignment.vector(scenario)?;
    Ok(ineqs
        .par_iter()
        .enumerate()
        .map(|(i, q)| record(i + 1, q, &x, &[]))
        .collect())
}

/// Exact census: ids of violated inequalities, computed with integer
/// arithmetic over the common denominator of the exact probabilities.
pub fn violated_exact(
    scenario: &Scenario,
    ineqs: &[Inequality],
    assignment: &ProbabilityAssignment,
) -> Result<Vec<usize>> {
    let exact = assignment
        .exact_vector(scenario)
        .ok_or_else(|| Error::MissingProbability("exact values unavailable for these angles".into()))?;
    let denom = exact.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let d = i128::try_from(&denom).map_err(|_| Error::Overflow("common denominator"))?;
    let nums = exact
        .iter()
        .map(|q| i128::try_from(&(q * &denom).to_integer()).map_err(|_| Error::Overflow("numerator")))
        .collect::<Result<Vec<i128>>>()?;
    Ok(ineqs
        .par_iter()
        .enumerate()
        .filter_map(|(i, q)| {
            let lhs: i128 = q.coeffs.iter().zip(&nums).map(|(&c, &x)| c as i128 * x).sum();
            (lhs > q.bound as i128 * d).then_some(i + 1)
        })
        .collect())
}

/// How grid coordinates become model parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelFamily {
    /// GHZ with `phi_{l,1} = 0`, `phi_{l,2} = x` for all three particles.
    GhzSecondAngle,
    /// Singlet with `theta(A1=B1) = 0`, `theta(A2=B2) = x`,
    /// `theta(A3=B3) = 2pi - x`.
    SingletMirror(Parity),
    /// Singlet with `theta(A1=B1) = 0`, `theta(A2=B2) = x`, `theta(A3=B3) = y`.
    SingletTwoAngle(Parity),
}

impl ModelFamily {
    pub fn arity(&self) -> usize {
        match self {
            ModelFamily::SingletTwoAngle(_) => 2,
            _ => 1,
        }
    }

    pub fn model(&self, params: &[f64]) -> Model {
        let r = Angle::Radians;
        match *self {
            ModelFamily::GhzSecondAngle => Model::Ghz(GhzParams::uniform(Angle::ZERO, r(params[0]))),
            ModelFamily::SingletMirror(parity) => Model::Singlet(SingletParams::mirrored(
                &[
                    Angle::ZERO,
                    r(params[0]),
                    r(2.0 * std::f64::consts::PI - params[0]),
                ],
                parity,
            )),
            ModelFamily::SingletTwoAngle(parity) => Model::Singlet(SingletParams::mirrored(
                &[Angle::ZERO, r(params[0]), r(params[1])],
                parity,
            )),
        }
    }
}

impl FromStr for ModelFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<ModelFamily> {
        Ok(match s {
            "ghz-second-angle" => ModelFamily::GhzSecondAngle,
            "singlet-mirror-parallel" => ModelFamily::SingletMirror(Parity::Parallel),
            "singlet-mirror-opposite" => ModelFamily::SingletMirror(Parity::Opposite),
            "singlet-two-angle-parallel" => ModelFamily::SingletTwoAngle(Parity::Parallel),
            "singlet-two-angle-opposite" => ModelFamily::SingletTwoAngle(Parity::Opposite),
            other => return Err(Error::InvalidParameter(format!("unknown model family `{other}`"))),
        })
    }
}

/// Evenly spaced points from `start` to `end` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, end: f64, points: usize) -> Self {
        Axis { start, end, points }
    }

    pub fn single(x: f64) -> Self {
        Axis::new(x, x, 1)
    }

    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => vec![],
            1 => vec![self.start],
            n => (0..n)
                .map(|i| self.start + (self.end - self.start) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

/// Default resolution of the named sweeps.
pub const DEFAULT_GRID_POINTS: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub family: ModelFamily,
    pub axes: Vec<Axis>,
}

impl GridSpec {
    /// Sweep of `phi_{l,2}` over `[0, pi]`.
    pub fn fig1(points: usize) -> Self {
        GridSpec {
            family: ModelFamily::GhzSecondAngle,
            axes: vec![Axis::new(0.0, std::f64::consts::PI, points)],
        }
    }

    /// Sweep of `theta(A2=B2) = 2pi - theta(A3=B3)` over `[0, pi]`, parallel case.
    pub fn fig2(points: usize) -> Self {
        GridSpec {
            family: ModelFamily::SingletMirror(Parity::Parallel),
            axes: vec![Axis::new(0.0, std::f64::consts::PI, points)],
        }
    }

    pub fn preset(name: &str, points: usize) -> Result<Self> {
        match name {
            "fig1" => Ok(Self::fig1(points)),
            "fig2" => Ok(Self::fig2(points)),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// Grid points in row-major order.
    pub fn points(&self) -> Result<Vec<Vec<f64>>> {
        if self.axes.len() != self.family.arity() {
            return Err(Error::InvalidParameter(format!(
                "model family takes {} grid axes, got {}",
                self.family.arity(),
                self.axes.len()
            )));
        }
        let mut pts: Vec<Vec<f64>> = vec![vec![]];
        for axis in &self.axes {
            let vals = axis.values();
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        Ok(pts)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSummary {
    pub params: Vec<f64>,
    pub violated: usize,
    pub max_violation: f64,
    pub argmax_id: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub arity: usize,
    pub inequalities: usize,
    pub per_point: Vec<PointSummary>,
    /// Populated according to the [`RecordFilter`] passed to [`scan`].
    pub records: Vec<ViolationRecord>,
}

impl ScanResult {
    /// Global maximum of `value - bound`, with its grid point and inequality.
    pub fn max(&self) -> Option<&PointSummary> {
        self.per_point
            .iter()
            .fold(None, |best: Option<&PointSummary>, p| match best {
                Some(b) if b.max_violation >= p.max_violation => Some(b),
                _ => Some(p),
            })
    }

    pub fn total_violated(&self) -> usize {
        self.per_point.iter().map(|p| p.violated).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RecordFilter {
    #[default]
    All,
    ViolatedOnly,
    None,
}

impl FromStr for RecordFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(RecordFilter::All),
            "violated" => Ok(RecordFilter::ViolatedOnly),
            "none" => Ok(RecordFilter::None),
            other => Err(Error::InvalidParameter(format!("unknown record filter `{other}`"))),
        }
    }
}

/// Evaluates every inequality at every grid point. Records come out in
/// `(grid point, inequality id)` order regardless of thread count.
pub fn scan(
    scenario: &Scenario,
    ineqs: &[Inequality],
    grid: &GridSpec,
    filter: RecordFilter,
) -> Result<ScanResult> {
    let points = grid.points()?;
    let per: Vec<Result<(PointSummary, Vec<ViolationRecord>)>> = points
        .par_iter()
        .map(|params| {
            let x = grid.family.model(params).assignment(scenario)?.vector(scenario)?;
            let mut summary = PointSummary {
                params: params.clone(),
                violated: 0,
                max_violation: f64::NEG_INFINITY,
                argmax_id: 0,
            };
            let mut recs = Vec::new();
            for (i, q) in ineqs.iter().enumerate() {
                let r = record(i + 1, q, &x, params);
                if r.violated {
                    summary.violated += 1;
                }
                if r.violation > summary.max_violation {
                    summary.max_violation = r.violation;
                    summary.argmax_id = r.inequality_id;
                }
                if filter.keeps(r.violated) {
                    recs.push(r);
                }
            }
            Ok((summary, recs))
        })
        .collect();
    let mut result = ScanResult {
        arity: grid.family.arity(),
        inequalities: ineqs.len(),
        per_point: Vec::with_capacity(points.len()),
        records: Vec::new(),
    };
    for item in per {
        let (s, r) = item?;
        result.per_point.push(s);
        result.records.extend(r);
    }
    Ok(result)
}

/// Golden-section search for the maximum of `value - bound` of one
/// inequality over a one-parameter family on `[lo, hi]`.
pub fn refine_max(
    scenario: &Scenario,
    ineq: &Inequality,
    family: ModelFamily,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64)> {
    if family.arity() != 1 {
        return Err(Error::InvalidParameter("refinement needs a one-parameter family".into()));
    }
    let f = |x: f64| -> Result<f64> {
        let a = family.model(&[x]).assignment(scenario)?;
        Ok(float_value(ineq, &a.vector(scenario)?) - ineq.bound as f64)
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let x = (a + b) / 2.0;
    Ok((x, f(x)?))
}

fn fmt_f(v: f64) -> String {
    // avoid "-0.000000000000"
    let s = format!("{v:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// CSV with columns `grid_param_1[,grid_param_2],inequality_id,bound,value,violation,violated`.
pub fn write_csv(result: &ScanResult) -> String {
    let mut out = String::new();
    for k in 1..=result.arity {
        out.push_str(&format!("grid_param_{k},"));
    }
    out.push_str("inequality_id,bound,value,violation,violated\n");
    for r in &result.records {
        for p in &r.params {
            out.push_str(&fmt_f(*p));
            out.push(',');
        }
        out.push_str(&record_fields(r));
        out.push('\n');
    }
    out
}

fn record_fields(r: &ViolationRecord) -> String {
    format!(
        "{},{},{},{},{}",
        r.inequality_id,
        r.bound,
        fmt_f(r.value),
        fmt_f(r.violation),
        r.violated as u8
    )
}

impl RecordFilter {
    pub fn keeps(&self, violated: bool) -> bool {
        match self {
            RecordFilter::All => true,
            RecordFilter::ViolatedOnly => violated,
            RecordFilter::None => false,
        }
    }
}

/// Single-assignment report: the scan CSV without grid columns.
pub fn write_check_csv(records: &[ViolationRecord], filter: RecordFilter) -> String {
    let mut out = String::from("inequality_id,bound,value,violation,violated\n");
    for r in records.iter().filter(|r| filter.keeps(r.violated)) {
        out.push_str(&record_fields(r));
        out.push('\n');
    }
    out
}

/// One row per grid point: violated count and the largest `value - bound`.
pub fn write_envelope_csv(result: &ScanResult) -> String {
    let mut out = String::new();
    for k in 1..=result.arity {
        out.push_str(&format!("grid_param_{k},"));
    }
    out.push_str("violated_count,max_violation,argmax_id\n");
    for p in &result.per_point {
        for v in &p.params {
            out.push_str(&fmt_f(*v));
            out.push(',');
        }
        out.push_str(&format!(
            "{},{},{}\n",
            p.violated,
            fmt_f(p.max_violation),
            p.argmax_id
        ));
    }
    out
}

/// Golden-section refinement of a scan's best grid point, for one-parameter
/// grids with at least two points.
#[derive(Clone, Debug, PartialEq)]
pub struct Refinement {
    pub param: f64,
    pub max_violation: f64,
    pub inequality_id: usize,
}

pub fn refine_scan(
    scenario: &Scenario,
    ineqs: &[Inequality],
    grid: &GridSpec,
    result: &ScanResult,
) -> Result<Option<Refinement>> {
    let (1, Some(best)) = (grid.family.arity(), result.max()) else {
        return Ok(None);
    };
    let axis = grid.axes[0];
    if best.argmax_id == 0 || axis.points < 2 {
        return Ok(None);
    }
    let step = (axis.end - axis.start) / (axis.points - 1) as f64;
    let x = best.params[0];
    let (param, max_violation) =
        refine_max(scenario, &ineqs[best.argmax_id - 1], grid.family, x - step, x + step)?;
    Ok(Some(Refinement {
        param,
        max_violation,
        inequality_id: best.argmax_id,
    }))
}

/// JSON summary: grid size, max violation and argmax, per-point counts.
pub fn write_summary(result: &ScanResult, refined: Option<&Refinement>) -> String {
    let counts: Vec<String> = result.per_point.iter().map(|p| p.violated.to_string()).collect();
    let (max, grid, id) = match result.max() {
        Some(p) => (
            fmt_f(p.max_violation),
            p.params.iter().map(|v| fmt_f(*v)).collect::<Vec<_>>().join(", "),
            p.argmax_id,
        ),
        None => ("null".into(), String::new(), 0),
    };
    let mut out = format!(
        "{{\n  \"grid_points\": {},\n  \"inequalities\": {},\n  \"violated_total\": {},\n  \"max_violation\": {},\n  \"argmax\": {{ \"grid\": [{}], \"inequality_id\": {} }},\n",
        result.per_point.len(),
        result.inequalities,
        result.total_violated(),
        max,
        grid,
        id,
    );
    if let Some(r) = refined {
        out.push_str(&format!(
            "  \"refined\": {{ \"grid\": [{}], \"max_violation\": {}, \"inequality_id\": {} }},\n",
            fmt_f(r.param),
            fmt_f(r.max_violation),
            r.inequality_id
        ));
    }
    out.push_str(&format!("  \"violated_counts\": [{}]\n}}\n", counts.join(", ")));
    out
}
