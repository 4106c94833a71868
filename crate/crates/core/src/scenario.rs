//! Experiment scenarios: elementary events, the joint-event monomials that
//! make up the coordinate basis, and the 0/1 vertices of the correlation
//! polytope generated from truth assignments.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of elementary events accepted by
/// [`enumerate_vertices`]; the vertex count is `2^n`.
pub const DEFAULT_EVENT_LIMIT: usize = 20;

/// An elementary event such as `A1`: a party label plus a setting index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId {
    pub party: String,
    pub setting: u32,
}

impl EventId {
    pub fn new(party: impl Into<String>, setting: u32) -> Self {
        EventId {
            party: party.into(),
            setting,
        }
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.party, self.setting)
    }
}

impl FromStr for EventId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| format!("event `{s}` has no setting index"))?;
        let (party, setting) = s.split_at(split);
        if party.is_empty() || !party.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(format!("event `{s}` needs an alphabetic party label"));
        }
        let setting: u32 = setting
            .parse()
            .map_err(|_| format!("event `{s}` has a malformed setting index"))?;
        if setting == 0 {
            return Err(format!("event `{s}`: setting indices start at 1"));
        }
        Ok(EventId::new(party, setting))
    }
}

/// A nonempty set of events standing for their conjunction, e.g. `A1B2C1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<EventId>);

impl Monomial {
    /// Sorts and deduplicates; returns `None` for an empty set.
    pub fn new(events: impl IntoIterator<Item = EventId>) -> Option<Self> {
        let set: BTreeSet<EventId> = events.into_iter().collect();
        if set.is_empty() {
            None
        } else {
            Some(Monomial(set.into_iter().collect()))
        }
    }

    pub fn single(event: EventId) -> Self {
        Monomial(vec![event])
    }

    pub fn events(&self) -> &[EventId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, event: &EventId) -> bool {
        self.0.binary_search(event).is_ok()
    }

    /// The monomial with `event` removed; `None` when nothing is left.
    pub fn without(&self, event: &EventId) -> Option<Monomial> {
        Monomial::new(self.0.iter().filter(|e| *e != event).cloned())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = String;

    /// Parses concatenated events such as `A1B2C1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut events = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        while start < bytes.len() {
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_alphabetic() {
                end += 1;
            }
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(format!("cannot parse monomial `{s}`"));
            }
            events.push(s[start..end].parse()?);
            start = end;
        }
        Monomial::new(events).ok_or_else(|| "empty monomial".to_string())
    }
}

/// A 0/1 value for every event of a scenario, indexed like
/// [`Scenario::events`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthAssignment {
    values: Vec<bool>,
}

impl TruthAssignment {
    pub fn new(values: Vec<bool>) -> Self {
        TruthAssignment { values }
    }

    /// Events listed in `true_events` are set, all others are unset.
    pub fn with_true(scenario: &Scenario, true_events: &[EventId]) -> Result<Self> {
        let mut values = vec![false; scenario.num_events()];
        for e in true_events {
            let idx = scenario
                .event_index(e)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown event {e}")))?;
            values[idx] = true;
        }
        Ok(TruthAssignment { values })
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

/// An exact rational point in a scenario's monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub coords: Vec<BigRational>,
}

impl Point {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Point { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point {
            coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Pairs every coordinate with its monomial.
    pub fn labelled<'a>(
        &'a self,
        scenario: &'a Scenario,
    ) -> impl Iterator<Item = (&'a Monomial, &'a BigRational)> + 'a {
        scenario.monomials().iter().zip(self.coords.iter())
    }
}

/// A set of elementary events and the monomials spanning the coordinate
/// space. Singles come first in `(party, setting)` order, followed by the
/// joints in declaration order.
#[derive(Clone, Debug)]
pub struct Scenario {
    name: String,
    events: Vec<EventId>,
    monomials: Vec<Monomial>,
    members: Vec<Vec<usize>>,
    index: HashMap<Monomial, usize>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events && self.monomials == other.monomials
    }
}

impl Eq for Scenario {}

/// Canonicalizes events and joints into a [`Scenario`].
pub fn build_scenario(
    name: impl Into<String>,
    events: Vec<EventId>,
    joints: Vec<Monomial>,
) -> Result<Scenario> {
    if events.is_empty() {
        return Err(Error::NoEvents);
    }
    let mut sorted = events;
    sorted.sort();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateEvent(pair[0].to_string()));
        }
    }
    let mut monomials: Vec<Monomial> = sorted.iter().cloned().map(Monomial::single).collect();
    for joint in joints {
        if let Some(e) = joint.events().iter().find(|e| sorted.binary_search(e).is_err()) {
            return Err(Error::UnknownEventInMonomial {
                monomial: joint.to_string(),
                event: e.to_string(),
            });
        }
        monomials.push(joint);
    }
    let mut index = HashMap::with_capacity(monomials.len());
    for (i, m) in monomials.iter().enumerate() {
        if index.insert(m.clone(), i).is_some() {
            return Err(Error::DuplicateMonomial(m.to_string()));
        }
    }
    let members = monomials
        .iter()
        .map(|m| {
            m.events()
                .iter()
                .map(|e| sorted.binary_search(e).expect("checked above"))
                .collect()
        })
        .collect();
    Ok(Scenario {
        name: name.into(),
        events: sorted,
        monomials,
        members,
        index,
    })
}

impl Scenario {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn events(&self) -> &[EventId] {
        &self.events
    }

    pub fn num_events(&self) -> usize {
        self.events.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Basis dimension `n + k`.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn event_index(&self, event: &EventId) -> Option<usize> {
        self.events.binary_search(event).ok()
    }

    pub fn monomial_index(&self, monomial: &Monomial) -> Option<usize> {
        self.index.get(monomial).copied()
    }

    /// Event indices making up the monomial at basis position `i`.
    pub fn members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    /// Parties in label order with their settings.
    pub fn parties(&self) -> Vec<(String, Vec<u32>)> {
        let mut out: Vec<(String, Vec<u32>)> = Vec::new();
        for e in &self.events {
            match out.last_mut() {
                Some((p, settings)) if *p == e.party => settings.push(e.setting),
                _ => out.push((e.party.clone(), vec![e.setting])),
            }
        }
        out
    }

    /// Space-separated basis labels, e.g. `A1 A2 B1 B2 A1B1 ...`.
    pub fn basis_line(&self) -> String {
        self.monomials
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Serializes in the line-oriented scenario file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("# scenario: {}\n", self.name);
        let events: Vec<String> = self.events.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("events: {}\n", events.join(" ")));
        for m in &self.monomials[self.events.len()..] {
            let parts: Vec<String> = m.events().iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("joint: {}\n", parts.join(" ")));
        }
        out
    }

    /// Parses the scenario file format: an `events:` line, any number of
    /// `joint:` lines, `#` comments.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Scenario> {
        let mut events: Option<Vec<EventId>> = None;
        let mut joints = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno + 1, "expected `events:` or `joint:`"))?;
            let tokens = rest
                .split_whitespace()
                .map(|t| t.parse::<EventId>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|msg| Error::parse(lineno + 1, msg))?;
            match key.trim() {
                "events" => {
                    if events.is_some() {
                        return Err(Error::parse(lineno + 1, "second `events:` line"));
                    }
                    events = Some(tokens);
                }
                "joint" => {
                    if tokens.len() < 2 {
                        return Err(Error::parse(lineno + 1, "a joint needs at least two events"));
                    }
                    let n = tokens.len();
                    let m = Monomial::new(tokens).expect("nonempty");
                    if m.len() != n {
                        return Err(Error::parse(lineno + 1, "repeated event in joint"));
                    }
                    joints.push(m);
                }
                other => {
                    return Err(Error::parse(lineno + 1, format!("unknown key `{other}`")));
                }
            }
        }
        let events = events.ok_or_else(|| Error::parse(0, "missing `events:` line"))?;
        build_scenario(name, events, joints)
    }
}

/// Coordinates of the vertex belonging to one truth assignment: singles copy
/// the truth values, joints take the product of their members.
pub fn vertex_from_assignment(scenario: &Scenario, assignment: &TruthAssignment) -> Point {
    let t = assignment.values();
    assert_eq!(t.len(), scenario.num_events(), "assignment must be total");
    let coords = (0..scenario.dim())
        .map(|i| {
            if scenario.members(i).iter().all(|&e| t[e]) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    Point { coords }
}

/// 0/1 rows of the vertices as plain bytes, in lexicographic assignment
/// order (first event most significant).
pub fn vertex_rows(scenario: &Scenario, limit: usize) -> Result<Vec<Vec<u8>>> {
    let n = scenario.num_events();
    if n > limit {
        return Err(Error::ScenarioTooLarge { events: n, limit });
    }
    let rows: Vec<Vec<u8>> = (0..1usize << n)
        .map(|code| {
            (0..scenario.dim())
                .map(|i| {
                    scenario
                        .members(i)
                        .iter()
                        .all(|&e| code >> (n - 1 - e) & 1 == 1) as u8
                })
                .collect()
        })
        .collect();
    debug_assert!(rows.windows(2).all(|w| w[0] < w[1]), "vertices must be distinct");
    Ok(rows)
}

/// Vertex file: header comments, then one 0/1 row per vertex.
pub fn write_vertices(scenario: &Scenario, rows: &[Vec<u8>]) -> String {
    let mut out = format!(
        "# scenario: {}\n# basis: {}\n# count: {}\n",
        scenario.name(),
        scenario.basis_line(),
        rows.len()
    );
    for row in rows {
        let cells: Vec<&str> = row.iter().map(|&b| if b == 1 { "1" } else { "0" }).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses whitespace-separated rational rows (`1`, `-2`, `3/4`), skipping
/// blank lines and `#` comments. Serves vertex files and point files alike.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut points: Vec<Point> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigRational>()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad rational `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = points.first() {
            if first.dim() != coords.len() {
                return Err(Error::parse(
                    lineno + 1,
                    format!("expected {} values, found {}", first.dim(), coords.len()),
                ));
            }
        }
        points.push(Point::new(coords));
    }
    Ok(points)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All `2^n` vertices of the correlation polytope, in lexicographic order of
/// the truth assignments.
pub fn enumerate_vertices(scenario: &Scenario) -> Result<Vec<Point>> {
    enumerate_vertices_with_limit(scenario, DEFAULT_EVENT_LIMIT)
}

pub fn enumerate_vertices_with_limit(scenario: &Scenario, limit: usize) -> Result<Vec<Point>> {
    Ok(vertex_rows(scenario, limit)?
        .into_iter()
        .map(|row| Point::from_integers(&row.iter().map(|&b| b as i64).collect::<Vec<_>>()))
        .collect())
}

/// Built-in scenarios.
pub mod presets {
    use super::*;

    pub const NAMES: &[&str] = &["ch", "ghz26", "two-by-three", "bell-wigner", "ghz-singles-triples"];

    fn ev(s: &str) -> EventId {
        s.parse().expect("preset event")
    }

    fn joints(list: &[&str]) -> Vec<Monomial> {
        list.iter().map(|s| s.parse().expect("preset monomial")).collect()
    }

    fn events(list: &[&str]) -> Vec<EventId> {
        list.iter().map(|s| ev(s)).collect()
    }

    const GHZ_PAIRS: &[&str] = &[
        "A1B1", "A1C1", "A1B2", "A1C2", "A2B1", "A2C1", "A2B2", "A2C2", "B1C1", "B1C2", "B2C1",
        "B2C2",
    ];
    const GHZ_TRIPLES: &[&str] = &[
        "A1B1C1", "A1B1C2", "A1B2C1", "A1B2C2", "A2B1C1", "A2B1C2", "A2B2C1", "A2B2C2",
    ];
    const GHZ_EVENTS: &[&str] = &["A1", "A2", "B1", "B2", "C1", "C2"];

    /// Two parties, two settings each, all four cross pairs.
    pub fn ch() -> Scenario {
        build_scenario(
            "ch",
            events(&["A1", "A2", "B1", "B2"]),
            joints(&["A1B1", "A1B2", "A2B1", "A2B2"]),
        )
        .expect("preset")
    }

    /// Three parties, two settings each, all cross pairs and triples (26 monomials).
    pub fn ghz26() -> Scenario {
        let mut j = joints(GHZ_PAIRS);
        j.extend(joints(GHZ_TRIPLES));
        build_scenario("ghz26", events(GHZ_EVENTS), j).expect("preset")
    }

    /// GHZ events with the eight triples but no pairs.
    pub fn ghz_singles_triples() -> Scenario {
        build_scenario("ghz-singles-triples", events(GHZ_EVENTS), joints(GHZ_TRIPLES))
            .expect("preset")
    }

    /// Two parties, three settings each, all nine cross pairs (15 monomials).
    pub fn two_by_three() -> Scenario {
        build_scenario(
            "two-by-three",
            events(&["A1", "A2", "A3", "B1", "B2", "B3"]),
            joints(&[
                "A1B1", "A1B2", "A1B3", "A2B1", "A2B2", "A2B3", "A3B1", "A3B2", "A3B3",
            ]),
        )
        .expect("preset")
    }

    /// Three events of one party with their pairwise joints.
    pub fn bell_wigner() -> Scenario {
        build_scenario(
            "bell-wigner",
            events(&["A1", "A2", "A3"]),
            joints(&["A1A2", "A1A3", "A2A3"]),
        )
        .expect("preset")
    }

    pub fn by_name(name: &str) -> Result<Scenario> {
        match name {
            "ch" => Ok(ch()),
            "ghz26" => Ok(ghz26()),
            "two-by-three" => Ok(two_by_three()),
            "bell-wigner" => Ok(bell_wigner()),
            "ghz-singles-triples" => Ok(ghz_singles_triples()),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}
