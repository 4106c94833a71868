//! Event permutations and event complementations acting on inequalities.
//!
//! An operation acts on truth assignments by first complementing the events
//! in its mask and then relabelling events along its permutation. On an
//! inequality `I` it produces the `J` with `J(g(v)) = I(v)` for every
//! vertex `v`, so valid inequalities go to valid ones and facets to facets.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{canonicalize, Inequality};
use crate::scenario::{EventId, Monomial, Scenario};

/// A bijection on the events of one scenario, stored as images of event
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventPermutation {
    images: Vec<usize>,
}

impl EventPermutation {
    pub fn identity(n: usize) -> Self {
        EventPermutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter("event map is not a bijection".into()));
            }
        }
        Ok(EventPermutation { images })
    }

    /// Sends each `from` event to its `to` partner; unlisted events are fixed.
    pub fn from_pairs(scenario: &Scenario, pairs: &[(EventId, EventId)]) -> Result<Self> {
        let mut images: Vec<usize> = (0..scenario.num_events()).collect();
        for (from, to) in pairs {
            let idx = |e: &EventId| {
                scenario
                    .event_index(e)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown event {e}")))
            };
            images[idx(from)?] = idx(to)?;
        }
        Self::from_images(images)
    }

    /// Exchanges two events.
    pub fn swap(scenario: &Scenario, a: &EventId, b: &EventId) -> Result<Self> {
        Self::from_pairs(scenario, &[(a.clone(), b.clone()), (b.clone(), a.clone())])
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Image of every basis monomial as a basis index.
    pub fn monomial_map(&self, scenario: &Scenario) -> Result<Vec<usize>> {
        let events = scenario.events();
        scenario
            .monomials()
            .iter()
            .map(|m| {
                let image = Monomial::new(
                    m.events()
                        .iter()
                        .map(|e| events[self.images[scenario.event_index(e).expect("basis event")]].clone()),
                )
                .expect("nonempty");
                scenario
                    .monomial_index(&image)
                    .ok_or_else(|| Error::BasisNotClosed(m.to_string()))
            })
            .collect()
    }
}

/// Rewrites `ineq` for the complement of `event`:
/// `P(M) -> P(M \ event) - P(M)` for every monomial `M` containing it, with
/// `P(empty) = 1` absorbed into the bound.
pub fn complement_event(
    scenario: &Scenario,
    ineq: &Inequality,
    event: &EventId,
) -> Result<Inequality> {
    check_dim(scenario, ineq)?;
    let table = companions(scenario, event)?;
    canonicalize(&complement_with(ineq, &table))
}

/// Coefficients reindexed along the permutation induced on the basis.
pub fn permute_events(
    scenario: &Scenario,
    ineq: &Inequality,
    perm: &EventPermutation,
) -> Result<Inequality> {
    check_dim(scenario, ineq)?;
    let map = perm.monomial_map(scenario)?;
    canonicalize(&permute_with(ineq, &map))
}

fn check_dim(scenario: &Scenario, ineq: &Inequality) -> Result<()> {
    if ineq.dim() != scenario.dim() {
        return Err(Error::DimensionMismatch {
            expected: scenario.dim(),
            found: ineq.dim(),
        });
    }
    Ok(())
}

/// For every monomial containing `event`: `(index, companion)` where the
/// companion is `None` for the single itself.
type Companions = Vec<(usize, Option<usize>)>;

fn companions(scenario: &Scenario, event: &EventId) -> Result<Companions> {
    let mut out = Vec::new();
    for (i, m) in scenario.monomials().iter().enumerate() {
        if !m.contains(event) {
            continue;
        }
        match m.without(event) {
            None => out.push((i, None)),
            Some(rest) => match scenario.monomial_index(&rest) {
                Some(j) => out.push((i, Some(j))),
                None => {
                    return Err(Error::MissingCompanionMonomial {
                        event: event.to_string(),
                        missing: rest.to_string(),
                    })
                }
            },
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter(format!("event {event} not in scenario")));
    }
    Ok(out)
}

fn complement_with(ineq: &Inequality, table: &Companions) -> Inequality {
    let mut coeffs = ineq.coeffs.clone();
    let mut bound = ineq.bound;
    for &(i, comp) in table {
        let c = ineq.coeffs[i];
        if c == 0 {
            continue;
        }
        coeffs[i] -= 2 * c;
        match comp {
            Some(j) => coeffs[j] += c,
            None => bound -= c,
        }
    }
    Inequality { bound, coeffs }
}

fn permute_with(ineq: &Inequality, map: &[usize]) -> Inequality {
    let mut coeffs = vec![0; ineq.coeffs.len()];
    for (i, &c) in ineq.coeffs.iter().enumerate() {
        coeffs[map[i]] = c;
    }
    Inequality {
        bound: ineq.bound,
        coeffs,
    }
}

/// Complement the events in `mask`, then permute.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryOp {
    pub permutation: EventPermutation,
    pub complement_mask: Vec<bool>,
}

impl SymmetryOp {
    pub fn identity(n: usize) -> Self {
        SymmetryOp {
            permutation: EventPermutation::identity(n),
            complement_mask: vec![false; n],
        }
    }

    pub fn complement(n: usize, event: usize) -> Self {
        let mut op = Self::identity(n);
        op.complement_mask[event] = true;
        op
    }

    pub fn permute(perm: EventPermutation) -> Self {
        let n = perm.images.len();
        SymmetryOp {
            permutation: perm,
            complement_mask: vec![false; n],
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryOp) -> SymmetryOp {
        let n = self.complement_mask.len();
        let images = (0..n)
            .map(|e| self.permutation.images[other.permutation.images[e]])
            .collect();
        let mask = (0..n)
            .map(|e| other.complement_mask[e] ^ self.complement_mask[other.permutation.images[e]])
            .collect();
        SymmetryOp {
            permutation: EventPermutation { images },
            complement_mask: mask,
        }
    }

    pub fn inverse(&self) -> SymmetryOp {
        let n = self.complement_mask.len();
        let mut inv = vec![0; n];
        for (e, &img) in self.permutation.images.iter().enumerate() {
            inv[img] = e;
        }
        // g(t)[pi(e)] = t[e] ^ m[e]  =>  g^-1(s)[e] = s[pi(e)] ^ m[e]
        let mask = (0..n).map(|f| self.complement_mask[inv[f]]).collect();
        SymmetryOp {
            permutation: EventPermutation { images: inv },
            complement_mask: mask,
        }
    }

    /// Action on a truth assignment.
    pub fn apply_to_assignment(&self, t: &[bool]) -> Vec<bool> {
        let mut out = vec![false; t.len()];
        for (e, &v) in t.iter().enumerate() {
            out[self.permutation.images[e]] = v ^ self.complement_mask[e];
        }
        out
    }

    /// Short word such as `~A1~B2 (A1 A2)` or `id`.
    pub fn word(&self, scenario: &Scenario) -> String {
        let events = scenario.events();
        let mut parts = Vec::new();
        let comps: String = self
            .complement_mask
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(e, _)| format!("~{}", events[e]))
            .collect();
        if !comps.is_empty() {
            parts.push(comps);
        }
        let mut seen = vec![false; events.len()];
        for start in 0..events.len() {
            if seen[start] || self.permutation.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(events[e].to_string());
                e = self.permutation.images[e];
            }
            parts.push(format!("({})", cycle.join(" ")));
        }
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join(" ")
        }
    }
}

/// A group element with its basis tables precomputed.
#[derive(Clone, Debug)]
struct CompiledOp {
    complements: Vec<Companions>,
    map: Vec<usize>,
}

/// A finite group of symmetry operations on one scenario.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    ops: Vec<SymmetryOp>,
    compiled: Vec<CompiledOp>,
    /// Indices into `ops` of the generating set.
    generators: Vec<usize>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[SymmetryOp] {
        &self.ops
    }

    /// Applies element `k` to an inequality and canonicalizes.
    pub fn apply(&self, k: usize, ineq: &Inequality) -> Inequality {
        let op = &self.compiled[k];
        let mut cur = ineq.clone();
        for table in &op.complements {
            cur = complement_with(&cur, table);
        }
        canonicalize(&permute_with(&cur, &op.map)).expect("group action preserves nonzero inequalities")
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// True when the set is mapped onto itself by the group. Checking the
    /// generators suffices for a finite group. Returns the first
    /// counterexample `(element, inequality)` otherwise.
    pub fn closure_check(&self, ineqs: &[Inequality]) -> std::result::Result<(), (usize, usize)> {
        self.closure_over(&self.generators, ineqs)
    }

    /// Like [`closure_check`](Self::closure_check), but tries every element.
    pub fn closure_check_all(&self, ineqs: &[Inequality]) -> std::result::Result<(), (usize, usize)> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.closure_over(&all, ineqs)
    }

    fn closure_over(
        &self,
        elements: &[usize],
        ineqs: &[Inequality],
    ) -> std::result::Result<(), (usize, usize)> {
        use rayon::prelude::*;
        let set: HashSet<&Inequality> = ineqs.iter().collect();
        let bad = elements.par_iter().find_map_first(|&k| {
            ineqs
                .iter()
                .position(|i| !set.contains(&self.apply(k, i)))
                .map(|i| (k, i))
        });
        match bad {
            None => Ok(()),
            Some(b) => Err(b),
        }
    }
}

/// Within-party setting transpositions, plus adjacent party swaps when the
/// two parties have identical settings. Generators that do not map the basis
/// onto itself are left out.
pub fn default_generators(scenario: &Scenario) -> Vec<EventPermutation> {
    let parties = scenario.parties();
    let mut gens = Vec::new();
    for (party, settings) in &parties {
        for w in settings.windows(2) {
            let a = EventId::new(party.clone(), w[0]);
            let b = EventId::new(party.clone(), w[1]);
            if let Ok(p) = EventPermutation::swap(scenario, &a, &b) {
                if p.monomial_map(scenario).is_ok() {
                    gens.push(p);
                }
            }
        }
    }
    for w in parties.windows(2) {
        let ((pa, sa), (pb, sb)) = (&w[0], &w[1]);
        if sa != sb {
            continue;
        }
        let mut pairs = Vec::new();
        for &s in sa {
            let a = EventId::new(pa.clone(), s);
            let b = EventId::new(pb.clone(), s);
            pairs.push((a.clone(), b.clone()));
            pairs.push((b, a));
        }
        if let Ok(p) = EventPermutation::from_pairs(scenario, &pairs) {
            if p.monomial_map(scenario).is_ok() {
                gens.push(p);
            }
        }
    }
    gens
}

/// Closure of the given permutations, together with all single-event
/// complementations when `complementations` is set.
pub fn generate_group(
    scenario: &Scenario,
    permutations: &[EventPermutation],
    complementations: bool,
) -> Result<SymmetryGroup> {
    let n = scenario.num_events();
    let mut gens: Vec<SymmetryOp> = Vec::new();
    for p in permutations {
        if p.images.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.images.len(),
            });
        }
        p.monomial_map(scenario)?;
        if !p.is_identity() {
            gens.push(SymmetryOp::permute(p.clone()));
        }
    }
    let mut tables: Vec<Companions> = Vec::new();
    if complementations {
        for (e, ev) in scenario.events().iter().enumerate() {
            tables.push(companions(scenario, ev)?);
            gens.push(SymmetryOp::complement(n, e));
        }
    } else {
        for ev in scenario.events() {
            tables.push(companions(scenario, ev).unwrap_or_default());
        }
    }

    let identity = SymmetryOp::identity(n);
    let mut seen: HashSet<SymmetryOp> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let gh = h.compose(&g);
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    let mut ops: Vec<SymmetryOp> = seen.into_iter().collect();
    ops.sort();
    // identity sorts first: images 0..n and an all-false mask are minimal
    let compiled = ops
        .iter()
        .map(|op| {
            Ok(CompiledOp {
                complements: op
                    .complement_mask
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c)
                    .map(|(e, _)| tables[e].clone())
                    .collect(),
                map: op.permutation.monomial_map(scenario)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let generators = gens
        .iter()
        .map(|g| ops.binary_search(g).expect("generator lies in its closure"))
        .collect();
    Ok(SymmetryGroup {
        ops,
        compiled,
        generators,
    })
}

/// The trivial group.
pub fn trivial_group(scenario: &Scenario) -> SymmetryGroup {
    generate_group(scenario, &[], false).expect("identity is always valid")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographic minimum of `coeffs ++ [bound]` among the members.
    pub representative: Inequality,
    /// Members of the input lying in this orbit, sorted, each with the index
    /// of a group element carrying the representative onto it.
    pub members: Vec<(Inequality, usize)>,
    /// Size of the full orbit under the group.
    pub full_size: usize,
    pub stabilizer_size: usize,
}

/// Partitions the inputs into orbits under `group`, ordered by
/// representative.
pub fn orbit_reduce(ineqs: &[Inequality], group: &SymmetryGroup) -> Vec<Orbit> {
    let input: HashSet<&Inequality> = ineqs.iter().collect();
    let mut assigned: HashSet<Inequality> = HashSet::new();
    let mut orbits = Vec::new();
    for ineq in ineqs {
        if assigned.contains(ineq) {
            continue;
        }
        let images: Vec<Inequality> = (0..group.order()).map(|k| group.apply(k, ineq)).collect();
        let rep = images
            .iter()
            .min_by(|a, b| a.coeff_bound_key().cmp(&b.coeff_bound_key()))
            .expect("group is nonempty")
            .clone();
        let rep_images: Vec<Inequality> = (0..group.order()).map(|k| group.apply(k, &rep)).collect();
        let mut words: BTreeMap<Inequality, usize> = BTreeMap::new();
        for (k, img) in rep_images.into_iter().enumerate() {
            words.entry(img).or_insert(k);
        }
        let full_size = words.len();
        let members: Vec<(Inequality, usize)> = words
            .into_iter()
            .filter(|(i, _)| input.contains(i))
            .collect();
        for (m, _) in &members {
            assigned.insert(m.clone());
        }
        orbits.push(Orbit {
            representative: rep,
            members,
            full_size,
            stabilizer_size: group.order() / full_size,
        });
    }
    orbits.sort_by(|a, b| {
        a.representative
            .coeff_bound_key()
            .cmp(&b.representative.coeff_bound_key())
    });
    orbits
}

/// Text report: one block per orbit with the representative in facet-file
/// form; `verbose` adds one line per member with the group word reaching it.
pub fn write_orbit_report(
    scenario: &Scenario,
    group: &SymmetryGroup,
    orbits: &[Orbit],
    verbose: bool,
) -> String {
    let total: usize = orbits.iter().map(|o| o.members.len()).sum();
    let mut out = format!(
        "# scenario: {}\n# basis: {}\n# group order: {}\n# inequalities: {}\n# orbits: {}\n",
        scenario.name(),
        scenario.basis_line(),
        group.order(),
        total,
        orbits.len()
    );
    for (i, o) in orbits.iter().enumerate() {
        out.push_str(&format!(
            "orbit {} size {} stabilizer {}\n{}\n",
            i + 1,
            o.members.len(),
            o.stabilizer_size,
            o.representative
        ));
        if verbose {
            for (m, k) in &o.members {
                out.push_str(&format!("  {}  via {}\n", m, group.ops()[*k].word(scenario)));
            }
        }
    }
    out
}

/// Counts orbits per size, handy for regression fixtures.
pub fn orbit_size_histogram(orbits: &[Orbit]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for o in orbits {
        *h.entry(o.members.len()).or_insert(0) += 1;
    }
    h
}

/// Maps each inequality to the index of its orbit.
pub fn orbit_index(orbits: &[Orbit]) -> HashMap<Inequality, usize> {
    orbits
        .iter()
        .enumerate()
        .flat_map(|(k, o)| o.members.iter().map(move |(m, _)| (m.clone(), k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::presets;

    fn ev(s: &str) -> EventId {
        s.parse().unwrap()
    }

    #[test]
    fn complement_single_bound() {
        let s = presets::ch();
        let i = Inequality::new(vec![1, 0, 0, 0, 0, 0, 0, 0], 1);
        let j = complement_event(&s, &i, &ev("A1")).unwrap();
        assert_eq!(j, Inequality::new(vec![-1, 0, 0, 0, 0, 0, 0, 0], 0));
    }

    #[test]
    fn complement_pair_bound() {
        let s = presets::ch();
        // P(A1B1) <= P(A1)
        let i = Inequality::new(vec![-1, 0, 0, 0, 1, 0, 0, 0], 0);
        let j = complement_event(&s, &i, &ev("B1")).unwrap();
        assert_eq!(j, Inequality::new(vec![0, 0, 0, 0, -1, 0, 0, 0], 0));
    }

    #[test]
    fn missing_companion() {
        let s = presets::ghz_singles_triples();
        let mut c = vec![0; s.dim()];
        c[6] = 1;
        let err = complement_event(&s, &Inequality::new(c, 1), &ev("A1")).unwrap_err();
        assert!(matches!(err, Error::MissingCompanionMonomial { .. }));
        assert!(generate_group(&s, &[], true).is_err());
    }

    #[test]
    fn identity_permutation() {
        let s = presets::ch();
        let i = Inequality::new(vec![-1, 0, 0, -1, 1, 1, -1, 1], 0);
        let id = EventPermutation::identity(4);
        assert_eq!(permute_events(&s, &i, &id).unwrap(), i);
    }

    #[test]
    fn non_closed_permutation_rejected() {
        // swapping A1 with B1 in CH would need the monomial A1B1 -> B1A1 (fine)
        // but A1B2 -> B1B2, which is not in the basis
        let s = presets::ch();
        let p = EventPermutation::swap(&s, &ev("A1"), &ev("B1")).unwrap();
        let i = Inequality::new(vec![1, 0, 0, 0, 0, 0, 0, 0], 1);
        assert!(matches!(permute_events(&s, &i, &p), Err(Error::BasisNotClosed(_))));
    }

    #[test]
    fn group_orders() {
        let ghz = presets::ghz26();
        assert_eq!(generate_group(&ghz, &[], true).unwrap().order(), 64);
        assert_eq!(generate_group(&presets::ch(), &[], true).unwrap().order(), 16);
        let one = crate::scenario::build_scenario("one", vec![ev("A1")], vec![]).unwrap();
        assert_eq!(generate_group(&one, &[], false).unwrap().order(), 1);
        let ch = presets::ch();
        let full = generate_group(&ch, &default_generators(&ch), true).unwrap();
        assert_eq!(full.order(), 128);
        let g = generate_group(&ghz, &default_generators(&ghz), true).unwrap();
        assert_eq!(g.order(), 64 * 8 * 6);
    }

    #[test]
    fn group_axioms_on_generators() {
        let s = presets::two_by_three();
        let g = generate_group(&s, &default_generators(&s), true).unwrap();
        let ops: HashSet<&SymmetryOp> = g.ops().iter().collect();
        let id = SymmetryOp::identity(6);
        assert!(ops.contains(&id));
        for op in g.ops().iter().step_by(97) {
            assert!(ops.contains(&op.inverse()));
            assert_eq!(op.compose(&op.inverse()), id);
            for other in g.ops().iter().step_by(331) {
                assert!(ops.contains(&op.compose(other)));
            }
        }
    }

    #[test]
    fn action_is_compatible_with_composition() {
        let s = presets::ch();
        let g = generate_group(&s, &default_generators(&s), true).unwrap();
        let i = Inequality::new(vec![-1, 0, 0, -1, 1, 1, -1, 1], 0);
        let index: HashMap<&SymmetryOp, usize> = g.ops().iter().enumerate().map(|(k, o)| (o, k)).collect();
        for a in (0..g.order()).step_by(7) {
            for b in (0..g.order()).step_by(11) {
                let ab = index[&g.ops()[a].compose(&g.ops()[b])];
                assert_eq!(g.apply(ab, &i), g.apply(a, &g.apply(b, &i)));
            }
        }
    }

    #[test]
    fn word_format() {
        let s = presets::ch();
        let mut op = SymmetryOp::permute(EventPermutation::swap(&s, &ev("B1"), &ev("B2")).unwrap());
        op.complement_mask[0] = true;
        assert_eq!(op.word(&s), "~A1 (B1 B2)");
        assert_eq!(SymmetryOp::identity(4).word(&s), "id");
    }
}
