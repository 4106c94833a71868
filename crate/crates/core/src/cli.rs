//! Command-line front end. `main.rs` only forwards to [`main_with_args`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::Error;
use crate::geometry::{
    facet_enumeration_01, facet_enumeration_with, membership, parse_inequalities,
    verify_h_representation, write_inequalities, DdOptions, HRepresentation, Inequality,
    InsertionOrder, MembershipCertificate, DEFAULT_RAY_CAP,
};
use crate::quantum::{
    self, evaluate_exact, refine_scan, scan, write_csv, write_envelope_csv, write_summary, Angle,
    Axis, GhzParams, GridSpec, Model, ModelFamily, Parity, ProbabilityAssignment, RecordFilter,
    SingletParams, DEFAULT_GRID_POINTS,
};
use crate::scenario::{
    enumerate_vertices, parse_points, presets, vertex_rows, write_vertices, EventId, Point, Scenario,
    DEFAULT_EVENT_LIMIT,
};
use crate::symmetry::{
    default_generators, generate_group, orbit_reduce, trivial_group, write_orbit_report,
    SymmetryGroup,
};

/// Facet enumeration above this many monomials needs `--slow`.
pub const SLOW_DIM_THRESHOLD: usize = 20;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "corrpoly", version, about = "Correlation polytopes, their facets and quantum violations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Built-in scenario: ch, ghz26, two-by-three, bell-wigner, ghz-singles-triples.
    #[arg(long, global = true, conflicts_with = "scenario")]
    pub preset: Option<String>,
    /// Scenario file (`events:` and `joint:` lines).
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Allow long facet enumerations (e.g. ghz26).
    #[arg(long, global = true)]
    pub slow: bool,
    /// Abort facet enumeration once this many intermediate rays are alive
    #[arg(long, global = true, default_value_t = DEFAULT_RAY_CAP)]
    pub ray_cap: usize,
    /// Progress and timing on stderr
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Lex,
    MaxCutoff,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum GroupArg {
    /// Setting and party permutations plus complementations.
    Full,
    Complement,
    Permutation,
    Trivial,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RecordsArg {
    All,
    Violated,
    None,
}

impl From<RecordsArg> for RecordFilter {
    fn from(r: RecordsArg) -> Self {
        match r {
            RecordsArg::All => RecordFilter::All,
            RecordsArg::Violated => RecordFilter::ViolatedOnly,
            RecordsArg::None => RecordFilter::None,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ParityArg {
    Parallel,
    Opposite,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Parallel => Parity::Parallel,
            ParityArg::Opposite => Parity::Opposite,
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Named model: ghz-pi2, ghz-zero, singlet-symmetric-parallel, ...
    #[arg(long)]
    pub model: Option<String>,
    /// GHZ angles `PHI1,PHI2` applied to every particle (e.g. `0,pi/2`).
    #[arg(long)]
    pub ghz: Option<String>,
    /// Singlet directions: `A1=0,B1=-pi/4,...` or mirrored `0,2pi/3,4pi/3`.
    #[arg(long)]
    pub singlet: Option<String>,
    #[arg(long, value_enum, default_value = "parallel")]
    pub parity: ParityArg,
    /// Classical point file instead of a quantum model.
    #[arg(long)]
    pub point: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the 0/1 vertex list.
    Vertices,
    /// Enumerate facets (from the scenario, or from a vertex file).
    Facets {
        #[arg(long)]
        vertices: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "lex")]
        order: OrderArg,
        /// Re-verify every facet (validity, facet dimension, duplicates).
        #[arg(long)]
        verify: bool,
    },
    /// Reduce an inequality set modulo symmetries.
    Orbits {
        /// Inequality file; enumerated from the scenario when omitted
        #[arg(long)]
        facets: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "full")]
        group: GroupArg,
    },
    /// Evaluate inequalities under one probability assignment.
    Check {
        /// Inequality file; enumerated from the scenario when omitted
        #[arg(long)]
        facets: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        /// Exact rational evaluation (angles must have rational sines).
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value = "all")]
        records: RecordsArg,
    },
    /// Evaluate inequalities over a parameter grid.
    Scan {
        /// Inequality file; enumerated from the scenario when omitted
        #[arg(long)]
        facets: Option<PathBuf>,
        /// Named sweep: fig1 (GHZ) or fig2 (singlet, parallel).
        #[arg(long, conflicts_with = "family")]
        grid: Option<String>,
        /// ghz-second-angle, singlet-mirror-{parallel,opposite},
        /// singlet-two-angle-{parallel,opposite}.
        #[arg(long)]
        family: Option<String>,
        /// `START:END:POINTS`, once per grid dimension; angles accept `pi`.
        #[arg(long)]
        axis: Vec<String>,
        /// Points per axis for --grid
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        points: usize,
        #[arg(long, value_enum, default_value = "all")]
        records: RecordsArg,
        /// Write the summary here instead of stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Per-point violated count and maximum, as CSV.
        #[arg(long)]
        envelope: Option<PathBuf>,
    },
    /// Decide membership of points in the polytope, with certificates.
    Membership {
        #[arg(long)]
        point: PathBuf,
    },
}

/// Validated invocation: the scenario is resolved and every input path exists.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub scenario: Option<Scenario>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub slow: bool,
    pub ray_cap: usize,
    pub verbose: bool,
}

fn require_file(p: &Path) -> Result<(), CliError> {
    if p.is_file() {
        Ok(())
    } else {
        Err(usage(format!("no such file: {}", p.display())))
    }
}

fn read(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::Compute(Error::Io(e)))
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, CliError> {
        let g = cli.global;
        let mut inputs: Vec<&PathBuf> = g.scenario.iter().collect();
        match &cli.command {
            Command::Vertices => {}
            Command::Facets { vertices, .. } => inputs.extend(vertices),
            Command::Orbits { facets, .. } | Command::Scan { facets, .. } => inputs.extend(facets),
            Command::Check { facets, model, .. } => {
                inputs.extend(facets);
                inputs.extend(&model.point);
            }
            Command::Membership { point } => inputs.push(point),
        }
        for p in inputs {
            require_file(p)?;
        }
        if g.threads == Some(0) {
            return Err(usage("--threads must be at least 1"));
        }
        if g.ray_cap == 0 {
            return Err(usage("--ray-cap must be at least 1"));
        }

        let mut scenario = match (&g.preset, &g.scenario) {
            (Some(name), _) => Some(presets::by_name(name).map_err(|e| usage(e.to_string()))?),
            (None, Some(path)) => {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "scenario".into());
                Some(Scenario::parse(name, &read(path)?).map_err(|e| usage(e.to_string()))?)
            }
            (None, None) => None,
        };
        // a facet file header naming a preset is enough
        if scenario.is_none() {
            let facets = match &cli.command {
                Command::Orbits { facets, .. }
                | Command::Check { facets, .. }
                | Command::Scan { facets, .. } => facets.as_ref(),
                _ => None,
            };
            if let Some(f) = facets {
                let parsed = parse_inequalities(&read(f)?)?;
                if let Some(name) = parsed.scenario_name {
                    scenario = presets::by_name(&name).ok();
                }
            }
        }
        let needs_scenario = !matches!(cli.command, Command::Facets { vertices: Some(_), .. });
        if needs_scenario && scenario.is_none() {
            return Err(usage("a scenario is required: pass --preset or --scenario"));
        }
        Ok(RunConfig {
            command: cli.command,
            scenario,
            out: g.out,
            threads: g.threads,
            slow: g.slow,
            ray_cap: g.ray_cap,
            verbose: g.verbose,
        })
    }

    fn scenario(&self) -> &Scenario {
        self.scenario.as_ref().expect("validated")
    }

    fn emit(&self, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => fs::write(p, text).map_err(Error::Io)?,
            None => stdout.write_all(text.as_bytes()).map_err(Error::Io)?,
        }
        Ok(())
    }

    fn dd_options(&self, order: InsertionOrder) -> DdOptions {
        DdOptions {
            order,
            ray_cap: self.ray_cap,
            cross_check: false,
        }
    }

    fn compute_facets(&self, order: InsertionOrder) -> Result<HRepresentation, CliError> {
        let s = self.scenario();
        if s.dim() > SLOW_DIM_THRESHOLD && !self.slow {
            return Err(usage(format!(
                "facet enumeration for `{}` ({} dimensions) is slow; pass --slow",
                s.name(),
                s.dim()
            )));
        }
        let rows = vertex_rows(s, DEFAULT_EVENT_LIMIT)?;
        Ok(facet_enumeration_01(&rows, &self.dd_options(order))?.0)
    }

    /// Inequalities from `--facets`, or enumerated on the spot.
    fn load_facets(&self, path: &Option<PathBuf>) -> Result<Vec<Inequality>, CliError> {
        match path {
            Some(p) => {
                let file = parse_inequalities(&read(p)?)?;
                file.check_basis(self.scenario())?;
                Ok(file.inequalities)
            }
            None => Ok(self.compute_facets(InsertionOrder::Lex)?.facets),
        }
    }
}

/// Runs a validated configuration. Summaries go to `stderr`, the main
/// artifact to `--out` or `stdout`.
pub fn execute(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let Some(n) = cfg.threads else {
        return dispatch(cfg, stdout, stderr);
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Compute(Error::ResourceExhausted(e.to_string())))?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let result = pool.install(|| dispatch(cfg, &mut out, &mut err));
    stdout.write_all(&out).map_err(Error::Io)?;
    stderr.write_all(&err).map_err(Error::Io)?;
    result
}

fn info(stderr: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stderr.write_all(text.as_bytes()).map_err(|e| CliError::Compute(Error::Io(e)))
}

fn dispatch(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.command {
        Command::Vertices => {
            let s = cfg.scenario();
            let rows = vertex_rows(s, DEFAULT_EVENT_LIMIT)?;
            cfg.emit(stdout, &write_vertices(s, &rows))?;
            info(stderr, &format!("vertices: {}\n", rows.len()))
        }
        Command::Facets { vertices, order, verify } => {
            let order = match order {
                OrderArg::Lex => InsertionOrder::Lex,
                OrderArg::MaxCutoff => InsertionOrder::MaxCutoff,
            };
            let (h, points) = match vertices {
                Some(p) => {
                    let pts = parse_points(&read(p)?)?;
                    if let Some(s) = &cfg.scenario {
                        if let Some(bad) = pts.iter().find(|v| v.dim() != s.dim()) {
                            return Err(Error::DimensionMismatch {
                                expected: s.dim(),
                                found: bad.dim(),
                            }
                            .into());
                        }
                    }
                    let (h, _) = facet_enumeration_with(&pts, &cfg.dd_options(order))?;
                    (h, pts)
                }
                None => {
                    let h = cfg.compute_facets(order)?;
                    let pts = if *verify { enumerate_vertices(cfg.scenario())? } else { vec![] };
                    (h, pts)
                }
            };
            let mut text = match &cfg.scenario {
                Some(s) => write_inequalities(s, &h.facets),
                None => {
                    let mut t = format!("# count: {}\n", h.facets.len());
                    for f in &h.facets {
                        t.push_str(&format!("{f}\n"));
                    }
                    t
                }
            };
            if !h.equalities.is_empty() {
                let eqs: String = h.equalities.iter().map(|e| format!("# equality: {e}\n")).collect();
                let at = header_end(&text);
                text.insert_str(at, &eqs);
            }
            cfg.emit(stdout, &text)?;
            info(stderr, &format!("facets: {}\n", h.facets.len()))?;
            if !h.equalities.is_empty() {
                info(stderr, &format!("equalities: {}\n", h.equalities.len()))?;
            }
            if *verify {
                let report = verify_h_representation(&points, &h.facets)?;
                if !report.passed() {
                    return Err(Error::InvalidParameter(format!(
                        "verification failed: {:?}",
                        report.failures
                    ))
                    .into());
                }
                info(stderr, &format!("verified: {} facets\n", report.checked))?;
            }
            Ok(())
        }
        Command::Orbits { facets, group } => {
            let s = cfg.scenario();
            let ineqs = cfg.load_facets(facets)?;
            let g = build_group(s, *group)?;
            let orbits = orbit_reduce(&ineqs, &g);
            cfg.emit(stdout, &write_orbit_report(s, &g, &orbits, cfg.verbose))?;
            info(
                stderr,
                &format!("orbits: {} (group order {})\n", orbits.len(), g.order()),
            )?;
            match g.closure_check(&ineqs) {
                Ok(()) => info(stderr, "closure: pass\n"),
                Err((k, i)) => info(
                    stderr,
                    &format!(
                        "closure: fail ({} maps inequality {} outside the set)\n",
                        g.ops()[k].word(s),
                        i + 1
                    ),
                ),
            }
        }
        Command::Check {
            facets,
            model,
            exact,
            records,
        } => {
            let s = cfg.scenario();
            let ineqs = cfg.load_facets(facets)?;
            let assignment = resolve_assignment(s, model)?;
            let filter = RecordFilter::from(*records);
            let (text, violated) = if *exact {
                check_exact_csv(s, &ineqs, &assignment, filter)?
            } else {
                let recs = quantum::check_all(s, &ineqs, &assignment)?;
                let violated = recs.iter().filter(|r| r.violated).count();
                (quantum::write_check_csv(&recs, filter), violated)
            };
            cfg.emit(stdout, &text)?;
            info(stderr, &format!("violated: {} / {}\n", violated, ineqs.len()))
        }
        Command::Scan {
            facets,
            grid,
            family,
            axis,
            points,
            records,
            summary,
            envelope,
        } => {
            let s = cfg.scenario();
            let ineqs = cfg.load_facets(facets)?;
            let spec = grid_spec(grid, family, axis, *points)?;
            let result = scan(s, &ineqs, &spec, RecordFilter::from(*records))?;
            cfg.emit(stdout, &write_csv(&result))?;
            let refined = refine_scan(s, &ineqs, &spec, &result)?;
            let text = write_summary(&result, refined.as_ref());
            if let Some(p) = envelope {
                fs::write(p, write_envelope_csv(&result)).map_err(Error::Io)?;
            }
            match summary {
                Some(p) => fs::write(p, &text).map_err(Error::Io)?,
                None => info(stderr, &text)?,
            }
            Ok(())
        }
        Command::Membership { point } => {
            let s = cfg.scenario();
            let pts = parse_points(&read(point)?)?;
            let verts = enumerate_vertices(s)?;
            let facets = if s.dim() <= SLOW_DIM_THRESHOLD {
                Some(cfg.compute_facets(InsertionOrder::Lex)?)
            } else {
                None
            };
            let mut text = format!("# scenario: {}\n# basis: {}\n", s.name(), s.basis_line());
            let mut inside = 0;
            for (i, p) in pts.iter().enumerate() {
                let cert = membership(p, &verts)?;
                if !cert.verify(p, &verts) {
                    return Err(Error::InvalidParameter(format!("certificate for point {} failed to verify", i + 1)).into());
                }
                text.push_str(&format!("point {}: {}\n", i + 1, p));
                match &cert {
                    MembershipCertificate::Inside { weights } => {
                        inside += 1;
                        text.push_str("status: inside\nweights:");
                        for w in weights {
                            text.push_str(&format!(" {w}"));
                        }
                        text.push('\n');
                    }
                    MembershipCertificate::Outside { separator } => {
                        text.push_str(&format!(
                            "status: outside\nseparator: {}\nseparator_text: {}\nseparator_value: {}\n",
                            separator,
                            separator.pretty(s),
                            separator.lhs(&p.coords)
                        ));
                        if let Some(h) = &facets {
                            if let Some(f) = most_violated(&h.facets, p) {
                                text.push_str(&format!(
                                    "violated_facet: {}\nviolated_facet_text: {}\nviolated_facet_value: {}\n",
                                    f,
                                    f.pretty(s),
                                    f.lhs(&p.coords)
                                ));
                            }
                        }
                    }
                }
            }
            cfg.emit(stdout, &text)?;
            info(stderr, &format!("inside: {} / {}\n", inside, pts.len()))
        }
    }
}

/// The facet with the largest `lhs - bound` at `p`, if any is violated.
fn most_violated<'a>(facets: &'a [Inequality], p: &Point) -> Option<&'a Inequality> {
    facets
        .iter()
        .map(|f| (f, -f.slack(p)))
        .filter(|(_, v)| v.is_positive())
        .fold(None, |best: Option<(&Inequality, BigRational)>, (f, v)| match best {
            Some((_, ref bv)) if *bv >= v => best,
            _ => Some((f, v)),
        })
        .map(|(f, _)| f)
}

fn header_end(text: &str) -> usize {
    let mut at = 0;
    for line in text.split_inclusive('\n') {
        if !line.starts_with('#') {
            break;
        }
        at += line.len();
    }
    at
}

fn build_group(s: &Scenario, which: GroupArg) -> Result<SymmetryGroup, CliError> {
    Ok(match which {
        GroupArg::Trivial => trivial_group(s),
        GroupArg::Full => generate_group(s, &default_generators(s), true)?,
        GroupArg::Complement => generate_group(s, &[], true)?,
        GroupArg::Permutation => generate_group(s, &default_generators(s), false)?,
    })
}

fn parse_angle(s: &str) -> Result<Angle, CliError> {
    s.parse::<Angle>().map_err(|e| usage(e.to_string()))
}

fn resolve_assignment(s: &Scenario, m: &ModelArgs) -> Result<ProbabilityAssignment, CliError> {
    let given = [m.model.is_some(), m.ghz.is_some(), m.singlet.is_some(), m.point.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(usage("give exactly one of --model, --ghz, --singlet, --point"));
    }
    if let Some(p) = &m.point {
        let pts = parse_points(&read(p)?)?;
        let [pt] = &pts[..] else {
            return Err(usage("the point file must hold exactly one point"));
        };
        return Ok(ProbabilityAssignment::from_point(s, pt)?);
    }
    let model = if let Some(name) = &m.model {
        Model::preset(name).map_err(|e| usage(e.to_string()))?
    } else if let Some(spec) = &m.ghz {
        let parts: Vec<&str> = spec.split(',').collect();
        let [a, b] = parts[..] else {
            return Err(usage("--ghz takes PHI1,PHI2"));
        };
        Model::Ghz(GhzParams::uniform(parse_angle(a)?, parse_angle(b)?))
    } else {
        let spec = m.singlet.as_deref().expect("counted");
        let parity = Parity::from(m.parity);
        if spec.contains('=') {
            let mut directions = std::collections::BTreeMap::new();
            for item in spec.split(',') {
                let (e, a) = item
                    .split_once('=')
                    .ok_or_else(|| usage(format!("bad direction `{item}`")))?;
                let e: EventId = e.trim().parse().map_err(|m: String| usage(m))?;
                directions.insert(e, parse_angle(a)?);
            }
            Model::Singlet(SingletParams { directions, parity })
        } else {
            let angles = spec.split(',').map(parse_angle).collect::<Result<Vec<_>, _>>()?;
            Model::Singlet(SingletParams::mirrored(&angles, parity))
        }
    };
    Ok(model.assignment(s)?)
}

fn check_exact_csv(
    s: &Scenario,
    ineqs: &[Inequality],
    a: &ProbabilityAssignment,
    filter: RecordFilter,
) -> Result<(String, usize), CliError> {
    let mut out = String::from("inequality_id,bound,value,violation,violated\n");
    let mut violated = 0;
    for (i, q) in ineqs.iter().enumerate() {
        let e = evaluate_exact(s, i + 1, q, a)?;
        let v = e.violated();
        violated += v as usize;
        if filter.keeps(v) {
            out.push_str(&format!("{},{},{},{},{}\n", e.inequality_id, e.bound, e.value, e.violation, v as u8));
        }
    }
    Ok((out, violated))
}

fn parse_axis(text: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(usage(format!("axis `{text}` is not START:END:POINTS")));
    };
    let n: usize = n.parse().map_err(|_| usage(format!("bad point count in `{text}`")))?;
    if n == 0 {
        return Err(usage("an axis needs at least one point"));
    }
    Ok(Axis::new(parse_angle(a)?.radians(), parse_angle(b)?.radians(), n))
}

fn grid_spec(
    grid: &Option<String>,
    family: &Option<String>,
    axes: &[String],
    points: usize,
) -> Result<GridSpec, CliError> {
    match (grid, family) {
        (Some(name), _) => {
            if points == 0 {
                return Err(usage("--points must be at least 1"));
            }
            let mut spec = GridSpec::preset(name, points).map_err(|e| usage(e.to_string()))?;
            if !axes.is_empty() {
                spec.axes = axes.iter().map(|a| parse_axis(a)).collect::<Result<_, _>>()?;
            }
            Ok(spec)
        }
        (None, Some(f)) => {
            let family: ModelFamily = f.parse().map_err(|e: Error| usage(e.to_string()))?;
            let axes = axes.iter().map(|a| parse_axis(a)).collect::<Result<Vec<_>, _>>()?;
            if axes.len() != family.arity() {
                return Err(usage(format!(
                    "family `{f}` takes {} --axis values",
                    family.arity()
                )));
            }
            Ok(GridSpec { family, axes })
        }
        (None, None) => Err(usage("give --grid or --family")),
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| execute(&cfg, stdout, stderr));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
