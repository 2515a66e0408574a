//! Command-line front end. Every run prints one JSON report to stdout.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bernstein::Geometry;
use crate::complex::{self, mesh, ComplexSpec};
use crate::decomposition::{decompose3, decompose_nd, parse_int_list, LatticeDecomposition, Smoothness3, SmoothnessN};
use crate::elements::dimension::{enumerated_counts, hdiv_counts, scalar_counts};
use crate::elements::{build_table, verify_unisolvence, ElementSpec, Frames, NormalRule};
use crate::error::{Error, Result};
use crate::stability;

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug, Serialize)]
#[command(name = "fe-complex", version, about = "Smooth finite element spaces and complexes on tetrahedra, checked in exact arithmetic")]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Simplicial lattice tools.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// DoF tables and dimension counts.
    #[command(subcommand)]
    Element(ElementCommand),
    /// Exact verification runs.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Reference tables.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Subcommand, Debug, Serialize)]
pub enum LatticeCommand {
    /// Direct decomposition of T^n_k into the pieces S_l(f).
    Decompose(DecomposeArgs),
}

#[derive(Subcommand, Debug, Serialize)]
pub enum ElementCommand {
    /// The ordered DoF table.
    Dofs(ElementArgs),
    /// DoF counts per sub-simplex, closed form next to enumeration.
    Dim(DimArgs),
}

#[derive(Subcommand, Debug, Serialize)]
pub enum VerifyCommand {
    /// Exact determinant of the DoF matrix.
    Unisolvence(UnisolvenceArgs),
    /// Rank of div on bubbles, on a mesh, or over the reference table.
    DivStability(DivStabilityArgs),
    /// Exactness of the global complex on a mesh.
    Complex(ComplexArgs),
    /// Commuting diagram of the canonical interpolants on a mesh.
    Commute(CommuteArgs),
    /// C^m continuity of the n-dimensional element across a shared facet.
    Trace(TraceArgs),
}

#[derive(Subcommand, Debug, Serialize)]
pub enum ReportCommand {
    /// The five reference div-stability rows.
    Table1(Table1Args),
    /// Alternating sums of the per-entity counts along the decay chain.
    Table2(Table2Args),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Grad,
    Curl,
    Div,
    L2,
    DivPair,
    CurlPair,
    GradMod,
    Nd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Axes,
    Orthogonal,
}

#[derive(Args, Debug, Serialize)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub k: u32,
    /// r_0, ..., r_{n-1}; three-dimensional input also accepts a single value.
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Write an SVG of the pieces (n = 2) or of the slice alpha_3 = s (n = 3).
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub slice: u32,
}

/// `--k` is the polynomial degree of the shape space in every family.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ElementArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub k: u32,
    /// Smoothness; for nd the full list r_0, ..., r_n.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Second smoothness of a pair family; defaults to r (-) 1.
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    /// Ambient dimension of the nd family.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct DimArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    /// Print CSV instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FrameArgs {
    /// Rule for the two edge normals.
    #[arg(long, value_enum, default_value_t = Rule::Axes)]
    pub rule: Rule,
    /// Rescale every frame vector by seeded nonzero rationals.
    #[arg(long, value_name = "SEED")]
    pub rescale: Option<u64>,
}

impl FrameArgs {
    pub fn frames(&self) -> Frames {
        let rule = match self.rule {
            Rule::Axes => NormalRule::Axes,
            Rule::Orthogonal => NormalRule::Orthogonal,
        };
        Frames::new(rule, self.rescale)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct UnisolvenceArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    #[command(flatten)]
    pub frames: FrameArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct DivStabilityArgs {
    /// Degree of the velocity space; with --table1 the default is each row's smallest degree.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    /// Defaults to r2 (-) 1.
    #[arg(long, allow_hyphen_values = true)]
    pub r3: Option<String>,
    /// Check surjectivity of the global div on this mesh instead of on bubbles.
    #[arg(long)]
    pub mesh: Option<String>,
    /// Attach explicit preimage witnesses.
    #[arg(long)]
    pub witnesses: bool,
    /// Run all reference rows.
    #[arg(long)]
    pub table1: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Hermite,
    Argyris,
    Stokes,
}

/// `--k` is the degree of the div space; the other spaces have degrees k+2, k+1, k-1.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ComplexArgs {
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub r0: Option<String>,
    /// Defaults to r0 - 1.
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<String>,
    /// Defaults to r1 (-) 1.
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    /// Defaults to r2 (-) 1.
    #[arg(long, allow_hyphen_values = true)]
    pub r3: Option<String>,
    /// tet1, tet2, fan3 or a mesh file.
    #[arg(long, default_value = "tet1")]
    pub mesh: String,
    #[command(flatten)]
    pub frames: FrameArgs,
}

impl ComplexArgs {
    pub fn spec(&self) -> Result<ComplexSpec> {
        let base = match self.suite {
            Some(Suite::Hermite) => Some(ComplexSpec::hermite()),
            Some(Suite::Argyris) => Some(ComplexSpec::argyris()),
            Some(Suite::Stokes) => Some(ComplexSpec::stokes()),
            None => None,
        };
        let parse = |s: &Option<String>| s.as_deref().map(str::parse::<Smoothness3>).transpose();
        let (k, r0) = match (base, self.k, parse(&self.r0)?) {
            (Some(b), k, r0) => (k.unwrap_or(b.k), r0.unwrap_or(b.r0)),
            (None, Some(k), Some(r0)) => (k, r0),
            _ => return Err(Error::Parse("either --suite or both --k and --r0 are required".into())),
        };
        let r1 = parse(&self.r1)?.or(base.filter(|_| self.r0.is_none()).map(|b| b.r1)).unwrap_or(r0.shifted(-1));
        let r2 = parse(&self.r2)?.or(base.filter(|_| self.r1.is_none() && self.r0.is_none()).map(|b| b.r2)).unwrap_or(r1.ominus());
        let r3 = parse(&self.r3)?
            .or(base.filter(|_| self.r2.is_none() && self.r1.is_none() && self.r0.is_none()).map(|b| b.r3))
            .unwrap_or(r2.ominus());
        Ok(ComplexSpec::new(k, r0, r1, r2, r3))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CommuteArgs {
    #[command(flatten)]
    pub complex: ComplexArgs,
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct TraceArgs {
    #[arg(long, default_value_t = 5)]
    pub k: u32,
    /// r_0, ..., r_n.
    #[arg(long, default_value = "2,1,0", allow_hyphen_values = true)]
    pub r: String,
    /// tri2, seg2 or a mesh file with two cells.
    #[arg(long, default_value = "tri2")]
    pub mesh: String,
}

#[derive(Args, Debug, Serialize)]
pub struct Table1Args {
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub witnesses: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct Table2Args {
    #[arg(long, default_value_t = 7)]
    pub k: u32,
    #[arg(long, default_value = "2,1,0", allow_hyphen_values = true)]
    pub r2: String,
}

/// Report body and whether every asserted property held.
pub struct Outcome {
    pub result: Value,
    pub ok: bool,
    /// Replaces the JSON on stdout when set.
    pub text: Option<String>,
}

impl Outcome {
    fn json(result: Value, ok: bool) -> Self {
        Self { result, ok, text: None }
    }
}

fn parse_smoothness(text: &str) -> Result<Smoothness3> {
    text.parse()
}

impl ElementArgs {
    pub fn spec(&self) -> Result<ElementSpec> {
        let r = || -> Result<Smoothness3> {
            match &self.r {
                Some(s) => parse_smoothness(s),
                None if self.family == Family::L2 => Ok(Smoothness3::uniform(-1)),
                None => Err(Error::Parse("--r is required for this family".into())),
            }
        };
        let second = |first: Smoothness3| -> Result<Smoothness3> {
            self.r2.as_deref().map(parse_smoothness).transpose().map(|s| s.unwrap_or(first.ominus()))
        };
        let k = self.k;
        let below = |by: u32| -> Result<u32> {
            k.checked_sub(by).ok_or_else(|| Error::Parse(format!("--k must be at least {by} for this family")))
        };
        Ok(match self.family {
            Family::Grad | Family::L2 => ElementSpec::Scalar { k, r: r()? },
            Family::Div => ElementSpec::div(k, r()?),
            Family::DivPair => {
                let r2 = r()?;
                ElementSpec::DivPair { k, r2, r3: second(r2)? }
            }
            Family::Curl => {
                let r1 = r()?;
                ElementSpec::CurlPair { k: below(1)?, r1, r2: r1.ominus() }
            }
            Family::CurlPair => {
                let r1 = r()?;
                ElementSpec::CurlPair { k: below(1)?, r1, r2: second(r1)? }
            }
            Family::GradMod => ElementSpec::GradMod { k: below(2)?, r0: r()? },
            Family::Nd => {
                let entries = parse_int_list(self.r.as_deref().ok_or_else(|| Error::Parse("--r is required".into()))?)?;
                let n = self.n.unwrap_or(entries.len().saturating_sub(1));
                if entries.len() != n + 1 {
                    return Err(Error::Parse(format!("nd with n = {n} needs {} smoothness entries", n + 1)));
                }
                ElementSpec::Nd { n, k, r: SmoothnessN::new(entries) }
            }
        })
    }
}

/// Element spec from a family name and the same strings the CLI accepts.
pub fn element_spec(family: &str, k: u32, r: Option<&str>, r2: Option<&str>, n: Option<usize>) -> Result<ElementSpec> {
    let family = Family::from_str(family, true).map_err(|_| Error::Parse(format!("unknown family {family:?}")))?;
    ElementArgs { family, k, r: r.map(str::to_string), r2: r2.map(str::to_string), n }.spec()
}

fn reference_geometry(spec: &ElementSpec) -> Geometry {
    Geometry::reference(spec.shape().n)
}

fn decomposition(args: &DecomposeArgs) -> Result<LatticeDecomposition> {
    if args.n == 3 {
        return decompose3(args.k, parse_smoothness(&args.r)?);
    }
    let mut entries = parse_int_list(&args.r)?;
    if entries.len() == args.n {
        entries.push(0);
    }
    decompose_nd(args.n, args.k, &SmoothnessN::new(entries))
}

const PALETTE: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#7f7f7f"];

/// Nodes of T^2_k, or of the slice alpha_3 = s of T^3_k, coloured by piece dimension.
pub fn lattice_svg(d: &LatticeDecomposition, slice: u32) -> String {
    let size = 480.0;
    let margin = 30.0;
    let corners = [(0.0, 1.0), (1.0, 1.0), (0.5, 1.0 - 3f64.sqrt() / 2.0)];
    let mut body = String::new();
    let top = d.k.saturating_sub(if d.n == 3 { slice } else { 0 }).max(1) as f64;
    for piece in &d.pieces {
        let colour = PALETTE[piece.dim().min(3)];
        for node in &piece.nodes {
            if d.n == 3 && node[3] != slice {
                continue;
            }
            if d.n != 2 && d.n != 3 {
                continue;
            }
            let (mut x, mut y) = (0.0, 0.0);
            for (i, c) in corners.iter().enumerate() {
                x += node[i] as f64 / top * c.0;
                y += node[i] as f64 / top * c.1;
            }
            let _ = writeln!(
                body,
                r#"  <circle cx="{:.2}" cy="{:.2}" r="6" fill="{colour}"><title>{node:?}</title></circle>"#,
                margin + x * size,
                margin + y * size * 0.9
            );
        }
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\">\n{body}</svg>\n",
        w = size + 2.0 * margin
    )
}

fn counts_csv(rows: &[(&str, Vec<i64>)]) -> String {
    let mut out = String::from("source,c0,c1,c2,c3\n");
    for (name, c) in rows {
        let cells: Vec<String> = c.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{name},{}", cells.join(","));
    }
    out
}

fn element_dim(args: &DimArgs) -> Result<Outcome> {
    let spec = args.element.spec()?;
    spec.validate()?;
    let g = reference_geometry(&spec);
    let table = build_table(&spec, &g, &Frames::default())?;
    let by_dim: Vec<i64> = table.counts_by_dim().iter().map(|c| c.first().copied().unwrap_or(0) as i64).collect();
    let mut rows: Vec<(&str, Vec<i64>)> = vec![("table", by_dim.clone())];
    match spec {
        ElementSpec::Scalar { k, r } if r.f >= 0 => {
            rows.push(("closed_form", scalar_counts(k, r).to_vec()));
            rows.push(("enumerated", enumerated_counts(k, r)?.to_vec()));
        }
        ElementSpec::VectorScalar { k, r } => rows.push(("closed_form", scalar_counts(k, r).iter().map(|c| 3 * c).collect())),
        ElementSpec::Hdiv { k, r } => rows.push(("closed_form", hdiv_counts(k, r).to_vec())),
        _ => {}
    }
    let ok = rows.iter().all(|(_, c)| *c == by_dim);
    let result = json!({
        "element": spec.to_string(),
        "family": spec.family(),
        "shape_dim": spec.shape().dim(),
        "total": table.len(),
        "counts": rows.iter().map(|(name, c)| (name.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "agree": ok,
    });
    let text = args.csv.then(|| counts_csv(&rows));
    Ok(Outcome { result, ok, text })
}

fn div_stability(args: &DivStabilityArgs) -> Result<Outcome> {
    if args.table1 {
        return table1(args.k, args.witnesses);
    }
    let k = args.k.ok_or_else(|| Error::Parse("--k is required".into()))?;
    let r2 = parse_smoothness(args.r2.as_deref().ok_or_else(|| Error::Parse("--r2 is required".into()))?)?;
    let r3 = args.r3.as_deref().map(parse_smoothness).transpose()?.unwrap_or(r2.ominus());
    if let Some(m) = &args.mesh {
        let mesh = mesh::load(m)?;
        let v = complex::global_div_rank(&mesh, k, r2, r3, &Frames::default())?;
        return Ok(Outcome::json(serde_json::to_value(&v).expect("verdict serializes"), true));
    }
    let g = Geometry::reference(3);
    let mut verdict = stability::bubble_div_rank(k, r2, r3, &g)?;
    if args.witnesses {
        verdict.witnesses = Some(stability::witnesses(k, r2, r3, &g)?);
    }
    let ok = verdict.witnesses.as_ref().map_or(true, |w| w.iter().all(stability::Witness::verified));
    Ok(Outcome::json(verdict.to_json(), ok))
}

fn table1(k: Option<u32>, with_witnesses: bool) -> Result<Outcome> {
    let g = Geometry::reference(3);
    let rows = stability::table1(k, &g, with_witnesses)?;
    let mut matrix = String::from("r2         r3         k  rank/target  verdict   expected  pass\n");
    let mut ok = true;
    let mut out = Vec::new();
    for (row, v) in &rows {
        let pass = v.stable == row.expected_stable
            && v.witnesses.as_ref().map_or(true, |w| w.iter().all(stability::Witness::verified));
        ok &= pass;
        let verdict = |s: bool| if s { "stable" } else { "unstable" };
        let _ = writeln!(
            matrix,
            "{:<10} {:<10} {:<2} {:>5}/{:<5}  {:<9} {:<9} {}",
            row.r2.to_string(),
            row.r3.to_string(),
            v.k,
            v.rank,
            v.target_dim,
            verdict(v.stable),
            verdict(row.expected_stable),
            if pass { "PASS" } else { "FAIL" }
        );
        let mut entry = v.to_json();
        entry["expected"] = json!(verdict(row.expected_stable));
        entry["pass"] = json!(pass);
        out.push(entry);
    }
    eprint!("{matrix}");
    Ok(Outcome::json(json!({ "rows": out, "all_pass": ok }), ok))
}

fn table2(args: &Table2Args) -> Result<Outcome> {
    let r2 = parse_smoothness(&args.r2)?;
    let sums = complex::alternating_sum_check(args.k, r2);
    let poly: Vec<Value> = (1..=6).map(|k| json!({ "k": k, "sum": complex::polynomial_alternating_sum(k) })).collect();
    let poly_ok = (1..=6).all(|k| complex::polynomial_alternating_sum(k) == 0);
    let ok = sums.holds && poly_ok;
    Ok(Outcome::json(json!({ "entities": sums, "polynomial": poly, "holds": ok }), ok))
}

/// Runs one command and returns its report body.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Lattice(LatticeCommand::Decompose(args)) => {
            let d = decomposition(args)?;
            if let Some(path) = &args.svg {
                std::fs::write(path, lattice_svg(&d, args.slice))
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            let ok = d.is_partition();
            let mut result = d.to_json();
            result["partition"] = json!(ok);
            Ok(Outcome::json(result, ok))
        }
        Command::Element(ElementCommand::Dofs(args)) => {
            let spec = args.spec()?;
            let table = build_table(&spec, &reference_geometry(&spec), &Frames::default())?;
            let ok = table.len() == spec.shape().dim();
            Ok(Outcome::json(table.to_json(), ok))
        }
        Command::Element(ElementCommand::Dim(args)) => element_dim(args),
        Command::Verify(VerifyCommand::Unisolvence(args)) => {
            let spec = args.element.spec()?;
            let g = reference_geometry(&spec);
            let table = build_table(&spec, &g, &args.frames.frames())?;
            let u = verify_unisolvence(&table, &g)?;
            let mut result = serde_json::to_value(&u).expect("report serializes");
            result["element"] = json!(spec.to_string());
            Ok(Outcome::json(result, u.unisolvent))
        }
        Command::Verify(VerifyCommand::DivStability(args)) => div_stability(args),
        Command::Verify(VerifyCommand::Complex(args)) => {
            let spec = args.spec()?;
            let mesh = mesh::load(&args.mesh)?;
            let report = complex::exactness_check(&mesh, spec, &args.frames.frames())?;
            Ok(Outcome::json(report.to_json(), report.exact))
        }
        Command::Verify(VerifyCommand::Commute(args)) => {
            let spec = args.complex.spec()?;
            let mesh = mesh::load(&args.complex.mesh)?;
            let report =
                complex::commuting_diagram_check(&mesh, spec, &args.complex.frames.frames(), args.samples, args.seed)?;
            Ok(Outcome::json(report.to_json(), report.commutes))
        }
        Command::Verify(VerifyCommand::Trace(args)) => {
            let mesh = mesh::load(&args.mesh)?;
            let r = SmoothnessN::new(parse_int_list(&args.r)?);
            let report = complex::nd_trace_check(&mesh, args.k, &r, &Frames::default())?;
            Ok(Outcome::json(report.to_json(), report.continuous))
        }
        Command::Report(ReportCommand::Table1(args)) => table1(args.k, args.witnesses),
        Command::Report(ReportCommand::Table2(args)) => table2(args),
    }
}

/// Invalid input exits with 2, failed checks with 1.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::InvalidSmoothness(_) | Error::InvalidSubSimplex(_) | Error::InvalidDirection(_) => 2,
        _ => 1,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Lattice(LatticeCommand::Decompose(_)) => "lattice decompose",
        Command::Element(ElementCommand::Dofs(_)) => "element dofs",
        Command::Element(ElementCommand::Dim(_)) => "element dim",
        Command::Verify(VerifyCommand::Unisolvence(_)) => "verify unisolvence",
        Command::Verify(VerifyCommand::DivStability(_)) => "verify div-stability",
        Command::Verify(VerifyCommand::Complex(_)) => "verify complex",
        Command::Verify(VerifyCommand::Commute(_)) => "verify commute",
        Command::Verify(VerifyCommand::Trace(_)) => "verify trace",
        Command::Report(ReportCommand::Table1(_)) => "report table1",
        Command::Report(ReportCommand::Table2(_)) => "report table2",
    }
}

/// Full report: schema, command, config, result, status and wall time.
pub fn report(cli: &Cli, outcome: &Outcome, millis: u128) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command_name(&cli.command),
        "config": serde_json::to_value(&cli.command).expect("config serializes"),
        "result": outcome.result,
        "ok": outcome.ok,
        "wall_time_ms": millis,
    })
}

/// Parses `args`, runs, prints and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            let full = report(&cli, &outcome, start.elapsed().as_millis());
            let rendered = serde_json::to_string_pretty(&full).expect("report serializes");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            let body = match &outcome.text {
                Some(text) => text.clone(),
                None => format!("{rendered}\n"),
            };
            // A closed reader (e.g. `| head`) is not an error.
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(body.as_bytes()).and_then(|_| out.flush());
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Sizes the global thread pool from FE_COMPLEX_THREADS.
pub fn configure_threads() {
    if let Some(n) = std::env::var("FE_COMPLEX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
