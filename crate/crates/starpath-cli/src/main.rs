//! Batch command-line surface over the reduction-system engine: loads systems,
//! deformation maps, chart covers and hypersurface presentations from JSON files
//! or bundled fixtures, runs the checks, and emits deterministic text or JSON
//! reports.
//!
//! Exit codes: 0 success, 1 input or schema error, 2 mathematical failure
//! (invalid system, non-confluent, MC/cocycle/degree-condition fail), 3 step or
//! size cap hit.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use starpath::deform::{
    cocycle_check, degree_condition, mc_check, mc_residual_equations, DeformationMap, McOptions,
    McPolicy, StarContext,
};
use starpath::diagram::{self, PairClass};
use starpath::fixtures::{self, Fixture};
use starpath::rewrite::{StrategyRegistry, DEFAULT_MAX_STEPS};
use starpath::wire;
use starpath::{Error, Path, Quiver, ReductionSystem, Result, TruncationPolicy};
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "starpath",
    about = "Exact reduction-system and deformation checks for path algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    /// Coefficient truncation override: "exact" or a total degree N.
    #[arg(long, global = true)]
    truncate: Option<String>,

    /// Reduction step cap per normal form.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,

    /// Seed for the random reduction strategy.
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the reduction-system shape conditions and the termination order.
    Validate {
        /// System JSON file or fixture name.
        system: String,
    },
    /// Resolve all overlap ambiguities and report confluence.
    Diamond {
        system: String,
    },
    /// Reduce a path to its normal form, printing the reduction trace.
    Nf {
        system: String,
        /// Space-separated arrow labels, or "e:<vertex>" for a trivial path.
        path: String,
        /// Occurrence-selection strategy: rightmost, leftmost or random.
        #[arg(long, default_value = "rightmost")]
        strategy: String,
    },
    /// List the n-ambiguities (the basis of S_{n+2}).
    Ambiguities {
        system: String,
        /// Ambiguity degree n >= 1; S_{n+2} is listed.
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Optional length cap on listed ambiguities.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Compute the star product of two paths under a deformation map.
    Star {
        system: String,
        /// Deformation JSON file or fixture family name.
        phi: String,
        a: String,
        b: String,
    },
    /// Run the Maurer-Cartan associativity check over all overlaps.
    Mc {
        system: String,
        phi: String,
    },
    /// Normalized residual equations cutting out the Maurer-Cartan locus.
    Variety {
        system: String,
        family: String,
    },
    /// 2-cocycle check: associativity modulo t^2.
    Cocycle {
        system: String,
        phi: String,
    },
    /// Degree-condition certificate for algebraization.
    Degcond {
        system: String,
        phi: String,
        /// "S0" (chart-relation subset of a diagram fixture) or a JSON file of paths.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Assemble a diagram algebra from a chart cover; writes system + provenance.
    BuildDiagram {
        /// Cover JSON file or diagram fixture name.
        cover: String,
        /// Output directory for the generated files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Build the quiver presentation of an affine hypersurface singularity.
    Hypersurface {
        /// Hypersurface JSON file or fixture name.
        surface: String,
        /// Also list the basis and differential table at this homological degree.
        #[arg(long)]
        bach_degree: Option<usize>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Write a bundled fixture (system, families, cover, surface) to disk.
    Example {
        /// Fixture name, e.g. zk-tilt-4, zk-diagram-2, genus3, hypersurface-2.
        name: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) => 1u8,
                Error::Math(_) => 2u8,
                Error::Cap(_) => 3u8,
            })
        }
    }
}

/// A loaded system argument: the system plus the fixture it came from, if any.
struct Loaded {
    system: ReductionSystem,
    fixture: Option<Fixture>,
}

fn read_file(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))
}

fn write_file(path: &FsPath, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn load_system(arg: &str) -> Result<Loaded> {
    if FsPath::new(arg).is_file() {
        Ok(Loaded {
            system: wire::system_from_json(&read_file(arg)?)?,
            fixture: None,
        })
    } else {
        let fx = fixtures::lookup(arg)?;
        Ok(Loaded {
            system: fx.system.clone(),
            fixture: Some(fx),
        })
    }
}

fn load_phi(loaded: &Loaded, arg: &str, truncate: &Option<String>) -> Result<DeformationMap> {
    let phi = if FsPath::new(arg).is_file() {
        wire::deformation_from_json(&loaded.system, &read_file(arg)?)?
    } else if let Some(phi) = loaded.fixture.as_ref().and_then(|fx| fx.families.get(arg)) {
        phi.clone()
    } else {
        let known: Vec<String> = loaded
            .fixture
            .as_ref()
            .map(|fx| fx.families.keys().cloned().collect())
            .unwrap_or_default();
        return Err(Error::input(format!(
            "`{arg}` is neither a deformation file nor a known family (families here: {})",
            if known.is_empty() { "none".to_string() } else { known.join(", ") }
        )));
    };
    match parse_truncate(truncate)? {
        Some(policy) => phi.with_policy(policy),
        None => Ok(phi),
    }
}

fn parse_truncate(arg: &Option<String>) -> Result<Option<TruncationPolicy>> {
    match arg.as_deref() {
        None => Ok(None),
        Some("exact") => Ok(Some(TruncationPolicy::Exact)),
        Some(n) => n
            .parse::<u32>()
            .map(|n| Some(TruncationPolicy::Truncate(n)))
            .map_err(|_| Error::input(format!("--truncate takes \"exact\" or a degree, got `{n}`"))),
    }
}

fn mc_options(cli: &Cli) -> Result<McOptions> {
    let policy = match parse_truncate(&cli.truncate)? {
        None => McPolicy::Auto,
        Some(TruncationPolicy::Exact) => McPolicy::Exact,
        Some(TruncationPolicy::Truncate(n)) => McPolicy::Truncate(n),
    };
    Ok(McOptions {
        policy,
        max_steps: cli.max_steps,
    })
}

fn parse_path_arg(q: &Quiver, s: &str) -> Result<Path> {
    if let Some(v) = s.strip_prefix("e:") {
        Ok(Path::trivial(q.vertex_id(v)?))
    } else {
        let labels: Vec<&str> = s.split_whitespace().collect();
        if labels.is_empty() {
            return Err(Error::input("empty path argument"));
        }
        Path::from_labels(q, &labels)
    }
}

/// The chart-relation lhs subset S0 of a diagram fixture's reduction system.
fn chart_subset(loaded: &Loaded) -> Result<BTreeSet<Path>> {
    let diagram = loaded
        .fixture
        .as_ref()
        .and_then(|fx| fx.diagram.as_ref())
        .ok_or_else(|| {
            Error::input("--subset S0 needs a diagram fixture (chart provenance is required)")
        })?;
    Ok(diagram
        .provenance
        .iter()
        .zip(diagram.system.pairs())
        .filter(|(class, _)| matches!(class, PairClass::Chart { .. }))
        .map(|(_, pair)| pair.lhs.clone())
        .collect())
}

fn load_subset(loaded: &Loaded, arg: &str) -> Result<BTreeSet<Path>> {
    if arg == "S0" {
        chart_subset(loaded)
    } else if FsPath::new(arg).is_file() {
        let wires: Vec<wire::PathWire> = serde_json::from_str(&read_file(arg)?)
            .map_err(|e| Error::input(format!("malformed subset file: {e}")))?;
        let q = loaded.system.quiver().as_ref();
        wires.iter().map(|w| wire::path_from_wire(q, w)).collect()
    } else {
        Err(Error::input(format!(
            "--subset takes \"S0\" or a JSON file of paths, got `{arg}`"
        )))
    }
}

fn provenance_json(classes: &[PairClass]) -> Value {
    Value::Array(
        classes
            .iter()
            .map(|c| match c {
                PairClass::Chart { chart } => json!({"class": "chart", "chart": chart}),
                PairClass::Restriction { chart, added } => {
                    json!({"class": "restriction", "chart": chart, "added": added})
                }
                PairClass::Square { chart, j, k } => {
                    json!({"class": "square", "chart": chart, "j": j, "k": k})
                }
            })
            .collect(),
    )
}

/// Print a line to stdout; on a closed pipe, exit like a SIGPIPE death
/// instead of panicking, so piping into `head` stays quiet.
fn print_or_die(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let status = writeln!(out, "{line}").and_then(|_| out.flush());
    if let Err(e) = status {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(141);
        }
        eprintln!("error: cannot write report: {e}");
        std::process::exit(1);
    }
}

fn emit(cli: &Cli, text: String, value: Value) {
    match cli.output {
        OutputFormat::Text => {
            let trimmed = text.trim_end();
            if !trimmed.is_empty() {
                print_or_die(trimmed);
            }
        }
        OutputFormat::Json => {
            print_or_die(&serde_json::to_string_pretty(&value).expect("report serializes"));
        }
    }
}

fn element_json(q: &Quiver, e: &starpath::AlgebraElement) -> Value {
    serde_json::to_value(wire::element_to_wire(q, e)).expect("element serializes")
}

fn path_json(q: &Quiver, p: &Path) -> Value {
    serde_json::to_value(wire::path_to_wire(q, p)).expect("path serializes")
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate { system } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let validity = sys.validate();
            let termination = sys.order().map(|o| sys.check_termination(o));
            let mut text = validity.render(sys);
            let term_json = match &termination {
                Some(t) => {
                    text.push_str(&t.render(sys));
                    json!({"certified": t.certified})
                }
                None => {
                    text.push_str("no admissible order declared; termination not certified\n");
                    Value::Null
                }
            };
            let ok = validity.ok && termination.as_ref().map_or(true, |t| t.certified);
            emit(cli, text, json!({"valid": validity.ok, "termination": term_json, "ok": ok}));
            Ok(if ok { 0 } else { 2 })
        }

        Command::Diamond { system } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let report = sys.check_diamond(cli.max_steps)?;
            let q = sys.quiver().as_ref();
            let overlaps: Vec<Value> = report
                .overlaps
                .iter()
                .map(|o| {
                    json!({
                        "overlap": path_json(q, &o.overlap),
                        "joinable": o.joinable,
                        "left_nf": element_json(q, &o.left_nf),
                        "right_nf": element_json(q, &o.right_nf),
                    })
                })
                .collect();
            emit(
                cli,
                report.render(sys),
                json!({
                    "num_ambiguities": report.num_ambiguities,
                    "confluent": report.confluent,
                    "cap_hit": report.cap_hit,
                    "overlaps": overlaps,
                }),
            );
            Ok(if report.cap_hit {
                3
            } else if report.confluent {
                0
            } else {
                2
            })
        }

        Command::Nf {
            system,
            path,
            strategy,
        } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let q = sys.quiver().as_ref();
            let p = parse_path_arg(q, path)?;
            let elem = starpath::AlgebraElement::from_path(sys.params(), p);
            let mut strat = StrategyRegistry::standard().build(strategy, cli.seed)?;
            let nf = sys.normal_form(&elem, strat.as_mut(), cli.max_steps, true)?;
            let mut text = format!(
                "normal form: {}\nsteps: {}{}\n",
                nf.element.render(q),
                nf.steps,
                if nf.completed { "" } else { " (step cap hit)" }
            );
            let trace = nf.trace.as_deref().unwrap_or(&[]);
            for step in trace {
                text.push_str(&format!(
                    "  reduce pair {} in {} at {}\n",
                    step.pair,
                    step.term.render(q),
                    step.start
                ));
            }
            let trace_json: Vec<Value> = trace
                .iter()
                .map(|s| json!({"term": path_json(q, &s.term), "start": s.start, "pair": s.pair}))
                .collect();
            emit(
                cli,
                text,
                json!({
                    "element": element_json(q, &nf.element),
                    "steps": nf.steps,
                    "completed": nf.completed,
                    "trace": trace_json,
                }),
            );
            Ok(if nf.completed { 0 } else { 3 })
        }

        Command::Ambiguities {
            system,
            degree,
            max_len,
        } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let q = sys.quiver().as_ref();
            let ambiguities = starpath::ambiguity::enumerate(sys, *degree, *max_len)?;
            let mut text = format!(
                "{} ambiguities of degree {} (S_{})\n",
                ambiguities.len(),
                degree,
                degree + 2
            );
            let mut rows = Vec::new();
            for a in &ambiguities {
                let factors: Vec<String> = a.factors.iter().map(|f| f.render(q)).collect();
                text.push_str(&format!("{}  [{}]\n", a.path.render(q), factors.join(" | ")));
                rows.push(json!({
                    "path": path_json(q, &a.path),
                    "factors": a.factors.iter().map(|f| path_json(q, f)).collect::<Vec<_>>(),
                }));
            }
            emit(
                cli,
                text,
                json!({"degree": degree, "count": ambiguities.len(), "ambiguities": rows}),
            );
            Ok(0)
        }

        Command::Star { system, phi, a, b } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let q = sys.quiver().as_ref();
            let phi = load_phi(&loaded, phi, &cli.truncate)?;
            let ctx = StarContext::new(sys, &phi, cli.max_steps)?;
            let pa = parse_path_arg(q, a)?;
            let pb = parse_path_arg(q, b)?;
            let value = ctx.star_paths(&pa, &pb)?;
            emit(
                cli,
                format!("{}\n", value.render(q)),
                json!({
                    "a": path_json(q, &pa),
                    "b": path_json(q, &pb),
                    "value": element_json(q, &value),
                    "params": phi.params().names(),
                }),
            );
            Ok(0)
        }

        Command::Mc { system, phi } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let q = sys.quiver().as_ref();
            let phi = load_phi(&loaded, phi, &cli.truncate)?;
            let report = mc_check(sys, &phi, mc_options(cli)?)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "ambiguity": path_json(q, &r.ambiguity),
                        "u": path_json(q, &r.u),
                        "v": path_json(q, &r.v),
                        "w": path_json(q, &r.w),
                        "residual": element_json(q, &r.residual),
                        "pass": r.pass,
                    })
                })
                .collect();
            emit(
                cli,
                report.render(sys),
                json!({
                    "pass": report.pass,
                    "certified": report.certified,
                    "policy": report.policy.to_string(),
                    "verdict": report.verdict,
                    "rows": rows,
                }),
            );
            Ok(if report.pass { 0 } else { 2 })
        }

        Command::Variety { system, family } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let phi = load_phi(&loaded, family, &cli.truncate)?;
            let report = mc_residual_equations(sys, &phi, mc_options(cli)?)?;
            let mut text = format!(
                "{} equations ({})\n",
                report.equations.len(),
                report.policy
            );
            for eq in &report.equations {
                text.push_str(&format!("{} = 0\n", eq.render()));
            }
            emit(
                cli,
                text,
                json!({
                    "equations": report.equations.iter().map(|e| e.render()).collect::<Vec<_>>(),
                    "policy": report.policy.to_string(),
                    "mc_pass": report.mc_pass,
                }),
            );
            Ok(0)
        }

        Command::Cocycle { system, phi } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let phi = load_phi(&loaded, phi, &cli.truncate)?;
            let report = cocycle_check(sys, &phi, cli.max_steps)?;
            let verdict = if report.pass {
                "2-cocycle: associativity holds mod t^2\n".to_string()
            } else {
                format!("not a 2-cocycle\n{}", report.render(sys))
            };
            emit(cli, verdict, json!({"pass": report.pass}));
            Ok(if report.pass { 0 } else { 2 })
        }

        Command::Degcond {
            system,
            phi,
            subset,
        } => {
            let loaded = load_system(system)?;
            let sys = &loaded.system;
            let phi = load_phi(&loaded, phi, &cli.truncate)?;
            let order = sys.order().ok_or_else(|| {
                Error::input("the degree condition needs a system with an admissible order")
            })?;
            let restrict = subset
                .as_deref()
                .map(|s| load_subset(&loaded, s))
                .transpose()?;
            let report = degree_condition(&phi, order, restrict.as_ref());
            emit(
                cli,
                report.render(sys),
                json!({
                    "pass": report.pass,
                    "covers_support": report.covers_support,
                    "restricted": restrict.is_some(),
                }),
            );
            Ok(if report.pass { 0 } else { 2 })
        }

        Command::BuildDiagram { cover, out_dir } => {
            let (spec, stem) = if FsPath::new(cover).is_file() {
                let stem = FsPath::new(cover)
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("cover")
                    .trim_end_matches("-cover")
                    .to_string();
                (wire::cover_from_json(&read_file(cover)?)?, stem)
            } else {
                let fx = fixtures::lookup(cover)?;
                let diagram = fx.diagram.as_ref().ok_or_else(|| {
                    Error::input(format!("fixture `{cover}` has no chart cover"))
                })?;
                (diagram.cover.clone(), fx.name.clone())
            };
            let diagram = diagram::build(spec)?;
            let report = diagram::certify(&diagram, cli.max_steps)?;
            let system_file = out_dir.join(format!("{stem}-system.json"));
            let provenance_file = out_dir.join(format!("{stem}-provenance.json"));
            write_file(&system_file, &wire::system_to_json(&diagram.system))?;
            let provenance = provenance_json(&diagram.provenance);
            write_file(
                &provenance_file,
                &format!("{}\n", serde_json::to_string_pretty(&provenance).expect("serializes")),
            )?;
            let counts: Vec<String> = report
                .counts()
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect();
            let text = format!(
                "wrote {}\nwrote {}\npairs: {}  overlaps: {} ({})\ncertified: {}\n",
                system_file.display(),
                provenance_file.display(),
                diagram.system.pairs().len(),
                report.diamond.num_ambiguities,
                counts.join(", "),
                report.ok
            );
            emit(
                cli,
                text,
                json!({
                    "system_file": system_file.display().to_string(),
                    "provenance_file": provenance_file.display().to_string(),
                    "pairs": diagram.system.pairs().len(),
                    "overlaps": report.diamond.num_ambiguities,
                    "classes": report.counts().iter().map(|(k, v)| json!({"class": k, "count": v})).collect::<Vec<_>>(),
                    "certified": report.ok,
                }),
            );
            Ok(if report.ok { 0 } else { 2 })
        }

        Command::Hypersurface {
            surface,
            bach_degree,
            out_dir,
        } => {
            let (h, stem) = if FsPath::new(surface).is_file() {
                let stem = FsPath::new(surface)
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("hypersurface")
                    .trim_end_matches("-surface")
                    .to_string();
                (wire::hypersurface_from_json(&read_file(surface)?)?, stem)
            } else {
                let fx = fixtures::lookup(surface)?;
                let built = fx.hypersurface.as_ref().ok_or_else(|| {
                    Error::input(format!("fixture `{surface}` is not a hypersurface"))
                })?;
                (built.presentation.clone(), fx.name.clone())
            };
            let built = h.build()?;
            let q = built.system.quiver().as_ref();
            let system_file = out_dir.join(format!("{stem}-system.json"));
            write_file(&system_file, &wire::system_to_json(&built.system))?;
            let mut text = format!(
                "wrote {}\nd = {}, n = {}, pairs: {}\n",
                system_file.display(),
                h.d(),
                h.n(),
                built.system.pairs().len()
            );
            let mut bach_json = Value::Null;
            if let Some(m) = bach_degree {
                let basis = built.bach_basis(*m)?;
                text.push_str(&format!("basis in degree {m} ({} elements):\n", basis.len()));
                for b in &basis {
                    text.push_str(&format!("  {}  ~  {}\n", b.tensor_label(), b.path(&built)?.render(q)));
                }
                let table = built.differential_table(*m, cli.max_steps)?;
                let mut rows = Vec::new();
                text.push_str("differential:\n");
                for (b, chain) in &table {
                    let terms: Vec<String> = chain
                        .iter()
                        .map(|(c, coeff)| format!("[{}] {}", c.tensor_label(), coeff.render(q)))
                        .collect();
                    text.push_str(&format!(
                        "  d({}) = {}\n",
                        b.tensor_label(),
                        if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
                    ));
                    rows.push(json!({
                        "from": b.tensor_label(),
                        "to": chain.iter().map(|(c, coeff)| json!({
                            "basis": c.tensor_label(),
                            "value": element_json(q, coeff),
                        })).collect::<Vec<_>>(),
                    }));
                }
                bach_json = json!({
                    "degree": m,
                    "basis": basis.iter().map(|b| b.tensor_label()).collect::<Vec<_>>(),
                    "differential": rows,
                });
            }
            emit(
                cli,
                text,
                json!({
                    "system_file": system_file.display().to_string(),
                    "d": h.d(),
                    "n": h.n(),
                    "pairs": built.system.pairs().len(),
                    "bach": bach_json,
                }),
            );
            Ok(0)
        }

        Command::Example { name, dir } => {
            let fx = fixtures::lookup(name)?;
            let mut written = Vec::new();
            let system_file = dir.join(format!("{}-system.json", fx.name));
            write_file(&system_file, &wire::system_to_json(&fx.system))?;
            written.push(system_file);
            for (family, phi) in &fx.families {
                let family_file = dir.join(format!("{}-{}.json", fx.name, family));
                write_file(&family_file, &wire::deformation_to_json(&fx.system, phi))?;
                written.push(family_file);
            }
            if let Some(diagram) = &fx.diagram {
                let cover_file = dir.join(format!("{}-cover.json", fx.name));
                write_file(&cover_file, &wire::cover_to_json(&diagram.cover))?;
                written.push(cover_file);
            }
            if let Some(built) = &fx.hypersurface {
                let surface_file = dir.join(format!("{}-surface.json", fx.name));
                write_file(&surface_file, &wire::hypersurface_to_json(&built.presentation))?;
                written.push(surface_file);
            }
            let text: String = written
                .iter()
                .map(|p| format!("wrote {}\n", p.display()))
                .collect();
            emit(
                cli,
                text,
                json!({
                    "fixture": fx.name,
                    "files": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                }),
            );
            Ok(0)
        }
    }
}
