//! Batch front end for the steinberg workbench.
//!
//! Exit codes: 0 definite result or success, 1 definite negative on a yes/no
//! query, 2 Unknown (a depth or state cap was hit), 3 input error.
//! Environment variables mirror the main flags with the STEINBERG_ prefix.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steinberg::acceptance;
use steinberg::fingroupoid::{
    builtin_groupoid, decompose, decomposition_shape, groupoid_from_json, simplicity_check,
    structural_analysis, verify_decomposition, FiniteGroupoid, DEFAULT_GROUPOID_CAP,
};
use steinberg::semiring::{is_congruence_simple, FiniteAlgebraTable};
use steinberg::selfsim::{
    builtin_system, parse_element, parse_path, parse_xi, system_from_json, PathWord,
    SelfSimilarSystem,
};
use steinberg::tightalg::{
    condition_s_sample, fixed_and_trivially_fixed, hausdorff_probe, omega_faithful_probe,
    open_equal, open_product, triple_multiply, BasicBisection, OpenSetElement, TernaryVerdict,
    Triple,
};

#[derive(Parser)]
#[command(
    name = "steinberg",
    version,
    about = "Computational workbench for ample groupoid algebras over semifields"
)]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "STEINBERG_FORMAT")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Finite hemiring tables and the congruence oracle
    Semiring {
        #[command(subcommand)]
        cmd: SemiringCmd,
    },
    /// Finite discrete groupoids and their convolution algebras
    Groupoid {
        #[command(subcommand)]
        cmd: GroupoidCmd,
    },
    /// Self-similar graph actions and the word problem
    Selfsim {
        #[command(subcommand)]
        cmd: SelfsimCmd,
    },
    /// The inverse semigroup, germs, and tight-groupoid probes
    Tight {
        #[command(subcommand)]
        cmd: TightCmd,
    },
    /// Acceptance suite
    Accept {
        #[command(subcommand)]
        cmd: AcceptCmd,
    },
}

#[derive(Args)]
struct SemiringSource {
    /// Semiring table JSON file
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Built-in table: boolean, f2, f3, f5, f7, z4
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum SemiringCmd {
    /// Validate the hemiring axioms; exit 1 if any law fails
    Check {
        #[command(flatten)]
        src: SemiringSource,
    },
    /// Decide congruence-simplicity by brute force
    Simple {
        #[command(flatten)]
        src: SemiringSource,
    },
}

#[derive(Args)]
struct GroupoidSource {
    /// Groupoid JSON file
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Built-in name, e.g. pt, z2, r2, r2+pt, orbit3.z2
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum GroupoidCmd {
    /// Orbits, isotropy, minimality and effectiveness
    Analyze {
        #[command(flatten)]
        src: GroupoidSource,
    },
    /// The matrix-algebra decomposition with verification
    Decompose {
        #[command(flatten)]
        src: GroupoidSource,
    },
    /// Simplicity: theorem route against the brute-force oracle
    Simple {
        #[command(flatten)]
        src: GroupoidSource,
        /// Coefficient semiring: a built-in name or a table JSON file
        #[arg(long)]
        semiring: String,
        /// Materialization cap for the brute-force oracle
        #[arg(long, default_value_t = DEFAULT_GROUPOID_CAP as u128, env = "STEINBERG_CAP")]
        cap: u128,
    },
}

#[derive(Args)]
struct SystemSource {
    /// Self-similar system JSON file
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Built-in system: odometer, grigorchuk, katsura
    #[arg(long)]
    builtin: Option<String>,
    /// Bisimulation state cap
    #[arg(long, env = "STEINBERG_STATE_CAP")]
    state_cap: Option<usize>,
}

#[derive(Subcommand)]
enum SelfsimCmd {
    /// Apply an element to a finite path or an eventually periodic path
    Act {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long)]
        element: String,
        /// Finite path literal, e.g. e1,e1,e0 or a vertex name
        #[arg(long, conflicts_with = "xi")]
        path: Option<String>,
        /// Eventually periodic path literal, e.g. e0,(e1)*
        #[arg(long)]
        xi: Option<String>,
    },
    /// The cocycle section of an element along a finite path
    Cocycle {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long)]
        element: String,
        #[arg(long)]
        path: String,
    },
    /// Minimal strongly fixed paths up to a depth
    Sfp {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 7, env = "STEINBERG_DEPTH")]
        depth: usize,
    },
    /// Word problem: are two elements equal as tree automorphisms?
    Equal {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
}

#[derive(Subcommand)]
enum TightCmd {
    /// Product of two inverse semigroup triples
    Mul {
        #[command(flatten)]
        src: SystemSource,
        /// Triple as JSON {"alpha":…, "g":…, "beta":…}
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Product of two unions of basic bisections
    Product {
        #[command(flatten)]
        src: SystemSource,
        /// JSON array of triples, each with an optional "cylinder"
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 4, env = "STEINBERG_DEPTH")]
        depth: usize,
    },
    /// Set equality of two unions of basic bisections
    Equal {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 4, env = "STEINBERG_DEPTH")]
        depth: usize,
    },
    /// Fixed and trivially fixed membership of a point under a triple
    Fs {
        #[command(flatten)]
        src: SystemSource,
        /// Triple as JSON
        #[arg(long)]
        element: String,
        #[arg(long)]
        xi: String,
        #[arg(long, default_value_t = 8, env = "STEINBERG_DEPTH")]
        depth: usize,
    },
    /// Sample Condition (S) over a list of points
    ConditionS {
        #[command(flatten)]
        src: SystemSource,
        /// JSON array of triples
        #[arg(long)]
        elements: String,
        /// Semicolon-separated eventually periodic path literals
        #[arg(long)]
        samples: String,
        #[arg(long, default_value_t = 8, env = "STEINBERG_DEPTH")]
        depth: usize,
    },
    /// Probe ω-faithfulness at one point and one element family
    Omega {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long)]
        xi: String,
        /// Comma-separated group element literals
        #[arg(long)]
        gs: String,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value_t = 5)]
        alpha_depth: usize,
    },
    /// Hausdorffness probe over a word ball
    Hausdorff {
        #[command(flatten)]
        src: SystemSource,
        #[arg(long, default_value_t = 1, env = "STEINBERG_RADIUS")]
        radius: usize,
        #[arg(long, default_value_t = 7, env = "STEINBERG_DEPTH")]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum AcceptCmd {
    /// Run the full acceptance suite
    Run,
}

fn main() -> ExitCode {
    // flag mistakes are input errors (exit 3), not Unknown verdicts (exit 2)
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

type CliResult = Result<u8, String>;

fn err<T: std::fmt::Display>(e: T) -> String {
    e.to_string()
}

fn verdict_code(v: TernaryVerdict) -> u8 {
    match v {
        TernaryVerdict::True => 0,
        TernaryVerdict::False => 1,
        TernaryVerdict::Unknown => 2,
    }
}

fn verdict_str(v: TernaryVerdict) -> &'static str {
    match v {
        TernaryVerdict::True => "true",
        TernaryVerdict::False => "false",
        TernaryVerdict::Unknown => "unknown",
    }
}

fn emit(format: Format, value: &Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => println!("{text}"),
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Semiring { cmd } => run_semiring(cli.format, cmd),
        Command::Groupoid { cmd } => run_groupoid(cli.format, cmd),
        Command::Selfsim { cmd } => run_selfsim(cli.format, cmd),
        Command::Tight { cmd } => run_tight(cli.format, cmd),
        Command::Accept { cmd } => run_accept(cli.format, cmd),
    }
}

// ---------------------------------------------------------------------------
// loading

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

impl SemiringSource {
    fn load(&self) -> Result<FiniteAlgebraTable, String> {
        match (&self.input, &self.builtin) {
            (Some(path), None) => {
                let table: FiniteAlgebraTable =
                    serde_json::from_str(&read_file(path)?).map_err(err)?;
                table.check_well_formed().map_err(err)?;
                Ok(table)
            }
            (None, Some(name)) => FiniteAlgebraTable::builtin(name)
                .ok_or_else(|| format!("unknown built-in semiring '{name}'")),
            _ => Err("exactly one of --input and --builtin is required".into()),
        }
    }
}

impl GroupoidSource {
    fn load(&self) -> Result<Arc<FiniteGroupoid>, String> {
        match (&self.input, &self.builtin) {
            (Some(path), None) => groupoid_from_json(&read_file(path)?).map_err(err),
            (None, Some(name)) => builtin_groupoid(name)
                .ok_or_else(|| format!("unknown built-in groupoid '{name}'")),
            _ => Err("exactly one of --input and --builtin is required".into()),
        }
    }
}

impl SystemSource {
    fn load(&self) -> Result<Arc<SelfSimilarSystem>, String> {
        let sys = match (&self.input, &self.builtin) {
            (Some(path), None) => {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "input".into());
                system_from_json(&name, &read_file(path)?).map_err(err)?
            }
            (None, Some(name)) => builtin_system(name).map_err(err)?,
            _ => return Err("exactly one of --input and --builtin is required".into()),
        };
        Ok(match self.state_cap {
            Some(cap) => sys.with_state_cap(cap),
            None => sys,
        })
    }
}

// ---------------------------------------------------------------------------
// semiring

fn run_semiring(format: Format, cmd: &SemiringCmd) -> CliResult {
    match cmd {
        SemiringCmd::Check { src } => {
            let table = src.load()?;
            let violations = table.validate_axioms().map_err(err)?;
            let valid = violations.is_empty();
            let value = json!({
                "size": table.size(),
                "valid": valid,
                "violations": violations,
            });
            let text = if valid {
                format!("valid hemiring table with {} elements", table.size())
            } else {
                let mut lines = vec![format!("{} violations:", violations.len())];
                for v in &violations {
                    lines.push(format!("  {} at {:?}", v.law, v.witness));
                }
                lines.join("\n")
            };
            emit(format, &value, text);
            Ok(if valid { 0 } else { 1 })
        }
        SemiringCmd::Simple { src } => {
            let table = src.load()?;
            let simple = is_congruence_simple(&table).map_err(err)?;
            emit(
                format,
                &json!({ "size": table.size(), "congruence_simple": simple }),
                format!("congruence-simple: {simple}"),
            );
            Ok(if simple { 0 } else { 1 })
        }
    }
}

// ---------------------------------------------------------------------------
// groupoid

fn run_groupoid(format: Format, cmd: &GroupoidCmd) -> CliResult {
    match cmd {
        GroupoidCmd::Analyze { src } => {
            let g = src.load()?;
            let a = structural_analysis(&g);
            let orbit_names: Vec<Vec<&String>> = a
                .orbits
                .iter()
                .map(|o| o.iter().map(|&u| &g.arrows[u]).collect())
                .collect();
            let t_names: Vec<&String> = a
                .trivial_isotropy_units
                .iter()
                .map(|&u| &g.arrows[u])
                .collect();
            let iso_orders: Vec<usize> = a.isotropy.iter().map(|i| i.arrows.len()).collect();
            let value = json!({
                "arrows": g.size(),
                "units": g.units.len(),
                "orbits": orbit_names,
                "isotropy_orders": iso_orders,
                "trivial_isotropy_units": t_names,
                "minimal": a.is_minimal,
                "effective": a.is_effective,
            });
            let text = format!(
                "{} arrows, {} units, {} orbits, isotropy orders {:?}\nminimal: {}, effective: {}, T = {:?}",
                g.size(),
                g.units.len(),
                a.orbits.len(),
                iso_orders,
                a.is_minimal,
                a.is_effective,
                t_names
            );
            emit(format, &value, text);
            Ok(0)
        }
        GroupoidCmd::Decompose { src } => {
            let g = src.load()?;
            let d = decompose(&g);
            let report = verify_decomposition(&g, &d);
            let shape = decomposition_shape(&d);
            let blocks: Vec<Value> = d
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "units": b.units.iter().map(|&u| &g.arrows[u]).collect::<Vec<_>>(),
                        "isotropy_order": b.isotropy.arrows.len(),
                    })
                })
                .collect();
            let value = json!({
                "shape": shape,
                "verified": report.passed(),
                "failures": report.failures,
                "blocks": blocks,
            });
            let text = if report.passed() {
                format!("A_S(G) ≅ {shape} (verified on all basis pairs)")
            } else {
                format!("decomposition failed: {:?}", report.failures)
            };
            emit(format, &value, text);
            Ok(if report.passed() { 0 } else { 1 })
        }
        GroupoidCmd::Simple { src, semiring, cap } => {
            let g = src.load()?;
            let table = match FiniteAlgebraTable::builtin(semiring) {
                Some(t) => t,
                None => {
                    let t: FiniteAlgebraTable =
                        serde_json::from_str(&read_file(&PathBuf::from(semiring))?)
                            .map_err(err)?;
                    t.check_well_formed().map_err(err)?;
                    t
                }
            };
            let report = simplicity_check(&g, &Arc::new(table), *cap).map_err(err)?;
            let value = json!({
                "by_theorem": report.by_theorem,
                "by_bruteforce": report.by_bruteforce,
                "agree": report.agree(),
                "minimal": report.is_minimal,
                "effective": report.is_effective,
            });
            let text = format!(
                "theorem route: {}, brute force: {} (minimal: {}, effective: {})",
                report.by_theorem, report.by_bruteforce, report.is_minimal, report.is_effective
            );
            emit(format, &value, text);
            Ok(if report.by_bruteforce && report.agree() {
                0
            } else {
                1
            })
        }
    }
}

// ---------------------------------------------------------------------------
// selfsim

fn is_state_cap(msg: &str) -> bool {
    msg.contains("state cap")
}

fn run_selfsim(format: Format, cmd: &SelfsimCmd) -> CliResult {
    match cmd {
        SelfsimCmd::Act {
            src,
            element,
            path,
            xi,
        } => {
            let sys = src.load()?;
            let g = parse_element(&sys, element).map_err(err)?;
            match (path, xi) {
                (Some(p), None) => {
                    let p = parse_path(&sys, p).map_err(err)?;
                    let image = sys.act_on_path(&g, &p);
                    emit(
                        format,
                        &json!({ "image": image.display(&sys.graph) }),
                        image.display(&sys.graph),
                    );
                    Ok(0)
                }
                (None, Some(x)) => {
                    let x = parse_xi(&sys, x).map_err(err)?;
                    match sys.act_on_infinite(&g, &x) {
                        Ok(image) => {
                            emit(
                                format,
                                &json!({ "image": image.display(&sys.graph) }),
                                image.display(&sys.graph),
                            );
                            Ok(0)
                        }
                        Err(e) if is_state_cap(&e.to_string()) => {
                            emit(format, &json!({ "image": null, "verdict": "unknown" }),
                                 format!("unknown: {e}"));
                            Ok(2)
                        }
                        Err(e) => Err(err(e)),
                    }
                }
                _ => Err("exactly one of --path and --xi is required".into()),
            }
        }
        SelfsimCmd::Cocycle { src, element, path } => {
            let sys = src.load()?;
            let g = parse_element(&sys, element).map_err(err)?;
            let p = parse_path(&sys, path).map_err(err)?;
            let section = sys.cocycle(&g, &p);
            let rendered = sys.display_element(&section);
            emit(format, &json!({ "section": rendered }), rendered.clone());
            Ok(0)
        }
        SelfsimCmd::Sfp {
            src,
            element,
            depth,
        } => {
            let sys = src.load()?;
            let g = parse_element(&sys, element).map_err(err)?;
            match sys.minimal_strongly_fixed(&g, *depth) {
                Ok(paths) => {
                    let rendered: Vec<String> =
                        paths.iter().map(|p| p.display(&sys.graph)).collect();
                    let text = if rendered.is_empty() {
                        "no strongly fixed paths up to depth".into()
                    } else {
                        rendered.join("\n")
                    };
                    emit(format, &json!({ "paths": rendered, "depth": depth }), text);
                    Ok(0)
                }
                Err(e) if is_state_cap(&e.to_string()) => {
                    emit(format, &json!({ "paths": null, "verdict": "unknown" }),
                         format!("unknown: {e}"));
                    Ok(2)
                }
                Err(e) => Err(err(e)),
            }
        }
        SelfsimCmd::Equal { src, lhs, rhs } => {
            let sys = src.load()?;
            let g = parse_element(&sys, lhs).map_err(err)?;
            let h = parse_element(&sys, rhs).map_err(err)?;
            match sys.equal(&g, &h) {
                Ok(eq) => {
                    emit(format, &json!({ "equal": eq }), format!("equal: {eq}"));
                    Ok(if eq { 0 } else { 1 })
                }
                Err(e) if is_state_cap(&e.to_string()) => {
                    emit(format, &json!({ "equal": null, "verdict": "unknown" }),
                         format!("unknown: {e}"));
                    Ok(2)
                }
                Err(e) => Err(err(e)),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// tight

fn path_from_value(sys: &SelfSimilarSystem, v: &Value, field: &str) -> Result<PathWord, String> {
    let literal = match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| format!("{field}: expected strings"))
            })
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        _ => return Err(format!("{field}: expected a string or an array of edge ids")),
    };
    if literal.is_empty() {
        return Err(format!("{field}: empty path needs a vertex name"));
    }
    parse_path(sys, &literal).map_err(err)
}

fn triple_from_value(sys: &SelfSimilarSystem, v: &Value) -> Result<Triple, String> {
    let obj = v
        .as_object()
        .ok_or("expected a triple object {\"alpha\":…, \"g\":…, \"beta\":…}")?;
    let alpha = path_from_value(
        sys,
        obj.get("alpha").ok_or("triple is missing \"alpha\"")?,
        "alpha",
    )?;
    let beta = path_from_value(
        sys,
        obj.get("beta").ok_or("triple is missing \"beta\"")?,
        "beta",
    )?;
    let g_literal = match obj.get("g").ok_or("triple is missing \"g\"")? {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts = items
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| "g: expected strings".to_string())
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        }
        _ => return Err("g: expected a string or an array of letters".into()),
    };
    let g = parse_element(sys, &g_literal).map_err(err)?;
    Triple::new(sys, alpha, g, beta).map_err(err)
}

fn triple_to_value(sys: &SelfSimilarSystem, t: &Triple) -> Value {
    match t {
        Triple::Zero => Value::Null,
        Triple::Elem { alpha, g, beta } => {
            let letters: Vec<String> = sys
                .display_element(g)
                .split('*')
                .map(str::to_owned)
                .collect();
            json!({
                "alpha": alpha.display(&sys.graph).split(',').collect::<Vec<_>>(),
                "g": letters,
                "beta": beta.display(&sys.graph).split(',').collect::<Vec<_>>(),
            })
        }
    }
}

fn parse_triple_arg(sys: &SelfSimilarSystem, text: &str) -> Result<Triple, String> {
    let v: Value = serde_json::from_str(text).map_err(err)?;
    triple_from_value(sys, &v)
}

fn parse_open_set(sys: &SelfSimilarSystem, text: &str) -> Result<OpenSetElement, String> {
    let v: Value = serde_json::from_str(text).map_err(err)?;
    let items = v.as_array().ok_or("expected a JSON array of triples")?;
    let mut bisections = Vec::new();
    for item in items {
        let triple = triple_from_value(sys, item)?;
        let b = match item.get("cylinder") {
            Some(c) => {
                let gamma = path_from_value(sys, c, "cylinder")?;
                BasicBisection::theta(sys, triple, &gamma).map_err(err)?
            }
            None => BasicBisection::whole(triple),
        };
        if let Some(b) = b {
            bisections.push(b);
        }
    }
    Ok(OpenSetElement::from_bisections(bisections))
}

fn open_set_to_value(sys: &SelfSimilarSystem, x: &OpenSetElement) -> Value {
    Value::Array(
        x.bisections
            .iter()
            .map(|b| triple_to_value(sys, &b.triple))
            .collect(),
    )
}

fn run_tight(format: Format, cmd: &TightCmd) -> CliResult {
    match cmd {
        TightCmd::Mul { src, lhs, rhs } => {
            let sys = src.load()?;
            let s = parse_triple_arg(&sys, lhs)?;
            let t = parse_triple_arg(&sys, rhs)?;
            let p = triple_multiply(&sys, &s, &t).map_err(err)?;
            emit(
                format,
                &json!({ "product": triple_to_value(&sys, &p) }),
                p.display(&sys),
            );
            Ok(0)
        }
        TightCmd::Product {
            src,
            lhs,
            rhs,
            depth,
        } => {
            let sys = src.load()?;
            let x = parse_open_set(&sys, lhs)?;
            let y = parse_open_set(&sys, rhs)?;
            let p = open_product(&sys, &x, &y, *depth).map_err(err)?;
            let text = if p.is_empty() {
                "∅".into()
            } else {
                p.bisections
                    .iter()
                    .map(|b| b.display(&sys))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(format, &json!({ "product": open_set_to_value(&sys, &p) }), text);
            Ok(0)
        }
        TightCmd::Equal {
            src,
            lhs,
            rhs,
            depth,
        } => {
            let sys = src.load()?;
            let x = parse_open_set(&sys, lhs)?;
            let y = parse_open_set(&sys, rhs)?;
            let report = open_equal(&sys, &x, &y, *depth).map_err(err)?;
            emit(
                format,
                &json!({
                    "verdict": verdict_str(report.verdict),
                    "dense_agreement": report.dense_agreement,
                }),
                format!(
                    "equal: {} (dense agreement: {})",
                    verdict_str(report.verdict),
                    report.dense_agreement
                ),
            );
            Ok(verdict_code(report.verdict))
        }
        TightCmd::Fs {
            src,
            element,
            xi,
            depth,
        } => {
            let sys = src.load()?;
            let s = parse_triple_arg(&sys, element)?;
            let point = parse_xi(&sys, xi).map_err(err)?;
            let (f, tf) = fixed_and_trivially_fixed(&sys, &s, &point, *depth).map_err(err)?;
            emit(
                format,
                &json!({ "fixed": verdict_str(f), "trivially_fixed": verdict_str(tf) }),
                format!(
                    "fixed: {}, trivially fixed: {}",
                    verdict_str(f),
                    verdict_str(tf)
                ),
            );
            Ok(if f == TernaryVerdict::Unknown || tf == TernaryVerdict::Unknown {
                2
            } else {
                0
            })
        }
        TightCmd::ConditionS {
            src,
            elements,
            samples,
            depth,
        } => {
            let sys = src.load()?;
            let v: Value = serde_json::from_str(elements).map_err(err)?;
            let items = v.as_array().ok_or("expected a JSON array of triples")?;
            let elems = items
                .iter()
                .map(|x| triple_from_value(&sys, x))
                .collect::<Result<Vec<_>, _>>()?;
            let points = samples
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_xi(&sys, s).map_err(err))
                .collect::<Result<Vec<_>, _>>()?;
            let report = condition_s_sample(&sys, &elems, &points, *depth).map_err(err)?;
            let mut text = format!("verdict: {}", verdict_str(report.verdict));
            for v in &report.violations {
                text.push_str(&format!("\nviolation: {v}"));
            }
            emit(format, &serde_json::to_value(&report).unwrap(), text);
            Ok(verdict_code(report.verdict))
        }
        TightCmd::Omega {
            src,
            xi,
            gs,
            m_max,
            alpha_depth,
        } => {
            let sys = src.load()?;
            let point = parse_xi(&sys, xi).map_err(err)?;
            let family = gs
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_element(&sys, s).map_err(err))
                .collect::<Result<Vec<_>, _>>()?;
            let report =
                omega_faithful_probe(&sys, &point, &family, *m_max, *alpha_depth).map_err(err)?;
            let mut text = format!(
                "hypothesis met: {}, verdict: {} ({})",
                verdict_str(report.hypothesis_met),
                verdict_str(report.verdict),
                report.note
            );
            if let Some(m) = report.witness_m {
                text.push_str(&format!("\nwitness m = {m}"));
            }
            if let Some(p) = &report.counterexample_prefix {
                text.push_str(&format!("\ncounterexample prefix: {p}"));
            }
            emit(format, &serde_json::to_value(&report).unwrap(), text);
            Ok(verdict_code(report.verdict))
        }
        TightCmd::Hausdorff { src, radius, depth } => {
            let sys = src.load()?;
            let report = hausdorff_probe(&sys, *radius, *depth).map_err(err)?;
            let mut lines = vec![format!("verdict: {}", verdict_str(report.verdict))];
            for e in &report.elements {
                lines.push(format!(
                    "  {}: counts {:?}{}",
                    e.element,
                    e.counts_at_checkpoints,
                    if e.closed { " (closed)" } else { "" }
                ));
            }
            emit(
                format,
                &serde_json::to_value(&report).unwrap(),
                lines.join("\n"),
            );
            Ok(verdict_code(report.verdict))
        }
    }
}

// ---------------------------------------------------------------------------
// accept

fn run_accept(format: Format, cmd: &AcceptCmd) -> CliResult {
    match cmd {
        AcceptCmd::Run => {
            let results = acceptance::run_all();
            let all = results.iter().all(|r| r.passed);
            match format {
                Format::Text => {
                    for r in &results {
                        println!("{}", r.line());
                    }
                }
                Format::Json => {
                    let value: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            json!({
                                "index": r.index,
                                "name": r.name,
                                "passed": r.passed,
                                "millis": r.millis as u64,
                                "detail": r.detail,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
            }
            Ok(if all { 0 } else { 1 })
        }
    }
}
