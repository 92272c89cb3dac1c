use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cubefix::action::{classify, fix_set, orbit, translation_length_estimate, Budget, Classification, OrbitResult};
use cubefix::complex::MedianCheck;
use cubefix::hyperplane::{hyperplanes_between, HyperplaneError};
use cubefix::io::{
    classification_to_json, cube_to_json, export_dot, hyperplane_list_from_json, hyperplane_to_json,
    outcome_to_json, run_fuzz, triple_to_json, vertex_from_arg, vertex_to_json, word_to_json, ActionDocument,
    ComplexDocument, Overlays, Suite,
};
use cubefix::triple::find_disjoint_triple;
use cubefix::{fixed_point_or_witness, CubeComplex, FixedPointOutcome, Word};

#[derive(Parser)]
#[command(name = "cubefix", version, about = "Hyperplanes, fixed points and hyperbolic witnesses on median graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    budget_power: Option<u32>,
    #[arg(long, global = true)]
    budget_radius: Option<usize>,
    #[arg(long, global = true)]
    orbit_cap: Option<usize>,
    /// Skip the median check when loading finite complexes.
    #[arg(long, global = true)]
    unchecked: bool,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex document describes a median graph.
    Verify { complex: PathBuf },
    /// Size, dimension and hyperplane count.
    Info { complex: PathBuf },
    Distance { complex: PathBuf, x: String, y: String },
    Median { complex: PathBuf, x: String, y: String, z: String },
    /// Hyperplanes separating two vertices.
    Hyperplanes { complex: PathBuf, x: String, y: String },
    /// Three pairwise disjoint hyperplanes in a JSON list of hyperplanes.
    Prop1 { complex: PathBuf, family: PathBuf },
    /// Certify a group element as elliptic or hyperbolic.
    Classify {
        complex: PathBuf,
        action: PathBuf,
        /// Generator names separated by commas; the empty string is the identity.
        word: String,
        /// Also report d(v, g^n v) / n.
        #[arg(long)]
        estimate: Option<usize>,
    },
    /// Global fixed cube or hyperbolic witness.
    FixedPoint {
        complex: PathBuf,
        action: PathBuf,
        #[arg(long)]
        power: Option<u32>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Vertices and cubes fixed by a set of generators (all by default).
    FixSet {
        complex: PathBuf,
        action: PathBuf,
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
    },
    /// Orbit of the base vertex, or of --vertex.
    Orbit {
        complex: PathBuf,
        action: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Run invariant suites on a generated corpus.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Comma-separated subset of helly, prop1, theorem_a, theta_oracle, distance_count.
        #[arg(long, value_delimiter = ',', default_value = "helly,prop1,theorem_a,theta_oracle,distance_count")]
        suites: Vec<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz text for a finite complex.
    ExportDot {
        complex: PathBuf,
        /// Colour edges by hyperplane.
        #[arg(long)]
        hyperplanes: bool,
        /// Highlight the fixed cube of this action.
        #[arg(long)]
        fixed_cube: Option<PathBuf>,
        /// Mark the orbit of the base vertex under this action.
        #[arg(long)]
        orbit: Option<PathBuf>,
    },
}

const OK: u8 = 0;
const FINDING: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: INVALID,
            message: e.to_string(),
        }
    }
}

struct Output {
    code: u8,
    json: Value,
    text: String,
}

impl Output {
    fn new(code: u8, json: Value, text: impl Into<String>) -> Self {
        Output {
            code,
            json,
            text: text.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: INVALID,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_complex(path: &Path, global: &Global) -> Result<CubeComplex, Failure> {
    let doc = ComplexDocument::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(doc.build(!global.unchecked).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn load_action(path: &Path, x: &CubeComplex) -> Result<cubefix::GroupAction, Failure> {
    let doc = ActionDocument::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(doc.build(x).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn budget(global: &Global) -> Budget {
    let d = Budget::default();
    Budget {
        power: global.budget_power.unwrap_or(d.power),
        radius: global.budget_radius.unwrap_or(d.radius),
        orbit_cap: global.orbit_cap.unwrap_or(d.orbit_cap),
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match cli.command {
        Command::Verify { complex } => {
            let doc = ComplexDocument::parse(&read(&complex)?)?;
            let x = doc.build(false)?;
            let check = match x.as_finite() {
                Some(f) => f.verify_median_graph(),
                None => MedianCheck::Ok,
            };
            Ok(match check {
                MedianCheck::Ok => Output::new(OK, json!({"median": true}), "median graph: ok"),
                MedianCheck::Disconnected => {
                    Output::new(FINDING, json!({"median": false, "reason": "disconnected"}), "disconnected")
                }
                MedianCheck::Violation { triple, medians } => {
                    let f = x.as_finite().expect("finite");
                    let names = [f.name(triple.0), f.name(triple.1), f.name(triple.2)];
                    Output::new(
                        FINDING,
                        json!({"median": false, "triple": names, "medians": medians}),
                        format!("not median: {names:?} has {medians} medians"),
                    )
                }
            })
        }
        Command::Info { complex } => {
            let x = load_complex(&complex, g)?;
            let mut info = json!({"backend": format!("{:?}", x.backend()).to_lowercase(), "dimension": x.dimension()});
            let mut text = format!("backend {:?}, dimension {}", x.backend(), x.dimension());
            if let Some(f) = x.as_finite() {
                let mut by_dim = vec![0usize; x.dimension() + 1];
                for c in f.cubes() {
                    by_dim[c.dim()] += 1;
                }
                info["vertices"] = json!(f.len());
                info["edges"] = json!(f.edges().len());
                info["hyperplanes"] = json!(f.hyperplane_count());
                info["cubes_by_dimension"] = json!(by_dim);
                text += &format!(
                    ", {} vertices, {} edges, {} hyperplanes, cubes by dimension {by_dim:?}",
                    f.len(),
                    f.edges().len(),
                    f.hyperplane_count()
                );
            }
            Ok(Output::new(OK, info, text))
        }
        Command::Distance { complex, x: a, y: b } => {
            let x = load_complex(&complex, g)?;
            let (a, b) = (vertex_from_arg(&x, &a)?, vertex_from_arg(&x, &b)?);
            let d = x.distance(&a, &b);
            Ok(Output::new(OK, json!({"distance": d}), d.to_string()))
        }
        Command::Median { complex, x: a, y: b, z: c } => {
            let x = load_complex(&complex, g)?;
            let (a, b, c) = (vertex_from_arg(&x, &a)?, vertex_from_arg(&x, &b)?, vertex_from_arg(&x, &c)?);
            let m = x.median(&a, &b, &c)?;
            Ok(Output::new(OK, json!({"median": vertex_to_json(&x, &m)}), x.label(&m)))
        }
        Command::Hyperplanes { complex, x: a, y: b } => {
            let x = load_complex(&complex, g)?;
            let (a, b) = (vertex_from_arg(&x, &a)?, vertex_from_arg(&x, &b)?);
            let hs = hyperplanes_between(&x, &a, &b);
            let text = hs.iter().map(|h| h.to_string()).collect::<Vec<_>>().join("\n");
            let list: Vec<Value> = hs.iter().map(|h| hyperplane_to_json(&x, h)).collect();
            Ok(Output::new(OK, json!({"count": hs.len(), "hyperplanes": list}), text))
        }
        Command::Prop1 { complex, family } => {
            let x = load_complex(&complex, g)?;
            let hs = hyperplane_list_from_json(&x, &read(&family)?)?;
            match find_disjoint_triple(&x, &hs) {
                Ok(t) => {
                    let text = format!("{}, {}, {}", t.triple[0], t.triple[1], t.triple[2]);
                    Ok(Output::new(OK, triple_to_json(&x, &t), text))
                }
                Err(HyperplaneError::PreconditionViolated(m)) => Err(Failure {
                    code: INVALID,
                    message: m,
                }),
                Err(e) => Ok(Output::new(FINDING, json!({"error": e.to_string()}), e.to_string())),
            }
        }
        Command::Classify {
            complex,
            action,
            word,
            estimate,
        } => {
            let x = load_complex(&complex, g)?;
            let act = load_action(&action, &x)?;
            let word = Word::parse(&word);
            let element = act.evaluate(&x, &word)?;
            let result = classify(&x, &element, act.base(), &budget(g));
            let mut out = json!({"word": word_to_json(&word), "classification": classification_to_json(&x, &result)});
            let mut text = match &result {
                Classification::Certified(c) => format!("{word}: {}", c.kind()),
                Classification::Undecided { .. } => format!("{word}: undecided"),
            };
            if let Some(n) = estimate {
                if n == 0 {
                    return Err("--estimate needs n >= 1".into());
                }
                let e = translation_length_estimate(&x, &element, act.base(), n);
                out["estimate"] = json!({"distance": e.distance, "n": e.n, "value": e.value()});
                text += &format!(", d(v, g^{n} v)/{n} = {}", e.value());
            }
            let code = if matches!(result, Classification::Undecided { .. }) { BUDGET } else { OK };
            Ok(Output::new(code, out, text))
        }
        Command::FixedPoint {
            complex,
            action,
            power,
            radius,
        } => {
            let x = load_complex(&complex, g)?;
            let act = load_action(&action, &x)?;
            let mut b = budget(g);
            b.power = power.unwrap_or(b.power);
            b.radius = radius.unwrap_or(b.radius);
            let outcome = fixed_point_or_witness(&x, &act, &b).map_err(|e| Failure {
                code: FINDING,
                message: e.to_string(),
            })?;
            let (code, text) = match &outcome {
                FixedPointOutcome::FixedPoint { cube } => {
                    let labels: Vec<String> = cube.vertices().iter().map(|v| x.label(v)).collect();
                    (OK, format!("fixed cube [{}]", labels.join(" ")))
                },
                FixedPointOutcome::HyperbolicWitness { word, .. } => (FINDING, format!("hyperbolic witness {word}")),
                FixedPointOutcome::Undecided { report } => (BUDGET, format!("undecided: {}", report.reason)),
            };
            Ok(Output::new(code, outcome_to_json(&x, &outcome), text))
        }
        Command::FixSet {
            complex,
            action,
            generators,
        } => {
            let x = load_complex(&complex, g)?;
            let act = load_action(&action, &x)?;
            let maps = if generators.is_empty() {
                act.generators().iter().map(|gen| gen.map.clone()).collect()
            } else {
                generators
                    .iter()
                    .map(|name| act.evaluate(&x, &Word(vec![name.clone()])))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let fixed = fix_set(&x, &maps)?;
            let vertices: Vec<Value> = fixed.vertices.iter().map(|v| vertex_to_json(&x, v)).collect();
            let cubes: Vec<Value> = fixed.cubes.iter().map(|c| cube_to_json(&x, c)).collect();
            let text = format!("{} fixed vertices, {} invariant cubes", vertices.len(), cubes.len());
            Ok(Output::new(OK, json!({"vertices": vertices, "cubes": cubes}), text))
        }
        Command::Orbit { complex, action, vertex } => {
            let x = load_complex(&complex, g)?;
            let act = load_action(&action, &x)?;
            let v = match vertex {
                Some(s) => vertex_from_arg(&x, &s)?,
                None => act.base().clone(),
            };
            match orbit(&x, &act, &v, budget(g).orbit_cap) {
                OrbitResult::Complete(all) => {
                    let list: Vec<Value> = all.iter().map(|w| vertex_to_json(&x, w)).collect();
                    let text = all.iter().map(|w| x.label(w)).collect::<Vec<_>>().join(" ");
                    Ok(Output::new(OK, json!({"complete": true, "orbit": list}), text))
                }
                OrbitResult::CapExceeded {
                    farthest,
                    word,
                    distance,
                    explored,
                } => Ok(Output::new(
                    BUDGET,
                    json!({
                        "complete": false,
                        "explored": explored,
                        "farthest": vertex_to_json(&x, &farthest),
                        "word": word_to_json(&word),
                        "distance": distance,
                    }),
                    format!("orbit exceeds {explored} vertices; {word} moves the vertex {distance}"),
                )),
            }
        }
        Command::Fuzz { cases, suites, out } => {
            let suites: Vec<Suite> = suites
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?;
            let report = run_fuzz(cases, g.seed, &suites)?;
            let code = if report.is_clean() { OK } else { FINDING };
            let text = report
                .suites
                .iter()
                .map(|s| format!("{}: {} passed, {} failed", s.suite, s.passed, s.failed))
                .collect::<Vec<_>>()
                .join("\n");
            if let Some(path) = out {
                fs::write(&path, report.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(Output::new(code, serde_json::to_value(&report)?, text))
        }
        Command::ExportDot {
            complex,
            hyperplanes,
            fixed_cube,
            orbit: orbit_action,
        } => {
            let x = load_complex(&complex, g)?;
            if !x.is_finite() {
                return Err("DOT export needs a finite complex".into());
            }
            let mut overlays = Overlays {
                hyperplanes,
                ..Overlays::default()
            };
            if let Some(path) = fixed_cube {
                let act = load_action(&path, &x)?;
                if let FixedPointOutcome::FixedPoint { cube } = fixed_point_or_witness(&x, &act, &budget(g))? {
                    overlays.cube = Some(cube);
                }
            }
            if let Some(path) = orbit_action {
                let act = load_action(&path, &x)?;
                if let OrbitResult::Complete(all) = orbit(&x, &act, act.base(), budget(g).orbit_cap) {
                    overlays.orbit = Some(all);
                }
            }
            let text = export_dot(&x, &overlays);
            Ok(Output::new(OK, json!({"dot": text}), text.trim_end()))
        }
    }
}

// A closed pipe (e.g. `| head`) is not an error for a query tool.
fn emit(line: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    match run(cli) {
        Ok(out) => {
            if json {
                emit(&out.json);
            } else if !out.text.is_empty() {
                emit(&out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            if json {
                emit(json!({"error": f.message}));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
