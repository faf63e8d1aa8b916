use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rslink::algebra::{
    instance_double_s3, instance_double_z2, instance_sweedler, instance_trivial, load_hopf, HopfData, Laurent, Matrix,
    Scalar,
};
use rslink::cyclic::{check_relations, cocyclic_relations, cyclic_relations, RelationReport};
use rslink::quantum::{check_compatibility, CompatibilityOptions, Quantum, TripleObserver};
use rslink::repcat::coend::check_coend;
use rslink::repcat::{coend_build, evaluate, KauffmanModel};
use rslink::slops::{
    delete, dual_direct, dual_generic, duplicate, insert_trivial, merge_behind, rotate_back, rotate_front, Conventions,
    DualOp, ObservedCocyclic, ObservedCyclic, Sampler, StringLinkClass,
};
use rslink::tangle::{linking_matrix, linking_matrix_of, parse, DiagramType, SlicedDiagram};
use rslink::Error;

const MAX_LEVEL: usize = 3;
const MAX_CROSSINGS: usize = 12;

/// Exit codes beyond 0 (success) and 2 (usage, as clap reports it).
mod code {
    pub const FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RANGE: u8 = 3;
    pub const TYPE: u8 = 4;
    pub const WIDTH: u8 = 5;
    pub const IO: u8 = 6;
}

#[derive(Parser)]
#[command(name = "rslink", version, about = "Operators and quantum invariants of ribbon string links")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a diagram file.
    Validate { path: PathBuf },
    /// Apply a (co)cyclic operator: `op <name> [index] <in> [out]`.
    ///
    /// Names: delta sigma tau d s t, and the duals ~delta ~sigma ~tau ~d ~s ~t.
    /// The output goes to stdout when no out path is given.
    Op {
        name: String,
        #[arg(num_args = 1..=3, required = true)]
        args: Vec<String>,
        /// Build dual operators from their own pictures instead of through the duality.
        #[arg(long)]
        direct: bool,
    },
    /// The universal quantum invariant of a string link as a JSON functional.
    Invariant {
        #[arg(long, default_value = "sweedler")]
        algebra: String,
        path: PathBuf,
    },
    /// Kauffman bracket matrix of a diagram.
    Bracket { path: PathBuf },
    /// Linking matrix, framings on the diagonal.
    Linking { path: PathBuf },
    /// Run a verification suite and print a JSON report.
    Check {
        suite: Suite,
        /// Highest level checked (level n has n+1 components).
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Crossing bound of the random string links.
        #[arg(long, default_value_t = 8)]
        crossings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// trivial, sweedler, double-z2, double-s3 or file:<path>.
        #[arg(long, default_value = "sweedler")]
        algebra: String,
        /// Run with a deliberately wrong construction, e.g. merge-reversed.
        #[arg(long)]
        mutate: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Cyclic,
    Cocyclic,
    Thm62,
    Coend,
    Hopf,
}

struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn new(code: u8, msg: impl Into<String>) -> Fail {
        Fail { code, msg: msg.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Index(_) => code::RANGE,
            Error::Boundary(_) => code::TYPE,
            Error::WidthCap { .. } => code::WIDTH,
            Error::Io(_) => code::IO,
            _ => code::FAILED,
        };
        Fail { code, msg: e.to_string() }
    }
}

type Out = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Validate { path } => validate(&path),
        Cmd::Op { name, args, direct } => op(&name, &args, direct),
        Cmd::Invariant { algebra, path } => invariant(&algebra, &path),
        Cmd::Bracket { path } => bracket(&path),
        Cmd::Linking { path } => linking(&path),
        Cmd::Check { suite, n, samples, crossings, seed, algebra, mutate } => {
            check(suite, n, samples, crossings, seed, &algebra, mutate.as_deref())
        }
    };
    match res {
        Ok(c) => ExitCode::from(c),
        Err(f) => {
            eprintln!("rslink: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::new(code::IO, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(DiagramType, SlicedDiagram), Fail> {
    Ok(parse(&read(path)?)?)
}

fn load_string_link(path: &Path) -> Result<StringLinkClass, Fail> {
    match load(path)? {
        (DiagramType::StringLink(_), d) => Ok(StringLinkClass::new(d)?),
        (DiagramType::Handle(_), _) => Err(Fail::new(code::TYPE, "expected a string link, found a handle")),
    }
}

fn emit(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    // a closed pipe is the reader's choice, not an error
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn validate(path: &Path) -> Out {
    match parse(&read(path)?) {
        Ok((ty, d)) => {
            let kind = match ty {
                DiagramType::StringLink(k) => format!("stringlink n={k}"),
                DiagramType::Handle(k) => format!("handle n={k}"),
            };
            println!("ok: {kind}, {} events, {} crossings, width {}", d.events().len(), d.crossing_count(), d.max_width());
            Ok(0)
        }
        Err(e) => Err(Fail::new(code::FAILED, e.to_string())),
    }
}

fn op(name: &str, args: &[String], direct: bool) -> Out {
    let indexed = !matches!(name, "tau" | "t" | "~tau" | "~t");
    let (idx, rest) = if indexed {
        let i = args
            .first()
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Fail::new(code::USAGE, format!("`{name}` needs an index before the input path")))?;
        (i, &args[1..])
    } else {
        (0, args)
    };
    let (input, output) = match rest {
        [i] => (i, None),
        [i, o] => (i, Some(o)),
        _ => return Err(Fail::new(code::USAGE, format!("`{name}` takes {} <in> [out]", if indexed { "<index>" } else { "" }))),
    };
    let t = load_string_link(Path::new(input))?;
    let out = match name {
        "delta" => insert_trivial(&t, idx)?,
        "sigma" => merge_behind(&t, idx)?,
        "tau" => rotate_back(&t)?,
        "d" => delete(&t, idx)?,
        "s" => duplicate(&t, idx)?,
        "t" => rotate_front(&t)?,
        _ => {
            let dop = DualOp::parse(name).ok_or_else(|| Fail::new(code::USAGE, format!("unknown operator `{name}`")))?;
            if direct {
                dual_direct(dop, &t, idx)?
            } else {
                dual_generic(dop, &t, idx)?
            }
        }
    };
    let text = out.text();
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail::new(code::IO, format!("{p}: {e}")))?,
        None => {
            use std::io::Write;
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    Ok(0)
}

fn algebra(sel: &str) -> Result<(String, HopfData), Fail> {
    let h = match sel {
        "trivial" => instance_trivial(),
        "sweedler" => instance_sweedler(),
        "double-z2" => instance_double_z2(),
        "double-s3" => instance_double_s3(),
        _ => match sel.strip_prefix("file:") {
            Some(p) => load_hopf(Path::new(p)).map_err(|e| Fail::new(code::FAILED, format!("algebra rejected: {e}")))?,
            None => return Err(Fail::new(code::USAGE, format!("unknown algebra `{sel}`"))),
        },
    };
    Ok((sel.to_string(), h))
}

fn invariant(sel: &str, path: &Path) -> Out {
    let t = load_string_link(path)?;
    let (name, h) = algebra(sel)?;
    let c = coend_build(&h)?;
    let q = Quantum::new(&c);
    let f = q.phi(&t.diagram)?;
    emit(&json!({
        "algebra": name,
        "dim": f.dim,
        "components": t.components(),
        "values": f.values.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "is_counit": f == q.conv_identity(t.components()),
        "digest": f.digest(),
    }));
    Ok(0)
}

/// `Some(c)` when `m = c·I`.
fn scalar_factor(m: &Matrix<Laurent>) -> Option<Laurent> {
    if m.rows != m.cols || m.rows == 0 {
        return None;
    }
    let c = m.at(0, 0).clone();
    let id = Matrix::<Laurent>::identity(m.rows).scale(&c);
    (*m == id).then_some(c)
}

fn bracket(path: &Path) -> Out {
    let (ty, d) = load(path)?;
    let k = match ty {
        DiagramType::StringLink(k) | DiagramType::Handle(k) => k,
    };
    let m = evaluate(&KauffmanModel, &d, &vec![0; k])?;
    let rows: Vec<Vec<String>> = (0..m.rows).map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect()).collect();
    emit(&json!({
        "rows": m.rows,
        "cols": m.cols,
        "matrix": rows,
        "factor": scalar_factor(&m).map(|c| c.to_string()),
        "digest": m.to_tensor().digest(),
    }));
    Ok(0)
}

fn linking(path: &Path) -> Out {
    let (ty, d) = load(path)?;
    let m = match ty {
        DiagramType::StringLink(_) => linking_matrix(&d)?,
        DiagramType::Handle(_) => linking_matrix_of(&d),
    };
    emit(&json!({ "matrix": m.to_json() }));
    Ok(0)
}

fn mutation(name: Option<&str>) -> Result<Conventions, Fail> {
    let Some(name) = name else { return Ok(Conventions::default()) };
    Conventions::mutations()
        .into_iter()
        .find(|(n, _)| n.replace(' ', "-") == name)
        .map(|m| m.1)
        .ok_or_else(|| {
            let known: Vec<String> = Conventions::mutations().iter().map(|m| m.0.replace(' ', "-")).collect();
            Fail::new(code::USAGE, format!("unknown mutation `{name}`; known: {}", known.join(", ")))
        })
}

fn relation_json(r: &RelationReport) -> (usize, usize, Value) {
    let checked = r.checked();
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "relation": f.relation,
                "instance": f.instance,
                "sample": f.sample,
                "input": f.witness,
                "lhs_digest": f.lhs_digest,
                "rhs_digest": f.rhs_digest,
            })
        })
        .collect();
    (checked, checked - r.failures.len(), Value::Array(failures))
}

fn check(suite: Suite, n: usize, samples: usize, crossings: usize, seed: u64, sel: &str, mutate: Option<&str>) -> Out {
    if n > MAX_LEVEL || crossings > MAX_CROSSINGS {
        return Err(Fail::new(
            code::USAGE,
            format!("outside the supported envelope: need --n <= {MAX_LEVEL} and --crossings <= {MAX_CROSSINGS}"),
        ));
    }
    let conv = mutation(mutate)?;
    let (name, h) = algebra(sel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = Sampler { max_crossings: crossings, extra_width: 1 };
    let (checked, passed, failures) = match suite {
        Suite::Cyclic | Suite::Cocyclic => {
            let c = coend_build(&h)?;
            let q = Quantum::new(&c);
            let obs = TripleObserver { q: &q };
            let r = match suite {
                Suite::Cyclic => {
                    check_relations(&ObservedCyclic { obs: &obs, sampler, conv }, &cyclic_relations(n), samples, &mut rng)
                }
                _ => check_relations(
                    &ObservedCocyclic { obs: &obs, sampler, conv },
                    &cocyclic_relations(n),
                    samples,
                    &mut rng,
                ),
            };
            relation_json(&r)
        }
        Suite::Thm62 => {
            let c = coend_build(&h)?;
            let q = Quantum::new(&c);
            let opts = CompatibilityOptions { n_max: n, samples, seed, sampler, conv, duals: true };
            let r = check_compatibility(&q, opts)?;
            let checked = r.identities.iter().map(|i| i.checked).sum();
            let passed = r.identities.iter().map(|i| i.passed).sum();
            let failures = r
                .identities
                .iter()
                .filter(|i| i.passed < i.checked)
                .map(|i| {
                    json!({
                        "relation": i.name,
                        "instance": format!("{} of {} failed", i.checked - i.passed, i.checked),
                        "input": i.witness,
                        "lhs_digest": i.lhs_digest,
                        "rhs_digest": i.rhs_digest,
                    })
                })
                .collect();
            (checked, passed, Value::Array(failures))
        }
        Suite::Coend => named_checks(check_coend(&coend_build(&h)?, samples, &mut rng)),
        Suite::Hopf => named_checks(h.check().results),
    };
    let command: Vec<String> = std::iter::once("rslink".to_string()).chain(std::env::args().skip(1)).collect();
    emit(&json!({
        "command": command.join(" "),
        "suite": format!("{suite:?}").to_lowercase(),
        "algebra": name,
        "mutation": mutate,
        "seed": seed,
        "counts": { "checked": checked, "passed": passed, "failed": checked - passed },
        "failures": failures,
    }));
    Ok(if checked == passed { 0 } else { code::FAILED })
}

fn named_checks(results: Vec<(String, bool)>) -> (usize, usize, Value) {
    let passed = results.iter().filter(|r| r.1).count();
    let failures = results.iter().filter(|r| !r.1).map(|r| json!({ "relation": r.0 })).collect();
    (results.len(), passed, Value::Array(failures))
}
