//! Command-line front end. Trees come in as edge lists on stdin or `--file`;
//! results go out as JSON, edge lists or DOT.
//!
//! Exit codes: 0 ok, 1 invalid input, 2 excluded instance (the tree is a
//! stated exception), 3 internal assertion.

use std::io::{Read, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coloring::{
    color4_all3, color5_all4, color6_all5, color_star_isolating, search_coloring, ColorError,
    ColoringResult,
};
use crate::constructive::{independent_allk_set, BoundResult, ConstructiveError};
use crate::dp::zeta_k;
use crate::families::{
    gen_counterexample_hk, gen_extremal, gen_gap_gadget, Attachment, ExtremalRecipe, FamilyError,
    GapGadgetRecipe,
};
use crate::oracle::{
    enumerate_trees, enumerate_up_to, min_isolating_set, random_tree, OracleError,
};
use crate::predicates::{certify_coloring, is_independent, is_isolating, Coloring, IsolationSpec};
use crate::set::VertexSet;
use crate::suite::CRITERIA;
use crate::tree::{parse_edge_list, Tree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_EXCEPTION: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "iso-trees",
    version,
    about = "Isolating sets and colorings of trees"
)]
struct Cli {
    /// Read the tree from this file instead of stdin.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Emit Graphviz DOT instead of JSON or edge lists.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

/// Which structures a remnant must avoid. Defaults to all components of
/// order `k` or more.
#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    k: Option<usize>,
    /// Avoid `K_{1,k-1}` instead.
    #[arg(long, conflicts_with_all = ["path", "pattern"])]
    star: bool,
    /// Avoid `P_k` instead.
    #[arg(long, conflicts_with = "pattern")]
    path: bool,
    /// Avoid copies of the tree in this edge-list file.
    #[arg(long)]
    pattern: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Dp,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Extremal,
    Hk,
    Gap,
    Random,
    Path,
    Star,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum (independent) isolating set.
    Solve {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        independent: bool,
        #[arg(long, value_enum, default_value = "dp")]
        engine: Engine,
    },
    /// Independent all-k-isolating set within floor(n / (k + 1)), with its case trace.
    Bound {
        #[arg(long)]
        k: usize,
    },
    /// Partition into k + 1 isolating classes.
    Color {
        #[arg(long)]
        k: usize,
        /// Classes isolate `K_{1,k-1}` rather than all order-k components.
        #[arg(long)]
        star: bool,
        /// Exhaustive search with `--l` colors instead of a constructor.
        #[arg(long, requires = "l")]
        search: bool,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Certify a set or a coloring.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated vertex ids.
        #[arg(long, conflicts_with_all = ["coloring", "coloring_file"])]
        set: Option<String>,
        /// Comma-separated colors, one per vertex.
        #[arg(long, conflicts_with = "coloring_file")]
        coloring: Option<String>,
        /// JSON `{"num_colors": l, "colors": [...]}` or a bare color array.
        #[arg(long)]
        coloring_file: Option<PathBuf>,
        /// Number of colors for `--coloring`; defaults to the largest used.
        #[arg(long)]
        l: Option<usize>,
        /// Also require the set to be independent.
        #[arg(long)]
        independent: bool,
    },
    /// Generate a tree.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        /// Order for random, path and star trees.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of pattern copies per side of the gap gadget.
        #[arg(long, default_value_t = 2)]
        b: usize,
        /// JSON recipe: an extremal recipe, or a gap recipe.
        #[arg(long)]
        recipe: Option<PathBuf>,
    },
    /// All non-isomorphic trees of one order, or up to it with `--up-to`.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        up_to: bool,
    },
    /// Run the acceptance checks, one line each.
    Suite {
        /// Run only this check (1-based).
        #[arg(long)]
        only: Option<usize>,
    },
}

/// Outcome of a command other than success.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Exception(serde_json::Value),
    Assertion(String),
    /// Failed checks, reported on stdout.
    Findings(String),
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<ColorError> for Failure {
    fn from(e: ColorError) -> Self {
        match e {
            ColorError::Assertion(_) => Failure::Assertion(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ConstructiveError> for Failure {
    fn from(e: ConstructiveError) -> Self {
        match e {
            ConstructiveError::OrderEqualsK(n) => {
                Failure::Exception(json!({ "exception": "ORDER_EQUALS_K", "n": n }))
            }
            ConstructiveError::KTooSmall(_) => Failure::Invalid(e.to_string()),
            ConstructiveError::Assertion(_) => Failure::Assertion(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome =
        catch_unwind(AssertUnwindSafe(|| dispatch(&cli, stdin))).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(Failure::Assertion(msg))
        });
    match outcome {
        Ok(text) => {
            let _ = write!(stdout, "{text}");
            EXIT_OK
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Exception(value)) => {
            let _ = writeln!(stdout, "{value}");
            EXIT_EXCEPTION
        }
        Err(Failure::Assertion(msg)) => {
            let _ = writeln!(stderr, "internal assertion: {msg}");
            EXIT_ASSERTION
        }
        Err(Failure::Findings(text)) => {
            let _ = write!(stdout, "{text}");
            EXIT_ASSERTION
        }
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    match &cli.command {
        Command::Solve {
            spec,
            independent,
            engine,
        } => {
            let t = read_tree(cli, stdin)?;
            solve(cli, &t, spec, *independent, *engine)
        }
        Command::Bound { k } => {
            let t = read_tree(cli, stdin)?;
            bound(cli, &t, *k)
        }
        Command::Color { k, star, search, l } => {
            let t = read_tree(cli, stdin)?;
            color(cli, &t, *k, *star, if *search { *l } else { None })
        }
        Command::Verify {
            spec,
            set,
            coloring,
            coloring_file,
            l,
            independent,
        } => {
            let t = read_tree(cli, stdin)?;
            verify(&t, spec, set, coloring, coloring_file, *l, *independent)
        }
        Command::Gen {
            family,
            k,
            n,
            seed,
            b,
            recipe,
        } => {
            let t = generate(*family, *k, *n, *seed, *b, recipe.as_deref())?;
            Ok(if cli.dot {
                t.to_dot(None)
            } else {
                t.to_edge_list()
            })
        }
        Command::Enum { n, up_to } => {
            let trees = if *up_to {
                enumerate_up_to(*n)?
            } else {
                enumerate_trees(*n)?
            };
            let mut out = String::new();
            for (i, t) in trees.iter().enumerate() {
                out.push_str(&format!("# tree {i} order {}\n", t.n()));
                out.push_str(&t.to_edge_list());
            }
            Ok(out)
        }
        Command::Suite { only } => suite(*only),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn read_tree(cli: &Cli, stdin: &mut dyn Read) -> Result<Tree, Failure> {
    let text = match &cli.file {
        Some(path) => read_text(path)?,
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Invalid(format!("stdin: {e}")))?;
            s
        }
    };
    parse_edge_list(&text).map_err(|e| Failure::Invalid(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("results serialize");
    s.push('\n');
    s
}

fn resolve_spec(spec: &SpecArgs) -> Result<IsolationSpec, Failure> {
    if let Some(path) = &spec.pattern {
        let f = parse_edge_list(&read_text(path)?).map_err(|e| Failure::Invalid(e.to_string()))?;
        return Ok(IsolationSpec::Pattern(f));
    }
    let k = spec
        .k
        .ok_or_else(|| Failure::Invalid("--k is required".into()))?;
    let out = if spec.star {
        IsolationSpec::Star(k)
    } else if spec.path {
        IsolationSpec::path(k)
    } else {
        IsolationSpec::AllK(k)
    };
    out.validate().map_err(Failure::Invalid)?;
    Ok(out)
}

/// Marks set members with class 1 for DOT output.
fn set_dot(t: &Tree, s: &VertexSet) -> String {
    let marks: Vec<usize> = (0..t.n()).map(|v| usize::from(s.contains(v))).collect();
    t.to_dot(Some(&marks))
}

fn solve(cli: &Cli, t: &Tree, spec: &SpecArgs, independent: bool, engine: Engine) -> Outcome {
    let spec = resolve_spec(spec)?;
    let engine = match (&spec, engine) {
        (IsolationSpec::AllK(_), e) => e,
        (_, Engine::Oracle) => Engine::Oracle,
        _ => {
            return Err(Failure::Invalid(
                "the exact DP handles all-k isolation only; use --engine oracle".into(),
            ))
        }
    };
    let k = spec.forbidden_order();
    let result = match engine {
        Engine::Dp => zeta_k(t, k, independent),
        Engine::Oracle => min_isolating_set(t, &spec, independent)?,
        Engine::Both => {
            let dp = zeta_k(t, k, independent);
            let oracle = min_isolating_set(t, &spec, independent)?;
            if dp.value != oracle.value {
                return Err(Failure::Assertion(format!(
                    "engines disagree: dp {}, oracle {}",
                    dp.value, oracle.value
                )));
            }
            dp
        }
    };
    if !is_isolating(t, &result.witness, &spec).valid
        || (independent && !is_independent(t, &result.witness))
    {
        return Err(Failure::Assertion("witness does not certify".into()));
    }
    Ok(if cli.dot {
        set_dot(t, &result.witness)
    } else {
        to_json(&result)
    })
}

fn bound(cli: &Cli, t: &Tree, k: usize) -> Outcome {
    if k == 0 {
        return Err(Failure::Invalid("k must be at least 1".into()));
    }
    if k == 1 {
        // Independent domination: the exact optimum, which meets n/2 for n >= 2.
        if t.n() == 1 {
            return Err(ConstructiveError::OrderEqualsK(1).into());
        }
        let r = zeta_k(t, 1, true);
        return Ok(if cli.dot {
            set_dot(t, &r.witness)
        } else {
            to_json(&BoundResult {
                size: r.value,
                set: r.witness,
                bound: t.n() / 2,
                trace: Vec::new(),
            })
        });
    }
    let r = independent_allk_set(t, k)?;
    Ok(if cli.dot {
        set_dot(t, &r.set)
    } else {
        to_json(&r)
    })
}

#[derive(Serialize)]
struct ColorOutput<'a> {
    num_colors: usize,
    colors: &'a [usize],
    spec: &'a IsolationSpec,
    certificate: crate::predicates::Certificate,
}

fn emit_coloring(cli: &Cli, t: &Tree, c: &Coloring, spec: &IsolationSpec) -> Outcome {
    let certificate = certify_coloring(t, c, spec);
    if !certificate.valid {
        return Err(Failure::Assertion("coloring does not certify".into()));
    }
    Ok(if cli.dot {
        t.to_dot(Some(&c.colors))
    } else {
        to_json(&ColorOutput {
            num_colors: c.num_colors,
            colors: &c.colors,
            spec,
            certificate,
        })
    })
}

fn color(cli: &Cli, t: &Tree, k: usize, star: bool, search: Option<usize>) -> Outcome {
    if let Some(l) = search {
        let spec = if star {
            IsolationSpec::Star(k)
        } else {
            IsolationSpec::AllK(k)
        };
        spec.validate().map_err(Failure::Invalid)?;
        return match search_coloring(t, l, &spec)? {
            Some(c) => emit_coloring(cli, t, &c, &spec),
            None => Ok(to_json(
                &json!({ "found": false, "num_colors": l, "spec": spec }),
            )),
        };
    }
    let result: ColoringResult = match (k, star) {
        (_, true) | (2, _) => color_star_isolating(t, k)?,
        (3, _) => color4_all3(t)?,
        (4, _) => color5_all4(t)?,
        (5, _) => color6_all5(t)?,
        _ => {
            return Err(Failure::Invalid(format!(
                "no constructor for all-{k} isolation; use --star or --search"
            )))
        }
    };
    match (result.exception, &result.coloring) {
        (Some(tag), _) => Err(Failure::Exception(json!({ "exception": tag.as_str() }))),
        (None, Some(c)) => emit_coloring(cli, t, c, &result.spec),
        (None, None) => Err(Failure::Assertion("constructor returned nothing".into())),
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::Invalid(format!("bad number {s:?}")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn verify(
    t: &Tree,
    spec: &SpecArgs,
    set: &Option<String>,
    coloring: &Option<String>,
    coloring_file: &Option<PathBuf>,
    l: Option<usize>,
    independent: bool,
) -> Outcome {
    let spec = resolve_spec(spec)?;
    if let Some(text) = set {
        let members = parse_list(text)?;
        if let Some(&v) = members.iter().find(|&&v| v >= t.n()) {
            return Err(Failure::Invalid(format!("vertex {v} outside 0..{}", t.n())));
        }
        let s = VertexSet::from_iter(t.n(), members);
        let mut cert = is_isolating(t, &s, &spec);
        if independent && !is_independent(t, &s) {
            cert.valid = false;
            cert.violations.push(crate::predicates::Violation {
                kind: crate::predicates::ViolationKind::AdjacentPair,
                color: None,
                vertices: t
                    .edges()
                    .into_iter()
                    .find(|&(u, v)| s.contains(u) && s.contains(v))
                    .map(|(u, v)| vec![u, v])
                    .unwrap_or_default(),
            });
        }
        return Ok(to_json(&cert));
    }
    let c = match (coloring, coloring_file) {
        (Some(text), _) => {
            let colors = parse_list(text)?;
            let l = l.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(1));
            Coloring::new(l, colors).map_err(|e| Failure::Invalid(e.to_string()))?
        }
        (None, Some(path)) => {
            let text = read_text(path)?;
            match serde_json::from_str::<Coloring>(&text) {
                Ok(c) => c,
                Err(_) => {
                    let colors: Vec<usize> = serde_json::from_str(&text)
                        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
                    let l = l.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(1));
                    Coloring::new(l, colors).map_err(|e| Failure::Invalid(e.to_string()))?
                }
            }
        }
        (None, None) => {
            return Err(Failure::Invalid(
                "give --set, --coloring or --coloring-file".into(),
            ))
        }
    };
    Ok(to_json(&certify_coloring(t, &c, &spec)))
}

fn generate(
    family: Family,
    k: Option<usize>,
    n: Option<usize>,
    seed: u64,
    b: usize,
    recipe: Option<&Path>,
) -> Result<Tree, Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::Invalid(format!("--{name} is required")))
    };
    let recipe_json = |path: &Path| -> Result<String, Failure> { read_text(path) };
    Ok(match family {
        Family::Extremal => {
            let r: ExtremalRecipe = match recipe {
                Some(path) => serde_json::from_str(&recipe_json(path)?)
                    .map_err(|e| Failure::Invalid(format!("recipe: {e}")))?,
                None => {
                    // Path base of order n, a path of order k at each vertex.
                    let k = need(k, "k")?;
                    let m = n.unwrap_or(1);
                    ExtremalRecipe::uniform(
                        Tree::path(m),
                        Attachment {
                            tree: Tree::path(k),
                            root: 0,
                        },
                    )
                }
            };
            gen_extremal(&r)?
        }
        Family::Hk => gen_counterexample_hk(need(k, "k")?)?.tree,
        Family::Gap => {
            let r: GapGadgetRecipe = match recipe {
                Some(path) => serde_json::from_str(&recipe_json(path)?)
                    .map_err(|e| Failure::Invalid(format!("recipe: {e}")))?,
                None => GapGadgetRecipe {
                    pattern: Tree::path(2),
                    root: 0,
                    b,
                },
            };
            gen_gap_gadget(&r)?
        }
        Family::Random => random_tree(need(n, "n")?.max(1), seed),
        Family::Path => Tree::path(need(n, "n")?.max(1)),
        Family::Star => Tree::star(need(n, "n")?.max(2) - 1),
    })
}

fn suite(only: Option<usize>) -> Outcome {
    let picked: Vec<_> = match only {
        Some(i) if (1..=CRITERIA.len()).contains(&i) => vec![CRITERIA[i - 1]],
        Some(i) => return Err(Failure::Invalid(format!("no check {i}"))),
        None => CRITERIA.to_vec(),
    };
    let mut out = String::new();
    let mut failed = 0;
    for check in picked {
        let report = check();
        failed += usize::from(!report.passed);
        out.push_str(&format!("{report}\n"));
    }
    if failed > 0 {
        return Err(Failure::Findings(out));
    }
    Ok(out)
}
