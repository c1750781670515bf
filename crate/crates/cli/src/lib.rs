//! The `domw` command line. [`run`] takes the argument vector and returns the
//! exit code together with everything meant for stdout and stderr, so the
//! binary is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 invalid input (usage, unreadable or malformed
//! files, rejected certificates, unsupported instance kinds), 2 theorem
//! violation or LP internal error (including failed `check` invariants), 3
//! instance too large for an oracle.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;

use domw_core::graph::{verify_certificate, Certificate, DominationFunction, WeightedGraph};
use domw_core::instances::{
    fixtures, gen_interval, gen_split, gen_subtrees, gen_tree, parse_certificate, parse_instance,
    write_certificate, write_instance, Instance,
};
use domw_core::interval::{order_by_right_endpoint, solve_interval};
use domw_core::oracles::{
    brute_gamma, brute_gamma_i, brute_rho, neighborhood_matrix, solve_fractional, OracleError,
    OracleLimits,
};
use domw_core::split::solve_split;
use domw_core::tree_edge::{solve_tree, TreeError};
use domw_core::TheoremViolation;

pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Parser)]
#[command(
    name = "domw",
    version,
    about = "Exact weighted domination with optimality certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an interval, tree-edges or split instance and print its certificate
    Solve { file: String },
    /// Run an exhaustive or LP oracle
    Oracle {
        which: OracleKind,
        file: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run the solver and every applicable oracle, one PASS/FAIL line per invariant
    Check {
        file: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print a fixed example instance
    Example { name: ExampleName },
    /// Print a seeded random instance
    Gen {
        kind: GenKind,
        #[arg(long)]
        seed: u64,
        /// Intervals
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 12)]
        max_coord: u64,
        /// Host tree edges
        #[arg(long, default_value_t = 9)]
        edges: usize,
        /// Clique side size
        #[arg(long, default_value_t = 4)]
        n_a: usize,
        /// Independent side size
        #[arg(long, default_value_t = 5)]
        n_b: usize,
        /// Edge probability between the sides, in percent
        #[arg(long, default_value_t = 50)]
        p: u64,
        /// Host tree vertices
        #[arg(long, default_value_t = 8)]
        tree_size: usize,
        #[arg(long, default_value_t = 9)]
        subtrees: usize,
        #[arg(long, default_value_t = 5)]
        max_w: u64,
    },
    /// Check a certificate against an instance
    Verify {
        instance: String,
        certificate: String,
    },
    /// Print the closed-neighborhood matrix
    Matrix {
        file: String,
        #[arg(long)]
        det: bool,
        #[arg(long)]
        c1p: bool,
        /// Row and column order; `auto` uses the right-endpoint order for
        /// interval instances and vertex ids otherwise
        #[arg(long, value_enum, default_value_t = MatrixOrder::Auto)]
        order: MatrixOrder,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleKind {
    Gamma,
    Rho,
    Gammai,
    Frac,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleName {
    ForkedStar,
    SplitTriangle,
    NonTuIntervals,
    NonTuStar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Interval,
    TreeEdges,
    Split,
    SubtreeIntersection,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixOrder {
    Auto,
    Id,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::InstanceTooLarge { .. } => 3,
            OracleError::LpInternalError(_) => 2,
            OracleError::BadPermutation => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<TheoremViolation> for Failure {
    fn from(e: TheoremViolation) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::Theorem(t) => t.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                let first = text.lines().next().unwrap_or("usage error").to_string();
                Output {
                    code: 1,
                    stdout: String::new(),
                    stderr: first + "\n",
                }
            } else {
                // --help and --version
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => Output {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(f) => Output {
            code: f.code,
            stdout: out,
            stderr: format!("domw: {}\n", f.message),
        },
    }
}

fn load_instance(path: &str) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
    parse_instance(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn instance_graph(inst: &Instance) -> Result<WeightedGraph, Failure> {
    inst.graph().map_err(Failure::input)
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Solve { file } => {
            let inst = load_instance(&file)?;
            solve(&inst, out)?;
            Ok(0)
        }
        Command::Oracle { which, file, cap } => {
            let g = instance_graph(&load_instance(&file)?)?;
            oracle(which, &g, OracleLimits::with_cap(cap), out)?;
            Ok(0)
        }
        Command::Check { file, cap } => {
            let inst = load_instance(&file)?;
            check(&inst, OracleLimits::with_cap(cap), out)
        }
        Command::Example { name } => {
            out.push_str(&write_instance(&example(name)));
            Ok(0)
        }
        Command::Gen {
            kind,
            seed,
            n,
            max_coord,
            edges,
            n_a,
            n_b,
            p,
            tree_size,
            subtrees,
            max_w,
        } => {
            let bad = |e: domw_core::instances::ParameterOutOfRange| Failure::input(e.to_string());
            let inst = match kind {
                GenKind::Interval => {
                    Instance::Interval(gen_interval(seed, n, max_coord, max_w).map_err(bad)?)
                }
                GenKind::TreeEdges => {
                    let (tree, weights) = gen_tree(seed, edges, max_w).map_err(bad)?;
                    Instance::TreeEdges { tree, weights }
                }
                GenKind::Split => {
                    Instance::Split(gen_split(seed, n_a, n_b, p, max_w).map_err(bad)?)
                }
                GenKind::SubtreeIntersection => {
                    let (tree, subtrees, weights) =
                        gen_subtrees(seed, tree_size, subtrees, max_w).map_err(bad)?;
                    Instance::SubtreeIntersection {
                        tree,
                        subtrees,
                        weights,
                    }
                }
            };
            out.push_str(&write_instance(&inst));
            Ok(0)
        }
        Command::Verify {
            instance,
            certificate,
        } => {
            let g = instance_graph(&load_instance(&instance)?)?;
            let text = fs::read_to_string(&certificate)
                .map_err(|e| Failure::input(format!("{certificate}: {e}")))?;
            let cert = parse_certificate(&text)
                .map_err(|e| Failure::input(format!("{certificate}: {e}")))?;
            match verify_certificate(&g, &cert) {
                Ok(()) => {
                    writeln!(out, "OK value {}", cert.value).unwrap();
                    Ok(0)
                }
                Err(r) => {
                    writeln!(out, "REJECTED {r}").unwrap();
                    Err(Failure::input(format!("certificate rejected: {r}")))
                }
            }
        }
        Command::Matrix {
            file,
            det,
            c1p,
            order,
        } => {
            let inst = load_instance(&file)?;
            let g = instance_graph(&inst)?;
            let order = match (order, &inst) {
                (MatrixOrder::Auto | MatrixOrder::Right, Instance::Interval(fam)) => {
                    order_by_right_endpoint(fam)
                }
                (MatrixOrder::Right, _) => {
                    return Err(Failure::input("--order right needs an interval instance"))
                }
                _ => (0..g.len()).collect(),
            };
            let m = neighborhood_matrix(&g, &order)?;
            write_ids(out, "order", &m.order);
            for row in &m.entries {
                let line: String = row
                    .iter()
                    .map(|&x| if x == 1 { '1' } else { '0' })
                    .collect();
                writeln!(out, "{line}").unwrap();
            }
            if det {
                writeln!(out, "det {}", m.det()).unwrap();
            }
            if c1p {
                writeln!(out, "c1p {}", m.has_consecutive_ones()).unwrap();
            }
            Ok(0)
        }
    }
}

fn example(name: ExampleName) -> Instance {
    match name {
        ExampleName::ForkedStar => {
            let (tree, subtrees, weights) = fixtures::example_forked_star();
            Instance::SubtreeIntersection {
                tree,
                subtrees,
                weights,
            }
        }
        ExampleName::SplitTriangle => Instance::Split(fixtures::example_split_triangle()),
        ExampleName::NonTuIntervals => Instance::Interval(fixtures::example_nontu_intervals()),
        ExampleName::NonTuStar => {
            let (tree, weights) = fixtures::example_nontu_star();
            Instance::TreeEdges { tree, weights }
        }
    }
}

fn write_ids(out: &mut String, label: &str, ids: &[usize]) {
    out.push_str(label);
    for v in ids {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

fn write_function(out: &mut String, f: &DominationFunction) {
    for (v, x) in f.support() {
        writeln!(out, "f {v} {x}").unwrap();
    }
}

/// Certificate for interval and tree-edges instances. Split graphs can have
/// `ρ_w < γ_w`, so their output is the dominating function plus the
/// independent witness that no cheaper function can dominate.
fn solve(inst: &Instance, out: &mut String) -> Result<(), Failure> {
    match inst {
        Instance::Interval(fam) => out.push_str(&write_certificate(&solve_interval(fam)?)),
        Instance::TreeEdges { tree, weights } => {
            out.push_str(&write_certificate(&solve_tree(tree, weights)?))
        }
        Instance::Split(s) => {
            let r = solve_split(s).map_err(|e| Failure::input(e.to_string()))?;
            out.push_str("domw-split 1\n");
            write_function(out, &r.dominating);
            write_ids(out, "witness", &r.witness_independent);
            writeln!(out, "witness-cost {}", r.witness_cost).unwrap();
            writeln!(out, "value {}", r.value).unwrap();
        }
        other => {
            return Err(Failure::input(format!(
                "no solver for kind {}; use `domw oracle` instead",
                other.kind_name()
            )))
        }
    }
    Ok(())
}

fn oracle(
    which: OracleKind,
    g: &WeightedGraph,
    limits: OracleLimits,
    out: &mut String,
) -> Result<(), Failure> {
    match which {
        OracleKind::Gamma => {
            let (value, f) = brute_gamma(g, limits)?;
            writeln!(out, "{value}").unwrap();
            write_function(out, &f);
        }
        OracleKind::Rho => {
            let (value, set) = brute_rho(g, limits)?;
            writeln!(out, "{value}").unwrap();
            write_ids(out, "I", &set);
        }
        OracleKind::Gammai => {
            let (value, set, f) = brute_gamma_i(g, limits)?;
            writeln!(out, "{value}").unwrap();
            write_ids(out, "witness", &set);
            write_function(out, &f);
        }
        OracleKind::Frac => {
            let s = solve_fractional(g, limits)?;
            writeln!(out, "{}", s.gamma_star).unwrap();
            write_rationals(out, "f", &s.dual);
            write_rationals(out, "g", &s.primal);
        }
    }
    Ok(())
}

fn write_rationals(out: &mut String, label: &str, xs: &[BigRational]) {
    for (v, x) in xs.iter().enumerate() {
        if *x != BigRational::from_integer(0.into()) {
            writeln!(out, "{label} {v} {x}").unwrap();
        }
    }
}

struct Checks<'a> {
    out: &'a mut String,
    failed: usize,
}

impl Checks<'_> {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        writeln!(
            self.out,
            "{} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
}

fn check(inst: &Instance, limits: OracleLimits, out: &mut String) -> Result<i32, Failure> {
    let g = instance_graph(inst)?;
    let rho = brute_rho(&g, limits)?.0;
    let gamma_i = brute_gamma_i(&g, limits)?.0;
    let gamma = brute_gamma(&g, limits)?.0;
    let mut c = Checks { out, failed: 0 };

    let solved: Option<Result<(u64, Option<Certificate>), Failure>> = match inst {
        Instance::Interval(fam) => Some(
            solve_interval(fam)
                .map(|cert| (cert.value, Some(cert)))
                .map_err(Failure::from),
        ),
        Instance::TreeEdges { tree, weights } => Some(
            solve_tree(tree, weights)
                .map(|cert| (cert.value, Some(cert)))
                .map_err(Failure::from),
        ),
        Instance::Split(s) => Some(
            solve_split(s)
                .map(|r| (r.value, None))
                .map_err(|e| Failure::input(e.to_string())),
        ),
        _ => None,
    };
    match solved {
        Some(Ok((value, cert))) => {
            if let Some(cert) = cert {
                let verdict = verify_certificate(&g, &cert);
                c.record(
                    "certificate",
                    verdict.is_ok(),
                    verdict.map_or_else(|r| r.to_string(), |()| format!("value {}", cert.value)),
                );
                c.record(
                    "solver = rho_w",
                    value == rho,
                    format!("solver {value}, rho_w {rho}"),
                );
            } else {
                c.record(
                    "solver = gamma^i_w",
                    value == gamma_i,
                    format!("solver {value}, gamma^i_w {gamma_i}"),
                );
            }
            c.record(
                "solver = gamma_w",
                value == gamma,
                format!("solver {value}, gamma_w {gamma}"),
            );
        }
        Some(Err(f)) => c.record("solver", false, f.message),
        None => {}
    }
    c.record(
        "sandwich",
        rho <= gamma_i && gamma_i <= gamma,
        format!("rho_w {rho} <= gamma^i_w {gamma_i} <= gamma_w {gamma}"),
    );
    if let Instance::SubtreeIntersection { weights, .. } = inst {
        if weights.iter().all(|&w| w == 1) {
            c.record(
                "unit-weight chordal gamma^i = gamma",
                gamma_i == gamma,
                format!("gamma^i {gamma_i}, gamma {gamma}"),
            );
        }
    }
    match solve_fractional(&g, limits) {
        Ok(s) => c.record(
            "lp duality",
            s.gamma_star == s.rho_star,
            format!("gamma*_w {} = rho*_w {}", s.gamma_star, s.rho_star),
        ),
        Err(e) => c.record("lp duality", false, e.to_string()),
    }
    Ok(if c.failed == 0 { 0 } else { 2 })
}
