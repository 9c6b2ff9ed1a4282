//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns its exit code and output streams.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bounds::{bound_report, elemental_curvature};
use crate::candidates::{
    build_greedoid, enumerate_family, g3_closure_check, minimum_level_g2_failures, starter_sets,
    Scope, StarterMode, DEFAULT_MAX_CARD,
};
use crate::cover::{cover_of_size, maximal_matching, vertex_cover_from_matching};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::hitting::{restricted_spectral_radius, simulate_hitting, Evaluator};
use crate::optimizer::{
    backward_greedy, brute_force_oracle, greedy, run_starter_method, OptimizationReport, Scored,
    SolveOptions, Step,
};
use crate::rank::{RankContext, TIE_TOL};
use crate::report::{envelope, error_envelope, render_csv, render_json, set_json, to_value, Row};

const G3_TRIALS: u64 = 200_000;
const SPECTRAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Exact random-walk hitting times and sink-set selection.
#[derive(Debug, Parser)]
#[command(name = "sinkopt", version)]
struct Cli {
    /// Edge-list file, one `u v` pair per line
    #[arg(long, global = true, value_name = "PATH")]
    graph: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads, 0 for one per core
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Tolerance for reported inequality checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone)]
struct Labels(Vec<u64>);

fn parse_labels(s: &str) -> std::result::Result<Labels, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| format!("invalid node label {t:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Labels)
}

fn parse_mode(s: &str) -> std::result::Result<StarterMode, String> {
    s.parse()
}

#[derive(Debug, Clone, Args)]
struct RankArgs {
    /// Use a vertex cover of this size as the reference set
    #[arg(long)]
    cover_size: Option<usize>,
    /// Largest part size searched when extending F to the empty set
    #[arg(long)]
    empty_cap: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct SolveArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    nu: f64,
    /// Largest cardinality searched for the minimum family level
    #[arg(long, default_value_t = DEFAULT_MAX_CARD)]
    max_card: usize,
    #[arg(long, value_parser = parse_mode, default_value = "cover-subsets")]
    mode: StarterMode,
    /// Add the greedy m-element prefix to the starters
    #[arg(long)]
    include_greedy_prefix: bool,
    /// Refine the offered set with single-element swaps
    #[arg(long)]
    swap_refine: bool,
    #[command(flatten)]
    rank: RankArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hitting times to a target set
    Hit {
        #[arg(long, value_parser = parse_labels)]
        set: Labels,
        /// Also estimate each hitting time from this many walks
        #[arg(long)]
        mc_walks: Option<u64>,
        #[arg(long, requires = "mc_walks")]
        seed: Option<u64>,
    },
    /// Normalisation constants and ranks
    Rank {
        #[arg(long, value_parser = parse_labels)]
        set: Option<Labels>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Maximal matching and its vertex cover
    Cover,
    /// Near-optimal set family and its greedoid structure
    Candidates {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_CARD)]
        max_card: usize,
        #[arg(long, value_parser = parse_mode, default_value = "cover-subsets")]
        mode: StarterMode,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Classic greedy selection
    Greedy {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Greedy extension of starter sets
    Solve {
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Worst-out deletion from a target set (default: the reference cover)
    Backward {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_labels)]
        target: Option<Labels>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Exhaustive optimum
    Oracle {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Starter method against greedy, optionally against the optimum
    Compare {
        #[command(flatten)]
        args: SolveArgs,
        #[arg(long)]
        with_oracle: bool,
    },
    /// Elemental curvature over the near-optimal family
    Curvature {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_CARD)]
        max_card: usize,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Rank lower bounds and the improvement-factor bound
    Bounds {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_CARD)]
        max_card: usize,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Monte Carlo hitting-time estimates
    Simulate {
        #[arg(long, value_parser = parse_labels)]
        set: Labels,
        /// Single start node (default: every node outside the set)
        #[arg(long)]
        start: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        walks: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hit { .. } => "hit",
            Command::Rank { .. } => "rank",
            Command::Cover => "cover",
            Command::Candidates { .. } => "candidates",
            Command::Greedy { .. } => "greedy",
            Command::Solve { .. } => "solve",
            Command::Backward { .. } => "backward",
            Command::Oracle { .. } => "oracle",
            Command::Compare { .. } => "compare",
            Command::Curvature { .. } => "curvature",
            Command::Bounds { .. } => "bounds",
            Command::Simulate { .. } => "simulate",
        }
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Module(Error),
    Usage(clap::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

struct Output {
    body: Value,
    rows: Option<Vec<Row>>,
}

struct Session<'g> {
    g: &'g Graph,
    ev: Evaluator<'g>,
    tol: f64,
    warnings: Vec<String>,
}

/// Runs the command line `args` (program name first).
pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let err = Error::Io(format!("cannot start worker pool: {e}"));
            return Outcome { code: 1, stdout: String::new(), stderr: render_json(&error_envelope(&err)) };
        }
    };
    pool.install(|| run(cli))
}

fn run(cli: Cli) -> Outcome {
    let mut stderr = String::new();
    let name = cli.command.name();
    let format = cli.format;
    match execute(cli, &mut stderr) {
        Ok(out) => {
            let stdout = match (format, out.rows) {
                (Format::Csv, Some(rows)) => render_csv(&rows),
                _ => render_json(&envelope(name, out.body)),
            };
            Outcome { code: 0, stdout, stderr }
        }
        Err(Failure::Module(e)) => {
            stderr.push_str(&render_json(&error_envelope(&e)));
            Outcome { code: 1, stdout: String::new(), stderr }
        }
        Err(Failure::Usage(e)) => {
            stderr.push_str(&e.render().to_string());
            Outcome { code: 2, stdout: String::new(), stderr }
        }
    }
}

fn usage(kind: ErrorKind, msg: String) -> Failure {
    Failure::Usage(Cli::command().error(kind, msg))
}

fn execute(cli: Cli, stderr: &mut String) -> std::result::Result<Output, Failure> {
    let Some(path) = cli.graph else {
        return Err(usage(
            ErrorKind::MissingRequiredArgument,
            "the following required argument was not provided: --graph <PATH>".into(),
        ));
    };
    if cli.format == Format::Csv
        && matches!(cli.command, Command::Curvature { .. } | Command::Bounds { .. } | Command::Simulate { .. })
    {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            format!("--format csv is not available for `{}`", cli.command.name()),
        ));
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    let parsed = Graph::parse_edge_list(&text)?;
    if parsed.duplicate_edges > 0 {
        stderr.push_str(&format!("warning: ignored {} duplicate edge(s)\n", parsed.duplicate_edges));
    }
    let g = parsed.graph;
    let mut s = Session { g: &g, ev: Evaluator::new(&g), tol: cli.tol, warnings: Vec::new() };
    let out = s.command(cli.command);
    for w in &s.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    Ok(out?)
}

fn row(g: &Graph, set: &NodeSet, f: f64, rho: Option<f64>, method: &str) -> Row {
    Row { set: set.labels(g), f, rho, method: method.into() }
}

impl<'g> Session<'g> {
    fn set(&self, labels: &Labels) -> Result<NodeSet> {
        self.g.set_from_labels(&labels.0)
    }

    fn labels(&self, s: &NodeSet) -> Value {
        set_json(self.g, s)
    }

    fn context(&self, args: &RankArgs) -> Result<RankContext> {
        let cover = match args.cover_size {
            Some(c) => cover_of_size(self.g, c)?,
            None => vertex_cover_from_matching(self.g),
        };
        let ctx = RankContext::build(&self.ev, &cover, args.empty_cap)?;
        Ok(ctx)
    }

    fn scored(&self, s: &Scored) -> Value {
        json!({ "set": self.labels(&s.set), "F": s.f, "rho": s.rho, "rho_bar": s.rho_bar })
    }

    fn trace(&self, steps: &[Step], key: &str) -> Value {
        steps
            .iter()
            .map(|st| {
                let mut m = Map::new();
                m.insert(key.into(), self.g.label(st.node).into());
                m.insert("F".into(), st.f.into());
                Value::Object(m)
            })
            .collect()
    }

    fn command(&mut self, cmd: Command) -> Result<Output> {
        match cmd {
            Command::Hit { set, mc_walks, seed } => self.hit(&set, mc_walks, seed.unwrap_or(0)),
            Command::Rank { set, rank } => self.rank(set.as_ref(), &rank),
            Command::Cover => self.cover(),
            Command::Candidates { nu, max_card, mode, rank } => self.candidates(nu, max_card, mode, &rank),
            Command::Greedy { k, rank } => self.greedy(k, &rank),
            Command::Solve { args } => self.solve(&args, false),
            Command::Backward { k, target, rank } => self.backward(k, target.as_ref(), &rank),
            Command::Oracle { k, rank } => self.oracle(k, &rank),
            Command::Compare { args, with_oracle } => self.solve(&args, with_oracle),
            Command::Curvature { nu, max_card, rank } => self.curvature(nu, max_card, &rank),
            Command::Bounds { nu, k, max_card, rank } => self.bounds(nu, k, max_card, &rank),
            Command::Simulate { set, start, walks, seed } => self.simulate(&set, start, walks, seed),
        }
    }

    fn hit(&mut self, set: &Labels, mc_walks: Option<u64>, seed: u64) -> Result<Output> {
        let a = self.set(set)?;
        let prof = self.ev.profile(&a)?;
        if prof.ill_conditioned() {
            self.warnings.push(format!("linear system is ill-conditioned (estimate {:e})", prof.condition));
        }
        let mut h = Map::new();
        for (&i, &t) in prof.nodes.iter().zip(&prof.times) {
            h.insert(self.g.label(i).to_string(), t.into());
        }
        let (radius, converged) = if prof.nodes.is_empty() {
            (0.0, true)
        } else {
            let sp = restricted_spectral_radius(self.g, &a, SPECTRAL_TOL)?;
            (sp.radius, sp.converged)
        };
        if !converged {
            self.warnings.push("spectral radius iteration did not converge".into());
        }
        let mut body = json!({
            "target": self.labels(&a),
            "h": h,
            "F": prof.total,
            "spectral_radius": radius,
            "spectral_converged": converged,
            "condition": prof.condition,
        });
        if let Some(walks) = mc_walks {
            let g = self.g;
            let est = prof
                .nodes
                .par_iter()
                .map(|&i| simulate_hitting(g, &a, i, walks, seed))
                .collect::<Result<Vec<_>>>()?;
            let mut mc = Map::new();
            for ((&i, &t), e) in prof.nodes.iter().zip(&prof.times).zip(&est) {
                mc.insert(
                    self.g.label(i).to_string(),
                    json!({
                        "mean": e.mean,
                        "stderr": e.stderr,
                        "walks": e.walks,
                        "within_3se": (e.mean - t).abs() <= 3.0 * e.stderr,
                    }),
                );
            }
            body["monte_carlo"] = json!({ "walks": walks, "seed": seed, "estimates": mc });
        }
        let rows = vec![row(self.g, &a, prof.total, None, "hit")];
        Ok(Output { body, rows: Some(rows) })
    }

    fn rank(&self, set: Option<&Labels>, args: &RankArgs) -> Result<Output> {
        let ctx = self.context(args)?;
        let target = match set {
            Some(l) => self.set(l)?,
            None => ctx.cover.clone(),
        };
        let f = ctx.objective_with_empty(&self.ev, &target)?;
        let rho_bar = ctx.rho_bar_of(&self.ev, &target)?;
        let rho = ctx.rho_of(&self.ev, &target)?;
        let argmax: Vec<Value> = ctx.f_max_argmax.iter().map(|s| self.labels(s)).collect();
        let body = json!({
            "C": ctx.cover_size,
            "cover": self.labels(&ctx.cover),
            "F_max": ctx.f_max,
            "F_max_argmax": argmax,
            "F_min": ctx.f_min,
            "F_empty": ctx.f_empty,
            "exact_empty": ctx.exact_empty,
            "empty_part_cap": ctx.empty_part_cap,
            "rho_bar_empty": ctx.rho_bar_empty,
            "set": self.labels(&target),
            "F": f,
            "rho_bar": rho_bar,
            "rho": rho,
        });
        let rows = vec![row(self.g, &target, f, Some(rho), "rank")];
        Ok(Output { body, rows: Some(rows) })
    }

    fn cover(&self) -> Result<Output> {
        let matching: Vec<Value> = maximal_matching(self.g)
            .into_iter()
            .map(|(u, v)| json!([self.g.label(u), self.g.label(v)]))
            .collect();
        let cover = vertex_cover_from_matching(self.g);
        let f = self.ev.objective(&cover)?;
        let body = json!({
            "matching": matching,
            "cover": self.labels(&cover),
            "C": cover.len(),
            "F_of_cover": f,
        });
        let rows = vec![row(self.g, &cover, f, None, "cover")];
        Ok(Output { body, rows: Some(rows) })
    }

    fn candidates(&self, nu: f64, max_card: usize, mode: StarterMode, args: &RankArgs) -> Result<Output> {
        let ctx = self.context(args)?;
        let fam = enumerate_family(&self.ev, &ctx, nu, max_card, Scope::Full)?;
        let members: Vec<Value> = fam
            .members
            .iter()
            .map(|m| json!({ "set": self.labels(&m.set), "F": m.f, "rho_bar": m.rho_bar }))
            .collect();
        let (starters, starter_error) = match starter_sets(&fam, mode, Some(&ctx.cover)) {
            Ok(s) => (s, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        let greedoid = match build_greedoid(&fam) {
            Ok(gr) => json!({
                "built": true,
                "G1": gr.report.g1,
                "G2": gr.report.g2,
                "G3": gr.report.g3,
                "retained": gr.retained.iter().map(|s| self.labels(s)).collect::<Vec<_>>(),
                "family_size": gr.family.len(),
            }),
            Err(e) => json!({ "built": false, "error": e.to_string() }),
        };
        let g3 = g3_closure_check(&self.ev, &ctx, &fam, G3_TRIALS, 0)?;
        let g2_failures: Vec<Value> = minimum_level_g2_failures(&fam).iter().map(|s| self.labels(s)).collect();
        let body = json!({
            "nu": nu,
            "C": ctx.cover_size,
            "max_card": max_card.min(ctx.cover_size).min(self.g.node_count()),
            "m": fam.m,
            "members": members,
            "mode": mode,
            "starters": starters.iter().map(|s| self.labels(s)).collect::<Vec<_>>(),
            "starter_error": starter_error,
            "g2_failures_at_m": g2_failures,
            "g3_closure": to_value(&g3),
            "greedoid_report": greedoid,
        });
        let rows = fam
            .members
            .iter()
            .map(|m| row(self.g, &m.set, m.f, Some(ctx.rho(m.f)), "candidate"))
            .collect();
        Ok(Output { body, rows: Some(rows) })
    }

    fn greedy(&self, k: usize, args: &RankArgs) -> Result<Output> {
        let run = greedy(&self.ev, k)?;
        let ctx = self.context(args)?;
        let sc = Scored::new(&ctx, run.set.clone(), run.f);
        let body = json!({
            "method": "greedy",
            "K": k,
            "result": self.scored(&sc),
            "trace": self.trace(&run.steps, "added"),
        });
        Ok(Output { body, rows: Some(vec![row(self.g, &sc.set, sc.f, Some(sc.rho), "greedy")]) })
    }

    fn backward(&self, k: usize, target: Option<&Labels>, args: &RankArgs) -> Result<Output> {
        let ctx = self.context(args)?;
        let t = match target {
            Some(l) => self.set(l)?,
            None => ctx.cover.clone(),
        };
        let run = backward_greedy(&self.ev, &t, k)?;
        let sc = Scored::new(&ctx, run.set.clone(), run.f);
        let body = json!({
            "method": "backward",
            "K": k,
            "target": self.labels(&t),
            "result": self.scored(&sc),
            "trace": self.trace(&run.steps, "removed"),
        });
        Ok(Output { body, rows: Some(vec![row(self.g, &sc.set, sc.f, Some(sc.rho), "backward")]) })
    }

    fn oracle(&self, k: usize, args: &RankArgs) -> Result<Output> {
        let (set, f) = brute_force_oracle(&self.ev, k)?;
        let ctx = self.context(args)?;
        let sc = Scored::new(&ctx, set, f);
        let body = json!({
            "method": "oracle",
            "K": k,
            "set": self.labels(&sc.set),
            "F": sc.f,
            "rho": sc.rho,
            "rho_bar": sc.rho_bar,
        });
        Ok(Output { body, rows: Some(vec![row(self.g, &sc.set, sc.f, Some(sc.rho), "oracle")]) })
    }

    fn solve(&self, args: &SolveArgs, with_oracle: bool) -> Result<Output> {
        let ctx = self.context(&args.rank)?;
        let opts = SolveOptions {
            k: args.k,
            nu: args.nu,
            max_card: args.max_card,
            mode: args.mode,
            include_greedy_prefix: args.include_greedy_prefix,
            swap_refine: args.swap_refine,
            with_oracle,
            tol: self.tol.max(TIE_TOL),
        };
        let rep = run_starter_method(&self.ev, &ctx, &opts)?;
        Ok(self.report(&rep))
    }

    fn report(&self, rep: &OptimizationReport) -> Output {
        let starters: Vec<Value> = rep
            .extensions
            .iter()
            .map(|e| {
                let chain: Vec<u64> = e.steps.iter().map(|s| self.g.label(s.node)).collect();
                json!({ "starter": self.labels(&e.start), "chain": chain, "set": self.labels(&e.set), "F": e.f })
            })
            .collect();
        let swaps: Vec<Value> = rep
            .swaps
            .iter()
            .map(|s| json!({ "removed": self.g.label(s.removed), "added": self.g.label(s.added), "F": s.f }))
            .collect();
        let body = json!({
            "method": rep.method,
            "K": rep.k,
            "nu": rep.nu,
            "m": rep.m,
            "mode": rep.mode,
            "starter_fallback": rep.starter_fallback,
            "offered": self.scored(&rep.offered),
            "greedy": rep.greedy.as_ref().map(|s| self.scored(s)),
            "greedy_trace": self.trace(&rep.greedy_trace, "added"),
            "oracle": rep.oracle.as_ref().map(|s| self.scored(s)),
            "chi": rep.chi,
            "starters": starters,
            "swaps": swaps,
            "bound_checks": to_value(&rep.checks),
        });
        let mut rows = vec![row(self.g, &rep.offered.set, rep.offered.f, Some(rep.offered.rho), "starter")];
        for (s, method) in [(&rep.greedy, "greedy"), (&rep.oracle, "oracle")] {
            if let Some(s) = s {
                rows.push(row(self.g, &s.set, s.f, Some(s.rho), method));
            }
        }
        Output { body, rows: Some(rows) }
    }

    fn curvature(&self, nu: f64, max_card: usize, args: &RankArgs) -> Result<Output> {
        let ctx = self.context(args)?;
        let fam = enumerate_family(&self.ev, &ctx, nu, max_card, Scope::Full)?;
        let cr = elemental_curvature(&self.ev, &ctx, &fam)?;
        let mut body = to_value(&cr);
        let (a, i, j) = &cr.arg_kappa;
        body["nu"] = nu.into();
        body["C"] = ctx.cover_size.into();
        body["family_size"] = fam.members.len().into();
        body["arg_kappa"] = json!({ "A": self.labels(a), "i": self.g.label(*i), "j": self.g.label(*j) });
        body["arg_gamma"] = match &cr.arg_gamma {
            Some((s, j)) => json!({ "S": self.labels(s), "j": self.g.label(*j) }),
            None => Value::Null,
        };
        Ok(Output { body, rows: None })
    }

    fn bounds(&self, nu: f64, k: usize, max_card: usize, args: &RankArgs) -> Result<Output> {
        let ctx = self.context(args)?;
        let rep = bound_report(&self.ev, &ctx, k, nu, max_card)?;
        let mut body = to_value(&rep);
        body["witness"] = rep.witness.as_ref().map_or(Value::Null, |s| self.labels(s));
        body["backward"] = rep.backward.as_ref().map_or(Value::Null, |s| self.labels(s));
        Ok(Output { body, rows: None })
    }

    fn simulate(&self, set: &Labels, start: Option<u64>, walks: u64, seed: u64) -> Result<Output> {
        let a = self.set(set)?;
        let prof = self.ev.profile(&a)?;
        let starts: Vec<usize> = match start {
            Some(l) => {
                let i = self.g.index_of(l)?;
                if a.contains(i) {
                    return Err(Error::StartInsideTarget(l));
                }
                vec![i]
            }
            None => prof.nodes.clone(),
        };
        let g = self.g;
        let est = starts
            .par_iter()
            .map(|&i| simulate_hitting(g, &a, i, walks, seed))
            .collect::<Result<Vec<_>>>()?;
        let estimates: Vec<Value> = starts
            .iter()
            .zip(&est)
            .map(|(&i, e)| {
                let exact = prof.time(i).unwrap_or(0.0);
                json!({
                    "start": self.g.label(i),
                    "exact": exact,
                    "mean": e.mean,
                    "stderr": e.stderr,
                    "within_3se": (e.mean - exact).abs() <= 3.0 * e.stderr,
                })
            })
            .collect();
        let body = json!({
            "target": self.labels(&a),
            "walks": walks,
            "seed": seed,
            "estimates": estimates,
        });
        Ok(Output { body, rows: None })
    }
}
