//! `fincat` — build and analyze finite categories from JSON.
//!
//! Every input file is either a bare document (a quiver, category or rule
//! spec, or a graph) or a workspace bundling named documents; `--name`
//! picks one out of a workspace.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use fincat::dot::{self, DotMode};
use fincat::io::{self, render_value};
use fincat::{
    Category, CategorySpec, Error, ForcingSet, Functor, GraphInstance, NaturalTransformation, Quiver, QuiverSpec,
    Rule, RuleSpec, SaturationConfig, Workspace, WorkspaceSpec,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fincat", version, about = "Finite category engine")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Longest word enumerated before a category is declared possibly infinite.
    #[arg(long, global = true, env = "FINCAT_MAX_WORD_LENGTH")]
    max_word_length: Option<usize>,

    /// Cap on the number of morphism classes.
    #[arg(long, global = true)]
    max_classes: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver commands.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Category commands.
    #[command(subcommand)]
    Cat(CatCmd),
    /// Functor commands.
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// Natural transformation commands.
    #[command(subcommand)]
    Nat(NatCmd),
    /// Double-pushout rewriting.
    #[command(subcommand)]
    Dpo(DpoCmd),
    /// Graphviz output.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Args, Clone)]
struct Source {
    /// Document or workspace file.
    #[arg(long, value_name = "FILE")]
    quiver: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    category: Option<PathBuf>,
    /// Name of the document inside a workspace.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// List objects and arrows.
    Show(Source),
}

#[derive(Subcommand)]
enum CatCmd {
    /// Enumerate morphisms.
    Build(Source),
    /// Every property check.
    Report {
        #[command(flatten)]
        source: Source,
        /// Also search commutativity and groupoid forcing sets.
        #[arg(long)]
        forcing: bool,
    },
    /// Whether every hom-set has at most one morphism.
    Commutes(Source),
    /// Minimal equations making the category commutative.
    ForceCommute(Source),
    /// Minimal equations making the category a groupoid.
    ForceGroupoid(Source),
    /// The opposite category, as a category spec.
    Dual(Source),
}

#[derive(Args, Clone)]
struct NamedFile {
    /// Workspace file.
    #[arg(long = "workspace", value_name = "FILE")]
    file: PathBuf,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum FunctorCmd {
    Report(NamedFile),
    Fibers(NamedFile),
}

#[derive(Subcommand)]
enum NatCmd {
    Report(NamedFile),
}

#[derive(Subcommand)]
enum DpoCmd {
    /// Rewrite a graph at one match of a rule.
    Apply {
        #[arg(long, value_name = "FILE")]
        rule: PathBuf,
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        /// Index into the lexicographically ordered matches.
        #[arg(long, default_value_t = 0)]
        match_index: usize,
        #[arg(long)]
        rule_name: Option<String>,
        #[arg(long)]
        graph_name: Option<String>,
        /// Print G, D and H as DOT.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    Dot {
        #[command(flatten)]
        source: Source,
        /// Workspace with functors or transformations.
        #[arg(long, value_name = "FILE")]
        functor: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        transformation: Option<PathBuf>,
        /// Draw the free category of a `--quiver` instead of the quiver.
        #[arg(long)]
        free: bool,
        /// full, reduced or simple.
        #[arg(long, default_value = "reduced")]
        mode: DotMode,
    },
}

struct Ctx {
    json: bool,
    config: Option<SaturationConfig>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = None;
    if cli.max_word_length.is_some() || cli.max_classes.is_some() {
        let mut c = SaturationConfig::default();
        if let Some(n) = cli.max_word_length {
            c.max_word_length = n;
        }
        if let Some(n) = cli.max_classes {
            c.max_classes = n;
        }
        config = Some(c);
    }
    let ctx = Ctx { json: cli.json, config };
    match run(&ctx, cli.command) {
        Ok(out) => {
            print!("{out}");
            if !out.is_empty() && !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::PossiblyInfinite { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn pick<'a, T>(kind: &str, map: &'a std::collections::BTreeMap<String, T>, name: Option<&str>) -> anyhow::Result<(&'a String, &'a T)> {
    match name {
        Some(n) => map
            .get_key_value(n)
            .ok_or_else(|| Error::UnresolvedReference { kind: "document", name: n.into() }.into()),
        None if map.len() == 1 => Ok(map.iter().next().expect("one entry")),
        None if map.is_empty() => bail!("no {kind} in workspace"),
        None => bail!(
            "workspace has several {kind} documents ({}); pick one with --name",
            map.keys().cloned().collect::<Vec<_>>().join(", ")
        ),
    }
}

impl Ctx {
    fn cfg(&self) -> SaturationConfig {
        self.config.unwrap_or_default()
    }

    fn workspace(&self, v: Value) -> anyhow::Result<Workspace> {
        let spec: WorkspaceSpec = serde_json::from_value(v)?;
        Ok(Workspace::build(&spec, self.config)?)
    }

    fn load_quiver(&self, path: &Path, name: Option<&str>) -> anyhow::Result<(String, Quiver)> {
        let v = read_json(path)?;
        if WorkspaceSpec::looks_like(&v) {
            let spec: WorkspaceSpec = serde_json::from_value(v)?;
            if let Ok((k, q)) = pick("quiver", &spec.quivers, name) {
                return Ok((k.clone(), Quiver::from_spec(q)?));
            }
            let (k, c) = pick("category", &spec.categories, name)?;
            return Ok((k.clone(), Quiver::from_spec(&c.quiver)?));
        }
        let spec: QuiverSpec = serde_json::from_value(v)?;
        Ok((stem(path), Quiver::from_spec(&spec)?))
    }

    /// A category file, or the free category on a quiver file.
    fn load_category(&self, src: &Source) -> anyhow::Result<(String, Category)> {
        let name = src.name.as_deref();
        let (path, free) = match (&src.category, &src.quiver) {
            (Some(p), None) => (p, false),
            (None, Some(p)) => (p, true),
            _ => bail!("give exactly one of --category and --quiver"),
        };
        let v = read_json(path)?;
        if WorkspaceSpec::looks_like(&v) {
            let spec: WorkspaceSpec = serde_json::from_value(v)?;
            let config = self.config.or(spec.config).unwrap_or_default();
            if free {
                let (k, q) = pick("quiver", &spec.quivers, name)?;
                return Ok((k.clone(), Category::free(Quiver::from_spec(q)?, config)?));
            }
            if let Some(n) = name {
                if let Some(q) = spec.quivers.get(n) {
                    return Ok((n.into(), Category::free(Quiver::from_spec(q)?, config)?));
                }
            }
            if spec.categories.is_empty() && !spec.quivers.is_empty() {
                let (k, q) = pick("quiver", &spec.quivers, name)?;
                return Ok((k.clone(), Category::free(Quiver::from_spec(q)?, config)?));
            }
            let (k, c) = pick("category", &spec.categories, name)?;
            return Ok((k.clone(), Category::from_spec(c, config)?));
        }
        let spec: CategorySpec = serde_json::from_value(v)?;
        Ok((stem(path), Category::from_spec(&spec, self.cfg())?))
    }

    fn load_functor(&self, f: &NamedFile) -> anyhow::Result<(String, Functor)> {
        let ws = self.workspace(read_json(&f.file)?)?;
        let (k, v) = pick("functor", &ws.functors, f.name.as_deref())?;
        Ok((k.clone(), v.clone()))
    }

    fn load_transformation(&self, f: &NamedFile) -> anyhow::Result<(String, NaturalTransformation)> {
        let ws = self.workspace(read_json(&f.file)?)?;
        let (k, v) = pick("transformation", &ws.transformations, f.name.as_deref())?;
        Ok((k.clone(), v.clone()))
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
}

fn pretty<T: ?Sized + serde::Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn forcing_json(c: &Category, set: &ForcingSet) -> Value {
    json!({
        "equations": set.equations.iter().map(|e| {
            let (lhs, rhs) = e.to_specs();
            json!({"lhs": lhs, "rhs": rhs, "rendered": e.render(c), "identity_merge": e.identity_merge})
        }).collect::<Vec<_>>(),
        "minimal_verified": set.minimal_verified,
    })
}

fn forcing_text(c: &Category, set: &ForcingSet) -> String {
    let mut out = String::new();
    if set.is_empty() {
        out.push_str("no equations needed\n");
    }
    for e in &set.equations {
        out.push_str(&e.render(c));
        out.push('\n');
    }
    if !set.minimal_verified {
        out.push_str("(greedy result; minimality not verified)\n");
    }
    out
}

fn run(ctx: &Ctx, cmd: Command) -> anyhow::Result<String> {
    match cmd {
        Command::Quiver(QuiverCmd::Show(src)) => {
            let path = src
                .quiver
                .as_ref()
                .or(src.category.as_ref())
                .ok_or_else(|| anyhow!("--quiver is required"))?;
            let (_, q) = ctx.load_quiver(path, src.name.as_deref())?;
            if ctx.json {
                return pretty(&q.to_spec());
            }
            let reps = q.representatives();
            let mut out = format!("{} objects, {} arrows\n", reps.len(), q.arrows().len());
            for a in q.arrows() {
                out.push_str(&format!("{}: {} -> {}\n", a.id, a.dom, a.cod));
            }
            for (a, b) in q.object_eqs() {
                out.push_str(&format!("{a} = {b}\n"));
            }
            for (a, b) in q.arrow_eqs() {
                out.push_str(&format!("{a} = {b}\n"));
            }
            Ok(out)
        }
        Command::Cat(cmd) => run_cat(ctx, cmd),
        Command::Functor(FunctorCmd::Report(f)) => {
            let (name, functor) = ctx.load_functor(&f)?;
            let report = io::functor_report(&name, &functor)?;
            if ctx.json {
                pretty(&report)
            } else {
                Ok(report.to_text())
            }
        }
        Command::Functor(FunctorCmd::Fibers(f)) => {
            let (_, functor) = ctx.load_functor(&f)?;
            let fibers = io::fibers_value(&functor)?;
            if ctx.json {
                return pretty(&fibers);
            }
            let mut out = String::new();
            for (base, v) in fibers.as_object().expect("object") {
                let kind = if v["discrete"] == json!(true) { "discrete" } else { "not discrete" };
                out.push_str(&format!(
                    "over {base}: objects {}, morphisms {} ({kind})\n",
                    render_value(&v["objects"]),
                    render_value(&v["morphisms"])
                ));
            }
            Ok(out)
        }
        Command::Nat(NatCmd::Report(f)) => {
            let (name, eta) = ctx.load_transformation(&f)?;
            let report = io::transformation_report(&name, &eta)?;
            if ctx.json {
                pretty(&report)
            } else {
                Ok(report.to_text())
            }
        }
        Command::Dpo(DpoCmd::Apply {
            rule,
            graph,
            match_index,
            rule_name,
            graph_name,
            dot: as_dot,
        }) => {
            let rule = load_rule(&rule, rule_name.as_deref())?;
            let g = load_graph(&graph, graph_name.as_deref())?;
            g.validate()?;
            let matches = rule.find_matches(&g);
            let m = matches
                .get(match_index)
                .ok_or_else(|| Error::InvalidMorphism(format!("match {match_index} requested, {} found", matches.len())))?;
            let d = rule.apply(&g, m, match_index)?;
            if as_dot {
                return Ok(dot::derivation_dot(&g, &d));
            }
            let universal = d.verify_pushout_universal(&rule, 1_000_000);
            if ctx.json {
                return pretty(&json!({
                    "matches": matches.len(),
                    "match_index": match_index,
                    "match": m,
                    "context": d.context,
                    "result": d.result,
                    "comatch": d.p,
                    "squares_commute": d.squares_commute(&rule, m),
                    "pushout_verified": universal.as_ref().ok(),
                }));
            }
            let mut out = format!(
                "match {match_index} of {}: D has {} nodes, {} edges; H has {} nodes, {} edges\n",
                matches.len(),
                d.context.nodes.len(),
                d.context.edges.len(),
                d.result.nodes.len(),
                d.result.edges.len()
            );
            out.push_str(&format!("squares commute: {}\n", d.squares_commute(&rule, m)));
            match universal {
                Ok(b) => out.push_str(&format!("pushout verified: {b}\n")),
                Err(e) => out.push_str(&format!("pushout verified: unknown ({e})\n")),
            }
            out.push_str(&pretty(&d.result)?);
            Ok(out)
        }
        Command::Export(ExportCmd::Dot {
            source,
            functor,
            transformation,
            free,
            mode,
        }) => {
            let name = source.name.clone();
            if let Some(p) = functor {
                let (_, f) = ctx.load_functor(&NamedFile { file: p, name })?;
                return Ok(dot::functor_dot(&f, mode)?);
            }
            if let Some(p) = transformation {
                let (_, t) = ctx.load_transformation(&NamedFile { file: p, name })?;
                return Ok(dot::transformation_dot(&t)?);
            }
            if let (Some(p), None, false) = (&source.quiver, &source.category, free) {
                let (_, q) = ctx.load_quiver(p, source.name.as_deref())?;
                return Ok(dot::quiver_dot(&q));
            }
            let (_, c) = ctx.load_category(&source)?;
            Ok(dot::category_dot(&c, mode))
        }
    }
}

fn run_cat(ctx: &Ctx, cmd: CatCmd) -> anyhow::Result<String> {
    match cmd {
        CatCmd::Build(src) => {
            let (_, c) = ctx.load_category(&src)?;
            if ctx.json {
                let classes: Vec<Value> = c
                    .morphisms()
                    .iter()
                    .map(|m| {
                        json!({
                            "id": m.id,
                            "dom": m.dom(),
                            "cod": m.cod(),
                            "canonical": m.canonical.to_spec(),
                            "rendered": c.render(m.id),
                        })
                    })
                    .collect();
                return pretty(&json!({
                    "objects": c.object_count(),
                    "morphisms": c.morphism_count(),
                    "classes": classes,
                }));
            }
            Ok(format!("{} objects, {} morphisms\n", c.object_count(), c.morphism_count()))
        }
        CatCmd::Report { source, forcing } => {
            let (name, c) = ctx.load_category(&source)?;
            let report = io::category_report(&name, &c, forcing)?;
            if ctx.json {
                pretty(&report)
            } else {
                Ok(report.to_text())
            }
        }
        CatCmd::Commutes(src) => {
            let (_, c) = ctx.load_category(&src)?;
            let commutes = c.is_commutative();
            let set = if commutes { None } else { Some(c.force_commute()?) };
            if ctx.json {
                let mut v = json!({"commutative": commutes});
                if let Some(set) = &set {
                    v["forcing_set"] = forcing_json(&c, set);
                }
                return pretty(&v);
            }
            Ok(match set {
                None => "true\n".into(),
                Some(set) => format!("false; forcing set: {}\n", set.render(&c)),
            })
        }
        CatCmd::ForceCommute(src) => {
            let (_, c) = ctx.load_category(&src)?;
            let set = c.force_commute()?;
            if ctx.json {
                pretty(&forcing_json(&c, &set))
            } else {
                Ok(forcing_text(&c, &set))
            }
        }
        CatCmd::ForceGroupoid(src) => {
            let (_, c) = ctx.load_category(&src)?;
            let set = c.force_groupoid()?;
            if ctx.json {
                pretty(&forcing_json(&c, &set))
            } else {
                Ok(forcing_text(&c, &set))
            }
        }
        CatCmd::Dual(src) => {
            let (_, c) = ctx.load_category(&src)?;
            let d = c.dual()?;
            if ctx.json {
                return pretty(&d.to_spec());
            }
            Ok(format!(
                "{} objects, {} morphisms\n{}",
                d.object_count(),
                d.morphism_count(),
                pretty(&d.to_spec())?
            ))
        }
    }
}

fn load_rule(path: &Path, name: Option<&str>) -> anyhow::Result<Rule> {
    let v = read_json(path)?;
    if WorkspaceSpec::looks_like(&v) {
        let spec: WorkspaceSpec = serde_json::from_value(v)?;
        let (_, r) = pick("rule", &spec.rules, name)?;
        return Ok(Rule::from_spec(r)?);
    }
    let spec: RuleSpec = serde_json::from_value(v)?;
    Ok(Rule::from_spec(&spec)?)
}

fn load_graph(path: &Path, name: Option<&str>) -> anyhow::Result<GraphInstance> {
    let v = read_json(path)?;
    if WorkspaceSpec::looks_like(&v) {
        let spec: WorkspaceSpec = serde_json::from_value(v)?;
        let (_, g) = pick("graph", &spec.graphs, name)?;
        return Ok(g.clone());
    }
    Ok(serde_json::from_value(v)?)
}
