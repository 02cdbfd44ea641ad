//! Named JSON documents and property reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::{Category, CategorySpec, ForcingSet};
use crate::congruence::{ClassId, SaturationConfig};
use crate::dpo::{GraphInstance, Rule, RuleSpec};
use crate::error::{Error, Result};
use crate::functor::{Functor, FunctorSpec};
use crate::natural::{NaturalTransformation, NaturalityEquation, TransformationSpec};
use crate::quiver::{ObjectId, Quiver, QuiverSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    /// Name of a category, or of a quiver whose free category is meant.
    pub domain: String,
    #[serde(flatten)]
    pub spec: FunctorSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationDoc {
    pub source: String,
    pub target: String,
    #[serde(flatten)]
    pub spec: TransformationSpec,
}

/// A bundle of named documents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<SaturationConfig>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quivers: BTreeMap<String, QuiverSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategorySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transformations: BTreeMap<String, TransformationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rules: BTreeMap<String, RuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub graphs: BTreeMap<String, GraphInstance>,
}

const WORKSPACE_KEYS: [&str; 6] = ["quivers", "categories", "functors", "transformations", "rules", "graphs"];

impl WorkspaceSpec {
    /// Whether a JSON document is a workspace rather than a bare spec.
    pub fn looks_like(v: &Value) -> bool {
        v.as_object()
            .is_some_and(|m| WORKSPACE_KEYS.iter().any(|k| m.contains_key(*k)))
    }

    fn names(&self) -> Vec<(&'static str, &String)> {
        let mut out = Vec::new();
        out.extend(self.quivers.keys().map(|k| ("quiver", k)));
        out.extend(self.categories.keys().map(|k| ("category", k)));
        out.extend(self.functors.keys().map(|k| ("functor", k)));
        out.extend(self.transformations.keys().map(|k| ("transformation", k)));
        out.extend(self.rules.keys().map(|k| ("rule", k)));
        out.extend(self.graphs.keys().map(|k| ("graph", k)));
        out
    }
}

/// A workspace with every document built and cross-checked.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub config: SaturationConfig,
    pub quivers: BTreeMap<String, Quiver>,
    pub categories: BTreeMap<String, Category>,
    pub functors: BTreeMap<String, Functor>,
    pub transformations: BTreeMap<String, NaturalTransformation>,
    pub rules: BTreeMap<String, Rule>,
    pub graphs: BTreeMap<String, GraphInstance>,
}

impl Workspace {
    /// `config` wins over the workspace's own bounds when given.
    pub fn build(spec: &WorkspaceSpec, config: Option<SaturationConfig>) -> Result<Workspace> {
        let config = config.or(spec.config).unwrap_or_default();
        config.validate()?;
        let mut seen = BTreeSet::new();
        for (kind, name) in spec.names() {
            if !seen.insert(name) {
                return Err(Error::DuplicateLabel {
                    kind,
                    label: name.clone(),
                });
            }
        }
        let quivers = spec
            .quivers
            .iter()
            .map(|(k, q)| Ok((k.clone(), Quiver::from_spec(q)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let categories = spec
            .categories
            .iter()
            .map(|(k, c)| Ok((k.clone(), Category::from_spec(c, config)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut ws = Workspace {
            config,
            quivers,
            categories,
            functors: BTreeMap::new(),
            transformations: BTreeMap::new(),
            rules: BTreeMap::new(),
            graphs: spec.graphs.clone(),
        };
        for (k, f) in &spec.functors {
            let domain = ws.category(&f.domain)?;
            ws.functors.insert(k.clone(), Functor::build(domain, f.spec.clone())?);
        }
        for (k, t) in &spec.transformations {
            let source = ws.functor(&t.source)?.clone();
            let target = ws.functor(&t.target)?.clone();
            ws.transformations
                .insert(k.clone(), NaturalTransformation::new(source, target, &t.spec)?);
        }
        for (k, r) in &spec.rules {
            ws.rules.insert(k.clone(), Rule::from_spec(r)?);
        }
        for g in ws.graphs.values() {
            g.validate()?;
        }
        Ok(ws)
    }

    /// A named category, or the free category on a named quiver.
    pub fn category(&self, name: &str) -> Result<Category> {
        if let Some(c) = self.categories.get(name) {
            return Ok(c.clone());
        }
        match self.quivers.get(name) {
            Some(q) => Category::free(q.clone(), self.config),
            None => Err(unresolved("category", name)),
        }
    }

    pub fn functor(&self, name: &str) -> Result<&Functor> {
        self.functors.get(name).ok_or_else(|| unresolved("functor", name))
    }

    pub fn transformation(&self, name: &str) -> Result<&NaturalTransformation> {
        self.transformations
            .get(name)
            .ok_or_else(|| unresolved("transformation", name))
    }

    pub fn rule(&self, name: &str) -> Result<&Rule> {
        self.rules.get(name).ok_or_else(|| unresolved("rule", name))
    }

    pub fn graph(&self, name: &str) -> Result<&GraphInstance> {
        self.graphs.get(name).ok_or_else(|| unresolved("graph", name))
    }
}

fn unresolved(kind: &'static str, name: &str) -> Error {
    Error::UnresolvedReference {
        kind,
        name: name.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub value: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    fn new(value: impl Into<Value>) -> Check {
        Check {
            value: value.into(),
            witnesses: Vec::new(),
        }
    }

    fn with(value: impl Into<Value>, witnesses: Vec<String>) -> Check {
        Check {
            value: value.into(),
            witnesses,
        }
    }
}

/// Outcome of one forcing search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ForcingOutcome {
    Found {
        equations: Vec<String>,
        minimal_verified: bool,
    },
    Failed {
        error: String,
    },
}

impl ForcingOutcome {
    fn of(c: &Category, r: Result<ForcingSet>) -> Result<ForcingOutcome> {
        match r {
            Ok(set) => Ok(ForcingOutcome::Found {
                equations: set.equations.iter().map(|e| e.render(c)).collect(),
                minimal_verified: set.minimal_verified,
            }),
            Err(e @ Error::NotGroupoidalizable(_)) => Ok(ForcingOutcome::Failed { error: e.to_string() }),
            Err(e) => Err(e),
        }
    }
}

/// Property readout for one subject.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub subject: String,
    pub checks: BTreeMap<String, Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forcing_sets: Option<BTreeMap<String, ForcingOutcome>>,
}

pub const CATEGORY_CHECKS: &[&str] = &[
    "objects",
    "morphisms",
    "commutative",
    "groupoid",
    "discrete",
    "indiscrete",
    "balanced",
    "pointed",
    "mono",
    "epi",
    "bimorphism",
    "section",
    "retraction",
    "isomorphism",
    "constant",
    "coconstant",
    "zero_morphism",
    "initial",
    "terminal",
    "strict_initial",
    "strict_terminal",
    "zero_object",
];

pub const FUNCTOR_CHECKS: &[&str] = &[
    "covariant",
    "object_image",
    "fibers",
    "injective_on_objects",
    "surjective_on_objects",
    "bijective_on_objects",
    "essentially_injective",
    "essentially_surjective",
    "essentially_bijective",
    "faithful",
    "full",
    "fully_faithful",
    "conservative",
    "equivalence",
    "embedding",
    "full_embedding",
    "inclusion",
    "full_inclusion",
    "endofunctor",
    "identity",
    "constant",
    "discrete_fibration",
    "fibration",
];

pub const TRANSFORMATION_CHECKS: &[&str] = &[
    "components",
    "naturality_equations",
    "natural",
    "component_isomorphisms",
    "natural_isomorphism",
];

fn names(c: &Category, ids: impl IntoIterator<Item = ClassId>) -> Vec<String> {
    ids.into_iter().map(|f| c.render(f)).collect()
}

fn objects(xs: &[ObjectId]) -> Vec<String> {
    xs.iter().map(|o| o.0.clone()).collect()
}

/// Morphisms with a property, plus one witness line per morphism without it.
fn per_morphism(
    c: &Category,
    mut test: impl FnMut(ClassId) -> Result<std::result::Result<(), String>>,
) -> Result<Check> {
    let mut holds = Vec::new();
    let mut witnesses = Vec::new();
    for f in c.class_ids() {
        match test(f)? {
            Ok(()) => holds.push(c.render(f)),
            Err(why) => witnesses.push(format!("{}: {why}", c.render(f))),
        }
    }
    Ok(Check::with(holds, witnesses))
}

fn pair_witness(c: &Category, r: Option<(ClassId, ClassId)>, what: &str) -> std::result::Result<(), String> {
    match r {
        None => Ok(()),
        Some((u, v)) => Err(format!("{what} {} and {}", c.render(u), c.render(v))),
    }
}

pub fn category_report(subject: &str, c: &Category, with_forcing: bool) -> Result<AnalysisReport> {
    let mut checks = BTreeMap::new();
    let mut put = |k: &str, v: Check| {
        debug_assert!(CATEGORY_CHECKS.contains(&k));
        checks.insert(k.to_string(), v);
    };
    put("objects", Check::with(c.object_count(), objects(c.objects())));
    put(
        "morphisms",
        Check::with(
            c.morphism_count(),
            c.morphisms()
                .iter()
                .map(|m| format!("{}: {} -> {}", c.render(m.id), m.dom(), m.cod()))
                .collect(),
        ),
    );
    put(
        "commutative",
        Check::with(
            c.is_commutative(),
            c.split_hom_sets()
                .iter()
                .map(|(x, y)| format!("hom({x}, {y}) has {} morphisms", c.hom(x, y).map_or(0, |h| h.len())))
                .collect(),
        ),
    );
    put("groupoid", Check::with(c.is_groupoid(), names(c, c.non_isomorphisms())));
    put("discrete", Check::new(c.is_discrete()));
    put("indiscrete", Check::new(c.is_indiscrete()));
    put("balanced", Check::with(c.is_balanced(), names(c, c.unbalanced_bimorphisms())));
    put("pointed", Check::new(c.is_pointed()));
    put(
        "mono",
        per_morphism(c, |f| Ok(pair_witness(c, c.mono_counterexample(f)?, "cannot cancel")))?,
    );
    put(
        "epi",
        per_morphism(c, |f| Ok(pair_witness(c, c.epi_counterexample(f)?, "cannot cancel")))?,
    );
    put(
        "bimorphism",
        per_morphism(c, |f| Ok(if c.is_bimorphism(f)? { Ok(()) } else { Err("not mono and epi".into()) }))?,
    );
    put(
        "section",
        per_morphism(c, |f| {
            Ok(if c.is_section(f)? { Ok(()) } else { Err("no left inverse".into()) })
        })?,
    );
    put(
        "retraction",
        per_morphism(c, |f| {
            Ok(if c.is_retraction(f)? { Ok(()) } else { Err("no right inverse".into()) })
        })?,
    );
    put(
        "isomorphism",
        per_morphism(c, |f| Ok(if c.is_isomorphism(f)? { Ok(()) } else { Err("no inverse".into()) }))?,
    );
    put(
        "constant",
        per_morphism(c, |f| Ok(pair_witness(c, c.constant_counterexample(f)?, "distinguishes")))?,
    );
    put(
        "coconstant",
        per_morphism(c, |f| Ok(pair_witness(c, c.coconstant_counterexample(f)?, "distinguishes")))?,
    );
    put(
        "zero_morphism",
        per_morphism(c, |f| {
            Ok(if c.is_zero_morphism(f)? { Ok(()) } else { Err("not constant and coconstant".into()) })
        })?,
    );
    put("initial", Check::new(objects(&c.initial_objects())));
    put("terminal", Check::new(objects(&c.terminal_objects())));
    put("strict_initial", Check::new(objects(&c.strict_initial_objects())));
    put("strict_terminal", Check::new(objects(&c.strict_terminal_objects())));
    put("zero_object", Check::new(objects(&c.zero_objects())));

    let forcing_sets = if with_forcing {
        let mut m = BTreeMap::new();
        m.insert("commute".into(), ForcingOutcome::of(c, c.force_commute())?);
        m.insert("groupoid".into(), ForcingOutcome::of(c, c.force_groupoid())?);
        Some(m)
    } else {
        None
    };
    Ok(AnalysisReport {
        subject: subject.into(),
        checks,
        forcing_sets,
    })
}

pub fn functor_report(subject: &str, f: &Functor) -> Result<AnalysisReport> {
    let d = f.domain();
    let c = f.codomain();
    let classes = f.classes();
    let mut checks = BTreeMap::new();
    let mut put = |k: &str, v: Check| {
        debug_assert!(FUNCTOR_CHECKS.contains(&k));
        checks.insert(k.to_string(), v);
    };
    put("covariant", Check::new(f.is_covariant()));
    put(
        "object_image",
        Check::new(
            f.object_image()
                .into_iter()
                .map(|(x, fx)| (x.0, Value::String(fx.0)))
                .collect::<serde_json::Map<_, _>>(),
        ),
    );
    put(
        "injective_on_objects",
        Check::with(
            f.injective_on_objects(),
            f.object_collision()
                .map(|(x, y)| format!("{x} and {y} have the same image"))
                .into_iter()
                .collect(),
        ),
    );
    put(
        "surjective_on_objects",
        Check::with(f.surjective_on_objects(), objects(&f.objects_missed())),
    );
    put("bijective_on_objects", Check::new(f.bijective_on_objects()));
    put(
        "essentially_injective",
        Check::with(
            f.essentially_injective(),
            f.essential_injectivity_counterexample()
                .map(|(x, y)| format!("{x} and {y} have isomorphic images but are not isomorphic"))
                .into_iter()
                .collect(),
        ),
    );
    put(
        "essentially_surjective",
        Check::with(f.essentially_surjective(), objects(&f.essentially_missed())),
    );
    put("essentially_bijective", Check::new(f.essentially_bijective()));
    put(
        "faithful",
        Check::with(
            f.faithful(),
            f.faithfulness_counterexample()
                .map(|(u, v)| format!("{} and {} have the same image", d.render(u), d.render(v)))
                .into_iter()
                .collect(),
        ),
    );
    put(
        "full",
        Check::with(
            f.full(),
            f.fullness_counterexample()
                .map(|u| format!("{} is not an image", c.render(u)))
                .into_iter()
                .collect(),
        ),
    );
    put("fully_faithful", Check::new(f.fully_faithful()));
    put(
        "conservative",
        Check::with(
            classes.conservative,
            f.conservativity_counterexample()
                .map(|u| format!("{} is not an isomorphism but its image is", d.render(u)))
                .into_iter()
                .collect(),
        ),
    );
    put("equivalence", Check::new(classes.equivalence));
    put("embedding", Check::new(classes.embedding));
    put("full_embedding", Check::new(classes.full_embedding));
    put("inclusion", Check::new(classes.inclusion));
    put("full_inclusion", Check::new(classes.full_inclusion));
    put("endofunctor", Check::new(classes.endofunctor));
    put("identity", Check::new(classes.identity));
    put("constant", Check::new(classes.constant));
    if f.is_covariant() {
        let fibers = f.fibers()?;
        put(
            "discrete_fibration",
            Check::with(
                fibers.iter().all(|x| x.is_discrete()),
                fibers
                    .iter()
                    .filter(|x| !x.is_discrete())
                    .map(|x| format!("fiber over {} is not discrete", x.base_object))
                    .collect(),
            ),
        );
        put("fibration", Check::new(f.is_fibration()?));
        put("fibers", Check::new(fibers_value(f)?));
    } else {
        let na = || Check::with(Value::Null, vec!["decided for covariant functors only".into()]);
        put("discrete_fibration", na());
        put("fibration", na());
        put("fibers", na());
    }
    Ok(AnalysisReport {
        subject: subject.into(),
        checks,
        forcing_sets: None,
    })
}

/// One entry per base object: its fiber's objects and non-identity morphisms.
pub fn fibers_value(f: &Functor) -> Result<Value> {
    let mut m = serde_json::Map::new();
    for fiber in f.fibers()? {
        let d = f.domain();
        let morphisms: Vec<String> = fiber
            .classes
            .iter()
            .filter(|&&g| d.class(g).is_ok_and(|c| !c.is_identity()))
            .map(|&g| d.render(g))
            .collect();
        m.insert(
            fiber.base_object.0.clone(),
            json!({
                "objects": objects(fiber.category.objects()),
                "morphisms": morphisms,
                "discrete": fiber.is_discrete(),
            }),
        );
    }
    Ok(Value::Object(m))
}

pub fn render_equation(c: &Category, e: &NaturalityEquation) -> String {
    format!("{} = {}", c.render_word(&e.lhs), c.render_word(&e.rhs))
}

pub fn transformation_report(subject: &str, eta: &NaturalTransformation) -> Result<AnalysisReport> {
    let c = eta.source().codomain();
    let report = eta.naturality_conditions()?;
    let mut checks = BTreeMap::new();
    let mut put = |k: &str, v: Check| {
        debug_assert!(TRANSFORMATION_CHECKS.contains(&k));
        checks.insert(k.to_string(), v);
    };
    put(
        "components",
        Check::new(
            eta.components()
                .iter()
                .map(|(x, &g)| (x.0.clone(), Value::String(c.render(g))))
                .collect::<serde_json::Map<_, _>>(),
        ),
    );
    put(
        "naturality_equations",
        Check::new(report.required.iter().map(|e| render_equation(c, e)).collect::<Vec<_>>()),
    );
    put(
        "natural",
        Check::with(report.valid, report.missing.iter().map(|e| render_equation(c, e)).collect()),
    );
    let mut iso = Vec::new();
    for x in eta.components().keys() {
        if eta.component_is_natural_iso(x)? {
            iso.push(x.0.clone());
        }
    }
    put("component_isomorphisms", Check::new(iso));
    put("natural_isomorphism", Check::new(eta.is_natural_isomorphism()?));
    Ok(AnalysisReport {
        subject: subject.into(),
        checks,
        forcing_sets: None,
    })
}

/// `true`, `3`, `{a, b}`, `{X: FX}`.
pub fn render_value(v: &Value) -> String {
    match v {
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("{{{}}}", xs.iter().map(render_value).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter()
                .map(|(k, v)| format!("{k}: {}", render_value(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => other.to_string(),
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("[{}]\n", self.subject);
        for (k, check) in &self.checks {
            let _ = writeln!(out, "  {k}: {}", render_value(&check.value));
            for w in &check.witnesses {
                let _ = writeln!(out, "    - {w}");
            }
        }
        if let Some(sets) = &self.forcing_sets {
            for (k, outcome) in sets {
                match outcome {
                    ForcingOutcome::Found {
                        equations,
                        minimal_verified,
                    } => {
                        let tag = if *minimal_verified { "" } else { " (not verified minimal)" };
                        let eqs = if equations.is_empty() { "none needed".into() } else { equations.join(", ") };
                        let _ = writeln!(out, "  force {k}: {eqs}{tag}");
                    }
                    ForcingOutcome::Failed { error } => {
                        let _ = writeln!(out, "  force {k}: {error}");
                    }
                }
            }
        }
        out
    }
}

/// Reports for every category, functor and transformation, in name order.
pub fn workspace_reports(ws: &Workspace, with_forcing: bool) -> Result<Vec<AnalysisReport>> {
    let mut out = Vec::new();
    for (k, q) in &ws.quivers {
        if !ws.categories.contains_key(k) {
            out.push(category_report(k, &Category::free(q.clone(), ws.config)?, with_forcing)?);
        }
    }
    for (k, c) in &ws.categories {
        out.push(category_report(k, c, with_forcing)?);
    }
    for (k, f) in &ws.functors {
        out.push(functor_report(k, f)?);
    }
    for (k, t) in &ws.transformations {
        out.push(transformation_report(k, t)?);
    }
    Ok(out)
}
