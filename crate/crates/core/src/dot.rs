//! Graphviz DOT output. Every emitter iterates sorted data only, so equal
//! inputs give byte-identical text.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::dpo::{Derivation, GraphInstance};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::natural::NaturalTransformation;
use crate::quiver::{ObjectId, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DotMode {
    /// One edge per enumerated word.
    Full,
    /// One edge per class, labeled by its canonical word.
    #[default]
    Reduced,
    /// Generating arrows only, without self-loops or parallel edges.
    Simple,
}

impl FromStr for DotMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<DotMode> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(DotMode::Full),
            "reduced" => Ok(DotMode::Reduced),
            "simple" => Ok(DotMode::Simple),
            _ => Err(Error::InvalidConfig(format!("unknown DOT mode `{s}`"))),
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

struct Dot {
    out: String,
    indent: usize,
}

impl Dot {
    fn new() -> Dot {
        Dot {
            out: "digraph {\n".into(),
            indent: 1,
        }
    }

    fn line(&mut self, s: &str) {
        for _ in 0..self.indent {
            self.out.push_str("  ");
        }
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn node(&mut self, id: &str, label: &str) {
        self.line(&format!("{} [label={}];", quote(id), quote(label)));
    }

    fn edge(&mut self, a: &str, b: &str, label: &str, extra: &str) {
        let mut attrs = format!("label={}", quote(label));
        if !extra.is_empty() {
            let _ = write!(attrs, ", {extra}");
        }
        self.line(&format!("{} -> {} [{attrs}];", quote(a), quote(b)));
    }

    fn open_cluster(&mut self, name: &str, label: &str) {
        self.line(&format!("subgraph {} {{", quote(&format!("cluster_{name}"))));
        self.indent += 1;
        self.line(&format!("label={};", quote(label)));
    }

    fn close(&mut self) {
        self.indent -= 1;
        self.line("}");
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

fn node_id(prefix: &str, o: &ObjectId) -> String {
    format!("{prefix}{}", o.0)
}

fn quiver_body(dot: &mut Dot, q: &Quiver, prefix: &str) {
    for o in q.representatives() {
        dot.node(&node_id(prefix, &o), &o.0);
    }
    for a in q.arrows() {
        let s = q.resolve(&a.dom).expect("valid quiver");
        let t = q.resolve(&a.cod).expect("valid quiver");
        dot.edge(&node_id(prefix, s), &node_id(prefix, t), &a.id, "");
    }
}

fn category_body(dot: &mut Dot, c: &Category, mode: DotMode, prefix: &str) {
    for o in c.objects() {
        dot.node(&node_id(prefix, o), &o.0);
    }
    match mode {
        DotMode::Reduced => {
            for m in c.morphisms() {
                dot.edge(&node_id(prefix, m.dom()), &node_id(prefix, m.cod()), &c.render(m.id), "");
            }
        }
        DotMode::Full => {
            for m in c.morphisms() {
                for w in &m.members {
                    dot.edge(&node_id(prefix, m.dom()), &node_id(prefix, m.cod()), &c.render_word(w), "");
                }
            }
        }
        DotMode::Simple => {
            let q = c.quiver();
            let mut edges: BTreeMap<(&ObjectId, &ObjectId), Vec<&str>> = BTreeMap::new();
            for a in q.arrows() {
                let s = q.resolve(&a.dom).expect("valid quiver");
                let t = q.resolve(&a.cod).expect("valid quiver");
                if s != t {
                    edges.entry((s, t)).or_default().push(&a.id);
                }
            }
            for ((s, t), ids) in edges {
                dot.edge(&node_id(prefix, s), &node_id(prefix, t), &ids.join(", "), "");
            }
        }
    }
}

/// One node per resolved object, one edge per arrow.
pub fn quiver_dot(q: &Quiver) -> String {
    let mut dot = Dot::new();
    quiver_body(&mut dot, q, "");
    dot.finish()
}

pub fn category_dot(c: &Category, mode: DotMode) -> String {
    let mut dot = Dot::new();
    category_body(&mut dot, c, mode, "");
    dot.finish()
}

/// Domain and codomain side by side, objects joined by dashed edges.
pub fn functor_dot(f: &Functor, mode: DotMode) -> Result<String> {
    let mut dot = Dot::new();
    dot.line("rankdir=LR;");
    dot.open_cluster("domain", "domain");
    category_body(&mut dot, f.domain(), mode, "dom:");
    dot.close();
    dot.open_cluster("codomain", "codomain");
    category_body(&mut dot, f.codomain(), mode, "cod:");
    dot.close();
    for x in f.domain().objects() {
        let fx = f.apply_to_object(x)?;
        dot.edge(&node_id("dom:", x), &node_id("cod:", &fx), "", "style=dashed, constraint=false");
    }
    Ok(dot.finish())
}

/// One naturality square per generating arrow.
pub fn transformation_dot(eta: &NaturalTransformation) -> Result<String> {
    let (f, g) = (eta.source(), eta.target());
    let c = f.codomain();
    let report = eta.naturality_conditions()?;
    let satisfied: Vec<&String> = report.satisfied.iter().map(|e| &e.arrow).collect();
    let mut dot = Dot::new();
    for (i, eq) in report.required.iter().enumerate() {
        let a = f.domain().quiver().arrow(&eq.arrow).expect("generator");
        let (x, y) = (
            f.domain().table().resolve_object(&a.dom)?.clone(),
            f.domain().table().resolve_object(&a.cod)?.clone(),
        );
        let word = crate::word::PathWord::resolve(f.domain().quiver(), &crate::word::WordSpec::arrows([&a.id]))?;
        let fa = f.apply_to_word(&word)?;
        let ga = g.apply_to_word(&word)?;
        let holds = if satisfied.contains(&&eq.arrow) { "commutes" } else { "does not commute" };
        dot.open_cluster(&format!("square{i}"), &format!("{}: {holds}", eq.arrow));
        let p = format!("s{i}:");
        let nodes = [("F", &x, f.apply_to_object(&x)?), ("F", &y, f.apply_to_object(&y)?)];
        let gnodes = [("G", &x, g.apply_to_object(&x)?), ("G", &y, g.apply_to_object(&y)?)];
        for (tag, o, image) in nodes.iter().chain(gnodes.iter()) {
            dot.node(&format!("{p}{tag}{}", o.0), &image.0);
        }
        let id = |tag: &str, o: &ObjectId| format!("{p}{tag}{}", o.0);
        // contravariant functors reverse the horizontal edges
        let (fs, ft) = if f.is_covariant() { (&x, &y) } else { (&y, &x) };
        dot.edge(&id("F", fs), &id("F", ft), &c.render(fa), "");
        dot.edge(&id("G", fs), &id("G", ft), &c.render(ga), "");
        dot.edge(&id("F", &x), &id("G", &x), &c.render(eta.component(&x)?), "");
        if x != y {
            dot.edge(&id("F", &y), &id("G", &y), &c.render(eta.component(&y)?), "");
        }
        dot.close();
    }
    Ok(dot.finish())
}

fn graph_body(dot: &mut Dot, g: &GraphInstance, prefix: &str) {
    for (id, label) in &g.nodes {
        dot.node(&format!("{prefix}{id}"), &format!("{id}: {label}"));
    }
    for (id, e) in &g.edges {
        dot.edge(
            &format!("{prefix}{}", e.src),
            &format!("{prefix}{}", e.dst),
            &format!("{id}: {}", e.label),
            "",
        );
    }
}

pub fn graph_dot(g: &GraphInstance) -> String {
    let mut dot = Dot::new();
    graph_body(&mut dot, g, "");
    dot.finish()
}

/// `G`, `D` and `H` side by side.
pub fn derivation_dot(g: &GraphInstance, d: &Derivation) -> String {
    let mut dot = Dot::new();
    for (name, graph) in [("G", g), ("D", &d.context), ("H", &d.result)] {
        dot.open_cluster(name, name);
        graph_body(&mut dot, graph, &format!("{name}:"));
        dot.close();
    }
    dot.finish()
}
