//! Double-pushout rewriting of labeled directed multigraphs.
//!
//! A rule is a span `L ← K → R` of injective embeddings. Applying it at an
//! injective match `m: L → G` deletes `m(L \ l(K))` to give the context `D`,
//! then glues a fresh copy of `R \ r(K)` onto `D` to give `H`:
//!
//! ```text
//!   L <--l-- K --r--> R
//!   |m       |n       |p
//!   v        v        v
//!   G <--g-- D --h--> H
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: String,
    pub dst: String,
    pub label: String,
}

impl Edge {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, label: impl Into<String>) -> Edge {
        Edge {
            src: src.into(),
            dst: dst.into(),
            label: label.into(),
        }
    }
}

/// Nodes map id -> label; edges map id -> (src, dst, label).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInstance {
    #[serde(default)]
    pub nodes: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, Edge>,
}

impl GraphInstance {
    pub fn new() -> GraphInstance {
        GraphInstance::default()
    }

    pub fn node(mut self, id: &str, label: &str) -> Self {
        self.nodes.insert(id.into(), label.into());
        self
    }

    pub fn edge(mut self, id: &str, src: &str, dst: &str, label: &str) -> Self {
        self.edges.insert(id.into(), Edge::new(src, dst, label));
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (id, e) in &self.edges {
            for end in [&e.src, &e.dst] {
                if !self.nodes.contains_key(end) {
                    return Err(Error::InvalidGraph(format!(
                        "edge `{id}` refers to unknown node `{end}`"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A structure-preserving map between graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphMorphism {
    #[serde(default)]
    pub node_map: BTreeMap<String, String>,
    #[serde(default)]
    pub edge_map: BTreeMap<String, String>,
}

/// The injective morphisms of rule spans and matches.
pub type GraphEmbedding = GraphMorphism;

impl GraphMorphism {
    /// Identity on the items of `g`.
    pub fn identity(g: &GraphInstance) -> GraphMorphism {
        GraphMorphism {
            node_map: g.nodes.keys().map(|k| (k.clone(), k.clone())).collect(),
            edge_map: g.edges.keys().map(|k| (k.clone(), k.clone())).collect(),
        }
    }

    /// `self ∘ other`
    pub fn after(&self, other: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            node_map: other
                .node_map
                .iter()
                .filter_map(|(k, v)| self.node_map.get(v).map(|w| (k.clone(), w.clone())))
                .collect(),
            edge_map: other
                .edge_map
                .iter()
                .filter_map(|(k, v)| self.edge_map.get(v).map(|w| (k.clone(), w.clone())))
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let n: BTreeSet<_> = self.node_map.values().collect();
        let e: BTreeSet<_> = self.edge_map.values().collect();
        n.len() == self.node_map.len() && e.len() == self.edge_map.len()
    }

    /// Checks totality, label and incidence preservation, and optionally
    /// injectivity.
    pub fn validate(&self, from: &GraphInstance, to: &GraphInstance, injective: bool) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidMorphism(m));
        for (n, label) in &from.nodes {
            match self.node_map.get(n).and_then(|t| to.nodes.get(t).map(|l| (t, l))) {
                None => return bad(format!("node `{n}` has no valid image")),
                Some((t, l)) if l != label => {
                    return bad(format!("node `{n}` labeled `{label}` maps to `{t}` labeled `{l}`"))
                }
                _ => {}
            }
        }
        for (id, e) in &from.edges {
            let Some(t) = self.edge_map.get(id) else {
                return bad(format!("edge `{id}` has no image"));
            };
            let Some(te) = to.edges.get(t) else {
                return bad(format!("edge `{id}` maps to unknown edge `{t}`"));
            };
            if te.label != e.label || te.src != self.node_map[&e.src] || te.dst != self.node_map[&e.dst] {
                return bad(format!("edge `{id}` is not preserved by its image `{t}`"));
            }
        }
        if self.node_map.len() != from.nodes.len() || self.edge_map.len() != from.edges.len() {
            return bad("map has entries outside its domain".into());
        }
        if injective && !self.is_injective() {
            return bad("map is not injective".into());
        }
        Ok(())
    }
}

/// Enumerates homomorphisms `from → to` extending `fixed`, in lexicographic
/// order of node then edge assignments. `trials` counts search steps and
/// the search fails with `BudgetExceeded` past `budget`.
pub fn homomorphisms(
    from: &GraphInstance,
    to: &GraphInstance,
    injective: bool,
    fixed: &GraphMorphism,
    budget: usize,
    trials: &mut usize,
) -> Result<Vec<GraphMorphism>> {
    struct Search<'a> {
        from: &'a GraphInstance,
        to: &'a GraphInstance,
        injective: bool,
        fixed: &'a GraphMorphism,
        nodes: Vec<&'a String>,
        edges: Vec<&'a String>,
        budget: usize,
        out: Vec<GraphMorphism>,
    }

    impl<'a> Search<'a> {
        fn tick(&self, trials: &mut usize) -> Result<()> {
            *trials += 1;
            if *trials > self.budget {
                Err(Error::BudgetExceeded(self.budget))
            } else {
                Ok(())
            }
        }

        fn node_ok(&self, cur: &GraphMorphism, n: &str, t: &str) -> bool {
            if self.from.nodes[n] != self.to.nodes[t] {
                return false;
            }
            if let Some(f) = self.fixed.node_map.get(n) {
                if f != t {
                    return false;
                }
            }
            if self.injective && cur.node_map.values().any(|v| v == t) {
                return false;
            }
            // every edge between already-placed nodes needs a candidate
            self.from.edges.values().all(|e| {
                let s = if e.src == n { Some(t) } else { cur.node_map.get(&e.src).map(String::as_str) };
                let d = if e.dst == n { Some(t) } else { cur.node_map.get(&e.dst).map(String::as_str) };
                match (s, d) {
                    (Some(s), Some(d)) if e.src == n || e.dst == n => self
                        .to
                        .edges
                        .values()
                        .any(|te| te.src == s && te.dst == d && te.label == e.label),
                    _ => true,
                }
            })
        }

        fn nodes_from(&mut self, i: usize, cur: &mut GraphMorphism, trials: &mut usize) -> Result<()> {
            if i == self.nodes.len() {
                return self.edges_from(0, cur, trials);
            }
            let n = self.nodes[i];
            // a pinned node has one candidate; skip the scan
            let pinned = self.fixed.node_map.get(n).filter(|t| self.to.nodes.contains_key(*t));
            let targets: Vec<&String> = match pinned {
                Some(t) => vec![t],
                None => self.to.nodes.keys().collect(),
            };
            for t in targets {
                self.tick(trials)?;
                if self.node_ok(cur, n, t) {
                    cur.node_map.insert(n.clone(), t.clone());
                    self.nodes_from(i + 1, cur, trials)?;
                    cur.node_map.remove(n);
                }
            }
            Ok(())
        }

        fn edges_from(&mut self, i: usize, cur: &mut GraphMorphism, trials: &mut usize) -> Result<()> {
            if i == self.edges.len() {
                self.out.push(cur.clone());
                return Ok(());
            }
            let id = self.edges[i];
            let e = &self.from.edges[id];
            let (s, d) = (cur.node_map[&e.src].clone(), cur.node_map[&e.dst].clone());
            for (tid, te) in &self.to.edges {
                self.tick(trials)?;
                if te.label != e.label || te.src != s || te.dst != d {
                    continue;
                }
                if let Some(f) = self.fixed.edge_map.get(id) {
                    if f != tid {
                        continue;
                    }
                }
                if self.injective && cur.edge_map.values().any(|v| v == tid) {
                    continue;
                }
                cur.edge_map.insert(id.clone(), tid.clone());
                self.edges_from(i + 1, cur, trials)?;
                cur.edge_map.remove(id);
            }
            Ok(())
        }
    }

    let mut s = Search {
        from,
        to,
        injective,
        fixed,
        nodes: from.nodes.keys().collect(),
        edges: from.edges.keys().collect(),
        budget,
        out: Vec::new(),
    };
    s.nodes_from(0, &mut GraphMorphism::default(), trials)?;
    Ok(s.out)
}

fn unbounded(from: &GraphInstance, to: &GraphInstance, injective: bool) -> Vec<GraphMorphism> {
    let mut trials = 0;
    homomorphisms(from, to, injective, &GraphMorphism::default(), usize::MAX, &mut trials)
        .expect("unbounded search")
}

/// Brute-force isomorphism test.
pub fn is_isomorphic(a: &GraphInstance, b: &GraphInstance) -> bool {
    if a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    // with equal sizes an injective homomorphism is a bijection on nodes
    // and edges, and its inverse is again a homomorphism
    !unbounded(a, b, true).is_empty()
}

/// JSON form of a rule; `l` and `r` default to the identity on shared ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSpec {
    #[serde(rename = "L")]
    pub lhs: GraphInstance,
    #[serde(rename = "K")]
    pub interface: GraphInstance,
    #[serde(rename = "R")]
    pub rhs: GraphInstance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<GraphMorphism>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<GraphMorphism>,
}

/// A span `L ← K → R` of injective embeddings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: GraphInstance,
    pub interface: GraphInstance,
    pub rhs: GraphInstance,
    pub l: GraphEmbedding,
    pub r: GraphEmbedding,
}

impl Rule {
    pub fn new(
        lhs: GraphInstance,
        interface: GraphInstance,
        rhs: GraphInstance,
        l: GraphEmbedding,
        r: GraphEmbedding,
    ) -> Result<Rule> {
        for g in [&lhs, &interface, &rhs] {
            g.validate()?;
        }
        l.validate(&interface, &lhs, true)?;
        r.validate(&interface, &rhs, true)?;
        Ok(Rule {
            lhs,
            interface,
            rhs,
            l,
            r,
        })
    }

    pub fn from_spec(spec: &RuleSpec) -> Result<Rule> {
        let id = GraphMorphism::identity(&spec.interface);
        Rule::new(
            spec.lhs.clone(),
            spec.interface.clone(),
            spec.rhs.clone(),
            spec.l.clone().unwrap_or_else(|| id.clone()),
            spec.r.clone().unwrap_or(id),
        )
    }

    pub fn to_spec(&self) -> RuleSpec {
        RuleSpec {
            lhs: self.lhs.clone(),
            interface: self.interface.clone(),
            rhs: self.rhs.clone(),
            l: Some(self.l.clone()),
            r: Some(self.r.clone()),
        }
    }

    /// `R ← K → L`
    pub fn inverse(&self) -> Rule {
        Rule {
            lhs: self.rhs.clone(),
            interface: self.interface.clone(),
            rhs: self.lhs.clone(),
            l: self.r.clone(),
            r: self.l.clone(),
        }
    }

    /// All injective matches `L → G`, lexicographic on node assignments.
    pub fn find_matches(&self, g: &GraphInstance) -> Vec<GraphEmbedding> {
        unbounded(&self.lhs, g, true)
    }

    /// Why the rule cannot be applied at `m`, if it cannot.
    pub fn gluing_violation(&self, g: &GraphInstance, m: &GraphEmbedding) -> Option<String> {
        let kept: BTreeSet<&String> = self.l.node_map.values().collect();
        let deleted: BTreeSet<&String> = self
            .lhs
            .nodes
            .keys()
            .filter(|n| !kept.contains(n))
            .map(|n| &m.node_map[n])
            .collect();
        let matched_edges: BTreeSet<&String> = m.edge_map.values().collect();
        for (id, e) in &g.edges {
            if matched_edges.contains(id) {
                continue;
            }
            if deleted.contains(&e.src) || deleted.contains(&e.dst) {
                return Some(format!("edge `{id}` would be left dangling"));
            }
        }
        // identification: two items of L with one image must both be kept
        if !m.is_injective() {
            return Some("match identifies items of L".into());
        }
        None
    }

    pub fn gluing_condition(&self, g: &GraphInstance, m: &GraphEmbedding) -> bool {
        self.gluing_violation(g, m).is_none()
    }

    pub fn apply(&self, g: &GraphInstance, m: &GraphEmbedding, match_index: usize) -> Result<Derivation> {
        g.validate()?;
        m.validate(&self.lhs, g, true)?;
        if let Some(why) = self.gluing_violation(g, m) {
            return Err(Error::GluingViolation(why));
        }
        let kept_nodes: BTreeSet<&String> = self.l.node_map.values().collect();
        let kept_edges: BTreeSet<&String> = self.l.edge_map.values().collect();
        let del_nodes: BTreeSet<&String> = self
            .lhs
            .nodes
            .keys()
            .filter(|n| !kept_nodes.contains(n))
            .map(|n| &m.node_map[n])
            .collect();
        let del_edges: BTreeSet<&String> = self
            .lhs
            .edges
            .keys()
            .filter(|e| !kept_edges.contains(e))
            .map(|e| &m.edge_map[e])
            .collect();

        let context = GraphInstance {
            nodes: g
                .nodes
                .iter()
                .filter(|(k, _)| !del_nodes.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            edges: g
                .edges
                .iter()
                .filter(|(k, _)| !del_edges.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        };
        let g_map = GraphMorphism::identity(&context);
        let n = m.after(&self.l);

        let mut result = context.clone();
        let h_map = GraphMorphism::identity(&context);
        let fresh = |base: &str, taken: &dyn Fn(&str) -> bool| {
            let mut id = format!("r#{base}#{match_index}");
            while taken(&id) {
                id.push('\'');
            }
            id
        };
        let mut p = GraphMorphism::default();
        let r_node_inv: BTreeMap<&String, &String> = self.r.node_map.iter().map(|(k, v)| (v, k)).collect();
        let r_edge_inv: BTreeMap<&String, &String> = self.r.edge_map.iter().map(|(k, v)| (v, k)).collect();
        for (id, label) in &self.rhs.nodes {
            let target = match r_node_inv.get(id) {
                Some(k) => n.node_map[*k].clone(),
                None => {
                    let t = fresh(id, &|s| result.nodes.contains_key(s));
                    result.nodes.insert(t.clone(), label.clone());
                    t
                }
            };
            p.node_map.insert(id.clone(), target);
        }
        for (id, e) in &self.rhs.edges {
            let target = match r_edge_inv.get(id) {
                Some(k) => n.edge_map[*k].clone(),
                None => {
                    let t = fresh(id, &|s| result.edges.contains_key(s));
                    let edge = Edge::new(p.node_map[&e.src].clone(), p.node_map[&e.dst].clone(), e.label.clone());
                    result.edges.insert(t.clone(), edge);
                    t
                }
            };
            p.edge_map.insert(id.clone(), target);
        }

        let d = Derivation {
            context,
            result,
            n,
            p,
            g: g_map,
            h: h_map,
        };
        if !d.squares_commute(self, m) {
            return Err(Error::InvalidMorphism("rewrite squares do not commute".into()));
        }
        Ok(d)
    }
}

/// The bottom row of a double-pushout diagram plus its vertical maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    /// `D`
    pub context: GraphInstance,
    /// `H`
    pub result: GraphInstance,
    /// `K → D`
    pub n: GraphEmbedding,
    /// `R → H`, the comatch
    pub p: GraphEmbedding,
    /// `D → G`
    pub g: GraphEmbedding,
    /// `D → H`
    pub h: GraphEmbedding,
}

impl Derivation {
    /// `m∘l = g∘n` and `p∘r = h∘n`.
    pub fn squares_commute(&self, rule: &Rule, m: &GraphEmbedding) -> bool {
        m.after(&rule.l) == self.g.after(&self.n) && self.p.after(&rule.r) == self.h.after(&self.n)
    }

    /// Brute-force check that `(H, p, h)` is a pushout of `D ←n K →r R`.
    ///
    /// Candidate cocones are built from `H` by adding one node, merging two
    /// nodes of equal label, or duplicating one edge; for each, every
    /// compatible pair `(p*, h*)` must factor through exactly one `u`.
    pub fn verify_pushout_universal(&self, rule: &Rule, budget: usize) -> Result<bool> {
        Ok(self.pushout_counterexample(rule, budget)?.is_none())
    }

    /// A candidate cocone with no or several mediators, if one exists.
    pub fn pushout_counterexample(&self, rule: &Rule, budget: usize) -> Result<Option<GraphInstance>> {
        let mut trials = 0;
        let none = GraphMorphism::default();
        for target in cocone_candidates(&self.result) {
            for hs in homomorphisms(&self.context, &target, false, &none, budget, &mut trials)? {
                // p*∘r = h*∘n pins p* on the image of K
                let on_k = hs.after(&self.n);
                let pin = GraphMorphism {
                    node_map: rule.r.node_map.iter().map(|(k, x)| (x.clone(), on_k.node_map[k].clone())).collect(),
                    edge_map: rule.r.edge_map.iter().map(|(k, x)| (x.clone(), on_k.edge_map[k].clone())).collect(),
                };
                for ps in homomorphisms(&rule.rhs, &target, false, &pin, budget, &mut trials)? {
                    if self.mediators(&target, &ps, &hs, budget, &mut trials)? != 1 {
                        return Ok(Some(target));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Number of `u : H → target` with `u∘p = ps` and `u∘h = hs`.
    fn mediators(
        &self,
        target: &GraphInstance,
        ps: &GraphMorphism,
        hs: &GraphMorphism,
        budget: usize,
        trials: &mut usize,
    ) -> Result<usize> {
        let mut pin = GraphMorphism::default();
        for (via, wanted) in [(&self.p, ps), (&self.h, hs)] {
            for (maps, via_map, wanted_map) in [
                (&mut pin.node_map, &via.node_map, &wanted.node_map),
                (&mut pin.edge_map, &via.edge_map, &wanted.edge_map),
            ] {
                for (x, hx) in via_map {
                    let w = &wanted_map[x];
                    if maps.insert(hx.clone(), w.clone()).is_some_and(|old| &old != w) {
                        return Ok(0);
                    }
                }
            }
        }
        let found = homomorphisms(&self.result, target, false, &pin, budget, trials)?;
        Ok(found.iter().filter(|u| &u.after(&self.p) == ps && &u.after(&self.h) == hs).count())
    }
}

fn cocone_candidates(h: &GraphInstance) -> Vec<GraphInstance> {
    let mut out = vec![h.clone()];
    let labels: BTreeSet<&String> = h.nodes.values().collect();
    for (i, label) in labels.iter().enumerate() {
        let mut g = h.clone();
        g.nodes.insert(format!("extra#{i}"), (*label).clone());
        out.push(g);
    }
    let ids: Vec<&String> = h.nodes.keys().collect();
    for (i, a) in ids.iter().enumerate() {
        for b in &ids[i + 1..] {
            if h.nodes[*a] != h.nodes[*b] {
                continue;
            }
            let mut g = h.clone();
            g.nodes.remove(*b);
            for e in g.edges.values_mut() {
                if &e.src == *b {
                    e.src = (*a).clone();
                }
                if &e.dst == *b {
                    e.dst = (*a).clone();
                }
            }
            out.push(g);
        }
    }
    for (id, e) in &h.edges {
        let mut g = h.clone();
        g.edges.insert(format!("{id}#dup"), e.clone());
        out.push(g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_identity(l: GraphInstance, k: GraphInstance, r: GraphInstance) -> Rule {
        Rule::from_spec(&RuleSpec {
            lhs: l,
            interface: k,
            rhs: r,
            l: None,
            r: None,
        })
        .unwrap()
    }

    fn delete_edge() -> Rule {
        let l = GraphInstance::new().node("u", "a").node("v", "b").edge("e", "u", "v", "x");
        let k = GraphInstance::new().node("u", "a").node("v", "b");
        span_identity(l, k.clone(), k)
    }

    fn relabel() -> Rule {
        let l = GraphInstance::new().node("u", "a").node("v", "a").edge("e", "u", "v", "x");
        let k = GraphInstance::new().node("u", "a").node("v", "a");
        let r = GraphInstance::new().node("u", "a").node("v", "a").edge("e2", "u", "v", "y");
        span_identity(l, k, r)
    }

    #[test]
    fn single_node_matches() {
        let l = GraphInstance::new().node("n", "a");
        let rule = span_identity(l.clone(), l.clone(), l);
        let g = GraphInstance::new().node("p", "a").node("q", "a");
        assert_eq!(rule.find_matches(&g).len(), 2);
    }

    #[test]
    fn edge_in_labeled_triangle() {
        let rule = delete_edge();
        let g = GraphInstance::new()
            .node("1", "a")
            .node("2", "b")
            .node("3", "c")
            .edge("e1", "1", "2", "x")
            .edge("e2", "2", "3", "x")
            .edge("e3", "3", "1", "x");
        let ms = rule.find_matches(&g);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].edge_map["e"], "e1");
    }

    #[test]
    fn self_match_includes_identity() {
        let rule = relabel();
        let ms = rule.find_matches(&rule.lhs);
        assert!(ms.contains(&GraphMorphism::identity(&rule.lhs)));
    }

    #[test]
    fn dangling_edge_blocks_deletion() {
        let l = GraphInstance::new().node("u", "a");
        let rule = span_identity(l, GraphInstance::new(), GraphInstance::new());
        let g = GraphInstance::new().node("1", "a").node("2", "b").edge("e", "1", "2", "x");
        let m = &rule.find_matches(&g)[0];
        assert!(!rule.gluing_condition(&g, m));
        assert!(matches!(rule.apply(&g, m, 0), Err(Error::GluingViolation(_))));
        let isolated = GraphInstance::new().node("1", "a").node("2", "b");
        let m = &rule.find_matches(&isolated)[0];
        assert!(rule.gluing_condition(&isolated, m));
        let d = rule.apply(&isolated, m, 0).unwrap();
        assert_eq!(d.result, GraphInstance::new().node("2", "b"));
    }

    #[test]
    fn nothing_deleted_always_glues() {
        let rule = relabel().inverse();
        let k = rule.interface.clone();
        let keep = span_identity(k.clone(), k.clone(), k);
        let g = GraphInstance::new().node("1", "a").node("2", "a").edge("e", "1", "2", "y");
        for m in keep.find_matches(&g) {
            assert!(keep.gluing_condition(&g, &m));
        }
    }

    #[test]
    fn delete_single_edge() {
        let rule = delete_edge();
        let g = GraphInstance::new().node("1", "a").node("2", "b").edge("e", "1", "2", "x");
        let m = &rule.find_matches(&g)[0];
        let d = rule.apply(&g, m, 0).unwrap();
        assert_eq!(d.result.nodes.len(), 2);
        assert!(d.result.edges.is_empty());
        assert!(d.squares_commute(&rule, m));
        assert!(d.verify_pushout_universal(&rule, 1_000_000).unwrap());
    }

    #[test]
    fn identity_rule_preserves_graph() {
        let l = GraphInstance::new().node("u", "a").node("v", "a").edge("e", "u", "v", "x");
        let rule = span_identity(l.clone(), l.clone(), l);
        let g = GraphInstance::new()
            .node("1", "a")
            .node("2", "a")
            .node("3", "a")
            .edge("e1", "1", "2", "x")
            .edge("e2", "2", "3", "x");
        let m = &rule.find_matches(&g)[0];
        let d = rule.apply(&g, m, 0).unwrap();
        assert!(is_isomorphic(&d.result, &g));
        assert!(d.verify_pushout_universal(&rule, 1_000_000).unwrap());
    }

    #[test]
    fn relabel_one_edge() {
        let rule = relabel();
        let g = GraphInstance::new()
            .node("1", "a")
            .node("2", "a")
            .node("3", "a")
            .edge("e1", "1", "2", "x")
            .edge("e2", "2", "3", "z")
            .edge("e3", "3", "1", "z");
        let ms = rule.find_matches(&g);
        assert_eq!(ms.len(), 1);
        let d = rule.apply(&g, &ms[0], 0).unwrap();
        assert_eq!(d.result.edges["r#e2#0"], Edge::new("1", "2", "y"));
        assert_eq!(d.result.edges["e2"], g.edges["e2"]);
        assert_eq!(d.result.edges["e3"], g.edges["e3"]);
        assert!(!d.result.edges.contains_key("e1"));
        // applying the inverse at the comatch recovers G
        let back = rule.inverse().apply(&d.result, &d.p, 0).unwrap();
        assert!(is_isomorphic(&back.result, &g));
    }

    #[test]
    fn corrupted_result_fails_universality() {
        let rule = delete_edge();
        let g = GraphInstance::new().node("1", "a").node("2", "b").edge("e", "1", "2", "x");
        let m = &rule.find_matches(&g)[0];
        let mut d = rule.apply(&g, m, 0).unwrap();
        d.result.nodes.insert("spurious".into(), "a".into());
        assert!(!d.verify_pushout_universal(&rule, 1_000_000).unwrap());
    }

    #[test]
    fn budget_exceeded() {
        let rule = delete_edge();
        let g = GraphInstance::new().node("1", "a").node("2", "b").edge("e", "1", "2", "x");
        let m = &rule.find_matches(&g)[0];
        let d = rule.apply(&g, m, 0).unwrap();
        assert_eq!(d.verify_pushout_universal(&rule, 3), Err(Error::BudgetExceeded(3)));
    }

    #[test]
    fn invalid_inputs() {
        let bad = GraphInstance::new().node("1", "a").edge("e", "1", "9", "x");
        assert!(matches!(bad.validate(), Err(Error::InvalidGraph(_))));
        let l = GraphInstance::new().node("u", "a");
        let k = GraphInstance::new().node("u", "b");
        let err = Rule::from_spec(&RuleSpec {
            lhs: l.clone(),
            interface: k,
            rhs: l,
            l: None,
            r: None,
        })
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMorphism(_)));
    }

    #[test]
    fn rule_json() {
        let spec: RuleSpec = serde_json::from_str(
            r#"{"L":{"nodes":{"u":"a","v":"b"},"edges":{"e":{"src":"u","dst":"v","label":"x"}}},
                "K":{"nodes":{"u":"a","v":"b"}},
                "R":{"nodes":{"u":"a","v":"b"}}}"#,
        )
        .unwrap();
        let rule = Rule::from_spec(&spec).unwrap();
        assert_eq!(rule, delete_edge());
        let again: RuleSpec = serde_json::from_str(&serde_json::to_string(&rule.to_spec()).unwrap()).unwrap();
        assert_eq!(Rule::from_spec(&again).unwrap(), rule);
    }
}
