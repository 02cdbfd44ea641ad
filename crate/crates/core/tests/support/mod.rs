//! Fixture loading, random instance generators and brute-force oracles
//! shared by the integration test targets.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::PathBuf;

use fincat::{Arrow, Category, GraphInstance, GraphMorphism, Quiver, SaturationConfig, Workspace, WorkspaceSpec, WordSpec};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn dir(sub: &str) -> PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

pub fn json_files(sub: &str) -> Vec<PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

pub fn load_spec(path: &std::path::Path) -> WorkspaceSpec {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

pub fn load(path: &std::path::Path) -> (WorkspaceSpec, Workspace) {
    let spec = load_spec(path);
    let ws = Workspace::build(&spec, None).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    (spec, ws)
}

/// A fixture from `tests/fixtures` by file stem.
pub fn fixture(stem: &str) -> Workspace {
    load(&dir("fixtures").join(format!("{stem}.json"))).1
}

/// Every category a fixture names, quivers read as free categories.
pub fn fixture_categories(spec: &WorkspaceSpec, ws: &Workspace) -> Vec<(String, Category)> {
    spec.categories
        .keys()
        .chain(spec.quivers.keys())
        .map(|n| (n.clone(), ws.category(n).unwrap()))
        .collect()
}

// ---- paths, in diagrammatic order: arrow indices first-to-last ----

/// Start object and arrow indices.
pub type Path = (usize, Vec<usize>);
pub type Relation = (Path, Path);

#[derive(Debug, Clone)]
pub struct RawQuiver {
    pub objects: Vec<String>,
    /// (id, dom, cod) as object indices
    pub arrows: Vec<(String, usize, usize)>,
}

impl RawQuiver {
    pub fn quiver(&self) -> Quiver {
        Quiver::build(
            self.objects.clone(),
            self.arrows
                .iter()
                .map(|(id, s, t)| Arrow::new(id.clone(), self.objects[*s].clone(), self.objects[*t].clone()))
                .collect::<Vec<_>>(),
            Vec::<(String, String)>::new(),
            Vec::<(String, String)>::new(),
        )
        .unwrap()
    }

    /// Every path of at most `max_len` arrows, identities as `(object, [])`.
    pub fn paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.objects.len()).map(|o| (o, Vec::new())).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (start, p) in &frontier {
                let end = p.last().map_or(*start, |&a| self.arrows[a].2);
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.1 == end {
                        let mut q = p.clone();
                        q.push(i);
                        next.push((*start, q));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn end(&self, p: &Path) -> usize {
        p.1.last().map_or(p.0, |&a| self.arrows[a].2)
    }

    /// Composition-order spec of a diagrammatic path.
    pub fn spec(&self, p: &Path) -> WordSpec {
        if p.1.is_empty() {
            WordSpec::identity(self.objects[p.0].clone())
        } else {
            WordSpec::arrows(p.1.iter().rev().map(|&a| self.arrows[a].0.clone()))
        }
    }
}

pub fn random_quiver(rng: &mut impl Rng, max_objects: usize, max_arrows: usize, acyclic: bool) -> RawQuiver {
    let n = rng.gen_range(1..=max_objects);
    let objects: Vec<String> = (0..n).map(|i| format!("O{i}")).collect();
    let m = rng.gen_range(0..=max_arrows);
    let mut arrows = Vec::new();
    for i in 0..m {
        let (mut s, mut t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if acyclic {
            if n == 1 {
                break;
            }
            while s == t {
                t = rng.gen_range(0..n);
            }
            if s > t {
                std::mem::swap(&mut s, &mut t);
            }
        }
        arrows.push((format!("a{i}"), s, t));
    }
    RawQuiver { objects, arrows }
}

/// Up to `max_relations` equations between distinct parallel paths of
/// length at most `max_len`.
pub fn random_relations(
    rng: &mut impl Rng,
    q: &RawQuiver,
    max_relations: usize,
    max_len: usize,
) -> Vec<Relation> {
    let mut groups: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in q.paths(max_len) {
        groups.entry((p.0, q.end(&p))).or_default().push(p);
    }
    let pairs: Vec<_> = groups.into_values().filter(|g| g.len() >= 2).collect();
    let mut out = Vec::new();
    if pairs.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(0..=max_relations) {
        let g = pairs.choose(rng).unwrap();
        let mut two: Vec<_> = g.choose_multiple(rng, 2).cloned().collect();
        let b = two.pop().unwrap();
        let a = two.pop().unwrap();
        out.push((a, b));
    }
    out
}

pub fn build_category(
    q: &RawQuiver,
    rels: &[Relation],
    config: SaturationConfig,
) -> fincat::Result<Category> {
    let specs = rels.iter().map(|(u, v)| (q.spec(u), q.spec(v))).collect();
    Category::new(q.quiver(), specs, config)
}

/// Congruence classes of an acyclic quiver's paths, computed by
/// union-find over one-step subword replacements until nothing changes.
pub fn naive_partition(
    q: &RawQuiver,
    rels: &[Relation],
) -> (Vec<Path>, Vec<usize>) {
    let paths = q.paths(q.arrows.len());
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..paths.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let both: Vec<_> = rels
        .iter()
        .flat_map(|(u, v)| [(u.1.clone(), v.1.clone()), (v.1.clone(), u.1.clone())])
        .collect();
    loop {
        let mut changed = false;
        for (i, (start, w)) in paths.iter().enumerate() {
            for (lhs, rhs) in &both {
                if lhs.is_empty() || lhs.len() > w.len() {
                    continue;
                }
                for at in 0..=w.len() - lhs.len() {
                    if &w[at..at + lhs.len()] != lhs.as_slice() {
                        continue;
                    }
                    let mut x = w[..at].to_vec();
                    x.extend(rhs);
                    x.extend(&w[at + lhs.len()..]);
                    let j = index[&(*start, x)];
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let roots = (0..paths.len()).map(|i| find(&mut parent, i)).collect();
    (paths, roots)
}

// ---- graphs ----

pub fn random_graph(rng: &mut impl Rng, max_nodes: usize, max_edges: usize, labels: &[&str]) -> GraphInstance {
    let n = rng.gen_range(1..=max_nodes);
    let mut g = GraphInstance::new();
    for i in 0..n {
        g = g.node(&format!("n{i}"), labels.choose(rng).unwrap());
    }
    for i in 0..rng.gen_range(0..=max_edges) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g = g.edge(&format!("e{i}"), &format!("n{s}"), &format!("n{t}"), labels.choose(rng).unwrap());
    }
    g
}

/// Every injective, label-preserving structure map `from → to`, by trying
/// all node assignments and then all edge assignments.
pub fn brute_force_embeddings(from: &GraphInstance, to: &GraphInstance) -> BTreeSet<GraphMorphism> {
    let fnodes: Vec<&String> = from.nodes.keys().collect();
    let tnodes: Vec<&String> = to.nodes.keys().collect();
    let mut out = BTreeSet::new();
    let mut assignment = Vec::new();
    node_assignments(&fnodes, &tnodes, &mut assignment, &mut |nodes: &[&String]| {
        let node_map: BTreeMap<String, String> =
            fnodes.iter().zip(nodes).map(|(a, b)| ((*a).clone(), (*b).clone())).collect();
        if node_map.iter().any(|(a, b)| from.nodes[a] != to.nodes[b]) {
            return;
        }
        let fedges: Vec<&String> = from.edges.keys().collect();
        let mut chosen: Vec<&String> = Vec::new();
        edge_assignments(from, to, &node_map, &fedges, &mut chosen, &mut |edges: &[&String]| {
            out.insert(GraphMorphism {
                node_map: node_map.clone(),
                edge_map: fedges.iter().zip(edges).map(|(a, b)| ((*a).clone(), (*b).clone())).collect(),
            });
        });
    });
    out
}

fn node_assignments<'a>(from: &[&String], to: &[&'a String], acc: &mut Vec<&'a String>, f: &mut dyn FnMut(&[&'a String])) {
    if acc.len() == from.len() {
        f(acc);
        return;
    }
    for t in to {
        if !acc.contains(t) {
            acc.push(t);
            node_assignments(from, to, acc, f);
            acc.pop();
        }
    }
}

fn edge_assignments<'a>(
    from: &GraphInstance,
    to: &'a GraphInstance,
    node_map: &BTreeMap<String, String>,
    fedges: &[&String],
    acc: &mut Vec<&'a String>,
    f: &mut dyn FnMut(&[&'a String]),
) {
    if acc.len() == fedges.len() {
        f(acc);
        return;
    }
    let e = &from.edges[fedges[acc.len()]];
    for (id, t) in &to.edges {
        if !acc.contains(&id) && t.label == e.label && t.src == node_map[&e.src] && t.dst == node_map[&e.dst] {
            acc.push(id);
            edge_assignments(from, to, node_map, fedges, acc, f);
            acc.pop();
        }
    }
}

/// Isomorphism by trying every bijection: sorted multisets of
/// (src label, label, dst label) triples under each node bijection.
pub fn brute_force_isomorphic(a: &GraphInstance, b: &GraphInstance) -> bool {
    a.nodes.len() == b.nodes.len()
        && a.edges.len() == b.edges.len()
        && !brute_force_embeddings(a, b).is_empty()
}
