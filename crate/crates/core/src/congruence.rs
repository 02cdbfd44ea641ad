//! Enumeration of the morphisms generated by a quiver, modulo a congruence.
//!
//! The engine is a coset enumeration in the Todd–Coxeter style, specialised
//! to categories: nodes stand for words, the table records the left action
//! `(node, a) -> a ∘ node`, and every relation `u = v` is traced at every node
//! whose codomain is the relation's domain. Coincidences are merged with a
//! union-find. Enumeration stops defining new nodes past a length bound; the
//! result is accepted only when the table is closed and every class has a
//! representative strictly shorter than `max_word_length`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{ObjectId, Quiver};
use crate::word::PathWord;

/// Bounds for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationConfig {
    pub max_word_length: usize,
    pub max_classes: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            max_word_length: 12,
            max_classes: 10_000,
        }
    }
}

impl SaturationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_word_length == 0 {
            return Err(Error::InvalidConfig("max_word_length must be positive".into()));
        }
        if self.max_classes == 0 {
            return Err(Error::InvalidConfig("max_classes must be positive".into()));
        }
        Ok(())
    }

    pub fn with_max_word_length(mut self, n: usize) -> Self {
        self.max_word_length = n;
        self
    }
}

/// Index of a morphism class inside its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassId(pub usize);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One morphism of the generated category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismClass {
    pub id: ClassId,
    /// Shortest member, ties broken lexicographically.
    pub canonical: PathWord,
    /// Every word up to the longest canonical length that lies in this class,
    /// in shortlex order.
    pub members: Vec<PathWord>,
}

impl MorphismClass {
    pub fn dom(&self) -> &ObjectId {
        &self.canonical.dom
    }

    pub fn cod(&self) -> &ObjectId {
        &self.canonical.cod
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_identity()
    }
}

/// Saturated congruence over the words of a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceTable {
    objects: Vec<ObjectId>,
    object_index: BTreeMap<ObjectId, usize>,
    arrow_ids: Vec<String>,
    arrow_index: HashMap<String, usize>,
    arrow_ends: Vec<(usize, usize)>,
    classes: Vec<MorphismClass>,
    class_ends: Vec<(usize, usize)>,
    /// `action[c][a]` is the class of `a ∘ c` when composable.
    action: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
    hom: BTreeMap<(usize, usize), Vec<ClassId>>,
    max_word_length: usize,
    max_canonical: usize,
    complete: bool,
}

// Cap on the number of member words materialised across all classes.
const MEMBER_CAP: usize = 200_000;

struct Enumerator {
    arrow_cod: Vec<usize>,
    out: Vec<Vec<usize>>,
    slot: Vec<usize>,
    words: Vec<Vec<usize>>,
    node_cod: Vec<usize>,
    parent: Vec<usize>,
    rows: Vec<Vec<Option<usize>>>,
    rels: Vec<(Vec<usize>, Vec<usize>, usize)>,
    limit: usize,
    live: usize,
    node_cap: usize,
    overflow: bool,
}

impl Enumerator {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn add_node(&mut self, word: Vec<usize>, cod: usize) -> usize {
        let id = self.words.len();
        self.words.push(word);
        self.node_cod.push(cod);
        self.parent.push(id);
        self.rows.push(vec![None; self.out[cod].len()]);
        self.live += 1;
        if self.live > self.node_cap {
            self.overflow = true;
        }
        id
    }

    fn define(&mut self, n: usize, a: usize) -> usize {
        let mut word = Vec::with_capacity(self.words[n].len() + 1);
        word.push(a);
        word.extend_from_slice(&self.words[n]);
        let m = self.add_node(word, self.arrow_cod[a]);
        let s = self.slot[a];
        self.rows[n][s] = Some(m);
        m
    }

    /// Follows `word` (composition order) from node `n`.
    fn trace(&mut self, n: usize, word: &[usize], define: bool) -> Option<usize> {
        let mut cur = self.find(n);
        for &a in word.iter().rev() {
            let s = self.slot[a];
            cur = match self.rows[cur][s] {
                Some(t) => self.find(t),
                None if define && self.words[cur].len() < self.limit && !self.overflow => {
                    self.define(cur, a)
                }
                None => return None,
            };
        }
        Some(cur)
    }

    fn shortlex_le(a: &[usize], b: &[usize]) -> bool {
        (a.len(), a) <= (b.len(), b)
    }

    fn coincidence(&mut self, a: usize, b: usize) -> bool {
        let mut merged = false;
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            merged = true;
            let (keep, drop) = if Self::shortlex_le(&self.words[x], &self.words[y]) {
                (x, y)
            } else {
                (y, x)
            };
            self.parent[drop] = keep;
            self.live -= 1;
            let row = std::mem::take(&mut self.rows[drop]);
            for (s, entry) in row.into_iter().enumerate() {
                if let Some(t) = entry {
                    match self.rows[keep][s] {
                        None => self.rows[keep][s] = Some(t),
                        Some(u) => queue.push((u, t)),
                    }
                }
            }
        }
        merged
    }

    fn process_relations(&mut self, n: usize, define: bool) -> (bool, bool) {
        let mut merged = false;
        let mut failed = false;
        let cod = self.node_cod[n];
        for r in 0..self.rels.len() {
            if self.rels[r].2 != cod {
                continue;
            }
            let (u, v) = (self.rels[r].0.clone(), self.rels[r].1.clone());
            let x = self.trace(n, &u, define);
            let y = self.trace(n, &v, define);
            match (x, y) {
                (Some(x), Some(y)) => merged |= self.coincidence(x, y),
                _ => failed = true,
            }
            if self.find(n) != n {
                break;
            }
        }
        (merged, failed)
    }
}

/// Word as arrow indices, with resolved domain and codomain indices.
fn index_word(
    word: &PathWord,
    quiver: &Quiver,
    object_index: &BTreeMap<ObjectId, usize>,
    arrow_index: &HashMap<String, usize>,
    arrow_ends: &[(usize, usize)],
) -> Result<(Vec<usize>, usize, usize)> {
    if word.arrows.is_empty() {
        let o = quiver
            .resolve(&word.dom)
            .and_then(|r| object_index.get(r))
            .ok_or_else(|| Error::UnknownObject(word.dom.0.clone()))?;
        return Ok((Vec::new(), *o, *o));
    }
    let mut idx = Vec::with_capacity(word.arrows.len());
    for a in &word.arrows {
        idx.push(*arrow_index.get(a).ok_or_else(|| Error::UnknownArrow(a.clone()))?);
    }
    for w in idx.windows(2) {
        if arrow_ends[w[0]].0 != arrow_ends[w[1]].1 {
            return Err(Error::IllFormedWord(word.to_string()));
        }
    }
    let dom = arrow_ends[*idx.last().unwrap()].0;
    let cod = arrow_ends[idx[0]].1;
    Ok((idx, dom, cod))
}

/// Enumerates the category generated by `quiver` modulo `relations` and the
/// quiver's arrow equivalences.
pub fn enumerate_and_saturate(
    quiver: &Quiver,
    relations: &[(PathWord, PathWord)],
    cfg: &SaturationConfig,
) -> Result<CongruenceTable> {
    cfg.validate()?;
    let objects = quiver.representatives();
    let mut object_index = BTreeMap::new();
    for o in quiver.objects() {
        let rep = quiver.resolve(o).expect("object of quiver");
        let i = objects.binary_search(rep).expect("representative listed");
        object_index.insert(o.clone(), i);
    }

    let mut arrows: Vec<_> = quiver.arrows().iter().collect();
    arrows.sort_by(|a, b| a.id.cmp(&b.id));
    let arrow_ids: Vec<String> = arrows.iter().map(|a| a.id.clone()).collect();
    let arrow_index: HashMap<String, usize> = arrow_ids
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect();
    let arrow_ends: Vec<(usize, usize)> = arrows
        .iter()
        .map(|a| (object_index[&a.dom], object_index[&a.cod]))
        .collect();

    let mut rels = Vec::new();
    for (u, v) in relations {
        let (ui, ud, uc) = index_word(u, quiver, &object_index, &arrow_index, &arrow_ends)?;
        let (vi, vd, vc) = index_word(v, quiver, &object_index, &arrow_index, &arrow_ends)?;
        if ud != vd || uc != vc {
            return Err(Error::MismatchedRelation {
                left: u.to_string(),
                right: v.to_string(),
            });
        }
        if ui != vi {
            rels.push((ui, vi, ud));
        }
    }
    for (f, g) in quiver.arrow_eqs() {
        let (fi, gi) = (arrow_index[f], arrow_index[g]);
        if fi != gi {
            rels.push((vec![fi], vec![gi], arrow_ends[fi].0));
        }
    }

    let mut out = vec![Vec::new(); objects.len()];
    let mut slot = vec![0; arrow_ids.len()];
    for (a, &(d, _)) in arrow_ends.iter().enumerate() {
        slot[a] = out[d].len();
        out[d].push(a);
    }
    let longest_rel = rels
        .iter()
        .map(|(u, v, _)| u.len().max(v.len()))
        .max()
        .unwrap_or(0);

    let mut e = Enumerator {
        arrow_cod: arrow_ends.iter().map(|p| p.1).collect(),
        out,
        slot,
        words: Vec::new(),
        node_cod: Vec::new(),
        parent: Vec::new(),
        rows: Vec::new(),
        rels,
        limit: cfg.max_word_length + longest_rel,
        live: 0,
        node_cap: cfg.max_classes.saturating_mul(8).max(1024),
        overflow: false,
    };
    let mut identity_nodes = Vec::new();
    for o in 0..objects.len() {
        identity_nodes.push(e.add_node(Vec::new(), o));
    }

    let possibly_infinite = |e: &Enumerator| Error::PossiblyInfinite {
        max_word_length: cfg.max_word_length,
        classes: e.live,
    };

    let mut i = 0;
    while i < e.words.len() {
        if e.overflow {
            return Err(possibly_infinite(&e));
        }
        if e.find(i) == i {
            e.process_relations(i, true);
            if e.find(i) == i && e.words[i].len() < e.limit {
                let cod = e.node_cod[i];
                for k in 0..e.out[cod].len() {
                    if e.find(i) != i {
                        break;
                    }
                    if e.rows[i][k].is_none() {
                        let a = e.out[cod][k];
                        e.define(i, a);
                    }
                }
            }
        }
        i += 1;
    }
    if e.overflow {
        return Err(possibly_infinite(&e));
    }

    // Final passes: retrace every relation without defining, to a fixpoint.
    let mut closed;
    loop {
        let mut merged = false;
        closed = true;
        for n in 0..e.words.len() {
            if e.find(n) != n {
                continue;
            }
            let (m, failed) = e.process_relations(n, false);
            merged |= m;
            closed &= !failed;
        }
        if !merged {
            break;
        }
    }
    let roots: Vec<usize> = (0..e.words.len()).filter(|&n| e.find(n) == n).collect();
    for &n in &roots {
        if e.rows[n].iter().any(Option::is_none) {
            closed = false;
        }
    }
    if !closed || roots.len() > cfg.max_classes {
        return Err(possibly_infinite(&e));
    }

    // Canonical words by breadth-first search in shortlex order. Shortlex
    // minima are closed under taking suffixes, so extending minima suffices.
    let mut canon: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut frontier: Vec<usize> = Vec::new();
    for &n in &identity_nodes {
        let r = e.find(n);
        canon.entry(r).or_default();
        frontier.push(r);
    }
    while !frontier.is_empty() {
        let mut best: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &c in &frontier {
            let cod = e.node_cod[c];
            for k in 0..e.out[cod].len() {
                let a = e.out[cod][k];
                let t = e.rows[c][k].expect("closed table");
                let t = e.find(t);
                if canon.contains_key(&t) {
                    continue;
                }
                let mut w = vec![a];
                w.extend_from_slice(&canon[&c]);
                match best.get(&t) {
                    Some(b) if b <= &w => {}
                    _ => {
                        best.insert(t, w);
                    }
                }
            }
        }
        frontier = best.keys().copied().collect();
        canon.extend(best);
    }
    debug_assert_eq!(canon.len(), roots.len());
    let max_canonical = canon.values().map(Vec::len).max().unwrap_or(0);
    if max_canonical >= cfg.max_word_length {
        return Err(possibly_infinite(&e));
    }

    // Order classes by (dom, cod, canonical word).
    let node_dom = |e: &Enumerator, n: usize, w: &[usize]| -> usize {
        match w.last() {
            Some(&a) => arrow_ends[a].0,
            None => e.node_cod[n],
        }
    };
    let mut order: Vec<(usize, usize, Vec<usize>, usize)> = roots
        .iter()
        .map(|&r| {
            let w = canon[&r].clone();
            (node_dom(&e, r, &w), e.node_cod[r], w, r)
        })
        .collect();
    order.sort_by(|a, b| {
        (a.0, a.1, a.2.len(), &a.2).cmp(&(b.0, b.1, b.2.len(), &b.2))
    });
    let mut class_of_root = HashMap::new();
    for (k, o) in order.iter().enumerate() {
        class_of_root.insert(o.3, k);
    }
    let n_arrows = arrow_ids.len();
    let mut action = vec![vec![None; n_arrows]; order.len()];
    for (k, &(_, cod, _, r)) in order.iter().enumerate() {
        for s in 0..e.out[cod].len() {
            let a = e.out[cod][s];
            let t = e.rows[r][s].expect("closed table");
            let t = e.find(t);
            action[k][a] = Some(class_of_root[&t]);
        }
    }
    let to_path = |w: &[usize], dom: usize, cod: usize| PathWord {
        dom: objects[dom].clone(),
        cod: objects[cod].clone(),
        arrows: w.iter().map(|&a| arrow_ids[a].clone()).collect(),
    };

    // Members: all words up to the longest canonical length.
    let mut members: Vec<Vec<PathWord>> = vec![Vec::new(); order.len()];
    let mut level: Vec<(Vec<usize>, usize, usize)> = Vec::new();
    let mut identities = vec![0; objects.len()];
    for (o, &n) in identity_nodes.iter().enumerate() {
        let c = class_of_root[&e.find(n)];
        identities[o] = c;
        level.push((Vec::new(), o, c));
    }
    let mut total = 0;
    for len in 0..=max_canonical {
        for (w, dom, c) in &level {
            members[*c].push(to_path(w, *dom, order[*c].1));
        }
        total += level.len();
        if len == max_canonical || total > MEMBER_CAP {
            break;
        }
        let mut next = Vec::new();
        for (w, dom, c) in &level {
            let cod = order[*c].1;
            for &a in &e.out[cod] {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(a);
                nw.extend_from_slice(w);
                next.push((nw, *dom, action[*c][a].expect("composable")));
            }
        }
        level = next;
    }

    let mut classes = Vec::with_capacity(order.len());
    let mut class_ends = Vec::with_capacity(order.len());
    let mut hom: BTreeMap<(usize, usize), Vec<ClassId>> = BTreeMap::new();
    for (k, (dom, cod, w, _)) in order.iter().enumerate() {
        let mut m = std::mem::take(&mut members[k]);
        m.sort_by(|a, b| a.shortlex_cmp(b));
        classes.push(MorphismClass {
            id: ClassId(k),
            canonical: to_path(w, *dom, *cod),
            members: m,
        });
        class_ends.push((*dom, *cod));
        hom.entry((*dom, *cod)).or_default().push(ClassId(k));
    }

    Ok(CongruenceTable {
        objects,
        object_index,
        arrow_ids,
        arrow_index,
        arrow_ends,
        classes,
        class_ends,
        action,
        identities,
        hom,
        max_word_length: cfg.max_word_length,
        max_canonical,
        complete: true,
    })
}

impl CongruenceTable {
    /// Resolved object representatives, sorted.
    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn classes(&self) -> &[MorphismClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    /// Length of the longest canonical word.
    pub fn max_canonical_length(&self) -> usize {
        self.max_canonical
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        (0..self.classes.len()).map(ClassId)
    }

    pub fn class(&self, id: ClassId) -> Result<&MorphismClass> {
        self.classes.get(id.0).ok_or(Error::UnknownMorphism(id.0))
    }

    pub(crate) fn object_idx(&self, object: &ObjectId) -> Result<usize> {
        self.object_index
            .get(object)
            .copied()
            .ok_or_else(|| Error::UnknownObject(object.0.clone()))
    }

    /// Representative of the object's class.
    pub fn resolve_object(&self, object: &ObjectId) -> Result<&ObjectId> {
        Ok(&self.objects[self.object_idx(object)?])
    }

    pub fn dom(&self, id: ClassId) -> Result<&ObjectId> {
        Ok(self.class(id)?.dom())
    }

    pub fn cod(&self, id: ClassId) -> Result<&ObjectId> {
        Ok(self.class(id)?.cod())
    }

    pub fn identity(&self, object: &ObjectId) -> Result<ClassId> {
        Ok(ClassId(self.identities[self.object_idx(object)?]))
    }

    pub fn is_identity(&self, id: ClassId) -> Result<bool> {
        Ok(self.class(id)?.is_identity())
    }

    /// Class of a single generating arrow.
    pub fn arrow_class(&self, arrow: &str) -> Result<ClassId> {
        let a = *self
            .arrow_index
            .get(arrow)
            .ok_or_else(|| Error::UnknownArrow(arrow.to_string()))?;
        let src = self.identities[self.arrow_ends[a].0];
        Ok(ClassId(self.action[src][a].expect("arrow composable with identity")))
    }

    /// Class of `a ∘ c` for a generating arrow `a`, if composable.
    pub fn act(&self, c: ClassId, arrow: &str) -> Result<Option<ClassId>> {
        self.class(c)?;
        let a = *self
            .arrow_index
            .get(arrow)
            .ok_or_else(|| Error::UnknownArrow(arrow.to_string()))?;
        Ok(self.action[c.0][a].map(ClassId))
    }

    /// Class of an arbitrary composable word.
    pub fn class_of(&self, word: &PathWord) -> Result<ClassId> {
        if word.len() > self.max_word_length {
            return Err(Error::WordOutOfRange {
                length: word.len(),
                bound: self.max_word_length,
            });
        }
        if word.arrows.is_empty() {
            return self.identity(&word.dom);
        }
        let mut idx = Vec::with_capacity(word.len());
        for a in &word.arrows {
            idx.push(
                *self
                    .arrow_index
                    .get(a)
                    .ok_or_else(|| Error::UnknownArrow(a.clone()))?,
            );
        }
        let first = *idx.last().unwrap();
        let mut c = self.identities[self.arrow_ends[first].0];
        for &a in idx.iter().rev() {
            c = self.action[c][a].ok_or_else(|| Error::IllFormedWord(word.to_string()))?;
        }
        Ok(ClassId(c))
    }

    pub fn word_equal(&self, u: &PathWord, v: &PathWord) -> Result<bool> {
        Ok(self.class_of(u)? == self.class_of(v)?)
    }

    /// `g ∘ f`
    pub fn compose(&self, g: ClassId, f: ClassId) -> Result<ClassId> {
        let gc = self.class(g)?;
        self.class(f)?;
        if self.class_ends[f.0].1 != self.class_ends[g.0].0 {
            return Err(Error::NotComposable {
                left: gc.canonical.to_string(),
                right: self.classes[f.0].canonical.to_string(),
            });
        }
        let mut c = f.0;
        for a in gc.canonical.arrows.iter().rev() {
            c = self.action[c][self.arrow_index[a]].expect("composable");
        }
        Ok(ClassId(c))
    }

    /// Class ids of `hom(x, y)`, sorted by canonical word.
    pub fn hom_ids(&self, x: &ObjectId, y: &ObjectId) -> Result<&[ClassId]> {
        let key = (self.object_idx(x)?, self.object_idx(y)?);
        Ok(self.hom.get(&key).map(Vec::as_slice).unwrap_or(&[]))
    }

    pub fn hom_set(&self, x: &ObjectId, y: &ObjectId) -> Result<Vec<&MorphismClass>> {
        Ok(self
            .hom_ids(x, y)?
            .iter()
            .map(|c| &self.classes[c.0])
            .collect())
    }

    /// Checks that `u = v` already holds after precomposition with every
    /// class, i.e. that adding the relation would change nothing.
    pub fn relation_holds(&self, u: &PathWord, v: &PathWord) -> Result<bool> {
        let cu = self.class_of(u)?;
        let cv = self.class_of(v)?;
        if self.class_ends[cu.0] != self.class_ends[cv.0] {
            return Err(Error::MismatchedRelation {
                left: u.to_string(),
                right: v.to_string(),
            });
        }
        Ok(cu == cv)
    }

    /// One line per class: `dom -> cod : canonical = {member, ...}`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for c in &self.classes {
            let members: Vec<String> = c.members.iter().map(|m| m.to_string()).collect();
            s.push_str(&format!(
                "{} -> {} : {} = {{{}}}\n",
                c.dom(),
                c.cod(),
                c.canonical,
                members.join(", ")
            ));
        }
        s
    }
}
