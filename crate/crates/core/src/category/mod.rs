//! Finite categories presented by a quiver and relations.

mod forcing;
mod morphisms;
mod objects;

use serde::{Deserialize, Serialize};

pub use forcing::{Equation, ForcingSet, ForcingTarget, CANDIDATE_BUDGET};

use crate::congruence::{enumerate_and_saturate, ClassId, CongruenceTable, MorphismClass, SaturationConfig};
use crate::error::Result;
use crate::quiver::{ObjectId, Quiver, QuiverSpec};
use crate::word::{PathWord, WordSpec};

/// JSON form of a category: a quiver plus morphism equations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    #[serde(flatten)]
    pub quiver: QuiverSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphism_eqs: Vec<(WordSpec, WordSpec)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition_symbol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_prefix: Option<String>,
}

/// A quiver together with its saturated congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    quiver: Quiver,
    relations: Vec<(WordSpec, WordSpec)>,
    table: CongruenceTable,
    config: SaturationConfig,
    pub composition_symbol: String,
    pub identity_prefix: String,
}

impl Category {
    /// The free category on `quiver` (modulo its arrow equivalences).
    pub fn free(quiver: Quiver, config: SaturationConfig) -> Result<Category> {
        Category::new(quiver, Vec::new(), config)
    }

    pub fn new(
        quiver: Quiver,
        relations: Vec<(WordSpec, WordSpec)>,
        config: SaturationConfig,
    ) -> Result<Category> {
        let resolved = relations
            .iter()
            .map(|(u, v)| Ok((PathWord::resolve(&quiver, u)?, PathWord::resolve(&quiver, v)?)))
            .collect::<Result<Vec<_>>>()?;
        let table = enumerate_and_saturate(&quiver, &resolved, &config)?;
        Ok(Category {
            quiver,
            relations,
            table,
            config,
            composition_symbol: "∘".into(),
            identity_prefix: "id_".into(),
        })
    }

    pub fn from_spec(spec: &CategorySpec, config: SaturationConfig) -> Result<Category> {
        let quiver = Quiver::from_spec(&spec.quiver)?;
        let mut c = Category::new(quiver, spec.morphism_eqs.clone(), config)?;
        if let Some(s) = &spec.composition_symbol {
            c.composition_symbol = s.clone();
        }
        if let Some(s) = &spec.identity_prefix {
            c.identity_prefix = s.clone();
        }
        Ok(c)
    }

    pub fn to_spec(&self) -> CategorySpec {
        CategorySpec {
            quiver: self.quiver.to_spec(),
            morphism_eqs: self.relations.clone(),
            composition_symbol: (self.composition_symbol != "∘").then(|| self.composition_symbol.clone()),
            identity_prefix: (self.identity_prefix != "id_").then(|| self.identity_prefix.clone()),
        }
    }

    /// Re-saturates with additional morphism and object equations.
    pub fn with_relations(
        &self,
        morphism_eqs: &[(WordSpec, WordSpec)],
        object_eqs: &[(String, String)],
    ) -> Result<Category> {
        let quiver = if object_eqs.is_empty() {
            self.quiver.clone()
        } else {
            self.quiver.extended(&[], &[], object_eqs, &[])?
        };
        let mut relations = self.relations.clone();
        relations.extend(morphism_eqs.iter().cloned());
        let mut c = Category::new(quiver, relations, self.config)?;
        c.composition_symbol = self.composition_symbol.clone();
        c.identity_prefix = self.identity_prefix.clone();
        Ok(c)
    }

    /// The opposite category: arrows and relation words reversed.
    pub fn dual(&self) -> Result<Category> {
        let relations = self
            .relations
            .iter()
            .map(|(u, v)| (u.reversed(), v.reversed()))
            .collect();
        let mut c = Category::new(self.quiver.reverse(), relations, self.config)?;
        c.composition_symbol = self.composition_symbol.clone();
        c.identity_prefix = self.identity_prefix.clone();
        Ok(c)
    }

    /// The class in `dual` corresponding to `f`.
    pub fn reverse_class(&self, dual: &Category, f: ClassId) -> Result<ClassId> {
        let w = self.table.class(f)?.canonical.reversed();
        dual.table.class_of(&w)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[(WordSpec, WordSpec)] {
        &self.relations
    }

    pub fn table(&self) -> &CongruenceTable {
        &self.table
    }

    pub fn config(&self) -> &SaturationConfig {
        &self.config
    }

    /// Resolved objects (one per equivalence class), sorted.
    pub fn objects(&self) -> &[ObjectId] {
        self.table.objects()
    }

    pub fn morphisms(&self) -> &[MorphismClass] {
        self.table.classes()
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.table.class_ids()
    }

    pub fn class(&self, f: ClassId) -> Result<&MorphismClass> {
        self.table.class(f)
    }

    pub fn hom(&self, x: &ObjectId, y: &ObjectId) -> Result<&[ClassId]> {
        self.table.hom_ids(x, y)
    }

    pub fn identity(&self, x: &ObjectId) -> Result<ClassId> {
        self.table.identity(x)
    }

    pub fn compose(&self, g: ClassId, f: ClassId) -> Result<ClassId> {
        self.table.compose(g, f)
    }

    pub fn dom(&self, f: ClassId) -> Result<&ObjectId> {
        self.table.dom(f)
    }

    pub fn cod(&self, f: ClassId) -> Result<&ObjectId> {
        self.table.cod(f)
    }

    pub fn word(&self, spec: &WordSpec) -> Result<PathWord> {
        PathWord::resolve(&self.quiver, spec)
    }

    /// Class of a JSON-style word.
    pub fn class_of(&self, spec: &WordSpec) -> Result<ClassId> {
        self.table.class_of(&self.word(spec)?)
    }

    pub fn word_equal(&self, u: &WordSpec, v: &WordSpec) -> Result<bool> {
        self.table.word_equal(&self.word(u)?, &self.word(v)?)
    }

    pub fn render_word(&self, w: &PathWord) -> String {
        w.render(&self.composition_symbol, &self.identity_prefix)
    }

    /// Canonical word of a class, using this category's symbols.
    pub fn render(&self, f: ClassId) -> String {
        match self.table.class(f) {
            Ok(c) => self.render_word(&c.canonical),
            Err(_) => f.to_string(),
        }
    }

    pub fn morphism_count(&self) -> usize {
        self.table.len()
    }

    pub fn object_count(&self) -> usize {
        self.objects().len()
    }

    /// `(dom, cod)` pairs with more than one class.
    pub(crate) fn split_hom_sets(&self) -> Vec<(ObjectId, ObjectId)> {
        let mut out = Vec::new();
        for x in self.objects() {
            for y in self.objects() {
                if self.hom(x, y).map(|h| h.len() > 1).unwrap_or(false) {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        out
    }

    /// Same object labels, arrows, object partition and class structure,
    /// regardless of how the relations were presented.
    pub fn same_structure(&self, other: &Category) -> bool {
        let sorted = |q: &Quiver| {
            let mut o: Vec<_> = q.objects().to_vec();
            o.sort();
            let mut a: Vec<_> = q.arrows().to_vec();
            a.sort_by(|x, y| x.id.cmp(&y.id));
            (o, a, q.resolved_objects())
        };
        sorted(&self.quiver) == sorted(&other.quiver) && self.table.dump() == other.table.dump()
    }

    /// Every hom-set has at most one class.
    pub fn is_commutative(&self) -> bool {
        self.split_hom_sets().is_empty()
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::quiver::Arrow;

    pub fn cat(objects: &[&str], arrows: &[(&str, &str, &str)], eqs: &[(&[&str], &[&str])]) -> Category {
        cat_with(objects, arrows, &[], eqs)
    }

    pub fn ws(ids: &[&str]) -> WordSpec {
        if let Some(x) = ids.first().and_then(|s| s.strip_prefix("id_")) {
            WordSpec::identity(x)
        } else {
            WordSpec::arrows(ids.iter().copied())
        }
    }

    pub fn cat_with(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        object_eqs: &[(&str, &str)],
        eqs: &[(&[&str], &[&str])],
    ) -> Category {
        let q = Quiver::build(
            objects.iter().copied(),
            arrows.iter().map(|&(i, d, c)| Arrow::new(i, d, c)),
            object_eqs.iter().copied(),
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        let rels = eqs.iter().map(|(u, v)| (ws(u), ws(v))).collect();
        Category::new(q, rels, SaturationConfig::default()).unwrap()
    }

    pub fn triangle() -> Category {
        cat(&["X", "Y", "Z"], &[("f", "X", "Y"), ("g", "Y", "Z")], &[])
    }

    pub fn square(eqs: &[(&[&str], &[&str])]) -> Category {
        cat(
            &["W", "X", "Y", "Z"],
            &[("f", "X", "Y"), ("g", "X", "Z"), ("i", "Y", "W"), ("h", "Z", "W")],
            eqs,
        )
    }

    pub fn id(c: &Category, ids: &[&str]) -> ClassId {
        c.class_of(&ws(ids)).unwrap()
    }
}
