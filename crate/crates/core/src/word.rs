//! Morphism words over a quiver.
//!
//! Words are stored in composition order: `["g", "f"]` is `g ∘ f`, so the
//! last arrow is applied first. The empty word at `X` is `id_X`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{ObjectId, Quiver};

/// Unresolved word as written in JSON: an arrow-id array in composition
/// order, or `{"id_at": "X"}` for an identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSpec {
    Identity { id_at: String },
    Arrows(Vec<String>),
}

impl WordSpec {
    pub fn arrows<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> WordSpec {
        WordSpec::Arrows(ids.into_iter().map(Into::into).collect())
    }

    pub fn identity(object: impl Into<String>) -> WordSpec {
        WordSpec::Identity {
            id_at: object.into(),
        }
    }

    /// The same word read in the opposite category.
    pub fn reversed(&self) -> WordSpec {
        match self {
            WordSpec::Identity { .. } => self.clone(),
            WordSpec::Arrows(a) => WordSpec::Arrows(a.iter().rev().cloned().collect()),
        }
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::Identity { id_at } => write!(f, "id_{id_at}"),
            WordSpec::Arrows(a) if a.is_empty() => f.write_str("<empty>"),
            WordSpec::Arrows(a) => f.write_str(&a.join("∘")),
        }
    }
}

/// A composable word with its resolved domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWord {
    pub dom: ObjectId,
    pub cod: ObjectId,
    pub arrows: Vec<String>,
}

impl PathWord {
    pub fn identity(object: ObjectId) -> PathWord {
        PathWord {
            dom: object.clone(),
            cod: object,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Resolves a word spec against a quiver, checking composability after
    /// object equivalences are applied.
    pub fn resolve(quiver: &Quiver, spec: &WordSpec) -> Result<PathWord> {
        match spec {
            WordSpec::Identity { id_at } => {
                let obj = ObjectId(id_at.clone());
                let rep = quiver
                    .resolve(&obj)
                    .ok_or_else(|| Error::UnknownObject(id_at.clone()))?;
                Ok(PathWord::identity(rep.clone()))
            }
            WordSpec::Arrows(ids) => {
                if ids.is_empty() {
                    return Err(Error::IllFormedWord(
                        "empty arrow list (use {\"id_at\": ...} for identities)".into(),
                    ));
                }
                let mut resolved = Vec::with_capacity(ids.len());
                for id in ids {
                    let a = quiver.arrow(id).ok_or_else(|| Error::UnknownArrow(id.clone()))?;
                    let dom = quiver.resolve(&a.dom).expect("validated quiver").clone();
                    let cod = quiver.resolve(&a.cod).expect("validated quiver").clone();
                    resolved.push((dom, cod));
                }
                // ids[i] is applied after ids[i + 1]
                for i in 0..ids.len() - 1 {
                    if resolved[i].0 != resolved[i + 1].1 {
                        return Err(Error::IllFormedWord(spec.to_string()));
                    }
                }
                Ok(PathWord {
                    dom: resolved[ids.len() - 1].0.clone(),
                    cod: resolved[0].1.clone(),
                    arrows: ids.clone(),
                })
            }
        }
    }

    pub fn to_spec(&self) -> WordSpec {
        if self.arrows.is_empty() {
            WordSpec::identity(self.dom.0.clone())
        } else {
            WordSpec::Arrows(self.arrows.clone())
        }
    }

    /// `self ∘ other`
    pub fn after(&self, other: &PathWord) -> Option<PathWord> {
        if other.cod != self.dom {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Some(PathWord {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            arrows,
        })
    }

    /// The word read in the opposite category.
    pub fn reversed(&self) -> PathWord {
        PathWord {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            arrows: self.arrows.iter().rev().cloned().collect(),
        }
    }

    /// Shortest first, then lexicographic on the arrow-id sequence.
    pub fn shortlex_cmp(&self, other: &PathWord) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
    }

    pub fn render(&self, composition: &str, identity_prefix: &str) -> String {
        if self.arrows.is_empty() {
            format!("{identity_prefix}{}", self.dom)
        } else {
            self.arrows.join(composition)
        }
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("∘", "id_"))
    }
}
