//! Quivers: directed multigraphs of objects and labeled arrows, optionally
//! carrying declared object and arrow equivalences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque object label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub String);

impl ObjectId {
    pub fn new(label: impl Into<String>) -> Self {
        ObjectId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub dom: ObjectId,
    pub cod: ObjectId,
}

impl Arrow {
    pub fn new(id: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        Arrow {
            id: id.into(),
            dom: ObjectId(dom.into()),
            cod: ObjectId(cod.into()),
        }
    }

    pub fn reversed(&self) -> Arrow {
        Arrow {
            id: self.id.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
        }
    }
}

/// The JSON document form of a quiver.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub object_eqs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrow_eqs: Vec<(String, String)>,
}

/// A validated quiver. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    objects: Vec<ObjectId>,
    arrows: Vec<Arrow>,
    object_eqs: Vec<(ObjectId, ObjectId)>,
    arrow_eqs: Vec<(String, String)>,
    /// Canonical representative index per object (lexicographically least label in its class).
    rep: Vec<usize>,
}

/// Partition of the objects of a quiver into equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<ObjectId>>,
}

impl Partition {
    /// Classes in order of their representatives; each class is sorted and
    /// its first element is the representative.
    pub fn classes(&self) -> &[Vec<ObjectId>] {
        &self.classes
    }

    pub fn representative(&self, object: &ObjectId) -> Option<&ObjectId> {
        self.classes
            .iter()
            .find(|c| c.contains(object))
            .map(|c| &c[0])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

impl Quiver {
    /// Builds and validates a quiver.
    pub fn build<O, S>(
        objects: impl IntoIterator<Item = O>,
        arrows: impl IntoIterator<Item = Arrow>,
        object_eqs: impl IntoIterator<Item = (S, S)>,
        arrow_eqs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Quiver>
    where
        O: Into<String>,
        S: Into<String>,
    {
        let objects: Vec<ObjectId> = objects.into_iter().map(|o| ObjectId(o.into())).collect();
        let arrows: Vec<Arrow> = arrows.into_iter().collect();
        let object_eqs: Vec<(ObjectId, ObjectId)> = object_eqs
            .into_iter()
            .map(|(a, b)| (ObjectId(a.into()), ObjectId(b.into())))
            .collect();
        let arrow_eqs: Vec<(String, String)> = arrow_eqs
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();

        let mut index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if o.0.is_empty() {
                return Err(Error::EmptyLabel { kind: "object" });
            }
            if index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateLabel {
                    kind: "object",
                    label: o.0.clone(),
                });
            }
        }
        let mut arrow_ids = BTreeSet::new();
        for a in &arrows {
            if a.id.is_empty() {
                return Err(Error::EmptyLabel { kind: "arrow" });
            }
            if !arrow_ids.insert(a.id.as_str()) {
                return Err(Error::DuplicateLabel {
                    kind: "arrow",
                    label: a.id.clone(),
                });
            }
            for end in [&a.dom, &a.cod] {
                if !index.contains_key(end) {
                    return Err(Error::UnknownEndpoint {
                        owner: a.id.clone(),
                        object: end.0.clone(),
                    });
                }
            }
        }

        let mut parent: Vec<usize> = (0..objects.len()).collect();
        for (a, b) in &object_eqs {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownEndpoint {
                owner: format!("{a} = {b}"),
                object: a.0.clone(),
            })?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownEndpoint {
                owner: format!("{a} = {b}"),
                object: b.0.clone(),
            })?;
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            if ra != rb {
                // keep the lexicographically least label as root
                if objects[ra] < objects[rb] {
                    parent[rb] = ra;
                } else {
                    parent[ra] = rb;
                }
            }
        }
        let rep: Vec<usize> = (0..objects.len()).map(|i| find(&mut parent, i)).collect();

        let quiver = Quiver {
            objects,
            arrows,
            object_eqs,
            arrow_eqs,
            rep,
        };
        for (f, g) in &quiver.arrow_eqs {
            let af = quiver.arrow(f).ok_or_else(|| Error::UnknownArrow(f.clone()))?;
            let ag = quiver.arrow(g).ok_or_else(|| Error::UnknownArrow(g.clone()))?;
            if quiver.resolve(&af.dom) != quiver.resolve(&ag.dom)
                || quiver.resolve(&af.cod) != quiver.resolve(&ag.cod)
            {
                return Err(Error::MismatchedArrowEquivalence {
                    left: f.clone(),
                    right: g.clone(),
                });
            }
        }
        Ok(quiver)
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver> {
        Quiver::build(
            spec.objects.iter().cloned(),
            spec.arrows.iter().cloned(),
            spec.object_eqs.iter().cloned(),
            spec.arrow_eqs.iter().cloned(),
        )
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            objects: self.objects.iter().map(|o| o.0.clone()).collect(),
            arrows: self.arrows.clone(),
            object_eqs: self
                .object_eqs
                .iter()
                .map(|(a, b)| (a.0.clone(), b.0.clone()))
                .collect(),
            arrow_eqs: self.arrow_eqs.clone(),
        }
    }

    pub fn empty() -> Quiver {
        Quiver {
            objects: Vec::new(),
            arrows: Vec::new(),
            object_eqs: Vec::new(),
            arrow_eqs: Vec::new(),
            rep: Vec::new(),
        }
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_eqs(&self) -> &[(ObjectId, ObjectId)] {
        &self.object_eqs
    }

    pub fn arrow_eqs(&self) -> &[(String, String)] {
        &self.arrow_eqs
    }

    pub fn has_object(&self, object: &ObjectId) -> bool {
        self.objects.contains(object)
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    /// Canonical representative of the object's equivalence class.
    pub fn resolve(&self, object: &ObjectId) -> Option<&ObjectId> {
        let i = self.objects.iter().position(|o| o == object)?;
        Some(&self.objects[self.rep[i]])
    }

    /// Class representatives in sorted order.
    pub fn representatives(&self) -> Vec<ObjectId> {
        let set: BTreeSet<&ObjectId> = self.rep.iter().map(|&r| &self.objects[r]).collect();
        set.into_iter().cloned().collect()
    }

    pub fn resolved_objects(&self) -> Partition {
        let mut classes: BTreeMap<&ObjectId, Vec<ObjectId>> = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            classes
                .entry(&self.objects[self.rep[i]])
                .or_default()
                .push(o.clone());
        }
        Partition {
            classes: classes
                .into_values()
                .map(|mut c| {
                    c.sort();
                    c
                })
                .collect(),
        }
    }

    /// Same quiver with every arrow reversed; equivalences are kept.
    pub fn reverse(&self) -> Quiver {
        Quiver {
            objects: self.objects.clone(),
            arrows: self.arrows.iter().map(Arrow::reversed).collect(),
            object_eqs: self.object_eqs.clone(),
            arrow_eqs: self.arrow_eqs.clone(),
            rep: self.rep.clone(),
        }
    }

    /// Returns a copy extended with further objects, arrows and equivalences.
    pub fn extended(
        &self,
        objects: &[String],
        arrows: &[Arrow],
        object_eqs: &[(String, String)],
        arrow_eqs: &[(String, String)],
    ) -> Result<Quiver> {
        let mut spec = self.to_spec();
        spec.objects.extend(objects.iter().cloned());
        spec.arrows.extend(arrows.iter().cloned());
        spec.object_eqs.extend(object_eqs.iter().cloned());
        spec.arrow_eqs.extend(arrow_eqs.iter().cloned());
        Quiver::from_spec(&spec)
    }
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = QuiverSpec::deserialize(d)?;
        Quiver::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}
