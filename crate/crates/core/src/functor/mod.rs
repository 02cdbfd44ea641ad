//! Functors out of a finite category.
//!
//! A functor is given by object and arrow maps plus extensions of its
//! codomain; the codomain category itself is always derived from the image
//! of the domain, so functoriality holds by construction.

mod fiber;
mod properties;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use fiber::FiberCategory;
pub use properties::FunctorClasses;

use crate::category::Category;
use crate::congruence::ClassId;
use crate::error::{Error, Result};
use crate::quiver::{Arrow, ObjectId, Quiver};
use crate::word::{PathWord, WordSpec};

fn covariant_default() -> bool {
    true
}

/// Maps and codomain extensions, as written in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSpec {
    #[serde(default = "covariant_default")]
    pub covariant: bool,
    #[serde(default)]
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub arrow_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_arrows: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_object_eqs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_morphism_eqs: Vec<(WordSpec, WordSpec)>,
}

impl Default for FunctorSpec {
    fn default() -> Self {
        FunctorSpec {
            covariant: true,
            object_map: BTreeMap::new(),
            arrow_map: BTreeMap::new(),
            extra_objects: Vec::new(),
            extra_arrows: Vec::new(),
            extra_object_eqs: Vec::new(),
            extra_morphism_eqs: Vec::new(),
        }
    }
}

impl FunctorSpec {
    /// Maps every object and arrow of `c` to `prefix` + its label.
    pub fn prefixed(c: &Category, prefix: &str) -> FunctorSpec {
        let q = c.quiver();
        FunctorSpec {
            object_map: q
                .objects()
                .iter()
                .map(|o| (o.0.clone(), format!("{prefix}{o}")))
                .collect(),
            arrow_map: q
                .arrows()
                .iter()
                .map(|a| (a.id.clone(), format!("{prefix}{}", a.id)))
                .collect(),
            ..FunctorSpec::default()
        }
    }

    /// Maps every object and arrow to itself.
    pub fn identity(c: &Category) -> FunctorSpec {
        FunctorSpec::prefixed(c, "")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    spec: FunctorSpec,
    domain: Category,
    codomain: Category,
    class_image: Vec<ClassId>,
}

impl Functor {
    pub fn build(domain: Category, spec: FunctorSpec) -> Result<Functor> {
        let dq = domain.quiver();
        for o in dq.objects() {
            if !spec.object_map.contains_key(o.as_str()) {
                return Err(Error::PartialMap {
                    kind: "object",
                    label: o.0.clone(),
                });
            }
        }
        for a in dq.arrows() {
            if !spec.arrow_map.contains_key(&a.id) {
                return Err(Error::PartialMap {
                    kind: "arrow",
                    label: a.id.clone(),
                });
            }
        }

        // Objects first, so image endpoints can be compared after resolution.
        let mut objects: Vec<String> = Vec::new();
        for o in dq.objects() {
            let image = &spec.object_map[o.as_str()];
            if !objects.contains(image) {
                objects.push(image.clone());
            }
        }
        for o in &spec.extra_objects {
            if !objects.contains(o) {
                objects.push(o.clone());
            }
        }
        let mut object_eqs: Vec<(String, String)> = dq
            .object_eqs()
            .iter()
            .map(|(a, b)| (spec.object_map[a.as_str()].clone(), spec.object_map[b.as_str()].clone()))
            .collect();
        object_eqs.extend(spec.extra_object_eqs.iter().cloned());
        let skeleton = Quiver::build(objects.clone(), Vec::new(), object_eqs.clone(), Vec::<(String, String)>::new())?;
        let resolve = |label: &str| {
            skeleton
                .resolve(&ObjectId::new(label))
                .cloned()
                .ok_or_else(|| Error::UnknownEndpoint {
                    owner: "codomain".into(),
                    object: label.into(),
                })
        };

        let mut arrows: Vec<Arrow> = Vec::new();
        for a in dq.arrows() {
            let (d, c) = (&spec.object_map[a.dom.as_str()], &spec.object_map[a.cod.as_str()]);
            let image = if spec.covariant {
                Arrow::new(spec.arrow_map[&a.id].clone(), d.clone(), c.clone())
            } else {
                Arrow::new(spec.arrow_map[&a.id].clone(), c.clone(), d.clone())
            };
            let existing = arrows
                .iter()
                .chain(spec.extra_arrows.iter())
                .find(|b| b.id == image.id);
            match existing {
                Some(b) => {
                    if resolve(b.dom.as_str())? != resolve(image.dom.as_str())?
                        || resolve(b.cod.as_str())? != resolve(image.cod.as_str())?
                    {
                        return Err(Error::EndpointIncoherent {
                            arrow: a.id.clone(),
                            detail: format!(
                                "image `{}` is {} -> {} but also {} -> {}",
                                image.id, b.dom, b.cod, image.dom, image.cod
                            ),
                        });
                    }
                }
                None => arrows.push(image),
            }
        }
        for b in &spec.extra_arrows {
            if !arrows.iter().any(|a| a.id == b.id) {
                arrows.push(b.clone());
            }
        }
        let mut arrow_eqs: Vec<(String, String)> = Vec::new();
        let mut relations: Vec<(WordSpec, WordSpec)> = Vec::new();
        for (f, g) in dq.arrow_eqs() {
            let (ff, fg) = (&spec.arrow_map[f], &spec.arrow_map[g]);
            if ff != fg {
                arrow_eqs.push((ff.clone(), fg.clone()));
            }
        }
        let quiver = Quiver::build(objects, arrows, object_eqs, arrow_eqs)?;
        for (u, v) in domain.relations() {
            relations.push((map_spec(&spec, u), map_spec(&spec, v)));
        }
        relations.extend(spec.extra_morphism_eqs.iter().cloned());
        let mut codomain = Category::new(quiver, relations, *domain.config())?;
        codomain.composition_symbol = domain.composition_symbol.clone();
        codomain.identity_prefix = domain.identity_prefix.clone();
        Functor::assemble_unchecked(domain, codomain, spec)
    }

    /// Pairs a domain and codomain without deriving the codomain. Meant for
    /// testing `validate_functoriality`; prefer [`Functor::build`].
    pub fn assemble_unchecked(domain: Category, codomain: Category, spec: FunctorSpec) -> Result<Functor> {
        let mut f = Functor {
            spec,
            domain,
            codomain,
            class_image: Vec::new(),
        };
        f.class_image = f
            .domain
            .morphisms()
            .iter()
            .map(|c| f.apply_to_word(&c.canonical))
            .collect::<Result<_>>()?;
        Ok(f)
    }

    pub fn spec(&self) -> &FunctorSpec {
        &self.spec
    }

    pub fn domain(&self) -> &Category {
        &self.domain
    }

    pub fn codomain(&self) -> &Category {
        &self.codomain
    }

    pub fn is_covariant(&self) -> bool {
        self.spec.covariant
    }

    /// Image of a domain object, resolved in the codomain.
    pub fn apply_to_object(&self, x: &ObjectId) -> Result<ObjectId> {
        let label = self
            .spec
            .object_map
            .get(x.as_str())
            .ok_or_else(|| Error::UnknownObject(x.0.clone()))?;
        Ok(self.codomain.table().resolve_object(&ObjectId::new(label.as_str()))?.clone())
    }

    /// The image word (reversed for contravariant functors).
    pub fn map_word(&self, w: &PathWord) -> Result<PathWord> {
        let spec = map_spec(&self.spec, &w.to_spec());
        self.codomain.word(&spec)
    }

    pub fn apply_to_word(&self, w: &PathWord) -> Result<ClassId> {
        if w.len() > self.domain.config().max_word_length {
            return Err(Error::WordOutOfRange {
                length: w.len(),
                bound: self.domain.config().max_word_length,
            });
        }
        self.codomain.table().class_of(&self.map_word(w)?)
    }

    pub fn apply_to_morphism(&self, f: ClassId) -> Result<ClassId> {
        self.class_image
            .get(f.0)
            .copied()
            .ok_or(Error::UnknownMorphism(f.0))
    }

    /// The same maps with the opposite variance; the codomain becomes the
    /// dual of the old one.
    pub fn swap_variance(&self) -> Result<Functor> {
        let mut spec = self.spec.clone();
        spec.covariant = !spec.covariant;
        spec.extra_arrows = spec.extra_arrows.iter().map(Arrow::reversed).collect();
        spec.extra_morphism_eqs = spec
            .extra_morphism_eqs
            .iter()
            .map(|(u, v)| (u.reversed(), v.reversed()))
            .collect();
        Functor::build(self.domain.clone(), spec)
    }

    /// Domain equalities whose images differ in the codomain. Empty for
    /// every functor produced by [`Functor::build`].
    pub fn functoriality_violations(&self) -> Result<Vec<(PathWord, PathWord)>> {
        let mut out = Vec::new();
        for c in self.domain.morphisms() {
            let image = self.apply_to_word(&c.canonical)?;
            for m in &c.members {
                if self.apply_to_word(m)? != image {
                    out.push((c.canonical.clone(), m.clone()));
                }
            }
        }
        for (u, v) in self.domain.relations() {
            let (u, v) = (self.domain.word(u)?, self.domain.word(v)?);
            if self.apply_to_word(&u)? != self.apply_to_word(&v)? {
                out.push((u, v));
            }
        }
        Ok(out)
    }

    pub fn validate_functoriality(&self) -> Result<bool> {
        Ok(self.functoriality_violations()?.is_empty())
    }
}

/// Translates a domain word through the maps of `spec`.
fn map_spec(spec: &FunctorSpec, w: &WordSpec) -> WordSpec {
    match w {
        WordSpec::Identity { id_at } => WordSpec::identity(
            spec.object_map
                .get(id_at)
                .cloned()
                .unwrap_or_else(|| id_at.clone()),
        ),
        WordSpec::Arrows(ids) => {
            let mapped = ids
                .iter()
                .map(|a| spec.arrow_map.get(a).cloned().unwrap_or_else(|| a.clone()));
            if spec.covariant {
                WordSpec::Arrows(mapped.collect())
            } else {
                WordSpec::Arrows(mapped.rev().collect())
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::category::test_support::ws;

    pub fn functor(
        domain: Category,
        covariant: bool,
        extra_objects: &[&str],
        extra_arrows: &[(&str, &str, &str)],
        extra_object_eqs: &[(&str, &str)],
        extra_eqs: &[(&[&str], &[&str])],
    ) -> Functor {
        let mut spec = FunctorSpec::prefixed(&domain, "F");
        spec.covariant = covariant;
        spec.extra_objects = extra_objects.iter().map(|s| s.to_string()).collect();
        spec.extra_arrows = extra_arrows
            .iter()
            .map(|&(i, d, c)| Arrow::new(i, d, c))
            .collect();
        spec.extra_object_eqs = extra_object_eqs
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        spec.extra_morphism_eqs = extra_eqs.iter().map(|(u, v)| (ws(u), ws(v))).collect();
        Functor::build(domain, spec).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::category::test_support::*;
    use crate::congruence::SaturationConfig;

    #[test]
    fn covariant_image_of_composite() {
        let f = functor(triangle(), true, &[], &[], &[], &[]);
        let d = f.domain();
        let c = f.codomain();
        assert_eq!(c.morphism_count(), 6);
        let gf = f.apply_to_morphism(id(d, &["g", "f"])).unwrap();
        assert_eq!(c.render(gf), "Fg∘Ff");
        let fx = f.apply_to_morphism(id(d, &["id_X"])).unwrap();
        assert_eq!(fx, c.identity(&"FX".into()).unwrap());
        assert!(f.validate_functoriality().unwrap());
    }

    #[test]
    fn contravariant_reverses_composition() {
        let f = functor(triangle(), false, &[], &[], &[], &[]);
        let c = f.codomain();
        assert_eq!(c.quiver().arrow("Ff").unwrap().dom, ObjectId::from("FY"));
        let gf = f.apply_to_morphism(id(f.domain(), &["g", "f"])).unwrap();
        assert_eq!(c.render(gf), "Ff∘Fg");
        assert_eq!(c.dom(gf).unwrap(), &ObjectId::from("FZ"));
    }

    #[test]
    fn swap_variance_round_trip() {
        let f = functor(square(&[(&["i", "f"], &["h", "g"])]), true, &["P"], &[("p", "P", "FX")], &[], &[]);
        let g = f.swap_variance().unwrap();
        assert!(!g.is_covariant());
        assert!(g.codomain().same_structure(&f.codomain().dual().unwrap()));
        let back = g.swap_variance().unwrap();
        assert!(back.codomain().same_structure(f.codomain()));
        assert_eq!(back.spec().object_map, f.spec().object_map);
    }

    #[test]
    fn empty_functor() {
        let domain = Category::free(Quiver::empty(), SaturationConfig::default()).unwrap();
        let f = Functor::build(domain, FunctorSpec::default()).unwrap();
        assert_eq!(f.codomain().morphism_count(), 0);
    }

    #[test]
    fn partial_map_rejected() {
        let mut spec = FunctorSpec::prefixed(&triangle(), "F");
        spec.arrow_map.remove("g");
        let err = Functor::build(triangle(), spec).unwrap_err();
        assert_eq!(
            err,
            Error::PartialMap {
                kind: "arrow",
                label: "g".into()
            }
        );
    }

    #[test]
    fn incoherent_endpoints_rejected() {
        let mut spec = FunctorSpec::prefixed(&triangle(), "F");
        spec.arrow_map.insert("g".into(), "Ff".into());
        let err = Functor::build(triangle(), spec).unwrap_err();
        assert!(matches!(err, Error::EndpointIncoherent { .. }));
        // collapsing both arrows is fine once the endpoints agree
        let mut spec = FunctorSpec::prefixed(&triangle(), "F");
        spec.arrow_map.insert("g".into(), "Ff".into());
        spec.extra_object_eqs = vec![("FX".into(), "FY".into()), ("FY".into(), "FZ".into())];
        spec.extra_morphism_eqs = vec![(ws(&["Ff", "Ff"]), ws(&["Ff"]))];
        let f = Functor::build(triangle(), spec).unwrap();
        assert!(f.validate_functoriality().unwrap());
    }

    #[test]
    fn missing_relation_is_a_violation() {
        let domain = square(&[(&["i", "f"], &["h", "g"])]);
        let free = functor(square(&[]), true, &[], &[], &[], &[]);
        let f = Functor::assemble_unchecked(
            domain.clone(),
            free.codomain().clone(),
            FunctorSpec::prefixed(&domain, "F"),
        )
        .unwrap();
        let v = f.functoriality_violations().unwrap();
        assert!(!v.is_empty());
        assert!(v.iter().any(|(a, b)| {
            let pair = [a.to_string(), b.to_string()];
            pair.contains(&"h∘g".to_string()) && pair.contains(&"i∘f".to_string())
        }));
    }
}
