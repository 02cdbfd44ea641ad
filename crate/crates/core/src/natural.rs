//! Natural transformations between parallel functors.
//!
//! Naturality is checked per generating arrow only: the squares for
//! composite morphisms follow by congruence, and those for identities hold
//! trivially since functors preserve identities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::congruence::ClassId;
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::quiver::ObjectId;
use crate::word::{PathWord, WordSpec};

/// JSON form: one component word per domain object.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationSpec {
    pub components: BTreeMap<String, WordSpec>,
}

/// The square for one generating arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalityEquation {
    pub arrow: String,
    pub lhs: PathWord,
    pub rhs: PathWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalityReport {
    pub required: Vec<NaturalityEquation>,
    pub satisfied: Vec<NaturalityEquation>,
    pub missing: Vec<NaturalityEquation>,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalTransformation {
    source: Functor,
    target: Functor,
    /// Keyed by resolved domain object.
    components: BTreeMap<ObjectId, ClassId>,
}

/// Same codomain labels and class structure.
pub fn matching_codomains(f: &Functor, g: &Functor) -> bool {
    f.codomain().same_structure(g.codomain())
}

impl NaturalTransformation {
    pub fn new(source: Functor, target: Functor, spec: &TransformationSpec) -> Result<Self> {
        if source.is_covariant() != target.is_covariant() {
            return Err(Error::VarianceMismatch);
        }
        if !source.domain().same_structure(target.domain()) {
            return Err(Error::DomainMismatch);
        }
        if !matching_codomains(&source, &target) {
            return Err(Error::CodomainMismatch);
        }
        let d = source.domain();
        let c = source.codomain();
        let mut components = BTreeMap::new();
        for (label, word) in &spec.components {
            let x = d.table().resolve_object(&ObjectId::new(label.as_str()))?.clone();
            let eta = c.class_of(word).map_err(|e| Error::IllTypedComponent {
                object: label.clone(),
                detail: e.to_string(),
            })?;
            let (fx, gx) = (source.apply_to_object(&x)?, target.apply_to_object(&x)?);
            if c.dom(eta)? != &fx || c.cod(eta)? != &gx {
                return Err(Error::IllTypedComponent {
                    object: label.clone(),
                    detail: format!(
                        "{} is {} -> {}, expected {} -> {}",
                        c.render(eta),
                        c.dom(eta)?,
                        c.cod(eta)?,
                        fx,
                        gx
                    ),
                });
            }
            if let Some(&prev) = components.get(&x) {
                if prev != eta {
                    return Err(Error::IllTypedComponent {
                        object: label.clone(),
                        detail: "conflicting components for equivalent objects".into(),
                    });
                }
            }
            components.insert(x, eta);
        }
        for x in d.objects() {
            if !components.contains_key(x) {
                return Err(Error::PartialMap {
                    kind: "component",
                    label: x.0.clone(),
                });
            }
        }
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }

    /// `id_F(X)` at every object.
    pub fn identity(f: &Functor) -> Result<Self> {
        let mut spec = TransformationSpec::default();
        for x in f.domain().objects() {
            spec.components
                .insert(x.0.clone(), WordSpec::identity(f.apply_to_object(x)?.0));
        }
        NaturalTransformation::new(f.clone(), f.clone(), &spec)
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<ObjectId, ClassId> {
        &self.components
    }

    pub fn component(&self, x: &ObjectId) -> Result<ClassId> {
        let x = self.source.domain().table().resolve_object(x)?;
        Ok(self.components[x])
    }

    fn component_word(&self, x: &ObjectId) -> Result<PathWord> {
        let c = self.source.codomain();
        Ok(c.class(self.component(x)?)?.canonical.clone())
    }

    /// One equation per generating arrow of the domain.
    pub fn naturality_conditions(&self) -> Result<NaturalityReport> {
        let d = self.source.domain();
        let c = self.source.codomain();
        let q = d.quiver();
        let mut arrows: Vec<_> = q.arrows().iter().collect();
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        let (mut required, mut satisfied, mut missing) = (Vec::new(), Vec::new(), Vec::new());
        for a in arrows {
            let w = d.word(&WordSpec::arrows([a.id.clone()]))?;
            let (fa, ga) = (self.source.map_word(&w)?, self.target.map_word(&w)?);
            let (ex, ey) = (self.component_word(&w.dom)?, self.component_word(&w.cod)?);
            // covariant: η_Y∘F(a) = G(a)∘η_X; contravariant: η_X∘F(a) = G(a)∘η_Y
            let (lhs, rhs) = if self.source.is_covariant() {
                (ey.after(&fa), ga.after(&ex))
            } else {
                (ex.after(&fa), ga.after(&ey))
            };
            let (lhs, rhs) = match (lhs, rhs) {
                (Some(l), Some(r)) => (l, r),
                _ => {
                    return Err(Error::IllTypedComponent {
                        object: w.dom.0.clone(),
                        detail: format!("naturality square for `{}` does not compose", a.id),
                    })
                }
            };
            let eq = NaturalityEquation {
                arrow: a.id.clone(),
                lhs,
                rhs,
            };
            if c.table().word_equal(&eq.lhs, &eq.rhs)? {
                satisfied.push(eq.clone());
            } else {
                missing.push(eq.clone());
            }
            required.push(eq);
        }
        let valid = missing.is_empty();
        Ok(NaturalityReport {
            required,
            satisfied,
            missing,
            valid,
        })
    }

    pub fn validate(&self) -> Result<bool> {
        Ok(self.naturality_conditions()?.valid)
    }

    /// Naturality checked directly for every domain morphism class, not
    /// just the generators.
    pub fn all_squares_commute(&self) -> Result<bool> {
        let d = self.source.domain();
        let c = self.source.codomain();
        for f in d.class_ids() {
            let (x, y) = (d.dom(f)?.clone(), d.cod(f)?.clone());
            let (ff, gf) = (self.source.apply_to_morphism(f)?, self.target.apply_to_morphism(f)?);
            let (ex, ey) = (self.component(&x)?, self.component(&y)?);
            let (lhs, rhs) = if self.source.is_covariant() {
                (c.compose(ey, ff)?, c.compose(gf, ex)?)
            } else {
                (c.compose(ex, ff)?, c.compose(gf, ey)?)
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn component_is_natural_iso(&self, x: &ObjectId) -> Result<bool> {
        self.source.codomain().is_isomorphism(self.component(x)?)
    }

    pub fn is_natural_isomorphism(&self) -> Result<bool> {
        if !self.validate()? {
            return Ok(false);
        }
        for x in self.source.domain().objects() {
            if !self.component_is_natural_iso(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `θ ∘ η` with components `θ_X ∘ η_X`.
    pub fn vertical_compose(theta: &NaturalTransformation, eta: &NaturalTransformation) -> Result<Self> {
        if !eta.target.codomain().same_structure(theta.source.codomain())
            || eta.target.spec().object_map != theta.source.spec().object_map
            || eta.target.spec().arrow_map != theta.source.spec().arrow_map
        {
            return Err(Error::CodomainMismatch);
        }
        let c = eta.source.codomain();
        let mut spec = TransformationSpec::default();
        for (x, &e) in &eta.components {
            let t = theta.component(x)?;
            let composite = c.compose(t, e)?;
            spec.components
                .insert(x.0.clone(), c.class(composite)?.canonical.to_spec());
        }
        NaturalTransformation::new(eta.source.clone(), theta.target.clone(), &spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::test_support::*;
    use crate::category::Category;
    use crate::functor::FunctorSpec;
    use crate::quiver::Arrow;

    /// F and G out of `domain` into one shared codomain holding both images
    /// and an arrow ηX: FX → GX per object.
    fn parallel(domain: &Category, extra_eqs: &[(&[&str], &[&str])]) -> (Functor, Functor, TransformationSpec) {
        let q = domain.quiver();
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut objects: Vec<String> = Vec::new();
        for o in q.objects() {
            objects.push(format!("F{o}"));
            objects.push(format!("G{o}"));
            arrows.push(Arrow::new(format!("eta{o}"), format!("F{o}"), format!("G{o}")));
        }
        for a in q.arrows() {
            arrows.push(Arrow::new(format!("F{}", a.id), format!("F{}", a.dom), format!("F{}", a.cod)));
            arrows.push(Arrow::new(format!("G{}", a.id), format!("G{}", a.dom), format!("G{}", a.cod)));
        }
        let eqs: Vec<_> = extra_eqs.iter().map(|(u, v)| (ws(u), ws(v))).collect();
        let make = |p: &str| {
            let mut spec = FunctorSpec::prefixed(domain, p);
            spec.extra_objects = objects.clone();
            spec.extra_arrows = arrows.clone();
            spec.extra_morphism_eqs = eqs.clone();
            Functor::build(domain.clone(), spec).unwrap()
        };
        let mut t = TransformationSpec::default();
        for o in q.objects() {
            t.components.insert(o.0.clone(), WordSpec::arrows([format!("eta{o}")]));
        }
        (make("F"), make("G"), t)
    }

    fn arrow_category() -> Category {
        cat(&["X", "Y"], &[("f", "X", "Y")], &[])
    }

    #[test]
    fn single_square() {
        let (f, g, t) = parallel(&arrow_category(), &[]);
        assert!(matching_codomains(&f, &g));
        let nt = NaturalTransformation::new(f, g, &t).unwrap();
        let r = nt.naturality_conditions().unwrap();
        assert_eq!(r.required.len(), 1);
        assert_eq!(r.missing.len(), 1);
        assert!(!r.valid);
        assert_eq!(r.required[0].lhs.to_string(), "etaY∘Ff");
        assert_eq!(r.required[0].rhs.to_string(), "Gf∘etaX");

        let (f, g, t) = parallel(&arrow_category(), &[(&["etaY", "Ff"], &["Gf", "etaX"])]);
        let nt = NaturalTransformation::new(f, g, &t).unwrap();
        assert!(nt.validate().unwrap());
        assert!(nt.all_squares_commute().unwrap());
        assert!(!nt.component_is_natural_iso(&"X".into()).unwrap());
        assert!(!nt.component_is_natural_iso(&"Y".into()).unwrap());
        assert!(!nt.is_natural_isomorphism().unwrap());
    }

    #[test]
    fn two_squares_imply_the_outer_rectangle() {
        let (f, g, t) = parallel(
            &triangle(),
            &[(&["etaY", "Ff"], &["Gf", "etaX"]), (&["etaZ", "Fg"], &["Gg", "etaY"])],
        );
        let nt = NaturalTransformation::new(f, g, &t).unwrap();
        let r = nt.naturality_conditions().unwrap();
        assert_eq!(r.required.len(), 2);
        assert!(r.valid);
        let c = nt.source().codomain();
        assert!(c
            .word_equal(&ws(&["etaZ", "Fg", "Ff"]), &ws(&["Gg", "Gf", "etaX"]))
            .unwrap());
        assert!(nt.all_squares_commute().unwrap());
        for x in ["X", "Y", "Z"] {
            assert!(!nt.component_is_natural_iso(&x.into()).unwrap());
        }
    }

    #[test]
    fn identity_transformation() {
        let (f, _, _) = parallel(&triangle(), &[]);
        let nt = NaturalTransformation::identity(&f).unwrap();
        assert!(nt.validate().unwrap());
        assert!(nt.is_natural_isomorphism().unwrap());
        let empty = Category::free(crate::quiver::Quiver::empty(), Default::default()).unwrap();
        let e = Functor::build(empty, FunctorSpec::default()).unwrap();
        let r = NaturalTransformation::identity(&e).unwrap().naturality_conditions().unwrap();
        assert!(r.required.is_empty() && r.valid);
    }

    #[test]
    fn vertical_composition_stays_natural() {
        let (f, g, t) = parallel(&arrow_category(), &[(&["etaY", "Ff"], &["Gf", "etaX"])]);
        let eta = NaturalTransformation::new(f.clone(), g.clone(), &t).unwrap();
        let id_g = NaturalTransformation::identity(&g).unwrap();
        let comp = NaturalTransformation::vertical_compose(&id_g, &eta).unwrap();
        assert!(comp.validate().unwrap());
        assert_eq!(comp.components(), eta.components());
    }

    #[test]
    fn mismatches_rejected() {
        let (f, g, mut t) = parallel(&arrow_category(), &[]);
        let swapped = g.swap_variance().unwrap();
        assert_eq!(
            NaturalTransformation::new(f.clone(), swapped, &t).unwrap_err(),
            Error::VarianceMismatch
        );
        let mut spec = g.spec().clone();
        spec.extra_objects.push("Extra".into());
        let g2 = Functor::build(g.domain().clone(), spec).unwrap();
        assert!(!matching_codomains(&f, &g2));
        assert_eq!(
            NaturalTransformation::new(f.clone(), g2, &t).unwrap_err(),
            Error::CodomainMismatch
        );
        t.components.insert("X".into(), WordSpec::arrows(["etaY"]));
        assert!(matches!(
            NaturalTransformation::new(f.clone(), g.clone(), &t),
            Err(Error::IllTypedComponent { .. })
        ));
        t.components.remove("X");
        assert!(matches!(
            NaturalTransformation::new(f, g, &t),
            Err(Error::PartialMap { .. })
        ));
    }

    #[test]
    fn contravariant_pair() {
        let (f, g, t) = parallel(&arrow_category(), &[]);
        let (f, g) = (f.swap_variance().unwrap(), g.swap_variance().unwrap());
        // η now runs GX -> FX in the dual codomain, so F ⇒ G is ill-typed
        // but G ⇒ F is fine
        assert!(NaturalTransformation::new(f.clone(), g.clone(), &t).is_err());
        let nt = NaturalTransformation::new(g, f, &t).unwrap();
        let r = nt.naturality_conditions().unwrap();
        assert_eq!(r.required.len(), 1);
        assert_eq!(r.required[0].lhs.to_string(), "etaX∘Gf");
        assert_eq!(r.required[0].rhs.to_string(), "Ff∘etaY");
    }
}
