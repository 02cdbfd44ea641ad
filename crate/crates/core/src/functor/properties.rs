//! Object- and hom-level properties of functors and the named classes built
//! from them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::Functor;
use crate::congruence::ClassId;
use crate::error::Result;
use crate::quiver::ObjectId;

/// The named functor classes, each composed from the primitive predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorClasses {
    pub equivalence: bool,
    pub embedding: bool,
    pub full_embedding: bool,
    pub inclusion: bool,
    pub full_inclusion: bool,
    pub endofunctor: bool,
    pub identity: bool,
    pub constant: bool,
    pub conservative: bool,
}

impl Functor {
    /// Resolved domain object -> resolved codomain object.
    pub fn object_image(&self) -> BTreeMap<ObjectId, ObjectId> {
        self.domain()
            .objects()
            .iter()
            .map(|x| (x.clone(), self.apply_to_object(x).expect("total map")))
            .collect()
    }

    /// Two distinct domain objects with the same image, if any.
    pub fn object_collision(&self) -> Option<(ObjectId, ObjectId)> {
        let mut seen: BTreeMap<ObjectId, ObjectId> = BTreeMap::new();
        for (x, fx) in self.object_image() {
            if let Some(prev) = seen.get(&fx) {
                return Some((prev.clone(), x));
            }
            seen.insert(fx, x);
        }
        None
    }

    pub fn injective_on_objects(&self) -> bool {
        self.object_collision().is_none()
    }

    /// Codomain objects outside the image.
    pub fn objects_missed(&self) -> Vec<ObjectId> {
        let hit: BTreeSet<ObjectId> = self.object_image().into_values().collect();
        self.codomain()
            .objects()
            .iter()
            .filter(|y| !hit.contains(*y))
            .cloned()
            .collect()
    }

    pub fn surjective_on_objects(&self) -> bool {
        self.objects_missed().is_empty()
    }

    pub fn bijective_on_objects(&self) -> bool {
        self.injective_on_objects() && self.surjective_on_objects()
    }

    /// Domain objects with equal images that are not isomorphic.
    pub fn essential_injectivity_counterexample(&self) -> Option<(ObjectId, ObjectId)> {
        let image = self.object_image();
        let objs: Vec<_> = image.keys().cloned().collect();
        for (i, x) in objs.iter().enumerate() {
            for y in &objs[i + 1..] {
                if image[x] == image[y]
                    && self
                        .domain()
                        .isomorphism_between(x, y)
                        .expect("own objects")
                        .is_none()
                {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    pub fn essentially_injective(&self) -> bool {
        self.essential_injectivity_counterexample().is_none()
    }

    /// Codomain objects not isomorphic to any image object.
    pub fn essentially_missed(&self) -> Vec<ObjectId> {
        let hit: BTreeSet<ObjectId> = self.object_image().into_values().collect();
        let c = self.codomain();
        c.objects()
            .iter()
            .filter(|y| {
                !hit.iter()
                    .any(|fx| c.isomorphism_between(fx, y).expect("own objects").is_some())
            })
            .cloned()
            .collect()
    }

    pub fn essentially_surjective(&self) -> bool {
        self.essentially_missed().is_empty()
    }

    pub fn essentially_bijective(&self) -> bool {
        self.essentially_injective() && self.essentially_surjective()
    }

    /// The codomain hom-set a domain hom-set maps into.
    fn target_hom(&self, x: &ObjectId, y: &ObjectId) -> Result<&[ClassId]> {
        let (fx, fy) = (self.apply_to_object(x)?, self.apply_to_object(y)?);
        if self.is_covariant() {
            self.codomain().hom(&fx, &fy)
        } else {
            self.codomain().hom(&fy, &fx)
        }
    }

    /// Two distinct parallel domain morphisms with the same image.
    pub fn faithfulness_counterexample(&self) -> Option<(ClassId, ClassId)> {
        let d = self.domain();
        for x in d.objects() {
            for y in d.objects() {
                let mut seen: BTreeMap<ClassId, ClassId> = BTreeMap::new();
                for &f in d.hom(x, y).expect("own objects") {
                    let image = self.apply_to_morphism(f).expect("own class");
                    if let Some(&prev) = seen.get(&image) {
                        return Some((prev, f));
                    }
                    seen.insert(image, f);
                }
            }
        }
        None
    }

    /// A codomain morphism between images that no domain morphism reaches.
    pub fn fullness_counterexample(&self) -> Option<ClassId> {
        let d = self.domain();
        for x in d.objects() {
            for y in d.objects() {
                let hit: BTreeSet<ClassId> = d
                    .hom(x, y)
                    .expect("own objects")
                    .iter()
                    .map(|&f| self.apply_to_morphism(f).expect("own class"))
                    .collect();
                let target = self.target_hom(x, y).expect("own objects");
                if let Some(&missed) = target.iter().find(|g| !hit.contains(g)) {
                    return Some(missed);
                }
            }
        }
        None
    }

    pub fn faithful(&self) -> bool {
        self.faithfulness_counterexample().is_none()
    }

    pub fn full(&self) -> bool {
        self.fullness_counterexample().is_none()
    }

    pub fn fully_faithful(&self) -> bool {
        self.faithful() && self.full()
    }

    /// A non-isomorphism whose image is an isomorphism.
    pub fn conservativity_counterexample(&self) -> Option<ClassId> {
        let d = self.domain();
        d.class_ids().find(|&f| {
            let image = self.apply_to_morphism(f).expect("own class");
            self.codomain().is_isomorphism(image).expect("own class")
                && !d.is_isomorphism(f).expect("own class")
        })
    }

    pub fn conservative(&self) -> bool {
        self.conservativity_counterexample().is_none()
    }

    fn maps_labels_to_themselves(&self) -> bool {
        let s = self.spec();
        s.object_map.iter().all(|(k, v)| k == v) && s.arrow_map.iter().all(|(k, v)| k == v)
    }

    /// Domain labels are a subset of codomain labels and the maps are the
    /// literal inclusions.
    pub fn is_inclusion(&self) -> bool {
        self.is_covariant()
            && self.maps_labels_to_themselves()
            && self.faithful()
            && self.injective_on_objects()
    }

    /// The codomain is the domain category itself.
    pub fn is_endofunctor(&self) -> bool {
        self.codomain().same_structure(self.domain())
    }

    pub fn is_identity(&self) -> bool {
        self.is_covariant() && self.is_endofunctor() && self.maps_labels_to_themselves()
    }

    /// Everything goes to one object and its identity.
    pub fn is_constant(&self) -> bool {
        let image: BTreeSet<ObjectId> = self.object_image().into_values().collect();
        if image.len() != 1 {
            return false;
        }
        self.domain().class_ids().all(|f| {
            let g = self.apply_to_morphism(f).expect("own class");
            self.codomain().class(g).expect("own class").is_identity()
        })
    }

    pub fn classes(&self) -> FunctorClasses {
        let faithful = self.faithful();
        let full = self.full();
        let injective = self.injective_on_objects();
        let inclusion = self.is_inclusion();
        FunctorClasses {
            equivalence: faithful && full && self.essentially_surjective(),
            embedding: faithful && injective,
            full_embedding: faithful && full && injective,
            inclusion,
            full_inclusion: inclusion && full,
            endofunctor: self.is_endofunctor(),
            identity: self.is_identity(),
            constant: self.is_constant(),
            conservative: self.conservative(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::functor;
    use super::super::FunctorSpec;
    use super::*;
    use crate::category::test_support::*;
    use crate::functor::Functor;

    fn ids(v: &[&str]) -> Vec<ObjectId> {
        v.iter().map(|&s| s.into()).collect()
    }

    #[test]
    fn merged_images_break_injectivity() {
        let f = functor(triangle(), true, &[], &[], &[("FX", "FY")], &[(&["Ff", "Ff"], &["Ff"])]);
        assert!(!f.injective_on_objects());
        assert!(!f.bijective_on_objects());
        assert_eq!(f.object_collision(), Some(("X".into(), "Y".into())));
        let domain = cat_with(
            &["X", "Y", "Z"],
            &[("f", "X", "Y"), ("g", "Y", "Z")],
            &[("X", "Y")],
            &[(&["f", "f"], &["f"])],
        );
        let g = functor(domain, true, &[], &[], &[], &[]);
        assert!(g.injective_on_objects());
        assert!(g.bijective_on_objects());
    }

    #[test]
    fn extra_object_breaks_surjectivity() {
        let f = functor(triangle(), true, &["P"], &[], &[], &[]);
        assert!(!f.surjective_on_objects());
        assert_eq!(f.objects_missed(), ids(&["P"]));
        let g = functor(triangle(), true, &["P"], &[], &[("P", "FX")], &[]);
        assert!(g.surjective_on_objects());
    }

    #[test]
    fn essential_injectivity_through_isomorphism() {
        let domain = cat(
            &["X", "Y", "Z"],
            &[("f", "X", "Y"), ("f_inv", "Y", "X"), ("g", "Y", "Z")],
            &[(&["f_inv", "f"], &["id_X"]), (&["f", "f_inv"], &["id_Y"])],
        );
        let f = functor(
            domain,
            true,
            &[],
            &[],
            &[("FX", "FY")],
            &[(&["Ff", "Ff"], &["Ff"]), (&["Ff_inv", "Ff_inv"], &["Ff_inv"])],
        );
        assert!(!f.injective_on_objects());
        assert!(f.essentially_injective());
    }

    #[test]
    fn essential_surjectivity_through_isomorphism() {
        let f = functor(
            triangle(),
            true,
            &["P"],
            &[("i", "P", "FX"), ("j", "FX", "P")],
            &[],
            &[(&["i", "j"], &["id_FX"]), (&["j", "i"], &["id_P"])],
        );
        assert!(!f.surjective_on_objects());
        assert!(f.essentially_surjective());
        assert!(f.fully_faithful());
        assert!(f.classes().equivalence);
    }

    #[test]
    fn faithfulness() {
        let domain = cat(
            &["X", "Y", "Z"],
            &[("f", "X", "Y"), ("g1", "Y", "Z"), ("g2", "Y", "Z")],
            &[],
        );
        let f = functor(domain.clone(), true, &[], &[], &[], &[(&["Fg1", "Ff"], &["Fg2", "Ff"])]);
        assert!(!f.faithful());
        assert!(!f.fully_faithful());
        let restricted = domain.with_relations(&[(ws(&["g1", "f"]), ws(&["g2", "f"]))], &[]).unwrap();
        let g = functor(restricted, true, &[], &[], &[], &[]);
        assert!(g.faithful());
    }

    #[test]
    fn fullness() {
        let f = functor(triangle(), true, &[], &[("h", "FY", "FZ")], &[], &[]);
        assert!(!f.full());
        let missed = f.fullness_counterexample().unwrap();
        assert_eq!(f.codomain().render(missed), "h∘Ff");
        let g = functor(triangle(), true, &[], &[("h", "FY", "FZ")], &[], &[(&["Fg"], &["h"])]);
        assert!(g.full());
    }

    #[test]
    fn identity_functor_classes() {
        let c = square(&[(&["i", "f"], &["h", "g"])]);
        let f = Functor::build(c.clone(), FunctorSpec::identity(&c)).unwrap();
        let k = f.classes();
        assert!(k.identity && k.endofunctor && k.inclusion && k.full_inclusion);
        assert!(k.full_embedding && k.embedding && k.equivalence && k.conservative);
        assert!(!k.constant);
        assert!(f.essentially_injective());
    }

    #[test]
    fn constant_functor_on_triangle() {
        let mut spec = FunctorSpec::default();
        for o in ["X", "Y", "Z"] {
            spec.object_map.insert(o.into(), "P".into());
        }
        spec.arrow_map.insert("f".into(), "p".into());
        spec.arrow_map.insert("g".into(), "p".into());
        spec.extra_morphism_eqs = vec![(ws(&["p"]), ws(&["id_P"]))];
        let f = Functor::build(triangle(), spec).unwrap();
        assert!(f.is_constant());
        // every hom-set of the triangle has at most one element, so the
        // hom-wise maps are injective
        assert!(f.faithful());
        assert!(!f.injective_on_objects());
        assert!(!f.classes().embedding);
    }

    #[test]
    fn constant_functor_on_parallel_pair_is_unfaithful() {
        let domain = cat(&["X", "Y"], &[("a", "X", "Y"), ("b", "X", "Y")], &[]);
        let mut spec = FunctorSpec::default();
        spec.object_map.insert("X".into(), "P".into());
        spec.object_map.insert("Y".into(), "P".into());
        spec.arrow_map.insert("a".into(), "p".into());
        spec.arrow_map.insert("b".into(), "p".into());
        spec.extra_morphism_eqs = vec![(ws(&["p"]), ws(&["id_P"]))];
        let f = Functor::build(domain, spec).unwrap();
        assert!(f.is_constant());
        assert!(!f.faithful());
    }

    #[test]
    fn conservative_fails_when_iso_is_created() {
        let f = functor(
            cat(&["X", "Y"], &[("f", "X", "Y")], &[]),
            true,
            &[],
            &[("g", "FY", "FX")],
            &[],
            &[(&["g", "Ff"], &["id_FX"]), (&["Ff", "g"], &["id_FY"])],
        );
        assert!(!f.conservative());
    }
}
