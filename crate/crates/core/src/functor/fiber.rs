//! Fiber categories, discrete fibrations and Cartesian morphisms.

use super::Functor;
use crate::category::Category;
use crate::congruence::ClassId;
use crate::error::{Error, Result};
use crate::quiver::{Arrow, ObjectId, Quiver};
use crate::word::WordSpec;

/// The subcategory of the domain sent to `base` and its identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCategory {
    pub base_object: ObjectId,
    /// Presented with one arrow per non-identity fiber morphism, named by
    /// its canonical word in the domain.
    pub category: Category,
    /// Domain classes in the fiber, identities included.
    pub classes: Vec<ClassId>,
}

impl FiberCategory {
    pub fn is_discrete(&self) -> bool {
        self.category.is_discrete()
    }
}

impl Functor {
    pub fn fiber_category(&self, base: &ObjectId) -> Result<FiberCategory> {
        let base = self.codomain().table().resolve_object(base)?.clone();
        let id_base = self.codomain().identity(&base)?;
        let d = self.domain();
        let objects: Vec<ObjectId> = d
            .objects()
            .iter()
            .filter(|u| self.apply_to_object(u).map(|fu| fu == base).unwrap_or(false))
            .cloned()
            .collect();
        let classes: Vec<ClassId> = d
            .class_ids()
            .filter(|&f| self.apply_to_morphism(f).ok() == Some(id_base))
            .collect();
        let name = |f: ClassId| d.class(f).expect("own class").canonical.arrows.join("∘");
        let non_identity: Vec<ClassId> = classes
            .iter()
            .copied()
            .filter(|&f| !d.class(f).expect("own class").is_identity())
            .collect();
        let arrows: Vec<Arrow> = non_identity
            .iter()
            .map(|&f| {
                let c = d.class(f).expect("own class");
                Arrow::new(name(f), c.dom().0.clone(), c.cod().0.clone())
            })
            .collect();
        let mut relations = Vec::new();
        for &g in &non_identity {
            for &f in &non_identity {
                if d.cod(f)? != d.dom(g)? {
                    continue;
                }
                let gf = d.compose(g, f)?;
                let rhs = if d.class(gf)?.is_identity() {
                    WordSpec::identity(d.dom(f)?.0.clone())
                } else {
                    WordSpec::arrows([name(gf)])
                };
                relations.push((WordSpec::arrows([name(g), name(f)]), rhs));
            }
        }
        let quiver = Quiver::build(
            objects.iter().map(|o| o.0.clone()),
            arrows,
            Vec::<(String, String)>::new(),
            Vec::<(String, String)>::new(),
        )?;
        let category = Category::new(quiver, relations, *d.config())?;
        Ok(FiberCategory {
            base_object: base,
            category,
            classes,
        })
    }

    /// One fiber per codomain object.
    pub fn fibers(&self) -> Result<Vec<FiberCategory>> {
        self.codomain()
            .objects()
            .iter()
            .map(|b| self.fiber_category(b))
            .collect()
    }

    /// Every fiber has identities only.
    pub fn is_discrete_fibration(&self) -> Result<bool> {
        Ok(self.fibers()?.iter().all(FiberCategory::is_discrete))
    }

    /// A pair `(h, u)` for which the lift through `f` is missing or not
    /// unique.
    pub fn cartesian_counterexample(&self, f: ClassId) -> Result<Option<(ClassId, ClassId)>> {
        if !self.is_covariant() {
            return Err(Error::ContravariantUnsupported);
        }
        let d = self.domain();
        let c = self.codomain();
        let (x, y) = (d.dom(f)?.clone(), d.cod(f)?.clone());
        let ff = self.apply_to_morphism(f)?;
        let fx = self.apply_to_object(&x)?;
        for z in d.objects() {
            let fz = self.apply_to_object(z)?;
            for &h in d.hom(z, &y)? {
                let fh = self.apply_to_morphism(h)?;
                for &u in c.hom(&fz, &fx)? {
                    if c.compose(ff, u)? != fh {
                        continue;
                    }
                    let mut lifts = 0;
                    for &v in d.hom(z, &x)? {
                        if d.compose(f, v)? == h && self.apply_to_morphism(v)? == u {
                            lifts += 1;
                        }
                    }
                    if lifts != 1 {
                        return Ok(Some((h, u)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_cartesian_morphism(&self, f: ClassId) -> Result<bool> {
        Ok(self.cartesian_counterexample(f)?.is_none())
    }

    /// Finite check: every codomain morphism `u: B → F(E)` has a Cartesian
    /// lift ending at `E`.
    pub fn is_fibration(&self) -> Result<bool> {
        if !self.is_covariant() {
            return Err(Error::ContravariantUnsupported);
        }
        let d = self.domain();
        let c = self.codomain();
        for e in d.objects() {
            let fe = self.apply_to_object(e)?;
            for b in c.objects() {
                for &u in c.hom(b, &fe)? {
                    let mut lifted = false;
                    for z in d.objects() {
                        for &f in d.hom(z, e)? {
                            if self.apply_to_morphism(f)? == u && self.is_cartesian_morphism(f)? {
                                lifted = true;
                            }
                        }
                    }
                    if !lifted {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
