//! Special morphisms: monos, epis, sections, retractions, isos, constants.

use std::collections::HashMap;

use super::Category;
use crate::congruence::ClassId;
use crate::error::Result;
use crate::quiver::ObjectId;

impl Category {
    /// A pair `g1 ≠ g2` with `f∘g1 = f∘g2`, if one exists.
    pub fn mono_counterexample(&self, f: ClassId) -> Result<Option<(ClassId, ClassId)>> {
        let dom = self.dom(f)?.clone();
        for z in self.objects() {
            let mut seen: HashMap<ClassId, ClassId> = HashMap::new();
            for &g in self.hom(z, &dom)? {
                let fg = self.compose(f, g)?;
                if let Some(&g1) = seen.get(&fg) {
                    return Ok(Some((g1, g)));
                }
                seen.insert(fg, g);
            }
        }
        Ok(None)
    }

    /// A pair `g1 ≠ g2` with `g1∘f = g2∘f`, if one exists.
    pub fn epi_counterexample(&self, f: ClassId) -> Result<Option<(ClassId, ClassId)>> {
        let cod = self.cod(f)?.clone();
        for z in self.objects() {
            let mut seen: HashMap<ClassId, ClassId> = HashMap::new();
            for &g in self.hom(&cod, z)? {
                let gf = self.compose(g, f)?;
                if let Some(&g1) = seen.get(&gf) {
                    return Ok(Some((g1, g)));
                }
                seen.insert(gf, g);
            }
        }
        Ok(None)
    }

    pub fn is_monomorphism(&self, f: ClassId) -> Result<bool> {
        Ok(self.mono_counterexample(f)?.is_none())
    }

    pub fn is_epimorphism(&self, f: ClassId) -> Result<bool> {
        Ok(self.epi_counterexample(f)?.is_none())
    }

    pub fn is_bimorphism(&self, f: ClassId) -> Result<bool> {
        Ok(self.is_monomorphism(f)? && self.is_epimorphism(f)?)
    }

    /// All `g` with `g∘f = id_dom(f)`.
    pub fn left_inverses(&self, f: ClassId) -> Result<Vec<ClassId>> {
        let (x, y) = (self.dom(f)?.clone(), self.cod(f)?.clone());
        let idx = self.identity(&x)?;
        let mut out = Vec::new();
        for &g in self.hom(&y, &x)? {
            if self.compose(g, f)? == idx {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// All `g` with `f∘g = id_cod(f)`.
    pub fn right_inverses(&self, f: ClassId) -> Result<Vec<ClassId>> {
        let (x, y) = (self.dom(f)?.clone(), self.cod(f)?.clone());
        let idy = self.identity(&y)?;
        let mut out = Vec::new();
        for &g in self.hom(&y, &x)? {
            if self.compose(f, g)? == idy {
                out.push(g);
            }
        }
        Ok(out)
    }

    pub fn is_section(&self, f: ClassId) -> Result<bool> {
        Ok(!self.left_inverses(f)?.is_empty())
    }

    pub fn is_retraction(&self, f: ClassId) -> Result<bool> {
        Ok(!self.right_inverses(f)?.is_empty())
    }

    /// A two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: ClassId) -> Result<Option<ClassId>> {
        let right = self.right_inverses(f)?;
        Ok(self.left_inverses(f)?.into_iter().find(|g| right.contains(g)))
    }

    pub fn is_isomorphism(&self, f: ClassId) -> Result<bool> {
        Ok(self.inverse(f)?.is_some())
    }

    /// Classes that are not isomorphisms.
    pub fn non_isomorphisms(&self) -> Vec<ClassId> {
        self.class_ids()
            .filter(|&f| !self.is_isomorphism(f).expect("own class"))
            .collect()
    }

    pub fn is_groupoid(&self) -> bool {
        self.non_isomorphisms().is_empty()
    }

    /// A pair `g1, g2` into `dom f` with `f∘g1 ≠ f∘g2`, if one exists.
    pub fn constant_counterexample(&self, f: ClassId) -> Result<Option<(ClassId, ClassId)>> {
        let dom = self.dom(f)?.clone();
        for z in self.objects() {
            let hom = self.hom(z, &dom)?;
            if let Some((&g1, rest)) = hom.split_first() {
                let first = self.compose(f, g1)?;
                for &g2 in rest {
                    if self.compose(f, g2)? != first {
                        return Ok(Some((g1, g2)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// A pair `g1, g2` out of `cod f` with `g1∘f ≠ g2∘f`, if one exists.
    pub fn coconstant_counterexample(&self, f: ClassId) -> Result<Option<(ClassId, ClassId)>> {
        let cod = self.cod(f)?.clone();
        for z in self.objects() {
            let hom = self.hom(&cod, z)?;
            if let Some((&g1, rest)) = hom.split_first() {
                let first = self.compose(g1, f)?;
                for &g2 in rest {
                    if self.compose(g2, f)? != first {
                        return Ok(Some((g1, g2)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_constant(&self, f: ClassId) -> Result<bool> {
        Ok(self.constant_counterexample(f)?.is_none())
    }

    pub fn is_coconstant(&self, f: ClassId) -> Result<bool> {
        Ok(self.coconstant_counterexample(f)?.is_none())
    }

    pub fn is_zero_morphism(&self, f: ClassId) -> Result<bool> {
        Ok(self.is_constant(f)? && self.is_coconstant(f)?)
    }

    pub fn endomorphisms(&self, x: &ObjectId) -> Result<Vec<ClassId>> {
        Ok(self.hom(x, x)?.to_vec())
    }

    pub fn automorphisms(&self, x: &ObjectId) -> Result<Vec<ClassId>> {
        let mut out = Vec::new();
        for &f in self.hom(x, x)? {
            if self.is_isomorphism(f)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    /// An isomorphism `x → y`, if the objects are isomorphic.
    pub fn isomorphism_between(&self, x: &ObjectId, y: &ObjectId) -> Result<Option<ClassId>> {
        for &f in self.hom(x, y)? {
            if self.is_isomorphism(f)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// Only identities.
    pub fn is_discrete(&self) -> bool {
        self.morphisms().iter().all(|c| c.is_identity())
    }

    /// Exactly one morphism between every ordered pair of objects.
    pub fn is_indiscrete(&self) -> bool {
        self.objects().iter().all(|x| {
            self.objects()
                .iter()
                .all(|y| self.hom(x, y).map(|h| h.len() == 1).unwrap_or(false))
        })
    }

    /// Bimorphisms that are not isomorphisms.
    pub fn unbalanced_bimorphisms(&self) -> Vec<ClassId> {
        self.class_ids()
            .filter(|&f| {
                self.is_bimorphism(f).expect("own class") && !self.is_isomorphism(f).expect("own class")
            })
            .collect()
    }

    /// Every bimorphism is an isomorphism (vacuously true without bimorphisms).
    pub fn is_balanced(&self) -> bool {
        self.unbalanced_bimorphisms().is_empty()
    }
}
