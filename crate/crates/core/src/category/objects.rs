//! Initial, terminal and zero objects.

use super::Category;
use crate::quiver::ObjectId;

impl Category {
    fn hom_len(&self, x: &ObjectId, y: &ObjectId) -> usize {
        self.hom(x, y).map(|h| h.len()).unwrap_or(0)
    }

    pub fn initial_objects(&self) -> Vec<ObjectId> {
        self.objects()
            .iter()
            .filter(|x| self.objects().iter().all(|p| self.hom_len(x, p) == 1))
            .cloned()
            .collect()
    }

    pub fn terminal_objects(&self) -> Vec<ObjectId> {
        self.objects()
            .iter()
            .filter(|x| self.objects().iter().all(|p| self.hom_len(p, x) == 1))
            .cloned()
            .collect()
    }

    /// Initial objects all of whose incoming morphisms are isomorphisms.
    pub fn strict_initial_objects(&self) -> Vec<ObjectId> {
        self.initial_objects()
            .into_iter()
            .filter(|x| {
                self.objects().iter().all(|p| {
                    self.hom(p, x)
                        .unwrap()
                        .iter()
                        .all(|&f| self.is_isomorphism(f).unwrap())
                })
            })
            .collect()
    }

    /// Terminal objects all of whose outgoing morphisms are isomorphisms.
    pub fn strict_terminal_objects(&self) -> Vec<ObjectId> {
        self.terminal_objects()
            .into_iter()
            .filter(|x| {
                self.objects().iter().all(|p| {
                    self.hom(x, p)
                        .unwrap()
                        .iter()
                        .all(|&f| self.is_isomorphism(f).unwrap())
                })
            })
            .collect()
    }

    pub fn zero_objects(&self) -> Vec<ObjectId> {
        let terminal = self.terminal_objects();
        self.initial_objects()
            .into_iter()
            .filter(|x| terminal.contains(x))
            .collect()
    }

    pub fn is_pointed(&self) -> bool {
        !self.zero_objects().is_empty()
    }
}
