//! Minimal equation sets that force commutativity or groupoidality.
//!
//! Candidates are word equations between existing classes. When there are at
//! most `CANDIDATE_BUDGET` candidates the search is exhaustive by increasing
//! size, subsets in lexicographic order, so the first hit is minimal and
//! deterministic. Larger instances fall back to a greedy pass.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::Category;
use crate::congruence::ClassId;
use crate::error::{Error, Result};
use crate::word::{PathWord, WordSpec};

pub const CANDIDATE_BUDGET: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ForcingTarget {
    Commutativity,
    Groupoid,
}

/// `lhs = rhs`, where `rhs` is the side kept as representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: PathWord,
    pub rhs: PathWord,
    /// Set when a non-identity is equated with an identity.
    pub identity_merge: bool,
}

impl Equation {
    pub fn new(lhs: PathWord, rhs: PathWord) -> Equation {
        let identity_merge = lhs.is_identity() != rhs.is_identity();
        Equation {
            lhs,
            rhs,
            identity_merge,
        }
    }

    pub fn to_specs(&self) -> (WordSpec, WordSpec) {
        (self.lhs.to_spec(), self.rhs.to_spec())
    }

    pub fn render(&self, c: &Category) -> String {
        format!("{} = {}", c.render_word(&self.lhs), c.render_word(&self.rhs))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingSet {
    pub target: ForcingTarget,
    pub equations: Vec<Equation>,
    /// False when the greedy fallback was used.
    pub minimal_verified: bool,
}

impl ForcingSet {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// The category with every equation imposed.
    pub fn apply(&self, c: &Category) -> Result<Category> {
        let eqs: Vec<_> = self.equations.iter().map(Equation::to_specs).collect();
        c.with_relations(&eqs, &[])
    }

    pub fn render(&self, c: &Category) -> String {
        self.equations
            .iter()
            .map(|e| e.render(c))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn impose(c: &Category, eqs: &[&Equation]) -> Result<Category> {
    let specs: Vec<_> = eqs.iter().map(|e| e.to_specs()).collect();
    c.with_relations(&specs, &[])
}

/// Smallest subset of `cands` (first in lexicographic order) reaching `goal`.
fn exhaustive(
    c: &Category,
    cands: &[Equation],
    goal: impl Fn(&Category) -> bool,
) -> Result<Option<Vec<Equation>>> {
    for k in 1..=cands.len() {
        for subset in cands.iter().combinations(k) {
            if goal(&impose(c, &subset)?) {
                return Ok(Some(subset.into_iter().cloned().collect()));
            }
        }
    }
    Ok(None)
}

/// Adds candidates in order until `goal` holds, then drops any that turn
/// out redundant.
fn greedy(
    c: &Category,
    cands: &[Equation],
    goal: impl Fn(&Category) -> bool,
) -> Result<Option<Vec<Equation>>> {
    let mut chosen: Vec<&Equation> = Vec::new();
    let mut cur = c.clone();
    for e in cands {
        if goal(&cur) {
            break;
        }
        if cur.table().relation_holds(&e.lhs, &e.rhs)? {
            continue;
        }
        chosen.push(e);
        cur = impose(c, &chosen)?;
    }
    if !goal(&cur) {
        return Ok(None);
    }
    let mut i = chosen.len();
    while i > 0 {
        i -= 1;
        let mut trial = chosen.clone();
        trial.remove(i);
        if goal(&impose(c, &trial)?) {
            chosen = trial;
        }
    }
    Ok(Some(chosen.into_iter().cloned().collect()))
}

impl Category {
    fn canonical(&self, f: ClassId) -> PathWord {
        self.class(f).expect("own class").canonical.clone()
    }

    /// Candidate equations for commutativity: distinct classes within each
    /// hom-set, the later class on the left.
    fn commute_candidates(&self) -> Vec<Equation> {
        let mut out = Vec::new();
        for (x, y) in self.split_hom_sets() {
            let hom = self.hom(&x, &y).expect("own objects");
            for (i, j) in (0..hom.len()).tuple_combinations() {
                out.push(Equation::new(self.canonical(hom[j]), self.canonical(hom[i])));
            }
        }
        out
    }

    pub fn force_commute(&self) -> Result<ForcingSet> {
        self.force_commute_with_budget(CANDIDATE_BUDGET)
    }

    pub fn force_commute_with_budget(&self, budget: usize) -> Result<ForcingSet> {
        let target = ForcingTarget::Commutativity;
        if self.is_commutative() {
            return Ok(ForcingSet {
                target,
                equations: Vec::new(),
                minimal_verified: true,
            });
        }
        let cands = self.commute_candidates();
        if cands.len() <= budget {
            let eqs = exhaustive(self, &cands, Category::is_commutative)?
                .expect("imposing every candidate commutes");
            return Ok(ForcingSet {
                target,
                equations: eqs,
                minimal_verified: true,
            });
        }
        // Greedy: repeatedly merge the first two classes of the first split
        // hom-set of the current quotient.
        let mut eqs = Vec::new();
        let mut cur = self.clone();
        while let Some((x, y)) = cur.split_hom_sets().into_iter().next() {
            let hom = cur.hom(&x, &y)?;
            let e = Equation::new(cur.canonical(hom[1]), cur.canonical(hom[0]));
            cur = cur.with_relations(&[e.to_specs()], &[])?;
            eqs.push(e);
        }
        Ok(ForcingSet {
            target,
            equations: eqs,
            minimal_verified: false,
        })
    }

    /// Round trips through pairs of opposite generating arrows:
    /// `a∘b = id` for `b: A → B`, `a: B → A`.
    fn arrow_inverse_candidates(&self) -> Result<Vec<Equation>> {
        let q = self.quiver();
        let mut arrows: Vec<_> = q.arrows().iter().collect();
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        let mut out = Vec::new();
        for a in &arrows {
            for b in &arrows {
                let (ad, ac) = (q.resolve(&a.dom), q.resolve(&a.cod));
                let (bd, bc) = (q.resolve(&b.dom), q.resolve(&b.cod));
                if ad != bc || ac != bd {
                    continue;
                }
                let lhs = self.word(&WordSpec::arrows([a.id.clone(), b.id.clone()]))?;
                let rhs = PathWord::identity(lhs.dom.clone());
                if !self.table().relation_holds(&lhs, &rhs)? {
                    out.push(Equation::new(lhs, rhs));
                }
            }
        }
        Ok(out)
    }

    /// `u∘v = id` for every pair of opposite classes not already inverse.
    fn class_inverse_candidates(&self) -> Result<Vec<Equation>> {
        let mut out = Vec::new();
        for v in self.class_ids() {
            let (x, y) = (self.dom(v)?.clone(), self.cod(v)?.clone());
            for &u in self.hom(&y, &x)? {
                if self.compose(u, v)? == self.identity(&x)? {
                    continue;
                }
                let lhs = self.canonical(u).after(&self.canonical(v)).expect("composable");
                out.push(Equation::new(lhs, PathWord::identity(x.clone())));
            }
        }
        Ok(out)
    }

    pub fn force_groupoid(&self) -> Result<ForcingSet> {
        self.force_groupoid_with_budget(CANDIDATE_BUDGET)
    }

    pub fn force_groupoid_with_budget(&self, budget: usize) -> Result<ForcingSet> {
        let target = ForcingTarget::Groupoid;
        if self.is_groupoid() {
            return Ok(ForcingSet {
                target,
                equations: Vec::new(),
                minimal_verified: true,
            });
        }
        for f in self.class_ids() {
            let (x, y) = (self.dom(f)?, self.cod(f)?);
            if !self.class(f)?.is_identity() && self.hom(y, x)?.is_empty() {
                return Err(Error::NotGroupoidalizable(format!(
                    "{} : {x} -> {y} has no morphism back from {y} to {x}",
                    self.render(f)
                )));
            }
        }
        let goal = Category::is_groupoid;
        for cands in [self.arrow_inverse_candidates()?, self.class_inverse_candidates()?] {
            let all: Vec<&Equation> = cands.iter().collect();
            if cands.is_empty() || !goal(&impose(self, &all)?) {
                continue;
            }
            let (eqs, minimal_verified) = if cands.len() <= budget {
                (exhaustive(self, &cands, goal)?, true)
            } else {
                (greedy(self, &cands, goal)?, false)
            };
            let equations = eqs.expect("full candidate set reaches the goal");
            return Ok(ForcingSet {
                target,
                equations,
                minimal_verified,
            });
        }
        Err(Error::NotGroupoidalizable(
            "no set of inverse equations between existing morphisms makes every morphism invertible"
                .into(),
        ))
    }
}
