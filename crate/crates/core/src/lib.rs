//! Finite categories generated from quivers: enumeration, property
//! decisions, forcing equations, functors, natural transformations and
//! double-pushout graph rewriting.

pub mod category;
pub mod dot;
pub mod dpo;
pub mod congruence;
pub mod error;
pub mod functor;
pub mod io;
pub mod natural;
pub mod quiver;
pub mod word;

pub use category::{Category, CategorySpec, Equation, ForcingSet, ForcingTarget};
pub use dot::DotMode;
pub use dpo::{Derivation, Edge, GraphEmbedding, GraphInstance, GraphMorphism, Rule, RuleSpec};
pub use congruence::{enumerate_and_saturate, ClassId, CongruenceTable, MorphismClass, SaturationConfig};
pub use error::{Error, Result};
pub use io::{AnalysisReport, Check, ForcingOutcome, FunctorDoc, TransformationDoc, Workspace, WorkspaceSpec};
pub use functor::{FiberCategory, Functor, FunctorClasses, FunctorSpec};
pub use natural::{matching_codomains, NaturalTransformation, NaturalityEquation, NaturalityReport, TransformationSpec};
pub use quiver::{Arrow, ObjectId, Partition, Quiver, QuiverSpec};
pub use word::{PathWord, WordSpec};
