use thiserror::Error;

/// Errors raised while building or querying finite categories, functors,
/// transformations and rewrite rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },

    #[error("empty {kind} label")]
    EmptyLabel { kind: &'static str },

    #[error("`{owner}` refers to unknown object `{object}`")]
    UnknownEndpoint { owner: String, object: String },

    #[error("arrow equivalence {left} = {right} relates arrows with different endpoints")]
    MismatchedArrowEquivalence { left: String, right: String },

    #[error("relation {left} = {right} relates morphisms with different domain/codomain")]
    MismatchedRelation { left: String, right: String },

    #[error(
        "the generated category may be infinite: no closure within word length {max_word_length} \
         ({classes} classes enumerated)"
    )]
    PossiblyInfinite {
        max_word_length: usize,
        classes: usize,
    },

    #[error("word of length {length} exceeds the saturation bound {bound}")]
    WordOutOfRange { length: usize, bound: usize },

    #[error("cannot compose {left} after {right}: codomain and domain differ")]
    NotComposable { left: String, right: String },

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("unknown morphism class #{0}")]
    UnknownMorphism(usize),

    #[error("word {0} is not composable")]
    IllFormedWord(String),

    #[error("category cannot be made groupoidal: {0}")]
    NotGroupoidalizable(String),

    #[error("functor map is not total: missing image of {kind} `{label}`")]
    PartialMap { kind: &'static str, label: String },

    #[error("functor image of arrow `{arrow}` has incoherent endpoints: {detail}")]
    EndpointIncoherent { arrow: String, detail: String },

    #[error("Cartesian morphisms are only decided for covariant functors")]
    ContravariantUnsupported,

    #[error("functor codomains do not match")]
    CodomainMismatch,

    #[error("functor domains do not match")]
    DomainMismatch,

    #[error("functors have different variance")]
    VarianceMismatch,

    #[error("component at `{object}` is ill-typed: {detail}")]
    IllTypedComponent { object: String, detail: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid graph morphism: {0}")]
    InvalidMorphism(String),

    #[error("gluing condition violated: {0}")]
    GluingViolation(String),

    #[error("universal-property check exceeded its budget of {0} trials")]
    BudgetExceeded(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unresolved reference to {kind} `{name}`")]
    UnresolvedReference { kind: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
