use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutations live in different symmetric groups (S_{left} vs S_{right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("[{v}, {w}] is empty: v is not below w in Bruhat order")]
    NonemptyIntervalRequired { v: String, w: String },

    #[error("invalid reduced word: {0}")]
    InvalidWord(String),

    #[error("interval [{v}, {w}] is not toric")]
    NotToric { v: String, w: String },

    #[error("more than one non-intersecting path collection for sources {0}")]
    MultipleCollections(String),

    #[error("toricity tests disagree on [{v}, {w}]: {detail}")]
    DisagreementBug {
        v: String,
        w: String,
        detail: String,
    },

    #[error("perfect orientations have different source-set sizes ({0} and {1})")]
    MixedRank(usize, usize),

    #[error("no integral affine map: {0}")]
    NoSolution(String),

    #[error("inconsistent face relation: {0}")]
    InconsistentFace(String),

    #[error("face lattice too large ({vertices} vertices, dimension {dim}); set TORICH_FACE_LATTICE_LIMIT to raise the gate")]
    FaceLatticeGate { dim: usize, vertices: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
