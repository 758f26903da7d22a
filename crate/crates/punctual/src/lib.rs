//! Exact-arithmetic toolkit for zero-dimensional schemes on `P^1` and `P^2`,
//! their embeddings into Grassmannians of the complete linear series, and the
//! secant-line geometry of those embeddings.
//!
//! Everything is computed over the rationals with arbitrary precision; there is
//! no floating point anywhere. The main layers, bottom to top:
//!
//! * [`linalg`] - dense matrices and subspaces in canonical reduced row-echelon
//!   form, so subspace equality is plain structural equality.
//! * [`exterior`] - multivectors in a wedge power of `Q^n`, decomposability
//!   tests, orbit classification of 2-planes plus a decomposable factor.
//! * [`poly`] - uni/multivariate polynomials, binary forms, gcd, resultants,
//!   and rational root extraction used for base-locus work.
//! * [`grassmann`] - points, secant lines, flags and tangent vectors of
//!   `Gr(k, n)` under the Pluecker embedding.
//! * [`schemes0d`] - finite subschemes cut out by jet-space ideals, section
//!   spaces of a linear series through a subscheme, very-ampleness checks.
//! * [`hilb`] - the Hilbert scheme of `d` points: embedding into
//!   `Gr(d, H0(L)^*)`, Hamming distance, lines and pencils, tangent lifts,
//!   membership and secant decompositions, identifiability certificates.
//! * [`syzygy`] - evaluation model of the homogeneous coordinate ring of the
//!   embedded Hilbert scheme, graded Betti numbers in a degree window.
//! * [`harness`] - seeded verification campaigns, built-in counterexample
//!   scenarios, JSON reports; the `punctual` binary is a thin front end.

pub mod exterior;
pub mod grassmann;
pub mod harness;
pub mod hilb;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod schemes0d;
pub mod syzygy;

pub use rat::Rat;

/// Library-wide error type. Variants are grouped roughly by the layer that
/// raises them; higher layers propagate lower ones untouched.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    /// A wedge product was requested whose degree would exceed the ambient
    /// dimension.
    #[error("wedge degree {requested} exceeds ambient dimension {ambient}")]
    DegreeOverflow { requested: usize, ambient: usize },
    /// Interior product against a degree-0 multivector.
    #[error("cannot contract a degree-0 multivector")]
    ContractScalar,
    /// Division of a multivector by a factor that does not divide it.
    #[error("divisor does not divide the multivector: {0}")]
    DivisibilityFails(String),
    /// An operation received a zero input where a nonzero one is required.
    #[error("unexpected zero input: {0}")]
    ZeroInput(String),
    /// Two points expected to be distinct coincide, or vice versa.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// A line in the wedge space fails to be a line of the Grassmannian.
    #[error("not a Grassmannian line: {0}")]
    NotALine(String),
    /// Scheme construction rejected its input (duplicate centers, zero
    /// direction, improper ideal, ...).
    #[error("invalid scheme data: {0}")]
    InvalidScheme(String),
    /// The requested embedding needs the series to separate more points than
    /// it can.
    #[error("linear series not {needed}-very ample: {detail}")]
    NotVeryAmple { needed: usize, detail: String },
    /// A base locus has points that are provably or possibly irrational; we
    /// report the evidence instead of guessing.
    #[error("base locus support is not rational: {0}")]
    NonRationalSupport(String),
    /// A candidate family inside a base scheme is positive-dimensional, so a
    /// finite enumeration is impossible.
    #[error("candidate subschemes form a positive-dimensional family: {0}")]
    NonEnumerableBase(String),
    /// Decomposition search invoked outside its supported range.
    #[error("rank {0} out of scope for decomposition search (need 2 or 4)")]
    RankOutOfScope(usize),
    /// Ring evaluation does not yet have enough samples to certify a rank.
    #[error("insufficient samples: have {have}, need at least {need}")]
    InsufficientSamples { have: usize, need: usize },
    /// An estimated workload exceeds the desk-scale resource guard.
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    /// Failed to parse an input file or expression.
    #[error("parse error: {0}")]
    Parse(String),
    /// Configuration rejected before any computation started.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A search with a deterministic budget ran out before finding a witness
    /// that theory guarantees to exist.
    #[error("witness search budget exhausted: {0}")]
    SearchBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
