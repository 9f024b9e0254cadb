use thiserror::Error;

use crate::census::OrbitClass;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContactError {
    #[error("not a positive contact form: min a×a' = {min_cross} at θ = {theta}, certificate margin {margin}")]
    NotContact { min_cross: f64, theta: f64, margin: f64 },
    #[error("contact condition degenerates at θ = {theta}: a×a' = {value}")]
    Degenerate { theta: f64, value: f64 },
    #[error("verification grid must have at least one point")]
    EmptyGrid,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error("action cutoff must be positive and finite, got {0}")]
    InvalidCutoff(f64),
    #[error("double root of the slope equation for class {class} at θ = {theta}")]
    DoubleRoot { class: OrbitClass, theta: f64 },
    #[error("root finder did not converge for class {class} on [{lo}, {hi}]")]
    NoConvergence { class: OrbitClass, lo: f64, hi: f64 },
    #[error("Bourgeois hypothesis fails: a'×a'' = {curvature} at the Morse–Bott root θ = {theta} of class {class}")]
    HypothesisViolation { class: OrbitClass, theta: f64, curvature: f64 },
    #[error("census is not Bourgeois-admissible (some elliptic orbit rotates negatively)")]
    NotAdmissible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EchError {
    #[error("f_{{{p},{r},{s}}} is not a contactomorphism of (T³, ξ0): p must be 1")]
    NotContactomorphism { p: i64, r: i64, s: i64 },
    #[error("f_{{1,{r},{s}}} does not act trivially on H1(T²)")]
    NotLuttinger { r: i64, s: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("({p},{r},{s}) is not primitive (gcd = {gcd}); no unimodular completion exists")]
    NotPrimitive { p: i64, r: i64, s: i64, gcd: i64 },
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
    #[error("no Gromov equations given")]
    NoEquations,
    #[error("inconsistent Gromov equations: {}", format_conflict(.0))]
    Inconsistent(Vec<usize>),
}

fn format_conflict(indices: &[usize]) -> String {
    let items: Vec<String> = indices.iter().map(|i| format!("#{i}")).collect();
    format!("equations {} cannot hold together", items.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("intersection form is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("intersection form row {row} has length {len}, expected {expected}")]
    RaggedForm { row: usize, len: usize, expected: usize },
    #[error("{what} has length {got}, expected {expected}")]
    DimensionMismatch { what: &'static str, got: usize, expected: usize },
    #[error("declared signature {declared} differs from the signature {computed} of Q")]
    SignatureMismatch { declared: i64, computed: i64 },
    #[error("declared b2+ {declared} differs from the positive index {computed} of Q")]
    B2PlusMismatch { declared: usize, computed: usize },
    #[error("c1² - 2χ - 3σ = {0} is not divisible by 4; not a spin-c index")]
    NotDivisible(i64),
    #[error("canonical class K is required for this operation")]
    MissingCanonicalClass,
    #[error("chamber side undecided at the available precision of π")]
    Undecided,
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
}
