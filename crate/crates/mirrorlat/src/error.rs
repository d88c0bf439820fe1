use thiserror::Error;

use crate::rootsystem::Family;

pub const SUPPORTED: &str = "A 2-9, B 2-7, C 2-7, D 4-8, E 6-8, F 4, G 2";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank} (supported: {SUPPORTED})")]
    UnsupportedType { family: char, rank: usize },

    #[error("point lies on or too close to the mirror of root {root:?} (|e^a - 1| = {distance:.3e})")]
    SingularPoint { root: Vec<i64>, distance: f64 },

    #[error("spectral interpolation failed at node {node}: {detail}")]
    SpectralInconsistency { node: usize, detail: String },

    #[error("{0:?} is not a root")]
    InvalidRoot(Vec<i64>),

    #[error("operation requires family {expected}, got {got}")]
    InvalidFamily { expected: char, got: Family },

    #[error("node {node} out of range 1..={rank}")]
    InvalidNode { node: usize, rank: usize },

    #[error("multiplicity ({k}, {kp}) lies outside the restricted region K': {detail}")]
    SpecializationDomain { k: String, kp: String, detail: String },

    #[error("Hermitian form is numerically singular (|det| = {det:.3e})")]
    SingularForm { det: f64 },

    #[error("weight {name} = {value} is outside (0, 1)")]
    DomainViolation { name: String, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
