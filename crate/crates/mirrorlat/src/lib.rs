pub mod cli;
pub mod connection;
pub mod error;
pub mod hermitian;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod residues;
pub mod rootsystem;
pub mod schwarz;
pub mod tables;
