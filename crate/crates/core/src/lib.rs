pub mod cli;
pub mod error;
pub mod io;
pub mod lcp;
pub mod linalg;
pub mod pmatrix;
pub mod scalar;
pub mod verify;
pub mod zoo;
