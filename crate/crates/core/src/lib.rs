//! Exact computations with graded affine Hecke algebras, quantum connections
//! of Springer resolutions and their Toda and shift-operator degenerations.

pub mod kernel;
pub mod qconn;
pub mod hecke;
pub mod roots;
pub mod limits;
pub mod shift;
