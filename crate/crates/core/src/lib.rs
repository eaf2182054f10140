//! Function-in-set optimization models, a bridge engine that rewrites
//! constraints into forms a solver supports, the MathOptFormat file format,
//! and a small reference LP solver.

pub mod model;
pub mod mof;
pub mod sets;
pub mod bridges;
pub mod targets;
