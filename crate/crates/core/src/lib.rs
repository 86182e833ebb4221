//! Exact verification engine for bundle towers, blow-up calculus, curve
//! cones and symplectic local models.

pub mod kernel;
pub mod local;
pub mod tower;
pub mod curves;
pub mod scenario;
