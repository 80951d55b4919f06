//! Exact rational polyhedra and linear programming.

mod dd;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;

pub use json::{PolyhedronJson, VJson};
pub use lp::{lp_solve, LpOutcome, LpStatus, Sense};
pub use polyhedron::{h_to_v, v_to_h, HRep, HalfSpace, Polyhedron, VRep};
pub use rational::{
    format_rational, frac, int, parse_rational, primitive, to_f64, Extended, RatVector, Rational,
};
