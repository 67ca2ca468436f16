//! Weighted orbit spaces of circle actions on smooth 4-manifolds, their
//! reduction to essential spheres of nonnegative square, and the resulting
//! Seiberg–Witten verdicts. All arithmetic is exact.

pub mod abelian;
pub mod orbit;
pub mod reduce;
pub mod sw;
pub mod io;
