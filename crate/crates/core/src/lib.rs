pub mod arith;
pub mod dop;
pub mod grass;
pub mod hypergeom;
pub mod laurent_mirror;
pub mod qh;
pub mod mirror;
pub mod pipeline;
pub mod registry;
