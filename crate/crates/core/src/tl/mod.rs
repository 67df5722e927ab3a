//! The Temperley-Lieb algebra TL_N(Q) with Q = \[2\], in the planar-diagram
//! basis: generators, diagram composition with loop resolution, the
//! Jones-Wenzl tower, and the quotient map from the Hecke algebra.

mod diagram;
mod element;

pub use diagram::{compose, TlDiagram, TlTables, MAX_TL_RANK};
pub use element::{
    cached_jw_tower, jones_wenzl, quotient_from_hecke, JonesWenzlTower, TlElement,
};
