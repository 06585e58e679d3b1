//! Orders on minors forced by a fixed top block, and oriented Young grids.

mod grid;
mod poset;

pub use grid::*;
pub use poset::*;
