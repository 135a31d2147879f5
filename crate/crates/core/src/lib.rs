// Structure constants are indexed by basis position throughout.
#![allow(clippy::needless_range_loop)]

pub mod coaction;
pub mod face;
pub mod linalg;
pub mod path_algebra;
pub mod quiver;
pub mod report;
pub mod uqsgd;
pub mod wba;
