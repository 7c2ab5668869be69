//! Classical 2-orthogonal polynomial sequences: exact recurrences, the moment
//! functionals they are orthogonal against, and measures representing those
//! functionals for each special case, with a verification harness.

pub mod functional;
pub mod poly;
pub mod polyseq;
pub mod quad;
pub mod specfun;
pub mod verify;
pub mod weights;
