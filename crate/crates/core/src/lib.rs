pub mod appendix;
pub mod brackets;
pub mod cli;
pub mod families;
pub mod koszul;
pub mod linalg;
pub mod multilinear;
pub mod report;
pub mod sampling;
pub mod tor;
