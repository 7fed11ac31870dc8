//! Triangulations of compact surfaces and the surgery used to reduce and
//! generate them.

pub mod complex;
pub mod fixtures;
pub mod surgery;
pub mod configs;
pub mod reduce;
pub mod generate;
pub mod cli;
