//! Report document shared by the `pacres` binary and its tests.

pub mod report;
