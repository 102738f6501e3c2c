//! Table readers and writers shared by the `stepbound` binary and its
//! tests. The CSV format uses the shortest round-trip decimal for every
//! number, so written files parse back bit-identically.

pub mod tables;
