//! Library side of the `qfn` command: table reproduction, sweeps and the
//! verification suite, shared by the binary and the acceptance tests.

pub mod coeffs;
pub mod num;
pub mod sweep;
pub mod tables;
pub mod verify;
