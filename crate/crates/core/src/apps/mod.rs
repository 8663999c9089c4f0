//! Applications and the invariant suite behind the command-line tool.

pub mod cloning;
pub mod eigmax;
pub mod majority;
pub mod verify;
