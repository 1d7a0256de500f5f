//! Input formats, deterministic reports, and the bundled corpus behind the
//! command line front end.

pub mod corpus;
pub mod input;
pub mod report;
