//! Library side of the `comprehend` command: instance documents, reports,
//! graph export and the property corpus.

pub mod commands;
pub mod dot;
pub mod error;
pub mod format;
pub mod report;
pub mod suite;
