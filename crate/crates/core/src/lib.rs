//! Double covers of the plane branched along A-D-E curve germs, their
//! canonical cycles and defects, and the numerical invariants of generic
//! coverings of the plane used to decide when such a covering is unique.

pub mod chisini;
pub mod cli;
pub mod cover;
pub mod exact;
pub mod input;
pub mod invariants;
pub mod local_models;
pub mod monodromy;
pub mod report;
pub mod resolution;
pub mod selftest;
