//! Document parsing, certificate formats, and report shapes behind the
//! `equicat` binary, exposed for the integration suites.

pub mod certformat;
pub mod document;
pub mod report;
