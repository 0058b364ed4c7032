//! Library half of the command-line front end: the model-file format, the
//! report builder, the command implementations, and the self-test battery.

pub mod commands;
pub mod model;
pub mod report;
pub mod selftest;
