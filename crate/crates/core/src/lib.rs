//! Sizing solar panel capacity for a grid of cities spread across time zones.
//!
//! Each location's weather drives a model house and a one-square-metre
//! panel; the hourly traces are scaled to city size and a linear program
//! finds the least panel area that keeps grid-wide production above
//! consumption in every hour. See the `examples/` directory for runnable
//! walkthroughs of each stage.

pub mod config;
pub mod fixture;
pub mod format;
pub mod household;
pub mod optimizer;
pub mod pipeline;
pub mod pv;
pub mod scenario;
pub mod storage;
pub mod weather;
