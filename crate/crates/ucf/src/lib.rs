pub mod algorithm;
pub mod classify;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod render;
pub mod report;
pub mod simulator;
pub mod targets;
