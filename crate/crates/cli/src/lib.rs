pub mod cache;
pub mod checks;
pub mod config;
pub mod registry;
pub mod report;
