pub mod checks;
pub mod cli;
pub mod coset;
pub mod group;
pub mod hyperocta;
pub mod models;
pub mod report;
pub mod sopath;
pub mod words;
