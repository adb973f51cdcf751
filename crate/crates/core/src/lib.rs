pub mod analytic;
pub mod cli;
pub mod harness;
pub mod mathkit;
pub mod oracle;
pub mod params;
pub mod simcore;
