//! Verification reports: every check compares an expected value with a
//! freshly computed one and records the outcome.

mod catalog;
mod fibers;
mod orbits;
mod props;
mod report;
mod slices;

use thiserror::Error;

pub use catalog::{
    G2Fixture, Tower, AB_DIAGRAMS, FIBER_TABLE, J1_V, J2_V, N5B_SLICE_BASE, ORBIT_REPS,
};
pub use fibers::cmd_fibers;
pub use orbits::cmd_orbits;
pub use props::cmd_proptests;
pub use report::{Record, Report, Status, Summary};
pub use slices::{cmd_slices, SLICES, SUBREGULAR};

use crate::sympair::SearchOptions;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Height bound of the rational line search in slices.
    pub height: u32,
    /// Seed of the sampled property checks.
    pub seed: u64,
    /// Worker threads for the line search.
    pub workers: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            height: 24,
            seed: 0,
            workers: 1,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.height == 0 {
            return Err(VerifyError::Config("height must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(VerifyError::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            height: self.height,
            workers: self.workers,
        }
    }
}

/// All reports merged into one; the commands run concurrently.
pub fn cmd_all(config: &Config) -> Result<Report, VerifyError> {
    config.validate()?;
    let ((orbits, slices), (fibers, props)) = rayon::join(
        || rayon::join(|| cmd_orbits(config), || cmd_slices(config)),
        || rayon::join(|| cmd_fibers(config), || cmd_proptests(config)),
    );
    let mut r = orbits?;
    for other in [slices?, fibers?, props?] {
        r.merge(other);
    }
    Ok(r)
}
