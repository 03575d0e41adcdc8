//! Run parameters shared by the CLI and the examples.

use crate::curves::DEFAULT_CENSUS_CAP;
use crate::field::DEFAULT_FIELD_CAP;
use crate::hypergeom::{Family, INTEGRALITY_TOLERANCE};
use std::path::PathBuf;

/// Engineering thresholds; the underlying theorems only give `o(1)` rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub integrality: f64,
    pub ks_f21: f64,
    pub ks_f32: f64,
    /// Allowed |normalized moment - limit| for m = 2 and m = 4, per family.
    pub moment_f21: [f64; 2],
    pub moment_f32: [f64; 2],
    /// Relative tolerance of the class-sum asymptotics.
    pub class_sum: f64,
    pub batman_relative: f64,
    pub batman_mass: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            integrality: INTEGRALITY_TOLERANCE,
            ks_f21: 0.03,
            ks_f32: 0.05,
            moment_f21: [0.05, 0.15],
            moment_f32: [0.05, 0.25],
            class_sum: 0.1,
            batman_relative: 1e-6,
            batman_mass: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn ks(&self, family: Family) -> f64 {
        match family {
            Family::F21 => self.ks_f21,
            Family::F32 => self.ks_f32,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub p: Option<u64>,
    pub r: u32,
    pub family: Option<Family>,
    pub m_max: u32,
    pub bins: usize,
    pub output: Option<PathBuf>,
    pub brute_force_cap: u32,
    pub field_cap: u64,
    pub tolerances: Tolerances,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            p: None,
            r: 1,
            family: None,
            m_max: 4,
            bins: 80,
            output: None,
            brute_force_cap: DEFAULT_CENSUS_CAP,
            field_cap: DEFAULT_FIELD_CAP,
            tolerances: Tolerances::default(),
            threads: None,
        }
    }
}
