//! Shared fixtures for the criterion benches.

use aurum_core::{approx, group, sample, Dimension, Filtration, MirrorSet, QuatR, Side};

pub struct Fixture {
    pub filtration: Filtration,
    pub mirrors: MirrorSet,
    pub targets: Vec<[f64; 4]>,
    /// Deep units of `Sigma` for the normal-form benches.
    pub units: Vec<QuatR>,
}

impl Fixture {
    pub fn new(level: u32, targets: usize, seed: u64) -> Self {
        let filtration = Filtration::generate(level, Dimension::Four, level).expect("level within guard");
        let mirrors = MirrorSet::build(&filtration, level).expect("mirror set");
        let units = filtration.roots(level, Side::DotPrime).step_by(97).cloned().collect();
        Self { filtration, mirrors, targets: sample::haar_quaternions(targets, seed), units }
    }

    pub fn approximate_all(&self) -> usize {
        self.targets
            .iter()
            .map(|x| approx::approximate(x, &self.mirrors, approx::DEFAULT_MAX_ITER).map_or(0, |r| r.word.len()))
            .sum()
    }

    pub fn decompose_all(&self) -> usize {
        self.units.iter().map(|x| group::decompose(x).map_or(0, |f| f.factors.len())).sum()
    }
}
