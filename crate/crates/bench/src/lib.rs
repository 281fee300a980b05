//! Benchmark fixtures.

use frontcalc::catalog::lookup;
use frontcalc::FrontDiagram;
use frontcalc::random_shuffle;

pub fn catalog(name: &str) -> FrontDiagram {
    lookup(name).unwrap_or_else(|| panic!("no catalog entry {name}")).diagram()
}

/// A catalog front made longer by a fixed shuffle.
pub fn scrambled(name: &str, steps: usize) -> FrontDiagram {
    random_shuffle(&catalog(name), steps, 11)
}
