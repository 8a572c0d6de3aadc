//! Per-identity verification reports with reproducible witnesses.

use crate::tensor::indices;

/// One identity and, if it fails, the lexicographically first failing basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub witness: Option<Vec<usize>>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Records `name`, scanning `dims` lexicographically for a tuple where `holds` is false.
    pub(crate) fn scan(&mut self, name: &'static str, dims: &[usize], mut holds: impl FnMut(&[usize]) -> bool) {
        let witness = indices(dims).find(|idx| !holds(idx));
        self.checks.push(Check { name, witness });
    }
}
