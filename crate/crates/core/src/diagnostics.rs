//! Named pass/fail checks with witnesses.
//!
//! Every condition checker in the crate reports through [`Diagnostics`]: one
//! [`Check`] per named condition, carrying the first failing witness in
//! lexicographic order of the scanned indices.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), ok: true, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<usize>) -> Self {
        Check { name: name.into(), ok: false, witness: Some(witness), note: None }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        Check { name: name.into(), ok: witness.is_none(), witness, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Diagnostics {
    pub checks: Vec<Check>,
}

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn record(&mut self, name: &str, witness: Option<Vec<usize>>) -> bool {
        let ok = witness.is_none();
        self.checks.push(Check::from_witness(name, witness));
        ok
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.failed().map(|c| c.name.as_str()).collect()
    }

    pub fn extend(&mut self, other: Diagnostics) {
        self.checks.extend(other.checks);
    }

    /// `Ok(self)` when every check passed, otherwise `Error::Conditions`.
    pub fn into_result(self) -> crate::Result<Self> {
        if self.all_ok() {
            Ok(self)
        } else {
            Err(crate::Error::Conditions(self))
        }
    }
}

/// First tuple in lexicographic order over `dims` for which `holds` is false.
pub fn first_failure<F>(dims: &[usize], mut holds: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    if dims.contains(&0) {
        return None;
    }
    let mut idx = vec![0usize; dims.len()];
    loop {
        if !holds(&idx) {
            return Some(idx);
        }
        let mut k = dims.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}
