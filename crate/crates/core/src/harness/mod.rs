//! Executable checks of the theory over a built-in corpus.

mod checks;
mod corpus;

pub use checks::*;
pub use corpus::*;

use crate::dimension::MaximalFamily;
use crate::group::{ElemId, FiniteGroup, SubgroupSet};
use crate::perm::Permutation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The stated claim and the computation disagree in a way the check
    /// only records.
    Discrepancy,
    CapExceeded,
    /// The hypothesis of the statement does not apply.
    Skipped,
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Discrepancy => "discrepancy",
            CheckStatus::CapExceeded => "capExceeded",
            CheckStatus::Skipped => "skipped",
        }
    }

    pub fn is_failure(&self) -> bool {
        *self == CheckStatus::Fail
    }
}

/// A subgroup or element in a portable form: 1-based cycle notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessItem {
    pub label: String,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check_id: String,
    pub instance: String,
    pub status: CheckStatus,
    pub numbers: Vec<(String, i64)>,
    pub witness: Vec<WitnessItem>,
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn new(check_id: &str, instance: impl Into<String>) -> Self {
        CheckResult {
            check_id: check_id.into(),
            instance: instance.into(),
            status: CheckStatus::Pass,
            numbers: Vec::new(),
            witness: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn number(&mut self, name: &str, value: impl TryInto<i64>) {
        self.numbers.push((name.into(), value.try_into().unwrap_or(i64::MAX)));
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.numbers.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a failed assertion without stopping the check.
    pub fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.status = CheckStatus::Fail;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    pub fn discrepancy(&mut self, what: impl Into<String>) {
        if self.status == CheckStatus::Pass {
            self.status = CheckStatus::Discrepancy;
        }
        self.notes.push(what.into());
    }

    pub fn skip(&mut self, why: impl Into<String>) {
        self.status = CheckStatus::Skipped;
        self.notes.push(why.into());
    }
}

/// Runs `body`, turning errors into statuses.
pub fn guarded(
    check_id: &str,
    instance: impl Into<String>,
    body: impl FnOnce(&mut CheckResult) -> Result<()>,
) -> CheckResult {
    let mut r = CheckResult::new(check_id, instance);
    if let Err(e) = body(&mut r) {
        r.status = match e {
            Error::CapExceeded { .. } | Error::DecompositionBudgetExceeded { .. } => CheckStatus::CapExceeded,
            _ => CheckStatus::Fail,
        };
        r.notes.push(e.to_string());
    }
    r
}

pub fn cycle_string(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

pub fn subgroup_witness(g: &FiniteGroup, label: impl Into<String>, h: &SubgroupSet) -> WitnessItem {
    WitnessItem {
        label: label.into(),
        order: h.order(),
        generators: h.generators().iter().map(|&x| cycle_string(g.element(x))).collect(),
    }
}

pub fn family_witness(g: &FiniteGroup, prefix: &str, fam: &MaximalFamily) -> Vec<WitnessItem> {
    fam.members()
        .iter()
        .enumerate()
        .map(|(i, m)| subgroup_witness(g, format!("{prefix}{}", i + 1), m))
        .collect()
}

pub fn element_witness(g: &FiniteGroup, prefix: &str, elems: &[ElemId]) -> Vec<WitnessItem> {
    elems
        .iter()
        .enumerate()
        .map(|(i, &x)| WitnessItem {
            label: format!("{prefix}{}", i + 1),
            order: g.elem_order(x) as usize,
            generators: vec![cycle_string(g.element(x))],
        })
        .collect()
}
