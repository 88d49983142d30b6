//! Pass/fail verdicts with optional witnesses, shared by every checker.

use serde::Serialize;

use crate::group::GroupElem;

/// A basis vector of a homogeneous component: the `index`-th canonical
/// basis row of `M_degree`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BasisRef {
    pub degree: GroupElem,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Degree {
        degree: GroupElem,
    },
    DegreePair {
        left: GroupElem,
        right: GroupElem,
    },
    Basis {
        element: BasisRef,
    },
    BasisPair {
        left: BasisRef,
        right: BasisRef,
    },
    BasisTriple {
        first: BasisRef,
        second: BasisRef,
        third: BasisRef,
    },
    /// A matrix rendered row-major with scalar strings.
    Element {
        matrix: Vec<Vec<String>>,
    },
    Classes {
        left: Vec<GroupElem>,
        right: Vec<GroupElem>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict {
            passed: false,
            witness: Some(witness),
        }
    }

    /// Failure without a natural witness.
    pub fn fail_bare() -> Self {
        Verdict {
            passed: false,
            witness: None,
        }
    }

    pub fn from_option(failure: Option<Witness>) -> Self {
        match failure {
            None => Verdict::pass(),
            Some(w) => Verdict::fail(w),
        }
    }
}
