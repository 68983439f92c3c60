use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a window-bounded test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The property holds on the observed window. Nothing is claimed beyond it.
    Holds,
    /// The property fails; the verdict carries a replayable witness.
    Fails,
    /// The window (or the floating-point budget) does not allow a decision.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Witness payload attached to a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Nat(u64),
    Pair(u64, u64),
    Int(i64),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Nat(n) => write!(f, "{n}"),
            Witness::Pair(a, b) => write!(f, "({a}, {b})"),
            Witness::Int(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

impl Verdict {
    pub fn holds(witness: Option<Witness>) -> Self {
        Verdict {
            status: Status::Holds,
            witness,
            note: String::new(),
        }
    }

    /// A failing verdict always carries its witness.
    pub fn fails(witness: Witness) -> Self {
        Verdict {
            status: Status::Fails,
            witness: Some(witness),
            note: String::new(),
        }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Inconclusive,
            witness: None,
            note: note.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        if !self.note.is_empty() {
            write!(f, ": {}", self.note)?;
        }
        Ok(())
    }
}
