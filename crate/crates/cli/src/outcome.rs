use serde_json::{json, Value};

use frt_lab::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NoWitness,
    InputError,
    BudgetExceeded,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NoWitness => 1,
            Status::InputError => 2,
            Status::BudgetExceeded => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::NoWitness => "NO_WITNESS",
            Status::InputError => "INPUT_ERROR",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub payload: Value,
    /// Exit code when it differs from the status code.
    pub exit: Option<i32>,
    /// Human rendering for `--table`; a generic one is derived when absent.
    pub table: Option<String>,
}

impl Outcome {
    pub fn ok(payload: Value) -> Self {
        Outcome::with(Status::Ok, payload)
    }

    pub fn with(status: Status, payload: Value) -> Self {
        Outcome {
            status,
            payload,
            exit: None,
            table: None,
        }
    }

    pub fn table(mut self, text: String) -> Self {
        self.table = Some(text);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.exit.unwrap_or(self.status.code())
    }

    pub fn input_error(message: impl Into<String>) -> Self {
        Outcome::with(
            Status::InputError,
            json!({"error": {"kind": "input", "message": message.into()}}),
        )
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (status, kind, extra) = match &e {
            Error::BudgetExceeded { limit } => {
                (Status::BudgetExceeded, "budget", json!({"limit": limit}))
            }
            Error::Syntax { pos, .. } => (Status::InputError, "syntax", json!({"position": pos})),
            Error::Canonicity { pos, .. } => {
                (Status::InputError, "canonicity", json!({"position": pos}))
            }
            Error::DepthExceeded { limit } => {
                (Status::InputError, "depth", json!({"limit": limit}))
            }
            Error::Domain(_) | Error::OutOfDomain(_) | Error::ZeroOrdinal | Error::EmptySet => {
                (Status::InputError, "domain", json!({}))
            }
            _ => (Status::InputError, "input", json!({})),
        };
        let mut err = json!({"kind": kind, "message": message});
        if let (Value::Object(into), Value::Object(from)) = (&mut err, extra) {
            into.extend(from);
        }
        Outcome::with(status, json!({ "error": err }))
    }
}

/// Flat key/value rendering of a payload.
pub fn generic_table(payload: &Value) -> String {
    match payload {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k:<12} {}\n", render(v)))
            .collect(),
        other => format!("{}\n", render(other)),
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
