//! One-call execution of source text with a recorded trace.

use crate::display::display_value;
use crate::interp::{eval_program, Completion, EvalHooks, RuntimeError, RuntimeEvent};
use crate::realm::{create_realm, Realm};
use crate::syntax::{parse_program, ParseError, Program, SourceSpan};
use crate::value::Value;

/// The value of one top-level expression statement, rendered when it
/// completed (later mutation does not change it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub span: SourceSpan,
    pub display: String,
}

/// Hooks implementation that keeps every trace entry and runtime event.
#[derive(Debug, Default)]
pub struct Recorder {
    pub trace: Vec<TraceEntry>,
    pub events: Vec<RuntimeEvent>,
    in_progress: Option<SourceSpan>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }

    /// The traced statement that started but never produced a value.
    pub fn unfinished(&self) -> Option<SourceSpan> {
        self.in_progress
    }
}

impl EvalHooks for Recorder {
    fn statement_started(&mut self, span: SourceSpan) {
        self.in_progress = Some(span);
    }

    fn statement_value(&mut self, span: SourceSpan, value: &Value, realm: &Realm) {
        self.in_progress = None;
        self.trace.push(TraceEntry {
            span,
            display: display_value(realm, value),
        });
    }

    fn event(&mut self, event: &RuntimeEvent) {
        self.events.push(event.clone());
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub realm: Realm,
    pub completion: Completion,
    pub trace: Vec<TraceEntry>,
    pub events: Vec<RuntimeEvent>,
    /// Top-level expression statement that was executing when a runtime
    /// error stopped the program.
    pub failed_statement: Option<SourceSpan>,
}

impl RunOutcome {
    pub fn error(&self) -> Option<&RuntimeError> {
        match &self.completion {
            Completion::Error(e) => Some(e),
            Completion::Normal(_) => None,
        }
    }

    pub fn display(&self, value: &Value) -> String {
        display_value(&self.realm, value)
    }

    /// Rendered trace values, in execution order.
    pub fn displays(&self) -> Vec<&str> {
        self.trace.iter().map(|t| t.display.as_str()).collect()
    }

    /// Reads a global after the run.
    pub fn global(&self, name: &str) -> Value {
        self.realm.global(name)
    }
}

/// Runs an already parsed program in a fresh realm.
pub fn run_program(program: &Program) -> RunOutcome {
    let mut realm = create_realm();
    let mut recorder = Recorder::new();
    let completion = eval_program(program, &mut realm, &mut recorder);
    let failed_statement = if completion.is_error() {
        recorder.unfinished()
    } else {
        None
    };
    RunOutcome {
        realm,
        completion,
        trace: recorder.trace,
        events: recorder.events,
        failed_statement,
    }
}

/// Parses and runs `source` in a fresh realm.
pub fn run_source(source: &str) -> Result<RunOutcome, ParseError> {
    Ok(run_program(&parse_program(source)?))
}
