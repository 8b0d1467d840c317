use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable tables.
    Table,
    /// A structured document with the fixed shape
    /// `{"command", "inputs", "results", "pass"}`.
    Json,
}

/// What every command produces: the machine-readable document plus a
/// preformatted table rendering of the same content.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
    #[serde(skip)]
    pub table: String,
}

impl Report {
    pub fn emit(&self, format: Format) {
        match format {
            Format::Table => println!("{}", self.table.trim_end()),
            Format::Json => {
                let text = serde_json::to_string_pretty(self)
                    .expect("reports contain only serializable values");
                println!("{text}");
            }
        }
    }
}

/// A finished command: the report to emit and the exit status to end with.
/// Status 0/1 reflects `pass`; special outcomes (close approach, a sweep
/// with no convergent run) carry their documented codes while still
/// emitting the full report.
pub struct CommandOutput {
    pub report: Report,
    pub exit: i32,
}

impl CommandOutput {
    /// The common case: exit 0 when the report passes, 1 when it fails.
    pub fn from_pass(report: Report) -> Self {
        let exit = if report.pass { 0 } else { 1 };
        CommandOutput { report, exit }
    }
}
