use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Format;

/// Self-describing output of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Arguments after the program name.
    pub command: Vec<String>,
    /// Resolved configuration, defaults included.
    pub config: Value,
    pub results: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

/// A finished command: its report, a human-readable rendering, and the
/// process exit status.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if let Some(t) = self.report.wall_time_seconds {
                    s.push_str(&format!("wall time: {t:.6} s\n"));
                }
                s
            }
        }
    }
}

/// Compact rendering of a number list.
pub fn list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
